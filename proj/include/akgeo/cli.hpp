#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>

#include "akgeo/tolerances.hpp"

namespace akgeo {

// Configuration assembled from the command line. Defaults are part of the
// documented contract: 100 samples, seed 42, jet order 3. The seed default
// may also come from the AKGEO_SEED environment variable; an explicit
// --seed flag wins over the environment.
struct RunConfig {
  std::string command;                    // list | verify | diagnose | frame
  std::string chart;                      // zoo id, or path to a .json file
  std::map<std::string, double> params;   // --param overrides (zoo charts)
  int nsamples = 100;
  std::uint64_t seed = 42;
  int order = 3;
  std::string json_path;                  // "" none, "-" stdout, else a file
  std::string point_text;                 // comma-separated coordinates
  Tolerances tol;
};

// Full command-line front end against caller-provided streams, so tests can
// drive it in process. Returns the process exit code: 0 success, 1 identity
// or validation failure, 2 bad input, 3 internal construction failure.
int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err);

}  // namespace akgeo
