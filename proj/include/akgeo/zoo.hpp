#pragma once

#include <map>
#include <string>
#include <vector>

#include "akgeo/charts.hpp"

namespace akgeo {

struct ZooEntry {
  std::string id;
  std::string summary;
  // name -> default value; callers may override any of these
  std::map<std::string, double> params;
  std::string expected_verdict;
};

const std::vector<ZooEntry>& zoo_entries();

// Flat C^n with constant structure, coordinates interleaved (x1, y1, ...).
AlmostKahlerChart flat_kahler(int n);

// Left-invariant structure on the Kodaira-Thurston nilmanifold, presented on
// a coordinate box of its universal cover. Closed, non-integrable.
AlmostKahlerChart kodaira_thurston();

// Flat symplectic R^4 with J conjugated by a position-dependent symplectic
// map exp(eps * x1 * x2 * A), A a seeded random Hamiltonian matrix. The
// conjugation preserves compatibility and calibration for every eps.
AlmostKahlerChart symplectic_twist_r4(double eps, std::uint64_t seed);

// Build by id with parameter overrides; throws std::invalid_argument for
// unknown ids, unknown parameter names, or out-of-range values.
AlmostKahlerChart make_zoo_chart(const std::string& id,
                                 const std::map<std::string, double>& overrides = {});

}  // namespace akgeo
