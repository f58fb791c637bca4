#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace akgeo {

// Tolerance ladder. Residuals that should vanish identically are held to
// tighter thresholds than residuals built from higher derivatives, and the
// detection threshold for genuinely nonzero invariants sits far above all
// of them.
struct Tolerances {
  double structural = 1e-12;        // pointwise linear algebra identities
  double validation = 1e-10;        // chart structure checks
  double first_order = 1e-9;        // identities using one derivative level
  double second_order = 1e-7;       // identities using curvature
  double zero_consistency = 1e-9;   // defects that must vanish on flat charts
  double nonzero_detection = 1e-3;  // floor for calling an invariant nonzero
  double positivity_floor = 1e-6;   // eigenvalue / determinant margins

  bool set(std::string_view name, double value) {
    if (name == "structural") structural = value;
    else if (name == "validation") validation = value;
    else if (name == "first_order") first_order = value;
    else if (name == "second_order") second_order = value;
    else if (name == "zero_consistency") zero_consistency = value;
    else if (name == "nonzero_detection") nonzero_detection = value;
    else if (name == "positivity_floor") positivity_floor = value;
    else return false;
    return true;
  }

  static std::vector<std::string> names() {
    return {"structural",       "validation",     "first_order",
            "second_order",     "zero_consistency", "nonzero_detection",
            "positivity_floor"};
  }
};

}  // namespace akgeo
