#pragma once

#include <string>

#include "akgeo/charts.hpp"

namespace akgeo {

// Schema tag a chart description file must carry in its "schema" key.
inline constexpr const char* kChartFileSchema = "akgeo-chart/1";

// Builds a chart from a JSON description:
//
//   {
//     "schema": "akgeo-chart/1",
//     "label":  "my_chart",
//     "n":      2,
//     "domain": { "lo": [-1, -1, -1, -1], "hi": [1, 1, 1, 1] },
//     "kappa":  [ { "a": 0, "b": 1, "terms": [ { "exps": [1,0,0,0],
//                                                "coeff": -1.0 } ] }, ... ],
//     "J":      [ { "a": 2, "b": 0, "terms": [ ... ] }, ... ]
//   }
//
// kappa lists the strictly upper-triangular entries kappa_{ab} (a < b); the
// rest follow by antisymmetry. J lists entries J^a_b. Each entry is a
// polynomial in the 2n chart coordinates, given as a sum of terms with
// exponent vectors of length 2n. Unlisted entries are zero.
//
// The loader checks the description's shape only (key presence, index
// ranges, duplicate entries, finite coefficients); whether the resulting
// structure is a valid almost Kahler chart on its domain is the job of
// validate_chart. Malformed input throws std::invalid_argument.
AlmostKahlerChart load_chart_json(const std::string& text);

// Reads the file at `path` and forwards to load_chart_json. An unreadable
// file throws std::invalid_argument.
AlmostKahlerChart load_chart_file(const std::string& path);

}  // namespace akgeo
