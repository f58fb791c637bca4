#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "akgeo/charts.hpp"
#include "akgeo/tolerances.hpp"

namespace akgeo {

// One identity check: the largest residual of a multi-sided computation over
// all sampled points and frame arguments, with the formula it verifies.
struct IdentityRow {
  std::string name;
  std::string anchor;
  double residual = 0.0;
  bool pass = false;
};

struct IdentityReport {
  std::string chart;
  std::uint64_t seed = 0;
  int nsamples = 0;
  std::vector<IdentityRow> rows;

  // Residuals of the two index placements of the curvature comparison
  // R~_{i jbar r sbar} - R_{i jbar r sbar} - (1/4) L_{...}: "statement"
  // places the L indices as (i, jbar, r, sbar), "proof" transposes the
  // first pair to (jbar, i, r, sbar). The suite row reports the transposed
  // placement; the variant verdict classifies which placements pass.
  double wr1_statement = 0.0;
  double wr1_proof = 0.0;
  std::string wr1_variant;  // "statement" | "proof" | "both" | "neither"

  bool all_pass() const;
  double max_residual() const;
  const IdentityRow* find(std::string_view name) const;
};

// Evaluates every identity of the frame calculus at the domain center plus
// nsamples seeded random points. Rows that need normalized frame germs
// construct one frame per sample point.
IdentityReport identity_suite(const AlmostKahlerChart& chart, int nsamples,
                              std::uint64_t seed, const Tolerances& tol = {});

// Sup-norm defect with the argmax sample recorded for reproducibility.
struct Defect {
  double value = 0.0;
  std::vector<double> point;
  std::string detail;  // frame arguments attaining the sup

  void consider(double v, const std::vector<double>& p, std::string d);
};

struct DefectReport {
  std::string chart;
  std::uint64_t seed = 0;
  int nsamples = 0;
  // Fixed order: nijenhuis, nabla01_nijenhuis, L_diagonal, RJ_vs_R,
  // hermitian_vs_R, bisectional.
  std::vector<std::pair<std::string, Defect>> defects;
  std::string verdict;
  IdentityReport identities;

  const Defect* find(std::string_view name) const;
};

// Measures the six integrability defects as sup over the domain center plus
// nsamples seeded random points; per point, real-form defects range over a
// real orthonormal frame and complex-form defects over a Hermitian frame
// and its conjugates. Embeds the identity suite over the same sample set
// and classifies the chart.
DefectReport integrability_defects(const AlmostKahlerChart& chart, int nsamples,
                                   std::uint64_t seed,
                                   const Tolerances& tol = {});

// Verdict from the defect table alone: "kahler-consistent" when every defect
// is at or below the zero-consistency threshold, "non-integrable" when the
// Nijenhuis defect clears the detection floor, otherwise "inconclusive".
// A positive verdict never claims integrability; finite sampling can only
// refute it.
std::string classify(const DefectReport& report, const Tolerances& tol = {});

// Serialized report, schema "akgeo-report/1". Object keys are sorted and
// numbers use shortest round-trip formatting, so equal reports serialize to
// identical bytes.
std::string report_to_json(const DefectReport& report);

}  // namespace akgeo
