#pragma once

#include <Eigen/Dense>
#include <span>
#include <string>
#include <vector>

#include "akgeo/fields.hpp"
#include "akgeo/sampling.hpp"
#include "akgeo/tolerances.hpp"

namespace akgeo {

// A chart presents an almost Kahler structure in coordinates: a closed
// non-degenerate two-form kappa and an almost complex structure J that is
// kappa-compatible and calibrated. The metric g(X, Y) = kappa(X, JY) is
// always derived from these two, never stored.
struct AlmostKahlerChart {
  std::string label;
  int n = 0;  // complex dimension; coordinate dimension is 2n
  Box domain;
  // kappa_{ab} for a < b, row-major over pairs; the remaining entries follow
  // by antisymmetry.
  std::vector<ScalarField> kappa_upper;
  // J^a_b, row-major, a is the row.
  std::vector<ScalarField> jmat;

  int dim() const { return 2 * n; }

  int pair_index(int a, int b) const {
    // requires a < b
    return a * (2 * dim() - a - 1) / 2 + (b - a - 1);
  }
};

// Row-major dim x dim grid of jets.
struct JetGrid {
  int dim = 0;
  std::vector<Jet> m;
  const Jet& at(int a, int b) const { return m[a * dim + b]; }
  Jet& at(int a, int b) { return m[a * dim + b]; }
};

JetGrid kappa_jets(const AlmostKahlerChart& chart, std::span<const Jet> x);
JetGrid j_jets(const AlmostKahlerChart& chart, std::span<const Jet> x);
// g_{ab} = kappa_{ac} J^c_b
JetGrid metric_jets(const JetGrid& kappa, const JetGrid& jm);

// Pointwise values as Eigen matrices.
Eigen::MatrixXd kappa_at(const AlmostKahlerChart& chart, std::span<const double> p);
Eigen::MatrixXd j_at(const AlmostKahlerChart& chart, std::span<const double> p);

// Metric value with hard structure checks: symmetry and positive
// definiteness. Violations throw StructureError since downstream
// constructions cannot proceed with a broken metric.
Eigen::MatrixXd metric_at(const AlmostKahlerChart& chart, std::span<const double> p,
                          const Tolerances& tol = {});

struct CheckResult {
  std::string name;
  double value = 0.0;      // worst residual, or worst margin for floor checks
  double threshold = 0.0;
  bool floor_check = false;  // pass means value >= threshold
  bool pass = false;
  std::vector<double> worst_point;
};

struct ValidationReport {
  std::string chart;
  int nsamples = 0;
  std::vector<CheckResult> checks;
  bool ok() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

// Samples the domain and checks the defining properties of the structure:
// J^2 = -Id, d(kappa) = 0, non-degeneracy of kappa, kappa(J., J.) = kappa,
// symmetry and positivity of the derived metric.
ValidationReport validate_chart(const AlmostKahlerChart& chart, Sampler& sampler,
                                int nsamples, const Tolerances& tol = {});

}  // namespace akgeo
