#include "akgeo/charts.hpp"

#include <cmath>

namespace akgeo {

JetGrid kappa_jets(const AlmostKahlerChart& chart, std::span<const Jet> x) {
  const int d = chart.dim();
  JetGrid grid;
  grid.dim = d;
  Jet zero = x[0] * 0.0;
  grid.m.assign(std::size_t(d) * d, zero);
  for (int a = 0; a < d; ++a) {
    for (int b = a + 1; b < d; ++b) {
      Jet v = chart.kappa_upper[chart.pair_index(a, b)](x);
      grid.at(a, b) = v;
      grid.at(b, a) = -v;
    }
  }
  return grid;
}

JetGrid j_jets(const AlmostKahlerChart& chart, std::span<const Jet> x) {
  const int d = chart.dim();
  JetGrid grid;
  grid.dim = d;
  grid.m.reserve(std::size_t(d) * d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      grid.m.push_back(chart.jmat[a * d + b](x));
  return grid;
}

JetGrid metric_jets(const JetGrid& kappa, const JetGrid& jm) {
  const int d = kappa.dim;
  JetGrid g;
  g.dim = d;
  Jet zero = kappa.m[0] * 0.0;
  g.m.assign(std::size_t(d) * d, zero);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      Jet acc = zero;
      for (int c = 0; c < d; ++c) acc = acc + kappa.at(a, c) * jm.at(c, b);
      g.at(a, b) = acc;
    }
  return g;
}

namespace {

Eigen::MatrixXd grid_values(const JetGrid& grid) {
  Eigen::MatrixXd m(grid.dim, grid.dim);
  for (int a = 0; a < grid.dim; ++a)
    for (int b = 0; b < grid.dim; ++b) m(a, b) = grid.at(a, b).value();
  return m;
}

}  // namespace

Eigen::MatrixXd kappa_at(const AlmostKahlerChart& chart, std::span<const double> p) {
  auto x = lift_point(p, 0);
  return grid_values(kappa_jets(chart, x));
}

Eigen::MatrixXd j_at(const AlmostKahlerChart& chart, std::span<const double> p) {
  auto x = lift_point(p, 0);
  return grid_values(j_jets(chart, x));
}

Eigen::MatrixXd metric_at(const AlmostKahlerChart& chart, std::span<const double> p,
                          const Tolerances& tol) {
  auto x = lift_point(p, 0);
  JetGrid kap = kappa_jets(chart, x);
  JetGrid jm = j_jets(chart, x);
  Eigen::MatrixXd g = grid_values(metric_jets(kap, jm));
  const double scale = std::max(1.0, g.cwiseAbs().maxCoeff());
  if ((g - g.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale)
    throw StructureError("derived metric is not symmetric at the requested point");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (g + g.transpose()));
  if (es.eigenvalues().minCoeff() < tol.positivity_floor)
    throw StructureError("derived metric is not positive definite at the requested point");
  return 0.5 * (g + g.transpose());
}

ValidationReport validate_chart(const AlmostKahlerChart& chart, Sampler& sampler,
                                int nsamples, const Tolerances& tol) {
  const int d = chart.dim();
  ValidationReport report;
  report.chart = chart.label;
  report.nsamples = nsamples;

  CheckResult j_sq{"j_squared_plus_identity", 0, tol.validation, false, true, {}};
  CheckResult closed{"kappa_closed", 0, tol.validation, false, true, {}};
  CheckResult nondeg{"kappa_nondegenerate", 1e300, tol.positivity_floor, true, true, {}};
  CheckResult compat{"kappa_j_invariant", 0, tol.validation, false, true, {}};
  CheckResult sym{"metric_symmetric", 0, tol.validation, false, true, {}};
  CheckResult pos{"metric_positive", 1e300, tol.positivity_floor, true, true, {}};

  auto worse_max = [](CheckResult& c, double v, const std::vector<double>& p) {
    if (v > c.value) { c.value = v; c.worst_point = p; }
  };
  auto worse_min = [](CheckResult& c, double v, const std::vector<double>& p) {
    if (v < c.value) { c.value = v; c.worst_point = p; }
  };

  for (int s = 0; s < nsamples; ++s) {
    std::vector<double> p = sampler.point(chart.domain);
    auto x = lift_point(p, 1);
    JetGrid kap = kappa_jets(chart, x);
    JetGrid jm = j_jets(chart, x);
    JetGrid gj = metric_jets(kap, jm);

    Eigen::MatrixXd K = grid_values(kap);
    Eigen::MatrixXd J = grid_values(jm);
    Eigen::MatrixXd G = grid_values(gj);

    Eigen::MatrixXd jj = J * J + Eigen::MatrixXd::Identity(d, d);
    worse_max(j_sq, jj.cwiseAbs().maxCoeff(), p);

    double dk = 0.0;
    for (int a = 0; a < d; ++a)
      for (int b = a + 1; b < d; ++b)
        for (int c = b + 1; c < d; ++c) {
          double v = kap.at(b, c).derivative(a).value() +
                     kap.at(c, a).derivative(b).value() +
                     kap.at(a, b).derivative(c).value();
          dk = std::max(dk, std::abs(v));
        }
    worse_max(closed, dk, p);

    worse_min(nondeg, std::abs(K.determinant()), p);
    worse_max(compat, (J.transpose() * K * J - K).cwiseAbs().maxCoeff(), p);
    worse_max(sym, (G - G.transpose()).cwiseAbs().maxCoeff(), p);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (G + G.transpose()));
    worse_min(pos, es.eigenvalues().minCoeff(), p);
  }

  for (CheckResult* c : {&j_sq, &closed, &nondeg, &compat, &sym, &pos}) {
    c->pass = c->floor_check ? (c->value >= c->threshold)
                             : (c->value <= c->threshold);
    report.checks.push_back(*c);
  }
  return report;
}

}  // namespace akgeo
