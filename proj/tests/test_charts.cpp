#include <doctest.h>

#include <cmath>

#include "akgeo/charts.hpp"
#include "akgeo/zoo.hpp"

using namespace akgeo;

TEST_SUITE("charts") {

TEST_CASE("structure checks pass on every built-in chart") {
  std::vector<AlmostKahlerChart> charts;
  charts.push_back(flat_kahler(1));
  charts.push_back(flat_kahler(3));
  charts.push_back(kodaira_thurston());
  charts.push_back(symplectic_twist_r4(0.3, 1));

  for (const auto& chart : charts) {
    Sampler sampler(42);
    auto report = validate_chart(chart, sampler, 25);
    for (const auto& c : report.checks)
      CHECK_MESSAGE(c.pass, chart.label, " check ", c.name, " value ", c.value);
    CHECK(report.ok());
  }
}

TEST_CASE("nilmanifold metric values") {
  auto chart = kodaira_thurston();

  std::vector<double> origin = {0, 0, 0, 0};
  Eigen::MatrixXd g0 = metric_at(chart, origin);
  CHECK((g0 - Eigen::MatrixXd::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-14);

  std::vector<double> p = {1.0, 0.2, -0.3, 0.4};
  Eigen::MatrixXd g = metric_at(chart, p);
  CHECK(g(1, 1) == doctest::Approx(2.0));        // 1 + x^2 at x = 1
  CHECK(g(1, 2) == doctest::Approx(-1.0));       // -x
  CHECK(g(2, 1) == doctest::Approx(-1.0));
  CHECK(g(0, 0) == doctest::Approx(1.0));
  CHECK(g(3, 3) == doctest::Approx(1.0));

  Eigen::MatrixXd K = kappa_at(chart, p);
  CHECK(std::abs(K.determinant()) == doctest::Approx(1.0));
  CHECK((K + K.transpose()).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("metric jets are symmetric coefficientwise") {
  auto chart = kodaira_thurston();
  std::vector<double> p = {0.5, -0.2, 0.1, 0.8};
  auto x = lift_point(p, 3);
  auto g = metric_jets(kappa_jets(chart, x), j_jets(chart, x));
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b)
      CHECK(coeff_inf_norm(g.at(a, b) - g.at(b, a)) < 1e-14);
}

TEST_CASE("twisted chart: J varies over the domain yet stays admissible") {
  auto chart = symplectic_twist_r4(0.5, 7);
  std::vector<double> p1 = {0.8, 0.1, 0.7, -0.2};
  std::vector<double> p2 = {-0.6, 0.4, 0.5, 0.9};
  Eigen::MatrixXd J1 = j_at(chart, p1), J2 = j_at(chart, p2);
  CHECK((J1 - J2).cwiseAbs().maxCoeff() > 1e-3);
  CHECK((J1 * J1 + Eigen::MatrixXd::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-12);

  // strong twists stay calibrated: conjugation by a symplectic map cannot
  // destroy positivity
  auto strong = symplectic_twist_r4(0.9, 1);
  Sampler sampler(3);
  auto report = validate_chart(strong, sampler, 25);
  CHECK(report.ok());

  auto trivial = symplectic_twist_r4(0.0, 1);
  Eigen::MatrixXd J0 = j_at(trivial, p1);
  Eigen::MatrixXd expect = Eigen::MatrixXd::Zero(4, 4);
  expect(1, 0) = 1; expect(0, 1) = -1; expect(3, 2) = 1; expect(2, 3) = -1;
  CHECK((J0 - expect).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("domain lift rejects outside points") {
  auto chart = flat_kahler(1);
  std::vector<double> inside = {0.5, 0.5}, outside = {1.5, 0.0};
  CHECK(domain_lift(chart.domain, inside, 2).size() == 2);
  CHECK_THROWS_AS(domain_lift(chart.domain, outside, 2), DomainError);
}

TEST_CASE("broken structures are rejected by the metric accessor") {
  // J = identity: derived bilinear form equals kappa, which is antisymmetric
  auto asym = flat_kahler(1);
  asym.jmat[0] = const_field(1.0);
  asym.jmat[1] = const_field(0.0);
  asym.jmat[2] = const_field(0.0);
  asym.jmat[3] = const_field(1.0);
  std::vector<double> p = {0.0, 0.0};
  CHECK_THROWS_AS(metric_at(asym, p), StructureError);

  // J = -J0: compatible but anti-calibrated, metric is negative definite
  auto neg = flat_kahler(1);
  neg.jmat[1 * 2 + 0] = const_field(-1.0);
  neg.jmat[0 * 2 + 1] = const_field(1.0);
  CHECK_THROWS_AS(metric_at(neg, p), StructureError);
}

TEST_CASE("validation flags a chart whose J fails to square to minus identity") {
  auto bad = flat_kahler(1);
  bad.jmat[1 * 2 + 0] = const_field(0.9);
  Sampler sampler(5);
  auto report = validate_chart(bad, sampler, 10);
  CHECK(!report.ok());
  bool found = false;
  for (const auto& c : report.checks)
    if (c.name == "j_squared_plus_identity") { found = true; CHECK(!c.pass); }
  CHECK(found);
}

}  // TEST_SUITE
