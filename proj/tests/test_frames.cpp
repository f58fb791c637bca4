#include <doctest.h>

#include <cmath>
#include <complex>

#include "akgeo/complex_frames.hpp"
#include "akgeo/zoo.hpp"

using namespace akgeo;
using cx = std::complex<double>;

namespace {

void check_frame_invariants(const ChartJets& cj, const HermitianFrame& frame) {
  // h-orthonormal, g-isotropic, and of type (1,0)
  for (int i = 0; i < frame.n; ++i) {
    for (int j = 0; j < frame.n; ++j) {
      cx h = h_pair(cj.g0, frame.W[i], frame.W[j]);
      cx target = (i == j) ? 1.0 : 0.0;
      CHECK(std::abs(h - target) < 1e-12);
      CHECK(std::abs(g_bilinear(cj.g0, frame.W[i], frame.W[j])) < 1e-12);
    }
    Eigen::VectorXcd jw = cj.J0 * frame.W[i];
    CHECK((jw - cx(0, 1) * frame.W[i]).cwiseAbs().maxCoeff() < 1e-12);
  }
}

}  // namespace

TEST_SUITE("frames") {

TEST_CASE("Hermitian frame on the nilmanifold at the origin") {
  auto chart = kodaira_thurston();
  std::vector<double> o = {0, 0, 0, 0};
  ChartJets cj(chart, o, 1);
  auto frame = hermitian_orthonormal_frame(cj.g0, cj.J0);
  REQUIRE(frame.n == 2);
  check_frame_invariants(cj, frame);

  const double s = 1.0 / std::sqrt(2.0);
  Eigen::VectorXcd w1_expect(4), w2_expect(4);
  w1_expect << s, 0, cx(0, -s), 0;
  w2_expect << 0, s, 0, cx(0, -s);
  CHECK((frame.W[0] - w1_expect).cwiseAbs().maxCoeff() < 1e-13);
  CHECK((frame.W[1] - w2_expect).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("Hermitian frame at generic points of every zoo family") {
  std::vector<std::pair<AlmostKahlerChart, std::vector<double>>> cases;
  cases.push_back({flat_kahler(3), {0.3, -0.2, 0.7, 0.1, -0.5, 0.4}});
  cases.push_back({kodaira_thurston(), {0.8, 0.3, -0.6, 0.2}});
  cases.push_back({symplectic_twist_r4(0.7, 5), {0.5, -0.4, 0.6, 0.3}});
  for (const auto& [chart, p] : cases) {
    ChartJets cj(chart, p, 1);
    auto frame = hermitian_orthonormal_frame(cj.g0, cj.J0);
    REQUIRE(frame.n == chart.n);
    check_frame_invariants(cj, frame);
  }
}

TEST_CASE("real orthonormal frame from coordinate directions") {
  auto chart = kodaira_thurston();
  std::vector<double> p = {0.9, 0.1, -0.3, 0.5};
  ChartJets cj(chart, p, 1);
  auto frame = real_orthonormal_frame(cj.g0);
  REQUIRE(int(frame.size()) == 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      double target = (i == j) ? 1.0 : 0.0;
      CHECK(frame[i].dot(cj.g0 * frame[j]) == doctest::Approx(target).epsilon(1e-12));
    }
  // first direction is d_x, unit already
  CHECK(frame[0](0) == doctest::Approx(1.0));
}

TEST_CASE("normalized frame germs on the flat chart are constant") {
  auto chart = flat_kahler(2);
  std::vector<double> p = {0.2, -0.1, 0.4, 0.3};
  ChartJets cj(chart, p, 3);
  GnhFrame f = construct_gnh_frame(cj);
  for (int i = 0; i < f.n; ++i) {
    CHECK(f.A[i].cwiseAbs().maxCoeff() == 0.0);
    for (const auto& q : f.quad[i]) CHECK(q.cwiseAbs().maxCoeff() == 0.0);
  }
  auto v = verify_gnh_properties(cj, f);
  CHECK(v.worst() < 1e-14);
}

TEST_CASE("normalized frame germs satisfy all conditions on curved charts") {
  std::vector<std::pair<AlmostKahlerChart, std::vector<double>>> cases;
  cases.push_back({kodaira_thurston(), {0, 0, 0, 0}});
  cases.push_back({kodaira_thurston(), {0.7, -0.3, 0.2, 0.6}});
  cases.push_back({symplectic_twist_r4(0.3, 1), {0.4, 0.2, -0.5, 0.1}});
  cases.push_back({symplectic_twist_r4(0.9, 4), {-0.6, 0.5, 0.3, -0.2}});

  for (const auto& [chart, p] : cases) {
    ChartJets cj(chart, p, 3);
    GnhFrame f = construct_gnh_frame(cj);  // check=true: throws on violation
    auto v = verify_gnh_properties(cj, f);
    CHECK_MESSAGE(v.conj_parallel < 1e-10, chart.label);
    CHECK_MESSAGE(v.holo_derivative < 1e-10, chart.label);
    CHECK_MESSAGE(v.gram_value < 1e-10, chart.label);
    CHECK_MESSAGE(v.gram_derivative < 1e-10, chart.label);
    CHECK_MESSAGE(v.second_mixed < 1e-10, chart.label);

    // germ values reproduce the frame at the base point
    for (int i = 0; i < f.n; ++i) {
      auto Z = f.germ(cj, i);
      CHECK((vj_value(Z) - f.W[i]).cwiseAbs().maxCoeff() < 1e-14);
    }

    // the frame bracket reproduces -1/4 of the Nijenhuis tensor at the base
    for (int i = 0; i < f.n; ++i)
      for (int k = 0; k < f.n; ++k) {
        auto Zi = f.germ(cj, i);
        auto Zk = f.germ(cj, k);
        Eigen::VectorXcd br = vj_value(lie_bracket(Zi, Zk));
        Eigen::VectorXcd nj = vj_value(nijenhuis(cj, Zi, Zk));
        CHECK_MESSAGE((br + 0.25 * nj).cwiseAbs().maxCoeff() < 1e-12,
                      chart.label);
      }
  }
}

TEST_CASE("a perturbed frame fails verification") {
  auto chart = kodaira_thurston();
  std::vector<double> p = {0.3, 0.1, -0.2, 0.5};
  ChartJets cj(chart, p, 3);
  GnhFrame f = construct_gnh_frame(cj);
  f.A[0](0, 0) += 0.01;
  auto v = verify_gnh_properties(cj, f);
  CHECK(v.worst() > 1e-3);
}

TEST_CASE("construction raises when conditions cannot be met to tolerance") {
  auto chart = kodaira_thurston();
  std::vector<double> p = {0.2, 0.4, -0.1, 0.3};
  ChartJets cj(chart, p, 3);
  Tolerances impossible;
  impossible.second_order = 1e-30;
  CHECK_THROWS_AS(construct_gnh_frame(cj, impossible, true), ConstructionError);
  try {
    construct_gnh_frame(cj, impossible, true);
  } catch (const ConstructionError& e) {
    CHECK(e.residual() > 0.0);
    CHECK(!std::string(e.condition()).empty());
  }
}

TEST_CASE("construction requires third-order jets") {
  auto chart = kodaira_thurston();
  std::vector<double> p = {0, 0, 0, 0};
  ChartJets cj(chart, p, 2);
  CHECK_THROWS_AS(construct_gnh_frame(cj), OrderError);
}

}  // TEST_SUITE
