#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <random>
#include <vector>

#include "akgeo/jets.hpp"
#include "support/fd.hpp"

using akgeo::CJet;
using akgeo::Jet;

namespace {

double sinw(double x) { return std::sin(x); }
double cosw(double x) { return std::cos(x); }
double expw(double x) { return std::exp(x); }
Jet sinw(const Jet& x) { return akgeo::jsin(x); }
Jet cosw(const Jet& x) { return akgeo::jcos(x); }
Jet expw(const Jet& x) { return akgeo::jexp(x); }

// Random smooth field mixing a cubic polynomial with two bounded waves,
// evaluable both on plain doubles (for the finite-difference oracle) and on
// jets (for the code under test).
struct RandomField {
  int nvars = 1;
  struct Term {
    std::array<int, 4> e{};
    double c = 0;
  };
  std::vector<Term> terms;
  std::array<double, 4> u{}, w{};
  double a = 0, b = 0, phase = 0;

  template <class Vec>
  auto eval(const Vec& x) const {
    auto zero = x[0] * 0.0;
    auto acc = zero;
    for (const auto& t : terms) {
      auto m = zero + t.c;
      for (int v = 0; v < nvars; ++v)
        for (int k = 0; k < t.e[v]; ++k) m = m * x[v];
      acc = acc + m;
    }
    auto l1 = zero + phase;
    auto l2 = zero;
    for (int v = 0; v < nvars; ++v) {
      l1 = l1 + u[v] * x[v];
      l2 = l2 + w[v] * x[v];
    }
    return acc + a * sinw(l1) + b * expw(cosw(l2) * 0.2);
  }

  double operator()(std::span<const double> x) const { return eval(x); }

  Jet lift(std::span<const double> p, int order) const {
    return eval(akgeo::lift_point(p, order));
  }
};

RandomField random_field(std::mt19937_64& rng, int nvars) {
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  std::uniform_int_distribution<int> deg(0, 3);
  RandomField f;
  f.nvars = nvars;
  for (int t = 0; t < 4; ++t) {
    RandomField::Term term;
    int d = deg(rng);
    std::uniform_int_distribution<int> pick(0, nvars - 1);
    for (int k = 0; k < d; ++k) term.e[pick(rng)] += 1;
    term.c = coef(rng);
    f.terms.push_back(term);
  }
  for (int v = 0; v < nvars; ++v) {
    f.u[v] = coef(rng);
    f.w[v] = coef(rng);
  }
  f.a = coef(rng);
  f.b = coef(rng);
  f.phase = coef(rng);
  return f;
}

std::vector<int> random_multi(std::mt19937_64& rng, int nvars) {
  std::uniform_int_distribution<int> deg(0, 3);
  std::uniform_int_distribution<int> pick(0, nvars - 1);
  std::vector<int> multi(nvars, 0);
  int d = deg(rng);
  for (int k = 0; k < d; ++k) multi[pick(rng)] += 1;
  return multi;
}

}  // namespace

TEST_SUITE("jets") {

TEST_CASE("square of a coordinate carries exact first and second partials") {
  double p[] = {1.0};
  auto x = akgeo::lift_point(p, 2);
  Jet f = x[0] * x[0];
  int m0[] = {0}, m1[] = {1}, m2[] = {2};
  CHECK(akgeo::extract_partial(f, std::span<const int>(m0)) == doctest::Approx(1.0));
  CHECK(akgeo::extract_partial(f, std::span<const int>(m1)) == doctest::Approx(2.0));
  CHECK(akgeo::extract_partial(f, std::span<const int>(m2)) == doctest::Approx(2.0));
}

TEST_CASE("constants have vanishing derivatives") {
  Jet c = Jet::constant(3, 3, 5.0);
  CHECK(c.value() == 5.0);
  for (int v = 0; v < 3; ++v)
    CHECK(akgeo::coeff_inf_norm(c.derivative(v)) == 0.0);
}

TEST_CASE("product of coordinate lifts") {
  double p[] = {2.0, 3.0};
  auto x = akgeo::lift_point(p, 1);
  Jet f = x[0] * x[1];
  CHECK(f.value() == doctest::Approx(6.0));
  int mx[] = {1, 0}, my[] = {0, 1};
  CHECK(akgeo::extract_partial(f, std::span<const int>(mx)) == doctest::Approx(3.0));
  CHECK(akgeo::extract_partial(f, std::span<const int>(my)) == doctest::Approx(2.0));
}

TEST_CASE("reciprocal of a coordinate") {
  double p[] = {2.0};
  auto x = akgeo::lift_point(p, 2);
  Jet f = 1.0 / x[0];
  int m0[] = {0}, m1[] = {1}, m2[] = {2};
  CHECK(akgeo::extract_partial(f, std::span<const int>(m0)) == doctest::Approx(0.5));
  CHECK(akgeo::extract_partial(f, std::span<const int>(m1)) == doctest::Approx(-0.25));
  CHECK(akgeo::extract_partial(f, std::span<const int>(m2)) == doctest::Approx(0.25));
}

TEST_CASE("sin(x)*y partials at the origin cross-checked by finite differences") {
  std::vector<double> p = {0.0, 1.0};
  auto x = akgeo::lift_point(p, 3);
  Jet f = akgeo::jsin(x[0]) * x[1];

  CHECK(f.value() == doctest::Approx(0.0));
  int mdx[] = {1, 0}, mdy[] = {0, 1}, mdxy[] = {1, 1}, mdxx[] = {2, 0};
  CHECK(akgeo::extract_partial(f, std::span<const int>(mdx)) == doctest::Approx(1.0));
  CHECK(akgeo::extract_partial(f, std::span<const int>(mdy)) == doctest::Approx(0.0));
  CHECK(akgeo::extract_partial(f, std::span<const int>(mdxy)) == doctest::Approx(1.0));
  CHECK(akgeo::extract_partial(f, std::span<const int>(mdxx)) == doctest::Approx(0.0));

  fd::Field g = [](std::span<const double> q) { return std::sin(q[0]) * q[1]; };
  for (auto multi : {std::vector<int>{1, 0}, {0, 1}, {1, 1}, {2, 0}, {2, 1}}) {
    double jet_val = akgeo::extract_partial(f, multi);
    double fd_val = fd::partial(g, p, multi);
    CHECK_MESSAGE(fd::agree(jet_val, fd_val, 1e-6), "multi ", multi[0], multi[1]);
  }
}

TEST_CASE("linear coordinate field in four variables") {
  std::vector<double> p = {0.7, 0.1, -0.4, 0.9};
  auto x = akgeo::lift_point(p, 3);
  Jet f = -x[0];
  CHECK(f.value() == doctest::Approx(-0.7));
  int m[] = {1, 0, 0, 0};
  CHECK(akgeo::extract_partial(f, std::span<const int>(m)) == doctest::Approx(-1.0));
}

TEST_CASE("lower order layouts are prefixes of higher ones") {
  const auto& lo = akgeo::jet_layout(3, 2);
  const auto& hi = akgeo::jet_layout(3, 4);
  REQUIRE(lo.count <= hi.count);
  CHECK(lo.count == hi.counts[2]);
  for (int t = 0; t < lo.count; ++t) CHECK(lo.exps[t] == hi.exps[t]);
}

TEST_CASE("mixed order arithmetic truncates to the smaller order") {
  double p[] = {0.3, -0.2};
  auto x3 = akgeo::lift_point(p, 3);
  auto x2 = akgeo::lift_point(p, 2);
  Jet a = akgeo::jsin(x3[0]) * x3[1];
  Jet b = akgeo::jcos(x2[0]) + x2[1];
  Jet sum = a + b;
  Jet prod = a * b;
  CHECK(sum.order() == 2);
  CHECK(prod.order() == 2);
  Jet a2 = a.truncated(2);
  CHECK(akgeo::coeff_inf_norm(sum - (a2 + b)) == 0.0);
  CHECK(akgeo::coeff_inf_norm(prod - (a2 * b)) < 1e-15);
}

TEST_CASE("derivative agrees with extracted first partials") {
  double p[] = {0.4, 0.8, -0.3};
  auto x = akgeo::lift_point(p, 3);
  Jet f = akgeo::jexp(x[0] * x[1]) + akgeo::jsin(x[2]) * x[0];
  for (int v = 0; v < 3; ++v) {
    std::vector<int> m(3, 0);
    m[v] = 1;
    CHECK(f.derivative(v).value() ==
          doctest::Approx(akgeo::extract_partial(f, m)).epsilon(1e-12));
  }
}

TEST_CASE("analytic kernel identities hold jetwise") {
  double p[] = {0.9, -0.5};
  auto x = akgeo::lift_point(p, 3);
  Jet u = 1.5 + x[0] * x[0] + 0.3 * x[1];

  CHECK(akgeo::coeff_inf_norm(akgeo::jexp(akgeo::jlog(u)) - u) < 1e-12);
  Jet s = akgeo::jsin(u), c = akgeo::jcos(u);
  CHECK(akgeo::coeff_inf_norm(s * s + c * c - 1.0) < 1e-12);
  Jet r = akgeo::jsqrt(u);
  CHECK(akgeo::coeff_inf_norm(r * r - u) < 1e-12);
  CHECK(akgeo::coeff_inf_norm(akgeo::jpow(u, 1.5) - r * r * r) < 1e-12);
  CHECK(akgeo::coeff_inf_norm(u * akgeo::reciprocal(u) - 1.0) < 1e-12);
}

TEST_CASE("complex jets: algebra, conjugation and recombination") {
  using cx = std::complex<double>;
  double p[] = {0.2, 0.6};
  auto x = akgeo::lift_point(p, 2);
  CJet z = akgeo::complexify(x[0]) + cx(0, 1) * akgeo::complexify(x[1]);

  CJet z2 = z * z;
  CJet i2 = CJet::constant(2, 2, cx(0, 1)) * CJet::constant(2, 2, cx(0, 1));
  CHECK(std::abs(i2.value() + 1.0) < 1e-15);

  // conj(z*z) == conj(z)*conj(z)
  CHECK(akgeo::coeff_inf_norm(akgeo::conj(z2) - akgeo::conj(z) * akgeo::conj(z)) < 1e-15);

  // real/imag recombination
  Jet re = akgeo::real_part(z2), im = akgeo::imag_part(z2);
  CJet back = akgeo::complexify(re) + cx(0, 1) * akgeo::complexify(im);
  CHECK(akgeo::coeff_inf_norm(back - z2) < 1e-15);

  // real jet times complex jet promotes
  auto mixed = x[0] * z;
  static_assert(std::is_same_v<decltype(mixed), CJet>);
  CHECK(std::abs(mixed.value() - cx(0.2, 0.0) * cx(0.2, 0.6)) < 1e-15);
}

TEST_CASE("random smooth fields agree with the finite-difference oracle") {
  std::mt19937_64 rng(20240817);
  std::uniform_real_distribution<double> pt(-0.8, 0.8);
  int checked = 0;
  for (int iter = 0; iter < 200; ++iter) {
    int nvars = 1 + int(rng() % 4);
    RandomField f = random_field(rng, nvars);
    std::vector<double> p(nvars);
    for (auto& v : p) v = pt(rng);
    auto multi = random_multi(rng, nvars);

    Jet jf = f.lift(p, 3);
    double jet_val = akgeo::extract_partial(jf, multi);
    fd::Field g = [&](std::span<const double> q) { return f(q); };
    double fd_val = fd::partial(g, p, multi);
    CHECK_MESSAGE(fd::agree(jet_val, fd_val, 1e-6),
                  "iter ", iter, " jet ", jet_val, " fd ", fd_val);
    ++checked;
  }
  CHECK(checked == 200);
}

TEST_CASE("functoriality of lift against pointwise algebra") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> pt(-0.7, 0.7);
  for (int iter = 0; iter < 20; ++iter) {
    RandomField f = random_field(rng, 3);
    RandomField g = random_field(rng, 3);
    std::vector<double> p = {pt(rng), pt(rng), pt(rng)};
    Jet jf = f.lift(p, 3), jg = g.lift(p, 3);

    auto x = akgeo::lift_point(p, 3);
    Jet sum_direct = f.eval(x) + g.eval(x);
    CHECK(akgeo::coeff_inf_norm(sum_direct - (jf + jg)) < 1e-12);
    Jet prod_direct = f.eval(x) * g.eval(x);
    CHECK(akgeo::coeff_inf_norm(prod_direct - jf * jg) < 1e-12);
  }
}

TEST_CASE("error paths") {
  Jet c0 = Jet::constant(2, 0, 1.0);
  CHECK_THROWS_AS(c0.derivative(0), akgeo::OrderError);

  Jet z = Jet::constant(2, 2, 0.0);
  CHECK_THROWS_AS(akgeo::reciprocal(z), akgeo::SingularJetError);
  CHECK_THROWS_AS(akgeo::jlog(z), akgeo::SingularJetError);
  CHECK_THROWS_AS(akgeo::jsqrt(Jet::constant(1, 2, -1.0)), akgeo::SingularJetError);

  Jet a = Jet::constant(2, 2, 1.0);
  Jet b = Jet::constant(3, 2, 1.0);
  CHECK_THROWS_AS(a + b, std::invalid_argument);

  double p[] = {1.0};
  auto x = akgeo::lift_point(p, 2);
  int m3[] = {3};
  CHECK_THROWS_AS(akgeo::extract_partial(x[0], std::span<const int>(m3)),
                  akgeo::OrderError);

  CHECK_THROWS_AS(akgeo::jet_layout(9, 3), std::invalid_argument);
  CHECK_THROWS_AS(akgeo::jet_layout(0, 3), std::invalid_argument);
}

}  // TEST_SUITE
