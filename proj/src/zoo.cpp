#include "akgeo/zoo.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <memory>

namespace akgeo {

namespace {

PolyField linear_term(int nvars, int var, double coeff) {
  PolyField pf;
  pf.nvars = nvars;
  PolyField::Term t;
  t.exps.assign(nvars, 0);
  t.exps[var] = 1;
  t.coeff = coeff;
  pf.terms.push_back(t);
  return pf;
}

ScalarField zero_field() { return const_field(0.0); }

void init_zero(AlmostKahlerChart& c) {
  const int d = c.dim();
  c.kappa_upper.assign(std::size_t(d) * (d - 1) / 2, zero_field());
  c.jmat.assign(std::size_t(d) * d, zero_field());
}

}  // namespace

AlmostKahlerChart flat_kahler(int n) {
  if (n < 1 || n > 4)
    throw std::invalid_argument("flat chart needs n in [1, 4]");
  AlmostKahlerChart c;
  c.label = "flat_kahler_n" + std::to_string(n);
  c.n = n;
  c.domain = centered_box(2 * n, 1.0);
  init_zero(c);
  const int d = 2 * n;
  for (int i = 0; i < n; ++i) {
    c.kappa_upper[c.pair_index(2 * i, 2 * i + 1)] = const_field(1.0);
    c.jmat[(2 * i + 1) * d + 2 * i] = const_field(1.0);
    c.jmat[(2 * i) * d + 2 * i + 1] = const_field(-1.0);
  }
  return c;
}

AlmostKahlerChart kodaira_thurston() {
  AlmostKahlerChart c;
  c.label = "kodaira_thurston";
  c.n = 2;
  c.domain = centered_box(4, 1.0);
  init_zero(c);
  const int d = 4;
  // coordinates (x, y, z, t) = (0, 1, 2, 3)
  c.kappa_upper[c.pair_index(0, 1)] = to_field(linear_term(4, 0, -1.0));
  c.kappa_upper[c.pair_index(0, 2)] = const_field(1.0);
  c.kappa_upper[c.pair_index(1, 3)] = const_field(1.0);

  c.jmat[2 * d + 0] = const_field(1.0);                     // J(dx) has dz part
  c.jmat[0 * d + 1] = to_field(linear_term(4, 0, 1.0));     // J(dy): x dx + dt
  c.jmat[3 * d + 1] = const_field(1.0);
  c.jmat[0 * d + 2] = const_field(-1.0);                    // J(dz) = -dx
  c.jmat[1 * d + 3] = const_field(-1.0);                    // J(dt): -dy - x dz
  c.jmat[2 * d + 3] = to_field(linear_term(4, 0, -1.0));
  return c;
}

namespace {

// Shared per-chart precomputation for the twisted structure: the matrix
// coefficients of J(u) = exp(uA) J0 exp(-uA) as a polynomial in u.
struct TwistData {
  static constexpr int kTerms = 33;
  double eps = 0.0;
  std::array<Eigen::Matrix4d, kTerms> coef;
};

std::shared_ptr<TwistData> make_twist_data(double eps, std::uint64_t seed) {
  Eigen::Matrix4d K0 = Eigen::Matrix4d::Zero();
  K0(0, 1) = 1; K0(1, 0) = -1; K0(2, 3) = 1; K0(3, 2) = -1;
  Eigen::Matrix4d J0 = Eigen::Matrix4d::Zero();
  J0(1, 0) = 1; J0(0, 1) = -1; J0(3, 2) = 1; J0(2, 3) = -1;

  Sampler sampler(seed);
  Eigen::Matrix4d S;
  for (int a = 0; a < 4; ++a)
    for (int b = a; b < 4; ++b) {
      double v = sampler.uniform(-1.0, 1.0);
      S(a, b) = v;
      S(b, a) = v;
    }
  S /= S.norm();
  // kappa0^{-1} = -K0 for this block form, so A = -K0 * S is Hamiltonian:
  // (K0 A)^T = K0 A, hence exp(uA) is symplectic for every u.
  Eigen::Matrix4d A = -K0 * S;

  auto data = std::make_shared<TwistData>();
  data->eps = eps;
  // powers[k] = A^k / k!
  std::array<Eigen::Matrix4d, TwistData::kTerms> powers;
  powers[0] = Eigen::Matrix4d::Identity();
  for (int k = 1; k < TwistData::kTerms; ++k)
    powers[k] = powers[k - 1] * A / double(k);
  for (int m = 0; m < TwistData::kTerms; ++m) {
    Eigen::Matrix4d c = Eigen::Matrix4d::Zero();
    for (int k = 0; k <= m; ++k) {
      const int l = m - k;
      const double sign = (l % 2 == 0) ? 1.0 : -1.0;
      c += sign * powers[k] * J0 * powers[l];
    }
    data->coef[m] = c;
  }
  return data;
}

}  // namespace

AlmostKahlerChart symplectic_twist_r4(double eps, std::uint64_t seed) {
  if (!(eps >= 0.0) || eps > 2.0)
    throw std::invalid_argument("twist strength must lie in [0, 2]");
  AlmostKahlerChart c;
  char label[64];
  std::snprintf(label, sizeof(label), "symplectic_twist_r4_eps%g", eps);
  c.label = label;
  c.n = 2;
  c.domain = centered_box(4, 1.0);
  init_zero(c);
  const int d = 4;
  c.kappa_upper[c.pair_index(0, 1)] = const_field(1.0);
  c.kappa_upper[c.pair_index(2, 3)] = const_field(1.0);

  auto data = make_twist_data(eps, seed);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      c.jmat[a * d + b] = [data, a, b](std::span<const Jet> x) {
        Jet u = x[0] * x[2] * data->eps;
        Jet w = u * 0.0 + data->coef[TwistData::kTerms - 1](a, b);
        for (int m = TwistData::kTerms - 2; m >= 0; --m)
          w = w * u + data->coef[m](a, b);
        return w;
      };
    }
  return c;
}

const std::vector<ZooEntry>& zoo_entries() {
  static const std::vector<ZooEntry> entries = {
      {"flat_kahler",
       "flat Kahler C^n, constant structure",
       {{"n", 2.0}},
       "kahler-consistent"},
      {"kodaira_thurston",
       "left-invariant structure on the Kodaira-Thurston nilmanifold",
       {},
       "non-integrable"},
      {"symplectic_twist_r4",
       "flat symplectic R^4, J conjugated by a position-dependent symplectic map",
       {{"eps", 0.3}, {"seed", 1.0}},
       "non-integrable for eps > 0, kahler-consistent at eps = 0"},
  };
  return entries;
}

AlmostKahlerChart make_zoo_chart(const std::string& id,
                                 const std::map<std::string, double>& overrides) {
  const ZooEntry* entry = nullptr;
  for (const auto& e : zoo_entries())
    if (e.id == id) { entry = &e; break; }
  if (!entry) throw std::invalid_argument("unknown chart id: " + id);

  std::map<std::string, double> params = entry->params;
  for (const auto& [k, v] : overrides) {
    if (!params.count(k))
      throw std::invalid_argument("chart " + id + " has no parameter '" + k + "'");
    params[k] = v;
  }

  if (id == "flat_kahler") {
    double n = params.at("n");
    if (n != std::floor(n))
      throw std::invalid_argument("parameter n must be an integer");
    return flat_kahler(int(n));
  }
  if (id == "kodaira_thurston") return kodaira_thurston();
  // symplectic_twist
  double seed = params.at("seed");
  if (seed != std::floor(seed) || seed < 0)
    throw std::invalid_argument("parameter seed must be a non-negative integer");
  return symplectic_twist_r4(params.at("eps"), std::uint64_t(seed));
}

}  // namespace akgeo
