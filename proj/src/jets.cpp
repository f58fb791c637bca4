#include "akgeo/jets.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <unordered_map>

namespace akgeo {

namespace {

std::uint64_t pack_exps(const std::array<std::uint8_t, kMaxJetVars>& e) {
  std::uint64_t key = 0;
  for (int v = 0; v < kMaxJetVars; ++v)
    key |= std::uint64_t(e[v]) << (8 * v);
  return key;
}

struct LayoutBuilder {
  int nvars, order;
  std::vector<std::array<std::uint8_t, kMaxJetVars>> exps;

  void emit(std::array<std::uint8_t, kMaxJetVars>& cur, int var, int left) {
    if (var == nvars - 1) {
      cur[var] = std::uint8_t(left);
      exps.push_back(cur);
      cur[var] = 0;
      return;
    }
    for (int k = left; k >= 0; --k) {
      cur[var] = std::uint8_t(k);
      emit(cur, var + 1, left - k);
    }
    cur[var] = 0;
  }

  std::unique_ptr<JetLayout> build() {
    auto lay = std::make_unique<JetLayout>();
    lay->nvars = nvars;
    lay->order = order;
    std::array<std::uint8_t, kMaxJetVars> cur{};
    for (int d = 0; d <= order; ++d) {
      emit(cur, 0, d);
      lay->counts.push_back(int(exps.size()));
    }
    lay->exps = exps;
    lay->count = int(exps.size());
    lay->degree.resize(lay->count);
    std::unordered_map<std::uint64_t, int> pos;
    pos.reserve(exps.size() * 2);
    for (int t = 0; t < lay->count; ++t) {
      int d = 0;
      for (int v = 0; v < nvars; ++v) d += exps[t][v];
      lay->degree[t] = d;
      pos[pack_exps(exps[t])] = t;
    }
    for (int i = 0; i < lay->count; ++i) {
      for (int j = 0; j < lay->count; ++j) {
        if (lay->degree[i] + lay->degree[j] > order) continue;
        std::array<std::uint8_t, kMaxJetVars> s{};
        for (int v = 0; v < nvars; ++v)
          s[v] = std::uint8_t(exps[i][v] + exps[j][v]);
        lay->mul_i.push_back(std::uint32_t(i));
        lay->mul_j.push_back(std::uint32_t(j));
        lay->mul_k.push_back(std::uint32_t(pos.at(pack_exps(s))));
      }
    }
    if (order >= 1) {
      const int low = lay->counts[order - 1];
      for (int v = 0; v < nvars; ++v) {
        lay->diff_src[v].resize(low);
        for (int t = 0; t < low; ++t) {
          std::array<std::uint8_t, kMaxJetVars> s = exps[t];
          s[v] = std::uint8_t(s[v] + 1);
          lay->diff_src[v][t] = std::uint32_t(pos.at(pack_exps(s)));
        }
      }
    }
    return lay;
  }
};

}  // namespace

int JetLayout::index_of(std::span<const int> multi) const {
  for (int t = 0; t < count; ++t) {
    bool same = true;
    for (int v = 0; v < nvars; ++v)
      if (int(exps[t][v]) != multi[v]) { same = false; break; }
    if (same) return t;
  }
  return -1;
}

const JetLayout& jet_layout(int nvars, int order) {
  if (nvars < 1 || nvars > kMaxJetVars)
    throw std::invalid_argument("jet nvars outside [1, 8]");
  if (order < 0 || order > 16)
    throw std::invalid_argument("jet order outside [0, 16]");
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::unique_ptr<JetLayout>> registry;
  std::lock_guard lock(mu);
  auto& slot = registry[{nvars, order}];
  if (!slot) {
    LayoutBuilder b{nvars, order, {}};
    slot = b.build();
  }
  return *slot;
}

double coeff_inf_norm(const Jet& a) {
  double m = 0.0;
  for (double v : a.coeffs()) m = std::max(m, std::abs(v));
  return m;
}

double coeff_inf_norm(const CJet& a) {
  double m = 0.0;
  for (auto v : a.coeffs()) m = std::max(m, std::abs(v));
  return m;
}

Jet compose(const Jet& u, std::span<const double> derivs) {
  const int m = u.order();
  if (int(derivs.size()) != m + 1)
    throw std::invalid_argument("compose needs order+1 kernel derivatives");
  // Taylor coefficients c_k = f^(k)(u0) / k!
  std::vector<double> c(m + 1);
  double fact = 1.0;
  for (int k = 0; k <= m; ++k) {
    if (k > 1) fact *= k;
    c[k] = derivs[k] / fact;
  }
  Jet d = u;
  d.coeff(0) = 0.0;
  Jet w = Jet::constant(u.nvars(), m, c[m]);
  for (int k = m - 1; k >= 0; --k) w = w * d + c[k];
  return w;
}

Jet jexp(const Jet& u) {
  const int m = u.order();
  std::vector<double> d(m + 1, std::exp(u.value()));
  return compose(u, d);
}

Jet jlog(const Jet& u) {
  const double u0 = u.value();
  if (!(u0 > 0.0)) throw SingularJetError("log of non-positive jet value");
  const int m = u.order();
  std::vector<double> d(m + 1);
  d[0] = std::log(u0);
  // f^(k) = (-1)^(k-1) (k-1)! / u0^k
  double cur = 1.0 / u0;
  for (int k = 1; k <= m; ++k) {
    d[k] = cur;
    cur *= -double(k) / u0;
  }
  return compose(u, d);
}

Jet jsin(const Jet& u) {
  const int m = u.order();
  const double s = std::sin(u.value()), c = std::cos(u.value());
  const double cycle[4] = {s, c, -s, -c};
  std::vector<double> d(m + 1);
  for (int k = 0; k <= m; ++k) d[k] = cycle[k % 4];
  return compose(u, d);
}

Jet jcos(const Jet& u) {
  const int m = u.order();
  const double s = std::sin(u.value()), c = std::cos(u.value());
  const double cycle[4] = {c, -s, -c, s};
  std::vector<double> d(m + 1);
  for (int k = 0; k <= m; ++k) d[k] = cycle[k % 4];
  return compose(u, d);
}

Jet jpow(const Jet& u, double expo) {
  const double u0 = u.value();
  if (!(u0 > 0.0))
    throw SingularJetError("pow of non-positive jet value");
  const int m = u.order();
  std::vector<double> d(m + 1);
  d[0] = std::pow(u0, expo);
  double coef = expo;
  for (int k = 1; k <= m; ++k) {
    d[k] = coef * std::pow(u0, expo - k);
    coef *= (expo - k);
  }
  return compose(u, d);
}

Jet jsqrt(const Jet& u) { return jpow(u, 0.5); }

std::vector<Jet> lift_point(std::span<const double> p, int order) {
  const int n = int(p.size());
  std::vector<Jet> out;
  out.reserve(n);
  for (int v = 0; v < n; ++v)
    out.push_back(Jet::variable(n, order, v, p[v]));
  return out;
}

}  // namespace akgeo
