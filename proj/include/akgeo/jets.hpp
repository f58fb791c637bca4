#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <type_traits>
#include <vector>

#include "akgeo/errors.hpp"

namespace akgeo {

inline constexpr int kMaxJetVars = 8;

// Dense truncated multivariate Taylor arithmetic. A jet stores the monomial
// coefficients of an expansion around a base point, indexed by multi-indices
// of total degree <= order. Layouts are shared per (nvars, order) and the
// multi-index enumeration is degree-major, so the index set of a lower order
// is a prefix of every higher order with the same nvars.
struct JetLayout {
  int nvars = 0;
  int order = 0;
  int count = 0;
  std::vector<std::array<std::uint8_t, kMaxJetVars>> exps;
  std::vector<int> degree;
  // counts[d] = number of multi-indices with total degree <= d
  std::vector<int> counts;
  // multiplication triples r[k] += a[i] * b[j]
  std::vector<std::uint32_t> mul_i, mul_j, mul_k;
  // derivative tables: diff_src[v][t] is the position, in this layout, of
  // exps[t] + e_v for every t below counts[order-1]
  std::array<std::vector<std::uint32_t>, kMaxJetVars> diff_src;

  int index_of(std::span<const int> multi) const;  // -1 when absent
};

const JetLayout& jet_layout(int nvars, int order);

template <class T>
class JetT {
 public:
  JetT() = default;

  static JetT constant(int nvars, int order, T v) {
    JetT j(&jet_layout(nvars, order));
    j.c_[0] = v;
    return j;
  }

  // Lift of the coordinate function x_var around base value.
  static JetT variable(int nvars, int order, int var, T base) {
    if (var < 0 || var >= nvars)
      throw std::invalid_argument("jet variable index out of range");
    JetT j(&jet_layout(nvars, order));
    j.c_[0] = base;
    if (order >= 1) j.c_[1 + var] = T(1);
    return j;
  }

  static JetT zero_like(const JetT& other) { return JetT(other.lay_); }

  explicit JetT(const JetLayout* lay) : lay_(lay), c_(lay->count, T(0)) {}

  int nvars() const { return lay_->nvars; }
  int order() const { return lay_->order; }
  const JetLayout& layout() const { return *lay_; }
  bool valid() const { return lay_ != nullptr; }

  T value() const { return c_[0]; }
  T coeff(int pos) const { return c_[pos]; }
  T& coeff(int pos) { return c_[pos]; }
  std::span<const T> coeffs() const { return c_; }

  // d/dx_var, exact to order-1.
  JetT derivative(int var) const {
    if (var < 0 || var >= lay_->nvars)
      throw std::invalid_argument("jet variable index out of range");
    if (lay_->order == 0) throw OrderError("jet order exhausted by derivative");
    const JetLayout& lo = jet_layout(lay_->nvars, lay_->order - 1);
    JetT r(&lo);
    const auto& src = lay_->diff_src[var];
    for (int t = 0; t < lo.count; ++t)
      r.c_[t] = c_[src[t]] * T(lo.exps[t][var] + 1);
    return r;
  }

  JetT truncated(int new_order) const {
    if (new_order < 0) throw std::invalid_argument("negative jet order");
    if (new_order >= lay_->order) return *this;
    const JetLayout& lo = jet_layout(lay_->nvars, new_order);
    JetT r(&lo);
    for (int t = 0; t < lo.count; ++t) r.c_[t] = c_[t];
    return r;
  }

  JetT operator-() const {
    JetT r(lay_);
    for (int t = 0; t < lay_->count; ++t) r.c_[t] = -c_[t];
    return r;
  }

  JetT& operator+=(T s) { c_[0] += s; return *this; }
  JetT& operator-=(T s) { c_[0] -= s; return *this; }
  JetT& operator*=(T s) {
    for (auto& v : c_) v *= s;
    return *this;
  }

  template <class U>
  friend class JetT;

  template <class A, class B>
  friend auto operator+(const JetT<A>&, const JetT<B>&);
  template <class A, class B>
  friend auto operator-(const JetT<A>&, const JetT<B>&);
  template <class A, class B>
  friend auto operator*(const JetT<A>&, const JetT<B>&);

 private:
  const JetLayout* lay_ = nullptr;
  std::vector<T> c_;
};

using Jet = JetT<double>;
using CJet = JetT<std::complex<double>>;

namespace detail {

inline const JetLayout* binary_layout(const JetLayout* a, const JetLayout* b) {
  if (a->nvars != b->nvars)
    throw std::invalid_argument("jet operands disagree in nvars");
  return a->order <= b->order ? a : b;
}

// Scalars admitted into jet arithmetic; arithmetic types are promoted to
// double so complex coefficients always pair with double or complex<double>.
template <class S>
concept JetScalar = std::is_arithmetic_v<S> ||
                    std::is_same_v<S, std::complex<double>>;

template <class S>
auto norm_scalar(S s) {
  if constexpr (std::is_arithmetic_v<S>)
    return static_cast<double>(s);
  else
    return s;
}

}  // namespace detail

// Binary ops truncate to the smaller operand order; the shared degree-major
// enumeration makes positions of the smaller layout valid in the larger one.
template <class A, class B>
auto operator+(const JetT<A>& a, const JetT<B>& b) {
  using R = decltype(A{} + B{});
  const JetLayout* lay = detail::binary_layout(a.lay_, b.lay_);
  JetT<R> r(lay);
  for (int t = 0; t < lay->count; ++t) r.coeff(t) = a.c_[t] + b.c_[t];
  return r;
}

template <class A, class B>
auto operator-(const JetT<A>& a, const JetT<B>& b) {
  using R = decltype(A{} - B{});
  const JetLayout* lay = detail::binary_layout(a.lay_, b.lay_);
  JetT<R> r(lay);
  for (int t = 0; t < lay->count; ++t) r.coeff(t) = a.c_[t] - b.c_[t];
  return r;
}

template <class A, class B>
auto operator*(const JetT<A>& a, const JetT<B>& b) {
  using R = decltype(A{} * B{});
  const JetLayout* lay = detail::binary_layout(a.lay_, b.lay_);
  JetT<R> r(lay);
  const auto n = lay->mul_i.size();
  for (std::size_t t = 0; t < n; ++t)
    r.coeff(lay->mul_k[t]) += a.c_[lay->mul_i[t]] * b.c_[lay->mul_j[t]];
  return r;
}

template <class A, detail::JetScalar S>
auto operator*(const JetT<A>& a, S s) {
  auto sn = detail::norm_scalar(s);
  using R = decltype(A{} * sn);
  JetT<R> r(&a.layout());
  for (int t = 0; t < a.layout().count; ++t) r.coeff(t) = a.coeff(t) * sn;
  return r;
}

template <class A, detail::JetScalar S>
auto operator*(S s, const JetT<A>& a) {
  return a * s;
}

template <class A, detail::JetScalar S>
auto operator+(const JetT<A>& a, S s) {
  auto sn = detail::norm_scalar(s);
  using R = decltype(A{} + sn);
  JetT<R> r(&a.layout());
  for (int t = 0; t < a.layout().count; ++t) r.coeff(t) = R(a.coeff(t));
  r.coeff(0) += sn;
  return r;
}

template <class A, detail::JetScalar S>
auto operator+(S s, const JetT<A>& a) {
  return a + s;
}

template <class A, detail::JetScalar S>
auto operator-(const JetT<A>& a, S s) {
  auto sn = detail::norm_scalar(s);
  return a + (-sn);
}

template <class A, detail::JetScalar S>
auto operator-(S s, const JetT<A>& a) {
  return (-a) + s;
}

// 1/u as a truncated geometric series in (u - u0), evaluated by Horner.
template <class T>
JetT<T> reciprocal(const JetT<T>& u) {
  T u0 = u.value();
  if (std::abs(u0) == 0.0)
    throw SingularJetError("reciprocal of jet with zero value");
  JetT<T> d = u;
  d.coeff(0) = T(0);
  const int m = u.order();
  const T inv = T(1) / u0;
  // c_k = inv * (-inv)^k
  std::vector<T> c(m + 1);
  c[0] = inv;
  for (int k = 1; k <= m; ++k) c[k] = c[k - 1] * (-inv);
  JetT<T> w = JetT<T>::constant(u.nvars(), u.order(), c[m]);
  for (int k = m - 1; k >= 0; --k) w = w * d + c[k];
  return w;
}

template <class A, class B>
auto operator/(const JetT<A>& a, const JetT<B>& b) {
  return a * reciprocal(b);
}

template <class A, detail::JetScalar S>
auto operator/(const JetT<A>& a, S s) {
  auto sn = detail::norm_scalar(s);
  return a * (decltype(sn)(1) / sn);
}

template <class A, detail::JetScalar S>
auto operator/(S s, const JetT<A>& a) {
  return detail::norm_scalar(s) * reciprocal(a);
}

inline CJet complexify(const Jet& a) {
  CJet r(&a.layout());
  for (int t = 0; t < a.layout().count; ++t) r.coeff(t) = a.coeff(t);
  return r;
}

inline CJet conj(const CJet& a) {
  CJet r(&a.layout());
  for (int t = 0; t < a.layout().count; ++t) r.coeff(t) = std::conj(a.coeff(t));
  return r;
}

inline Jet real_part(const CJet& a) {
  Jet r(&a.layout());
  for (int t = 0; t < a.layout().count; ++t) r.coeff(t) = a.coeff(t).real();
  return r;
}

inline Jet imag_part(const CJet& a) {
  Jet r(&a.layout());
  for (int t = 0; t < a.layout().count; ++t) r.coeff(t) = a.coeff(t).imag();
  return r;
}

double coeff_inf_norm(const Jet& a);
double coeff_inf_norm(const CJet& a);

// Composition with a univariate analytic kernel. derivs[k] is the k-th
// derivative of the kernel evaluated at u.value(); size must be order+1.
Jet compose(const Jet& u, std::span<const double> derivs);

Jet jexp(const Jet& u);
Jet jlog(const Jet& u);
Jet jsin(const Jet& u);
Jet jcos(const Jet& u);
Jet jsqrt(const Jet& u);
Jet jpow(const Jet& u, double expo);

// Identity lifts of the coordinates around p.
std::vector<Jet> lift_point(std::span<const double> p, int order);

// Partial derivative for a multi-index: monomial coefficient times the
// multi-index factorial. Degree above the jet order is an OrderError.
template <class T>
T extract_partial(const JetT<T>& j, std::span<const int> multi) {
  if ((int)multi.size() != j.nvars())
    throw std::invalid_argument("multi-index size mismatch");
  int deg = 0;
  for (int m : multi) {
    if (m < 0) throw std::invalid_argument("negative multi-index entry");
    deg += m;
  }
  if (deg > j.order()) throw OrderError("partial degree exceeds jet order");
  int pos = j.layout().index_of(multi);
  if (pos < 0) throw std::logic_error("multi-index missing from jet layout");
  double fact = 1.0;
  for (int m : multi)
    for (int k = 2; k <= m; ++k) fact *= k;
  return j.coeff(pos) * T(fact);
}

}  // namespace akgeo
