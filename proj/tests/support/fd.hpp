#pragma once

// Finite-difference oracle used by the tests to cross-check derivatives
// produced by jet arithmetic. Central differences with one Richardson
// extrapolation level per axis, applied recursively for mixed partials.

#include <cmath>
#include <functional>
#include <span>
#include <vector>

namespace fd {

using Field = std::function<double(std::span<const double>)>;

inline double step_for_degree(int degree) {
  // Third-order partials hit the roundoff floor near eps/h^3, so they get a
  // larger step than first and second order.
  return degree >= 3 ? 1e-2 : 1e-4;
}

namespace detail {

inline double partial_rec(const Field& f, std::vector<double> p,
                          std::vector<int> multi, double h) {
  int axis = -1;
  for (int v = 0; v < int(multi.size()); ++v)
    if (multi[v] > 0) { axis = v; break; }
  if (axis < 0) return f(p);

  multi[axis] -= 1;
  auto lower = [&](double x) {
    std::vector<double> q = p;
    q[axis] = x;
    return partial_rec(f, q, multi, h);
  };
  const double x0 = p[axis];
  auto central = [&](double hh) {
    return (lower(x0 + hh) - lower(x0 - hh)) / (2.0 * hh);
  };
  const double d_h = central(h);
  const double d_h2 = central(h / 2.0);
  return (4.0 * d_h2 - d_h) / 3.0;
}

}  // namespace detail

inline double partial(const Field& f, std::span<const double> p,
                      std::span<const int> multi) {
  int degree = 0;
  for (int m : multi) degree += m;
  return detail::partial_rec(f, {p.begin(), p.end()},
                             {multi.begin(), multi.end()},
                             step_for_degree(degree));
}

inline bool agree(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace fd
