#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "akgeo/errors.hpp"
#include "akgeo/jets.hpp"

namespace akgeo {

// Axis-aligned coordinate domain of a chart.
struct Box {
  std::vector<double> lo, hi;

  int dim() const { return int(lo.size()); }

  bool contains(std::span<const double> p, double slack = 0.0) const {
    if (int(p.size()) != dim()) return false;
    for (int v = 0; v < dim(); ++v)
      if (p[v] < lo[v] - slack || p[v] > hi[v] + slack) return false;
    return true;
  }
};

inline Box centered_box(int dim, double half_width) {
  Box b;
  b.lo.assign(dim, -half_width);
  b.hi.assign(dim, half_width);
  return b;
}

// A chart entry: smooth function of the coordinates, evaluated on jets so a
// single call produces the value together with all tracked derivatives.
using ScalarField = std::function<Jet(std::span<const Jet>)>;

inline ScalarField const_field(double c) {
  return [c](std::span<const Jet> x) { return x[0] * 0.0 + c; };
}

// Sparse polynomial in the chart coordinates.
struct PolyField {
  struct Term {
    std::vector<int> exps;
    double coeff = 0.0;
  };
  int nvars = 0;
  std::vector<Term> terms;

  Jet operator()(std::span<const Jet> x) const {
    Jet acc = x[0] * 0.0;
    for (const auto& t : terms) {
      Jet m = x[0] * 0.0 + t.coeff;
      for (int v = 0; v < nvars; ++v)
        for (int k = 0; k < t.exps[v]; ++k) m = m * x[v];
      acc = acc + m;
    }
    return acc;
  }

  double eval(std::span<const double> p) const {
    double acc = 0.0;
    for (const auto& t : terms) {
      double m = t.coeff;
      for (int v = 0; v < nvars; ++v)
        for (int k = 0; k < t.exps[v]; ++k) m *= p[v];
      acc += m;
    }
    return acc;
  }
};

inline ScalarField to_field(PolyField pf) {
  return [pf = std::move(pf)](std::span<const Jet> x) { return pf(x); };
}

inline double field_value(const ScalarField& f, std::span<const double> p) {
  return f(lift_point(p, 0)).value();
}

// Coordinate lifts with a domain check.
inline std::vector<Jet> domain_lift(const Box& box, std::span<const double> p,
                                    int order, double slack = 1e-9) {
  if (!box.contains(p, slack))
    throw DomainError("point outside chart domain");
  return lift_point(p, order);
}

}  // namespace akgeo
