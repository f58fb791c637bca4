#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "akgeo/fields.hpp"

namespace akgeo {

// Deterministic point sampler. The uniform deviate is derived from raw
// mt19937_64 output directly (not through a distribution object) so the
// stream of samples is identical across standard library implementations.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  double uniform01() { return double(rng_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) {
    return lo + (hi - lo) * uniform01();
  }

  std::vector<double> point(const Box& box) {
    std::vector<double> p(box.dim());
    for (int v = 0; v < box.dim(); ++v) p[v] = uniform(box.lo[v], box.hi[v]);
    return p;
  }

  // Points kept away from the domain boundary, leaving room for frame
  // constructions and finite shifts.
  std::vector<double> interior_point(const Box& box, double margin = 0.1) {
    std::vector<double> p(box.dim());
    for (int v = 0; v < box.dim(); ++v) {
      double w = (box.hi[v] - box.lo[v]) * margin;
      p[v] = uniform(box.lo[v] + w, box.hi[v] - w);
    }
    return p;
  }

  std::uint64_t raw() { return rng_(); }

 private:
  std::mt19937_64 rng_;
};

}  // namespace akgeo
