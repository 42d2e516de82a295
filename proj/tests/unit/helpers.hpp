#pragma once

#include <cmath>
#include <random>

#include "corostab/stability.hpp"
#include "corostab/tensor.hpp"

namespace test {

using namespace corostab;

inline Sym3 random_sym(Rng& rng, double scale = 1.0) {
  std::normal_distribution<double> n(0.0, scale);
  return Sym3({n(rng), n(rng), n(rng), n(rng), n(rng), n(rng)});
}

inline Sym3 random_unit_sym(Rng& rng) {
  const Sym3 s = random_sym(rng);
  return (1.0 / s.norm()) * s;
}

inline Skew3 random_skew(Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  return Skew3(n(rng), n(rng), n(rng));
}

inline double rel(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

inline double frob(const Mat3& m) { return m.norm(); }

}  // namespace test
