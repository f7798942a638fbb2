#pragma once

#include <array>
#include <cmath>
#include <cstddef>

#include <Eigen/Dense>

#include "psgeo/errors.hpp"
#include "psgeo/rng.hpp"

namespace psgeo {

/// Point locations, one row per point.
using Locations = Eigen::Matrix<double, Eigen::Dynamic, 2>;

/// Axis-aligned rectangular study window.
class Region {
 public:
  Region() : Region({0.0, 0.0}, {1.0, 1.0}) {}
  Region(std::array<double, 2> lower, std::array<double, 2> upper) : lower_(lower), upper_(upper) {
    for (int d = 0; d < 2; ++d) {
      if (!(upper_[d] > lower_[d])) throw ConfigError("region: upper bound must exceed lower bound");
    }
  }

  static Region unit_square() { return Region{}; }

  const std::array<double, 2>& lower() const noexcept { return lower_; }
  const std::array<double, 2>& upper() const noexcept { return upper_; }
  double side(int d) const noexcept { return upper_[d] - lower_[d]; }
  double diameter() const noexcept { return std::hypot(side(0), side(1)); }

  bool contains(double x1, double x2) const noexcept {
    return x1 >= lower_[0] && x1 <= upper_[0] && x2 >= lower_[1] && x2 <= upper_[1];
  }

  bool contains_all(const Locations& locs) const noexcept {
    for (Eigen::Index i = 0; i < locs.rows(); ++i) {
      if (!contains(locs(i, 0), locs(i, 1))) return false;
    }
    return true;
  }

 private:
  std::array<double, 2> lower_;
  std::array<double, 2> upper_;
};

inline double area(const Region& region) noexcept { return region.side(0) * region.side(1); }

/// `count` i.i.d. uniform points in the region.
inline Locations sample_uniform(const Region& region, std::size_t count, Rng& rng) {
  Locations out(static_cast<Eigen::Index>(count), 2);
  for (Eigen::Index i = 0; i < out.rows(); ++i) {
    for (int d = 0; d < 2; ++d) {
      out(i, d) = region.lower()[d] + region.side(d) * rng.uniform();
    }
  }
  return out;
}

}  // namespace psgeo
