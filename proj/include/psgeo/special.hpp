#pragma once

#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/distributions/normal.hpp>

#include "psgeo/rng.hpp"

namespace psgeo {

inline constexpr double kLogSqrt2Pi = 0.91893853320467274178;

/// Standard normal CDF.
inline double norm_cdf(double x) noexcept { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

/// log N(x; mean, var).
inline double norm_logpdf(double x, double mean, double var) noexcept {
  const double d = x - mean;
  return -0.5 * std::log(var) - kLogSqrt2Pi - 0.5 * d * d / var;
}

/// log Phi(x), finite for every finite x.
///
/// Below -30 the erfc route underflows, so the asymptotic Mills-ratio series
/// log Phi(x) = -x^2/2 - log(-x) - log sqrt(2 pi) + log(1 - 1/x^2 + 3/x^4 - 15/x^6 + 105/x^8)
/// takes over; its truncation error there is below 1e-13.
inline double log_norm_cdf(double x) noexcept {
  if (x > 5.0) return std::log1p(-0.5 * std::erfc(x / std::numbers::sqrt2));
  if (x > -30.0) return std::log(0.5 * std::erfc(-x / std::numbers::sqrt2));
  const double z = 1.0 / (x * x);
  const double series = 1.0 - z * (1.0 - z * (3.0 - z * (15.0 - 105.0 * z)));
  return -0.5 * x * x - std::log(-x) - kLogSqrt2Pi + std::log(series);
}

/// Standard normal quantile.
inline double norm_quantile(double p) {
  return boost::math::quantile(boost::math::normal_distribution<double>(), p);
}

/// Draw from N(mean, 1) truncated to (0, inf).
///
/// With a = -mean the standardized lower bound: inversion for |mean| <= 6,
/// Robert's exponential-proposal rejection in the far tail (mean < -6), and
/// plain rejection from the untruncated normal when mean > 6 (acceptance > 1 - 1e-9).
inline double truncated_normal_positive(double mean, Rng& rng) {
  const double a = -mean;
  if (a > 6.0) {
    const double alpha = 0.5 * (a + std::sqrt(a * a + 4.0));
    for (;;) {
      const double z = a - std::log(rng.uniform()) / alpha;
      const double d = z - alpha;
      if (std::log(rng.uniform()) <= -0.5 * d * d) return z + mean;
    }
  }
  if (a < -6.0) {
    for (;;) {
      const double z = rng.normal();
      if (z > a) return z + mean;
    }
  }
  const double upper_mass = norm_cdf(-a);
  for (;;) {
    const double z = -norm_quantile(rng.uniform() * upper_mass);
    if (z > a) return z + mean;
  }
}

}  // namespace psgeo
