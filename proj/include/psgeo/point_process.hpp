#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "psgeo/gp.hpp"
#include "psgeo/region.hpp"
#include "psgeo/rng.hpp"
#include "psgeo/special.hpp"

namespace psgeo {

/// Point locations with optional S marks aligned row by row.
struct PointPattern {
  Locations locations = Locations(0, 2);
  std::optional<Eigen::VectorXd> marks;

  Eigen::Index size() const noexcept { return locations.rows(); }
  bool empty() const noexcept { return locations.rows() == 0; }
};

/// Homogeneous Poisson process with intensity lambda_star on the region.
inline PointPattern hpp_draw(double lambda_star, const Region& region, Rng& rng) {
  if (!(lambda_star > 0.0)) throw std::invalid_argument("hpp_draw: intensity must be positive");
  const std::uint64_t count = rng.poisson(lambda_star * area(region));
  return PointPattern{sample_uniform(region, count, rng), std::nullopt};
}

/// Retention mask for probit thinning: point i is kept iff u_i < Phi(keep_sign * beta * S_i / sigma).
/// Running it with keep_sign = +1 and -1 on the same uniforms partitions the points.
inline std::vector<bool> thinning_mask(const Eigen::VectorXd& marks, double beta, double sigma, int keep_sign,
                                       const Eigen::VectorXd& uniforms) {
  std::vector<bool> keep(static_cast<std::size_t>(marks.size()));
  for (Eigen::Index i = 0; i < marks.size(); ++i) {
    const double p_plus = norm_cdf(beta * marks(i) / sigma);
    keep[static_cast<std::size_t>(i)] = keep_sign > 0 ? uniforms(i) < p_plus : uniforms(i) >= p_plus;
  }
  return keep;
}

inline PointPattern select(const PointPattern& pattern, const std::vector<bool>& keep) {
  Eigen::Index m = 0;
  for (bool b : keep) m += b ? 1 : 0;
  PointPattern out;
  out.locations.resize(m, 2);
  if (pattern.marks) out.marks = Eigen::VectorXd(m);
  Eigen::Index j = 0;
  for (Eigen::Index i = 0; i < pattern.size(); ++i) {
    if (!keep[static_cast<std::size_t>(i)]) continue;
    out.locations.row(j) = pattern.locations.row(i);
    if (pattern.marks) (*out.marks)(j) = (*pattern.marks)(i);
    ++j;
  }
  return out;
}

/// Keep each point independently with probability Phi(keep_sign * beta * S / sigma).
inline PointPattern thin(const PointPattern& pattern, double beta, double sigma, int keep_sign, Rng& rng) {
  if (!pattern.marks) throw std::invalid_argument("thin: pattern carries no marks");
  if (keep_sign != 1 && keep_sign != -1) throw std::invalid_argument("thin: keep_sign must be +1 or -1");
  Eigen::VectorXd u(pattern.size());
  for (Eigen::Index i = 0; i < u.size(); ++i) u(i) = rng.uniform();
  return select(pattern, thinning_mask(*pattern.marks, beta, sigma, keep_sign, u));
}

/// Parameters the discarded-process update conditions on.
struct ThinningParams {
  double lambda_star = 1.0;
  double beta = 0.0;
  GpParams gp{};
};

/// Exact draw of the discarded process given S at the current augmented points:
///   1. k* ~ Poisson(lambda* |B|)
///   2. k* uniform candidates on B
///   3. S at the candidates drawn retrospectively given (known_locs, known_s)
///   4. keep each candidate with probability Phi(-beta S / sigma)
///   5. the kept candidates (with their S marks) are the new discarded pattern
///
/// `known_factor` optionally supplies the Cholesky factor of R at known_locs.
inline PointPattern update_discarded(const Locations& known_locs, const Eigen::VectorXd& known_s,
                                     const ThinningParams& params, const Region& region, Rng& rng,
                                     const JitteredCholesky* known_factor = nullptr) {
  PointPattern candidates = hpp_draw(params.lambda_star, region, rng);
  if (candidates.empty()) {
    candidates.marks = Eigen::VectorXd(0);
    return candidates;
  }
  if (known_locs.rows() == 0) {
    candidates.marks = gp_draw(candidates.locations, params.gp, rng);
  } else {
    candidates.marks = conditional_draw(candidates.locations, known_locs, known_s, params.gp, rng, known_factor);
  }
  return thin(candidates, params.beta, std::sqrt(params.gp.sigma2), -1, rng);
}

}  // namespace psgeo
