#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "psgeo/dataset.hpp"
#include "psgeo/errors.hpp"
#include "psgeo/gp.hpp"
#include "psgeo/point_process.hpp"
#include "psgeo/region.hpp"
#include "psgeo/rng.hpp"

namespace psgeo {

/// Generating parameters, intercept-only mean mu.
struct TrueParams {
  double lambda_star = 150.0;
  double mu = 4.0;
  double tau2 = 0.10;
  double sigma2 = 3.0;
  double phi = 0.15;
  double beta = 2.0;

  GpParams gp() const { return GpParams{sigma2, CorrelationModel{CorrelationFamily::exponential, phi}}; }

  void validate() const {
    if (!(lambda_star > 0.0 && tau2 > 0.0 && sigma2 > 0.0 && phi > 0.0) || !std::isfinite(mu) ||
        !std::isfinite(beta))
      throw ConfigError("true parameters: lambda_star, tau2, sigma2 and phi must be positive");
  }
};

/// Default NPS intensity per unit area.
inline constexpr double kDefaultNpsIntensity = 72.0;

/// A synthetic dataset with the realized latent field.
struct SimulatedData {
  GeoDataset data;
  /// Every candidate point (W for PS, X for NPS) and S there.
  Locations all_points = Locations(0, 2);
  Eigen::VectorXd s_all;
  std::vector<bool> retained;
  /// Optional extra locations (e.g. a prediction grid) drawn jointly with S.
  Locations extra = Locations(0, 2);
  Eigen::VectorXd s_extra;
  /// mu + S + noise at the extra locations.
  Eigen::VectorXd y_extra;
};

namespace detail {

inline Eigen::VectorXd draw_joint_field(const Locations& points, const Locations& extra, const GpParams& gp,
                                        Rng& rng) {
  Locations all(points.rows() + extra.rows(), 2);
  all.topRows(points.rows()) = points;
  all.bottomRows(extra.rows()) = extra;
  return gp_draw(all, gp, rng);
}

inline void fill_extra(SimulatedData& out, const Locations& extra, const Eigen::VectorXd& field, Eigen::Index offset,
                       const TrueParams& p, Rng& rng) {
  out.extra = extra;
  out.s_extra = field.segment(offset, extra.rows());
  out.y_extra.resize(extra.rows());
  const double sd = std::sqrt(p.tau2);
  for (Eigen::Index i = 0; i < extra.rows(); ++i) out.y_extra(i) = p.mu + out.s_extra(i) + sd * rng.normal();
}

}  // namespace detail

/// Preferential sampling: W ~ HPP(lambda*), S ~ GP at W (jointly with `extra`),
/// keep w with probability Phi(beta S(w) / sigma), y = mu + S + N(0, tau2).
/// Retries up to 100 times when nothing is retained.
inline SimulatedData simulate_ps(const TrueParams& p, const Region& region, Rng& rng,
                                 const Locations& extra = Locations(0, 2)) {
  p.validate();
  for (int attempt = 0; attempt < 100; ++attempt) {
    PointPattern w = hpp_draw(p.lambda_star, region, rng);
    if (w.empty()) continue;
    const Eigen::VectorXd field = detail::draw_joint_field(w.locations, extra, p.gp(), rng);
    w.marks = field.head(w.size());
    Eigen::VectorXd u(w.size());
    for (Eigen::Index i = 0; i < u.size(); ++i) u(i) = rng.uniform();
    const std::vector<bool> keep = thinning_mask(*w.marks, p.beta, std::sqrt(p.sigma2), +1, u);
    const PointPattern x = select(w, keep);
    if (x.empty()) continue;

    SimulatedData out;
    Eigen::VectorXd y(x.size());
    const double sd = std::sqrt(p.tau2);
    for (Eigen::Index i = 0; i < y.size(); ++i) y(i) = p.mu + (*x.marks)(i) + sd * rng.normal();
    out.data = GeoDataset::intercept_only(x.locations, std::move(y));
    out.all_points = w.locations;
    out.s_all = *w.marks;
    out.retained = keep;
    detail::fill_extra(out, extra, field, w.size(), p, rng);
    return out;
  }
  throw ConfigError("simulate_ps: no point retained in 100 attempts (degenerate regime)");
}

/// Non-preferential sampling: locations ~ HPP(intensity) independent of S.
inline SimulatedData simulate_nps(const TrueParams& p, double intensity, const Region& region, Rng& rng,
                                  const Locations& extra = Locations(0, 2)) {
  p.validate();
  if (!(intensity > 0.0)) throw ConfigError("simulate_nps: intensity must be positive");
  for (int attempt = 0; attempt < 100; ++attempt) {
    const PointPattern x = hpp_draw(intensity, region, rng);
    if (x.empty()) continue;
    const Eigen::VectorXd field = detail::draw_joint_field(x.locations, extra, p.gp(), rng);
    SimulatedData out;
    Eigen::VectorXd y(x.size());
    const double sd = std::sqrt(p.tau2);
    for (Eigen::Index i = 0; i < y.size(); ++i) y(i) = p.mu + field(i) + sd * rng.normal();
    out.data = GeoDataset::intercept_only(x.locations, std::move(y));
    out.all_points = x.locations;
    out.s_all = field.head(x.size());
    out.retained.assign(static_cast<std::size_t>(x.size()), true);
    detail::fill_extra(out, extra, field, x.size(), p, rng);
    return out;
  }
  throw ConfigError("simulate_nps: empty point pattern in 100 attempts (degenerate regime)");
}

}  // namespace psgeo
