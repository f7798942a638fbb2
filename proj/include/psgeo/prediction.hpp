#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

#include <Eigen/Dense>

#include "psgeo/dataset.hpp"
#include "psgeo/gp.hpp"
#include "psgeo/inference.hpp"
#include "psgeo/region.hpp"
#include "psgeo/rng.hpp"
#include "psgeo/special.hpp"

namespace psgeo {

/// Unobserved locations x_u with their design rows D_u.
struct PredictionGrid {
  Locations locations = Locations(0, 2);
  Eigen::MatrixXd covariates;

  Eigen::Index size() const noexcept { return locations.rows(); }

  /// nx-by-ny cell centers, x1 varying fastest, intercept-only design.
  static PredictionGrid regular(const Region& region, int nx, int ny) {
    if (nx < 1 || ny < 1) throw ConfigError("grid dimensions must be positive");
    PredictionGrid g;
    g.locations.resize(static_cast<Eigen::Index>(nx) * ny, 2);
    const double dx = region.side(0) / nx;
    const double dy = region.side(1) / ny;
    Eigen::Index r = 0;
    for (int j = 0; j < ny; ++j) {
      for (int i = 0; i < nx; ++i, ++r) {
        g.locations(r, 0) = region.lower()[0] + (i + 0.5) * dx;
        g.locations(r, 1) = region.lower()[1] + (j + 0.5) * dy;
      }
    }
    g.covariates = Eigen::MatrixXd::Ones(g.locations.rows(), 1);
    return g;
  }
};

struct IntervalBounds {
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;
};

/// Per-location summaries of predictive draws; intervals keyed by nominal level.
struct PredictiveField {
  Eigen::VectorXd mean;
  Eigen::VectorXd median;
  Eigen::VectorXd variance;
  std::map<double, IntervalBounds> intervals;

  Eigen::Index size() const noexcept { return mean.size(); }
};

struct PredictOptions {
  std::vector<double> levels{0.95};
  /// Draw S_u jointly over the grid. Per-location summaries only need the
  /// pointwise conditional marginals, which are much cheaper.
  bool joint = false;
  /// Krige from S at data and discarded points (when the draws carry them);
  /// otherwise from S at the data locations only.
  bool condition_on_discarded = true;
  /// Treat the grid locations as points of the observed pattern whose
  /// responses are unknown (held-out data). For EPS samples every draw is then
  /// weighted by lambda(x_u) and S_u comes from its selection-tilted
  /// conditional. Pointwise only.
  bool observed_locations = false;
};

/// Raw predictive draws, one row per posterior draw, one column per grid location.
struct PredictiveDraws {
  Eigen::MatrixXd response;
  /// Empty for NPS samples.
  Eigen::MatrixXd intensity;
  Eigen::VectorXd lambda_star;
  Eigen::VectorXd tau2;
  /// D_u eta + S_u per draw; the conditional mean of Y_u.
  Eigen::MatrixXd location;
  /// Per-column normalized draw weights; empty when draws are equally weighted.
  Eigen::MatrixXd weights;
};

/// Type-7 sample quantile of a sorted vector.
inline double sorted_quantile(const std::vector<double>& sorted, double p) {
  if (sorted.empty()) return std::numeric_limits<double>::quiet_NaN();
  const double h = (static_cast<double>(sorted.size()) - 1.0) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

/// Quantile of (value, weight) pairs sorted by value, weights summing to one:
/// linear interpolation between the cumulative-weight midpoints.
inline double weighted_quantile(const std::vector<std::pair<double, double>>& sorted, double p) {
  double cum = 0.0;
  double prev_mid = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double mid = cum + 0.5 * sorted[i].second;
    if (p <= mid) {
      if (i == 0) return sorted[0].first;
      const double w = (p - prev_mid) / (mid - prev_mid);
      return sorted[i - 1].first + w * (sorted[i].first - sorted[i - 1].first);
    }
    prev_mid = mid;
    cum += sorted[i].second;
  }
  return sorted.back().first;
}

/// Column summaries of a draws matrix: mean, median, variance, and central
/// intervals. `weights`, when given, holds per-column normalized draw weights.
inline PredictiveField summarize(const Eigen::MatrixXd& draws, const std::vector<double>& levels,
                                 const Eigen::MatrixXd* weights = nullptr) {
  const Eigen::Index m = draws.rows();
  const Eigen::Index nu = draws.cols();
  if (m == 0) throw std::invalid_argument("summarize: no draws");
  if (weights && (weights->rows() != m || weights->cols() != nu))
    throw std::invalid_argument("summarize: weight matrix shape mismatch");
  PredictiveField f;
  f.median.resize(nu);
  f.variance.resize(nu);
  for (double level : levels) {
    if (!(level > 0.0 && level < 1.0)) throw ConfigError("interval levels must lie in (0,1)");
    f.intervals[level] = IntervalBounds{Eigen::VectorXd(nu), Eigen::VectorXd(nu)};
  }
  if (weights) {
    f.mean = draws.cwiseProduct(*weights).colwise().sum().transpose();
    std::vector<std::pair<double, double>> col(static_cast<std::size_t>(m));
    for (Eigen::Index j = 0; j < nu; ++j) {
      for (Eigen::Index i = 0; i < m; ++i) col[static_cast<std::size_t>(i)] = {draws(i, j), (*weights)(i, j)};
      std::sort(col.begin(), col.end());
      f.median(j) = weighted_quantile(col, 0.5);
      f.variance(j) = ((draws.col(j).array() - f.mean(j)).square() * weights->col(j).array()).sum();
      for (auto& [level, b] : f.intervals) {
        b.lower(j) = weighted_quantile(col, 0.5 * (1.0 - level));
        b.upper(j) = weighted_quantile(col, 0.5 * (1.0 + level));
      }
    }
    return f;
  }
  f.mean = draws.colwise().mean().transpose();
  std::vector<double> col(static_cast<std::size_t>(m));
  for (Eigen::Index j = 0; j < nu; ++j) {
    for (Eigen::Index i = 0; i < m; ++i) col[static_cast<std::size_t>(i)] = draws(i, j);
    std::sort(col.begin(), col.end());
    f.median(j) = sorted_quantile(col, 0.5);
    f.variance(j) = m > 1 ? (draws.col(j).array() - f.mean(j)).square().sum() / static_cast<double>(m - 1) : 0.0;
    for (auto& [level, b] : f.intervals) {
      b.lower(j) = sorted_quantile(col, 0.5 * (1.0 - level));
      b.upper(j) = sorted_quantile(col, 0.5 * (1.0 + level));
    }
  }
  return f;
}

namespace detail {

inline void krige_known(const Draw& d, const GeoDataset& data, bool with_discarded, Locations& locs,
                        Eigen::VectorXd& s) {
  const Eigen::Index n = data.size();
  const Eigen::Index m = with_discarded ? d.discarded.rows() : 0;
  locs.resize(n + m, 2);
  s.resize(n + m);
  locs.topRows(n) = data.locations;
  s.head(n) = d.s_data;
  if (m > 0) {
    locs.bottomRows(m) = d.discarded;
    s.tail(m) = d.s_discarded;
  }
}

}  // namespace detail

/// Posterior predictive draws of Y_u (and lambda(x_u) for EPS samples).
///
/// For posterior draw m, S_u is kriged from the stored latent values, then
/// Y_u = D_u eta + S_u + eps with eps ~ N(0, tau2 I) and
/// lambda(x_u) = lambda* Phi(beta S_u / sigma). Draw m uses the stream
/// derive_seed(seed, "predict", m), so results do not depend on evaluation order.
inline PredictiveDraws predict_draws(const PosteriorSamples& samples, const GeoDataset& data,
                                     const PredictionGrid& grid, const Region& region, std::uint64_t seed,
                                     const PredictOptions& opts = {}) {
  if (samples.draws.empty()) throw std::invalid_argument("predict: posterior sample is empty");
  if (grid.covariates.rows() != grid.size()) throw ConfigError("grid design matrix row count mismatch");
  if (grid.covariates.cols() != data.n_coef()) throw ConfigError("grid covariate count differs from the data");
  if (!region.contains_all(grid.locations)) throw ConfigError("prediction location outside the region");
  const Eigen::Index m = static_cast<Eigen::Index>(samples.draws.size());
  const Eigen::Index nu = grid.size();
  const bool eps = samples.model == ModelKind::eps;
  const bool tilt = eps && opts.observed_locations;
  if (tilt && opts.joint) throw ConfigError("observed-location prediction is pointwise; joint draws are not supported");
  PredictiveDraws out;
  out.response.resize(m, nu);
  out.location.resize(m, nu);
  out.tau2.resize(m);
  out.lambda_star.resize(m);
  if (eps) out.intensity.resize(m, nu);
  if (tilt) out.weights.resize(m, nu);

  Locations known;
  Eigen::VectorXd known_s;
  for (Eigen::Index i = 0; i < m; ++i) {
    const Draw& d = samples.draws[static_cast<std::size_t>(i)];
    if (d.s_data.size() != data.size()) throw ConfigError("posterior draws do not match the dataset size");
    Rng rng(derive_seed(seed, "predict", static_cast<std::uint64_t>(i)));
    detail::krige_known(d, data, opts.condition_on_discarded, known, known_s);
    const GpParams gp{d.sigma2, CorrelationModel{CorrelationFamily::exponential, d.phi}};
    Eigen::VectorXd s_u(nu);
    if (opts.joint) {
      s_u = conditional_draw(grid.locations, known, known_s, gp, rng);
    } else if (!tilt) {
      const ConditionalMarginals cm = conditional_marginals(grid.locations, known, known_s, gp);
      for (Eigen::Index j = 0; j < nu; ++j) s_u(j) = cm.mean(j) + std::sqrt(cm.variance(j)) * rng.normal();
    } else {
      // S_u = mu + s z with density prop. to phi(z) Phi(g (mu + s z)). With
      // u = a z + e (a = g s, e standard normal) the tilt is the event u > -g mu,
      // so draw u from its truncated marginal and then z | u.
      const ConditionalMarginals cm = conditional_marginals(grid.locations, known, known_s, gp);
      const double g = d.beta / std::sqrt(d.sigma2);
      for (Eigen::Index j = 0; j < nu; ++j) {
        const double sd_u = std::sqrt(cm.variance(j));
        const double a = g * sd_u;
        const double r = std::sqrt(1.0 + a * a);
        const double c = g * cm.mean(j) / r;
        const double u = (truncated_normal_positive(c, rng) - c) * r;
        const double z = a * u / (r * r) + rng.normal() / r;
        s_u(j) = cm.mean(j) + sd_u * z;
        out.weights(i, j) = std::log(d.lambda_star) + log_norm_cdf(c);
      }
    }
    const Eigen::VectorXd loc = grid.covariates * d.eta + s_u;
    out.location.row(i) = loc.transpose();
    const double sd = std::sqrt(d.tau2);
    for (Eigen::Index j = 0; j < nu; ++j) out.response(i, j) = loc(j) + sd * rng.normal();
    out.tau2(i) = d.tau2;
    out.lambda_star(i) = d.lambda_star;
    if (eps) {
      const double g = d.beta / std::sqrt(d.sigma2);
      for (Eigen::Index j = 0; j < nu; ++j) out.intensity(i, j) = d.lambda_star * norm_cdf(g * s_u(j));
    }
  }
  if (tilt) {
    for (Eigen::Index j = 0; j < nu; ++j) {
      auto w = out.weights.col(j).array();
      w = (w - w.maxCoeff()).exp();
      w /= w.sum();
    }
  }
  return out;
}

inline const Eigen::MatrixXd* draw_weights(const PredictiveDraws& pd) {
  return pd.weights.size() > 0 ? &pd.weights : nullptr;
}

inline PredictiveField predict_response(const PosteriorSamples& samples, const GeoDataset& data,
                                        const PredictionGrid& grid, const Region& region, std::uint64_t seed,
                                        const PredictOptions& opts = {}) {
  const PredictiveDraws pd = predict_draws(samples, data, grid, region, seed, opts);
  return summarize(pd.response, opts.levels, draw_weights(pd));
}

inline PredictiveField predict_intensity(const PosteriorSamples& samples, const GeoDataset& data,
                                         const PredictionGrid& grid, const Region& region, std::uint64_t seed,
                                         const PredictOptions& opts = {}) {
  if (samples.model != ModelKind::eps)
    throw ConfigError("intensity prediction needs samples from the preferential (eps) model");
  const PredictiveDraws pd = predict_draws(samples, data, grid, region, seed, opts);
  return summarize(pd.intensity, opts.levels, draw_weights(pd));
}

}  // namespace psgeo
