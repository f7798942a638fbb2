#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <vector>

#include <Eigen/Dense>

#include "psgeo/dataset.hpp"
#include "psgeo/inference.hpp"
#include "psgeo/prediction.hpp"
#include "psgeo/region.hpp"
#include "psgeo/rng.hpp"
#include "psgeo/special.hpp"

namespace psgeo {

struct MetricReport {
  double mape = 0.0;
  /// Nominal level (e.g. 0.95) -> fraction of truths inside the interval.
  std::map<double, double> crci;
  double ppd = 0.0;
  std::size_t n_p = 0;
};

/// Mean absolute prediction error.
inline double mape(const Eigen::VectorXd& predicted, const Eigen::VectorXd& truth) {
  if (predicted.size() != truth.size()) throw std::invalid_argument("mape: length mismatch");
  if (truth.size() == 0) throw std::invalid_argument("mape: no evaluation points");
  return (predicted - truth).cwiseAbs().mean();
}

/// Fraction of truths inside [lower, upper].
inline double crci(const Eigen::VectorXd& lower, const Eigen::VectorXd& upper, const Eigen::VectorXd& truth) {
  if (lower.size() != truth.size() || upper.size() != truth.size())
    throw std::invalid_argument("crci: length mismatch");
  if (truth.size() == 0) throw std::invalid_argument("crci: no evaluation points");
  Eigen::Index inside = 0;
  for (Eigen::Index i = 0; i < truth.size(); ++i) {
    if (!(lower(i) <= upper(i))) throw std::invalid_argument("crci: interval with lower bound above upper bound");
    if (truth(i) >= lower(i) && truth(i) <= upper(i)) ++inside;
  }
  return static_cast<double>(inside) / static_cast<double>(truth.size());
}

/// log of (1/M) sum_m N(truth; location_m, tau2_m), computed with log-sum-exp.
inline double ppd(const Eigen::VectorXd& location_draws, const Eigen::VectorXd& tau2_draws, double truth,
                  const Eigen::VectorXd* weights = nullptr) {
  if (location_draws.size() != tau2_draws.size()) throw std::invalid_argument("ppd: length mismatch");
  const Eigen::Index m = location_draws.size();
  if (m == 0) throw std::invalid_argument("ppd: no draws");
  if (weights && weights->size() != m) throw std::invalid_argument("ppd: weight length mismatch");
  Eigen::VectorXd terms(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    terms(i) = norm_logpdf(truth, location_draws(i), tau2_draws(i));
    if (weights) terms(i) += std::log((*weights)(i));
  }
  const double top = terms.maxCoeff();
  const double lse = top + std::log((terms.array() - top).exp().sum());
  return weights ? lse - std::log(weights->sum()) : lse - std::log(static_cast<double>(m));
}

/// Cross-validation settings. folds == 0 means leave-one-out.
struct CrossValidationOptions {
  ModelKind model = ModelKind::eps;
  std::size_t folds = 0;
  /// Multiplies n_iter and burn_in of the fitting config for each refit.
  double iteration_scale = 1.0;
  std::vector<double> levels{0.90, 0.95, 0.99};
  PredictOptions predict{};
  /// EPS only: a held-out response still marks a point of the observed
  /// pattern, so predict it conditionally on a point being there
  /// (PredictOptions::observed_locations).
  bool condition_on_presence = true;
};

struct CrossValidationResult {
  MetricReport report;
  Eigen::VectorXd predicted_mean;
  Eigen::VectorXd ppd_terms;
  std::vector<std::size_t> fold_of;
};

/// Refits the model on each training split and scores the held-out responses.
inline CrossValidationResult cross_validate(const GeoDataset& data, const Region& region, const Priors& priors,
                                            const McmcConfig& config, const CrossValidationOptions& opts = {}) {
  const auto n = static_cast<std::size_t>(data.size());
  if (n < 10) throw ConfigError("cross-validation needs at least 10 observations");
  const std::size_t n_folds = opts.folds == 0 ? n : opts.folds;
  if (n_folds < 2 || n_folds > n) throw ConfigError("cross-validation fold count must lie in [2, n]");

  CrossValidationResult out;
  out.fold_of.resize(n);
  if (opts.folds == 0) {
    std::iota(out.fold_of.begin(), out.fold_of.end(), std::size_t{0});
  } else {
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    Rng rng(derive_seed(config.seed, "cv-assign"));
    std::shuffle(order.begin(), order.end(), rng.engine());
    for (std::size_t i = 0; i < n; ++i) out.fold_of[order[i]] = i % n_folds;
  }

  McmcConfig fold_config = config;
  fold_config.n_iter = std::max<std::size_t>(2, static_cast<std::size_t>(std::llround(config.n_iter * opts.iteration_scale)));
  fold_config.burn_in = std::min(fold_config.n_iter - 1,
                                 static_cast<std::size_t>(std::llround(config.burn_in * opts.iteration_scale)));
  fold_config.validate();

  PredictOptions popts = opts.predict;
  popts.levels = opts.levels;
  if (opts.model == ModelKind::eps && opts.condition_on_presence) {
    popts.observed_locations = true;
    popts.joint = false;
  }
  out.predicted_mean.resize(static_cast<Eigen::Index>(n));
  out.ppd_terms.resize(static_cast<Eigen::Index>(n));
  std::map<double, IntervalBounds> bounds;
  for (double l : opts.levels) bounds[l] = IntervalBounds{Eigen::VectorXd(n), Eigen::VectorXd(n)};

  for (std::size_t f = 0; f < n_folds; ++f) {
    std::vector<Eigen::Index> test;
    std::vector<Eigen::Index> train;
    for (std::size_t i = 0; i < n; ++i) (out.fold_of[i] == f ? test : train).push_back(static_cast<Eigen::Index>(i));
    if (train.empty()) throw ConfigError("cross-validation fold " + std::to_string(f) + " has no training points");
    GeoDataset tr;
    tr.locations = data.locations(train, Eigen::all);
    tr.y = data.y(train);
    tr.covariates = data.covariates(train, Eigen::all);
    PredictionGrid held;
    held.locations = data.locations(test, Eigen::all);
    held.covariates = data.covariates(test, Eigen::all);

    fold_config.seed = derive_seed(config.seed, "cv-fold", f);
    const PosteriorSamples post = run_chain(opts.model, tr, region, priors, fold_config);
    const PredictiveDraws pd = predict_draws(post, tr, held, region, derive_seed(config.seed, "cv-predict", f), popts);
    const Eigen::MatrixXd* w = draw_weights(pd);
    const PredictiveField field = summarize(pd.response, opts.levels, w);
    for (std::size_t t = 0; t < test.size(); ++t) {
      const Eigen::Index i = test[t];
      const auto j = static_cast<Eigen::Index>(t);
      out.predicted_mean(i) = field.mean(j);
      const Eigen::VectorXd wj = w ? Eigen::VectorXd(w->col(j)) : Eigen::VectorXd();
      out.ppd_terms(i) = ppd(pd.location.col(j), pd.tau2, data.y(i), w ? &wj : nullptr);
      for (auto& [l, b] : bounds) {
        b.lower(i) = field.intervals.at(l).lower(j);
        b.upper(i) = field.intervals.at(l).upper(j);
      }
    }
  }

  out.report.n_p = n;
  out.report.mape = mape(out.predicted_mean, data.y);
  out.report.ppd = out.ppd_terms.sum();
  for (const auto& [l, b] : bounds) out.report.crci[l] = crci(b.lower, b.upper, data.y);
  return out;
}

/// Classical empirical semivariogram with a permutation envelope.
struct VariogramEnvelope {
  Eigen::VectorXd centers;
  Eigen::VectorXd gamma;
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;
  std::vector<std::size_t> pair_counts;
  /// Indices (in the equal-width binning) of bins with no pairs; they are omitted above.
  std::vector<std::size_t> dropped_bins;

  /// Bins where the empirical value is outside [lower, upper].
  std::size_t points_outside() const {
    std::size_t c = 0;
    for (Eigen::Index b = 0; b < gamma.size(); ++b) c += (gamma(b) < lower(b) || gamma(b) > upper(b)) ? 1 : 0;
    return c;
  }
};

namespace detail {

struct PairBins {
  std::vector<int> bin_of_pair;  // -1 when beyond the cutoff
  std::vector<std::size_t> counts;
};

inline PairBins bin_pairs(const Locations& locs, std::size_t n_bins, double cutoff) {
  const Eigen::Index n = locs.rows();
  PairBins pb;
  pb.counts.assign(n_bins, 0);
  pb.bin_of_pair.reserve(static_cast<std::size_t>(n * (n - 1) / 2));
  const double width = cutoff / static_cast<double>(n_bins);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double h = distance(locs, i, locs, j);
      int b = -1;
      if (h <= cutoff) {
        b = std::min(static_cast<int>(h / width), static_cast<int>(n_bins) - 1);
        ++pb.counts[static_cast<std::size_t>(b)];
      }
      pb.bin_of_pair.push_back(b);
    }
  }
  return pb;
}

inline std::vector<double> semivariogram(const Eigen::VectorXd& y, const PairBins& pb, std::size_t n_bins) {
  std::vector<double> sums(n_bins, 0.0);
  const Eigen::Index n = y.size();
  std::size_t p = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j, ++p) {
      const int b = pb.bin_of_pair[p];
      if (b < 0) continue;
      const double d = y(i) - y(j);
      sums[static_cast<std::size_t>(b)] += d * d;
    }
  }
  for (std::size_t b = 0; b < n_bins; ++b) sums[b] = pb.counts[b] ? sums[b] / (2.0 * pb.counts[b]) : 0.0;
  return sums;
}

}  // namespace detail

/// Matheron semivariogram in n_bins equal-width bins up to half the region
/// diameter; the envelope is the per-bin min/max over random permutations of
/// y with the locations held fixed.
inline VariogramEnvelope variogram_envelope(const GeoDataset& data, const Region& region, std::size_t n_bins,
                                            std::size_t n_permutations, Rng& rng) {
  if (data.size() < 10) throw ConfigError("variogram needs at least 10 observations");
  if (n_permutations < 99) throw ConfigError("variogram envelope needs at least 99 permutations");
  if (n_bins == 0) throw ConfigError("variogram needs at least one bin");
  const double cutoff = 0.5 * region.diameter();
  const detail::PairBins pb = detail::bin_pairs(data.locations, n_bins, cutoff);
  const std::vector<double> g = detail::semivariogram(data.y, pb, n_bins);
  std::vector<double> lo(n_bins, std::numeric_limits<double>::infinity());
  std::vector<double> hi(n_bins, -std::numeric_limits<double>::infinity());
  Eigen::VectorXd perm = data.y;
  for (std::size_t r = 0; r < n_permutations; ++r) {
    std::shuffle(perm.begin(), perm.end(), rng.engine());
    const std::vector<double> gp = detail::semivariogram(perm, pb, n_bins);
    for (std::size_t b = 0; b < n_bins; ++b) {
      lo[b] = std::min(lo[b], gp[b]);
      hi[b] = std::max(hi[b], gp[b]);
    }
  }
  VariogramEnvelope out;
  std::vector<std::size_t> kept;
  for (std::size_t b = 0; b < n_bins; ++b) (pb.counts[b] ? kept : out.dropped_bins).push_back(b);
  const auto m = static_cast<Eigen::Index>(kept.size());
  out.centers.resize(m);
  out.gamma.resize(m);
  out.lower.resize(m);
  out.upper.resize(m);
  const double width = cutoff / static_cast<double>(n_bins);
  for (Eigen::Index i = 0; i < m; ++i) {
    const std::size_t b = kept[static_cast<std::size_t>(i)];
    out.centers(i) = (static_cast<double>(b) + 0.5) * width;
    out.gamma(i) = g[b];
    out.lower(i) = lo[b];
    out.upper(i) = hi[b];
    out.pair_counts.push_back(pb.counts[b]);
  }
  return out;
}

}  // namespace psgeo
