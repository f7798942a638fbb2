#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "psgeo/dataset.hpp"
#include "psgeo/errors.hpp"
#include "psgeo/gp.hpp"
#include "psgeo/point_process.hpp"
#include "psgeo/region.hpp"
#include "psgeo/rng.hpp"
#include "psgeo/skew_normal.hpp"
#include "psgeo/special.hpp"

namespace psgeo {

/// eps: exact preferential model (augmented with the discarded process).
/// nps: classical geostatistical model, no point-process component.
enum class ModelKind { eps, nps };

inline const char* to_string(ModelKind m) noexcept { return m == ModelKind::eps ? "eps" : "nps"; }

struct GammaPrior {
  double shape = 1.0;
  double rate = 1.0;
};

struct InvGammaPrior {
  double shape = 1.0;
  double scale = 1.0;
};

struct NormalPrior {
  double mean = 0.0;
  double variance = 1.0;
};

/// Defaults are the vague priors used for the unit-square simulation study.
struct Priors {
  GammaPrior lambda_star{0.001, 0.001};
  std::optional<double> lambda_star_upper;
  /// Prior mean of eta; a single entry is broadcast to all p + 1 coefficients.
  std::vector<double> eta_mean{0.0};
  double eta_variance = 1e6;
  InvGammaPrior tau2{0.001, 0.001};
  InvGammaPrior sigma2{0.001, 0.001};
  GammaPrior phi{2.0, 4.0};
  NormalPrior beta{0.0, 1.0};

  Eigen::VectorXd eta_mean_vector(Eigen::Index n_coef) const {
    if (eta_mean.size() == 1) return Eigen::VectorXd::Constant(n_coef, eta_mean.front());
    if (static_cast<Eigen::Index>(eta_mean.size()) != n_coef)
      throw ConfigError("prior.eta.mean has " + std::to_string(eta_mean.size()) + " entries, expected " +
                        std::to_string(n_coef));
    return Eigen::Map<const Eigen::VectorXd>(eta_mean.data(), n_coef);
  }

  void validate() const {
    auto pos = [](double v, const char* what) {
      if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError(std::string(what) + " must be positive");
    };
    pos(lambda_star.shape, "prior.lambda_star.shape");
    pos(lambda_star.rate, "prior.lambda_star.rate");
    if (lambda_star_upper) pos(*lambda_star_upper, "prior.lambda_star.upper");
    if (eta_mean.empty()) throw ConfigError("prior.eta.mean must not be empty");
    pos(eta_variance, "prior.eta.variance");
    pos(tau2.shape, "prior.tau2.shape");
    pos(tau2.scale, "prior.tau2.scale");
    pos(sigma2.shape, "prior.sigma2.shape");
    pos(sigma2.scale, "prior.sigma2.scale");
    pos(phi.shape, "prior.phi.shape");
    pos(phi.rate, "prior.phi.rate");
    pos(beta.variance, "prior.beta.variance");
  }
};

struct McmcConfig {
  std::size_t n_iter = 20000;
  std::size_t burn_in = 5000;
  std::size_t thin = 15;
  /// Random-walk scales: log-scale sd for sigma2 and phi, sd for beta.
  double proposal_sigma2 = 0.3;
  double proposal_phi = 0.3;
  double proposal_beta = 0.3;
  std::uint64_t seed = 1;
  std::optional<double> fix_phi;
  std::optional<double> fix_beta;
  /// Robbins-Monro tuning of the proposal scales, burn-in only.
  bool adapt = true;
  double adapt_target = 0.44;
  /// Keep discarded locations and their S values in every stored draw.
  bool store_discarded = true;

  std::size_t retained_draws() const noexcept { return burn_in < n_iter ? (n_iter - burn_in) / thin : 0; }

  void validate() const {
    if (n_iter == 0) throw ConfigError("mcmc.n_iter must be positive");
    if (thin == 0) throw ConfigError("mcmc.thin must be at least 1");
    if (burn_in >= n_iter) throw ConfigError("mcmc.burn_in must be smaller than mcmc.n_iter");
    if (!(proposal_sigma2 > 0.0) || !(proposal_phi > 0.0) || !(proposal_beta > 0.0))
      throw ConfigError("proposal scales must be positive");
    if (fix_phi && !(*fix_phi > 0.0)) throw ConfigError("mcmc.fix_phi must be positive");
    if (!(adapt_target > 0.0 && adapt_target < 1.0)) throw ConfigError("mcmc.adapt_target must lie in (0,1)");
  }
};

/// Current values of every unknown. The augmented locations hold the n data
/// locations first, followed by the k - n discarded ones; S aligns with them.
struct ChainState {
  double lambda_star = 1.0;
  double tau2 = 1.0;
  double sigma2 = 1.0;
  double phi = 1.0;
  double beta = 0.0;
  Eigen::VectorXd eta;
  Locations locations = Locations(0, 2);
  Eigen::VectorXd s;
  Eigen::Index n = 0;

  Eigen::Index k() const noexcept { return locations.rows(); }
  Eigen::Index n_discarded() const noexcept { return k() - n; }

  GpParams gp() const { return GpParams{sigma2, CorrelationModel{CorrelationFamily::exponential, phi}}; }

  bool legal() const {
    return lambda_star > 0.0 && tau2 > 0.0 && sigma2 > 0.0 && phi > 0.0 && std::isfinite(beta) && k() >= n &&
           s.size() == k() && s.allFinite() && eta.allFinite();
  }

  std::string snapshot() const {
    std::ostringstream os;
    os.precision(10);
    os << "lambda_star=" << lambda_star << " tau2=" << tau2 << " sigma2=" << sigma2 << " phi=" << phi
       << " beta=" << beta << " eta=[" << eta.transpose() << "] n=" << n << " k=" << k();
    return os.str();
  }
};

/// One stored posterior draw.
struct Draw {
  std::size_t iteration = 0;
  double lambda_star = 0.0;
  double tau2 = 0.0;
  double sigma2 = 0.0;
  double phi = 0.0;
  double beta = 0.0;
  Eigen::VectorXd eta;
  std::size_t k = 0;
  Eigen::VectorXd s_data;
  Locations discarded = Locations(0, 2);
  Eigen::VectorXd s_discarded;
};

struct AcceptanceCounter {
  std::size_t proposed = 0;
  std::size_t accepted = 0;
  double rate() const noexcept { return proposed ? static_cast<double>(accepted) / proposed : 0.0; }
  void record(bool ok) noexcept {
    ++proposed;
    accepted += ok ? 1 : 0;
  }
};

struct PosteriorSamples {
  ModelKind model = ModelKind::eps;
  std::vector<Draw> draws;
  AcceptanceCounter sigma2;
  AcceptanceCounter phi;
  AcceptanceCounter beta;
  double scale_sigma2 = 0.0;
  double scale_phi = 0.0;
  double scale_beta = 0.0;
  /// k over all post-burn-in iterations.
  double k_mean = 0.0;
  std::size_t k_min = 0;
  std::size_t k_max = 0;

  std::size_t size() const noexcept { return draws.size(); }
};

/// Metropolis-within-Gibbs sampler for the EPS and NPS models.
///
/// One iteration runs, in order: lambda*, discarded process, S_k (skew-normal
/// Gibbs sweep), (eta, tau2), sigma2 (MH), phi (MH), beta (MH). The NPS model
/// skips the point-process blocks and keeps k = n.
class Sampler {
 public:
  Sampler(ModelKind model, GeoDataset data, Region region, Priors priors, McmcConfig config)
      : model_(model),
        data_(std::move(data)),
        region_(region),
        priors_(std::move(priors)),
        config_(std::move(config)),
        scale_sigma2_(config_.proposal_sigma2),
        scale_phi_(config_.proposal_phi),
        scale_beta_(config_.proposal_beta) {
    data_.validate();
    priors_.validate();
    config_.validate();
    eta_prior_mean_ = priors_.eta_mean_vector(data_.n_coef());
  }

  ModelKind model() const noexcept { return model_; }
  const GeoDataset& data() const noexcept { return data_; }
  const Region& region() const noexcept { return region_; }
  const Priors& priors() const noexcept { return priors_; }
  const McmcConfig& config() const noexcept { return config_; }
  const ChainState& state() const noexcept { return state_; }

  void set_state(ChainState s) {
    state_ = std::move(s);
    invalidate_geometry();
  }

  void set_data(GeoDataset d) {
    d.validate();
    data_ = std::move(d);
    eta_prior_mean_ = priors_.eta_mean_vector(data_.n_coef());
    invalidate_geometry();
  }

  double scale_sigma2() const noexcept { return scale_sigma2_; }
  double scale_phi() const noexcept { return scale_phi_; }
  double scale_beta() const noexcept { return scale_beta_; }
  const AcceptanceCounter& accept_sigma2() const noexcept { return acc_sigma2_; }
  const AcceptanceCounter& accept_phi() const noexcept { return acc_phi_; }
  const AcceptanceCounter& accept_beta() const noexcept { return acc_beta_; }

  /// Starting point: lambda* = 2n/|B|, eta by least squares, tau2 = sigma2 = half the
  /// residual variance, phi at its prior mean, beta = 0, S = 0 at the data, and
  /// (EPS) one draw of the discarded process.
  void initialize(Rng& rng) {
    const Eigen::Index n = data_.size();
    ChainState s;
    s.n = n;
    s.lambda_star = std::max<double>(2.0 * static_cast<double>(n), 1.0) / area(region_);
    s.eta = Eigen::VectorXd::Zero(data_.n_coef());
    double resid_var = 1.0;
    if (n > data_.n_coef()) {
      s.eta = data_.covariates.colPivHouseholderQr().solve(data_.y);
      const Eigen::VectorXd r = data_.y - data_.covariates * s.eta;
      const double v = r.squaredNorm() / static_cast<double>(n - 1);
      if (v > 0.0 && std::isfinite(v)) resid_var = v;
    }
    s.tau2 = 0.5 * resid_var;
    s.sigma2 = 0.5 * resid_var;
    s.phi = config_.fix_phi.value_or(priors_.phi.shape / priors_.phi.rate);
    s.beta = config_.fix_beta.value_or(0.0);
    s.locations = data_.locations;
    s.s = Eigen::VectorXd::Zero(n);
    set_state(std::move(s));
    if (model_ == ModelKind::eps) step_discarded(rng);
  }

  // Step 1: lambda* ~ Gamma(a + k, b + |B|), optionally truncated above.
  void step_lambda_star(Rng& rng) {
    const double shape = priors_.lambda_star.shape + static_cast<double>(state_.k());
    const double rate = priors_.lambda_star.rate + area(region_);
    if (!priors_.lambda_star_upper) {
      state_.lambda_star = rng.gamma(shape, rate);
      return;
    }
    for (int attempt = 0; attempt < 10000; ++attempt) {
      const double v = rng.gamma(shape, rate);
      if (v <= *priors_.lambda_star_upper) {
        state_.lambda_star = v;
        return;
      }
    }
    throw ConfigError("lambda_star truncation bound rejected 10000 consecutive draws; bound is too low");
  }

  // Step 2: wholesale redraw of the discarded process given S at the augmented points.
  void step_discarded(Rng& rng) {
    const ThinningParams tp{state_.lambda_star, state_.beta, state_.gp()};
    const JitteredCholesky* factor = state_.k() > 0 ? &corr_factor() : nullptr;
    const PointPattern discarded = update_discarded(state_.locations, state_.s, tp, region_, rng, factor);
    const Eigen::Index n = state_.n;
    const Eigen::Index m = discarded.size();
    Locations locs(n + m, 2);
    Eigen::VectorXd s(n + m);
    locs.topRows(n) = state_.locations.topRows(n);
    s.head(n) = state_.s.head(n);
    if (m > 0) {
      locs.bottomRows(m) = discarded.locations;
      s.tail(m) = *discarded.marks;
    }
    state_.locations = std::move(locs);
    state_.s = std::move(s);
    invalidate_geometry();
  }

  /// Skew-normal full conditional of S_k: precision C'C/tau2 + (sigma2 R)^{-1},
  /// linear term C'(y - D eta)/tau2, G = (beta/sigma) diag(I_n, -I_{k-n}).
  SkewNormalSpec latent_spec() {
    const Eigen::Index k = state_.k();
    const Eigen::Index n = state_.n;
    const JitteredCholesky& chol = corr_factor();
    Eigen::MatrixXd prior_cov = state_.sigma2 * corr_from_cache(state_.phi);
    prior_cov.diagonal().array() += state_.sigma2 * chol.jitter;
    Eigen::MatrixXd prior_factor = std::sqrt(state_.sigma2) * chol.matrix_l();
    Eigen::VectorXd obs = Eigen::VectorXd::Zero(k);
    obs.head(n).setConstant(1.0 / state_.tau2);
    Eigen::VectorXd linear = Eigen::VectorXd::Zero(k);
    linear.head(n) = (data_.y - data_.covariates * state_.eta) / state_.tau2;
    Eigen::VectorXd skew = Eigen::VectorXd::Zero(k);
    if (model_ == ModelKind::eps) {
      const double g = state_.beta / std::sqrt(state_.sigma2);
      skew.head(n).setConstant(g);
      skew.tail(k - n).setConstant(-g);
    }
    return SkewNormalSpec::from_prior(std::move(prior_cov), std::move(prior_factor), std::move(obs),
                                      std::move(linear), std::move(skew));
  }

  // Step 3.
  void step_latent(Rng& rng) {
    if (state_.k() == 0) return;
    state_.s = sn_gibbs_step(state_.s, latent_spec(), rng);
  }

  /// Mean and covariance of eta | S_n, tau2: precision P = D'D/tau2 + I/sigma2_eta.
  std::pair<Eigen::VectorXd, Eigen::MatrixXd> eta_conditional() const {
    const Eigen::Index p1 = data_.n_coef();
    const Eigen::VectorXd resid = data_.y - state_.s.head(state_.n);
    Eigen::MatrixXd prec = data_.covariates.transpose() * data_.covariates / state_.tau2;
    prec.diagonal().array() += 1.0 / priors_.eta_variance;
    const Eigen::VectorXd rhs =
        data_.covariates.transpose() * resid / state_.tau2 + eta_prior_mean_ / priors_.eta_variance;
    const Eigen::LLT<Eigen::MatrixXd> llt(prec);
    if (llt.info() != Eigen::Success) throw NumericalError("eta full conditional precision is not positive definite");
    return {llt.solve(rhs), llt.solve(Eigen::MatrixXd::Identity(p1, p1))};
  }

  // Step 4: eta ~ N(P^{-1} b, P^{-1}) with P = D'D/tau2 + I/sigma2_eta, then tau2 | eta.
  void step_eta_tau2(Rng& rng) {
    const Eigen::Index n = state_.n;
    const Eigen::Index p1 = data_.n_coef();
    const Eigen::VectorXd resid = data_.y - state_.s.head(n);
    Eigen::MatrixXd prec = data_.covariates.transpose() * data_.covariates / state_.tau2;
    prec.diagonal().array() += 1.0 / priors_.eta_variance;
    const Eigen::VectorXd rhs =
        data_.covariates.transpose() * resid / state_.tau2 + eta_prior_mean_ / priors_.eta_variance;
    const Eigen::LLT<Eigen::MatrixXd> llt(prec);
    if (llt.info() != Eigen::Success) throw NumericalError("eta full conditional precision is not positive definite");
    Eigen::VectorXd z(p1);
    for (Eigen::Index i = 0; i < p1; ++i) z(i) = rng.normal();
    state_.eta = llt.solve(rhs) + llt.matrixU().solve(z);

    const double ss = (resid - data_.covariates * state_.eta).squaredNorm();
    state_.tau2 = rng.inv_gamma(0.5 * static_cast<double>(n) + priors_.tau2.shape, 0.5 * ss + priors_.tau2.scale);
  }

  /// log p_sigma for a proposed sigma2. The exponent -k/2 - a_sigma is the
  /// inverse-gamma prior exponent -(k/2 + a_sigma + 1) plus one from the
  /// lognormal proposal Jacobian sigma2_p / sigma2_c.
  double log_accept_sigma2(double proposal) {
    const double current = state_.sigma2;
    const double k = static_cast<double>(state_.k());
    const double quad = corr_factor().quad_form(state_.s);
    double out = (-0.5 * k - priors_.sigma2.shape) * (std::log(proposal) - std::log(current)) -
                 (0.5 * quad + priors_.sigma2.scale) * (1.0 / proposal - 1.0 / current);
    if (model_ == ModelKind::eps) {
      out += log_selection(state_.beta / std::sqrt(proposal)) - log_selection(state_.beta / std::sqrt(current));
    }
    return out;
  }

  // Step 5.
  bool step_sigma2(Rng& rng) {
    const double proposal = state_.sigma2 * std::exp(scale_sigma2_ * rng.normal());
    const bool ok = std::log(rng.uniform()) < log_accept_sigma2(proposal);
    if (ok) state_.sigma2 = proposal;
    acc_sigma2_.record(ok);
    return ok;
  }

  /// log p_phi for a proposed range. The prior exponent a_phi - 1 gains one
  /// from the lognormal proposal Jacobian. Returns -inf when R(phi_p) cannot
  /// be factorized; `proposal_factor` receives the factorization otherwise.
  double log_accept_phi(double proposal, JitteredCholesky* proposal_factor = nullptr) {
    const double current = state_.phi;
    const JitteredCholesky& cur = corr_factor();
    JitteredCholesky prop;
    try {
      prop = jittered_cholesky(corr_from_cache(proposal), 1.0);
    } catch (const NumericalError&) {
      return -std::numeric_limits<double>::infinity();
    }
    const double out = -0.5 * (prop.log_determinant() - cur.log_determinant()) +
                       priors_.phi.shape * (std::log(proposal) - std::log(current)) -
                       (prop.quad_form(state_.s) - cur.quad_form(state_.s)) / (2.0 * state_.sigma2) -
                       priors_.phi.rate * (proposal - current);
    if (proposal_factor) *proposal_factor = std::move(prop);
    return out;
  }

  // Step 6.
  bool step_phi(Rng& rng) {
    if (config_.fix_phi) return false;
    const double proposal = state_.phi * std::exp(scale_phi_ * rng.normal());
    JitteredCholesky factor;
    const double la = log_accept_phi(proposal, &factor);
    const bool ok = std::log(rng.uniform()) < la;
    if (ok) {
      state_.phi = proposal;
      corr_ = std::move(factor);
    }
    acc_phi_.record(ok);
    return ok;
  }

  double log_accept_beta(double proposal) const {
    const double sigma = std::sqrt(state_.sigma2);
    const double m = priors_.beta.mean;
    const double v = priors_.beta.variance;
    return log_selection(proposal / sigma) - log_selection(state_.beta / sigma) -
           0.5 * ((proposal - m) * (proposal - m) - (state_.beta - m) * (state_.beta - m)) / v;
  }

  // Step 7.
  bool step_beta(Rng& rng) {
    if (model_ != ModelKind::eps || config_.fix_beta) return false;
    const double proposal = state_.beta + scale_beta_ * rng.normal();
    const bool ok = std::log(rng.uniform()) < log_accept_beta(proposal);
    if (ok) state_.beta = proposal;
    acc_beta_.record(ok);
    return ok;
  }

  /// sum_{i<=n} log Phi(g S_i) + sum_{i>n} log Phi(-g S_i).
  double log_selection(double g) const {
    double out = 0.0;
    for (Eigen::Index i = 0; i < state_.k(); ++i) {
      out += log_norm_cdf((i < state_.n ? g : -g) * state_.s(i));
    }
    return out;
  }

  /// One full iteration; adapts proposal scales while `iteration` < burn-in.
  void iterate(Rng& rng, std::size_t iteration) {
    try {
      if (model_ == ModelKind::eps) {
        step_lambda_star(rng);
        step_discarded(rng);
      }
      step_latent(rng);
      step_eta_tau2(rng);
      const bool a_sigma = step_sigma2(rng);
      const bool a_phi = step_phi(rng);
      const bool a_beta = step_beta(rng);
      if (config_.adapt && iteration < config_.burn_in) {
        const double gain = std::min(0.5, std::pow(static_cast<double>(iteration) + 1.0, -0.6));
        scale_sigma2_ *= std::exp(gain * ((a_sigma ? 1.0 : 0.0) - config_.adapt_target));
        if (!config_.fix_phi) scale_phi_ *= std::exp(gain * ((a_phi ? 1.0 : 0.0) - config_.adapt_target));
        if (model_ == ModelKind::eps && !config_.fix_beta)
          scale_beta_ *= std::exp(gain * ((a_beta ? 1.0 : 0.0) - config_.adapt_target));
      }
    } catch (const SamplerError&) {
      throw;
    } catch (const std::exception& e) {
      throw SamplerError(e.what(), iteration, state_.snapshot());
    }
    if (!state_.legal()) throw SamplerError("chain state violates its invariants", iteration, state_.snapshot());
  }

  Draw record(std::size_t iteration) const {
    Draw d;
    d.iteration = iteration;
    d.lambda_star = model_ == ModelKind::eps ? state_.lambda_star : 0.0;
    d.tau2 = state_.tau2;
    d.sigma2 = state_.sigma2;
    d.phi = state_.phi;
    d.beta = state_.beta;
    d.eta = state_.eta;
    d.k = static_cast<std::size_t>(state_.k());
    d.s_data = state_.s.head(state_.n);
    if (config_.store_discarded && model_ == ModelKind::eps) {
      d.discarded = state_.locations.bottomRows(state_.n_discarded());
      d.s_discarded = state_.s.tail(state_.n_discarded());
    }
    return d;
  }

 private:
  void invalidate_geometry() {
    corr_.reset();
    dist_.reset();
  }

  Eigen::MatrixXd corr_from_cache(double phi) {
    if (!dist_) dist_ = distance_matrix(state_.locations);
    return correlation_from_distance(*dist_, CorrelationModel{CorrelationFamily::exponential, phi});
  }

  /// Factor of R at the current augmented locations and phi.
  const JitteredCholesky& corr_factor() {
    if (!corr_) corr_ = jittered_cholesky(corr_from_cache(state_.phi), 1.0);
    return *corr_;
  }

  ModelKind model_;
  GeoDataset data_;
  Region region_;
  Priors priors_;
  McmcConfig config_;
  Eigen::VectorXd eta_prior_mean_;
  ChainState state_;
  std::optional<JitteredCholesky> corr_;
  std::optional<Eigen::MatrixXd> dist_;
  double scale_sigma2_;
  double scale_phi_;
  double scale_beta_;
  AcceptanceCounter acc_sigma2_;
  AcceptanceCounter acc_phi_;
  AcceptanceCounter acc_beta_;
};

/// Runs one chain; deterministic given config.seed.
inline PosteriorSamples run_chain(ModelKind model, const GeoDataset& data, const Region& region, const Priors& priors,
                                  const McmcConfig& config) {
  if (data.size() == 0) throw ConfigError("cannot fit an empty dataset");
  if (model == ModelKind::eps && !region.contains_all(data.locations))
    throw ConfigError("data locations fall outside the region");
  Sampler sampler(model, data, region, priors, config);
  Rng rng(derive_seed(config.seed, "mcmc"));
  sampler.initialize(rng);

  PosteriorSamples out;
  out.model = model;
  out.draws.reserve(config.retained_draws());
  double k_sum = 0.0;
  std::size_t k_count = 0;
  out.k_min = std::numeric_limits<std::size_t>::max();
  for (std::size_t it = 0; it < config.n_iter; ++it) {
    sampler.iterate(rng, it);
    if (it < config.burn_in) continue;
    const auto k = static_cast<std::size_t>(sampler.state().k());
    k_sum += static_cast<double>(k);
    ++k_count;
    out.k_min = std::min(out.k_min, k);
    out.k_max = std::max(out.k_max, k);
    if ((it - config.burn_in + 1) % config.thin == 0) out.draws.push_back(sampler.record(it));
  }
  out.k_mean = k_count ? k_sum / static_cast<double>(k_count) : 0.0;
  if (k_count == 0) out.k_min = 0;
  out.sigma2 = sampler.accept_sigma2();
  out.phi = sampler.accept_phi();
  out.beta = sampler.accept_beta();
  out.scale_sigma2 = sampler.scale_sigma2();
  out.scale_phi = sampler.scale_phi();
  out.scale_beta = sampler.scale_beta();
  return out;
}

inline PosteriorSamples run_eps(const GeoDataset& data, const Region& region, const Priors& priors,
                                const McmcConfig& config) {
  return run_chain(ModelKind::eps, data, region, priors, config);
}

/// The NPS model has no point-process component, so the region is not needed.
inline PosteriorSamples run_nps(const GeoDataset& data, const Priors& priors, const McmcConfig& config) {
  return run_chain(ModelKind::nps, data, Region::unit_square(), priors, config);
}

}  // namespace psgeo
