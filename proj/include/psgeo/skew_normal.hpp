#pragma once

#include <cmath>
#include <optional>

#include <Eigen/Dense>

#include "psgeo/gp.hpp"
#include "psgeo/rng.hpp"
#include "psgeo/special.hpp"

namespace psgeo {

/// Density kernel phi_k(s; mu, Sigma) * prod_i Phi(g_i s_i).
///
/// Stored in canonical form: the precision Sigma^{-1} and the linear term
/// Sigma^{-1} mu. The sampler never needs Sigma itself. A spec built with
/// from_prior() keeps the structure Sigma^{-1} = diag(d) + P^{-1} with the
/// Gaussian-prior covariance P, and only materializes the precision on demand.
class SkewNormalSpec {
 public:
  SkewNormalSpec() = default;

  static SkewNormalSpec from_precision(Eigen::MatrixXd precision, Eigen::VectorXd linear, Eigen::VectorXd skew) {
    if (precision.rows() != precision.cols() || precision.rows() != linear.size() || linear.size() != skew.size())
      throw std::invalid_argument("SkewNormalSpec: dimension mismatch");
    SkewNormalSpec s;
    s.precision_ = std::move(precision);
    s.linear_ = std::move(linear);
    s.skew_ = std::move(skew);
    return s;
  }

  static SkewNormalSpec from_moments(const Eigen::VectorXd& mu, const Eigen::MatrixXd& sigma, Eigen::VectorXd skew) {
    const JitteredCholesky chol = jittered_cholesky(sigma, sigma.diagonal().mean());
    Eigen::MatrixXd q = chol.llt.solve(Eigen::MatrixXd::Identity(sigma.rows(), sigma.cols()));
    q = 0.5 * (q + q.transpose()).eval();
    Eigen::VectorXd h = q * mu;
    return from_precision(std::move(q), std::move(h), std::move(skew));
  }

  /// Sigma^{-1} = diag(obs_precision) + prior_cov^{-1}; prior_factor is the
  /// Cholesky factor of prior_cov.
  static SkewNormalSpec from_prior(Eigen::MatrixXd prior_cov, Eigen::MatrixXd prior_factor,
                                   Eigen::VectorXd obs_precision, Eigen::VectorXd linear, Eigen::VectorXd skew) {
    const Eigen::Index k = linear.size();
    if (prior_cov.rows() != k || prior_cov.cols() != k || prior_factor.rows() != k || obs_precision.size() != k ||
        skew.size() != k)
      throw std::invalid_argument("SkewNormalSpec: dimension mismatch");
    SkewNormalSpec s;
    s.prior_ = PriorForm{std::move(prior_cov), std::move(prior_factor), std::move(obs_precision)};
    s.linear_ = std::move(linear);
    s.skew_ = std::move(skew);
    return s;
  }

  Eigen::Index dim() const noexcept { return linear_.size(); }
  const Eigen::VectorXd& linear() const noexcept { return linear_; }
  /// Diagonal of G.
  const Eigen::VectorXd& skew() const noexcept { return skew_; }

  const Eigen::MatrixXd& precision() const {
    if (!precision_) {
      const Eigen::Index k = dim();
      const auto l = prior_->factor.triangularView<Eigen::Lower>();
      Eigen::MatrixXd linv = l.solve(Eigen::MatrixXd::Identity(k, k));
      Eigen::MatrixXd q = linv.transpose() * linv;
      q.diagonal() += prior_->obs_precision;
      precision_ = 0.5 * (q + q.transpose());
    }
    return *precision_;
  }

  JitteredCholesky precision_factor() const {
    return jittered_cholesky(precision(), precision().diagonal().mean());
  }

  Eigen::VectorXd mu_star() const { return precision_factor().llt.solve(linear_); }

  struct PriorForm {
    Eigen::MatrixXd cov;
    Eigen::MatrixXd factor;
    Eigen::VectorXd obs_precision;
  };
  const std::optional<PriorForm>& prior_form() const noexcept { return prior_; }

 private:
  mutable std::optional<Eigen::MatrixXd> precision_;
  std::optional<PriorForm> prior_;
  Eigen::VectorXd linear_;
  Eigen::VectorXd skew_;
};

/// log phi_k(s; mu*, Sigma*) + sum_i log Phi((G s)_i).
inline double sn_log_kernel(const Eigen::VectorXd& s, const SkewNormalSpec& spec) {
  if (s.size() != spec.dim()) throw std::invalid_argument("sn_log_kernel: dimension mismatch");
  const JitteredCholesky chol = spec.precision_factor();
  const Eigen::VectorXd mu = chol.llt.solve(spec.linear());
  const Eigen::VectorXd d = s - mu;
  const double k = static_cast<double>(s.size());
  double out = -k * kLogSqrt2Pi + 0.5 * chol.log_determinant() - 0.5 * d.dot(spec.precision() * d);
  for (Eigen::Index i = 0; i < s.size(); ++i) out += log_norm_cdf(spec.skew()(i) * s(i));
  return out;
}

namespace detail {

/// s ~ N(V b, V), V^{-1} = P^{-1} + diag(a), all a_i > 0, via Matheron's update:
/// s0 ~ N(0, P), e ~ N(0, diag(1/a)), s = s0 + P (P + diag(1/a))^{-1} (b/a - s0 - e).
inline Eigen::VectorXd gaussian_update_prior_form(const SkewNormalSpec::PriorForm& prior, const Eigen::VectorXd& a,
                                                  const Eigen::VectorXd& b, Rng& rng) {
  const Eigen::Index k = b.size();
  Eigen::VectorXd z(k);
  for (Eigen::Index i = 0; i < k; ++i) z(i) = rng.normal();
  Eigen::VectorXd s0 = prior.factor.triangularView<Eigen::Lower>() * z;
  Eigen::VectorXd resid(k);
  for (Eigen::Index i = 0; i < k; ++i) resid(i) = b(i) / a(i) - s0(i) - rng.normal() / std::sqrt(a(i));
  Eigen::MatrixXd m = prior.cov;
  m.diagonal().array() += a.array().inverse();
  const JitteredCholesky chol = jittered_cholesky(m, m.diagonal().mean());
  return s0 + prior.cov * chol.llt.solve(resid);
}

}  // namespace detail

/// One sweep of the probit data-augmentation Gibbs sampler for the SN kernel:
///   u_i | s ~ N((G s)_i, 1) truncated to (0, inf)
///   s | u   ~ N(m, V),  V^{-1} = Sigma*^{-1} + G'G,  m = V (Sigma*^{-1} mu* + G' u)
/// Integrating u out of the joint gives back prod_i Phi((G s)_i), so the kernel is invariant.
inline Eigen::VectorXd sn_gibbs_step(const Eigen::VectorXd& current, const SkewNormalSpec& spec, Rng& rng) {
  const Eigen::Index k = spec.dim();
  if (current.size() != k) throw std::invalid_argument("sn_gibbs_step: dimension mismatch");
  if (k == 0) return {};
  const Eigen::VectorXd& g = spec.skew();
  Eigen::VectorXd rhs = spec.linear();
  const bool skewed = (g.array() != 0.0).any();
  if (skewed) {
    for (Eigen::Index i = 0; i < k; ++i) {
      rhs(i) += g(i) * truncated_normal_positive(g(i) * current(i), rng);
    }
  }
  if (const auto& prior = spec.prior_form()) {
    const Eigen::VectorXd a = prior->obs_precision.array() + g.array().square();
    if ((a.array() > 0.0).all()) return detail::gaussian_update_prior_form(*prior, a, rhs, rng);
  }
  Eigen::MatrixXd post_precision = spec.precision();
  post_precision.diagonal().array() += g.array().square();
  const JitteredCholesky chol = jittered_cholesky(post_precision, post_precision.diagonal().mean());
  Eigen::VectorXd z(k);
  for (Eigen::Index i = 0; i < k; ++i) z(i) = rng.normal();
  // L L' = V^{-1}  =>  L'^{-1} z ~ N(0, V)
  return chol.llt.solve(rhs) + chol.llt.matrixU().solve(z);
}

}  // namespace psgeo
