#pragma once

#include <cmath>
#include <string>

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include "psgeo/errors.hpp"
#include "psgeo/region.hpp"
#include "psgeo/rng.hpp"

namespace psgeo {

enum class CorrelationFamily { exponential };

/// Isotropic correlation function rho_phi(h).
struct CorrelationModel {
  CorrelationFamily family = CorrelationFamily::exponential;
  double phi = 1.0;

  double operator()(double h) const noexcept {
    switch (family) {
      case CorrelationFamily::exponential:
        return std::exp(-h / phi);
    }
    return 0.0;
  }
};

inline CorrelationModel exponential_correlation(double phi) {
  if (!(phi > 0.0)) throw ConfigError("correlation range phi must be positive");
  return CorrelationModel{CorrelationFamily::exponential, phi};
}

inline double correlation(double h, const CorrelationModel& model) {
  if (h < 0.0) throw std::invalid_argument("correlation: negative distance");
  return model(h);
}

/// Zero-mean stationary GP: variance sigma2 and correlation corr.
struct GpParams {
  double sigma2 = 1.0;
  CorrelationModel corr{};
};

inline double distance(const Locations& a, Eigen::Index i, const Locations& b, Eigen::Index j) noexcept {
  return std::hypot(a(i, 0) - b(j, 0), a(i, 1) - b(j, 1));
}

/// Pairwise Euclidean distances, exactly symmetric with zero diagonal.
inline Eigen::MatrixXd distance_matrix(const Locations& locs) {
  const Eigen::Index n = locs.rows();
  Eigen::MatrixXd d(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    d(j, j) = 0.0;
    for (Eigen::Index i = j + 1; i < n; ++i) {
      const double v = distance(locs, i, locs, j);
      d(i, j) = v;
      d(j, i) = v;
    }
  }
  return d;
}

/// Distances between rows of `a` (matrix rows) and rows of `b` (matrix columns).
inline Eigen::MatrixXd cross_distance(const Locations& a, const Locations& b) {
  Eigen::MatrixXd d(a.rows(), b.rows());
  for (Eigen::Index j = 0; j < b.rows(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) d(i, j) = distance(a, i, b, j);
  }
  return d;
}

/// Elementwise rho applied to a distance matrix.
inline Eigen::MatrixXd correlation_from_distance(const Eigen::MatrixXd& dist, const CorrelationModel& model) {
  switch (model.family) {
    case CorrelationFamily::exponential:
      return (dist.array() * (-1.0 / model.phi)).exp().matrix();
  }
  return dist.unaryExpr([&](double h) { return model(h); });
}

/// R[i][j] = rho(|x_i - x_j|), exactly symmetric with unit diagonal.
inline Eigen::MatrixXd corr_matrix(const Locations& locs, const CorrelationModel& model) {
  return correlation_from_distance(distance_matrix(locs), model);
}

/// Cross-correlation block, rows indexed by `a`, columns by `b`.
inline Eigen::MatrixXd cross_corr(const Locations& a, const Locations& b, const CorrelationModel& model) {
  return correlation_from_distance(cross_distance(a, b), model);
}

/// Jitter escalation: eps * scale added to the diagonal, eps = 1e-8, 1e-7, ..., 1e-4.
struct JitterPolicy {
  double initial = 1e-8;
  double maximum = 1e-4;
  double factor = 10.0;
};

/// Cholesky factor of A + eps*scale*I: eps = 0 when A is comfortably positive
/// definite, else the smallest eps in the policy that succeeds.
struct JitteredCholesky {
  Eigen::LLT<Eigen::MatrixXd> llt;
  double jitter = 0.0;

  Eigen::Index size() const { return llt.rows(); }
  Eigen::MatrixXd matrix_l() const { return llt.matrixL(); }

  double log_determinant() const {
    return 2.0 * llt.matrixLLT().diagonal().array().log().sum();
  }

  /// x' A^{-1} x.
  double quad_form(const Eigen::VectorXd& x) const {
    return llt.matrixL().solve(x).squaredNorm();
  }
};

inline JitteredCholesky jittered_cholesky(const Eigen::MatrixXd& a, double scale, const JitterPolicy& policy = {}) {
  JitteredCholesky out;
  if (a.rows() == 0) {
    out.llt.compute(a);
    return out;
  }
  // Unjittered first, accepted only when no pivot falls below the smallest jitter level.
  out.llt.compute(a);
  if (out.llt.info() == Eigen::Success &&
      out.llt.matrixLLT().diagonal().array().square().minCoeff() >= policy.initial * scale) {
    out.jitter = 0.0;
    return out;
  }
  Eigen::MatrixXd work = a;
  for (double eps = policy.initial; eps <= policy.maximum * (1.0 + 1e-12); eps *= policy.factor) {
    work.diagonal() = a.diagonal().array() + eps * scale;
    out.llt.compute(work);
    if (out.llt.info() == Eigen::Success) {
      out.jitter = eps * scale;
      return out;
    }
  }
  throw NumericalError("symmetric factorization failed after jitter escalation to " +
                       std::to_string(policy.maximum) + " (size " + std::to_string(a.rows()) + ")");
}

/// One draw of S ~ N(0, sigma2 R) at `locs`.
inline Eigen::VectorXd gp_draw(const Locations& locs, const GpParams& params, Rng& rng) {
  if (locs.rows() == 0) throw std::invalid_argument("gp_draw: need at least one location");
  const JitteredCholesky chol = jittered_cholesky(corr_matrix(locs, params.corr), 1.0);
  Eigen::VectorXd z(locs.rows());
  for (Eigen::Index i = 0; i < z.size(); ++i) z(i) = rng.normal();
  Eigen::VectorXd s = chol.llt.matrixL() * z;
  return std::sqrt(params.sigma2) * s;
}

/// Gaussian law of S at target locations given S at known locations.
struct ConditionalGaussian {
  Eigen::VectorXd mean;
  Eigen::MatrixXd covariance;
};

/// Mean and marginal variances only, O(n_targets * n_known^2).
struct ConditionalMarginals {
  Eigen::VectorXd mean;
  Eigen::VectorXd variance;
};

namespace detail {

struct KrigingSolve {
  Eigen::MatrixXd weights_t;  // L^{-1} R21, n_known x n_targets
  Eigen::VectorXd whitened;   // L^{-1} S_known
};

inline KrigingSolve kriging_solve(const Locations& targets, const Locations& known_locs,
                                  const Eigen::VectorXd& known_s, const CorrelationModel& corr,
                                  const JitteredCholesky* known_factor = nullptr) {
  if (known_locs.rows() == 0) throw std::invalid_argument("conditional: no known locations");
  if (known_locs.rows() != known_s.size()) throw std::invalid_argument("conditional: known_S length mismatch");
  JitteredCholesky own;
  if (!known_factor) {
    own = jittered_cholesky(corr_matrix(known_locs, corr), 1.0);
    known_factor = &own;
  } else if (known_factor->size() != known_locs.rows()) {
    throw std::invalid_argument("conditional: factor size does not match the known locations");
  }
  const auto l = known_factor->llt.matrixL();
  KrigingSolve out;
  out.weights_t = l.solve(cross_corr(known_locs, targets, corr));
  out.whitened = l.solve(known_s);
  return out;
}

}  // namespace detail

/// Kriging: mean R12 R22^{-1} S_k and covariance sigma2 (R11 - R12 R22^{-1} R21).
///
/// `known_factor`, when given, must be the jittered Cholesky factor of R22 (the
/// correlation matrix of the known locations under params.corr).
inline ConditionalGaussian conditional(const Locations& targets, const Locations& known_locs,
                                       const Eigen::VectorXd& known_s, const GpParams& params,
                                       const JitteredCholesky* known_factor = nullptr) {
  const detail::KrigingSolve ks = detail::kriging_solve(targets, known_locs, known_s, params.corr, known_factor);
  ConditionalGaussian out;
  out.mean = ks.weights_t.transpose() * ks.whitened;
  Eigen::MatrixXd cov = corr_matrix(targets, params.corr);
  cov.noalias() -= ks.weights_t.transpose() * ks.weights_t;
  out.covariance = params.sigma2 * 0.5 * (cov + cov.transpose());
  return out;
}

inline ConditionalMarginals conditional_marginals(const Locations& targets, const Locations& known_locs,
                                                  const Eigen::VectorXd& known_s, const GpParams& params) {
  const detail::KrigingSolve ks = detail::kriging_solve(targets, known_locs, known_s, params.corr);
  ConditionalMarginals out;
  out.mean = ks.weights_t.transpose() * ks.whitened;
  out.variance = (params.sigma2 * (1.0 - ks.weights_t.colwise().squaredNorm().array())).max(0.0).matrix();
  return out;
}

/// Draw from an explicit Gaussian with jittered factorization.
inline Eigen::VectorXd draw_gaussian(const ConditionalGaussian& g, double jitter_scale, Rng& rng) {
  if (g.mean.size() == 0) return {};
  const JitteredCholesky chol = jittered_cholesky(g.covariance, jitter_scale);
  Eigen::VectorXd z(g.mean.size());
  for (Eigen::Index i = 0; i < z.size(); ++i) z(i) = rng.normal();
  return g.mean + chol.llt.matrixL() * z;
}

/// Retrospective extension of S to `targets`, jointly.
inline Eigen::VectorXd conditional_draw(const Locations& targets, const Locations& known_locs,
                                        const Eigen::VectorXd& known_s, const GpParams& params, Rng& rng,
                                        const JitteredCholesky* known_factor = nullptr) {
  if (targets.rows() == 0) return {};
  return draw_gaussian(conditional(targets, known_locs, known_s, params, known_factor), params.sigma2, rng);
}

}  // namespace psgeo
