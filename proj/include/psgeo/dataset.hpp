#pragma once

#include <Eigen/Dense>

#include "psgeo/errors.hpp"
#include "psgeo/region.hpp"

namespace psgeo {

/// Observed locations, responses, and the design matrix D (first column is the intercept).
struct GeoDataset {
  Locations locations = Locations(0, 2);
  Eigen::VectorXd y;
  Eigen::MatrixXd covariates;

  Eigen::Index size() const noexcept { return y.size(); }
  /// p + 1.
  Eigen::Index n_coef() const noexcept { return covariates.cols(); }

  static GeoDataset intercept_only(Locations locs, Eigen::VectorXd y) {
    GeoDataset d;
    d.covariates = Eigen::MatrixXd::Ones(y.size(), 1);
    d.locations = std::move(locs);
    d.y = std::move(y);
    return d;
  }

  void validate() const {
    if (locations.rows() != y.size()) throw ConfigError("dataset: location count does not match response count");
    if (covariates.rows() != y.size()) throw ConfigError("dataset: design matrix row count does not match responses");
    if (covariates.cols() < 1) throw ConfigError("dataset: design matrix needs an intercept column");
  }

  /// Dataset without row `i`.
  GeoDataset without(Eigen::Index i) const {
    GeoDataset out;
    const Eigen::Index n = size();
    out.locations.resize(n - 1, 2);
    out.y.resize(n - 1);
    out.covariates.resize(n - 1, n_coef());
    for (Eigen::Index r = 0, w = 0; r < n; ++r) {
      if (r == i) continue;
      out.locations.row(w) = locations.row(r);
      out.y(w) = y(r);
      out.covariates.row(w) = covariates.row(r);
      ++w;
    }
    return out;
  }
};

}  // namespace psgeo
