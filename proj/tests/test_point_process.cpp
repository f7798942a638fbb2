#include <gtest/gtest.h>

#include "oracles.hpp"
#include "psgeo/point_process.hpp"

using namespace psgeo;

namespace {

const GpParams kGp{3.0, exponential_correlation(0.15)};

}  // namespace

TEST(Hpp, MeanCountAndFano) {
  Rng rng(1);
  std::vector<double> counts;
  for (int r = 0; r < 1000; ++r) counts.push_back(static_cast<double>(hpp_draw(150.0, Region::unit_square(), rng).size()));
  EXPECT_NEAR(oracle::mean(counts), 150.0, 3.0 * std::sqrt(150.0 / 1000.0));
  const double fano = oracle::variance(counts) / oracle::mean(counts);
  EXPECT_GE(fano, 0.9);
  EXPECT_LE(fano, 1.1);
}

TEST(Hpp, TinyIntensityIsAlmostAlwaysEmpty) {
  Rng rng(2);
  int zeros = 0;
  for (int r = 0; r < 10000; ++r) zeros += hpp_draw(1e-6, Region::unit_square(), rng).empty() ? 1 : 0;
  EXPECT_GE(zeros, 9990);
}

TEST(Hpp, ScalesWithArea) {
  Rng rng(3);
  const Region r({0, 0}, {2, 3});
  double total = 0;
  for (int i = 0; i < 500; ++i) {
    const PointPattern p = hpp_draw(10.0, r, rng);
    EXPECT_TRUE(r.contains_all(p.locations));
    total += static_cast<double>(p.size());
  }
  EXPECT_NEAR(total / 500.0, 60.0, 3.0 * std::sqrt(60.0 / 500.0));
}

TEST(Thin, ZeroBetaKeepsHalf) {
  Rng rng(4);
  PointPattern p{sample_uniform(Region::unit_square(), 10000, rng), Eigen::VectorXd::Ones(10000)};
  const PointPattern kept = thin(p, 0.0, 1.0, +1, rng);
  EXPECT_NEAR(static_cast<double>(kept.size()) / 10000.0, 0.5, 0.015);
}

TEST(Thin, SaturatedRetention) {
  Rng rng(5);
  PointPattern p{sample_uniform(Region::unit_square(), 500, rng), Eigen::VectorXd::Ones(500)};
  EXPECT_EQ(thin(p, 1e3, 1.0, +1, rng).size(), 500);
  EXPECT_EQ(thin(p, 1e3, 1.0, -1, rng).size(), 0);
}

TEST(Thin, ComplementarySplitPartitions) {
  Rng rng(6);
  const Eigen::Index n = 2000;
  const Locations l = sample_uniform(Region::unit_square(), static_cast<std::size_t>(n), rng);
  const Eigen::VectorXd s = gp_draw(l.topRows(200), kGp, rng).replicate(10, 1);
  Eigen::VectorXd u(n);
  for (Eigen::Index i = 0; i < n; ++i) u(i) = rng.uniform();
  const auto plus = thinning_mask(s, 2.0, std::sqrt(3.0), +1, u);
  const auto minus = thinning_mask(s, 2.0, std::sqrt(3.0), -1, u);
  for (Eigen::Index i = 0; i < n; ++i) EXPECT_NE(plus[static_cast<std::size_t>(i)], minus[static_cast<std::size_t>(i)]);
}

TEST(Thin, KeepsMarksAligned) {
  Rng rng(7);
  PointPattern p{sample_uniform(Region::unit_square(), 300, rng), Eigen::VectorXd(300)};
  for (Eigen::Index i = 0; i < 300; ++i) (*p.marks)(i) = p.locations(i, 0) + 10.0 * p.locations(i, 1);
  const PointPattern kept = thin(p, 0.7, 1.0, +1, rng);
  for (Eigen::Index i = 0; i < kept.size(); ++i)
    EXPECT_DOUBLE_EQ((*kept.marks)(i), kept.locations(i, 0) + 10.0 * kept.locations(i, 1));
  EXPECT_THROW(thin(PointPattern{p.locations, std::nullopt}, 1.0, 1.0, +1, rng), std::invalid_argument);
}

TEST(UpdateDiscarded, SaturatedFieldLeavesNothing) {
  Rng rng(8);
  Locations known(25, 2);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) known.row(5 * i + j) << 0.1 + 0.2 * i, 0.1 + 0.2 * j;
  const Eigen::VectorXd s = Eigen::VectorXd::Ones(25);
  const ThinningParams tp{150.0, 1e3, GpParams{1.0, exponential_correlation(1000.0)}};
  int total = 0;
  for (int r = 0; r < 100; ++r) total += static_cast<int>(update_discarded(known, s, tp, Region::unit_square(), rng).size());
  EXPECT_EQ(total, 0);
}

TEST(UpdateDiscarded, ZeroBetaKeepsHalfInExpectation) {
  Rng rng(9);
  const Locations known = sample_uniform(Region::unit_square(), 20, rng);
  const Eigen::VectorXd s = gp_draw(known, kGp, rng);
  const ThinningParams tp{60.0, 0.0, kGp};
  std::vector<double> sizes;
  for (int r = 0; r < 1000; ++r) sizes.push_back(static_cast<double>(update_discarded(known, s, tp, Region::unit_square(), rng).size()));
  EXPECT_NEAR(oracle::mean(sizes), 30.0, 3.0 * std::sqrt(30.0 / 1000.0));
}

TEST(UpdateDiscarded, InsideRegionAndDistinctFromData) {
  Rng rng(10);
  const Region r({0.5, -1.0}, {1.5, 0.0});
  const Locations known = sample_uniform(r, 40, rng);
  const Eigen::VectorXd s = gp_draw(known, kGp, rng);
  for (int rep = 0; rep < 50; ++rep) {
    const PointPattern d = update_discarded(known, s, ThinningParams{150.0, 2.0, kGp}, r, rng);
    ASSERT_TRUE(d.marks);
    EXPECT_EQ(d.marks->size(), d.size());
    for (Eigen::Index i = 0; i < d.size(); ++i) {
      EXPECT_GT(d.locations(i, 0), 0.5);
      EXPECT_LT(d.locations(i, 0), 1.5);
      EXPECT_GT(d.locations(i, 1), -1.0);
      EXPECT_LT(d.locations(i, 1), 0.0);
      for (Eigen::Index j = 0; j < known.rows(); ++j)
        EXPECT_GT((d.locations.row(i) - known.row(j)).norm(), 1e-12);
    }
  }
}

TEST(UpdateDiscarded, BinnedIntensityMatchesOracle) {
  Rng rng(11);
  const Locations known = sample_uniform(Region::unit_square(), 30, rng);
  const Eigen::VectorXd s = gp_draw(known, kGp, rng);
  const double lambda = 150.0, beta = 2.0, sigma = std::sqrt(3.0);
  const double g = beta / sigma;

  // Oracle: E[#points in bin] = lambda * integral over the bin of
  // E[Phi(-g S(x)) | S_known] = Phi(-g m(x) / sqrt(1 + g^2 v(x))), integrated by Monte Carlo.
  std::vector<double> expected(16, 0.0);
  std::vector<double> expected_se(16, 0.0);
  const int per_bin = 2000;
  for (int b = 0; b < 16; ++b) {
    const Region cell({0.25 * (b % 4), 0.25 * (b / 4)}, {0.25 * (b % 4 + 1), 0.25 * (b / 4 + 1)});
    const Locations pts = sample_uniform(cell, per_bin, rng);
    const ConditionalMarginals cm = conditional_marginals(pts, known, s, kGp);
    std::vector<double> vals;
    for (int i = 0; i < per_bin; ++i) vals.push_back(norm_cdf(-g * cm.mean(i) / std::sqrt(1.0 + g * g * cm.variance(i))));
    expected[static_cast<std::size_t>(b)] = lambda * 0.0625 * oracle::mean(vals);
    expected_se[static_cast<std::size_t>(b)] = lambda * 0.0625 * std::sqrt(oracle::variance(vals) / per_bin);
  }

  const int reps = 1000;
  std::vector<std::vector<double>> counts(16, std::vector<double>(reps, 0.0));
  for (int r = 0; r < reps; ++r) {
    const PointPattern d = update_discarded(known, s, ThinningParams{lambda, beta, kGp}, Region::unit_square(), rng);
    for (Eigen::Index i = 0; i < d.size(); ++i) {
      const int a = std::min(3, static_cast<int>(d.locations(i, 0) * 4));
      const int c = std::min(3, static_cast<int>(d.locations(i, 1) * 4));
      counts[static_cast<std::size_t>(4 * c + a)][static_cast<std::size_t>(r)] += 1.0;
    }
  }
  for (std::size_t b = 0; b < 16; ++b) {
    const double se = std::sqrt(oracle::variance(counts[b]) / reps);
    EXPECT_NEAR(oracle::mean(counts[b]), expected[b], 3.0 * std::hypot(se, expected_se[b])) << "bin " << b;
  }
}

TEST(UpdateDiscarded, SuperpositionIsHomogeneousPoisson) {
  Rng rng(12);
  const double lambda = 150.0, beta = 2.0;
  std::vector<long> totals;
  for (int r = 0; r < 1000; ++r) {
    PointPattern w = hpp_draw(lambda, Region::unit_square(), rng);
    w.marks = gp_draw(w.locations, kGp, rng);
    const PointPattern x = thin(w, beta, std::sqrt(kGp.sigma2), +1, rng);
    const PointPattern xt = update_discarded(w.locations, *w.marks, ThinningParams{lambda, beta, kGp},
                                             Region::unit_square(), rng);
    totals.push_back(static_cast<long>(x.size() + xt.size()));
  }
  EXPECT_GT(oracle::poisson_gof_pvalue(totals, lambda), 0.01);
}
