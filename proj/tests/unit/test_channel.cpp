#include <gtest/gtest.h>

#include <algorithm>
#include <numbers>
#include <set>

#include "mmsec/channel.hpp"
#include "mmsec/error.hpp"
#include "test_support.hpp"

using namespace mmsec;
using mmsec::testing::steering;

TEST(ArrayResponse, BroadsideIsFlat) {
  const CVector a = array_response(UlaGeometry(4), 0.0);
  ASSERT_EQ(a.size(), 4);
  for (Index k = 0; k < 4; ++k) {
    EXPECT_NEAR(std::abs(a(k) - Complex(0.5, 0.0)), 0.0, 1e-15);
  }
}

TEST(ArrayResponse, SingleElementIsOne) {
  for (double angle : {0.0, 0.3, 2.0, 5.9}) {
    const CVector a = array_response(UlaGeometry(1), angle);
    ASSERT_EQ(a.size(), 1);
    EXPECT_NEAR(std::abs(a(0) - Complex(1.0, 0.0)), 0.0, 1e-15);
  }
}

TEST(ArrayResponse, EndfireAlternatesSign) {
  const CVector a = array_response(UlaGeometry(4, 0.5), std::numbers::pi / 2);
  const double expect[] = {0.5, -0.5, 0.5, -0.5};
  for (Index k = 0; k < 4; ++k) {
    EXPECT_NEAR(std::abs(a(k) - Complex(expect[k], 0.0)), 0.0, 1e-12);
  }
}

TEST(ArrayResponse, UnitNormConstantModulus) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> ang(0.0, 2 * std::numbers::pi);
  std::uniform_int_distribution<int> n(1, 64);
  for (int trial = 0; trial < 200; ++trial) {
    const int na = n(rng);
    const double spacing = 0.25 + 0.5 * (trial % 3);
    const double theta = ang(rng);
    const CVector a = array_response(UlaGeometry(na, spacing), theta);
    EXPECT_NEAR(a.norm(), 1.0, 1e-12);
    for (Index k = 0; k < a.size(); ++k) {
      EXPECT_NEAR(std::abs(a(k)), 1.0 / std::sqrt(double(na)), 1e-12);
    }
    EXPECT_LT((a - steering(na, spacing, theta)).norm(), 1e-12);
  }
}

TEST(UlaGeometry, RejectsInvalid) {
  EXPECT_THROW(UlaGeometry(0), Error);
  EXPECT_THROW(UlaGeometry(4, 0.0), Error);
  EXPECT_THROW(UlaGeometry(4, -0.5), Error);
}

TEST(ScattererPool, DefaultPoolRespectsRange) {
  RandomStream rng = make_stream(11, 0);
  for (int trial = 0; trial < 200; ++trial) {
    const ScattererPool pool = draw_scatterer_pool(rng, 20, {3, 8});
    ASSERT_EQ(pool.scatterers.size(), 20u);
    for (const auto* paths : {&pool.bob_paths, &pool.eve_paths}) {
      EXPECT_GE(paths->size(), 3u);
      EXPECT_LE(paths->size(), 8u);
      EXPECT_TRUE(std::is_sorted(paths->begin(), paths->end()));
      EXPECT_EQ(std::set<std::size_t>(paths->begin(), paths->end()).size(), paths->size());
      for (auto idx : *paths) EXPECT_LT(idx, 20u);
    }
    for (const auto& s : pool.scatterers) {
      for (double a : {s.aod_at_alice, s.aoa_at_bob, s.aoa_at_eve}) {
        EXPECT_GE(a, 0.0);
        EXPECT_LT(a, 2 * std::numbers::pi);
      }
    }
  }
}

TEST(ScattererPool, SharingHappensAndSizesCoverRange) {
  RandomStream rng = make_stream(3, 1);
  int shared = 0;
  std::set<std::size_t> sizes;
  for (int trial = 0; trial < 500; ++trial) {
    const ScattererPool pool = draw_scatterer_pool(rng, 20, {3, 8});
    sizes.insert(pool.bob_paths.size());
    std::vector<std::size_t> common;
    std::set_intersection(pool.bob_paths.begin(), pool.bob_paths.end(), pool.eve_paths.begin(),
                          pool.eve_paths.end(), std::back_inserter(common));
    shared += common.empty() ? 0 : 1;
  }
  EXPECT_GT(shared, 0);
  EXPECT_LT(shared, 500);
  EXPECT_EQ(sizes.size(), 6u);
}

TEST(ScattererPool, SingleScattererForcesSharing) {
  RandomStream rng = make_stream(5, 0);
  const ScattererPool pool = draw_scatterer_pool(rng, 1, {1, 1});
  ASSERT_EQ(pool.bob_paths, std::vector<std::size_t>{0});
  ASSERT_EQ(pool.eve_paths, std::vector<std::size_t>{0});
  const UlaGeometry tx(8), rx(4);
  const auto hb = realize_channel(pool, Receiver::Bob, tx, rx, 1.0, rng);
  const auto he = realize_channel(pool, Receiver::Eve, tx, rx, 1.0, rng);
  EXPECT_EQ(hb.aods[0], he.aods[0]);
}

TEST(ScattererPool, DeterministicUnderSeed) {
  RandomStream a = make_stream(42, 9);
  RandomStream b = make_stream(42, 9);
  const auto pa = draw_scatterer_pool(a, 20, {3, 8});
  const auto pb = draw_scatterer_pool(b, 20, {3, 8});
  ASSERT_EQ(pa.bob_paths, pb.bob_paths);
  ASSERT_EQ(pa.eve_paths, pb.eve_paths);
  for (std::size_t i = 0; i < pa.scatterers.size(); ++i) {
    EXPECT_EQ(pa.scatterers[i].aod_at_alice, pb.scatterers[i].aod_at_alice);
    EXPECT_EQ(pa.scatterers[i].aoa_at_eve, pb.scatterers[i].aoa_at_eve);
  }
}

TEST(ScattererPool, RejectsBadRange) {
  RandomStream rng = make_stream(1, 0);
  try {
    draw_scatterer_pool(rng, 5, {3, 8});
    FAIL() << "expected invalid-range";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidRange);
  }
  EXPECT_THROW(draw_scatterer_pool(rng, 20, {5, 4}), Error);
  EXPECT_THROW(draw_scatterer_pool(rng, 20, {0, 4}), Error);
}

TEST(RealizeChannel, ScalarCollapses) {
  const auto h = assemble_channel(UlaGeometry(1), UlaGeometry(1), {0.7}, {1.3},
                                  CVector::Constant(1, Complex(1.0, 0.0)), 1.0);
  ASSERT_EQ(h.matrix.rows(), 1);
  EXPECT_NEAR(std::abs(h.matrix(0, 0) - Complex(1.0, 0.0)), 0.0, 1e-15);
}

TEST(RealizeChannel, ZeroGainPathContributesNothing) {
  const UlaGeometry tx(6), rx(5);
  CVector g2(2);
  g2 << Complex(0.3, -1.1), Complex(0.0, 0.0);
  const auto two = assemble_channel(tx, rx, {0.4, 2.2}, {1.0, 5.0}, g2, 1.0);
  const auto one = assemble_channel(tx, rx, {0.4}, {1.0}, g2.head(1), 1.0);
  EXPECT_LT((two.matrix - one.matrix).norm(), 1e-13);
}

TEST(RealizeChannel, BroadsideFourByFourIsAllOnes) {
  // sqrt(16/1) * (1/2)(1/2) * ones = ones, assembled by hand.
  CMatrix expect(4, 4);
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) expect(r, c) = 4.0 * steering(4, 0.5, 0.0)(r) *
                                               std::conj(steering(4, 0.5, 0.0)(c));
  EXPECT_LT((expect - CMatrix::Ones(4, 4)).norm(), 1e-14);

  const auto h = assemble_channel(UlaGeometry(4), UlaGeometry(4), {0.0}, {0.0},
                                  CVector::Constant(1, Complex(1.0, 0.0)), 1.0);
  EXPECT_LT((h.matrix - CMatrix::Ones(4, 4)).norm(), 1e-14);
}

TEST(RealizeChannel, ReconstructionRankAndSharedAods) {
  RandomStream rng = make_stream(2024, 0);
  const UlaGeometry alice(16), bob(12), eve(20);
  for (int trial = 0; trial < 100; ++trial) {
    const auto pool = draw_scatterer_pool(rng, 20, {3, 8});
    const double rho = 0.5 + trial % 4;
    const auto hb = realize_channel(pool, Receiver::Bob, alice, bob, rho, rng);
    const auto he = realize_channel(pool, Receiver::Eve, alice, eve, rho, rng);
    for (const auto* h : {&hb, &he}) {
      const int nr = h->rx_geometry.num_antennas();
      ASSERT_EQ(h->matrix.rows(), nr);
      ASSERT_EQ(h->matrix.cols(), 16);
      // brute force: element (r, c) summed path by path
      CMatrix ref = CMatrix::Zero(nr, 16);
      for (Index l = 0; l < h->num_paths(); ++l) {
        const CVector ar = steering(nr, 0.5, h->aoas[l]);
        const CVector at = steering(16, 0.5, h->aods[l]);
        for (int r = 0; r < nr; ++r)
          for (int c = 0; c < 16; ++c)
            ref(r, c) += std::sqrt(16.0 * nr / rho) * h->path_gains(l) * ar(r) * std::conj(at(c));
      }
      EXPECT_LE((h->matrix - ref).norm() / h->matrix.norm(), 1e-12);

      Eigen::JacobiSVD<CMatrix> svd(h->matrix);
      const auto& s = svd.singularValues();
      Index rank = 0;
      for (Index i = 0; i < s.size(); ++i) rank += s(i) > 1e-9 * s(0) ? 1 : 0;
      EXPECT_LE(rank, h->num_paths());
    }
    // shared scatterers reuse the same departure angle
    for (std::size_t i = 0; i < pool.bob_paths.size(); ++i) {
      for (std::size_t j = 0; j < pool.eve_paths.size(); ++j) {
        if (pool.bob_paths[i] == pool.eve_paths[j]) {
          EXPECT_EQ(hb.aods[i], he.aods[j]);
        }
      }
    }
  }
}

TEST(RealizeChannel, GainsLookCircularGaussian) {
  RandomStream rng = make_stream(77, 0);
  const auto pool = draw_scatterer_pool(rng, 8, {8, 8});
  double power = 0.0, mean_re = 0.0;
  int count = 0;
  for (int t = 0; t < 2000; ++t) {
    const auto h = realize_channel(pool, Receiver::Bob, UlaGeometry(2), UlaGeometry(2), 1.0, rng);
    for (Index l = 0; l < h.num_paths(); ++l) {
      power += std::norm(h.path_gains(l));
      mean_re += h.path_gains(l).real();
      ++count;
    }
  }
  EXPECT_NEAR(power / count, 1.0, 0.05);
  EXPECT_NEAR(mean_re / count, 0.0, 0.03);
}

TEST(RealizeChannel, EmptyPathSetThrows) {
  ScattererPool pool;
  pool.scatterers.push_back({0.1, 0.2, 0.3});
  pool.bob_paths = {0};
  RandomStream rng = make_stream(1, 1);
  try {
    realize_channel(pool, Receiver::Eve, UlaGeometry(4), UlaGeometry(4), 1.0, rng);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::EmptyPathSet);
  }
}
