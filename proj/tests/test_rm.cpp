#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "oracle.hpp"
#include "qrm/rm.hpp"

using qrm::BitMatrix;
using qrm::BitVector;
using qrm::WideInt;

TEST_CASE("binomial sums") {
  REQUIRE(qrm::binom_sum_le(4, 0) == 1);
  REQUIRE(qrm::binom_sum_le(4, -3) == 0);
  REQUIRE(qrm::binom_sum_le(4, 9) == 16);
  REQUIRE(qrm::binom_sum_le(58, 14) == WideInt("14483100716176"));
  REQUIRE(qrm::binom_sum_gt(20, 14) == 21700);
  REQUIRE(qrm::binom_sum_gt(3, -1) == 8);
  REQUIRE(qrm::binom(5, 2) == 10);
  REQUIRE(qrm::binom(5, 6) == 0);
  // exact far past 64 bits
  REQUIRE(qrm::binom_sum_le(130, 130) == WideInt(1) << 130);
  REQUIRE(qrm::binom_sum_le(130, 65) + qrm::binom_sum_gt(130, 65) == WideInt(1) << 130);
}

TEST_CASE("canonical coordinate order") {
  const qrm::CoordinateOrder order = qrm::CoordinateOrder::canonical(4);
  REQUIRE(order.points.size() == 16);
  REQUIRE(order.points[0] == 0);
  REQUIRE(std::vector<std::uint32_t>(order.points.begin(), order.points.begin() + 5) ==
          std::vector<std::uint32_t>{0, 1, 2, 4, 8});
  for (std::size_t j = 1; j < order.points.size(); ++j) {
    const int wa = std::popcount(order.points[j - 1]);
    const int wb = std::popcount(order.points[j]);
    REQUIRE((wa < wb || (wa == wb && order.points[j - 1] < order.points[j])));
  }
  for (int w = -1; w < 4; ++w) {
    REQUIRE(WideInt(order.prefix_size(w)) == qrm::binom_sum_le(4, w));
  }
}

TEST_CASE("monomial row order is degree then lexicographic") {
  REQUIRE(qrm::detail::monomial_masks(2, 3) ==
          std::vector<std::uint32_t>{0, 1, 2, 4, 3, 5, 6});
  // {x1,x4} precedes {x2,x3} lexicographically even though its mask is larger
  const auto masks = qrm::detail::monomial_masks(2, 4);
  const auto pos = [&](std::uint32_t m) {
    return std::find(masks.begin(), masks.end(), m) - masks.begin();
  };
  REQUIRE(pos(0b1001) < pos(0b0110));
}

TEST_CASE("rm_generator examples") {
  SECTION("constant code") {
    const qrm::LinearCode c = qrm::rm_generator(0, 2);
    REQUIRE(c.generator.rows() == 1);
    REQUIRE(c.generator.cols() == 4);
    REQUIRE(c.generator.row(0).weight() == 4);
  }
  SECTION("RM(1,3) is a 4x8 matrix of rank 4") {
    const qrm::LinearCode c = qrm::rm_generator(1, 3);
    REQUIRE(c.generator.rows() == 4);
    REQUIRE(c.generator.cols() == 8);
    REQUIRE(qrm::rank(c.generator) == 4);
    REQUIRE(oracle::rank(oracle::to_mat(c.generator)) == 4);
    REQUIRE(c.generator.row(0).weight() == 8);
    for (std::size_t i = 1; i < 4; ++i) REQUIRE(c.generator.row(i).weight() == 4);
  }
  SECTION("full space") {
    REQUIRE(qrm::rank(qrm::rm_generator(3, 3).generator) == 8);
    REQUIRE(qrm::rank(qrm::rm_generator(4, 4).generator) == 16);
  }
  SECTION("degenerate degrees") {
    REQUIRE(qrm::rm_generator(-1, 3).generator.rows() == 0);
    REQUIRE_THROWS_AS(qrm::rm_generator(4, 3), std::invalid_argument);
    REQUIRE_THROWS_AS(qrm::rm_generator(-2, 3), std::invalid_argument);
  }
  SECTION("single point domain") {
    const qrm::LinearCode c = qrm::rm_generator(0, 0);
    REQUIRE(c.generator.rows() == 1);
    REQUIRE(c.generator.cols() == 1);
    REQUIRE(c.generator.get(0, 0));
  }
}

TEST_CASE("rm_generator rows enumerate monomial evaluations") {
  // spot-check every entry of RM(2,4) against the direct definition
  const qrm::LinearCode c = qrm::rm_generator(2, 4);
  const auto masks = qrm::detail::monomial_masks(2, 4);
  REQUIRE(c.generator.rows() == masks.size());
  for (std::size_t i = 0; i < masks.size(); ++i) {
    for (std::size_t j = 0; j < c.coordinates.size(); ++j) {
      const bool expect = (c.coordinates[j] & masks[i]) == masks[i];
      REQUIRE(c.generator.get(i, j) == expect);
    }
  }
}

TEST_CASE("prm_generator examples") {
  const qrm::LinearCode p = qrm::prm_generator(1, 4, 0);
  REQUIRE(p.generator.rows() == 5);
  REQUIRE(p.generator.cols() == 15);
  REQUIRE(qrm::rank(p.generator) == 5);
  REQUIRE(p.coordinates.size() == 15);
  REQUIRE(p.coordinates[0] == 1);  // the |v| <= 0 prefix is gone

  const qrm::LinearCode q = qrm::prm_generator(2, 4, 0);
  REQUIRE(q.generator.rows() == 11);
  REQUIRE(q.generator.cols() == 15);
  REQUIRE(qrm::rank(q.generator) == 11);

  REQUIRE(qrm::prm_generator(2, 4, -1).generator == qrm::rm_generator(2, 4).generator);
  REQUIRE_THROWS_WITH(qrm::prm_generator(2, 4, 2), "m - r > w violated");
}

TEST_CASE("srm_generator examples") {
  SECTION("X stabilizer space of the 15-qubit code") {
    const qrm::LinearCode s = qrm::srm_generator(1, 4, 0);
    REQUIRE(s.generator.rows() == 4);
    REQUIRE(s.generator.cols() == 15);
    REQUIRE(qrm::rank(s.generator) == 4);
    // contained in PRM(1,4,0) and orthogonal to PRM(2,4,0)
    REQUIRE(qrm::row_space_contains(qrm::prm_generator(1, 4, 0).generator, s.generator));
    REQUIRE(qrm::mutually_orthogonal(s.generator, qrm::prm_generator(2, 4, 0).generator));
  }
  SECTION("Z stabilizer space of the 15-qubit code") {
    const qrm::LinearCode s = qrm::srm_generator(2, 4, 0);
    REQUIRE(s.generator.rows() == 10);
    REQUIRE(s.generator.cols() == 15);
  }
  SECTION("no puncturing leaves the full row space") {
    const qrm::LinearCode s = qrm::srm_generator(2, 4, -1);
    REQUIRE(s.generator.rows() == 11);
    REQUIRE(qrm::rank(qrm::stack(s.generator, qrm::rm_generator(2, 4).generator)) == 11);
  }
  SECTION("rows vanish on every dropped coordinate") {
    // rebuild each SRM row as a full polynomial table and check the prefix
    const qrm::LinearCode s = qrm::srm_generator(1, 4, 0);
    const oracle::Mat rm = oracle::rm_matrix(1, 4);
    for (std::size_t i = 0; i < s.generator.rows(); ++i) {
      oracle::Row full(16, 0);
      for (std::size_t j = 0; j < 15; ++j) full[j + 1] = s.generator.get(i, j) ? 1 : 0;
      REQUIRE(oracle::in_row_space(rm, full));  // zero-extended row is an RM codeword
    }
  }
}

TEST_CASE("min_punctured_weight_brute examples") {
  REQUIRE(qrm::min_punctured_weight_brute(0, 3, 1) == qrm::binom_sum_gt(3, 1));
  REQUIRE(qrm::min_punctured_weight_brute(1, 3, 0) == 3);
  REQUIRE(qrm::min_punctured_weight_brute(2, 4, 1) == 1);
  REQUIRE(qrm::min_punctured_weight_brute(1, 4, -1) == 8);  // min distance of RM(1,4)
  REQUIRE_THROWS_AS(qrm::min_punctured_weight_brute(2, 5, 1, /*budget=*/1024),
                    qrm::BudgetExceeded);
  REQUIRE_THROWS_AS(qrm::min_punctured_weight_brute(-1, 3, 0), std::invalid_argument);
}

TEST_CASE("punctured minimum weight matches the closed form on small sizes") {
  for (int m = 0; m <= 4; ++m) {
    for (int r = 0; r <= m; ++r) {
      for (int w = -1; w < m; ++w) {
        const WideInt got = qrm::min_punctured_weight_brute(r, m, w);
        REQUIRE(got == qrm::binom_sum_gt(m - r, w));
      }
    }
  }
}

TEST_CASE("minimum distance of RM(r,m) is 2^(m-r) on small sizes") {
  for (int m = 1; m <= 4; ++m) {
    for (int r = 0; r <= m; ++r) {
      REQUIRE(qrm::min_punctured_weight_brute(r, m, -1) == WideInt(1) << (m - r));
    }
  }
}

TEST_CASE("weight divisibility") {
  REQUIRE(qrm::weight_divisibility_check(1, 4, 3));
  REQUIRE(qrm::weight_divisibility_check(2, 5, 2));
  REQUIRE_THROWS_WITH(qrm::weight_divisibility_check(1, 2, 2), "m > nu*r violated");
  // forced one level past the theorem: RM(1,4) has weight-8 words
  REQUIRE_FALSE(qrm::weight_divisibility_check(1, 4, 4, qrm::kDefaultBudget, true));
  REQUIRE_THROWS_AS(qrm::weight_divisibility_check(1, 20, 19, /*budget=*/1024),
                    qrm::BudgetExceeded);
}

TEST_CASE("duality") {
  REQUIRE(qrm::duality_check(1, 4, 0));
  REQUIRE(qrm::duality_check(2, 5, 1));
  REQUIRE(qrm::duality_check(3, 4, 0));
  // w < 0 reduces to RM(r,m)^perp = RM(m-r-1,m); RM(1,3) is self-dual
  REQUIRE(qrm::duality_check(1, 3, -1));
  REQUIRE_THROWS_WITH(qrm::duality_check(1, 4, 1), "w < r violated");
  REQUIRE_THROWS_WITH(qrm::duality_check(3, 4, 1), "m - r > w violated");
}

TEST_CASE("codewords split as g + x_m h") {
  // recursive structure: f in RM(r,m) restricted to the x_m = 0 half is in
  // RM(r,m-1), and the XOR of the two halves is in RM(r-1,m-1)
  std::mt19937 rng(31);
  for (int m = 2; m <= 5; ++m) {
    for (int r = 1; r <= m; ++r) {
      const qrm::LinearCode code = qrm::rm_generator(r, m);
      const oracle::Mat low = oracle::rm_matrix(r, m - 1);
      const oracle::Mat lower_deg = oracle::rm_matrix(r - 1, m - 1);

      for (int trial = 0; trial < 5; ++trial) {
        // random codeword, as a table indexed by the integer point v
        oracle::Row table(std::size_t{1} << m, 0);
        for (std::size_t i = 0; i < code.generator.rows(); ++i) {
          if (rng() & 1) {
            for (std::size_t j = 0; j < code.coordinates.size(); ++j) {
              table[code.coordinates[j]] ^= code.generator.get(i, j) ? 1 : 0;
            }
          }
        }
        const std::uint32_t half = std::uint32_t{1} << (m - 1);
        const auto pts = oracle::sorted_points(m - 1);
        oracle::Row g(half, 0), h(half, 0);
        for (std::uint32_t v = 0; v < half; ++v) {
          // columns of the (m-1)-variable codes follow the sorted points
          const std::size_t col =
              std::find(pts.begin(), pts.end(), v) - pts.begin();
          g[col] = table[v];
          h[col] = table[v] ^ table[v | half];
        }
        REQUIRE(oracle::in_row_space(low, g));
        REQUIRE(oracle::in_row_space(lower_deg, h));
      }
    }
  }
}
