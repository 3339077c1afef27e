#include <catch2/catch_amalgamated.hpp>

#include "oracle.hpp"
#include "qrm/css.hpp"

using qrm::CssCode;
using qrm::WideInt;

TEST_CASE("params_formula examples") {
  SECTION("the 15-qubit T code") {
    const qrm::CodeParams p = qrm::params_formula(4, 1, 0);
    REQUIRE(p.n == 15);
    REQUIRE(p.k == 1);
    REQUIRE(p.d == 3);
    REQUIRE(p.nu == 3);
    REQUIRE_THAT(p.gamma, Catch::Matchers::WithinRel(2.464973520717927, 1e-9));
  }
  SECTION("the 2^58-qubit member") {
    const qrm::CodeParams p = qrm::params_formula(58, 19, 14);
    REQUIRE(p.n == WideInt("288215893050995568"));
    REQUIRE(p.k == WideInt("14483100716176"));
    REQUIRE(p.d == 21700);
    REQUIRE(p.nu == 3);
    REQUIRE(p.gamma < 1.0);
    REQUIRE_THAT(p.gamma, Catch::Matchers::WithinRel(0.9913285579551243, 1e-9));
  }
  SECTION("a 26-qubit S-gate code") {
    const qrm::CodeParams p = qrm::params_formula(5, 2, 1);
    REQUIRE(p.n == 26);
    REQUIRE(p.k == 6);
    REQUIRE(p.d == 4);
    REQUIRE(p.nu == 2);
  }
  SECTION("each violated inequality is named") {
    REQUIRE_THROWS_WITH(qrm::params_formula(4, 2, 1), "2r < m violated");
    REQUIRE_THROWS_WITH(qrm::params_formula(5, 1, 1), "w < r violated");
    REQUIRE_THROWS_WITH(qrm::params_formula(5, 2, -1), "0 <= w violated");
  }
}

TEST_CASE("build_code produces the 15-qubit code") {
  const CssCode code = qrm::build_code(4, 1, 0);
  REQUIRE(code.n == 15);
  REQUIRE(code.k == 1);
  REQUIRE(code.x_stabilizers.rows() == 4);
  REQUIRE(code.z_stabilizers.rows() == 10);
  REQUIRE(code.logical_x.rows() == 1);
  REQUIRE(code.logical_z.rows() == 1);
  REQUIRE(code.logical_x.row(0).weight() == 7);
  REQUIRE(qrm::commutation_check(code));

  // k consistency: n - rank(Sx) - rank(Sz) = k
  REQUIRE(code.n - WideInt(qrm::rank(code.x_stabilizers)) -
              WideInt(qrm::rank(code.z_stabilizers)) ==
          code.k);

  // X stabilizers are degree-<=1 polynomials vanishing at the dropped point
  const oracle::Mat rm = oracle::rm_matrix(1, 4);
  for (std::size_t i = 0; i < code.x_stabilizers.rows(); ++i) {
    oracle::Row full(16, 0);
    for (std::size_t j = 0; j < 15; ++j) full[j + 1] = code.x_stabilizers.get(i, j) ? 1 : 0;
    REQUIRE(oracle::in_row_space(rm, full));
  }
}

TEST_CASE("build_code produces the 26-qubit code with paired logicals") {
  const CssCode code = qrm::build_code(5, 2, 1);
  REQUIRE(code.n == 26);
  REQUIRE(code.k == 6);
  REQUIRE(code.x_stabilizers.rows() == 10);
  REQUIRE(code.z_stabilizers.rows() == 10);
  REQUIRE(code.logical_x.rows() == 6);
  for (std::size_t i = 0; i < 6; ++i) {
    for (std::size_t j = 0; j < 6; ++j) {
      REQUIRE(qrm::inner_product(code.logical_x.row(i), code.logical_z.row(j)) ==
              (i == j ? 1 : 0));
    }
  }
}

TEST_CASE("build_code rejects parameters outside the family") {
  REQUIRE_THROWS_WITH(qrm::build_code(4, 2, 1), "2r < m violated");
}

TEST_CASE("distance_brute") {
  SECTION("15-qubit code") {
    const CssCode code = qrm::build_code(4, 1, 0);
    const qrm::DistanceResult d = qrm::distance_brute(code);
    REQUIRE(d.d_z == 3);
    REQUIRE(d.d_x == 7);
  }
  SECTION("26-qubit code") {
    const CssCode code = qrm::build_code(5, 2, 1);
    const qrm::DistanceResult d = qrm::distance_brute(code);
    REQUIRE(d.d_z == 4);
    REQUIRE(d.d_x == 4);
  }
  SECTION("budget refusal") {
    const CssCode code = qrm::build_code(5, 2, 1);
    REQUIRE_THROWS_AS(qrm::distance_brute(code, /*budget=*/1024), qrm::BudgetExceeded);
  }
}

TEST_CASE("stabilizer weights exceed the code distance") {
  const CssCode small = qrm::build_code(4, 1, 0);
  REQUIRE(qrm::min_stabilizer_weight(small) == 4);  // 2^(r+1), strictly above d = 3

  const CssCode second = qrm::build_code(5, 2, 1);
  REQUIRE(qrm::min_stabilizer_weight(second) == 8);
}

TEST_CASE("transversal phase check on the 15-qubit code") {
  const CssCode code = qrm::build_code(4, 1, 0);

  const qrm::TransversalResult res = qrm::transversal_phase_check(code, 3);
  REQUIRE(res.passed);
  REQUIRE(res.exhaustive);
  REQUIRE(res.checked == 32);

  // independent recount of the two cosets: stabilizer weights are 0 mod 8,
  // logical-coset weights are 7 mod 8
  const oracle::Mat sx = oracle::to_mat(code.x_stabilizers);
  const oracle::Row logical = oracle::to_row(code.logical_x.row(0));
  for (std::uint32_t msg = 0; msg < 16; ++msg) {
    oracle::Row v(15, 0), vl = logical;
    for (int i = 0; i < 4; ++i) {
      if ((msg >> i) & 1) {
        for (int j = 0; j < 15; ++j) {
          v[j] ^= sx[i][j];
          vl[j] ^= sx[i][j];
        }
      }
    }
    int wv = 0, wl = 0;
    for (int j = 0; j < 15; ++j) {
      wv += v[j];
      wl += vl[j];
    }
    REQUIRE(wv % 8 == 0);
    REQUIRE(wl % 8 == 7);
  }

  SECTION("one level higher fails") {
    REQUIRE_THROWS_WITH(qrm::transversal_phase_check(code, 4), "m > nu*r violated");
    qrm::TransversalOptions forced;
    forced.force = true;
    REQUIRE_FALSE(qrm::transversal_phase_check(code, 4, forced).passed);
  }
}

TEST_CASE("transversal phase check on the 26-qubit code") {
  const CssCode code = qrm::build_code(5, 2, 1);
  const qrm::TransversalResult res = qrm::transversal_phase_check(code, 2);
  REQUIRE(res.passed);
  REQUIRE(res.exhaustive);
  REQUIRE(res.checked == 65536);

  qrm::TransversalOptions forced;
  forced.force = true;
  REQUIRE_FALSE(qrm::transversal_phase_check(code, 3, forced).passed);
}

TEST_CASE("transversal check falls back to sampling past the budget") {
  // (7,2,1) has 8 logicals + 21 X stabilizers: 2^29 cosets
  const CssCode code = qrm::build_code(7, 2, 1);
  REQUIRE(code.n == 120);
  REQUIRE(code.k == 8);

  qrm::TransversalOptions opts;
  opts.trials = 20'000;
  opts.seed = 99;
  const qrm::TransversalResult res = qrm::transversal_phase_check(code, 3, opts);
  REQUIRE_FALSE(res.exhaustive);
  REQUIRE(res.checked == 20'000);
  REQUIRE(res.passed);

  const qrm::TransversalResult again = qrm::transversal_phase_check(code, 3, opts);
  REQUIRE(again.passed == res.passed);
  REQUIRE(again.checked == res.checked);
}

TEST_CASE("overlap divisibility") {
  const CssCode code = qrm::build_code(4, 1, 0);
  REQUIRE(qrm::overlap_divisibility_check(code, 3, 2));
  REQUIRE(qrm::overlap_divisibility_check(code, 3, 3));
  REQUIRE_THROWS_AS(qrm::overlap_divisibility_check(code, 3, 1), std::invalid_argument);
  REQUIRE_THROWS_AS(qrm::overlap_divisibility_check(code, 3, 4), std::invalid_argument);
  REQUIRE_THROWS_AS(qrm::overlap_divisibility_check(code, 3, 3, /*budget=*/1),
                    qrm::BudgetExceeded);

  const CssCode second = qrm::build_code(5, 2, 1);
  REQUIRE(qrm::overlap_divisibility_check(second, 2, 2));
}

TEST_CASE("commutation check detects corruption") {
  CssCode code = qrm::build_code(5, 2, 1);
  REQUIRE(qrm::commutation_check(code));
  qrm::BitMatrix corrupted = code.logical_x;
  corrupted.set(0, 0, !corrupted.get(0, 0));
  code.logical_x = corrupted;
  REQUIRE_FALSE(qrm::commutation_check(code));
}

TEST_CASE("family sweep over small members") {
  // every family member on at most 2^8 points: construction self-verifies,
  // dimensions agree, and where enumeration is affordable the distances and
  // the transversal property hold at the family level nu = floor((m-1)/r)
  for (int m = 3; m <= 8; ++m) {
    for (int r = 1; 2 * r < m; ++r) {
      for (int w = 0; w < r; ++w) {
        CAPTURE(m, r, w);
        const CssCode code = qrm::build_code(m, r, w);
        const qrm::CodeParams p = qrm::params_formula(m, r, w);
        REQUIRE(code.n == p.n);
        REQUIRE(code.k == p.k);
        REQUIRE(code.n - WideInt(code.x_stabilizers.rows()) -
                    WideInt(code.z_stabilizers.rows()) ==
                code.k);

        const std::size_t z_dim = code.logical_z.rows() + code.z_stabilizers.rows();
        const std::size_t x_dim = code.logical_x.rows() + code.x_stabilizers.rows();
        if (z_dim <= 20 && x_dim <= 20) {
          const qrm::DistanceResult dist = qrm::distance_brute(code);
          REQUIRE(WideInt(dist.d_z) == p.d);
          REQUIRE(WideInt(dist.d_x) == qrm::binom_sum_gt(m - r, w));
          REQUIRE(WideInt(std::min(dist.d_z, dist.d_x)) == p.d);
        }
        if (x_dim <= 20) {
          REQUIRE(qrm::transversal_phase_check(code, p.nu).passed);
        }
        if (code.x_stabilizers.rows() <= 20 && code.z_stabilizers.rows() <= 20) {
          REQUIRE(WideInt(qrm::min_stabilizer_weight(code)) >= WideInt(1) << (r + 1));
        }
      }
    }
  }
}
