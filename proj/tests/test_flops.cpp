#include <doctest.h>

#include <stdexcept>

#include "chanrecon/flops.hpp"

using namespace chanrecon;

TEST_CASE("atom_flops: table values") {
  CHECK(atom_flops({FlopKind::matmul_ab, 2, 3, 4}) == doctest::Approx(40.0));
  // M^2 N + M(N - M/2) - M/2 at (2,2): 8 + 2 - 1
  CHECK(atom_flops({FlopKind::gram_aah, 2, 2, 0}) == doctest::Approx(9.0));
  CHECK(atom_flops({FlopKind::qr_q, 4, 2, 0}) == doctest::Approx(224.0 / 3.0));
  CHECK(atom_flops({FlopKind::scale, 3, 5, 0}) == doctest::Approx(15.0));
  CHECK(atom_flops({FlopKind::sum, 3, 5, 0}) == doctest::Approx(15.0));
  CHECK(atom_flops({FlopKind::svd_sigma_u, 1, 1, 0}) == doctest::Approx(17.0));
  CHECK(atom_flops({FlopKind::svd_sigma_v, 1, 1, 0}) == doctest::Approx(15.0));
  CHECK_THROWS_AS(atom_flops({FlopKind::scale, 0, 3, 0}), std::invalid_argument);
}

TEST_CASE("flops_direct_svd: unit dims and structure") {
  FlopTotal unit = flops_direct_svd(1, 1, 1, 1);
  CHECK(unit.value == doctest::Approx(19.0));  // gram 1 + scale 1 + evd 17

  // doubling n_sub touches only the gram and sum terms
  FlopTotal one = flops_direct_svd(16, 4, 2, 1);
  FlopTotal two = flops_direct_svd(16, 4, 2, 2);
  double gram = atom_flops({FlopKind::gram_aah, 16, 4, 0});
  double sum16 = atom_flops({FlopKind::sum, 16, 16, 0});
  CHECK(two.value - one.value == doctest::Approx(gram + sum16));

  // Nt^3 EVD dominates at scale
  FlopTotal big = flops_direct_svd(128, 8, 2, 1);
  double evd = atom_flops({FlopKind::svd_sigma_u, 128, 128, 0});
  CHECK(evd == doctest::Approx(17.0 * 128.0 * 128.0 * 128.0));
  CHECK(big.value / evd == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("flops_method1: unit dims, no cubic Nt term, reference point") {
  FlopTotal unit = flops_method1(1, 1, 1, 1, 1);
  CHECK(unit.value == doctest::Approx(1.0 + 1.0 + 4.0 / 3.0 + 1.0 + 15.0 + 1.0));

  // QR dominates with an Nt^2 term; nothing grows like Nt^3, so doubling
  // Nt at most quadruples the total (direct grows ~8x over the same step)
  double v64 = flops_method1(64, 8, 8, 2, 1).value;
  double v128 = flops_method1(128, 8, 8, 2, 1).value;
  double v256 = flops_method1(256, 8, 8, 2, 1).value;
  CHECK(v128 / v64 <= 4.0);
  CHECK(v256 / v128 <= 4.0);

  FlopTotal table2 = flops_method1(128, 8, 8, 2, 1);
  CHECK(table2.value == doctest::Approx(536427.0).epsilon(1e-3));
  double ratio = table2.value / flops_direct_svd(128, 8, 2, 1).value;
  CHECK(ratio < 0.02);

  CHECK_THROWS_AS(flops_method1(16, 4, 5, 2, 1), std::invalid_argument);
  CHECK_THROWS_AS(flops_method1(16, 4, 2, 3, 1), std::invalid_argument);
}

TEST_CASE("composite totals equal the sum of their breakdowns") {
  for (const FlopTotal& t :
       {flops_direct_svd(64, 8, 2, 4), flops_method1(64, 8, 6, 2, 4)}) {
    double sum = 0.0;
    for (const auto& term : t.breakdown) sum += term.flops;
    CHECK(t.value == doctest::Approx(sum).epsilon(1e-14));
  }
}

TEST_CASE("ratio_sweep: paper bounds and monotonicity") {
  std::vector<long long> nts;
  for (long long nt = 32; nt <= 256; nt += 8) nts.push_back(nt);

  SUBCASE("ratio decreases in Nt and method1 always cheaper") {
    auto rows = ratio_sweep(nts, 8, 8, 2, 1);
    for (std::size_t i = 1; i < rows.size(); ++i) {
      CHECK(rows[i].ratio < rows[i - 1].ratio);
    }
    for (const auto& row : rows) CHECK(row.method1 < row.direct);
  }
  SUBCASE("ratio increases in L") {
    double prev = 0.0;
    for (long long l : {2, 4, 6, 8}) {
      auto rows = ratio_sweep({128}, 8, l, 2, 1);
      CHECK(rows[0].ratio > prev);
      prev = rows[0].ratio;
    }
  }
  SUBCASE("RO(8,2) at Nt=200 costs under 10% of direct") {
    auto rows = ratio_sweep({200}, 8, 2, 2, 1);
    CHECK(rows[0].ratio < 0.10);
  }
  SUBCASE("RO(8,8) at Nt=128 costs under 30% of direct") {
    auto rows = ratio_sweep({128}, 8, 8, 2, 1);
    CHECK(rows[0].ratio < 0.30);
  }
}
