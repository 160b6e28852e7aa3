#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "rinf/products.hpp"

using namespace rinf;

namespace {

// beta = (2, 1/2, 2, 1/2, ...), built in log space so that consecutive pairs
// cancel exactly.
FactorSeq two_half_seq() {
  const double ln2 = std::log(2.0);
  return FactorSeq::from_logs(
      [ln2](std::int64_t k) { return k % 2 != 0 ? ln2 : -ln2; });
}

// beta_k = e^{(-1)^k / k}
FactorSeq alternating_harmonic_seq() {
  return FactorSeq::from_logs([](std::int64_t k) {
    const double s = (k % 2 == 0) ? 1.0 : -1.0;
    return s / static_cast<double>(k);
  });
}

FactorSeq ones_closed_form() {
  return FactorSeq::from_logs([](std::int64_t) { return 0.0; });
}

}  // namespace

TEST_CASE("ordinary product: alternating 2, 1/2 oscillates") {
  const auto r = ordinary_product(two_half_seq(), {1e-10, 1000});
  CHECK(r.status == ProductStatus::oscillating);
  CHECK(r.partials_inspected == 1000);
}

TEST_CASE("ordinary product: e^{(-1)^k/k} converges to 1/2") {
  // Independent oracle: accelerated partial sums of the alternating
  // harmonic series give the log of the limit.
  const double lim = oracle::alternating_harmonic_sum(1'000'000);
  CHECK(std::abs(lim - (-std::log(2.0))) < 1e-10);
  CHECK(std::abs(std::exp(lim) - 0.5) < 1e-10);

  const auto r = ordinary_product(alternating_harmonic_seq(), {1e-6, 1'000'000});
  CHECK(r.status == ProductStatus::converged);
  CHECK(r.value == doctest::Approx(0.5).epsilon(2e-6));
  CHECK(r.partials_inspected <= 1'000'000);
}

TEST_CASE("ordinary product: all-one factors give exactly 1") {
  SUBCASE("constant-one tail") {
    const auto f = FactorSeq::from_logs([](std::int64_t) { return 0.0; },
                                        TailKind::constant_one, 0);
    const auto r = ordinary_product(f);
    CHECK(r.status == ProductStatus::converged);
    CHECK(r.value == 1.0);
    CHECK(r.log_value == 0.0);
  }
  SUBCASE("closed form") {
    const auto r = ordinary_product(ones_closed_form());
    CHECK(r.status == ProductStatus::converged);
    CHECK(r.value == 1.0);
  }
}

TEST_CASE("ordinary product: monotone decay below tolerance is zero") {
  const auto f = FactorSeq::from_values([](std::int64_t) { return 0.5; });
  const auto r = ordinary_product(f, {1e-10, 10'000});
  CHECK(r.status == ProductStatus::zero);
  CHECK(r.value == 0.0);
  CHECK(r.log_value == -std::numeric_limits<double>::infinity());
}

TEST_CASE("ordinary product: monotone growth past tolerance is infinite") {
  const auto f = FactorSeq::from_values([](std::int64_t) { return 2.0; });
  const auto r = ordinary_product(f, {1e-10, 10'000});
  CHECK(r.status == ProductStatus::infinite);
  CHECK(r.log_value == std::numeric_limits<double>::infinity());
}

TEST_CASE("ordinary product: converged value below tolerance keeps its log") {
  // Factors decay geometrically, the log partial sums converge to -40; the
  // value e^{-40} sits far below tol, so the status is zero at tolerance
  // but the log survives.
  const auto f = FactorSeq::from_logs(
      [](std::int64_t k) { return -40.0 * std::ldexp(1.0, -static_cast<int>(k)); });
  const auto r = ordinary_product(f, {1e-10, 10'000});
  CHECK(r.status == ProductStatus::zero);
  CHECK(r.value == 0.0);
  CHECK(r.log_value == doctest::Approx(-40.0).epsilon(1e-10));
}

TEST_CASE("ordinary product: a zero factor short-circuits") {
  const auto f = FactorSeq::from_values(
      [](std::int64_t k) { return k == 3 ? 0.0 : 1.5; });
  const auto r = ordinary_product(f, {1e-10, 100});
  CHECK(r.status == ProductStatus::zero);
  CHECK(r.partials_inspected == 3);
}

TEST_CASE("ordinary product: an infinite factor short-circuits") {
  const auto f = FactorSeq::from_values([](std::int64_t k) {
    return k == 5 ? std::numeric_limits<double>::infinity() : 1.0;
  });
  const auto r = ordinary_product(f, {1e-10, 100});
  CHECK(r.status == ProductStatus::infinite);
  CHECK(r.partials_inspected == 5);
}

TEST_CASE("standard product: e^{(-1)^k/k} is zero") {
  // The negative-log part is -sum 1/(2j-1), which crosses -1/tol at the
  // index the oracle finds by direct summation.
  const double tol = 0.2;
  const std::int64_t cross = oracle::odd_harmonic_crossing(-1.0 / tol, 100'000);
  REQUIRE(cross > 0);
  CHECK(cross <= 100'000);

  const auto r = standard_product(alternating_harmonic_seq(), {tol, 100'000});
  CHECK(r.status == ProductStatus::zero);
  CHECK(r.value == 0.0);
  CHECK(r.partials_inspected == cross);
}

TEST_CASE("standard product: all-one factors give exactly 1") {
  const auto r = standard_product(ones_closed_form(), {1e-10, 2'000});
  CHECK(r.status == ProductStatus::converged);
  CHECK(r.value == 1.0);
}

TEST_CASE("standard product: e^{-2^{-k}} converges to 1/e") {
  const double s = oracle::geometric_half_sum(60);
  CHECK(std::abs(s - 1.0) < 1e-15);
  const double expected = std::exp(-s);  // = 0.36787944117144233

  const auto f = FactorSeq::from_logs(
      [](std::int64_t k) { return -std::ldexp(1.0, -static_cast<int>(std::min<std::int64_t>(k, 1074))); });
  const auto r = standard_product(f, {1e-10, 50'000});
  CHECK(r.status == ProductStatus::converged);
  CHECK(r.value == doctest::Approx(expected).epsilon(1e-12));
  CHECK(r.value == doctest::Approx(0.36787944117144233).epsilon(1e-12));
}

TEST_CASE("standard product: a zero factor forces zero immediately") {
  const auto f = FactorSeq::from_values(
      [](std::int64_t k) { return k == 2 ? 0.0 : 3.0; });
  const auto r = standard_product(f, {1e-10, 100});
  CHECK(r.status == ProductStatus::zero);
  CHECK(r.partials_inspected == 2);
}

TEST_CASE("grouped product: 2,1/2 with pair blocks converges to exactly 1") {
  const auto r = grouped_product(two_half_seq(), GroupingAlpha::constant(2),
                                 ProductMode::ordinary, {1e-10, 1000});
  CHECK(r.status == ProductStatus::converged);
  CHECK(r.value == 1.0);
  CHECK(r.log_value == 0.0);
}

TEST_CASE("grouped product: singleton blocks reduce to the ungrouped case") {
  SUBCASE("oscillating fixture") {
    const auto grouped = grouped_product(two_half_seq(), GroupingAlpha::ones(),
                                         ProductMode::ordinary, {1e-10, 1000});
    const auto plain = ordinary_product(two_half_seq(), {1e-10, 1000});
    CHECK(grouped.status == plain.status);
    CHECK(grouped.partials_inspected == plain.partials_inspected);
  }
  SUBCASE("convergent fixture matches bit for bit") {
    const auto f = FactorSeq::from_logs(
        [](std::int64_t k) { return 0.3 * std::ldexp(1.0, -static_cast<int>(k)); });
    const auto grouped = grouped_product(f, GroupingAlpha::ones(),
                                         ProductMode::ordinary, {1e-10, 1000});
    const auto plain = ordinary_product(f, {1e-10, 1000});
    CHECK(grouped.status == plain.status);
    CHECK(grouped.value == plain.value);
    CHECK(grouped.log_value == plain.log_value);
  }
}

TEST_CASE("grouped product: standard mode with singleton blocks detects zero") {
  const auto r = grouped_product(alternating_harmonic_seq(), GroupingAlpha::ones(),
                                 ProductMode::standard, {0.2, 100'000});
  CHECK(r.status == ProductStatus::zero);
}

TEST_CASE("grouping alpha: block layout") {
  const GroupingAlpha a({3, 2}, 4);
  CHECK(a.block_size(1) == 3);
  CHECK(a.block_size(2) == 2);
  CHECK(a.block_size(3) == 4);
  CHECK(a.block_size(7) == 4);
  CHECK(a.block_start(1) == 1);
  CHECK(a.block_start(2) == 4);
  CHECK(a.block_start(3) == 6);
  CHECK(a.block_start(4) == 10);
  CHECK(GroupingAlpha::ones().is_ones());
  CHECK_FALSE(GroupingAlpha::constant(2).is_ones());
  CHECK(GroupingAlpha::leading_block(3).block_size(1) == 3);
  CHECK(GroupingAlpha::leading_block(3).block_size(2) == 1);
  CHECK_THROWS_AS(GroupingAlpha({0}, 1), DomainError);
  CHECK_THROWS_AS(GroupingAlpha({}, 0), DomainError);
}

TEST_CASE("factor sequences: error paths") {
  SUBCASE("negative factor") {
    const auto f = FactorSeq::from_values([](std::int64_t) { return -1.0; });
    CHECK_THROWS_AS(ordinary_product(f, {1e-10, 100}), DomainError);
  }
  SUBCASE("truncated tail") {
    const auto f = FactorSeq::from_values([](std::int64_t) { return 0.9; },
                                          TailKind::truncated, 5);
    CHECK_THROWS_AS(ordinary_product(f, {1e-10, 100}), TailUnspecifiedError);
  }
  SUBCASE("bad options") {
    const auto f = ones_closed_form();
    CHECK_THROWS_AS(ordinary_product(f, {0.0, 100}), DomainError);
    CHECK_THROWS_AS(ordinary_product(f, {1e-10, 1}), DomainError);
  }
}

TEST_CASE("products: ordinary and standard agree on absolutely convergent factors") {
  std::mt19937_64 rng(987654);
  std::uniform_real_distribution<double> coef(-2.0, 2.0);
  std::uniform_real_distribution<double> ratio(0.3, 0.9);
  const ProductOptions opt{1e-8, 20'000};
  for (int trial = 0; trial < 25; ++trial) {
    const double c = coef(rng);
    const double q = ratio(rng);
    const auto f = FactorSeq::from_logs(
        [c, q](std::int64_t k) { return c * std::pow(q, static_cast<double>(k)); });
    const auto o = ordinary_product(f, opt);
    const auto s = standard_product(f, opt);
    REQUIRE(o.status == ProductStatus::converged);
    REQUIRE(s.status == ProductStatus::converged);
    CHECK(std::abs(o.value - s.value) <= 10.0 * opt.tol);
  }
}

TEST_CASE("products: when the ordinary product converges the standard one never oscillates") {
  std::mt19937_64 rng(424242);
  std::uniform_real_distribution<double> u(0.2, 2.0);
  const ProductOptions opt{1e-8, 20'000};
  for (int trial = 0; trial < 40; ++trial) {
    const double c = u(rng);
    const int kind = trial % 5;
    FactorSeq f = [&]() {
      switch (kind) {
        case 0:  // absolutely convergent, geometric
          return FactorSeq::from_logs([c](std::int64_t k) {
            return c * std::pow(0.6, static_cast<double>(k));
          });
        case 1:  // conditionally convergent logs
          return FactorSeq::from_logs([c](std::int64_t k) {
            return (k % 2 == 0 ? c : -c) / static_cast<double>(k);
          });
        case 2:  // diverges to zero
          return FactorSeq::from_logs(
              [c](std::int64_t k) { return -c / static_cast<double>(k); });
        case 3:  // diverges to infinity
          return FactorSeq::from_logs(
              [c](std::int64_t k) { return c / static_cast<double>(k); });
        default:  // absolutely convergent, alternating
          return FactorSeq::from_logs([c](std::int64_t k) {
            const double kk = static_cast<double>(k);
            return (k % 2 == 0 ? c : -c) / (kk * kk);
          });
      }
    }();
    const auto o = ordinary_product(f, opt);
    if (o.status == ProductStatus::converged) {
      const auto s = standard_product(f, opt);
      CHECK(s.status != ProductStatus::oscillating);
    }
  }
}

TEST_CASE("products: enlarging every factor cannot shrink a convergent product") {
  std::mt19937_64 rng(777);
  std::uniform_real_distribution<double> u(0.1, 1.5);
  const ProductOptions opt{1e-9, 20'000};
  for (int trial = 0; trial < 20; ++trial) {
    const double c = u(rng);
    const double bump = u(rng);
    const auto base = FactorSeq::from_logs(
        [c](std::int64_t k) { return -c * std::pow(0.8, static_cast<double>(k)); });
    const auto bigger = FactorSeq::from_logs([c, bump](std::int64_t k) {
      return -c * std::pow(0.8, static_cast<double>(k)) +
             bump * std::ldexp(1.0, -static_cast<int>(k));
    });
    const auto lo = ordinary_product(base, opt);
    const auto hi = ordinary_product(bigger, opt);
    REQUIRE(lo.status == ProductStatus::converged);
    REQUIRE(hi.status == ProductStatus::converged);
    CHECK(hi.value >= lo.value - 10.0 * opt.tol);
  }
}
