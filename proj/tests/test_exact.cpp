#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include <gmpxx.h>

#include "irrdec/exact.hpp"

using namespace irrdec;

namespace {

// independent big-number backend
mpz_class zpow(unsigned long base, unsigned long e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), base, e);
  return r;
}

mpz_class z2(unsigned long e) {
  mpz_class r = 1;
  r <<= e;
  return r;
}

int gmp_ceil_log_beta(unsigned long d) {
  const mpz_class lhs = zpow(d, 19);
  int k = 0;
  while (lhs > z2(50ul * k)) ++k;
  return k;
}

bool gmp_lt_beta_times(unsigned long a, unsigned long b) { return zpow(a, 19) < (zpow(b, 19) << 50); }

}  // namespace

TEST_CASE("ceil_log_beta examples") {
  REQUIRE(ceil_log_beta(1) == 0);
  REQUIRE(ceil_log_beta(2) == 1);
  REQUIRE(ceil_log_beta(6) == 1);
  REQUIRE(ceil_log_beta(7) == 2);
  REQUIRE(ceil_log_beta(100) == 3);
  REQUIRE(lambda_of(100) == 8);
  REQUIRE(lambda_of(1) == 1);
  REQUIRE(lambda_of(10'000'000'000ULL) == 8192);
  REQUIRE_THROWS(ceil_log_beta(0));
  REQUIRE(zpow(100, 19) <= z2(150));
  REQUIRE(zpow(100, 19) > z2(100));
}

TEST_CASE("ceil_log_beta agrees with the GMP oracle") {
  for (unsigned long d = 1; d <= 20000; ++d) REQUIRE(ceil_log_beta(d) == gmp_ceil_log_beta(d));
  std::mt19937_64 rng(11);
  for (int i = 0; i < 2000; ++i) {
    unsigned long d = 1 + rng() % 100'000'000'000ULL;
    REQUIRE(ceil_log_beta(d) == gmp_ceil_log_beta(d));
  }
}

TEST_CASE("ceil_log_beta is monotone and brackets d") {
  int prev = 0;
  for (unsigned long d = 1; d <= 100000; ++d) {
    const int k = ceil_log_beta(d);
    REQUIRE(k >= prev);
    REQUIRE(k <= prev + 1);
    prev = k;
  }
  for (unsigned long d : {2ul, 7ul, 39ul, 238ul, 1475ul, 9139ul, 56634ul}) {
    const int k = ceil_log_beta(d);
    REQUIRE(zpow(d, 19) <= z2(50ul * k));
    REQUIRE(zpow(d, 19) > z2(50ul * (k - 1)));
  }
}

TEST_CASE("ratio gate matches the GMP oracle and is symmetric") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 5000; ++i) {
    unsigned long a = 1 + rng() % 5000, b = 1 + rng() % 5000;
    REQUIRE(less_than_beta_times(a, b) == gmp_lt_beta_times(a, b));
    REQUIRE(beta_gate(a, b) == beta_gate(b, a));
  }
  REQUIRE(beta_gate(1, 1));
  REQUIRE(beta_gate(1, 6));
  REQUIRE_FALSE(beta_gate(1, 7));
  REQUIRE_FALSE(beta_gate(1, 100));
  REQUIRE(beta_gate(100, 619));
  REQUIRE_FALSE(beta_gate(100, 620));
}

TEST_CASE("gated pairs have exponents within one") {
  std::mt19937_64 rng(17);
  int gated = 0;
  for (int i = 0; i < 20000; ++i) {
    unsigned long a = 1 + rng() % 100000, b = 1 + rng() % 100000;
    if (rng() & 1) b = std::max(1ul, a + rng() % (a * 5 + 1) - a / 2);
    if (!beta_gate(a, b)) continue;
    ++gated;
    REQUIRE(std::abs(ceil_log_beta(a) - ceil_log_beta(b)) <= 1);
  }
  REQUIRE(gated > 1000);
}

TEST_CASE("floor_beta_times and the squared window") {
  for (unsigned long d = 1; d <= 3000; ++d) {
    const auto m = floor_beta_times(d);
    REQUIRE(zpow(m, 19) <= (zpow(d, 19) << 50));
    REQUIRE(zpow(m + 1, 19) > (zpow(d, 19) << 50));
  }
  REQUIRE(floor_beta_times(1) == 6);
  REQUIRE(floor_beta_times(2) == 12);
  REQUIRE(within_beta_squared(10, 10));
  REQUIRE(within_beta_squared(10, 384));
  REQUIRE_FALSE(within_beta_squared(10, 385));
  REQUIRE(within_beta_squared(384, 10));
  REQUIRE_FALSE(within_beta_squared(385, 10));
  REQUIRE_FALSE(within_beta_squared(400, 10));
}

TEST_CASE("scaled power comparisons are exact") {
  // 8 * 29^0.62 ~ 65.0
  const double v = 8.0 * std::pow(29.0, 0.62);
  const auto fl = static_cast<std::uint64_t>(std::floor(v));
  auto one = Dyadic::from_double(1.0);
  REQUIRE(le_scaled_power(fl, 8, one, 29, 31));
  REQUIRE_FALSE(le_scaled_power(fl + 1, 8, one, 29, 31));
  REQUIRE(le_scaled_power(0, 8, Dyadic::from_double(0.0), 5, 31));
  REQUIRE_FALSE(le_scaled_power(1, 8, Dyadic::from_double(0.0), 5, 31));
  // exact boundary: 8 * 1 * 1^anything = 8
  REQUIRE(le_scaled_power(8, 8, one, 1, 31));
  REQUIRE_FALSE(le_scaled_power(9, 8, one, 1, 31));
  // slack 0.5 at d = 1: cap 4
  REQUIRE(le_scaled_power(4, 8, Dyadic::from_double(0.5), 1, 31));
  REQUIRE_FALSE(le_scaled_power(5, 8, Dyadic::from_double(0.5), 1, 31));
  REQUIRE_THROWS(Dyadic::from_double(-1.0));

  // 1/8 <= 2/100^0.38
  REQUIRE(rational_le_inverse_power(1, 8, 2, 100, 19));
  // 1/2 vs 2/16^0.5 = 1/2: equality holds (num 25 -> exponent 0.5)
  REQUIRE(rational_le_inverse_power(1, 2, 2, 16, 25));
  REQUIRE_FALSE(rational_le_inverse_power(51, 100, 2, 16, 25));
}

TEST_CASE("dyadic conversion is exact") {
  for (double x : {0.1, 1.0, 3.0, 1e-7, 12345.678}) {
    auto d = Dyadic::from_double(x);
    mpz_class m(d.mantissa.str());
    mpf_class back(0, 256);
    mpf_class mf(m, 256);
    if (d.exponent >= 0)
      mpf_mul_2exp(back.get_mpf_t(), mf.get_mpf_t(), static_cast<unsigned long>(d.exponent));
    else
      mpf_div_2exp(back.get_mpf_t(), mf.get_mpf_t(), static_cast<unsigned long>(-d.exponent));
    REQUIRE(back == mpf_class(x, 256));
  }
}
