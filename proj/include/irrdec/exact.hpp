#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <unordered_map>

#include <boost/multiprecision/cpp_int.hpp>

namespace irrdec {

using BigInt = boost::multiprecision::cpp_int;

// beta = 2^(1/0.38) = 2^(50/19), so beta^k = 2^(50k/19) and every comparison
// against a power of beta becomes a comparison of 19th powers with 2^(50k).
inline constexpr int kBetaNum = 50;
inline constexpr int kBetaDen = 19;

inline BigInt big_pow(const BigInt& base, unsigned exp) { return boost::multiprecision::pow(base, exp); }
inline BigInt big_pow(std::uint64_t base, unsigned exp) { return big_pow(BigInt(base), exp); }
inline BigInt pow2(unsigned exp) { return BigInt(1) << exp; }

// Least k >= 0 with d <= beta^k, i.e. least k with d^19 <= 2^(50k).
inline int ceil_log_beta(std::uint64_t d) {
  if (d == 0) throw std::invalid_argument("ceil_log_beta: degree must be positive");
  thread_local std::unordered_map<std::uint64_t, int> cache;
  if (auto it = cache.find(d); it != cache.end()) return it->second;
  const BigInt lhs = big_pow(d, kBetaDen);
  int k = 0;
  while (lhs > pow2(static_cast<unsigned>(kBetaNum * k))) ++k;
  cache.emplace(d, k);
  return k;
}

// 2^ceil_log_beta(d): the label range and modulus base for a vertex of degree d.
inline std::uint64_t lambda_of(std::uint64_t d) {
  int k = ceil_log_beta(d);
  if (k > 62) throw std::overflow_error("lambda_of: degree too large");
  return std::uint64_t{1} << k;
}

// a < beta * b, exactly.
inline bool less_than_beta_times(std::uint64_t a, std::uint64_t b) {
  return big_pow(a, kBetaDen) < (big_pow(b, kBetaDen) << kBetaNum);
}

// The degree-ratio gate (1/beta) d(v) < d(u) < beta d(v).
inline bool beta_gate(std::uint64_t du, std::uint64_t dv) {
  return less_than_beta_times(du, dv) && less_than_beta_times(dv, du);
}

// (1/beta^2) d < w < beta^2 d, exactly.
inline bool within_beta_squared(std::uint64_t d, std::uint64_t w) {
  const BigInt d19 = big_pow(d, kBetaDen), w19 = big_pow(w, kBetaDen);
  return (w19 << (2 * kBetaNum)) > d19 && w19 < (d19 << (2 * kBetaNum));
}

// floor(beta * d), exactly.
inline std::uint64_t floor_beta_times(std::uint64_t d) {
  auto m = static_cast<std::uint64_t>(std::floor(std::pow(2.0L, 50.0L / 19.0L) * d));
  const BigInt rhs = big_pow(d, kBetaDen) << kBetaNum;
  while (m > 0 && big_pow(m, kBetaDen) > rhs) --m;
  while (big_pow(m + 1, kBetaDen) <= rhs) ++m;
  return m;
}

// A nonnegative double held exactly as mantissa * 2^exponent.
struct Dyadic {
  BigInt mantissa;
  int exponent = 0;

  static Dyadic from_double(double x) {
    if (!(x >= 0.0) || std::isinf(x)) throw std::invalid_argument("Dyadic: need finite x >= 0");
    Dyadic out;
    if (x == 0.0) return out;
    int e = 0;
    double f = std::frexp(x, &e);
    auto m = static_cast<std::uint64_t>(std::ldexp(f, 53));
    out.mantissa = m;
    out.exponent = e - 53;
    return out;
  }
};

// x <= coeff * slack * d^(num/50) for integers x, d >= 0 and dyadic slack.
// Evaluated as x^50 * 2^(-50 e) <= (coeff * m)^50 * d^num with slack = m 2^e.
inline bool le_scaled_power(std::uint64_t x, std::uint64_t coeff, const Dyadic& slack,
                            std::uint64_t d, unsigned num) {
  if (x == 0) return true;
  BigInt lhs = big_pow(x, 50);
  BigInt rhs = big_pow(BigInt(coeff) * slack.mantissa, 50) * big_pow(d, num);
  const long long shift = 50LL * slack.exponent;
  if (shift < 0)
    lhs <<= static_cast<unsigned>(-shift);
  else
    rhs <<= static_cast<unsigned>(shift);
  return lhs <= rhs;
}

// p/q <= c / d^(num/50), for p, q, c, d > 0 (q, d nonzero).
inline bool rational_le_inverse_power(const BigInt& p, const BigInt& q, std::uint64_t c,
                                      std::uint64_t d, unsigned num) {
  return big_pow(p, 50) * big_pow(d, num) <= big_pow(BigInt(c) * q, 50);
}

}  // namespace irrdec
