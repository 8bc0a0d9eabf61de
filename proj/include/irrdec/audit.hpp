#pragma once

#include <functional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "exact.hpp"

namespace irrdec {

using Real = boost::multiprecision::cpp_bin_float_100;

struct AuditEntry {
  std::string claim_id;
  std::string formula;
  double computed;
  std::string printed;
  bool pass;
  std::string detail;
};

namespace audit_detail {

inline Real R(const char* s) { return Real(s); }
inline Real beta() { return boost::multiprecision::pow(Real(2), Real(50) / 19); }
inline Real rpow(const Real& x, const Real& e) { return boost::multiprecision::pow(x, e); }

inline bool rounds_to(const Real& x, long long printed) {
  return boost::multiprecision::round(x) == Real(printed);
}

// An inequality that is claimed to hold for d at or above a threshold: it must
// fail a little below the threshold and hold a little above it.
inline bool tight_at(const std::function<bool(const Real&)>& holds, const Real& threshold) {
  return !holds(threshold * R("0.999")) && holds(threshold * R("1.001"));
}

inline AuditEntry threshold_entry(std::string id, std::string formula, const Real& value, long long printed,
                                  const std::function<bool(const Real&)>& holds, std::string what) {
  const bool rounded = rounds_to(value, printed);
  const bool tight = tight_at(holds, value);
  AuditEntry e{std::move(id), std::move(formula), static_cast<double>(value), std::to_string(printed),
               rounded && tight, ""};
  e.detail = std::string(rounded ? "rounds to printed value" : "does NOT round to printed value") + "; " + what +
             (tight ? " switches at the threshold" : " does NOT switch at the threshold");
  return e;
}

}  // namespace audit_detail

// Recomputes every closed-form constant used by the large-degree argument.
inline std::vector<AuditEntry> audit_constants() {
  using namespace audit_detail;
  using boost::multiprecision::log;
  using boost::multiprecision::exp;
  const Real b = beta();
  std::vector<AuditEntry> out;

  {
    // 6.19^19 < 2^50 < 6.2^19 decides 6.19 < beta < 6.2 exactly.
    const bool lo = big_pow(619, 19) < (big_pow(100, 19) << 50);
    const bool hi = (big_pow(10, 19) << 50) < big_pow(62, 19);
    out.push_back({"beta_window", "6.19 < 2^(1/0.38) < 6.2", static_cast<double>(b), "6.19 < beta < 6.2", lo && hi,
                   "exact: 619^19 < 2^50 100^19 and 2^50 10^19 < 62^19"});
  }

  out.push_back(threshold_entry(
      "t221460", "(3*25*beta^6)^(1/1.24)", rpow(75 * rpow(b, 6), 1 / R("1.24")), 221460,
      [&](const Real& d) { return exp(-25 * rpow(b, 6) / d) >= exp(-rpow(d, R("0.24")) / 3); },
      "exp(-25 beta^6/d) >= exp(-d^0.24/3)"));

  {
    const Real d = R("1e10");
    const Real f = rpow(d, R("0.24")) / 3 - log(2 * rpow(d, 3));
    const bool ok = boost::multiprecision::abs(f - 14) <= R("0.5") && f > 0;
    out.push_back({"f10", "f(d) = d^0.24/3 - ln(2 d^3) at d = 10^10", static_cast<double>(f), "14", ok,
                   "within 0.5 of 14 and positive"});
  }

  out.push_back(threshold_entry(
      "t3617959", "(3/0.08)^(1/0.24)", rpow(R("3") / R("0.08"), 1 / R("0.24")), 3617959,
      [](const Real& d) { return R("0.08") / rpow(d, R("0.76")) - 3 / d > 0; }, "f'(d) = 0.08/d^0.76 - 3/d > 0"));

  out.push_back(threshold_entry(
      "t398893555", "16^(1/0.14)", rpow(R("16"), 1 / R("0.14")), 398893555,
      [](const Real& d) { return d / 3 - 16 * rpow(d, R("0.62")) > d / 3 - rpow(d, R("0.76")); },
      "d/3 - 16 d^0.62 > d/3 - d^0.76"));

  out.push_back(threshold_entry(
      "t5647425084", "(3*73)^(1/0.24)", rpow(R("219"), 1 / R("0.24")), 5647425084LL,
      [](const Real& d) { return d / 3 - rpow(d, R("0.76")) > 72 * rpow(d, R("0.76")); },
      "d/3 - d^0.76 > 72 d^0.76"));

  out.push_back(threshold_entry(
      "t7221904256", "24^(1/0.14)", rpow(R("24"), 1 / R("0.14")), 7221904256LL,
      [](const Real& d) { return 12 * rpow(d, R("0.24")) < rpow(d, R("0.38")) / 2; }, "12 d^0.24 < d^0.38 / 2"));

  out.push_back(threshold_entry(
      "t21129", "44^(1/0.38)", rpow(R("44"), 1 / R("0.38")), 21129,
      [](const Real& d) { return 4 * d / 9 + 88 * rpow(d, R("0.62")) / 9 <= 2 * d / 3; },
      "4d/9 + 88 d^0.62 / 9 <= 2d/3"));

  out.push_back(threshold_entry(
      "t1034102857", "(8*333)^(1/0.38)", rpow(R("2664"), 1 / R("0.38")), 1034102857,
      [](const Real& d) { return d / 9 - 8 * rpow(d, R("0.62")) >= 4 * d / 37; }, "d/9 - 8 d^0.62 >= 4d/37"));

  {
    // (2/3)/(4/37) = 37/6 and 37/6 < 617/100; 6.17 < beta via 617^19 < 2^50 100^19.
    const bool ratio = 37 * 100 < 617 * 6;
    const bool below_beta = big_pow(617, 19) < (big_pow(100, 19) << 50);
    out.push_back({"ratio617", "(2/3)/(4/37) < 6.17 < beta", 37.0 / 6.0, "6.17", ratio && below_beta,
                   "exact rational comparison"});
  }

  {
    // The Local Lemma condition for an event at a vertex of degree d = 10^10,
    // step by step in log space.
    const Real d = R("1e10");
    const Real b2 = b * b;
    const Real x = rpow(d / b2, 3);
    const std::uint64_t fbd = floor_beta_times(10000000000ULL);
    const Real outdeg = 3 + 4 * d * Real(fbd);
    const Real xl = 1 / (1 + rpow(d, 3));
    const Real xq = 1 / (1 + x);
    const Real line2 = log(xl / (1 - xl)) + (1 + outdeg) * log(1 - xq);
    const Real line3 = -3 * log(d) + 25 * d * d * log(x / (1 + x));
    const Real line4 = -3 * log(d) - 25 * d * d / x;
    const Real line5 = -3 * log(d) - 25 * rpow(b, 6) / d;
    const Real target = log(Real(2)) - 2 * rpow(d, R("0.24")) / 3;
    const Real pr_a = log(Real(2)) - 4 * rpow(d, R("0.62")) / 3;
    const bool steps = (1 + outdeg) <= 25 * d * d && line2 >= line3 && line3 > line4 &&
                       boost::multiprecision::abs(line4 - line5) < R("1e-60") && line5 > target;
    const bool lll = target >= pr_a;  // the F-event bound dominates the A/B/C one
    out.push_back({"chain15", "x_L prod(1 - x_Q) > 2 exp(-2 d^0.24 / 3) at d = 10^10",
                   static_cast<double>(line2 - target), "holds at d = 10^10", steps && lll,
                   "log margin of the weakest chain step; weights x_L = 1/(1+d^3)"});
  }
  return out;
}

}  // namespace irrdec
