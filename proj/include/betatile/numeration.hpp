#pragma once

#include <optional>
#include <string>
#include <vector>

#include "betatile/algnum.hpp"

namespace betatile {

using DigitWord = std::vector<int>;

std::string digits_str(const DigitWord& pre, const DigitWord& per);  // "2(1)", "(110)", "101"
// parse "2(1)" style strings back into preperiod/period
void parse_digits_str(const std::string& s, DigitWord& pre, DigitWord& per);

// Kneading invariant kappa(1) = c_1..c_m (c_{m+1}..c_{m+p})^inf under the
// quasi-greedy convention, together with the exact orbit z^i = T^(i-1)(1).
struct KneadingData {
  FieldPtr field;
  int m = 0;  // preperiod, minimal
  int p = 1;  // period, minimal
  DigitWord digits;           // c_1..c_{m+p}
  std::vector<AlgNum> orbit;  // z^1..z^{m+p}, z^1 = 1
  bool simple_parry = false;  // orbit of 1 reaches 0 under the greedy map

  int alphabet_size() const { return m + p; }
  int digit_at(long i) const;  // c_i of the infinite stream, i >= 1
  std::string digits_text() const;
  AlgNum stream_value() const;  // sum c_i beta^-i, must equal 1 exactly
};

// One step of the beta-transformation: digit = floor(beta x), next = beta x - digit.
std::pair<int, AlgNum> t_beta_step(const FieldPtr& f, const AlgNum& x);

KneadingData kneading_of(const FieldPtr& f, long budget = 10000);

// Greedy expansion of x >= 0: value = sum_{j>=1} d_j beta^(k-j).
struct BetaExpansion {
  int scale_k = 0;     // number of leading digits weighted beta^(k-1)..beta^0
  DigitWord head;      // digits before the cycle (includes the integer part)
  DigitWord period;    // empty <=> finite expansion
  bool finite() const { return period.empty(); }
  DigitWord integer_digits() const;     // first scale_k digits
  DigitWord fractional_head() const;    // head beyond the integer part
  std::string text() const;
};

BetaExpansion greedy_expansion(const FieldPtr& f, const AlgNum& x, long budget = 10000);
AlgNum expansion_value(const FieldPtr& f, const BetaExpansion& e);

bool is_admissible(const KneadingData& k, const DigitWord& w);

struct FinResult {
  bool finite;
  BetaExpansion expansion;
};
FinResult fin_membership(const FieldPtr& f, const AlgNum& x, long budget = 10000);

struct WitnessResult {
  bool found = false;
  AlgNum witness;        // t' with t', z+t' both finite
  DigitWord digits;      // the admissible digit word of t'
  long candidates_tried = 0;
};

// Search for t' in (lo, hi) with t' and z + t' both in Fin(beta); candidates
// are admissible finite digit words enumerated by increasing length, then
// lexicographically.
WitnessResult property_w_witness(const FieldPtr& f, const AlgNum& z, const Rat& lo, const Rat& hi,
                                 long budget);

}  // namespace betatile
