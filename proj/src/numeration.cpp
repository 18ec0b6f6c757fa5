#include "betatile/numeration.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

namespace betatile {

std::string digits_str(const DigitWord& pre, const DigitWord& per) {
  std::ostringstream os;
  auto put = [&](const DigitWord& w) {
    bool wide = std::any_of(w.begin(), w.end(), [](int d) { return d > 9; });
    for (size_t i = 0; i < w.size(); ++i) {
      if (wide && i) os << ",";
      os << w[i];
    }
  };
  put(pre);
  if (!per.empty()) {
    os << "(";
    put(per);
    os << ")";
  }
  return os.str();
}

void parse_digits_str(const std::string& s, DigitWord& pre, DigitWord& per) {
  pre.clear();
  per.clear();
  DigitWord* cur = &pre;
  std::string num;
  auto flushnum = [&] {
    if (!num.empty()) {
      cur->push_back(std::stoi(num));
      num.clear();
    }
  };
  for (char ch : s) {
    if (ch == '(') { flushnum(); cur = &per; }
    else if (ch == ')') { flushnum(); }
    else if (ch == ',') { flushnum(); }
    else if (ch >= '0' && ch <= '9') {
      if (s.find(',') != std::string::npos) num.push_back(ch);
      else cur->push_back(ch - '0');
    } else if (!std::isspace(static_cast<unsigned char>(ch))) {
      fail(errc::bad_input, "bad digit string: " + s);
    }
  }
  flushnum();
}

int KneadingData::digit_at(long i) const {
  if (i < 1) fail(errc::bad_input, "kneading digits start at index 1");
  if (i <= m) return digits[i - 1];
  long j = (i - m - 1) % p;
  return digits[m + j];
}

std::string KneadingData::digits_text() const {
  DigitWord pre(digits.begin(), digits.begin() + m);
  DigitWord per(digits.begin() + m, digits.end());
  return digits_str(pre, per);
}

AlgNum KneadingData::stream_value() const {
  AlgNum beta = AlgNum::beta(field);
  AlgNum binv = beta.inverse();
  AlgNum head = AlgNum::zero(field);
  AlgNum pw = AlgNum::one(field);
  for (int i = 0; i < m; ++i) {
    pw = pw * binv;
    head += pw.scaled(Rat(digits[i]));
  }
  AlgNum tail = AlgNum::zero(field);
  AlgNum pw2 = AlgNum::one(field);
  for (int j = 0; j < p; ++j) {
    pw2 = pw2 * binv;
    tail += pw2.scaled(Rat(digits[m + j]));
  }
  AlgNum denom = AlgNum::one(field) - binv.pow(p);
  return head + binv.pow(m) * (tail / denom);
}

std::pair<int, AlgNum> t_beta_step(const FieldPtr& f, const AlgNum& x) {
  if (x.sign() == Sign::negative) fail(errc::out_of_range, "t_beta_step needs 0 <= x < 1");
  if ((x - AlgNum::one(f)).sign() != Sign::negative)
    fail(errc::out_of_range, "t_beta_step needs 0 <= x < 1");
  AlgNum bx = AlgNum::beta(f) * x;
  Int d = bx.floor();
  AlgNum next = bx - AlgNum::from_rat(f, Rat(d));
  return {static_cast<int>(d.get_si()), next};
}

namespace {

// minimal period of the cyclic digit word (as an infinite periodic stream)
int minimal_period(const DigitWord& w) {
  int n = static_cast<int>(w.size());
  for (int p = 1; p <= n; ++p) {
    if (n % p) continue;
    bool ok = true;
    for (int i = p; i < n && ok; ++i) ok = (w[i] == w[i - p]);
    if (ok) return p;
  }
  return n;
}

}  // namespace

KneadingData kneading_of(const FieldPtr& f, long budget) {
  KneadingData k;
  k.field = f;
  AlgNum beta = AlgNum::beta(f);

  // greedy orbit of 1: z^1 = 1, digits t_i = floor(beta z^i)
  std::vector<AlgNum> orbit{AlgNum::one(f)};
  DigitWord greedy;
  std::map<std::string, int> seen{{orbit[0].key(), 0}};
  int cycle_start = -1;
  bool hits_zero = false;
  for (long step = 0; step < budget; ++step) {
    AlgNum bx = beta * orbit.back();
    Int d = bx.floor();
    AlgNum next = bx - AlgNum::from_rat(f, Rat(d));
    greedy.push_back(static_cast<int>(d.get_si()));
    if (next.is_zero()) { hits_zero = true; break; }
    auto [it, fresh] = seen.emplace(next.key(), static_cast<int>(orbit.size()));
    if (!fresh) { cycle_start = it->second; break; }
    orbit.push_back(next);
  }
  if (!hits_zero && cycle_start < 0)
    fail(errc::iteration_budget_exceeded, "kneading orbit did not close within the budget");

  if (hits_zero) {
    // simple Parry: d(1) = t_1..t_n finite; the quasi-greedy limit is
    // (t_1..t_{n-1}(t_n - 1))^inf
    k.simple_parry = true;
    DigitWord per = greedy;
    per.back() -= 1;
    int p = minimal_period(per);
    per.resize(p);
    k.m = 0;
    k.p = p;
    k.digits = per;
  } else {
    // strictly preperiodic greedy orbit: first-repeat gives orbit-level (m, p);
    // minimize at digit level afterwards
    int m = cycle_start;
    int p = static_cast<int>(orbit.size()) - cycle_start;
    DigitWord cyc(greedy.begin() + m, greedy.begin() + m + p);
    int pmin = minimal_period(cyc);
    cyc.resize(pmin);
    p = pmin;
    DigitWord pre(greedy.begin(), greedy.begin() + m);
    while (m >= 1 && pre[m - 1] == cyc[p - 1]) {
      // c_m == c_{m+p}: rotate the cycle and shrink the preperiod
      --m;
      pre.pop_back();
      std::rotate(cyc.begin(), cyc.end() - 1, cyc.end());
    }
    if (m == 0) fail(errc::bad_input, "preperiodic orbit reduced to m = 0 unexpectedly");
    k.simple_parry = false;
    k.m = m;
    k.p = p;
    k.digits = pre;
    k.digits.insert(k.digits.end(), cyc.begin(), cyc.end());
  }

  // rebuild the quasi-greedy orbit from the minimal digits: z^{i+1} = beta z^i - c_i
  k.orbit.assign(1, AlgNum::one(f));
  for (int i = 0; i < k.m + k.p - 1; ++i)
    k.orbit.push_back(beta * k.orbit.back() - AlgNum::from_rat(f, Rat(k.digits[i])));
  // closure and exactness checks
  AlgNum wrap = beta * k.orbit.back() - AlgNum::from_rat(f, Rat(k.digits[k.m + k.p - 1]));
  AlgNum target = k.orbit[k.m];
  if (wrap != target) fail(errc::bad_input, "kneading orbit does not close exactly");
  if (k.stream_value() != AlgNum::one(f))
    fail(errc::bad_input, "kneading identity sum c_i beta^-i = 1 failed");
  for (const AlgNum& z : k.orbit) {
    if (z.sign() != Sign::positive) fail(errc::bad_input, "orbit point not positive");
    if ((z - AlgNum::one(f)).sign() == Sign::positive) fail(errc::bad_input, "orbit point > 1");
  }
  return k;
}

BetaExpansion greedy_expansion(const FieldPtr& f, const AlgNum& x, long budget) {
  if (x.sign() == Sign::negative) fail(errc::out_of_range, "greedy_expansion needs x >= 0");
  BetaExpansion e;
  AlgNum beta = AlgNum::beta(f);
  AlgNum y = x;
  int k = 0;
  while ((y - AlgNum::one(f)).sign() != Sign::negative) {
    y = y / beta;
    ++k;
    if (k > 100000) fail(errc::iteration_budget_exceeded, "scaling exceeded budget");
  }
  e.scale_k = k;
  std::map<std::string, int> seen;
  std::vector<int> digs;
  for (long step = 0; step < budget; ++step) {
    if (y.is_zero()) {
      e.head = digs;
      // canonical finite form: drop trailing zeros past the integer part
      while (static_cast<int>(e.head.size()) > e.scale_k && e.head.back() == 0) e.head.pop_back();
      return e;
    }
    auto [it, fresh] = seen.emplace(y.key(), static_cast<int>(digs.size()));
    if (!fresh) {
      int start = it->second;
      e.head.assign(digs.begin(), digs.begin() + start);
      e.period.assign(digs.begin() + start, digs.end());
      return e;
    }
    auto [d, next] = t_beta_step(f, y);
    digs.push_back(d);
    y = next;
  }
  fail(errc::iteration_budget_exceeded, "expansion did not terminate within the budget");
}

AlgNum expansion_value(const FieldPtr& f, const BetaExpansion& e) {
  AlgNum beta = AlgNum::beta(f);
  AlgNum acc = AlgNum::zero(f);
  AlgNum w = beta.pow(e.scale_k);  // weight of digit 1 is beta^(k-1)
  AlgNum binv = beta.inverse();
  for (int d : e.head) {
    w = w * binv;
    acc += w.scaled(Rat(d));
  }
  if (!e.period.empty()) {
    AlgNum tail = AlgNum::zero(f);
    AlgNum w2 = AlgNum::one(f);
    for (int d : e.period) {
      w2 = w2 * binv;
      tail += w2.scaled(Rat(d));
    }
    AlgNum denom = AlgNum::one(f) - binv.pow(static_cast<long>(e.period.size()));
    acc += w * (tail / denom);
  }
  return acc;
}

DigitWord BetaExpansion::integer_digits() const {
  DigitWord w(head.begin(), head.begin() + std::min<size_t>(scale_k, head.size()));
  while (static_cast<int>(w.size()) < scale_k) w.push_back(0);  // unreachable: head covers k
  return w;
}

DigitWord BetaExpansion::fractional_head() const {
  if (static_cast<int>(head.size()) <= scale_k) return {};
  return DigitWord(head.begin() + scale_k, head.end());
}

std::string BetaExpansion::text() const {
  std::ostringstream os;
  DigitWord ip = integer_digits();
  os << digits_str(ip, {});
  os << ".";
  os << digits_str(fractional_head(), period);
  return os.str();
}

bool is_admissible(const KneadingData& k, const DigitWord& w) {
  int bound = k.digits.empty() ? 0 : *std::max_element(k.digits.begin(), k.digits.end());
  for (int d : w)
    if (d < 0 || d > bound) return false;
  long n = static_cast<long>(w.size());
  for (long s = 0; s < n; ++s) {
    // compare w[s..] (zero-extended) against the kneading stream; the suffix
    // must not be lexicographically larger.  Zero-extension can only decide
    // "smaller", so the horizon just needs to reach past the word.
    long horizon = n - s + k.m + 2 * k.p + 2;
    for (long i = 0; i < horizon; ++i) {
      int wd = (s + i < n) ? w[s + i] : 0;
      int cd = k.digit_at(i + 1);
      if (wd < cd) break;
      if (wd > cd) return false;
    }
  }
  return true;
}

FinResult fin_membership(const FieldPtr& f, const AlgNum& x, long budget) {
  BetaExpansion e = greedy_expansion(f, x, budget);
  return {e.finite(), std::move(e)};
}

WitnessResult property_w_witness(const FieldPtr& f, const AlgNum& z, const Rat& lo, const Rat& hi,
                                 long budget) {
  if (lo >= hi) fail(errc::invalid_interval, "need lo < hi");
  if (z.sign() != Sign::positive || !in_z_inv_beta(z))
    fail(errc::not_in_z_inv_beta, "z must lie in Z[1/beta] and be positive");
  KneadingData kn = kneading_of(f);
  AlgNum beta = AlgNum::beta(f);
  AlgNum binv = beta.inverse();
  AlgNum lo_a = AlgNum::from_rat(f, lo), hi_a = AlgNum::from_rat(f, hi);
  int maxdigit = *std::max_element(kn.digits.begin(), kn.digits.end());

  WitnessResult res;
  long tried = 0;

  std::vector<AlgNum> binv_pow{AlgNum::one(f)};
  auto bpow = [&](int i) -> const AlgNum& {
    while (static_cast<int>(binv_pow.size()) <= i) binv_pow.push_back(binv_pow.back() * binv);
    return binv_pow[i];
  };

  // Enumerate by increasing word length, lexicographically within a length.
  // A prefix of length j pins the subtree of values to [val, val + beta^-j),
  // which prunes against (lo, hi); inadmissible prefixes have no admissible
  // extensions (violations are decided inside the real digits).
  DigitWord word;
  bool done = false;
  std::function<void(int, const AlgNum&, int)> walk = [&](int depth, const AlgNum& val, int len) {
    if (done) return;
    if (depth > 0) {
      if (((val + bpow(depth)) - lo_a).sign() != Sign::positive) return;  // subtree <= lo
      if ((val - hi_a).sign() != Sign::negative) return;                  // subtree >= hi
      if (!is_admissible(kn, word)) return;
    }
    if (depth == len) {
      if (word.back() == 0) return;  // canonical words end in a nonzero digit
      bool inside =
          (val - lo_a).sign() == Sign::positive && (hi_a - val).sign() == Sign::positive;
      if (!inside) return;
      ++tried;
      if (fin_membership(f, val).finite && fin_membership(f, z + val).finite) {
        res.found = true;
        res.witness = val;
        res.digits = word;
        done = true;
      } else if (tried >= budget) {
        done = true;
      }
      return;
    }
    for (int d = 0; d <= maxdigit && !done; ++d) {
      word.push_back(d);
      walk(depth + 1, val + bpow(depth + 1).scaled(Rat(d)), len);
      word.pop_back();
    }
  };

  for (int len = 1; len <= 200 && !done; ++len) {
    word.clear();
    walk(0, AlgNum::zero(f), len);
  }
  res.candidates_tried = tried;
  return res;
}

}  // namespace betatile
