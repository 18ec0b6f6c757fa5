#include "betatile/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <sstream>

namespace betatile {

// ---------------------------------------------------------------- rationals

Rat parse_rat(const std::string& s) {
  std::string t;
  for (char ch : s)
    if (!std::isspace(static_cast<unsigned char>(ch))) t.push_back(ch);
  if (t.empty()) fail(errc::bad_input, "empty rational");
  auto slash = t.find('/');
  try {
    if (slash != std::string::npos) {
      Int num(t.substr(0, slash)), den(t.substr(slash + 1));
      if (den == 0) fail(errc::bad_input, "zero denominator");
      Rat q(num, den);
      q.canonicalize();
      return q;
    }
    auto dot = t.find('.');
    if (dot != std::string::npos) {
      std::string ip = t.substr(0, dot), fp = t.substr(dot + 1);
      if (ip.empty() || ip == "-" || ip == "+") ip += "0";
      for (char ch : fp)
        if (!std::isdigit(static_cast<unsigned char>(ch))) fail(errc::bad_input, "bad decimal: " + s);
      Int scale = 1;
      for (size_t i = 0; i < fp.size(); ++i) scale *= 10;
      Int ipart(ip);
      Int fpart = fp.empty() ? Int(0) : Int(fp);
      bool neg = !t.empty() && t[0] == '-';
      Int num = ipart * scale + (neg ? -fpart : fpart);
      Rat q(num, scale);
      q.canonicalize();
      return q;
    }
    Rat q{Int(t)};
    return q;
  } catch (const std::invalid_argument&) {
    fail(errc::bad_input, "bad rational: " + s);
  }
}

std::string rat_str(const Rat& q) {
  Rat c(q);
  c.canonicalize();
  if (c.get_den() == 1) return c.get_num().get_str();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

double rat_dbl(const Rat& q) { return q.get_d(); }

Rat dyadic_round(const Rat& q, unsigned bits, bool up) {
  Int scaled;
  Int num = q.get_num() << bits;
  if (up)
    mpz_cdiv_q(scaled.get_mpz_t(), num.get_mpz_t(), q.get_den_mpz_t());
  else
    mpz_fdiv_q(scaled.get_mpz_t(), num.get_mpz_t(), q.get_den_mpz_t());
  Rat r(scaled, Int(1) << bits);
  r.canonicalize();
  return r;
}

// ------------------------------------------------------------ IntPolynomial

IntPolynomial::IntPolynomial(std::vector<Int> coeffs) : c(std::move(coeffs)) {
  while (c.size() > 1 && c.back() == 0) c.pop_back();
  if (c.empty()) fail(errc::bad_input, "empty polynomial");
}

Rat IntPolynomial::eval(const Rat& x) const {
  Rat acc(0);
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + Rat(*it);
  return acc;
}

Int IntPolynomial::eval_int(const Int& x) const {
  Int acc(0);
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

QInterval IntPolynomial::eval(const QInterval& x) const {
  QInterval acc = QInterval::point(Rat(0));
  for (auto it = c.rbegin(); it != c.rend(); ++it)
    acc = acc * x + QInterval::point(Rat(*it));
  return acc;
}

IntPolynomial IntPolynomial::reversed() const {
  std::vector<Int> r(c.rbegin(), c.rend());
  if (abs(r.back()) != 1) fail(errc::bad_input, "reversal is not monic");
  if (r.back() == -1)
    for (auto& v : r) v = -v;
  return IntPolynomial(std::move(r));
}

std::string IntPolynomial::text() const {
  std::ostringstream os;
  bool first = true;
  for (int k = degree(); k >= 0; --k) {
    const Int& a = c[k];
    if (a == 0) continue;
    Int mag = abs(a);
    if (first) {
      if (a < 0) os << "-";
      first = false;
    } else {
      os << (a < 0 ? "-" : "+");
    }
    if (k == 0 || mag != 1) os << mag.get_str();
    if (k >= 1) {
      os << "x";
      if (k >= 2) os << "^" << k;
    }
  }
  if (first) os << "0";
  return os.str();
}

std::string IntPolynomial::coeff_list() const {
  std::ostringstream os;
  for (size_t i = 0; i < c.size(); ++i) {
    if (i) os << ",";
    os << c[i].get_str();
  }
  return os.str();
}

IntPolynomial IntPolynomial::parse_coeffs(const std::string& s) {
  std::vector<Int> v;
  std::string cur;
  auto flush = [&] {
    if (cur.empty()) fail(errc::bad_input, "bad coefficient list: " + s);
    v.emplace_back(cur);
    cur.clear();
  };
  for (char ch : s) {
    if (ch == ',') { flush(); continue; }
    if (!std::isspace(static_cast<unsigned char>(ch))) cur.push_back(ch);
  }
  flush();
  return IntPolynomial(std::move(v));
}

IntPolynomial IntPolynomial::parse_text(const std::string& s) {
  // terms like "x^2", "-3x", "+1"; coefficients are integers
  std::map<int, Int> terms;
  size_t i = 0;
  std::string t;
  for (char ch : s)
    if (!std::isspace(static_cast<unsigned char>(ch))) t.push_back(ch);
  if (t.empty()) fail(errc::bad_input, "empty polynomial");
  while (i < t.size()) {
    int sign = 1;
    if (t[i] == '+') { ++i; }
    else if (t[i] == '-') { sign = -1; ++i; }
    std::string digits;
    while (i < t.size() && std::isdigit(static_cast<unsigned char>(t[i]))) digits.push_back(t[i++]);
    Int coef = digits.empty() ? Int(1) : Int(digits);
    coef *= sign;
    int exp = 0;
    if (i < t.size() && (t[i] == 'x' || t[i] == 'X')) {
      ++i;
      exp = 1;
      if (i < t.size() && t[i] == '^') {
        ++i;
        std::string e;
        while (i < t.size() && std::isdigit(static_cast<unsigned char>(t[i]))) e.push_back(t[i++]);
        if (e.empty()) fail(errc::bad_input, "bad exponent in: " + s);
        exp = std::stoi(e);
      }
    } else if (digits.empty()) {
      fail(errc::bad_input, "bad term in: " + s);
    }
    terms[exp] += coef;
  }
  int deg = terms.rbegin()->first;
  std::vector<Int> v(deg + 1, Int(0));
  for (auto& [e, a] : terms) v[e] = a;
  return IntPolynomial(std::move(v));
}

IntPolynomial IntPolynomial::parse(const std::string& s) {
  if (s.find('x') != std::string::npos || s.find('X') != std::string::npos)
    return parse_text(s);
  return parse_coeffs(s);
}

// ------------------------------------------------------------------- QPoly

int qp_degree(const QPoly& p) {
  for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i)
    if (p[i] != 0) return i;
  return -1;
}

QPoly qp_trim(QPoly p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
  return p;
}

QPoly qp_from(const IntPolynomial& p) {
  QPoly q(p.c.size());
  for (size_t i = 0; i < p.c.size(); ++i) q[i] = Rat(p.c[i]);
  return q;
}

Rat qp_eval(const QPoly& p, const Rat& x) {
  Rat acc(0);
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

QPoly qp_add(const QPoly& a, const QPoly& b) {
  QPoly r(std::max(a.size(), b.size()), Rat(0));
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  return qp_trim(std::move(r));
}

QPoly qp_sub(const QPoly& a, const QPoly& b) {
  QPoly r(std::max(a.size(), b.size()), Rat(0));
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  return qp_trim(std::move(r));
}

QPoly qp_mul(const QPoly& a, const QPoly& b) {
  if (a.empty() || b.empty()) return {};
  QPoly r(a.size() + b.size() - 1, Rat(0));
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  return qp_trim(std::move(r));
}

QPoly qp_scale(const QPoly& a, const Rat& c) {
  QPoly r(a);
  for (auto& v : r) v *= c;
  return qp_trim(std::move(r));
}

QPoly qp_derivative(const QPoly& p) {
  QPoly r;
  for (size_t i = 1; i < p.size(); ++i) r.push_back(p[i] * Rat(static_cast<long>(i)));
  return qp_trim(std::move(r));
}

void qp_divmod(const QPoly& a, const QPoly& b, QPoly& q, QPoly& r) {
  int db = qp_degree(b);
  if (db < 0) fail(errc::division_by_zero, "polynomial division by zero");
  r = qp_trim(a);
  int da = qp_degree(r);
  q.assign(std::max(0, da - db + 1), Rat(0));
  while (da >= db) {
    Rat f = r[da] / b[db];
    q[da - db] = f;
    for (int i = 0; i <= db; ++i) r[da - db + i] -= f * b[i];
    r = qp_trim(std::move(r));
    da = qp_degree(r);
  }
  q = qp_trim(std::move(q));
}

QPoly qp_gcd(QPoly a, QPoly b) {
  a = qp_trim(std::move(a));
  b = qp_trim(std::move(b));
  while (qp_degree(b) >= 0) {
    QPoly q, r;
    qp_divmod(a, b, q, r);
    a = std::move(b);
    b = std::move(r);
  }
  int d = qp_degree(a);
  if (d >= 0 && a[d] != 1) a = qp_scale(a, Rat(1) / a[d]);
  return a;
}

void qp_bezout(const QPoly& a, const QPoly& b, QPoly& s, QPoly& t, QPoly& g) {
  QPoly r0 = qp_trim(a), r1 = qp_trim(b);
  QPoly s0{Rat(1)}, s1{}, t0{}, t1{Rat(1)};
  while (qp_degree(r1) >= 0) {
    QPoly q, r;
    qp_divmod(r0, r1, q, r);
    QPoly s2 = qp_sub(s0, qp_mul(q, s1));
    QPoly t2 = qp_sub(t0, qp_mul(q, t1));
    r0 = std::move(r1); r1 = std::move(r);
    s0 = std::move(s1); s1 = std::move(s2);
    t0 = std::move(t1); t1 = std::move(t2);
  }
  int d = qp_degree(r0);
  Rat lead = d >= 0 ? r0[d] : Rat(1);
  g = qp_scale(r0, Rat(1) / lead);
  s = qp_scale(s0, Rat(1) / lead);
  t = qp_scale(t0, Rat(1) / lead);
}

std::string qp_text(const QPoly& p) {
  std::ostringstream os;
  int d = qp_degree(p);
  if (d < 0) return "0";
  bool first = true;
  for (int k = d; k >= 0; --k) {
    if (p[k] == 0) continue;
    Rat mag = rat_abs(p[k]);
    if (first) { if (p[k] < 0) os << "-"; first = false; }
    else os << (p[k] < 0 ? "-" : "+");
    if (k == 0 || mag != 1) os << rat_str(mag);
    if (k >= 1) { os << "x"; if (k >= 2) os << "^" << k; }
  }
  return os.str();
}

// ------------------------------------------------------------------- Sturm

SturmChain::SturmChain(const QPoly& p) {
  QPoly f0 = qp_trim(p);
  QPoly g = qp_gcd(f0, qp_derivative(f0));
  if (qp_degree(g) > 0) {  // make squarefree
    QPoly q, r;
    qp_divmod(f0, g, q, r);
    f0 = std::move(q);
  }
  chain_.push_back(f0);
  QPoly f1 = qp_derivative(f0);
  while (qp_degree(f1) >= 0) {
    chain_.push_back(f1);
    QPoly q, r;
    qp_divmod(chain_[chain_.size() - 2], f1, q, r);
    for (auto& v : r) v = -v;
    f1 = qp_trim(std::move(r));
  }
}

static int seq_changes(const std::vector<int>& signs) {
  int ch = 0, prev = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++ch;
    prev = s;
  }
  return ch;
}

int SturmChain::changes_at(const Rat& x) const {
  std::vector<int> signs;
  signs.reserve(chain_.size());
  for (const auto& f : chain_) signs.push_back(rat_sign(qp_eval(f, x)));
  return seq_changes(signs);
}

int SturmChain::changes_at_pinf() const {
  std::vector<int> signs;
  for (const auto& f : chain_) {
    int d = qp_degree(f);
    signs.push_back(d < 0 ? 0 : rat_sign(f[d]));
  }
  return seq_changes(signs);
}

int SturmChain::changes_at_minf() const {
  std::vector<int> signs;
  for (const auto& f : chain_) {
    int d = qp_degree(f);
    if (d < 0) { signs.push_back(0); continue; }
    int s = rat_sign(f[d]);
    signs.push_back(d % 2 ? -s : s);
  }
  return seq_changes(signs);
}

int SturmChain::count_in(const Rat& a, const Rat& b) const {
  return changes_at(a) - changes_at(b);
}
int SturmChain::count_gt(const Rat& a) const { return changes_at(a) - changes_at_pinf(); }
int SturmChain::count_lt(const Rat& a) const {
  // roots in (-inf, a): total minus roots in [a, inf) = changes(-inf) - changes(a)
  // minus a possible root exactly at a; Sturm counts (x, y], so (-inf, a] then
  // subtract the root at a when f(a) == 0.
  int upto_a = changes_at_minf() - changes_at(a);
  if (qp_eval(chain_[0], a) == 0) --upto_a;
  return upto_a;
}
int SturmChain::count_all() const { return changes_at_minf() - changes_at_pinf(); }

Rat cauchy_root_bound(const IntPolynomial& p) {
  Int mx(0);
  for (int i = 0; i < p.degree(); ++i) mx = std::max(mx, Int(abs(p.c[i])));
  return Rat(mx + 1);
}

QInterval bisect_root(const IntPolynomial& p, Rat lo, Rat hi, const Rat& target_width) {
  int slo = rat_sign(p.eval(lo));
  int shi = rat_sign(p.eval(hi));
  if (slo == 0 || shi == 0 || slo == shi)
    fail(errc::bad_input, "bisect_root requires a sign change");
  while (hi - lo > target_width) {
    Rat mid = (lo + hi) / 2;
    int sm = rat_sign(p.eval(mid));
    if (sm == 0) {  // rational root: cannot happen for irreducible deg >= 2
      Rat eps = (hi - lo) / 4;
      lo = mid - eps;
      hi = mid + eps;
      break;
    }
    if (sm == slo) lo = mid; else hi = mid;
  }
  return {lo, hi};
}

// ----------------------------------------------------------- irreducibility

namespace {

// polynomial arithmetic over F_q with q < 64, dense uint32 coefficients
using FqPoly = std::vector<uint32_t>;

FqPoly fq_trim(FqPoly p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
  return p;
}

FqPoly fq_mod(const IntPolynomial& p, uint32_t q) {
  FqPoly r(p.c.size());
  for (size_t i = 0; i < p.c.size(); ++i) {
    Int m = p.c[i] % q;
    if (m < 0) m += q;
    r[i] = static_cast<uint32_t>(m.get_ui());
  }
  return fq_trim(std::move(r));
}

// remainder of a by monic-izable b over F_q
FqPoly fq_rem(FqPoly a, const FqPoly& b, uint32_t q) {
  auto inv = [&](uint32_t x) {  // Fermat inverse, q prime
    uint32_t e = q - 2, base = x, acc = 1;
    while (e) {
      if (e & 1) acc = static_cast<uint32_t>((uint64_t)acc * base % q);
      base = static_cast<uint32_t>((uint64_t)base * base % q);
      e >>= 1;
    }
    return acc;
  };
  a = fq_trim(std::move(a));
  if (b.empty()) return a;
  uint32_t lead_inv = inv(b.back());
  while (a.size() >= b.size()) {
    uint32_t f = static_cast<uint32_t>((uint64_t)a.back() * lead_inv % q);
    size_t off = a.size() - b.size();
    for (size_t i = 0; i < b.size(); ++i) {
      uint64_t sub = (uint64_t)f * b[i] % q;
      a[off + i] = static_cast<uint32_t>((a[off + i] + q - sub) % q);
    }
    a = fq_trim(std::move(a));
    if (a.empty()) break;
  }
  return a;
}

// is p irreducible over F_q?  Brute trial division by monic polynomials of
// degree <= deg/2; the candidate count q^k stays tiny for our degree cap.
bool fq_irreducible(const FqPoly& p, uint32_t q) {
  int n = static_cast<int>(p.size()) - 1;
  if (n <= 0) return false;
  if (n == 1) return true;
  for (int k = 1; 2 * k <= n; ++k) {
    uint64_t count = 1;
    for (int i = 0; i < k; ++i) {
      count *= q;
      if (count > 2'000'000) return false;  // too costly; caller falls back
    }
    std::vector<uint32_t> g(k + 1, 0);
    g[k] = 1;
    for (uint64_t code = 0; code < count; ++code) {
      uint64_t c = code;
      for (int i = 0; i < k; ++i) { g[i] = static_cast<uint32_t>(c % q); c /= q; }
      if (fq_rem(p, g, q).empty()) return false;
    }
  }
  return true;
}

std::vector<Int> divisors_of(Int n) {
  n = abs(n);
  std::vector<Int> ds;
  for (Int i = 1; i * i <= n; ++i) {
    if (n % i == 0) {
      ds.push_back(i);
      if (i * i != n) ds.push_back(n / i);
    }
  }
  return ds;
}

// Mignotte-style bound on coefficient i of a monic degree-k factor of p.
Int mignotte_bound(const IntPolynomial& p, int k, int i) {
  Int norm2 = 0;
  for (const auto& a : p.c) norm2 += a * a;
  Int norm = sqrt(norm2) + 1;  // ceil of l2 norm
  auto binom = [](int n, int r) {
    if (r < 0 || r > n) return Int(0);
    Int acc = 1;
    for (int j = 0; j < r; ++j) acc = acc * (n - j) / (j + 1);
    return acc;
  };
  return binom(k - 1, i) * norm + binom(k - 1, i - 1);
}

// search for a monic integer factor of degree exactly k; returns it if found
std::optional<IntPolynomial> find_factor_deg_k(const IntPolynomial& p, int k) {
  Int p0 = p.constant();
  Int p_at_1 = p.eval_int(1), p_at_m1 = p.eval_int(-1);
  std::vector<Int> const_candidates;
  for (const Int& d : divisors_of(p0)) {
    const_candidates.push_back(d);
    const_candidates.push_back(-d);
  }
  std::sort(const_candidates.begin(), const_candidates.end());
  std::vector<Int> bounds(k);
  double est = 1.0;
  for (int i = 1; i < k; ++i) {
    bounds[i] = mignotte_bound(p, k, i);
    est *= 2.0 * bounds[i].get_d() + 1.0;
  }
  est *= static_cast<double>(const_candidates.size());
  if (est > 5e7) fail(errc::degree_too_large, "factor search space too large");

  std::vector<Int> g(k + 1);
  g[k] = 1;
  // recursive enumeration over interior coefficients
  std::function<std::optional<IntPolynomial>(int)> rec = [&](int idx) -> std::optional<IntPolynomial> {
    if (idx == k) {
      IntPolynomial cand(std::vector<Int>(g.begin(), g.end()));
      // divisibility pruning at x = 1, -1
      Int g1 = cand.eval_int(1);
      if (g1 == 0) { if (p_at_1 != 0) return std::nullopt; }
      else if (p_at_1 % g1 != 0) return std::nullopt;
      Int gm1 = cand.eval_int(-1);
      if (gm1 == 0) { if (p_at_m1 != 0) return std::nullopt; }
      else if (p_at_m1 % gm1 != 0) return std::nullopt;
      if (int_poly_div(p, cand)) return cand;
      return std::nullopt;
    }
    for (Int v = -bounds[idx]; v <= bounds[idx]; ++v) {
      g[idx] = v;
      if (auto f = rec(idx + 1)) return f;
    }
    return std::nullopt;
  };
  for (const Int& c0 : const_candidates) {
    g[0] = c0;
    if (k == 1) {
      IntPolynomial cand(std::vector<Int>{g[0], Int(1)});
      if (int_poly_div(p, cand)) return cand;
    } else {
      if (auto f = rec(1)) return f;
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<IntPolynomial> int_poly_div(const IntPolynomial& num, const IntPolynomial& den) {
  int dn = num.degree(), dd = den.degree();
  if (dd > dn) return std::nullopt;
  std::vector<Int> r = num.c, q(dn - dd + 1, Int(0));
  for (int i = dn - dd; i >= 0; --i) {
    Int f = r[dd + i];  // den monic
    q[i] = f;
    if (f == 0) continue;
    for (int j = 0; j <= dd; ++j) r[i + j] -= f * den.c[j];
  }
  for (int j = 0; j < dd; ++j)
    if (r[j] != 0) return std::nullopt;
  return IntPolynomial(std::move(q));
}

bool is_irreducible(const IntPolynomial& p) {
  if (!p.is_monic()) fail(errc::not_monic, "irreducibility test needs a monic polynomial");
  int n = p.degree();
  if (n == 1) return true;
  if (p.constant() == 0) return false;  // x divides
  // repeated-factor shortcut
  QPoly pq = qp_from(p);
  if (qp_degree(qp_gcd(pq, qp_derivative(pq))) > 0) return false;
  // small-prime certificate: irreducible mod q implies irreducible over Q
  for (uint32_t q : {2u, 3u, 5u, 7u, 11u, 13u}) {
    FqPoly pm = fq_mod(p, q);
    if (static_cast<int>(pm.size()) - 1 != n) continue;  // degree must survive
    if (fq_irreducible(pm, q)) return true;
  }
  // integer roots (monic: rational roots are integer divisors of the constant)
  for (const Int& d : divisors_of(p.constant()))
    for (int s : {1, -1})
      if (p.eval_int(s * d) == 0) return false;
  for (int k = 2; 2 * k <= n; ++k)
    if (find_factor_deg_k(p, k)) return false;
  return true;
}

std::vector<IntPolynomial> factor_monic(const IntPolynomial& p) {
  std::vector<IntPolynomial> out, work{p};
  while (!work.empty()) {
    IntPolynomial cur = work.back();
    work.pop_back();
    int n = cur.degree();
    if (n == 1) { out.push_back(cur); continue; }
    if (cur.constant() == 0) {
      // split off x
      out.push_back(IntPolynomial(std::vector<Int>{Int(0), Int(1)}));
      std::vector<Int> rest(cur.c.begin() + 1, cur.c.end());
      if (rest.size() >= 2) work.push_back(IntPolynomial(std::move(rest)));
      else out.push_back(IntPolynomial(std::vector<Int>{rest[0], Int(1)}));  // unreachable: monic
      continue;
    }
    bool split = false;
    for (int k = 1; 2 * k <= n && !split; ++k) {
      if (auto f = find_factor_deg_k(cur, k)) {
        auto rest = int_poly_div(cur, *f);
        work.push_back(*f);
        work.push_back(*rest);
        split = true;
      }
    }
    if (!split) out.push_back(cur);
  }
  std::sort(out.begin(), out.end(), [](const IntPolynomial& a, const IntPolynomial& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    return a.coeff_list() < b.coeff_list();
  });
  return out;
}

QPoly char_poly(const std::vector<std::vector<Rat>>& a) {
  // Faddeev-LeVerrier: M_1 = A, c_{n-1} = -tr(M_1); M_{k+1} = A(M_k + c_{n-k} I)
  size_t n = a.size();
  std::vector<std::vector<Rat>> m(n, std::vector<Rat>(n, Rat(0)));
  for (size_t i = 0; i < n; ++i) m[i][i] = 1;
  QPoly coef(n + 1, Rat(0));
  coef[n] = 1;
  std::vector<std::vector<Rat>> am(n, std::vector<Rat>(n));
  for (size_t k = 1; k <= n; ++k) {
    // am = a * m
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) {
        Rat s(0);
        for (size_t t = 0; t < n; ++t) s += a[i][t] * m[t][j];
        am[i][j] = s;
      }
    Rat tr(0);
    for (size_t i = 0; i < n; ++i) tr += am[i][i];
    Rat ck = -tr / Rat(static_cast<long>(k));
    coef[n - k] = ck;
    m = am;
    for (size_t i = 0; i < n; ++i) m[i][i] += ck;
  }
  return coef;
}

}  // namespace betatile
