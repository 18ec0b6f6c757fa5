#include "betatile/algnum.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace betatile {

static void check_same_field(const AlgNum& a, const AlgNum& b) {
  if (a.field().get() != b.field().get())
    fail(errc::bad_input, "mixing elements of different fields");
}

AlgNum AlgNum::from_coords(FieldPtr f, std::vector<Rat> coords) {
  size_t d = static_cast<size_t>(f->degree());
  if (coords.size() > d) fail(errc::bad_input, "too many coordinates");
  coords.resize(d, Rat(0));
  return AlgNum(std::move(f), std::move(coords));
}

AlgNum AlgNum::zero(FieldPtr f) {
  return from_coords(std::move(f), {});
}

AlgNum AlgNum::one(FieldPtr f) {
  std::vector<Rat> c(f->degree(), Rat(0));
  c[0] = 1;
  return AlgNum(std::move(f), std::move(c));
}

AlgNum AlgNum::beta(FieldPtr f) {
  int d = f->degree();
  std::vector<Rat> c(d, Rat(0));
  if (d == 1)
    c[0] = Rat(-f->minpoly().c[0]);
  else
    c[1] = 1;
  return AlgNum(std::move(f), std::move(c));
}

AlgNum AlgNum::from_rat(FieldPtr f, const Rat& q) {
  std::vector<Rat> c(f->degree(), Rat(0));
  c[0] = q;
  return AlgNum(std::move(f), std::move(c));
}

bool AlgNum::is_zero() const {
  for (const auto& v : c_)
    if (v != 0) return false;
  return true;
}

bool AlgNum::is_rational() const {
  for (size_t i = 1; i < c_.size(); ++i)
    if (c_[i] != 0) return false;
  return true;
}

bool AlgNum::has_integer_coords() const {
  for (const auto& v : c_)
    if (v.get_den() != 1) return false;
  return true;
}

Rat AlgNum::rational_value() const {
  if (!is_rational()) fail(errc::bad_input, "not a rational element");
  return c_[0];
}

AlgNum AlgNum::operator+(const AlgNum& o) const {
  check_same_field(*this, o);
  std::vector<Rat> c(c_);
  for (size_t i = 0; i < c.size(); ++i) c[i] += o.c_[i];
  return AlgNum(f_, std::move(c));
}

AlgNum AlgNum::operator-(const AlgNum& o) const {
  check_same_field(*this, o);
  std::vector<Rat> c(c_);
  for (size_t i = 0; i < c.size(); ++i) c[i] -= o.c_[i];
  return AlgNum(f_, std::move(c));
}

AlgNum AlgNum::operator-() const {
  std::vector<Rat> c(c_);
  for (auto& v : c) v = -v;
  return AlgNum(f_, std::move(c));
}

AlgNum AlgNum::operator*(const AlgNum& o) const {
  check_same_field(*this, o);
  int d = f_->degree();
  std::vector<Rat> prod(2 * d - 1, Rat(0));
  for (int i = 0; i < d; ++i) {
    if (c_[i] == 0) continue;
    for (int j = 0; j < d; ++j) {
      if (o.c_[j] == 0) continue;
      prod[i + j] += c_[i] * o.c_[j];
    }
  }
  // reduce degrees d..2d-2 with the precomputed rows
  const auto& red = f_->reduction_rows();
  std::vector<Rat> c(prod.begin(), prod.begin() + d);
  for (int k = d; k <= 2 * d - 2; ++k) {
    if (prod[k] == 0) continue;
    const auto& row = red[k - d];
    for (int j = 0; j < d; ++j) c[j] += prod[k] * row[j];
  }
  return AlgNum(f_, std::move(c));
}

AlgNum AlgNum::inverse() const {
  if (is_zero()) fail(errc::division_by_zero, "inverse of zero");
  if (is_rational()) return from_rat(f_, Rat(1) / c_[0]);
  // extended euclid: s*this + t*minpoly = 1 in Q[x]
  QPoly a(c_.begin(), c_.end());
  QPoly s, t, g;
  qp_bezout(qp_trim(a), qp_from(f_->minpoly()), s, t, g);
  if (qp_degree(g) != 0) fail(errc::bad_input, "minimal polynomial not irreducible?");
  s = qp_scale(s, Rat(1) / g[0]);
  std::vector<Rat> c(s.begin(), s.end());
  return from_coords(f_, std::move(c));
}

AlgNum AlgNum::operator/(const AlgNum& o) const {
  check_same_field(*this, o);
  if (o.is_zero()) fail(errc::division_by_zero, "division by zero");
  return *this * o.inverse();
}

AlgNum AlgNum::pow(long e) const {
  AlgNum base = *this;
  if (e < 0) {
    base = inverse();
    e = -e;
  }
  AlgNum acc = one(f_);
  while (e) {
    if (e & 1) acc = acc * base;
    base = base * base;
    e >>= 1;
  }
  return acc;
}

AlgNum AlgNum::scaled(const Rat& q) const {
  std::vector<Rat> c(c_);
  for (auto& v : c) v *= q;
  return AlgNum(f_, std::move(c));
}

bool AlgNum::operator==(const AlgNum& o) const {
  check_same_field(*this, o);
  return c_ == o.c_;
}

QInterval AlgNum::enclosure(unsigned bits) const {
  unsigned fb = bits + 32;
  for (int rounds = 0; rounds < 24; ++rounds) {
    QInterval b = f_->enclosure(fb);
    QInterval acc = QInterval::point(Rat(0));
    for (auto it = c_.rbegin(); it != c_.rend(); ++it)
      acc = acc * b + QInterval::point(*it);
    if (acc.width() <= Rat(1, Int(1) << bits)) return acc.round_out(bits + 8);
    fb *= 2;
    if (fb > (1u << 22))
      fail(errc::precision_exceeded, "enclosure refinement exceeded the precision cap");
  }
  fail(errc::precision_exceeded, "enclosure refinement did not converge");
}

Sign AlgNum::sign() const {
  if (is_zero()) return Sign::zero;
  if (is_rational()) return c_[0] > 0 ? Sign::positive : Sign::negative;
  unsigned bits = 48;
  for (int rounds = 0; rounds < 24; ++rounds) {
    QInterval iv = enclosure(bits);
    int s = iv.sign();
    if (s > 0) return Sign::positive;
    if (s < 0) return Sign::negative;
    bits *= 2;
  }
  fail(errc::precision_exceeded, "sign refinement did not converge (nonzero input?)");
}

Int AlgNum::floor() const {
  if (is_rational()) return rat_floor(c_[0]);
  unsigned bits = 48;
  for (int rounds = 0; rounds < 24; ++rounds) {
    QInterval iv = enclosure(bits);
    Int flo = rat_floor(iv.lo), fhi = rat_floor(iv.hi);
    if (flo == fhi) return flo;
    bits *= 2;
  }
  // irrational value exactly at an integer is impossible; this is a precision wall
  fail(errc::precision_exceeded, "floor refinement did not converge");
}

double AlgNum::to_double() const {
  QInterval iv = enclosure(64);
  return rat_dbl((iv.lo + iv.hi) / 2);
}

std::string AlgNum::str() const {
  std::ostringstream os;
  for (size_t i = 0; i < c_.size(); ++i) {
    if (i) os << ",";
    os << rat_str(c_[i]);
  }
  return os.str();
}

Sign sign_of(const AlgNum& a) { return a.sign(); }
Int floor_of(const AlgNum& a) { return a.floor(); }

bool in_z_inv_beta(const AlgNum& a) {
  if (a.has_integer_coords()) return true;
  const FieldPtr& f = a.field();
  int d = f->degree();
  // denominators may only carry primes dividing |p(0)|
  Int p0 = abs(f->minpoly().c[0]);
  for (const auto& v : a.coords()) {
    Int den = v.get_den();
    if (p0 == 1) {
      if (den != 1) return false;
      continue;
    }
    Int g = gcd(den, p0);
    while (g > 1) {
      while (den % g == 0) den /= g;
      g = gcd(den, p0);
    }
    if (den != 1) return false;
  }
  // iterate multiplication by beta on the fractional part; the state space is
  // finite, so a repeat without reaching zero is a definitive "no"
  AlgNum beta = AlgNum::beta(f);
  auto frac_key = [d](const AlgNum& x) {
    std::ostringstream os;
    for (int i = 0; i < d; ++i) {
      Rat fr = x.coords()[i] - Rat(rat_floor(x.coords()[i]));
      os << rat_str(fr) << ";";
    }
    return os.str();
  };
  std::set<std::string> seen;
  AlgNum cur = a;
  for (long k = 0; k < 200000; ++k) {
    if (cur.has_integer_coords()) return true;
    std::string key = frac_key(cur);
    if (!seen.insert(key).second) return false;
    cur = cur * beta;
  }
  fail(errc::iteration_budget_exceeded, "Z[1/beta] membership budget exhausted");
}

}  // namespace betatile
