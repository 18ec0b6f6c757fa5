#pragma once

#include <gmpxx.h>

#include <string>
#include <utility>
#include <vector>

#include "betatile/errors.hpp"

namespace betatile {

using Int = mpz_class;
using Rat = mpq_class;

inline Int rat_floor(const Rat& q) {
  Int f;
  mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return f;
}

inline int rat_sign(const Rat& q) { return sgn(q); }

inline Rat rat_abs(const Rat& q) { return q < 0 ? Rat(-q) : q; }

// mpq_class(a, b) does not reduce; this does.
inline Rat make_rat(const Int& num, const Int& den) {
  Rat q(num, den);
  q.canonicalize();
  return q;
}

Rat parse_rat(const std::string& s);      // "3/4", "-2", "0.25"
std::string rat_str(const Rat& q);        // canonical "p/q" or "p"
double rat_dbl(const Rat& q);

// Round q toward -inf (down) or +inf (up) to a dyadic with ~bits fractional bits.
Rat dyadic_round(const Rat& q, unsigned bits, bool up);

// Closed rational interval [lo, hi].  Endpoint arithmetic is exact; round_out
// trims endpoint bit-size after long products.
struct QInterval {
  Rat lo, hi;

  QInterval() : lo(0), hi(0) {}
  QInterval(Rat l, Rat h) : lo(std::move(l)), hi(std::move(h)) {}
  static QInterval point(const Rat& q) { return {q, q}; }

  Rat width() const { return hi - lo; }
  bool contains_zero() const { return lo <= 0 && hi >= 0; }
  int sign() const {  // +1/-1 if interval is strictly one-signed, else 0
    if (lo > 0) return 1;
    if (hi < 0) return -1;
    return 0;
  }
  Rat mag_hi() const {  // upper bound on |x| over the interval
    Rat a = rat_abs(lo), b = rat_abs(hi);
    return a > b ? a : b;
  }
  Rat mag_lo() const {  // lower bound on |x| over the interval
    if (contains_zero()) return Rat(0);
    Rat a = rat_abs(lo), b = rat_abs(hi);
    return a < b ? a : b;
  }

  QInterval operator+(const QInterval& o) const { return {lo + o.lo, hi + o.hi}; }
  QInterval operator-(const QInterval& o) const { return {lo - o.hi, hi - o.lo}; }
  QInterval operator*(const QInterval& o) const {
    Rat a = lo * o.lo, b = lo * o.hi, c = hi * o.lo, d = hi * o.hi;
    Rat mn = a, mx = a;
    for (const Rat* p : {&b, &c, &d}) {
      if (*p < mn) mn = *p;
      if (*p > mx) mx = *p;
    }
    return {mn, mx};
  }
  QInterval scaled(const Rat& c) const {
    return c >= 0 ? QInterval{lo * c, hi * c} : QInterval{hi * c, lo * c};
  }
  QInterval round_out(unsigned bits) const {
    return {dyadic_round(lo, bits, false), dyadic_round(hi, bits, true)};
  }
};

}  // namespace betatile
