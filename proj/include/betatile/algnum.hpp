#pragma once

#include <string>
#include <vector>

#include "betatile/pisot.hpp"

namespace betatile {

// Element of Q(beta) in the power basis 1, beta, ..., beta^(d-1).  Canonical
// form (reduced mod the minimal polynomial), so equality is coordinate-wise.
class AlgNum {
public:
  AlgNum() = default;

  static AlgNum zero(FieldPtr f);
  static AlgNum one(FieldPtr f);
  static AlgNum beta(FieldPtr f);
  static AlgNum from_rat(FieldPtr f, const Rat& q);
  static AlgNum from_coords(FieldPtr f, std::vector<Rat> coords);

  const FieldPtr& field() const { return f_; }
  const std::vector<Rat>& coords() const { return c_; }

  bool is_zero() const;
  bool is_rational() const;        // coords 1..d-1 all zero
  bool has_integer_coords() const; // member of Z[beta]
  Rat rational_value() const;      // requires is_rational()

  AlgNum operator+(const AlgNum& o) const;
  AlgNum operator-(const AlgNum& o) const;
  AlgNum operator-() const;
  AlgNum operator*(const AlgNum& o) const;
  AlgNum operator/(const AlgNum& o) const;  // throws division_by_zero
  AlgNum inverse() const;
  AlgNum pow(long e) const;  // negative exponents allowed

  AlgNum& operator+=(const AlgNum& o) { return *this = *this + o; }
  AlgNum& operator-=(const AlgNum& o) { return *this = *this - o; }
  AlgNum& operator*=(const AlgNum& o) { return *this = *this * o; }

  AlgNum scaled(const Rat& q) const;

  bool operator==(const AlgNum& o) const;
  bool operator!=(const AlgNum& o) const { return !(*this == o); }
  bool operator<(const AlgNum& o) const { return (*this - o).sign() == Sign::negative; }
  bool operator<=(const AlgNum& o) const { return (*this - o).sign() != Sign::positive; }
  bool operator>(const AlgNum& o) const { return o < *this; }
  bool operator>=(const AlgNum& o) const { return o <= *this; }

  // Exact sign of the real-embedding value at the root beta > 1, decided by
  // refining the beta enclosure until the evaluated interval excludes zero.
  Sign sign() const;
  Int floor() const;  // unique n with n <= *this < n+1
  QInterval enclosure(unsigned bits) const;  // certified, width <= 2^-bits
  double to_double() const;

  std::string str() const;  // canonical "a0,a1,..." coordinate string
  std::string key() const { return str(); }  // hash/map key

private:
  AlgNum(FieldPtr f, std::vector<Rat> c) : f_(std::move(f)), c_(std::move(c)) {}
  FieldPtr f_;
  std::vector<Rat> c_;
};

Sign sign_of(const AlgNum& a);
Int floor_of(const AlgNum& a);

// Membership in Z[1/beta]: multiply by beta (an integer matrix on the power
// basis) and watch the fractional part, which lives in a finite group; a
// repeat without reaching zero is a certified "no".
bool in_z_inv_beta(const AlgNum& a);

}  // namespace betatile
