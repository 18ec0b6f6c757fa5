#pragma once

#include <memory>
#include <mutex>
#include <string>

#include "betatile/polynomial.hpp"

namespace betatile {

enum class Sign { negative = -1, zero = 0, positive = 1 };

// A verified Pisot number: monic irreducible minimal polynomial with exactly
// one real root beta > 1 and a certified rational bound theta_max < 1 on the
// moduli of all other roots.  Immutable except for the internally synchronized
// enclosure cache, so instances can be shared across threads.
class PisotField {
public:
  const IntPolynomial& minpoly() const { return minpoly_; }
  int degree() const { return minpoly_.degree(); }
  const Rat& theta_max() const { return theta_max_; }

  // Rational enclosure of beta with width <= 2^-bits (monotone cache).
  QInterval enclosure(unsigned bits) const;
  double beta_double() const;

  // Reduction rows: beta^(degree+k) in the power basis, k = 0..degree-2.
  const std::vector<std::vector<Rat>>& reduction_rows() const { return red_; }

  std::string describe() const;

private:
  friend std::shared_ptr<const PisotField> verify_pisot(const IntPolynomial&);
  PisotField(IntPolynomial p, QInterval enc, Rat theta);

  IntPolynomial minpoly_;
  Rat theta_max_;
  std::vector<std::vector<Rat>> red_;
  mutable std::mutex mx_;
  mutable QInterval enc_;       // p(enc_.lo) and p(enc_.hi) have opposite signs
  mutable unsigned enc_bits_;
};

using FieldPtr = std::shared_ptr<const PisotField>;

// Certify that the largest real root of p is a Pisot number.  Throws
// betatile::error with code not_monic / degree_too_large / not_irreducible /
// not_pisot; the not_pisot message carries the certified witness (a real
// conjugate enclosure, a unit-circle root, a product bound, or an
// uncertifiable-modulus refusal).
FieldPtr verify_pisot(const IntPolynomial& p);

}  // namespace betatile
