#pragma once

#include <optional>
#include <string>
#include <vector>

#include "betatile/rat.hpp"

namespace betatile {

// Monic polynomial with integer coefficients, constant term first.
struct IntPolynomial {
  std::vector<Int> c;  // c[0] + c[1] x + ... + c[n] x^n, c[n] == 1

  IntPolynomial() = default;
  explicit IntPolynomial(std::vector<Int> coeffs);

  int degree() const { return static_cast<int>(c.size()) - 1; }
  bool is_monic() const { return !c.empty() && c.back() == 1; }
  const Int& constant() const { return c.front(); }

  Rat eval(const Rat& x) const;
  Int eval_int(const Int& x) const;
  QInterval eval(const QInterval& x) const;

  IntPolynomial reversed() const;  // x^n p(1/x); requires c[0] = +-1 to stay monic

  bool operator==(const IntPolynomial& o) const { return c == o.c; }

  std::string text() const;  // "x^2-3x+1"
  std::string coeff_list() const;  // "1,-3,1"

  static IntPolynomial parse_coeffs(const std::string& s);  // "1,-3,1" constant first
  static IntPolynomial parse_text(const std::string& s);    // "x^2-3x+1"
  static IntPolynomial parse(const std::string& s);         // either form
};

// Dense rational polynomials, constant first.  Used for Sturm chains, Bezout
// identities and the characteristic-polynomial plumbing.
using QPoly = std::vector<Rat>;

int qp_degree(const QPoly& p);  // -1 for zero polynomial
QPoly qp_trim(QPoly p);
QPoly qp_from(const IntPolynomial& p);
Rat qp_eval(const QPoly& p, const Rat& x);
QPoly qp_add(const QPoly& a, const QPoly& b);
QPoly qp_sub(const QPoly& a, const QPoly& b);
QPoly qp_mul(const QPoly& a, const QPoly& b);
QPoly qp_scale(const QPoly& a, const Rat& c);
QPoly qp_derivative(const QPoly& p);
// division with remainder: a = q*b + r, deg r < deg b
void qp_divmod(const QPoly& a, const QPoly& b, QPoly& q, QPoly& r);
QPoly qp_gcd(QPoly a, QPoly b);  // monic gcd
// extended euclid: s*a + t*b = g (monic gcd)
void qp_bezout(const QPoly& a, const QPoly& b, QPoly& s, QPoly& t, QPoly& g);
std::string qp_text(const QPoly& p);

// Sturm chain of a squarefree rational polynomial.
class SturmChain {
public:
  explicit SturmChain(const QPoly& p);
  // number of real roots in (a, b], a < b
  int count_in(const Rat& a, const Rat& b) const;
  int count_gt(const Rat& a) const;   // roots in (a, +inf)
  int count_lt(const Rat& a) const;   // roots in (-inf, a)
  int count_all() const;

private:
  std::vector<QPoly> chain_;
  int changes_at(const Rat& x) const;
  int changes_at_pinf() const;
  int changes_at_minf() const;
};

// Cauchy bound: all complex roots of monic p satisfy |z| <= 1 + max|c_i|.
Rat cauchy_root_bound(const IntPolynomial& p);

// Bisect [lo, hi] with p(lo)*p(hi) < 0 down to width <= target.
QInterval bisect_root(const IntPolynomial& p, Rat lo, Rat hi, const Rat& target_width);

// Exact division of monic integer polynomials; returns std::nullopt when the
// remainder is nonzero.
std::optional<IntPolynomial> int_poly_div(const IntPolynomial& num, const IntPolynomial& den);

// Irreducibility over Q for monic integer polynomials (degree <= 12): small
// prime shortcut, then rational-root elimination, then a Mignotte-bounded
// factor search.  Throws errc::degree_too_large if the search would explode.
bool is_irreducible(const IntPolynomial& p);

// Full factorization into monic irreducible factors (with multiplicity).
std::vector<IntPolynomial> factor_monic(const IntPolynomial& p);

// Characteristic polynomial of a square rational matrix (Faddeev-LeVerrier),
// returned constant-first; always monic.
QPoly char_poly(const std::vector<std::vector<Rat>>& a);

}  // namespace betatile
