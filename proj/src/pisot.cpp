#include "betatile/pisot.hpp"

#include <algorithm>
#include <sstream>

#include "betatile/algnum.hpp"

namespace betatile {

PisotField::PisotField(IntPolynomial p, QInterval enc, Rat theta)
    : minpoly_(std::move(p)), theta_max_(std::move(theta)), enc_(std::move(enc)), enc_bits_(0) {
  // reduction rows: beta^(d+k) = sum_j red_[k][j] beta^j
  int d = minpoly_.degree();
  std::vector<Rat> cur(d);  // beta^d
  for (int j = 0; j < d; ++j) cur[j] = Rat(-minpoly_.c[j]);
  for (int k = 0; k <= d - 2; ++k) {
    red_.push_back(cur);
    // multiply by beta: shift, then reduce the overflowing beta^d term
    std::vector<Rat> nxt(d, Rat(0));
    Rat top = cur[d - 1];
    for (int j = d - 1; j >= 1; --j) nxt[j] = cur[j - 1];
    nxt[0] = 0;
    if (top != 0)
      for (int j = 0; j < d; ++j) nxt[j] += top * Rat(-minpoly_.c[j]);
    cur = std::move(nxt);
  }
}

QInterval PisotField::enclosure(unsigned bits) const {
  std::lock_guard<std::mutex> lk(mx_);
  if (enc_bits_ >= bits) return enc_;
  if (degree() == 1) {  // beta is the integer -c0; exact point interval
    enc_ = QInterval::point(Rat(-minpoly_.c[0]));
    enc_bits_ = ~0u;
    return enc_;
  }
  Rat target = Rat(1, Int(1) << std::min(bits, 8u * 1024u * 16u));
  int slo = rat_sign(minpoly_.eval(enc_.lo));
  Rat lo = enc_.lo, hi = enc_.hi;
  while (hi - lo > target) {
    Rat mid = (lo + hi) / 2;
    int sm = rat_sign(minpoly_.eval(mid));
    if (sm == 0) fail(errc::bad_input, "rational root in irreducible polynomial");
    if (sm == slo) lo = mid; else hi = mid;
  }
  enc_ = {lo, hi};
  enc_bits_ = bits;
  return enc_;
}

double PisotField::beta_double() const {
  QInterval e = enclosure(64);
  return rat_dbl((e.lo + e.hi) / 2);
}

std::string PisotField::describe() const {
  std::ostringstream os;
  os << minpoly_.text() << " (degree " << degree() << ", beta ~ " << beta_double() << ")";
  return os.str();
}

namespace {

// p self-reciprocal (p == reverse(p)) of even degree 2k: p(z) = z^k P(z + 1/z).
// Real roots of P in (-2, 2) correspond to non-real unit-circle roots of p.
QPoly reciprocal_transform(const IntPolynomial& p) {
  int k = p.degree() / 2;
  // V_j(w) = z^j + z^-j: V_0 = 2, V_1 = w, V_{j+1} = w V_j - V_{j-1}
  std::vector<QPoly> v(k + 1);
  v[0] = {Rat(2)};
  if (k >= 1) v[1] = {Rat(0), Rat(1)};
  for (int j = 2; j <= k; ++j) v[j] = qp_sub(qp_mul(QPoly{Rat(0), Rat(1)}, v[j - 1]), v[j - 2]);
  QPoly out{Rat(p.c[k])};
  for (int j = 1; j <= k; ++j) out = qp_add(out, qp_scale(v[j], Rat(p.c[k + j])));
  return out;
}

struct DeflateResult {
  std::vector<AlgNum> g;  // monic, degree d-1, coefficients in Z[beta]
};

// p(x) = (x - beta) g(x) via synthetic division in Q(beta); the remainder
// identity c0 + beta*g0 == 0 is asserted.  Returns the non-leading
// coefficients of the monic quotient (degree d-1).
DeflateResult deflate(const IntPolynomial& p, const FieldPtr& f) {
  int d = p.degree();
  AlgNum beta = AlgNum::beta(f);
  std::vector<AlgNum> b(d);
  b[d - 1] = AlgNum::one(f);
  for (int k = d - 1; k >= 1; --k)
    b[k - 1] = AlgNum::from_rat(f, Rat(p.c[k])) + beta * b[k];
  AlgNum rem = AlgNum::from_rat(f, Rat(p.c[0])) + beta * b[0];
  if (!rem.is_zero()) fail(errc::bad_input, "deflation remainder nonzero");
  b.pop_back();  // drop the explicit leading 1
  DeflateResult r;
  r.g = std::move(b);
  return r;
}

// one Graeffe root-squaring step on a monic AlgNum polynomial (degree n):
// g'(y) with roots squared, via (-1)^n g(x) g(-x) = g'(x^2).
std::vector<AlgNum> graeffe_step(const std::vector<AlgNum>& g, const FieldPtr& f) {
  int n = static_cast<int>(g.size());  // == degree; implicit leading 1
  std::vector<AlgNum> full(n + 1), alt(n + 1);
  for (int i = 0; i < n; ++i) full[i] = g[i];
  full[n] = AlgNum::one(f);
  for (int i = 0; i <= n; ++i) alt[i] = (i % 2) ? -full[i] : full[i];
  std::vector<AlgNum> prod(2 * n + 1, AlgNum::zero(f));
  for (int i = 0; i <= n; ++i) {
    if (full[i].is_zero()) continue;
    for (int j = 0; j <= n; ++j) {
      if (alt[j].is_zero()) continue;
      prod[i + j] += full[i] * alt[j];
    }
  }
  std::vector<AlgNum> out(n);
  int sgn = (n % 2) ? -1 : 1;
  for (int k = 0; k < n; ++k) {
    AlgNum c = prod[2 * k];
    out[k] = (sgn < 0) ? -c : c;
  }
  // leading term check: prod[2n] = (+-1); normalized monic by construction
  return out;
}

// upper bound on x^(1/2^m) via repeated outward integer sqrt
Rat root2m_upper(Rat x, int m) {
  for (int i = 0; i < m; ++i) {
    // y >= sqrt(x): scale to integer, isqrt, +1
    Int num = x.get_num() << 192;
    Int den = x.get_den();
    Int q = num / den;
    Int r = sqrt(q) + 1;
    x = make_rat(r, Int(1) << 96);
  }
  return x;
}

// All roots of the monic polynomial x^n + c_{n-1}x^{n-1} + ... + c_0 have
// modulus < rho whenever sum |c_i| rho^i < rho^n; mags are certified upper
// bounds on |c_i|.
bool dominance_holds(const std::vector<Rat>& mags, const Rat& rho) {
  size_t n = mags.size();
  Rat pw(1), sum(0);
  for (size_t i = 0; i < n; ++i) {
    sum += mags[i] * pw;
    pw *= rho;
  }
  return sum < pw;  // pw == rho^n here
}

// smallest certified root-modulus bound found by dyadic bisection, or nullopt
// if even a generous outer radius fails the dominance test
std::optional<Rat> dominance_radius(const std::vector<Rat>& mags) {
  Rat hi(2);
  int grow = 0;
  while (!dominance_holds(mags, hi)) {
    hi *= 2;
    if (++grow > 24) return std::nullopt;
  }
  Rat lo(0);
  for (int it = 0; it < 96; ++it) {
    Rat mid = (lo + hi) / 2;
    if (dominance_holds(mags, mid)) hi = mid; else lo = mid;
  }
  return hi;
}

}  // namespace

FieldPtr verify_pisot(const IntPolynomial& p) {
  if (!p.is_monic()) fail(errc::not_monic, "leading coefficient must be 1: " + p.text());
  int d = p.degree();
  if (d < 1) fail(errc::bad_input, "degree must be >= 1");
  if (d > 12) fail(errc::degree_too_large, "degree " + std::to_string(d) + " > 12");

  if (d == 1) {
    // x - n: Pisot iff the root n is an integer > 1
    Int n = -p.c[0];
    if (n <= 1) fail(errc::not_pisot, "root " + n.get_str() + " is not > 1");
    QInterval enc = QInterval::point(Rat(n));
    return FieldPtr(new PisotField(p, enc, Rat(0)));
  }

  if (!is_irreducible(p)) fail(errc::not_irreducible, p.text() + " factors over Q");

  SturmChain sturm(qp_from(p));
  int roots_gt1 = sturm.count_gt(Rat(1));
  if (roots_gt1 == 0) fail(errc::not_pisot, "no real root > 1");
  Rat big = cauchy_root_bound(p);
  if (roots_gt1 >= 2) {
    // isolate a second real conjugate > 1 as the witness
    fail(errc::not_pisot, "found " + std::to_string(roots_gt1) +
                              " real roots > 1 (Sturm count); a real conjugate has modulus > 1");
  }
  int roots_lt_m1 = sturm.count_lt(Rat(-1));
  if (roots_lt_m1 > 0) {
    // certified witness enclosure for one real conjugate <= -1
    Rat lo = -big, hi = Rat(-1);
    // walk down to a sign change straddle for the leftmost root
    QInterval w;
    int slo = rat_sign(p.eval(lo)), shi = rat_sign(p.eval(hi));
    if (slo != shi && slo != 0 && shi != 0) {
      w = bisect_root(p, lo, hi, Rat(1, 1 << 20));
    } else {
      // multiple roots below -1 with equal end signs: bisect on Sturm counts
      Rat a = lo, b = hi;
      while (b - a > Rat(1, 1 << 20)) {
        Rat mid = (a + b) / 2;
        if (sturm.count_in(a, mid) > 0) b = mid; else a = mid;
      }
      w = {a, b};
    }
    fail(errc::not_pisot, "real conjugate in [" + rat_str(w.lo) + ", " + rat_str(w.hi) +
                              "] has modulus >= 1");
  }

  // isolate beta in (1, big]
  QInterval benc = bisect_root(p, Rat(1), big, Rat(1, Int(1) << 64));

  // unit-circle roots are possible only for self-reciprocal p (irreducible case)
  if (p.constant() == 1 || p.constant() == -1) {
    IntPolynomial rev = p.reversed();
    if (rev == p && d % 2 == 0) {
      QPoly tr = reciprocal_transform(p);
      SturmChain st2(tr);
      if (st2.count_in(Rat(-2), Rat(2)) > 0)
        fail(errc::not_pisot, "conjugate pair on the unit circle (self-reciprocal transform)");
    }
  }

  // provisional field for exact Z[beta] arithmetic (theta filled in later)
  FieldPtr prov(new PisotField(p, benc, Rat(1)));

  // product shortcut: prod |conjugates| = |p(0)| / beta
  {
    AlgNum b = AlgNum::beta(prov);
    Rat p0 = rat_abs(Rat(p.constant()));
    AlgNum diff = AlgNum::from_rat(prov, p0) - b;
    if (diff.sign() != Sign::negative)
      fail(errc::not_pisot, "product of conjugate moduli = |p(0)|/beta >= 1");
  }

  // Graeffe iteration on the deflated polynomial: roots are exactly the
  // conjugates of beta; Cauchy bounds of the iterates converge to the
  // largest conjugate modulus raised to 2^m.
  std::vector<AlgNum> g = deflate(p, prov).g;
  const Rat threshold = Rat(1) - Rat(1, 1 << 20);
  const int m_max = 14;
  Rat theta;
  bool certified = false;
  for (int m = 0; m <= m_max; ++m) {
    int n = static_cast<int>(g.size());
    std::vector<Rat> mags(n);
    QInterval c0iv, cn1iv;
    for (int i = 0; i < n; ++i) {
      QInterval iv = g[i].enclosure(160);
      mags[i] = iv.mag_hi();
      if (i == 0) c0iv = iv;
      if (i == n - 1) cn1iv = iv;
    }
    // NotPisot certificates from below: product of moduli and root-sum
    if (c0iv.mag_lo() >= 1)
      fail(errc::not_pisot, "conjugate modulus >= 1 certified by the product bound at squaring level " +
                                std::to_string(m));
    if (cn1iv.mag_lo() >= Rat(n))
      fail(errc::not_pisot, "conjugate modulus >= 1 certified by the root-sum bound at squaring level " +
                                std::to_string(m));
    // certified upper bound on max |root(g_m)| = (max conjugate modulus)^(2^m)
    if (auto rho = dominance_radius(mags)) {
      Rat cand = root2m_upper(*rho, m);
      if (cand < threshold) {
        theta = cand;
        certified = true;
        break;
      }
    }
    if (m < m_max) g = graeffe_step(g, prov);
  }
  if (!certified)
    fail(errc::not_pisot,
         "conjugate modulus bound not certifiable below 1 - 2^-20 within the Graeffe budget");

  return FieldPtr(new PisotField(p, benc, theta));
}

}  // namespace betatile
