#include "betatile/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace betatile {

namespace {

QMatrix qm_identity(int n) {
  QMatrix m(n, std::vector<Rat>(n, Rat(0)));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

QMatrix qm_mul(const QMatrix& a, const QMatrix& b) {
  size_t n = a.size(), k = b.size(), c = b[0].size();
  QMatrix r(n, std::vector<Rat>(c, Rat(0)));
  for (size_t i = 0; i < n; ++i)
    for (size_t t = 0; t < k; ++t) {
      if (a[i][t] == 0) continue;
      for (size_t j = 0; j < c; ++j) r[i][j] += a[i][t] * b[t][j];
    }
  return r;
}

QMatrix qm_poly(const QPoly& p, const QMatrix& a) {
  int n = static_cast<int>(a.size());
  QMatrix acc(n, std::vector<Rat>(n, Rat(0)));
  for (int k = qp_degree(p); k >= 0; --k) {
    acc = qm_mul(acc, a);
    for (int i = 0; i < n; ++i) acc[i][i] += p[k];
  }
  return acc;
}

// exact inverse by Gauss-Jordan; throws if singular
QMatrix qm_inverse(QMatrix m) {
  int n = static_cast<int>(m.size());
  QMatrix inv = qm_identity(n);
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int i = col; i < n; ++i)
      if (m[i][col] != 0) { piv = i; break; }
    if (piv < 0) fail(errc::bad_input, "singular matrix");
    std::swap(m[piv], m[col]);
    std::swap(inv[piv], inv[col]);
    Rat f = m[col][col];
    for (int j = 0; j < n; ++j) { m[col][j] /= f; inv[col][j] /= f; }
    for (int i = 0; i < n; ++i) {
      if (i == col || m[i][col] == 0) continue;
      Rat g = m[i][col];
      for (int j = 0; j < n; ++j) { m[i][j] -= g * m[col][j]; inv[i][j] -= g * inv[col][j]; }
    }
  }
  return inv;
}

// column-style Hermite reduction: returns a basis (as columns) of the integer
// column lattice of m
ZMatrix column_lattice_basis(ZMatrix m) {
  int rows = static_cast<int>(m.size());
  int cols = static_cast<int>(m[0].size());
  int row = 0, start = 0;
  for (; row < rows && start < cols; ++row) {
    // find a column with nonzero entry in this row and reduce the others
    while (true) {
      int piv = -1;
      Int best = 0;
      for (int c = start; c < cols; ++c) {
        if (m[row][c] == 0) continue;
        Int a = abs(m[row][c]);
        if (piv < 0 || a < best) { piv = c; best = a; }
      }
      if (piv < 0) break;
      for (int c2 = 0; c2 < rows; ++c2) std::swap(m[c2][piv], m[c2][start]);
      bool clean = true;
      for (int c = start + 1; c < cols; ++c) {
        if (m[row][c] == 0) continue;
        Int f = m[row][c] / m[row][start];
        for (int r2 = 0; r2 < rows; ++r2) m[r2][c] -= f * m[r2][start];
        if (m[row][c] != 0) clean = false;
      }
      if (clean) { ++start; break; }
    }
  }
  // keep the nonzero columns
  ZMatrix out;
  for (int c = 0; c < cols; ++c) {
    bool nz = false;
    for (int r = 0; r < rows; ++r)
      if (m[r][c] != 0) nz = true;
    if (!nz) continue;
    std::vector<Int> col(rows);
    for (int r = 0; r < rows; ++r) col[r] = m[r][c];
    out.push_back(std::move(col));
  }
  return out;  // out[k] = k-th basis column
}

Int z_det(ZMatrix m) {
  int n = static_cast<int>(m.size());
  // fraction-free Gaussian elimination (Bareiss)
  Int denom = 1, sign = 1;
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int i = col; i < n; ++i)
      if (m[i][col] != 0) { piv = i; break; }
    if (piv < 0) return 0;
    if (piv != col) { std::swap(m[piv], m[col]); sign = -sign; }
    for (int i = col + 1; i < n; ++i) {
      for (int j = col + 1; j < n; ++j) {
        m[i][j] = m[i][j] * m[col][col] - m[i][col] * m[col][j];
        if (col > 0) m[i][j] /= denom;
      }
      m[i][col] = 0;
    }
    denom = m[col][col];
  }
  // Bareiss leaves the determinant in the last pivot
  return sign * m[n - 1][n - 1];
}

std::vector<AlgNum> to_algnum_vec(const FieldPtr& f, const std::vector<Rat>& v) {
  std::vector<AlgNum> out;
  out.reserve(v.size());
  for (const Rat& q : v) out.push_back(AlgNum::from_rat(f, q));
  return out;
}

std::vector<AlgNum> zeros(const FieldPtr& f, int n) {
  return std::vector<AlgNum>(n, AlgNum::zero(f));
}

std::vector<AlgNum> vec_add(const std::vector<AlgNum>& a, const std::vector<AlgNum>& b) {
  std::vector<AlgNum> r(a);
  for (size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

std::vector<AlgNum> vec_sub(const std::vector<AlgNum>& a, const std::vector<AlgNum>& b) {
  std::vector<AlgNum> r(a);
  for (size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  return r;
}

std::vector<AlgNum> vec_scale(const std::vector<AlgNum>& a, const AlgNum& c) {
  std::vector<AlgNum> r(a);
  for (auto& v : r) v = v * c;
  return r;
}

AlgNum frac_of(const AlgNum& x) { return x - AlgNum::from_rat(x.field(), Rat(x.floor())); }

}  // namespace

AlgNum SplittingData::u_coeff(const std::vector<AlgNum>& x) const {
  AlgNum s = AlgNum::zero(field);
  for (int j = 0; j < d; ++j) s += x[j] * lambda[j];
  return s;
}

std::vector<AlgNum> SplittingData::stable_part(const std::vector<AlgNum>& x) const {
  AlgNum u = u_coeff(x);
  std::vector<AlgNum> r(x);
  for (int j = 0; j < d; ++j) r[j] -= u * omega_gamma[j];
  return r;
}

std::vector<AlgNum> SplittingData::apply_L(const std::vector<AlgNum>& x) const {
  std::vector<AlgNum> r = zeros(field, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      if (L[i][j] != 0) r[i] += x[j].scaled(Rat(L[i][j]));
  return r;
}

std::vector<AlgNum> SplittingData::solve_one_minus_Lq(int q, const std::vector<AlgNum>& c) const {
  // (I - L^q) is an integer matrix with no eigenvalue 1
  QMatrix lq = qm_identity(d);
  QMatrix lr(d, std::vector<Rat>(d, Rat(0)));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) lr[i][j] = Rat(L[i][j]);
  for (int k = 0; k < q; ++k) lq = qm_mul(lq, lr);
  QMatrix m = qm_identity(d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) m[i][j] -= lq[i][j];
  QMatrix inv = qm_inverse(std::move(m));
  std::vector<AlgNum> out = zeros(field, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      if (inv[i][j] != 0) out[i] += c[j].scaled(inv[i][j]);
  return out;
}

SplittingData compute_splitting(const RulePtr& rule, const AbelianizationResult& ab) {
  SplittingData S;
  S.rule = rule;
  S.field = rule->field;
  S.n = rule->alphabet_size();
  S.d = S.field->degree();
  S.q_factor = ab.perron.q_factor;
  S.l_vec = ab.perron.l_vec;
  S.omega_amb = ab.perron.omega;

  // the abelianized action sends e_i to ab(psi(i)): transpose of the
  // occurrence matrix
  QMatrix act(S.n, std::vector<Rat>(S.n));
  for (int i = 0; i < S.n; ++i)
    for (int j = 0; j < S.n; ++j) act[i][j] = Rat(ab.matrix.a[j][i]);

  QPoly pb = qp_from(S.field->minpoly());
  QPoly qf = qp_from(S.q_factor);
  QPoly g = qp_gcd(pb, qf);
  if (qp_degree(g) > 0) fail(errc::not_coprime, "q factor shares a root with the minimal polynomial");
  QPoly s1, s2, gg;
  qp_bezout(pb, qf, s1, s2, gg);
  S.s1 = s1;
  S.s2 = s2;

  // pi_V = s2(A) q(A): identity on V = ker p_beta(A), zero on W = ker q(A)
  S.pi_v = qm_mul(qm_poly(s2, act), qm_poly(qf, act));
  // exact structural checks
  {
    QMatrix p2 = qm_mul(S.pi_v, S.pi_v);
    if (p2 != S.pi_v) fail(errc::bad_input, "pi_V is not idempotent");
    QMatrix c1 = qm_mul(S.pi_v, act), c2 = qm_mul(act, S.pi_v);
    if (c1 != c2) fail(errc::bad_input, "pi_V does not commute with the action");
  }

  // Gamma = pi_V(Z^n): clear denominators and reduce the integer column lattice
  Int den = 1;
  for (const auto& row : S.pi_v)
    for (const Rat& v : row) den = lcm(den, Int(v.get_den()));
  ZMatrix scaled(S.n, std::vector<Int>(S.n));
  for (int i = 0; i < S.n; ++i)
    for (int j = 0; j < S.n; ++j) {
      Rat v = S.pi_v[i][j] * Rat(den);
      scaled[i][j] = v.get_num();
    }
  ZMatrix basis_cols = column_lattice_basis(std::move(scaled));
  if (static_cast<int>(basis_cols.size()) != S.d)
    fail(errc::bad_input, "Gamma rank != degree of beta");
  S.gamma_basis.assign(S.n, std::vector<Rat>(S.d, Rat(0)));
  for (int j = 0; j < S.d; ++j)
    for (int i = 0; i < S.n; ++i) S.gamma_basis[i][j] = make_rat(basis_cols[j][i], den);

  // coordinate solver: invert d independent rows of gamma_basis
  std::vector<int> pivot_rows;
  {
    QMatrix work = S.gamma_basis;  // n x d; row-reduce to find independent rows
    std::vector<int> rows(S.n);
    for (int i = 0; i < S.n; ++i) rows[i] = i;
    int have = 0;
    for (int col = 0; col < S.d; ++col) {
      int piv = -1;
      for (int i = have; i < S.n; ++i)
        if (work[i][col] != 0) { piv = i; break; }
      if (piv < 0) fail(errc::bad_input, "gamma basis rank defect");
      std::swap(work[piv], work[have]);
      std::swap(rows[piv], rows[have]);
      for (int i = 0; i < S.n; ++i) {
        if (i == have || work[i][col] == 0) continue;
        Rat f = work[i][col] / work[have][col];
        for (int j = 0; j < S.d; ++j) work[i][j] -= f * work[have][j];
      }
      ++have;
    }
    pivot_rows.assign(rows.begin(), rows.begin() + S.d);
  }
  QMatrix rowsq(S.d, std::vector<Rat>(S.d));
  for (int i = 0; i < S.d; ++i)
    for (int j = 0; j < S.d; ++j) rowsq[i][j] = S.gamma_basis[pivot_rows[i]][j];
  QMatrix row_inv = qm_inverse(rowsq);

  auto coords_of = [&](const std::vector<Rat>& ambient) {
    std::vector<Rat> picked(S.d);
    for (int i = 0; i < S.d; ++i) picked[i] = ambient[pivot_rows[i]];
    std::vector<Rat> x(S.d, Rat(0));
    for (int i = 0; i < S.d; ++i)
      for (int j = 0; j < S.d; ++j) x[i] += row_inv[i][j] * picked[j];
    // verify the full system (catches vectors outside V)
    for (int i = 0; i < S.n; ++i) {
      Rat acc(0);
      for (int j = 0; j < S.d; ++j) acc += S.gamma_basis[i][j] * x[j];
      if (acc != ambient[i]) fail(errc::bad_input, "vector is not in V");
    }
    return x;
  };

  // Gamma-coords of pi_V(e_i), per letter
  S.letter_coords.assign(S.d, std::vector<Rat>(S.n, Rat(0)));
  for (int i = 0; i < S.n; ++i) {
    std::vector<Rat> col(S.n);
    for (int r = 0; r < S.n; ++r) col[r] = S.pi_v[r][i];
    std::vector<Rat> x = coords_of(col);
    for (int j = 0; j < S.d; ++j) S.letter_coords[j][i] = x[j];
  }

  // L in Gamma-coords: integer (Gamma is action-invariant), char poly = p_beta
  S.L.assign(S.d, std::vector<Int>(S.d, Int(0)));
  for (int j = 0; j < S.d; ++j) {
    std::vector<Rat> img(S.n, Rat(0));
    for (int r = 0; r < S.n; ++r)
      for (int t = 0; t < S.n; ++t) img[r] += act[r][t] * S.gamma_basis[t][j];
    std::vector<Rat> x = coords_of(img);
    for (int i = 0; i < S.d; ++i) {
      if (x[i].get_den() != 1) fail(errc::bad_input, "Gamma is not L-invariant");
      S.L[i][j] = x[i].get_num();
    }
  }
  {
    QMatrix lr(S.d, std::vector<Rat>(S.d));
    for (int i = 0; i < S.d; ++i)
      for (int j = 0; j < S.d; ++j) lr[i][j] = Rat(S.L[i][j]);
    QPoly cp = char_poly(lr);
    if (cp != qp_from(S.field->minpoly()))
      fail(errc::bad_input, "char poly of L is not the minimal polynomial");
  }

  // omega in Gamma-coords: solve with AlgNum entries over the pivot rows
  {
    std::vector<AlgNum> picked(S.d, AlgNum::zero(S.field));
    for (int i = 0; i < S.d; ++i) picked[i] = S.omega_amb[pivot_rows[i]];
    S.omega_gamma = zeros(S.field, S.d);
    for (int i = 0; i < S.d; ++i)
      for (int j = 0; j < S.d; ++j)
        if (row_inv[i][j] != 0) S.omega_gamma[i] += picked[j].scaled(row_inv[i][j]);
    // verify against all rows
    for (int i = 0; i < S.n; ++i) {
      AlgNum acc = AlgNum::zero(S.field);
      for (int j = 0; j < S.d; ++j) acc += S.omega_gamma[j].scaled(S.gamma_basis[i][j]);
      if (!(acc == S.omega_amb[i])) fail(errc::bad_input, "omega is not in V");
    }
  }

  // lambda_j = <l, gamma_j>
  S.lambda = zeros(S.field, S.d);
  for (int j = 0; j < S.d; ++j)
    for (int i = 0; i < S.n; ++i)
      if (S.gamma_basis[i][j] != 0) S.lambda[j] += S.l_vec[i].scaled(S.gamma_basis[i][j]);

  // e = -pi_V(sum e_i) in Gamma-coords; must be integral
  {
    std::vector<Rat> amb(S.n, Rat(0));
    for (int i = 0; i < S.n; ++i)
      for (int j = 0; j < S.n; ++j) amb[i] -= S.pi_v[i][j];
    std::vector<Rat> x = coords_of(amb);
    S.e_gamma.resize(S.d);
    for (int i = 0; i < S.d; ++i) {
      if (x[i].get_den() != 1) fail(errc::bad_input, "homoclinic candidate not a lattice point");
      S.e_gamma[i] = x[i].get_num();
    }
  }
  return S;
}

Components project_components(const SplittingData& S, const std::vector<AlgNum>& v) {
  if (static_cast<int>(v.size()) != S.n) fail(errc::bad_input, "ambient dimension mismatch");
  Components c;
  c.u_coeff = AlgNum::zero(S.field);
  for (int i = 0; i < S.n; ++i) c.u_coeff += S.l_vec[i] * v[i];
  // pi_V v in ambient coordinates
  c.stable = zeros(S.field, S.n);
  for (int i = 0; i < S.n; ++i)
    for (int j = 0; j < S.n; ++j)
      if (S.pi_v[i][j] != 0) c.stable[i] += v[j].scaled(S.pi_v[i][j]);
  for (int i = 0; i < S.n; ++i) c.stable[i] -= c.u_coeff * S.omega_amb[i];
  return c;
}

HomoclinicCertificate fundamental_homoclinic(const SplittingData& S) {
  HomoclinicCertificate cert;
  cert.e_gamma = S.e_gamma;
  // columns e, Le, ..., L^(d-1) e
  ZMatrix cols(S.d, std::vector<Int>(S.d, Int(0)));
  std::vector<Int> cur = S.e_gamma;
  for (int k = 0; k < S.d; ++k) {
    for (int i = 0; i < S.d; ++i) cols[i][k] = cur[i];
    if (k + 1 < S.d) {
      std::vector<Int> nxt(S.d, Int(0));
      for (int i = 0; i < S.d; ++i)
        for (int j = 0; j < S.d; ++j) nxt[i] += S.L[i][j] * cur[j];
      cur = std::move(nxt);
    }
  }
  cert.basis_det = z_det(cols);
  cert.fundamental = (cert.basis_det == 1 || cert.basis_det == -1);

  // Gamma^u = Z[beta] omega: each <l, gamma_j> lies in Z[beta] and together
  // they generate it as a group
  ZMatrix lam(S.d, std::vector<Int>(S.d, Int(0)));
  for (int j = 0; j < S.d; ++j) {
    if (!S.lambda[j].has_integer_coords())
      fail(errc::bad_input, "<l, gamma_j> is not in Z[beta]");
    for (int i = 0; i < S.d; ++i) lam[i][j] = S.lambda[j].coords()[i].get_num();
  }
  cert.lattice_unit_det = z_det(lam);
  cert.gamma_u_is_z_beta = (cert.lattice_unit_det == 1 || cert.lattice_unit_det == -1);

  if (!cert.fundamental)
    fail(errc::not_fundamental,
         "homoclinic basis determinant " + cert.basis_det.get_str() + " is not a unit");
  return cert;
}

Rat TorusPoint::dist_bound(const TorusPoint& o, unsigned bits) const {
  Rat worst(0);
  for (size_t i = 0; i < x.size(); ++i) {
    AlgNum diff = frac_of(x[i] - o.x[i]);
    QInterval iv = diff.enclosure(bits);
    // toral distance: min(frac, 1 - frac)
    Rat d1 = iv.mag_hi();
    Rat d2 = Rat(1) - iv.lo;
    Rat d = d1 < d2 ? d1 : d2;
    if (d > worst) worst = d;
  }
  return worst;
}

namespace {

// abelianization (in Gamma-coords, exact integers) of the word of S between
// two vertex positions a <= b
std::vector<Int> word_increment(const SubstitutiveTiling& S, const SplittingData& Sp,
                                const AlgNum& a, const AlgNum& b) {
  std::vector<Int> acc(Sp.d, Int(0));
  if (a == b) return acc;
  Patch w = S.window(a, b);
  std::vector<Rat> accq(Sp.d, Rat(0));
  for (const Tile& t : w.tiles) {
    AlgNum lo = t.offset + S.rule()->tile(t.type).lo;
    AlgNum hi = t.offset + S.rule()->tile(t.type).hi;
    // only tiles fully inside [a, b]
    if ((lo - a).sign() == Sign::negative || (b - hi).sign() == Sign::negative) continue;
    for (int i = 0; i < Sp.d; ++i) accq[i] += Sp.letter_coords[i][t.type - 1];
  }
  for (int i = 0; i < Sp.d; ++i) {
    if (accq[i].get_den() != 1) fail(errc::bad_input, "prefix is not a lattice vector");
    acc[i] = accq[i].get_num();
  }
  return acc;
}

// prefix p(S) = gamma(t_*(S)) - gamma(beta t_*(Psi^-1 S)), an integer vector
std::vector<Int> prefix_of(const SubstitutiveTiling& S, const SplittingData& Sp) {
  AlgNum t1 = S.t_star();
  AlgNum t0 = AlgNum::beta(Sp.field) * S.desubstituted().t_star();
  if ((t1 - t0).sign() == Sign::negative) fail(errc::bad_input, "prefix interval reversed");
  return word_increment(S, Sp, t0, t1);
}

std::vector<AlgNum> int_to_alg(const FieldPtr& f, const std::vector<Int>& v) {
  std::vector<AlgNum> out;
  out.reserve(v.size());
  for (const Int& z : v) out.push_back(AlgNum::from_rat(f, Rat(z)));
  return out;
}

// smallest nonzero distance from the origin to a type-1 tile start across the
// phase tilings of T's seed; the backward prefix stream is exactly periodic
// once beta^-i |offset| drops below this gap
AlgNum vertex_gap(const SubstitutiveTiling& T) {
  const FieldPtr& f = T.rule()->field;
  SubstitutiveTiling base = T.translated(T.offset());  // offset 0, same phase
  std::optional<AlgNum> best;
  AlgNum two = AlgNum::from_rat(f, Rat(2));
  for (int r = 0; r < T.power(); ++r) {
    Patch w = base.window(-two, two);
    for (const Tile& t : w.tiles) {
      if (t.type != 1) continue;
      AlgNum start = t.offset;  // type-1 tiles start at their offset (lo = 0)
      if (start.is_zero()) continue;
      AlgNum mag = start.sign() == Sign::negative ? -start : start;
      if (!best || (mag - *best).sign() == Sign::negative) best = mag;
    }
    base = base.substituted();
  }
  if (!best) fail(errc::bad_input, "no type-1 vertex near the origin");
  return *best;
}

}  // namespace

std::vector<AlgNum> strand_anchor(const SubstitutiveTiling& T, const SplittingData& S,
                                  long depth_cap) {
  const FieldPtr& f = S.field;
  int q = T.power();

  // stability index: beta^-i |offset| < gap
  long i0 = 0;
  if (!T.offset().is_zero()) {
    AlgNum gap = vertex_gap(T);
    AlgNum mag = T.offset().sign() == Sign::negative ? -T.offset() : T.offset();
    AlgNum beta_pow = AlgNum::one(f);
    while ((mag - gap * beta_pow).sign() != Sign::negative) {
      beta_pow = beta_pow * AlgNum::beta(f);
      ++i0;
      if (i0 > depth_cap)
        fail(errc::precision_exceeded, "backward periodicity not reached within the depth cap");
    }
  }

  // backward prefixes p_0, p_-1, ..., p_-(i0 + 2q - 1); the last 2q verify the
  // predicted periodicity
  long total = i0 + 2 * q;
  std::vector<std::vector<Int>> pref;
  SubstitutiveTiling cur = T;
  for (long i = 0; i < total; ++i) {
    pref.push_back(prefix_of(cur, S));
    cur = cur.desubstituted();
  }
  for (int r = 0; r < q; ++r)
    if (pref[i0 + r] != pref[i0 + q + r])
      fail(errc::precision_exceeded, "backward prefix stream failed to close periodically");

  // stable series: sum_{i=0..i0-1} L^i s_-i + L^i0 (I - L^q)^-1 sum_r L^r s_-(i0+r)
  std::vector<AlgNum> acc = zeros(f, S.d);
  std::vector<std::vector<AlgNum>> stabs;
  for (long i = 0; i < i0 + q; ++i) stabs.push_back(S.stable_part(int_to_alg(f, pref[i])));
  // Horner from the deep end: X = (I - L^q)^-1 (s_-(i0) + L s_-(i0+1) + ... )
  std::vector<AlgNum> tail = zeros(f, S.d);
  for (long r = q - 1; r >= 0; --r) tail = vec_add(stabs[i0 + r], S.apply_L(tail));
  // remove the extra L^q factor introduced by the Horner walk: the loop above
  // computes s_{i0} + L s_{i0+1} + ... + L^{q-1} s_{i0+q-1} directly
  std::vector<AlgNum> x = S.solve_one_minus_Lq(q, tail);
  std::vector<AlgNum> deep = x;
  for (long i = i0 - 1; i >= 0; --i) deep = vec_add(stabs[i], S.apply_L(deep));

  // unstable closed form: a_0^u = t_*(T) omega
  AlgNum ts = T.t_star();
  std::vector<AlgNum> unst = vec_scale(S.omega_gamma, ts);
  return vec_add(deep, unst);
}

TorusPoint shadow_factor_map(const SubstitutiveTiling& T, const SplittingData& S, long depth_cap) {
  std::vector<AlgNum> a0 = strand_anchor(T, S, depth_cap);
  TorusPoint p;
  for (auto& v : a0) p.x.push_back(frac_of(v));
  return p;
}

SolenoidPoint solenoid_map(const SubstitutiveTiling& T, const SplittingData& S, int levels,
                           long depth_cap) {
  SolenoidPoint sp;
  SubstitutiveTiling cur = T;
  for (int j = 0; j < levels; ++j) {
    sp.levels.push_back(shadow_factor_map(cur, S, depth_cap));
    cur = cur.desubstituted();
  }
  return sp;
}

std::vector<PrefixRecord> prefix_chain(const SubstitutiveTiling& T, const SplittingData& S,
                                       long i_lo, long i_hi, long depth_cap) {
  if (i_lo > i_hi) fail(errc::bad_input, "need i_lo <= i_hi");
  std::vector<PrefixRecord> out;
  SubstitutiveTiling cur = T.iterated(i_lo);
  for (long i = i_lo; i <= i_hi; ++i) {
    PrefixRecord rec;
    rec.index = i;
    rec.prefix = prefix_of(cur, S);
    rec.vertex = strand_anchor(cur, S, depth_cap);
    out.push_back(std::move(rec));
    if (i < i_hi) cur = cur.substituted();
  }
  return out;
}

SolenoidPoint arithmetical_code(const DigitWindow& w, const SplittingData& S, int levels, long) {
  const FieldPtr& f = S.field;
  if (!is_admissible(S.rule->kneading, w.digits))
    fail(errc::inadmissible, "digit window is not admissible");
  AlgNum beta = AlgNum::beta(f);
  AlgNum v = AlgNum::zero(f);
  for (size_t t = 0; t < w.digits.size(); ++t) {
    long i = w.i_lo + static_cast<long>(t);
    v += beta.pow(-i).scaled(Rat(w.digits[t]));
  }
  SolenoidPoint sp;
  for (int j = 1; j <= levels; ++j) {
    AlgNum scale = -(beta.pow(-(j - 1)) * v);
    TorusPoint tp;
    for (int i = 0; i < S.d; ++i) tp.x.push_back(frac_of(scale * S.omega_gamma[i]));
    sp.levels.push_back(std::move(tp));
  }
  return sp;
}

SolenoidPoint coding_of_itinerary(const SubstitutiveTiling& T, const SplittingData& S, int levels,
                                  long depth_cap) {
  const FieldPtr& f = S.field;
  AlgNum beta = AlgNum::beta(f);
  int q = T.power();

  // digits x_{-k} for k >= 0 become periodic at the same index as the
  // backward prefixes; digits x_i for i >= 1 sum to -t_*(Psi(T)) exactly,
  // since x_i is the (i+1)-st greedy digit of -t_*(T)
  long i0 = 0;
  if (!T.offset().is_zero()) {
    AlgNum gap = vertex_gap(T);
    AlgNum mag = T.offset().sign() == Sign::negative ? -T.offset() : T.offset();
    AlgNum bp = AlgNum::one(f);
    while ((mag - gap * bp).sign() != Sign::negative) {
      bp = bp * beta;
      ++i0;
      if (i0 > depth_cap) fail(errc::precision_exceeded, "periodicity depth cap");
    }
  }
  long head_len = i0 + 2 * q + levels;  // shallow past + verification margin
  std::vector<int> past;  // past[k] = x_{-k}(T)
  {
    SubstitutiveTiling cur = T;
    for (long k = 0; k < head_len + q; ++k) {
      AlgNum ts = cur.t_star();
      past.push_back(static_cast<int>((-(beta * ts)).floor().get_si()));
      cur = cur.desubstituted();
    }
    for (int r = 0; r < q; ++r)
      if (past[head_len - q + r] != past[head_len + r])
        fail(errc::precision_exceeded, "backward digit stream failed to close");
  }

  // e^s = e + omega in Gamma-coords (since <l, e> = -1)
  std::vector<AlgNum> es = int_to_alg(f, S.e_gamma);
  es = vec_add(es, S.omega_gamma);

  AlgNum future_value = -T.substituted().t_star();  // sum_{i>=1} x_i(T) beta^-i

  SolenoidPoint sp;
  for (int j = 1; j <= levels; ++j) {
    // future block: -(beta^-(j-1)) * future_value * omega
    AlgNum fscale = -(beta.pow(-(j - 1)) * future_value);
    std::vector<AlgNum> acc = vec_scale(S.omega_gamma, fscale);
    // shallow past: digits x_{-k} for k < j-1 keep negative L-exponents
    for (long k = 0; k < j - 1; ++k) {
      AlgNum sc = -(beta.pow(-(j - 1 - k)).scaled(Rat(past[k])));
      acc = vec_add(acc, vec_scale(S.omega_gamma, sc));
    }
    // deep past: k >= j-1, term x_{-k} * (-L^(k-j+1) e^s) with the periodic
    // tail in closed form (the k = j-1 boundary term -e^s matches -omega mod
    // Gamma)
    std::vector<AlgNum> pow_vec = es;  // L^(k-j+1) e^s, starting at exponent 0
    for (long k = j - 1; k < head_len; ++k) {
      if (past[k] != 0) acc = vec_sub(acc, vec_scale(pow_vec, AlgNum::from_rat(f, Rat(past[k]))));
      pow_vec = S.apply_L(pow_vec);
    }
    // periodic tail from k = head_len: digits repeat with period q;
    // sum_{n>=0} L^(base + r + nq) e^s = L^(base + r) (I - L^q)^-1 e^s
    std::vector<AlgNum> rv = S.solve_one_minus_Lq(q, es);
    for (long e = 0; e < head_len - (j - 1); ++e) rv = S.apply_L(rv);
    for (int r = 0; r < q; ++r) {
      int digit = past[head_len - q + r];  // = x_{-(head_len + r)}
      if (digit != 0) acc = vec_sub(acc, vec_scale(rv, AlgNum::from_rat(f, Rat(digit))));
      rv = S.apply_L(rv);
    }
    TorusPoint tp;
    for (int i = 0; i < S.d; ++i) tp.x.push_back(frac_of(acc[i]));
    sp.levels.push_back(std::move(tp));
  }
  return sp;
}

SolenoidPoint coding_of_tiling(const SubstitutiveTiling& T, const SplittingData& S, int levels,
                               long depth_cap) {
  // h over the stream whose i-th digit weights beta^-i in the fractional part
  // of -t_*: that stream is the itinerary of Psi^-1(T), and the coding
  // identity pihat(T) = h(...) holds exactly in this alignment
  return coding_of_itinerary(T.desubstituted(), S, levels, depth_cap);
}

CodingReport coding_consistency_and_injectivity(const RulePtr& rule, const SplittingData& S,
                                                int n_samples, const Rat& eps, uint64_t seed,
                                                int levels, long collision_samples,
                                                int collision_window) {
  CodingReport rep;
  rep.samples = n_samples;
  rep.levels = levels;
  rep.eps = eps;
  const FieldPtr& f = S.field;
  auto canon = canonical_periodic_tilings(rule);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> num(1, (1 << 20) - 1);
  for (int s = 0; s < n_samples; ++s) {
    const SubstitutiveTiling& base = canon[s % canon.size()];
    SubstitutiveTiling T = base;
    if (s >= static_cast<int>(canon.size())) {
      Rat t = make_rat(num(rng), 1 << 20);
      T = base.translated(AlgNum::from_rat(f, t));
    }
    SolenoidPoint lhs = solenoid_map(T, S, levels);
    SolenoidPoint rhs = coding_of_tiling(T, S, levels);
    bool exact = true, within = true;
    for (int j = 0; j < levels; ++j) {
      if (!(lhs.levels[j] == rhs.levels[j])) exact = false;
      if (lhs.levels[j].dist_bound(rhs.levels[j]) >= eps) within = false;
    }
    if (exact) ++rep.exact_matches;
    if (within) ++rep.consistent;
  }

  // collision experiment on random admissible windows
  if (collision_samples > 0) {
    rep.collision_samples = collision_samples;
    const KneadingData& kn = rule->kneading;
    int maxd = *std::max_element(kn.digits.begin(), kn.digits.end());
    std::uniform_int_distribution<int> digit(0, maxd);
    std::set<std::string> keys;
    std::set<std::string> window_set;
    long made = 0;
    while (made < collision_samples) {
      DigitWindow w;
      w.i_lo = 1;
      w.digits.resize(collision_window);
      for (auto& dg : w.digits) dg = digit(rng);
      while (!w.digits.empty() && w.digits.back() == 0) w.digits.pop_back();
      if (w.digits.empty() || !is_admissible(kn, w.digits)) continue;
      std::string wkey;
      for (int dg : w.digits) wkey += char('0' + dg);
      if (!window_set.insert(wkey).second) continue;  // need distinct windows
      ++made;
      SolenoidPoint h = arithmetical_code(w, S, levels);
      // quantize to an eps-grid; key collisions then verify by distance
      std::string key;
      for (const auto& lv : h.levels)
        for (const auto& c : lv.x) {
          QInterval iv = c.enclosure(96);
          Rat mid = (iv.lo + iv.hi) / 2;
          Int cell = rat_floor(mid / eps);
          key += cell.get_str() + ",";
        }
      if (!keys.insert(key).second) ++rep.collision_pairs;
    }
  }
  return rep;
}

RauzyCloud rauzy_cloud(const SubstitutiveTiling& T, const SplittingData& S, long count) {
  if (S.d < 2) fail(errc::bad_input, "rauzy cloud needs degree >= 2");
  if (count < 0) fail(errc::bad_input, "count must be >= 0");
  RauzyCloud cloud;
  if (count == 0) { cloud.bound = 1; return cloud; }
  const FieldPtr& f = S.field;

  // ambient numeric basis of E^s: stable parts of pi_V e_i, orthonormalized
  int n = S.n, d = S.d;
  std::vector<std::vector<double>> stab;
  for (int i = 0; i < n; ++i) {
    std::vector<AlgNum> e_amb = zeros(f, n);
    e_amb[i] = AlgNum::one(f);
    Components c = project_components(S, e_amb);
    std::vector<double> v(n);
    for (int r = 0; r < n; ++r) v[r] = c.stable[r].to_double();
    stab.push_back(std::move(v));
  }
  auto dot = [n](const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0;
    for (int i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
  };
  std::vector<std::vector<double>> basis;
  for (const auto& cand0 : stab) {
    std::vector<double> cand = cand0;
    for (const auto& b : basis) {
      double pr = dot(cand, b);
      for (int i = 0; i < n; ++i) cand[i] -= pr * b[i];
    }
    double nn = std::sqrt(dot(cand, cand));
    if (nn > 1e-9) {
      for (auto& v : cand) v /= nn;
      basis.push_back(std::move(cand));
      if (static_cast<int>(basis.size()) == d - 1) break;
    }
  }
  if (static_cast<int>(basis.size()) != d - 1) fail(errc::bad_input, "stable basis rank defect");

  // numeric stable-series bound: per-letter partial sums through the word,
  // propagated by the stable part of L until the terms die out
  double per_level = 0;
  for (int letter = 1; letter <= n; ++letter) {
    std::vector<double> acc(n, 0.0);
    double best = 0;
    for (int c : T.rule()->word(letter)) {
      std::vector<AlgNum> e_amb = zeros(f, n);
      e_amb[c - 1] = AlgNum::one(f);
      Components pc = project_components(S, e_amb);
      for (int r = 0; r < n; ++r) acc[r] += pc.stable[r].to_double();
      best = std::max(best, std::sqrt(dot(acc, acc)));
    }
    per_level = std::max(per_level, best);
  }
  // contraction factor of the action on E^s, estimated from theta_max
  double theta = rat_dbl(S.field->theta_max());
  double series = per_level / (1.0 - theta) * 4.0 + per_level;  // generous safety factor
  cloud.bound = series;

  // walk the strand vertices from the anchor
  std::vector<AlgNum> v = strand_anchor(T, S);
  AlgNum pos = T.t_star();
  std::vector<double> v_num(n);
  for (long k = 0; k < count; ++k) {
    // stable part in ambient coordinates
    AlgNum u = S.u_coeff(v);
    std::vector<double> amb(n, 0.0);
    for (int i = 0; i < n; ++i) {
      AlgNum a = AlgNum::zero(f);
      for (int j = 0; j < d; ++j) a += v[j].scaled(S.gamma_basis[i][j]);
      a -= u * S.omega_amb[i];
      amb[i] = a.to_double();
    }
    std::vector<double> pt(d - 1);
    for (int b = 0; b < d - 1; ++b) pt[b] = dot(amb, basis[b]);
    double nm = std::sqrt(dot(amb, amb));
    cloud.max_norm = std::max(cloud.max_norm, nm);
    cloud.points.push_back(std::move(pt));
    // advance one tile to the right
    Patch at = T.tiles_at(pos);
    const Tile* next = nullptr;
    for (const Tile& t : at.tiles)
      if ((t.offset + T.rule()->tile(t.type).lo) == pos) next = &t;
    if (!next) fail(errc::bad_input, "strand walk lost abutment");
    for (int j = 0; j < d; ++j) v[j] += AlgNum::from_rat(f, S.letter_coords[j][next->type - 1]);
    pos = next->offset + T.rule()->tile(next->type).hi;
  }
  return cloud;
}

}  // namespace betatile
