#include "betatile/substitution.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace betatile {

int SubstitutionRule::initial_pow(int letter, int n) const {
  int c = letter;
  for (int i = 0; i < n; ++i) c = initial(c);
  return c;
}

int SubstitutionRule::terminal_pow(int letter, int n) const {
  int c = letter;
  for (int i = 0; i < n; ++i) c = terminal(c);
  return c;
}

std::set<std::pair<int, int>> SubstitutionRule::allowed_pairs() const {
  // interior factors of the psi(i), closed under (u,v) -> (t(u), i(v));
  // primitivity makes this the exact factor set of the language
  std::set<std::pair<int, int>> pairs;
  for (const auto& w : words)
    for (size_t j = 0; j + 1 < w.size(); ++j) pairs.emplace(w[j], w[j + 1]);
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<std::pair<int, int>> add;
    for (const auto& [u, v] : pairs) {
      std::pair<int, int> img{terminal(u), initial(v)};
      if (!pairs.count(img)) add.push_back(img);
    }
    for (const auto& pr : add) {
      pairs.insert(pr);
      grew = true;
    }
  }
  return pairs;
}

std::string SubstitutionRule::words_text() const {
  std::ostringstream os;
  for (size_t i = 0; i < words.size(); ++i) {
    if (i) os << "; ";
    os << (i + 1) << "->";
    for (int c : words[i]) os << c;
  }
  return os.str();
}

RulePtr build_substitution(const KneadingData& k) {
  const FieldPtr& f = k.field;
  if (f->degree() == 1)
    fail(errc::integer_beta, "integer beta: tiling analysis is out of scope (the tiling space "
                             "degenerates to a circle)");
  auto rule = std::make_shared<SubstitutionRule>();
  rule->field = f;
  rule->kneading = k;

  // breakpoints = {0, 1} union orbit, sorted exactly
  std::vector<AlgNum> pts{AlgNum::zero(f)};
  for (const AlgNum& z : k.orbit) pts.push_back(z);
  std::sort(pts.begin(), pts.end(), [](const AlgNum& a, const AlgNum& b) { return a < b; });
  for (size_t i = 0; i + 1 < pts.size(); ++i)
    if (pts[i] == pts[i + 1]) fail(errc::bad_input, "orbit points not distinct");
  if (!(pts.back() == AlgNum::one(f))) fail(errc::bad_input, "1 must be the top breakpoint");

  int n = static_cast<int>(pts.size()) - 1;  // = m + p tiles
  for (int i = 1; i <= n; ++i) {
    Prototile t;
    t.index = i;
    t.lo = pts[i - 1];
    t.hi = pts[i];
    t.length = t.hi - t.lo;
    rule->tiles.push_back(std::move(t));
  }

  // vertex labels along the orbit
  rule->tile_max_at.assign(k.m + k.p + 1, 0);
  rule->tile_min_at.assign(k.m + k.p + 1, 0);
  for (int j = 1; j <= k.m + k.p; ++j) {
    const AlgNum& z = k.orbit[j - 1];
    for (int i = 1; i <= n; ++i) {
      if (rule->tile(i).hi == z) rule->tile_max_at[j] = i;
      if (rule->tile(i).lo == z) rule->tile_min_at[j] = i;
    }
    if (rule->tile_max_at[j] == 0) fail(errc::bad_input, "orbit point is not a tile max");
  }

  // walk the image interval [beta lo_i, beta hi_i] across the cells
  // (integer + prototile); exact breakpoint arithmetic throughout
  AlgNum beta = AlgNum::beta(f);
  for (int i = 1; i <= n; ++i) {
    AlgNum y = beta * rule->tile(i).lo;
    AlgNum end = beta * rule->tile(i).hi;
    std::vector<int> w;
    while (y != end) {
      Int base = y.floor();
      AlgNum frac = y - AlgNum::from_rat(f, Rat(base));
      int j = 0;
      for (int c = 1; c <= n; ++c)
        if (rule->tile(c).lo == frac) { j = c; break; }
      if (j == 0) fail(errc::bad_input, "image endpoint is not a cell boundary");
      w.push_back(j);
      y = AlgNum::from_rat(f, Rat(base)) + rule->tile(j).hi;
      if (w.size() > 1000) fail(errc::bad_input, "runaway image walk");
    }
    if (w.empty()) fail(errc::bad_input, "empty substitution word");
    rule->words.push_back(std::move(w));
  }

  // exact length identity: beta * l_i = sum of child lengths
  for (int i = 1; i <= n; ++i) {
    AlgNum sum = AlgNum::zero(f);
    for (int c : rule->word(i)) sum += rule->tile(c).length;
    if (!(sum == beta * rule->tile(i).length))
      fail(errc::bad_input, "length identity failed for letter " + std::to_string(i));
  }
  // lengths sum to 1
  AlgNum total = AlgNum::zero(f);
  for (const auto& t : rule->tiles) total += t.length;
  if (!(total == AlgNum::one(f))) fail(errc::bad_input, "tile lengths do not sum to 1");

  return rule;
}

AbelianizationResult abelianize_and_perron(const SubstitutionRule& r) {
  const FieldPtr& f = r.field;
  int n = r.alphabet_size();
  AbelianizationResult out;
  out.matrix.a.assign(n, std::vector<Int>(n, Int(0)));
  for (int i = 1; i <= n; ++i)
    for (int c : r.word(i)) out.matrix.a[i - 1][c - 1] += 1;

  // characteristic polynomial, exact
  std::vector<std::vector<Rat>> aq(n, std::vector<Rat>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) aq[i][j] = Rat(out.matrix.a[i][j]);
  QPoly cp = char_poly(aq);
  std::vector<Int> cpz(cp.size());
  for (size_t i = 0; i < cp.size(); ++i) {
    if (cp[i].get_den() != 1) fail(errc::bad_input, "char poly not integral");
    cpz[i] = cp[i].get_num();
  }
  out.perron.char_poly = IntPolynomial(std::move(cpz));

  // p_A = p_beta * q exactly
  auto q = int_poly_div(out.perron.char_poly, f->minpoly());
  if (!q) fail(errc::perron_mismatch, "minimal polynomial does not divide the char poly");
  out.perron.q_factor = *q;

  // primitivity: A^k > 0 for some k up to the Wielandt bound n^2 - 2n + 2
  {
    int bound = n * n - 2 * n + 2;
    std::vector<std::vector<bool>> reach(n, std::vector<bool>(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) reach[i][j] = out.matrix.a[i][j] > 0;
    auto mulb = [n](const std::vector<std::vector<bool>>& x, const std::vector<std::vector<bool>>& y) {
      std::vector<std::vector<bool>> z(n, std::vector<bool>(n, false));
      for (int i = 0; i < n; ++i)
        for (int t = 0; t < n; ++t)
          if (x[i][t])
            for (int j = 0; j < n; ++j)
              if (y[t][j]) z[i][j] = true;
      return z;
    };
    auto allpos = [n](const std::vector<std::vector<bool>>& x) {
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          if (!x[i][j]) return false;
      return true;
    };
    std::vector<std::vector<bool>> pw = reach;
    for (int k = 1; k <= bound; ++k) {
      if (allpos(pw)) {
        out.primitive = true;
        out.wielandt_exponent = k;
        break;
      }
      pw = mulb(pw, reach);
    }
  }

  // The abelianized action on Z^n sends e_i to ab(psi(i)), i.e. it is the
  // transpose of the occurrence matrix; the length vector is a left
  // eigenvector of that action (the exact length identity), and omega is its
  // positive right eigenvector.
  AlgNum beta = AlgNum::beta(f);
  out.perron.l_vec.clear();
  for (const auto& t : r.tiles) out.perron.l_vec.push_back(t.length);
  for (int i = 0; i < n; ++i) {
    AlgNum s = AlgNum::zero(f);
    for (int j = 0; j < n; ++j) s += out.perron.l_vec[j].scaled(Rat(out.matrix.a[i][j]));
    if (!(s == beta * out.perron.l_vec[i])) fail(errc::bad_input, "l A = beta l failed");
  }

  // right eigenvector of the action: kernel of (A^t - beta I), exact
  // elimination over Q(beta)
  {
    std::vector<std::vector<AlgNum>> m(n, std::vector<AlgNum>(n, AlgNum::zero(f)));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        m[i][j] = AlgNum::from_rat(f, Rat(out.matrix.a[j][i]));
        if (i == j) m[i][j] -= beta;
      }
    // forward elimination with exact pivoting
    std::vector<int> pivot_col(n, -1);
    int row = 0;
    for (int col = 0; col < n && row < n; ++col) {
      int pr = -1;
      for (int i = row; i < n; ++i)
        if (!m[i][col].is_zero()) { pr = i; break; }
      if (pr < 0) continue;
      std::swap(m[pr], m[row]);
      AlgNum inv = m[row][col].inverse();
      for (int j = col; j < n; ++j) m[row][j] = m[row][j] * inv;
      for (int i = 0; i < n; ++i) {
        if (i == row || m[i][col].is_zero()) continue;
        AlgNum fac = m[i][col];
        for (int j = col; j < n; ++j) m[i][j] -= fac * m[row][j];
      }
      pivot_col[row] = col;
      ++row;
    }
    if (row != n - 1) fail(errc::perron_mismatch, "beta is not a simple eigenvalue");
    // free column = the one that never became a pivot
    std::vector<bool> is_pivot(n, false);
    for (int i = 0; i < row; ++i) is_pivot[pivot_col[i]] = true;
    int freec = -1;
    for (int c = 0; c < n; ++c)
      if (!is_pivot[c]) { freec = c; break; }
    std::vector<AlgNum> omega(n, AlgNum::zero(f));
    omega[freec] = AlgNum::one(f);
    for (int i = 0; i < row; ++i) omega[pivot_col[i]] = -m[i][freec];
    // normalize <l, omega> = 1
    AlgNum dot = AlgNum::zero(f);
    for (int i = 0; i < n; ++i) dot += out.perron.l_vec[i] * omega[i];
    if (dot.is_zero()) fail(errc::perron_mismatch, "degenerate normalization <l, omega> = 0");
    AlgNum dinv = dot.inverse();
    for (auto& v : omega) v = v * dinv;
    // positivity (Perron vector): <l, omega> = 1 with l > 0 rules out the
    // all-negative branch, so every entry must come out positive
    for (auto& v : omega)
      if (v.sign() != Sign::positive) fail(errc::perron_mismatch, "omega not positive");
    // verify (action) omega = beta omega
    for (int i = 0; i < n; ++i) {
      AlgNum s = AlgNum::zero(f);
      for (int j = 0; j < n; ++j) s += omega[j].scaled(Rat(out.matrix.a[j][i]));
      if (!(s == beta * omega[i])) fail(errc::bad_input, "A omega = beta omega failed");
    }
    out.perron.omega = std::move(omega);
  }
  return out;
}

LanguageReport verify_language_properties(const SubstitutionRule& r, int depth) {
  if (depth < 1) fail(errc::bad_input, "depth must be >= 1");
  LanguageReport rep;
  rep.depth = depth;
  std::set<std::pair<int, int>> seen;
  for (int letter = 1; letter <= r.alphabet_size(); ++letter) {
    std::vector<int> w{letter};
    for (int n = 1; n <= depth; ++n) {
      std::vector<int> nw;
      for (int c : w) {
        const auto& img = r.word(c);
        nw.insert(nw.end(), img.begin(), img.end());
      }
      if (nw.size() > 2'000'000) fail(errc::iteration_budget_exceeded, "word blowup at depth");
      w = std::move(nw);
      for (size_t j = 0; j + 1 < w.size(); ++j) seen.emplace(w[j], w[j + 1]);
    }
  }
  rep.factors.assign(seen.begin(), seen.end());
  auto fmt = [](int a, int b) { return std::to_string(a) + std::to_string(b); };
  for (const auto& [a, b] : seen) {
    if (b >= 2 && a != b - 1) {
      rep.property1 = false;
      if (rep.offending1.empty()) rep.offending1 = fmt(a, b);
    }
  }
  for (const auto& [a, b] : seen)
    for (const auto& [a2, c] : seen) {
      if (a == a2 && b != c && b != 1 && c != 1) {
        rep.property2 = false;
        if (rep.offending2.empty()) rep.offending2 = fmt(a, b) + "," + fmt(a2, c);
      }
      if (b == c && a != a2 && c != 1) {
        rep.property3 = false;
        if (rep.offending3.empty()) rep.offending3 = fmt(a, b) + "," + fmt(a2, c);
      }
    }
  return rep;
}

IntPolynomial forced_polynomial(int m, int p, const DigitWord& digits) {
  if (static_cast<int>(digits.size()) != m + p) fail(errc::bad_input, "digit count mismatch");
  // (x^p - 1)(x^m - sum_{i<=m} c_i x^(m-i)) - sum_{j<=p} c_{m+j} x^(p-j)
  QPoly xp(p + 1, Rat(0));
  xp[p] = 1;
  xp[0] -= 1;
  QPoly head(m + 1, Rat(0));
  head[m] = 1;
  for (int i = 1; i <= m; ++i) head[m - i] -= Rat(digits[i - 1]);
  QPoly tail(p, Rat(0));
  for (int j = 1; j <= p; ++j) tail[p - j] += Rat(digits[m + j - 1]);
  QPoly e = qp_sub(qp_mul(xp, head), tail);
  std::vector<Int> z(e.size());
  for (size_t i = 0; i < e.size(); ++i) z[i] = e[i].get_num();
  return IntPolynomial(std::move(z));
}

SubstitutionAudit audit_claimed_substitution(const std::vector<std::vector<int>>& words, int m,
                                             int p, const DigitWord& digits) {
  SubstitutionAudit audit;
  int n = static_cast<int>(words.size());
  std::vector<std::vector<Rat>> a(n, std::vector<Rat>(n, Rat(0)));
  for (int i = 0; i < n; ++i)
    for (int c : words[i]) {
      if (c < 1 || c > n) fail(errc::bad_input, "letter out of range in claimed words");
      a[i][c - 1] += 1;
    }
  QPoly cp = char_poly(a);
  std::vector<Int> cpz(cp.size());
  for (size_t i = 0; i < cp.size(); ++i) cpz[i] = cp[i].get_num();
  audit.words_char_poly = IntPolynomial(std::move(cpz));
  // x may divide; factor_monic handles the split
  audit.words_factors = factor_monic(audit.words_char_poly);

  audit.forced_poly = forced_polynomial(m, p, digits);
  std::string claimed = digits_str(DigitWord(digits.begin(), digits.begin() + m),
                                   DigitWord(digits.begin() + m, digits.end()));
  std::ostringstream detail;
  detail << "claimed digits " << claimed << "; forced polynomial " << audit.forced_poly.text()
         << "; words char poly " << audit.words_char_poly.text() << " = ";
  for (size_t i = 0; i < audit.words_factors.size(); ++i) {
    if (i) detail << " * ";
    detail << "(" << audit.words_factors[i].text() << ")";
  }
  try {
    FieldPtr ff = verify_pisot(audit.forced_poly);
    audit.forced_is_pisot = true;
    KneadingData k = kneading_of(ff);
    detail << "; forced poly is Pisot with kneading " << k.digits_text();
    audit.consistent = (k.m == m && k.p == p && k.digits == digits);
  } catch (const error& e) {
    audit.forced_is_pisot = false;
    audit.forced_pisot_error = e.what();
    detail << "; forced poly rejected: " << e.what();
    audit.consistent = false;
  }
  // second route: does any Pisot factor of the words' char poly knead to the claim?
  if (!audit.consistent) {
    for (const auto& fac : audit.words_factors) {
      if (fac.degree() < 1) continue;
      try {
        FieldPtr ff = verify_pisot(fac);
        KneadingData k = kneading_of(ff);
        detail << "; Pisot factor " << fac.text() << " kneads to " << k.digits_text();
        if (k.m == m && k.p == p && k.digits == digits) audit.consistent = true;
      } catch (const error&) {
        // non-Pisot factor: irrelevant to the cross-check
      }
    }
  }
  audit.detail = detail.str();
  return audit;
}

}  // namespace betatile
