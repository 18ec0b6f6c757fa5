#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "betatile/tiling.hpp"

using namespace betatile;

static RulePtr rule_for(const char* poly) {
  FieldPtr f = verify_pisot(IntPolynomial::parse(poly));
  return build_substitution(kneading_of(f));
}

static void check_abutting(const RulePtr& r, const Patch& p) {
  for (size_t i = 0; i + 1 < p.tiles.size(); ++i) {
    AlgNum end = p.tiles[i].offset + r->tile(p.tiles[i].type).hi;
    AlgNum next = p.tiles[i + 1].offset + r->tile(p.tiles[i + 1].type).lo;
    CHECK(end == next);
  }
}

TEST_CASE("canonical periodic tilings: worked quadratic") {
  RulePtr r = rule_for("x^2-3x+1");
  auto ts = canonical_periodic_tilings(r);
  REQUIRE(ts.size() == 2);
  CHECK(ts[0].name() == "T_1");
  CHECK(ts[1].name() == "T_1^0");
  CHECK(ts[0].seed_left() == 1);
  CHECK(ts[0].seed_right() == 2);
  CHECK(ts[1].seed_left() == 1);
  CHECK(ts[1].seed_right() == 1);

  // psi-fixedness: the origin patch survives substitution
  for (const auto& T : ts) {
    Patch before = T.b0();
    Patch after = T.substituted().b0();
    REQUIRE(before.tiles.size() == after.tiles.size());
    for (size_t i = 0; i < before.tiles.size(); ++i) CHECK(before.tiles[i] == after.tiles[i]);
  }
}

TEST_CASE("canonical tilings: fixed seeds for simple fields") {
  auto fib = canonical_periodic_tilings(rule_for("x^2-x-1"));
  CHECK(fib.size() == 2);  // seeds (1,1) and (2,1)
  auto trib = canonical_periodic_tilings(rule_for("x^3-x^2-x-1"));
  CHECK(trib.size() == 3);
  auto plas = canonical_periodic_tilings(rule_for("x^3-x-1"));
  CHECK(plas.size() == 5);
}

TEST_CASE("window of the fixed tiling reproduces the substitution word") {
  RulePtr r = rule_for("x^2-3x+1");
  const FieldPtr& f = r->field;
  auto ts = canonical_periodic_tilings(r);
  const auto& T10 = ts[1];  // T_1^0, right side is the fixed word of letter 1

  Patch w = T10.window(AlgNum::zero(f), AlgNum::one(f));
  // [0, beta-2] type 1, [beta-2, 1] type 2, plus the touching neighbors at 0 and 1
  std::vector<int> types;
  for (const Tile& t : w.tiles) types.push_back(t.type);
  // touching tile ending at 0 is type 1 (the left seed), then 1, 2, then the
  // tile starting at 1 (type 1, since psi(1) = 121 continues 1|21...)
  REQUIRE(w.tiles.size() == 4);
  CHECK(types == std::vector<int>{1, 1, 2, 1});
  CHECK(w.tiles[1].offset.is_zero());
  check_abutting(r, w);

  // translation identity: window(T - t, lo, hi) = window(T, lo+t, hi+t) - t
  AlgNum t = AlgNum::from_rat(f, Rat(7, 5));
  Patch a = T10.translated(t).window(AlgNum::zero(f), AlgNum::one(f));
  Patch b = T10.window(t, AlgNum::one(f) + t);
  REQUIRE(a.tiles.size() == b.tiles.size());
  for (size_t i = 0; i < a.tiles.size(); ++i) {
    CHECK(a.tiles[i].type == b.tiles[i].type);
    CHECK(a.tiles[i].offset == b.tiles[i].offset - t);
  }
}

TEST_CASE("window/substitute consistency") {
  RulePtr r = rule_for("x^3-x^2-x-1");
  const FieldPtr& f = r->field;
  AlgNum beta = AlgNum::beta(f);
  auto ts = canonical_periodic_tilings(r);
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> num(-8, 8), den(1, 7);
  for (int i = 0; i < 10; ++i) {
    AlgNum t = AlgNum::from_rat(f, make_rat(num(rng), den(rng)));
    SubstitutiveTiling T = ts[i % ts.size()].translated(t);
    AlgNum lo = AlgNum::from_rat(f, make_rat(num(rng), den(rng)));
    AlgNum hi = lo + AlgNum::from_rat(f, Rat(2));
    Patch w = T.window(lo, hi);
    check_abutting(r, w);
    // Psi(window) vs window of Psi(T) on the scaled interval
    Patch sw = T.substituted().window(beta * lo, beta * hi);
    check_abutting(r, sw);
    // exact set equality away from the boundary: inflate every window tile by
    // the rule and compare the tiles fully inside [beta lo, beta hi]
    std::set<std::string> inflated, scaled;
    auto key = [&](const Tile& t) { return std::to_string(t.type) + "|" + t.offset.key(); };
    auto inside = [&](const Tile& t) {
      AlgNum a = t.offset + r->tile(t.type).lo;
      AlgNum b = t.offset + r->tile(t.type).hi;
      return (a - beta * lo).sign() != Sign::negative && (beta * hi - b).sign() != Sign::negative;
    };
    for (const Tile& t : w.tiles) {
      // Psi(tau_i + s) tiles [beta(lo_i+s), beta(hi_i+s)] by the word of i
      AlgNum pos = beta * (t.offset + r->tile(t.type).lo);
      for (int c : r->word(t.type)) {
        Tile child{c, pos - r->tile(c).lo};
        if (inside(child)) inflated.insert(key(child));
        pos += r->tile(c).length;
      }
    }
    for (const Tile& t : sw.tiles)
      if (inside(t)) scaled.insert(key(t));
    CHECK(inflated == scaled);
  }
}

TEST_CASE("intertwining: Psi(T - t) = Psi(T) - beta t") {
  RulePtr r = rule_for("x^2-3x+1");
  const FieldPtr& f = r->field;
  AlgNum beta = AlgNum::beta(f);
  auto ts = canonical_periodic_tilings(r);
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> num(-9, 9), den(1, 5);
  for (int i = 0; i < 10; ++i) {
    AlgNum t = AlgNum::from_rat(f, make_rat(num(rng), den(rng)));
    const auto& T = ts[i % 2];
    SubstitutiveTiling lhs = T.translated(t).substituted();
    SubstitutiveTiling rhs = T.substituted().translated(beta * t);
    CHECK(lhs.offset() == rhs.offset());
    CHECK(lhs.phase() == rhs.phase());
    CHECK(lhs.same_seed(rhs));
    // and the length identity beta(beta-2) = beta-1 for psi(1) = 121
    AlgNum l1 = r->tile(1).length, l2 = r->tile(2).length;
    CHECK(beta * l1 == l1 + l2 + l1);
  }
}

TEST_CASE("stable equivalence: worked quadratic") {
  RulePtr r = rule_for("x^2-3x+1");
  const FieldPtr& f = r->field;
  auto ts = canonical_periodic_tilings(r);
  const auto& T1 = ts[0];
  const auto& T10 = ts[1];

  // t in the region beyond the asymptoticity point: both tilings share the
  // tile at t, so they coincide at depth 0
  StableResult r0 = stable_equiv_test(T1, T10, AlgNum::from_rat(f, Rat(3, 2)), 0);
  CHECK(r0.coincides);
  CHECK(r0.depth == 0);

  // t = (beta-2)/2: inside the disagreement zone, needs some inflation
  AlgNum t = (AlgNum::beta(f) - AlgNum::from_rat(f, Rat(2))).scaled(Rat(1, 2));
  StableResult r1 = stable_equiv_test(T1, T10, t, 60);
  CHECK(r1.coincides);
  CHECK(r1.depth > 0);
  CHECK(r1.depth <= 60);

  // monotonicity: coincidence persists at deeper levels
  for (int extra = 1; extra <= 2; ++extra) {
    SubstitutiveTiling S = T1.translated(t).iterated(r1.depth + extra);
    SubstitutiveTiling Sp = T10.translated(t).iterated(r1.depth + extra);
    Patch a = S.b0(), b = Sp.b0();
    REQUIRE(a.tiles.size() == b.tiles.size());
    for (size_t i = 0; i < a.tiles.size(); ++i) CHECK(a.tiles[i] == b.tiles[i]);
  }

  // K = 0 with differing tiles at the junction: unknown
  StableResult r2 = stable_equiv_test(T1, T10, AlgNum::zero(f), 0);
  CHECK_FALSE(r2.coincides);
}

TEST_CASE("dense stable scan reaches full fraction on (0,1]") {
  RulePtr r = rule_for("x^2-3x+1");
  auto ts = canonical_periodic_tilings(r);
  ScanReport rep = dense_stable_scan(ts[0], ts[1], Rat(0), Rat(1), 16, 60);
  CHECK(rep.coincided == 16);
  CHECK(rep.fraction() == 1);
  CHECK(rep.failures.empty());

  ScanReport tiny = dense_stable_scan(ts[0], ts[1], Rat(0), Rat(1), 1, 60);
  CHECK(tiny.grid == 1);

  ScanReport k0 = dense_stable_scan(ts[0], ts[1], Rat(0), Rat(1), 8, 0);
  CHECK(k0.coincided < 8);  // budget 0 cannot resolve the disagreement zone
}

TEST_CASE("asymptotic pair of the worked quadratic: exact t0 = 1") {
  RulePtr r = rule_for("x^2-3x+1");
  const FieldPtr& f = r->field;
  auto ts = canonical_periodic_tilings(r);
  AlgNum horizon = AlgNum::from_rat(f, Rat(40));
  AsymptoticResult res = asymptotic_test(ts[1], ts[0], horizon);
  REQUIRE(res.asymptotic);
  CHECK(res.t0 == AlgNum::one(f));

  // (T, T) is trivially asymptotic with t0 <= 0
  AsymptoticResult self = asymptotic_test(ts[0], ts[0], horizon);
  CHECK(self.asymptotic);
  CHECK(self.t0.is_zero());
}

TEST_CASE("non-simple field with p = 2: T_1 and T_2 diverge on R+") {
  RulePtr r = rule_for("x^3-4x^2-3x+1");  // kneading 4(23)
  REQUIRE(r->kneading.m == 1);
  REQUIRE(r->kneading.p == 2);
  const FieldPtr& f = r->field;
  auto ts = canonical_periodic_tilings(r);
  REQUIRE(ts.size() == 4);  // T_1, T_2, T_1^0, T_2^0
  AlgNum horizon = AlgNum::from_rat(f, Rat(60));
  AsymptoticResult res = asymptotic_test(ts[0], ts[1], horizon);
  CHECK_FALSE(res.asymptotic);
  CHECK((res.witness - horizon.scaled(Rat(1, 2))).sign() == Sign::positive);

  // while the T_i^0 pair is asymptotic (they share the right seed)
  AsymptoticResult res0 = asymptotic_test(ts[2], ts[3], horizon);
  CHECK(res0.asymptotic);
}

TEST_CASE("digit itinerary") {
  RulePtr r = rule_for("x^2-3x+1");
  const FieldPtr& f = r->field;
  AlgNum beta = AlgNum::beta(f);
  auto ts = canonical_periodic_tilings(r);

  // T_1^0 has a type-1 tile at the origin: t_* = 0 and all digits vanish
  CHECK(ts[1].t_star().is_zero());
  auto d0 = digit_itinerary(ts[1], -3, 3);
  CHECK(d0 == std::vector<int>(7, 0));

  // T_1: t_* = -(beta-2), digits are the periodic tail value 1
  AlgNum expect_ts = AlgNum::from_rat(f, Rat(2)) - beta;
  CHECK(ts[0].t_star() == expect_ts);
  auto d1 = digit_itinerary(ts[0], -2, 4);
  CHECK(d1 == std::vector<int>(7, 1));

  // semiconjugacy: -t_*(Psi(T)) = T_beta(-t_*(T)) along random translates
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<int> num(1, 30), den(31, 60);
  for (int i = 0; i < 12; ++i) {
    SubstitutiveTiling T = ts[i % 2].translated(AlgNum::from_rat(f, make_rat(num(rng), den(rng))));
    AlgNum y = -T.t_star();
    AlgNum bx = beta * y;
    AlgNum expect = bx - AlgNum::from_rat(f, Rat(bx.floor()));
    CHECK(-T.substituted().t_star() == expect);
  }

  // itinerary digits are admissible
  auto digs = digit_itinerary(ts[0].translated(AlgNum::from_rat(f, Rat(5, 7))), 0, 14);
  CHECK(is_admissible(r->kneading, digs));
}

TEST_CASE("sampled window patches are allowed") {
  // every produced patch must occur inside some psi^n(letter)
  RulePtr r = rule_for("x^2-3x+1");
  const FieldPtr& f = r->field;
  auto ts = canonical_periodic_tilings(r);
  // expand a long reference word psi^12(1)
  std::vector<int> ref{1};
  for (int n = 0; n < 12; ++n) {
    std::vector<int> nxt;
    for (int c : ref) {
      const auto& img = r->word(c);
      nxt.insert(nxt.end(), img.begin(), img.end());
    }
    ref = std::move(nxt);
  }
  std::string ref_s;
  for (int c : ref) ref_s.push_back(static_cast<char>('0' + c));
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<int> num(-40, 40), den(1, 9);
  for (int it = 0; it < 20; ++it) {
    SubstitutiveTiling T = ts[it % 2].translated(AlgNum::from_rat(f, make_rat(num(rng), den(rng))));
    AlgNum lo = AlgNum::from_rat(f, make_rat(num(rng), den(rng)));
    Patch w = T.window(lo, lo + AlgNum::from_rat(f, Rat(3)));
    std::string word;
    for (const Tile& t : w.tiles) word.push_back(static_cast<char>('0' + t.type));
    CHECK(ref_s.find(word) != std::string::npos);
  }
}

TEST_CASE("spectrum certificates at small grid") {
  for (const char* s : {"x^2-3x+1", "x^2-x-1"}) {
    CAPTURE(s);
    SpectrumCertificate cert = spectrum_certificate(rule_for(s), 12, 60);
    CHECK(cert.certified);
    for (const auto& ps : cert.pairs) CHECK(ps.report.fraction() == 1);
  }
  // K = 0 cannot resolve the junction-zone samples
  SpectrumCertificate weak = spectrum_certificate(rule_for("x^2-3x+1"), 12, 0);
  CHECK_FALSE(weak.certified);
}
