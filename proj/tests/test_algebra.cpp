#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "betatile/algnum.hpp"

using namespace betatile;

static FieldPtr golden() { return verify_pisot(IntPolynomial::parse("x^2-3x+1")); }

TEST_CASE("verify_pisot accepts the worked quadratic") {
  FieldPtr f = golden();
  CHECK(f->degree() == 2);
  QInterval e = f->enclosure(16);
  CHECK(e.lo > Rat(261, 100));
  CHECK(e.hi < Rat(262, 100));
  CHECK(f->theta_max() < 1);
  CHECK(f->theta_max() > 0);
  // other root is 1/beta ~ 0.381966
  CHECK(f->theta_max() > Rat(38, 100));
  CHECK(f->theta_max() < Rat(45, 100));
}

TEST_CASE("verify_pisot accepts tribonacci, plastic, fibonacci and integers") {
  CHECK(verify_pisot(IntPolynomial::parse("x^3-x^2-x-1"))->theta_max() < 1);
  CHECK(verify_pisot(IntPolynomial::parse("x^3-x-1"))->theta_max() < 1);
  CHECK(verify_pisot(IntPolynomial::parse("x^2-x-1"))->theta_max() < 1);
  FieldPtr two = verify_pisot(IntPolynomial::parse("x-2"));
  CHECK(two->degree() == 1);
  CHECK(two->theta_max() == 0);
}

TEST_CASE("verify_pisot rejections") {
  CHECK_THROWS_WITH_AS(verify_pisot(IntPolynomial::parse("2x^2-3x+1")), doctest::Contains("NotMonic"),
                       error);
  try {
    verify_pisot(IntPolynomial::parse("x^2-2x"));  // x(x-2)
    FAIL("expected NotIrreducible");
  } catch (const error& e) {
    CHECK(e.code() == errc::not_irreducible);
  }
  try {
    verify_pisot(IntPolynomial::parse("x^4-2x^3-3x^2+2x+1"));
    FAIL("expected NotPisot");
  } catch (const error& e) {
    CHECK(e.code() == errc::not_pisot);
    // certified witness: a real conjugate enclosure inside [-2, -1]
    CHECK(std::string(e.what()).find("real conjugate") != std::string::npos);
  }
  try {
    verify_pisot(IntPolynomial::parse("1,0,1"));  // x^2+1, no real root > 1
    FAIL("expected NotPisot");
  } catch (const error& e) {
    CHECK(e.code() == errc::not_pisot);
  }
  try {
    verify_pisot(IntPolynomial::parse("x^2-5x+5"));  // both roots > 1
    FAIL("expected NotPisot");
  } catch (const error& e) {
    CHECK(e.code() == errc::not_pisot);
  }
  // Salem-like self-reciprocal with unit-circle conjugates: x^4-x^3-x^2-x+1
  try {
    verify_pisot(IntPolynomial::parse("x^4-x^3-x^2-x+1"));
    FAIL("expected NotPisot");
  } catch (const error& e) {
    CHECK(e.code() == errc::not_pisot);
  }
  try {
    verify_pisot(IntPolynomial::parse("x-1"));
    FAIL("expected NotPisot");
  } catch (const error& e) {
    CHECK(e.code() == errc::not_pisot);
  }
}

TEST_CASE("deflation-style invariant: |p(0)| < beta for verified fields") {
  for (const char* s : {"x^2-3x+1", "x^3-x^2-x-1", "x^3-x-1", "x^2-x-1"}) {
    FieldPtr f = verify_pisot(IntPolynomial::parse(s));
    AlgNum beta = AlgNum::beta(f);
    Rat p0 = rat_abs(Rat(f->minpoly().c[0]));
    CHECK((AlgNum::from_rat(f, p0) - beta).sign() == Sign::negative);
    SturmChain st(qp_from(f->minpoly()));
    CHECK(st.count_gt(Rat(1)) == 1);
  }
}

TEST_CASE("field arithmetic identities in the worked quadratic") {
  FieldPtr f = golden();
  AlgNum beta = AlgNum::beta(f);
  AlgNum one = AlgNum::one(f);
  AlgNum two = AlgNum::from_rat(f, Rat(2));

  // beta^2 = 3 beta - 1
  CHECK(beta * beta == beta.scaled(Rat(3)) - one);
  // (beta - 2) * beta = beta - 1
  CHECK((beta - two) * beta == beta - one);
  // 1/beta = 3 - beta
  CHECK(beta.inverse() == AlgNum::from_rat(f, Rat(3)) - beta);
  // a - a = 0
  AlgNum a = AlgNum::from_coords(f, {Rat(7, 3), Rat(-2, 5)});
  CHECK((a - a).is_zero());
  CHECK(a / a == one);
}

TEST_CASE("field axioms on random samples") {
  FieldPtr f = verify_pisot(IntPolynomial::parse("x^3-x-1"));
  std::mt19937_64 rng(12345);
  auto rnd = [&] {
    std::uniform_int_distribution<int> num(-20, 20), den(1, 9);
    return AlgNum::from_coords(
        f, {make_rat(num(rng), den(rng)), make_rat(num(rng), den(rng)), make_rat(num(rng), den(rng))});
  };
  for (int i = 0; i < 200; ++i) {
    AlgNum a = rnd(), b = rnd(), c = rnd();
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a + (-a) == AlgNum::zero(f));
    if (!a.is_zero()) CHECK(a * a.inverse() == AlgNum::one(f));
  }
}

TEST_CASE("sign_of agrees with a 100-digit floating evaluation") {
  FieldPtr f = verify_pisot(IntPolynomial::parse("x^3-x^2-x-1"));
  // 400-bit float root by Newton; independent of the interval machinery
  mpf_set_default_prec(400);
  mpf_class x(1.8);
  for (int i = 0; i < 200; ++i) {
    mpf_class fx = x * x * x - x * x - x - 1;
    mpf_class dfx = 3 * x * x - 2 * x - 1;
    x -= fx / dfx;
  }
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> num(-30, 30), den(1, 7);
  for (int i = 0; i < 1000; ++i) {
    std::vector<Rat> c{make_rat(num(rng), den(rng)), make_rat(num(rng), den(rng)), make_rat(num(rng), den(rng))};
    AlgNum a = AlgNum::from_coords(f, c);
    mpf_class v = mpf_class(c[0].get_num()) / mpf_class(c[0].get_den()) +
                  x * (mpf_class(c[1].get_num()) / mpf_class(c[1].get_den())) +
                  x * x * (mpf_class(c[2].get_num()) / mpf_class(c[2].get_den()));
    int expect = v > 1e-80 ? 1 : (v < -1e-80 ? -1 : 0);
    if (expect == 0) continue;  // too close to call in the oracle; skip
    CHECK(static_cast<int>(a.sign()) == expect);
  }
}

TEST_CASE("sign and floor worked values") {
  FieldPtr f = golden();
  AlgNum beta = AlgNum::beta(f);
  AlgNum two = AlgNum::from_rat(f, Rat(2));
  CHECK((beta - two).sign() == Sign::positive);
  CHECK(AlgNum::zero(f).sign() == Sign::zero);
  CHECK((two - beta).sign() == Sign::negative);
  CHECK(beta.floor() == 2);
  CHECK(AlgNum::one(f).floor() == 1);
  CHECK((beta - two).floor() == 0);
  CHECK((-beta).floor() == -3);
  CHECK(AlgNum::from_rat(f, Rat(-7, 2)).floor() == -4);
}

TEST_CASE("floor sandwich on random samples") {
  FieldPtr f = golden();
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> num(-40, 40), den(1, 11);
  for (int i = 0; i < 300; ++i) {
    AlgNum a = AlgNum::from_coords(f, {make_rat(num(rng), den(rng)), make_rat(num(rng), den(rng))});
    Int n = a.floor();
    AlgNum fn = AlgNum::from_rat(f, Rat(n));
    AlgNum fn1 = AlgNum::from_rat(f, Rat(n + 1));
    CHECK((a - fn).sign() != Sign::negative);
    CHECK((a - fn1).sign() == Sign::negative);
  }
}

TEST_CASE("Z[1/beta] membership") {
  FieldPtr f = golden();  // unit: p(0) = 1
  AlgNum beta = AlgNum::beta(f);
  AlgNum two = AlgNum::from_rat(f, Rat(2));
  CHECK(in_z_inv_beta(beta - two));
  CHECK_FALSE(in_z_inv_beta(AlgNum::from_rat(f, Rat(1, 2))));
  CHECK(in_z_inv_beta(beta.inverse()));
  CHECK(in_z_inv_beta(AlgNum::zero(f)));

  // non-unit: x^2-2x-2 has p(0) = -2, so halves clear but thirds never do
  FieldPtr g = verify_pisot(IntPolynomial::parse("x^2-2x-2"));
  AlgNum bg = AlgNum::beta(g);
  CHECK(in_z_inv_beta(bg.inverse()));                         // 1/beta = (beta-2)/2
  CHECK(in_z_inv_beta(AlgNum::from_rat(g, Rat(1, 2))));       // beta^2/2 - beta = 1... exact check below
  CHECK_FALSE(in_z_inv_beta(AlgNum::from_rat(g, Rat(1, 3))));
  // sanity: beta * (1/2) iterates to integrality
  CHECK(in_z_inv_beta(bg.scaled(Rat(1, 2))));
}

TEST_CASE("enclosure widths are certified") {
  FieldPtr f = verify_pisot(IntPolynomial::parse("x^3-x-1"));
  AlgNum a = AlgNum::from_coords(f, {Rat(1, 3), Rat(-2), Rat(5, 7)});
  QInterval iv = a.enclosure(100);
  CHECK(iv.width() <= Rat(1, Int(1) << 100));
  double d = a.to_double();
  CHECK(d > rat_dbl(iv.lo) - 1e-12);
  CHECK(d < rat_dbl(iv.hi) + 1e-12);
}
