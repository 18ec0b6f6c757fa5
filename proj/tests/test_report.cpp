#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "betatile/report.hpp"

using namespace betatile;

TEST_CASE("analysis report round-trips through json losslessly") {
  AnalysisReport rep = analyze_field(IntPolynomial::parse("x^2-3x+1"), 6, 42);
  Json j1 = rep.to_json();
  AnalysisReport back = AnalysisReport::from_json(j1);
  Json j2 = back.to_json();
  CHECK(j1 == j2);
  CHECK(j1.dump() == j2.dump());
  CHECK(back.schema_version == "1");
  CHECK(back.kneading_digits == "2(1)");
  CHECK(back.words == "1->121; 2->21");
  CHECK(back.seed == 42);
}

TEST_CASE("analyze report carries exact prototiles") {
  AnalysisReport rep = analyze_field(IntPolynomial::parse("x^2-3x+1"), 4, 0);
  REQUIRE(rep.prototiles.size() == 2);
  CHECK(rep.prototiles[0].min == "0,0");
  CHECK(rep.prototiles[0].max == "-2,1");  // beta - 2
  CHECK(rep.prototiles[1].min == "-2,1");
  CHECK(rep.prototiles[1].max == "1,0");
  CHECK(rep.identities_ok);
  CHECK(rep.homoclinic_ok);
  CHECK(rep.primitive);
  CHECK((rep.homoclinic_det == "1" || rep.homoclinic_det == "-1"));
}

TEST_CASE("exact values carry exact renderings") {
  FieldPtr f = verify_pisot(IntPolynomial::parse("x^2-3x+1"));
  AlgNum beta = AlgNum::beta(f);
  Json j = json_of(beta - AlgNum::from_rat(f, Rat(2)));
  CHECK(j["coords"][0] == "-2");
  CHECK(j["coords"][1] == "1");
  CHECK(j["dec"].get<double>() == doctest::Approx(0.61803398875));

  Json q = json_of(Rat(22, 7));
  CHECK(q["exact"] == "22/7");
}

TEST_CASE("audit report renders both computations") {
  SubstitutionAudit a =
      audit_claimed_substitution({{1, 2}, {3, 4}, {2, 3, 4, 1}, {2, 3}}, 2, 2, {2, 2, 0, 1});
  Json j = json_of(a);
  CHECK(j["forced_poly"]["text"] == "x^4-2x^3-3x^2+2x+1");
  CHECK(j["consistent"] == false);
  CHECK(j["forced_is_pisot"] == false);
  std::string detail = j["detail"].get<std::string>();
  CHECK(detail.find("x^2-3x+1") != std::string::npos);
  CHECK(detail.find("2(1)") != std::string::npos);
}
