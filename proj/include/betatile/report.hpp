#pragma once

#include <json.hpp>

#include "betatile/geometry.hpp"

namespace betatile {

using Json = nlohmann::ordered_json;

// Exact values are rendered with both their exact form and a display double.
Json json_of(const Rat& q);
Json json_of(const AlgNum& a);
Json json_of(const IntPolynomial& p);
Json json_of(const QInterval& iv);
Json json_of(const KneadingData& k);
Json json_of(const SubstitutionRule& r);
Json json_of(const SubstitutionMatrix& m);
Json json_of(const PerronData& p);
Json json_of(const LanguageReport& r);
Json json_of(const BetaExpansion& e);
Json json_of(const ScanReport& r);
Json json_of(const SpectrumCertificate& c);
Json json_of(const TorusPoint& t);
Json json_of(const SolenoidPoint& s);
Json json_of(const HomoclinicCertificate& h);
Json json_of(const SubstitutionAudit& a);
Json json_of(const CodingReport& r);

// Full analysis bundle emitted by the `analyze` subcommand.
struct AnalysisReport {
  std::string schema_version = "1";
  std::string poly_text;
  std::string coeffs;        // constant-first integer list
  int degree = 0;
  std::string beta_lo, beta_hi;  // exact enclosure endpoints
  double beta_dec = 0;
  std::string theta_max;
  int m = 0, p = 0;
  std::string kneading_digits;
  struct Proto {
    std::string min, max, length;  // exact coordinate strings
    double min_dec = 0, max_dec = 0;
  };
  std::vector<Proto> prototiles;
  std::string words;
  std::vector<std::vector<int>> word_lists;
  std::vector<std::vector<long>> matrix;
  std::string char_poly, q_factor;
  bool primitive = false;
  int language_depth = 0;
  bool property1 = false, property2 = false, property3 = false;
  bool identities_ok = false;    // the exact eigen/length identity bundle
  bool homoclinic_ok = false;
  std::string homoclinic_det;
  std::vector<std::string> e_gamma;
  uint64_t seed = 0;
  double elapsed_seconds = -1;   // emitted only when timings are requested

  Json to_json() const;
  static AnalysisReport from_json(const Json& j);
};

AnalysisReport analyze_field(const IntPolynomial& poly, int language_depth, uint64_t seed);

}  // namespace betatile
