#include "betatile/report.hpp"

namespace betatile {

Json json_of(const Rat& q) {
  return Json{{"exact", rat_str(q)}, {"dec", rat_dbl(q)}};
}

Json json_of(const AlgNum& a) {
  Json coords = Json::array();
  for (const Rat& c : a.coords()) coords.push_back(rat_str(c));
  return Json{{"coords", coords}, {"dec", a.to_double()}};
}

Json json_of(const IntPolynomial& p) {
  return Json{{"text", p.text()}, {"coeffs", p.coeff_list()}};
}

Json json_of(const QInterval& iv) {
  return Json{{"lo", rat_str(iv.lo)}, {"hi", rat_str(iv.hi)}, {"dec", rat_dbl((iv.lo + iv.hi) / 2)}};
}

Json json_of(const KneadingData& k) {
  return Json{{"m", k.m}, {"p", k.p}, {"digits", k.digits_text()},
              {"simple_parry", k.simple_parry}};
}

Json json_of(const SubstitutionRule& r) {
  Json tiles = Json::array();
  for (const auto& t : r.tiles)
    tiles.push_back(Json{{"index", t.index},
                         {"min", json_of(t.lo)},
                         {"max", json_of(t.hi)},
                         {"length", json_of(t.length)}});
  Json words = Json::array();
  for (const auto& w : r.words) words.push_back(w);
  return Json{{"alphabet_size", r.alphabet_size()},
              {"prototiles", tiles},
              {"words", r.words_text()},
              {"word_lists", words}};
}

Json json_of(const SubstitutionMatrix& m) {
  Json rows = Json::array();
  for (const auto& row : m.a) {
    Json r = Json::array();
    for (const Int& v : row) r.push_back(v.get_si());
    rows.push_back(r);
  }
  return rows;
}

Json json_of(const PerronData& p) {
  Json l = Json::array(), w = Json::array();
  for (const auto& v : p.l_vec) l.push_back(json_of(v));
  for (const auto& v : p.omega) w.push_back(json_of(v));
  return Json{{"char_poly", json_of(p.char_poly)},
              {"q_factor", json_of(p.q_factor)},
              {"l", l},
              {"omega", w}};
}

Json json_of(const LanguageReport& r) {
  Json factors = Json::array();
  for (auto [a, b] : r.factors) factors.push_back(std::to_string(a) + std::to_string(b));
  Json j{{"depth", r.depth},
         {"property1", r.property1},
         {"property2", r.property2},
         {"property3", r.property3},
         {"factors", factors}};
  if (!r.property1) j["offending1"] = r.offending1;
  if (!r.property2) j["offending2"] = r.offending2;
  if (!r.property3) j["offending3"] = r.offending3;
  return j;
}

Json json_of(const BetaExpansion& e) {
  return Json{{"scale", e.scale_k},
              {"head", e.head},
              {"period", e.period},
              {"finite", e.finite()},
              {"text", e.text()}};
}

Json json_of(const ScanReport& r) {
  Json fails = Json::array();
  for (const Rat& t : r.failures) fails.push_back(rat_str(t));
  return Json{{"grid", r.grid},
              {"budget", r.budget},
              {"coincided", r.coincided},
              {"fraction", json_of(r.fraction())},
              {"failures", fails},
              {"depths", r.depths}};
}

Json json_of(const SpectrumCertificate& c) {
  Json pairs = Json::array();
  for (const auto& ps : c.pairs)
    pairs.push_back(Json{{"pair", ps.left + "," + ps.right}, {"scan", json_of(ps.report)}});
  return Json{{"grid", c.grid},
              {"budget", c.budget},
              {"verdict", c.certified ? "Certified" : "Inconclusive"},
              {"pairs", pairs}};
}

Json json_of(const TorusPoint& t) {
  Json c = Json::array();
  for (const auto& v : t.x) c.push_back(json_of(v));
  return c;
}

Json json_of(const SolenoidPoint& s) {
  Json lv = Json::array();
  for (const auto& t : s.levels) lv.push_back(json_of(t));
  return Json{{"levels", lv}};
}

Json json_of(const HomoclinicCertificate& h) {
  Json e = Json::array();
  for (const Int& z : h.e_gamma) e.push_back(z.get_str());
  return Json{{"e_gamma", e},
              {"basis_det", h.basis_det.get_str()},
              {"fundamental", h.fundamental},
              {"lattice_unit_det", h.lattice_unit_det.get_str()},
              {"gamma_u_is_z_beta", h.gamma_u_is_z_beta}};
}

Json json_of(const SubstitutionAudit& a) {
  Json facs = Json::array();
  for (const auto& fp : a.words_factors) facs.push_back(fp.text());
  return Json{{"words_char_poly", json_of(a.words_char_poly)},
              {"words_factors", facs},
              {"forced_poly", json_of(a.forced_poly)},
              {"forced_is_pisot", a.forced_is_pisot},
              {"forced_pisot_error", a.forced_pisot_error},
              {"consistent", a.consistent},
              {"detail", a.detail}};
}

Json json_of(const CodingReport& r) {
  return Json{{"samples", r.samples},
              {"levels", r.levels},
              {"eps", rat_str(r.eps)},
              {"consistent", r.consistent},
              {"exact_matches", r.exact_matches},
              {"collision_samples", r.collision_samples},
              {"collision_pairs", r.collision_pairs}};
}

Json AnalysisReport::to_json() const {
  Json j;
  j["schema_version"] = schema_version;
  j["field"] = Json{{"poly", poly_text},
                    {"coeffs", coeffs},
                    {"degree", degree},
                    {"beta", Json{{"lo", beta_lo}, {"hi", beta_hi}, {"dec", beta_dec}}},
                    {"theta_max", theta_max}};
  j["kneading"] = Json{{"m", m}, {"p", p}, {"digits", kneading_digits}};
  Json protos = Json::array();
  for (const auto& t : prototiles)
    protos.push_back(Json{{"min", t.min},
                          {"max", t.max},
                          {"length", t.length},
                          {"min_dec", t.min_dec},
                          {"max_dec", t.max_dec}});
  j["prototiles"] = protos;
  j["substitution"] = Json{{"words", words}, {"word_lists", word_lists}};
  j["matrix"] = matrix;
  j["perron"] = Json{{"char_poly", char_poly}, {"q_factor", q_factor}, {"primitive", primitive}};
  j["language"] = Json{{"depth", language_depth},
                       {"property1", property1},
                       {"property2", property2},
                       {"property3", property3}};
  j["certificates"] = Json{{"exact_identities", identities_ok},
                           {"fundamental_homoclinic", homoclinic_ok},
                           {"homoclinic_det", homoclinic_det},
                           {"e_gamma", e_gamma}};
  j["seed"] = seed;
  if (elapsed_seconds >= 0) j["timings"] = Json{{"elapsed_seconds", elapsed_seconds}};
  return j;
}

AnalysisReport AnalysisReport::from_json(const Json& j) {
  AnalysisReport r;
  r.schema_version = j.at("schema_version").get<std::string>();
  const Json& f = j.at("field");
  r.poly_text = f.at("poly").get<std::string>();
  r.coeffs = f.at("coeffs").get<std::string>();
  r.degree = f.at("degree").get<int>();
  r.beta_lo = f.at("beta").at("lo").get<std::string>();
  r.beta_hi = f.at("beta").at("hi").get<std::string>();
  r.beta_dec = f.at("beta").at("dec").get<double>();
  r.theta_max = f.at("theta_max").get<std::string>();
  r.m = j.at("kneading").at("m").get<int>();
  r.p = j.at("kneading").at("p").get<int>();
  r.kneading_digits = j.at("kneading").at("digits").get<std::string>();
  for (const Json& t : j.at("prototiles")) {
    AnalysisReport::Proto pr;
    pr.min = t.at("min").get<std::string>();
    pr.max = t.at("max").get<std::string>();
    pr.length = t.at("length").get<std::string>();
    pr.min_dec = t.at("min_dec").get<double>();
    pr.max_dec = t.at("max_dec").get<double>();
    r.prototiles.push_back(std::move(pr));
  }
  r.words = j.at("substitution").at("words").get<std::string>();
  r.word_lists = j.at("substitution").at("word_lists").get<std::vector<std::vector<int>>>();
  r.matrix = j.at("matrix").get<std::vector<std::vector<long>>>();
  r.char_poly = j.at("perron").at("char_poly").get<std::string>();
  r.q_factor = j.at("perron").at("q_factor").get<std::string>();
  r.primitive = j.at("perron").at("primitive").get<bool>();
  r.language_depth = j.at("language").at("depth").get<int>();
  r.property1 = j.at("language").at("property1").get<bool>();
  r.property2 = j.at("language").at("property2").get<bool>();
  r.property3 = j.at("language").at("property3").get<bool>();
  r.identities_ok = j.at("certificates").at("exact_identities").get<bool>();
  r.homoclinic_ok = j.at("certificates").at("fundamental_homoclinic").get<bool>();
  r.homoclinic_det = j.at("certificates").at("homoclinic_det").get<std::string>();
  r.e_gamma = j.at("certificates").at("e_gamma").get<std::vector<std::string>>();
  r.seed = j.at("seed").get<uint64_t>();
  if (j.contains("timings")) r.elapsed_seconds = j.at("timings").at("elapsed_seconds").get<double>();
  return r;
}

AnalysisReport analyze_field(const IntPolynomial& poly, int language_depth, uint64_t seed) {
  AnalysisReport rep;
  rep.seed = seed;
  FieldPtr f = verify_pisot(poly);
  rep.poly_text = poly.text();
  rep.coeffs = poly.coeff_list();
  rep.degree = f->degree();
  QInterval enc = f->enclosure(64);
  rep.beta_lo = rat_str(enc.lo);
  rep.beta_hi = rat_str(enc.hi);
  rep.beta_dec = f->beta_double();
  rep.theta_max = rat_str(f->theta_max());

  KneadingData kn = kneading_of(f);
  rep.m = kn.m;
  rep.p = kn.p;
  rep.kneading_digits = kn.digits_text();

  RulePtr rule = build_substitution(kn);
  for (const auto& t : rule->tiles) {
    AnalysisReport::Proto pr;
    pr.min = t.lo.str();
    pr.max = t.hi.str();
    pr.length = t.length.str();
    pr.min_dec = t.lo.to_double();
    pr.max_dec = t.hi.to_double();
    rep.prototiles.push_back(std::move(pr));
  }
  rep.words = rule->words_text();
  rep.word_lists = rule->words;

  AbelianizationResult ab = abelianize_and_perron(*rule);
  rep.matrix.assign(ab.matrix.size(), {});
  for (int i = 0; i < ab.matrix.size(); ++i)
    for (const Int& v : ab.matrix.a[i]) rep.matrix[i].push_back(v.get_si());
  rep.char_poly = ab.perron.char_poly.text();
  rep.q_factor = ab.perron.q_factor.text();
  rep.primitive = ab.primitive;

  LanguageReport lr = verify_language_properties(*rule, language_depth);
  rep.language_depth = lr.depth;
  rep.property1 = lr.property1;
  rep.property2 = lr.property2;
  rep.property3 = lr.property3;

  // the exact identity bundle: lengths sum to 1, length scaling, eigen
  // equations, normalization; all already asserted inside the constructors,
  // re-run here so the report records a genuine re-check
  bool ok = true;
  {
    const FieldPtr& ff = rule->field;
    AlgNum beta = AlgNum::beta(ff);
    AlgNum tot = AlgNum::zero(ff);
    for (const auto& t : rule->tiles) tot += t.length;
    ok = ok && (tot == AlgNum::one(ff));
    for (int i = 1; i <= rule->alphabet_size() && ok; ++i) {
      AlgNum sum = AlgNum::zero(ff);
      for (int c : rule->word(i)) sum += rule->tile(c).length;
      ok = ok && (sum == beta * rule->tile(i).length);
    }
    AlgNum dot = AlgNum::zero(ff);
    for (int i = 0; i < rule->alphabet_size(); ++i) dot += ab.perron.l_vec[i] * ab.perron.omega[i];
    ok = ok && (dot == AlgNum::one(ff));
  }
  rep.identities_ok = ok;

  SplittingData S = compute_splitting(rule, ab);
  HomoclinicCertificate hc = fundamental_homoclinic(S);
  rep.homoclinic_ok = hc.fundamental && hc.gamma_u_is_z_beta;
  rep.homoclinic_det = hc.basis_det.get_str();
  for (const Int& z : hc.e_gamma) rep.e_gamma.push_back(z.get_str());
  return rep;
}

}  // namespace betatile
