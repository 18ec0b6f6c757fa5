// betatile: exact beta-substitution analysis from the command line.
//
// Subcommands: analyze, expand, fin, property-w, spectrum, asymptotic, code,
// rauzy.  JSON goes to stdout (or --out); exit 0 on success, 1 when a
// certificate or search is inconclusive, 2 on usage/input errors.

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>

#include "betatile/report.hpp"

using namespace betatile;

namespace {

struct CommonOpts {
  std::string coeffs, poly, out;
  uint64_t seed = 0;
  bool timings = false;
};

IntPolynomial poly_of(const CommonOpts& c) {
  if (!c.coeffs.empty()) return IntPolynomial::parse_coeffs(c.coeffs);
  if (!c.poly.empty()) return IntPolynomial::parse_text(c.poly);
  fail(errc::bad_input, "one of --coeffs or --poly is required");
}

void add_field_opts(CLI::App* cmd, CommonOpts& c) {
  cmd->add_option("--coeffs", c.coeffs, "integer coefficients, constant first (e.g. 1,-3,1)");
  cmd->add_option("--poly", c.poly, "polynomial text (e.g. x^2-3x+1)");
  cmd->add_option("--out", c.out, "write the report to this file instead of stdout");
  cmd->add_option("--seed", c.seed, "seed for sampled experiments");
  cmd->add_flag("--timings", c.timings, "include wall-clock timings in the report");
}

void emit(const CommonOpts& c, const Json& j) {
  std::string text = j.dump(2) + "\n";
  if (c.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream os(c.out, std::ios::binary);
    if (!os) fail(errc::bad_input, "cannot open output file " + c.out);
    os << text;
  }
}

AlgNum parse_value(const FieldPtr& f, const std::string& s) {
  std::vector<Rat> coords;
  std::string cur;
  for (char ch : s) {
    if (ch == ',') {
      coords.push_back(parse_rat(cur));
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  coords.push_back(parse_rat(cur));
  return AlgNum::from_coords(f, std::move(coords));
}

DigitWindow parse_window(const std::string& s) {
  auto dot = s.find('.');
  if (dot == std::string::npos) fail(errc::bad_input, "digit window needs a '.' separator");
  auto parse_list = [](const std::string& part) {
    std::vector<int> out;
    std::string cur;
    for (char ch : part) {
      if (ch == ',') {
        if (!cur.empty()) out.push_back(std::stoi(cur));
        cur.clear();
      } else if (!std::isspace(static_cast<unsigned char>(ch))) {
        cur.push_back(ch);
      }
    }
    if (!cur.empty()) out.push_back(std::stoi(cur));
    return out;
  };
  std::vector<int> left = parse_list(s.substr(0, dot));
  std::vector<int> right = parse_list(s.substr(dot + 1));
  DigitWindow w;
  w.i_lo = 1 - static_cast<long>(left.size());
  w.digits = left;
  w.digits.insert(w.digits.end(), right.begin(), right.end());
  if (w.digits.empty()) fail(errc::bad_input, "empty digit window");
  return w;
}

struct Pipeline {
  FieldPtr field;
  KneadingData kneading;
  RulePtr rule;

  static Pipeline build(const IntPolynomial& p) {
    Pipeline pl;
    pl.field = verify_pisot(p);
    pl.kneading = kneading_of(pl.field);
    pl.rule = build_substitution(pl.kneading);
    return pl;
  }
};

int run(int argc, char** argv) {
  CLI::App app{"exact beta-substitution tilings: construction, certificates, coding"};
  app.require_subcommand(1);

  CommonOpts c;
  int depth = 6;
  long grid = 64, points = 256, budget_l = 100000;
  int budget_k = 60, levels = 4;
  std::string value_s, lo_s = "0", hi_s = "1", digits_s, pair_s, tol_s = "1/100000000";
  std::string horizon_s;

  auto* analyze = app.add_subcommand("analyze", "full construction report for a Pisot polynomial");
  add_field_opts(analyze, c);
  analyze->add_option("--depth", depth, "language-property enumeration depth (default 6)");

  auto* expand = app.add_subcommand("expand", "greedy beta-expansion of a value");
  add_field_opts(expand, c);
  expand->add_option("--value", value_s, "value: rational or Q(beta) coords a0,a1,...")->required();
  expand->add_option("--budget", budget_l, "iteration budget");

  auto* fin = app.add_subcommand("fin", "finiteness of the greedy expansion");
  add_field_opts(fin, c);
  fin->add_option("--value", value_s, "value: rational or Q(beta) coords a0,a1,...")->required();
  fin->add_option("--budget", budget_l, "iteration budget");

  auto* propw = app.add_subcommand("property-w", "search a finiteness witness t' in (lo,hi)");
  add_field_opts(propw, c);
  propw->add_option("--value", value_s, "z in Z[1/beta], positive")->required();
  propw->add_option("--lo", lo_s, "interval left end (rational)");
  propw->add_option("--hi", hi_s, "interval right end (rational)");
  propw->add_option("--budget", budget_l, "candidate budget (default 100000)");

  auto* spectrum = app.add_subcommand("spectrum", "dense stable-coincidence certificate");
  add_field_opts(spectrum, c);
  spectrum->add_option("--grid", grid, "samples per pair (default 64)");
  spectrum->add_option("--budget", budget_k, "inflation budget K (default 60)");

  auto* asym = app.add_subcommand("asymptotic", "asymptotic-pair test on R+");
  add_field_opts(asym, c);
  asym->add_option("--pair", pair_s, "tiling names, e.g. T_1^0,T_1 (default: first two)");
  asym->add_option("--horizon", horizon_s, "rational horizon (default 100 * min tile length)");

  auto* code = app.add_subcommand("code", "arithmetical coding of a digit window");
  add_field_opts(code, c);
  code->add_option("--digits", digits_s,
                   "window 'a,b.c,d' with indices <=0 left of the dot")->required();
  code->add_option("--levels", levels, "solenoid levels (default 4)");
  code->add_option("--tolerance", tol_s,
                   "certified width for the decimal renderings (default 1/100000000)");

  auto* rauzy = app.add_subcommand("rauzy", "stable-projection cloud of strand vertices (CSV)");
  add_field_opts(rauzy, c);
  rauzy->add_option("--points", points, "number of vertices (default 256)");
  rauzy->add_option("--tiling", pair_s, "tiling name (default: first canonical)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  }

  auto t_start = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
  };

  if (analyze->parsed()) {
    AnalysisReport rep = analyze_field(poly_of(c), depth, c.seed);
    if (c.timings) rep.elapsed_seconds = elapsed();
    Json j = rep.to_json();
    j["command"] = "analyze";
    emit(c, j);
    return 0;
  }
  if (expand->parsed() || fin->parsed()) {
    FieldPtr f = verify_pisot(poly_of(c));
    AlgNum x = parse_value(f, value_s);
    FinResult r = fin_membership(f, x, budget_l);
    bool ok = expansion_value(f, r.expansion) == x;
    Json j{{"schema_version", "1"},
           {"command", expand->parsed() ? "expand" : "fin"},
           {"field", poly_of(c).text()},
           {"value", json_of(x)},
           {"finite", r.finite},
           {"expansion", json_of(r.expansion)},
           {"reconstruction_ok", ok}};
    if (c.timings) j["timings"] = Json{{"elapsed_seconds", elapsed()}};
    emit(c, j);
    return 0;
  }
  if (propw->parsed()) {
    FieldPtr f = verify_pisot(poly_of(c));
    AlgNum z = parse_value(f, value_s);
    WitnessResult w = property_w_witness(f, z, parse_rat(lo_s), parse_rat(hi_s), budget_l);
    Json j{{"schema_version", "1"},
           {"command", "property-w"},
           {"field", poly_of(c).text()},
           {"z", json_of(z)},
           {"lo", lo_s},
           {"hi", hi_s},
           {"budget", budget_l},
           {"found", w.found},
           {"candidates_tried", w.candidates_tried}};
    if (w.found) {
      j["witness"] = json_of(w.witness);
      j["digits"] = w.digits;
    }
    if (c.timings) j["timings"] = Json{{"elapsed_seconds", elapsed()}};
    emit(c, j);
    return w.found ? 0 : 1;
  }
  if (spectrum->parsed()) {
    Pipeline pl = Pipeline::build(poly_of(c));
    SpectrumCertificate cert = spectrum_certificate(pl.rule, grid, budget_k);
    Json j = json_of(cert);
    j["schema_version"] = "1";
    j["command"] = "spectrum";
    j["field"] = poly_of(c).text();
    if (c.timings) j["timings"] = Json{{"elapsed_seconds", elapsed()}};
    emit(c, j);
    return cert.certified ? 0 : 1;
  }
  if (asym->parsed()) {
    Pipeline pl = Pipeline::build(poly_of(c));
    auto tilings = canonical_periodic_tilings(pl.rule);
    const SubstitutiveTiling* a = nullptr;
    const SubstitutiveTiling* b = nullptr;
    if (pair_s.empty()) {
      if (pl.kneading.m > 0) {
        // the worked pairing: T_1^0 against T_1
        for (const auto& t : tilings) {
          if (t.name() == "T_1^0") a = &t;
          if (t.name() == "T_1") b = &t;
        }
      }
      if (!a || !b) { a = &tilings[0]; b = &tilings[1]; }
    } else {
      auto comma = pair_s.find(',');
      if (comma == std::string::npos) fail(errc::bad_input, "--pair wants NAME,NAME");
      std::string na = pair_s.substr(0, comma), nb = pair_s.substr(comma + 1);
      for (const auto& t : tilings) {
        if (t.name() == na) a = &t;
        if (t.name() == nb) b = &t;
      }
      if (!a || !b) fail(errc::bad_input, "unknown tiling name in --pair");
    }
    const FieldPtr& f = pl.field;
    AlgNum horizon = AlgNum::zero(f);
    if (horizon_s.empty()) {
      AlgNum minlen = pl.rule->tile(1).length;
      for (const auto& t : pl.rule->tiles)
        if ((t.length - minlen).sign() == Sign::negative) minlen = t.length;
      horizon = minlen.scaled(Rat(100));
    } else {
      horizon = AlgNum::from_rat(f, parse_rat(horizon_s));
    }
    AsymptoticResult r = asymptotic_test(*a, *b, horizon);
    Json j{{"schema_version", "1"},
           {"command", "asymptotic"},
           {"field", poly_of(c).text()},
           {"pair", a->name() + "," + b->name()},
           {"horizon", json_of(horizon)},
           {"asymptotic", r.asymptotic}};
    if (r.asymptotic) j["t0"] = json_of(r.t0);
    else j["witness"] = json_of(r.witness);
    if (c.timings) j["timings"] = Json{{"elapsed_seconds", elapsed()}};
    emit(c, j);
    return 0;
  }
  if (code->parsed()) {
    Pipeline pl = Pipeline::build(poly_of(c));
    AbelianizationResult ab = abelianize_and_perron(*pl.rule);
    SplittingData S = compute_splitting(pl.rule, ab);
    DigitWindow w = parse_window(digits_s);
    SolenoidPoint sp = arithmetical_code(w, S, levels);
    // the coordinates are exact; certify the decimal renderings at --tolerance
    Rat tol = parse_rat(tol_s);
    unsigned bits = 8;
    while (Rat(1, Int(1) << bits) > tol && bits < 4096) bits += 8;
    for (const auto& lv : sp.levels)
      for (const auto& coord : lv.x)
        if (coord.enclosure(bits).width() > tol)
          fail(errc::precision_exceeded, "coordinate enclosure wider than --tolerance");
    Json j = json_of(sp);
    j["schema_version"] = "1";
    j["command"] = "code";
    j["field"] = poly_of(c).text();
    j["window"] = Json{{"i_lo", w.i_lo}, {"digits", w.digits}};
    j["tolerance"] = tol_s;
    if (c.timings) j["timings"] = Json{{"elapsed_seconds", elapsed()}};
    emit(c, j);
    return 0;
  }
  if (rauzy->parsed()) {
    Pipeline pl = Pipeline::build(poly_of(c));
    AbelianizationResult ab = abelianize_and_perron(*pl.rule);
    SplittingData S = compute_splitting(pl.rule, ab);
    auto tilings = canonical_periodic_tilings(pl.rule);
    const SubstitutiveTiling* t = &tilings[0];
    if (!pair_s.empty()) {
      t = nullptr;
      for (const auto& ti : tilings)
        if (ti.name() == pair_s) t = &ti;
      if (!t) fail(errc::bad_input, "unknown tiling name " + pair_s);
    }
    RauzyCloud cloud = rauzy_cloud(*t, S, points);
    std::ostringstream os;
    os.precision(17);
    for (const auto& pt : cloud.points) {
      for (size_t i = 0; i < pt.size(); ++i) {
        if (i) os << ",";
        os << pt[i];
      }
      os << "\n";
    }
    if (c.out.empty()) {
      std::cout << os.str();
    } else {
      std::ofstream f_out(c.out, std::ios::binary);
      if (!f_out) fail(errc::bad_input, "cannot open output file " + c.out);
      f_out << os.str();
      // summary with the stable-series bound metadata
      Json j{{"schema_version", "1"},
             {"command", "rauzy"},
             {"field", poly_of(c).text()},
             {"tiling", t->name()},
             {"points", static_cast<long>(cloud.points.size())},
             {"max_norm", cloud.max_norm},
             {"stable_series_bound", cloud.bound},
             {"csv", c.out}};
      if (c.timings) j["timings"] = Json{{"elapsed_seconds", elapsed()}};
      std::cout << j.dump(2) << "\n";
    }
    return 0;
  }
  std::cerr << "usage error: no subcommand\n";
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
