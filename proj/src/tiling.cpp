#include "betatile/tiling.hpp"

#include <algorithm>
#include <functional>
#include <mutex>
#include <set>

namespace betatile {

const AlgNum& TilingContext::beta_pow(int r) const {
  std::lock_guard<std::mutex> lk(mx_);
  if (bpow_.empty()) bpow_.push_back(AlgNum::one(rule->field));
  AlgNum beta = AlgNum::beta(rule->field);
  while (static_cast<int>(bpow_.size()) <= r) bpow_.push_back(bpow_.back() * beta);
  return bpow_[r];
}

ContextPtr make_context(RulePtr rule) {
  auto ctx = std::make_shared<TilingContext>();
  ctx->rule = std::move(rule);
  return ctx;
}

SubstitutiveTiling::SubstitutiveTiling(ContextPtr ctx, int a, int b, int q, std::string name)
    : ctx_(std::move(ctx)), seed_left_(a), seed_right_(b), q_(q),
      offset_(AlgNum::zero(ctx_->rule->field)), name_(std::move(name)) {
  const auto& r = *ctx_->rule;
  if (a < 1 || a > r.alphabet_size() || b < 1 || b > r.alphabet_size() || q < 1)
    fail(errc::bad_input, "bad seed data");
  if (r.terminal_pow(a, q) != a || r.initial_pow(b, q) != b)
    fail(errc::bad_input, "seed letters are not fixed by psi^q");
  if (!r.allowed_pairs().count({a, b}))
    fail(errc::bad_input, "seed pair is not in the language");
}

SubstitutiveTiling SubstitutiveTiling::translated(const AlgNum& t) const {
  SubstitutiveTiling s(*this);
  s.offset_ = offset_ - t;
  return s;
}

SubstitutiveTiling SubstitutiveTiling::substituted() const {
  SubstitutiveTiling s(*this);
  s.phase_ = (phase_ + 1) % q_;
  s.offset_ = AlgNum::beta(rule()->field) * offset_;
  return s;
}

SubstitutiveTiling SubstitutiveTiling::desubstituted() const {
  SubstitutiveTiling s(*this);
  s.phase_ = (phase_ + q_ - 1) % q_;
  s.offset_ = offset_ / AlgNum::beta(rule()->field);
  return s;
}

SubstitutiveTiling SubstitutiveTiling::iterated(long k) const {
  SubstitutiveTiling s(*this);
  for (; k > 0; --k) s = s.substituted();
  for (; k < 0; ++k) s = s.desubstituted();
  return s;
}

Patch SubstitutiveTiling::window(const AlgNum& lo, const AlgNum& hi) const {
  const auto& r = *rule();
  if ((hi - lo).sign() == Sign::negative) fail(errc::invalid_interval, "window needs lo <= hi");

  // pick a supertile level phase + n q that strictly covers [lo, hi] around
  // the junction at offset_
  int level = phase_;
  auto covered = [&](int L) {
    AlgNum left_edge = offset_ - ctx_->beta_pow(L) * r.tile(seed_left_).length;
    AlgNum right_edge = offset_ + ctx_->beta_pow(L) * r.tile(seed_right_).length;
    return (lo - left_edge).sign() == Sign::positive &&
           (right_edge - hi).sign() == Sign::positive;
  };
  while (!covered(level)) {
    level += q_;
    if (level > 100000) fail(errc::iteration_budget_exceeded, "window level runaway");
  }

  Patch out;
  std::function<void(int, int, const AlgNum&)> emit = [&](int letter, int depth,
                                                          const AlgNum& start) {
    AlgNum len = ctx_->beta_pow(depth) * r.tile(letter).length;
    AlgNum end = start + len;
    if ((start - hi).sign() == Sign::positive) return;  // start > hi
    if ((lo - end).sign() == Sign::positive) return;    // end < lo
    if (depth == 0) {
      out.tiles.push_back(Tile{letter, start - r.tile(letter).lo});
      return;
    }
    AlgNum pos = start;
    for (int c : r.word(letter)) {
      emit(c, depth - 1, pos);
      pos += ctx_->beta_pow(depth - 1) * r.tile(c).length;
    }
  };
  AlgNum left_start = offset_ - ctx_->beta_pow(level) * r.tile(seed_left_).length;
  emit(seed_left_, level, left_start);
  emit(seed_right_, level, offset_);
  return out;
}

Patch SubstitutiveTiling::tiles_at(const AlgNum& x) const { return window(x, x); }

Patch SubstitutiveTiling::b0() const { return tiles_at(AlgNum::zero(rule()->field)); }

AlgNum SubstitutiveTiling::t_star() const {
  const auto& r = *rule();
  Patch at0 = tiles_at(AlgNum::zero(r.field));
  // a type-1 tile starting exactly at 0 wins the sup
  for (const Tile& t : at0.tiles) {
    AlgNum start = t.offset + r.tile(t.type).lo;
    if (t.type == 1 && start.is_zero()) return start;
  }
  // otherwise walk left from the tile containing 0
  AlgNum cur_start = at0.tiles.front().offset + r.tile(at0.tiles.front().type).lo;
  if (at0.tiles.front().type == 1) return cur_start;
  for (int guard = 0; guard <= r.alphabet_size() + 2; ++guard) {
    Patch at = tiles_at(cur_start);
    bool moved = false;
    for (const Tile& t : at.tiles) {
      AlgNum s = t.offset + r.tile(t.type).lo;
      AlgNum e = t.offset + r.tile(t.type).hi;
      if (e == cur_start) {  // the tile ending where the current one starts
        if (t.type == 1) return s;
        cur_start = s;
        moved = true;
        break;
      }
    }
    if (!moved) fail(errc::bad_input, "tiling is not abutting at " + cur_start.str());
  }
  fail(errc::bad_input, "no type-1 tile within the alphabet-length bound (language violation)");
}

namespace {

// letter with terminal_pow fixed, per orbit label j: left/right seed letters
struct SeedLetters {
  int left;   // tile whose max vertex is z^j
  int right;  // tile whose min vertex is z^j
};

}  // namespace

std::vector<SubstitutiveTiling> canonical_periodic_tilings(const RulePtr& rule) {
  const KneadingData& k = rule->kneading;
  ContextPtr ctx = make_context(rule);
  std::vector<SubstitutiveTiling> out;
  int p = k.p, m = k.m;
  if (m > 0) {
    for (int i = 1; i <= p; ++i) {
      int a = rule->tile_max_at[m + i];
      int b = rule->tile_min_at[m + i];
      if (a == 0 || b == 0) fail(errc::bad_input, "periodic orbit point lacks tile labels");
      out.emplace_back(ctx, a, b, p, "T_" + std::to_string(i));
    }
    for (int i = 1; i <= p; ++i) {
      int a = rule->tile_max_at[m + i];
      out.emplace_back(ctx, a, 1, p, "T_" + std::to_string(i) + "^0");
    }
  } else {
    auto pairs = rule->allowed_pairs();
    for (int a = 1; a <= rule->alphabet_size(); ++a) {
      if (rule->terminal_pow(a, p) != a) continue;
      for (int b = 1; b <= rule->alphabet_size(); ++b) {
        if (rule->initial_pow(b, p) != b) continue;
        if (!pairs.count({a, b})) continue;
        std::string nm = "F_" + std::to_string(a) + (b == 1 ? "" : "_" + std::to_string(b));
        out.emplace_back(ctx, a, b, p, nm);
      }
    }
  }
  return out;
}

static bool patches_equal(const Patch& a, const Patch& b) {
  if (a.tiles.size() != b.tiles.size()) return false;
  for (size_t i = 0; i < a.tiles.size(); ++i)
    if (!(a.tiles[i] == b.tiles[i])) return false;
  return true;
}

StableResult stable_equiv_test(const SubstitutiveTiling& T, const SubstitutiveTiling& Tp,
                               const AlgNum& t, int K) {
  if (K < 0) fail(errc::bad_input, "K must be >= 0");
  SubstitutiveTiling S = T.translated(t);
  SubstitutiveTiling Sp = Tp.translated(t);
  for (int k = 0; k <= K; ++k) {
    if (patches_equal(S.b0(), Sp.b0())) return {true, k};
    if (k < K) {
      S = S.substituted();
      Sp = Sp.substituted();
    }
  }
  return {false, 0};
}

ScanReport dense_stable_scan(const SubstitutiveTiling& T, const SubstitutiveTiling& Tp,
                             const Rat& lo, const Rat& hi, long gridN, int K) {
  if (gridN < 1) fail(errc::bad_input, "gridN must be >= 1");
  if (lo >= hi) fail(errc::invalid_interval, "need lo < hi");
  ScanReport rep;
  rep.grid = gridN;
  rep.budget = K;
  const FieldPtr& f = T.rule()->field;
  for (long j = 1; j <= gridN; ++j) {
    Rat t = lo + Rat(j) * (hi - lo) / Rat(gridN);
    StableResult r = stable_equiv_test(T, Tp, AlgNum::from_rat(f, t), K);
    if (r.coincides) {
      ++rep.coincided;
      rep.depths.push_back(r.depth);
    } else {
      rep.failures.push_back(t);
      rep.depths.push_back(-1);
    }
  }
  return rep;
}

AsymptoticResult asymptotic_test(const SubstitutiveTiling& T, const SubstitutiveTiling& Tp,
                                 const AlgNum& horizon) {
  const FieldPtr& f = T.rule()->field;
  if (horizon.sign() != Sign::positive) fail(errc::bad_input, "horizon must be > 0");
  AlgNum zero = AlgNum::zero(f);
  Patch a = T.window(zero, horizon);
  Patch b = Tp.window(zero, horizon);
  auto key = [&](const Tile& t) { return std::to_string(t.type) + "|" + t.offset.key(); };
  std::set<std::string> ka, kb;
  for (const Tile& t : a.tiles) ka.insert(key(t));
  for (const Tile& t : b.tiles) kb.insert(key(t));
  std::optional<AlgNum> worst;
  auto consider = [&](const Patch& p, const std::set<std::string>& other) {
    for (const Tile& t : p.tiles) {
      if (other.count(key(t))) continue;
      AlgNum end = t.offset + T.rule()->tile(t.type).hi;
      if (!worst || (end - *worst).sign() == Sign::positive) worst = end;
    }
  };
  consider(a, kb);
  consider(b, ka);
  AsymptoticResult res;
  if (!worst) {
    res.asymptotic = true;
    res.t0 = zero;  // no disagreement found on [0, horizon]: t0 <= 0
    return res;
  }
  AlgNum half = horizon.scaled(Rat(1, 2));
  if ((*worst - half).sign() == Sign::positive) {
    res.asymptotic = false;
    res.witness = *worst;
    return res;
  }
  res.asymptotic = true;
  res.t0 = *worst;
  return res;
}

std::vector<int> digit_itinerary(const SubstitutiveTiling& T, long i_lo, long i_hi) {
  if (i_lo > i_hi) fail(errc::bad_input, "need i_lo <= i_hi");
  const FieldPtr& f = T.rule()->field;
  AlgNum beta = AlgNum::beta(f);
  std::vector<int> out;
  SubstitutiveTiling S = T.iterated(i_lo);
  for (long i = i_lo; i <= i_hi; ++i) {
    AlgNum ts = S.t_star();
    Int d = (-(beta * ts)).floor();
    out.push_back(static_cast<int>(d.get_si()));
    if (i < i_hi) S = S.substituted();
  }
  return out;
}

SpectrumCertificate spectrum_certificate(const RulePtr& rule, long gridN, int K) {
  SpectrumCertificate cert;
  cert.grid = gridN;
  cert.budget = K;
  cert.certified = true;
  auto tilings = canonical_periodic_tilings(rule);
  for (size_t i = 0; i < tilings.size(); ++i)
    for (size_t j = i + 1; j < tilings.size(); ++j) {
      PairScan ps;
      ps.left = tilings[i].name();
      ps.right = tilings[j].name();
      ps.report = dense_stable_scan(tilings[i], tilings[j], Rat(0), Rat(1), gridN, K);
      if (ps.report.coincided != ps.report.grid) cert.certified = false;
      cert.pairs.push_back(std::move(ps));
    }
  if (gridN == 0 || tilings.size() < 2) cert.certified = false;
  return cert;
}

}  // namespace betatile
