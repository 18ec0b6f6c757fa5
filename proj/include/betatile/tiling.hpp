#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "betatile/substitution.hpp"

namespace betatile {

// Tile of type i at translation t: support = [lo_i + t, hi_i + t].
struct Tile {
  int type = 0;
  AlgNum offset;

  bool operator==(const Tile& o) const { return type == o.type && offset == o.offset; }
};

struct Patch {
  std::vector<Tile> tiles;  // ordered left to right, supports abut exactly
};

// Shared expansion context: the rule plus a beta-power cache.
struct TilingContext {
  RulePtr rule;
  const AlgNum& beta_pow(int r) const;

private:
  mutable std::vector<AlgNum> bpow_;
  mutable std::mutex mx_;
};
using ContextPtr = std::shared_ptr<TilingContext>;
ContextPtr make_context(RulePtr rule);

// Tiling of R of the form Psi^phase(T0) + offset, where T0 is the Psi^q-fixed
// tiling with seed letters (a ending at 0 | b starting at 0).  Every tiling the
// analysis manipulates (the canonical periodic tilings, their translates and
// Psi-iterates) has this shape, and the class is closed under both actions.
class SubstitutiveTiling {
public:
  SubstitutiveTiling(ContextPtr ctx, int seed_left, int seed_right, int power_q, std::string name);

  const ContextPtr& context() const { return ctx_; }
  const RulePtr& rule() const { return ctx_->rule; }
  int seed_left() const { return seed_left_; }
  int seed_right() const { return seed_right_; }
  int power() const { return q_; }
  int phase() const { return phase_; }
  const AlgNum& offset() const { return offset_; }
  const std::string& name() const { return name_; }

  SubstitutiveTiling translated(const AlgNum& t) const;   // T - t
  SubstitutiveTiling substituted() const;                 // Psi(T)
  SubstitutiveTiling desubstituted() const;               // Psi^-1(T)
  SubstitutiveTiling iterated(long k) const;              // Psi^k(T)

  // exact tiles whose supports meet [lo, hi] (closed intersection)
  Patch window(const AlgNum& lo, const AlgNum& hi) const;
  Patch tiles_at(const AlgNum& x) const;  // 1 tile, or 2 when x is a vertex
  Patch b0() const;                       // tiles containing the origin

  // position of the rightmost type-1 tile starting at or left of 0
  AlgNum t_star() const;

  bool same_seed(const SubstitutiveTiling& o) const {
    return seed_left_ == o.seed_left_ && seed_right_ == o.seed_right_ && phase_ == o.phase_;
  }

private:
  ContextPtr ctx_;
  int seed_left_, seed_right_, q_, phase_ = 0;
  AlgNum offset_;
  std::string name_;
};

// The Psi^p-periodic tilings attached to the periodic part of the orbit of 1:
// 2p tilings T_i, T_i^0 when m > 0, and the Psi^p-fixed seed tilings at the
// origin when m = 0.
std::vector<SubstitutiveTiling> canonical_periodic_tilings(const RulePtr& rule);

struct StableResult {
  bool coincides = false;
  int depth = 0;  // smallest k <= K with equal origin patches
};

// Smallest k <= K with B0[Psi^k(T - t)] = B0[Psi^k(T' - t)] (exact tile sets).
StableResult stable_equiv_test(const SubstitutiveTiling& T, const SubstitutiveTiling& Tp,
                               const AlgNum& t, int K);

struct ScanReport {
  long grid = 0;
  int budget = 0;
  long coincided = 0;
  std::vector<Rat> failures;      // sampled t that stayed unknown
  std::vector<int> depths;        // coincidence depth per sample (-1 if unknown)
  Rat fraction() const { return grid ? make_rat(coincided, grid) : Rat(0); }
};

// Samples t = lo + j (hi-lo)/gridN for j = 1..gridN; the left endpoint is a
// shared vertex of the canonical pairs where coincidence provably never
// happens, so the grid covers (lo, hi].
ScanReport dense_stable_scan(const SubstitutiveTiling& T, const SubstitutiveTiling& Tp,
                             const Rat& lo, const Rat& hi, long gridN, int K);

struct AsymptoticResult {
  bool asymptotic = false;
  AlgNum t0;       // exact last-disagreement point when asymptotic
  AlgNum witness;  // a disagreement point > horizon/2 otherwise
};

// Compares the two tilings on [0, horizon]; asymptotic iff the tails agree
// beyond an exact t0 <= horizon/2.
AsymptoticResult asymptotic_test(const SubstitutiveTiling& T, const SubstitutiveTiling& Tp,
                                 const AlgNum& horizon);

// x_i(T) = floor(-beta t_*(Psi^i(T))) for i in [i_lo, i_hi]
std::vector<int> digit_itinerary(const SubstitutiveTiling& T, long i_lo, long i_hi);

struct PairScan {
  std::string left, right;
  ScanReport report;
};

struct SpectrumCertificate {
  bool certified = false;
  long grid = 0;
  int budget = 0;
  std::vector<PairScan> pairs;
};

// Dense stable scan over all unordered pairs of canonical periodic tilings on
// (0, 1]; Certified when every sampled translate coincides within the budget.
// A miss only means the budget ran out, never a refutation.
SpectrumCertificate spectrum_certificate(const RulePtr& rule, long gridN, int K);

}  // namespace betatile
