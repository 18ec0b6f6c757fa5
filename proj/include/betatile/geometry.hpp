#pragma once

#include <map>
#include <random>

#include "betatile/tiling.hpp"

namespace betatile {

using QMatrix = std::vector<std::vector<Rat>>;
using ZMatrix = std::vector<std::vector<Int>>;

// The rational splitting R^n = V + W attached to p_A = p_beta q, the lattice
// Gamma = pi_V(Z^n) in Gamma-basis coordinates, and the action L = A|_V.
struct SplittingData {
  RulePtr rule;
  FieldPtr field;
  int n = 0;  // ambient dimension m+p
  int d = 0;  // degree of beta = dim V
  IntPolynomial q_factor;
  QPoly s1, s2;              // s1 p_beta + s2 q = 1
  QMatrix pi_v;              // n x n projection onto V along W
  QMatrix gamma_basis;       // n x d, columns form a basis of Gamma
  ZMatrix L;                 // d x d integer matrix of the action in Gamma-coords
  QMatrix letter_coords;     // d x n: Gamma-coords of pi_V(e_i) per letter column
  std::vector<AlgNum> l_vec;        // prototile lengths
  std::vector<AlgNum> omega_amb;    // omega in ambient coordinates
  std::vector<AlgNum> omega_gamma;  // omega in Gamma-coords
  std::vector<AlgNum> lambda;       // <l, gamma_j>, all in Z[beta]
  std::vector<Int> e_gamma;         // -pi_V(sum e_i) in Gamma-coords

  // u-coefficient <l, v> of a vector given in Gamma-coords
  AlgNum u_coeff(const std::vector<AlgNum>& x) const;
  std::vector<AlgNum> stable_part(const std::vector<AlgNum>& x) const;
  std::vector<AlgNum> apply_L(const std::vector<AlgNum>& x) const;
  // solve (I - L^q) y = c exactly
  std::vector<AlgNum> solve_one_minus_Lq(int q, const std::vector<AlgNum>& c) const;
};

SplittingData compute_splitting(const RulePtr& rule, const AbelianizationResult& ab);

// v_u = <l, v> (coefficient along omega), v_s = pi_V v - v_u omega; ambient in/out.
struct Components {
  AlgNum u_coeff;
  std::vector<AlgNum> stable;  // ambient coordinates
};
Components project_components(const SplittingData& S, const std::vector<AlgNum>& v);

struct HomoclinicCertificate {
  std::vector<Int> e_gamma;
  Int basis_det;          // det[e, Le, ..., L^(d-1)e] in Gamma-coords; must be +-1
  bool fundamental = false;
  Int lattice_unit_det;   // det of (<l, gamma_j>) in the power basis; +-1 iff Gamma^u = Z[beta] omega
  bool gamma_u_is_z_beta = false;
};
// Throws not_fundamental when the determinant is not a unit.
HomoclinicCertificate fundamental_homoclinic(const SplittingData& S);

struct TorusPoint {
  std::vector<AlgNum> x;  // Gamma-coordinates, each reduced to [0, 1)

  bool operator==(const TorusPoint& o) const { return x == o.x; }
  // certified upper bound on the toral distance to another point
  Rat dist_bound(const TorusPoint& o, unsigned bits = 96) const;
};

struct SolenoidPoint {
  std::vector<TorusPoint> levels;  // levels[j-1] = level j; F_L(level j+1) = level j
};

// prefix of Psi^i(T) and the strand vertex chain a_i = p_i + L a_{i-1}
struct PrefixRecord {
  long index = 0;
  std::vector<Int> prefix;     // lattice vector in Gamma-coords
  std::vector<AlgNum> vertex;  // a_i in Gamma-coords
};

// Exact strand anchor a_0(gamma_T) in Gamma-coords.  The backward prefix
// stream of a translated periodic tiling becomes exactly periodic once
// beta^-i |offset| drops below the vertex gap, so both limits collapse to
// closed forms; depth_cap bounds that search (PrecisionExceeded beyond).
std::vector<AlgNum> strand_anchor(const SubstitutiveTiling& T, const SplittingData& S,
                                  long depth_cap = 4096);

TorusPoint shadow_factor_map(const SubstitutiveTiling& T, const SplittingData& S,
                             long depth_cap = 4096);
SolenoidPoint solenoid_map(const SubstitutiveTiling& T, const SplittingData& S, int levels,
                           long depth_cap = 4096);

std::vector<PrefixRecord> prefix_chain(const SubstitutiveTiling& T, const SplittingData& S,
                                       long i_lo, long i_hi, long depth_cap = 4096);

// two-sided digit window x_{i_lo} .. x_{i_lo + len - 1} (zero outside)
struct DigitWindow {
  long i_lo = 1;
  std::vector<int> digits;
};

// h applied to a finite admissible digit window, exactly: level j is
// -beta^-(j-1) (sum_i x_i beta^-i) omega reduced mod Gamma.
SolenoidPoint arithmetical_code(const DigitWindow& w, const SplittingData& S, int levels,
                                long depth = 0);

// h over the raw itinerary stream (x_i(T)) with x_i = floor(-beta t_*(Psi^i T)),
// exactly; satisfies coding_of_itinerary(T) = solenoid_map(Psi(T)).  The
// u-part of the prefix of Psi^i(T) is x_{i-1} omega, so digit i of the stream
// h consumes weights beta^-i one step later than the raw itinerary.
SolenoidPoint coding_of_itinerary(const SubstitutiveTiling& T, const SplittingData& S, int levels,
                                  long depth_cap = 4096);

// h over the digit stream aligned so that digit i weights beta^-i in the
// fractional part of -t_*; equals solenoid_map(T) exactly (the coding
// identity).  This is coding_of_itinerary(Psi^-1(T)).
SolenoidPoint coding_of_tiling(const SubstitutiveTiling& T, const SplittingData& S, int levels,
                               long depth_cap = 4096);

struct CodingReport {
  int samples = 0;
  int levels = 0;
  Rat eps;
  int consistent = 0;        // samples with pihat(T) == h(x(T)) within eps (exact here)
  int exact_matches = 0;     // samples with literal AlgNum equality
  long collision_pairs = 0;  // distinct windows mapping within eps at all levels
  long collision_samples = 0;
};

// Window length matters for the collision experiment: distinct admissible
// windows of length w have value gaps >= beta^-w-scale, so w must keep that
// gap above eps for "zero collisions" to be the sound expectation.
CodingReport coding_consistency_and_injectivity(const RulePtr& rule, const SplittingData& S,
                                                int n_samples, const Rat& eps, uint64_t seed,
                                                int levels = 4, long collision_samples = 0,
                                                int collision_window = 12);

struct RauzyCloud {
  std::vector<std::vector<double>> points;  // n points, d-1 coordinates each
  double max_norm = 0;
  double bound = 0;  // stable-series bound the points must stay inside
};

RauzyCloud rauzy_cloud(const SubstitutiveTiling& T, const SplittingData& S, long count);

}  // namespace betatile
