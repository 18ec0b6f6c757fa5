#pragma once

#include <memory>
#include <set>
#include <string>
#include <vector>

#include "betatile/numeration.hpp"

namespace betatile {

// Marked interval between consecutive breakpoints of {0,1} union the orbit.
struct Prototile {
  int index = 0;  // 1-based position order on [0,1]
  AlgNum lo, hi, length;
};

// The substitution read off from how the beta-transformation maps the
// breakpoint intervals across each other.  Letters are 1..m+p.
struct SubstitutionRule {
  FieldPtr field;
  KneadingData kneading;
  std::vector<Prototile> tiles;          // position order
  std::vector<std::vector<int>> words;   // words[i-1] = psi(i)

  int alphabet_size() const { return static_cast<int>(tiles.size()); }
  const std::vector<int>& word(int letter) const { return words[letter - 1]; }
  const Prototile& tile(int letter) const { return tiles[letter - 1]; }
  int initial(int letter) const { return word(letter).front(); }
  int terminal(int letter) const { return word(letter).back(); }
  int initial_pow(int letter, int n) const;
  int terminal_pow(int letter, int n) const;

  // letters labeled by where their vertices sit on the orbit of 1:
  // tile_max_at[j] = letter whose right vertex is z^j; tile_min_at[j] = letter
  // whose left vertex is z^j (0 when z^j = 1 has no right neighbor)
  std::vector<int> tile_max_at, tile_min_at;

  // exact set of allowed two-letter factors of the language
  std::set<std::pair<int, int>> allowed_pairs() const;

  std::string words_text() const;  // "1->121; 2->21"
};

using RulePtr = std::shared_ptr<const SubstitutionRule>;

RulePtr build_substitution(const KneadingData& k);

struct SubstitutionMatrix {
  std::vector<std::vector<Int>> a;  // a[i][j] = count of letter j+1 in psi(i+1)
  int size() const { return static_cast<int>(a.size()); }
};

struct PerronData {
  IntPolynomial char_poly;     // of the substitution matrix
  IntPolynomial q_factor;      // char_poly / minpoly; degree 0 when irreducible
  std::vector<AlgNum> l_vec;   // prototile lengths; left eigenvector, l A = beta l
  std::vector<AlgNum> omega;   // right eigenvector, A omega = beta omega, <l,omega> = 1
};

struct AbelianizationResult {
  SubstitutionMatrix matrix;
  PerronData perron;
  bool primitive = false;
  int wielandt_exponent = 0;  // witness power with A^k > 0 (0 if not primitive)
};

AbelianizationResult abelianize_and_perron(const SubstitutionRule& r);

struct LanguageReport {
  int depth = 0;
  bool property1 = true, property2 = true, property3 = true;
  std::vector<std::pair<int, int>> factors;  // all observed 2-letter factors
  std::string offending1, offending2, offending3;
};

// Enumerates two-letter factors of psi^n(i) for n <= depth and checks the
// monotonicity properties of the language.
LanguageReport verify_language_properties(const SubstitutionRule& r, int depth);

// Cross-validation of a claimed (words, kneading digits) pair: abelianize the
// words, factor the characteristic polynomial, rebuild the polynomial forced
// by the digit identity sum c_i beta^-i = 1, and compare the two routes.
struct SubstitutionAudit {
  IntPolynomial words_char_poly;            // from the claimed words
  std::vector<IntPolynomial> words_factors;
  IntPolynomial forced_poly;                // from the claimed digits
  bool forced_is_pisot = false;
  std::string forced_pisot_error;           // diagnostic when not Pisot
  bool consistent = false;                  // claimed digits match a Pisot factor's kneading
  std::string detail;
};

SubstitutionAudit audit_claimed_substitution(const std::vector<std::vector<int>>& words, int m,
                                             int p, const DigitWord& digits);

// forced polynomial of the digit identity: (x^p - 1)(x^m - sum c_i x^(m-i)) - sum c_{m+j} x^(p-j)
IntPolynomial forced_polynomial(int m, int p, const DigitWord& digits);

}  // namespace betatile
