#pragma once

// Characters of H x| F_k, excessive homology and the incoherence routes.

#include <gmpxx.h>

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "exhom/extension.hpp"

namespace exhom {

using Rational = mpq_class;

// Homomorphism G -> Q given by its values on the generators of G, fiber
// generators first.
struct Character {
  std::vector<Rational> values;

  bool operator==(const Character&) const = default;
  // "(1, 0, -1 | 0, 0)" with `fiber` values before the bar.
  std::string to_string(std::size_t fiber) const;
};

// Values kill every relator of semidirect_presentation(e) (checked on the
// stacked matrix, so also meaningful for abelian fibers).
bool is_character(const ExtensionSpec& e, const Character& c);

// Basis of characters vanishing on the base whose fiber parts span the left
// annihilator of stacked_matrix(e); empty iff e is not excessive.
std::vector<Character> excessive_characters(const ExtensionSpec& e);

bool is_excessive(const ExtensionSpec& e);

// Base values set to 0 (subtracting multiples of the base exponent sums) and
// the fiber part scaled to a primitive integer vector. Throws
// not_a_character or precondition (zero fiber part).
Character normalize(const ExtensionSpec& e, const Character& gamma);

// beta_i = alpha_i + gamma / r on G_i = H x| <t_i>, r a positive integer left
// unbound: some large r makes every ker(beta_i) finitely generated, by
// openness of the BNS invariant, but no r is computed.
struct FibrationPlan {
  Character gamma;                       // normalized
  std::vector<Character> alpha;          // base exponent sums
  // Kernel elements a_j^r t_i^-gamma(a_j) of beta_i written out at r = 1,
  // over the generators of G.
  std::vector<std::vector<Word>> kernel_words;
  bool effective = false;
};

// Throws precondition unless gamma is an excessive character of e.
FibrationPlan fibration_plan(const ExtensionSpec& e, const Character& gamma);
// a_j^r t_i^-gamma(a_j) over the generators of G.
Word fibration_kernel_word(const ExtensionSpec& e, const FibrationPlan& plan, int i, int j, int r);

// Base word w with phi_w inner (conjugation by g) and the centralising
// elements it yields: ⟨fiber, c_w, c_w'⟩ contains F_2 x F_2.
struct OuterKernelWitness {
  Word w;            // over the base generators
  Word g;            // phi_w(x) = g x g^-1
  Word w_conjugate;  // u w u^-1 for the first base generator u not commuting with w
  Word g_conjugate;  // phi_u(g)
  Word c;            // g^-1 w over the generators of G
  Word c_conjugate;  // g_conjugate^-1 w_conjugate
};

// Shortlex search over non-trivial base words of length <= max_length.
// Free fibers of rank >= 2; nullopt also when k < 2 leaves no conjugate.
std::optional<OuterKernelWitness> outer_kernel_probe(const ExtensionSpec& e, std::size_t max_length);
// c and c_conjugate commute with every fiber generator, checked by normal forms.
bool verify_outer_kernel_witness(const ExtensionSpec& e, const OuterKernelWitness& w);

// p with p|_H = p_hat|_H and p(y_i) = p_hat(t_i). `quotient_rank` is the
// asserted rank of H^1(Q); it must equal the number of base values.
Character strong_fiber_lift(std::size_t quotient_rank, std::span<const Rational> base_values,
                            std::span<const Rational> fiber_values);

struct RankOneDescent {
  std::vector<int> signs;  // action of each t_i on the free part of H_1(H)
  bool descended = false;  // false: e itself, already excessive
  SubExtension sub;        // index 1 or the sign kernel (index 2)
};

// Fibers with H_1 of free rank 1. Throws precondition otherwise.
RankOneDescent rank_one_descent(const ExtensionSpec& e);

}  // namespace exhom
