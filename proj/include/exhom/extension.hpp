#pragma once

// Semidirect products G = H x| F_k given by explicit automorphism data, their
// presentations and first homology, and finite-index sub-extensions.
//
// Conventions: in G the base generator t_i acts by t_i x t_i^-1 = phi_i(x).
// A base word w = t_1 t_2 ... acts by phi_w = phi_1 o phi_2 o ...  Generators
// of G are numbered fiber first (1..n), then base (n+1..n+k).

#include <optional>
#include <string>
#include <vector>

#include "exhom/endos.hpp"
#include "exhom/fpgroups.hpp"
#include "exhom/stallings.hpp"
#include "exhom/zmat.hpp"

namespace exhom {

enum class FiberKind { free, presented, abelian };

// Why the fiber is known not to algebraically fiber.
enum class Nonfibering { free_rank, surface_genus, user_asserted, unknown };

const char* to_string(FiberKind kind);
const char* to_string(Nonfibering n);

class ExtensionSpec {
 public:
  ExtensionSpec() = default;

  // Free fiber of the given rank; every action is certified as an automorphism.
  static ExtensionSpec free_by_free(int fiber_rank, const std::vector<Endomorphism>& actions);
  static ExtensionSpec free_by_free(int fiber_rank, std::vector<Automorphism> actions);
  // Finitely presented fiber. Actions are taken on trust (no word problem).
  // An action that is also an automorphism of the free group on the fiber
  // generators has its free inverse recorded: that inverse induces the
  // inverse automorphism of the fiber.
  static ExtensionSpec presented(Presentation fiber, std::vector<Endomorphism> actions);
  // Only the action on H_1(H; Z) = Z^rank is known.
  static ExtensionSpec abelian(int rank, std::vector<IntMatrix> matrices);

  FiberKind kind() const { return kind_; }
  // Number of fiber generators (rank of H_1 in abelian mode).
  int fiber_generators() const { return fiber_.n_generators(); }
  int base_rank() const { return base_rank_; }
  const Presentation& fiber_presentation() const { return fiber_; }

  // Free mode only.
  const std::vector<Automorphism>& automorphisms() const;
  // Free and presented modes.
  const std::vector<Endomorphism>& actions() const { return actions_; }
  // Inverse of action i when known (free fibers always).
  const std::optional<Endomorphism>& inverse_action(int i) const {
    return inverses_[static_cast<std::size_t>(i - 1)];
  }
  // Action of base generator i (1-based) on the fiber generators' exponents.
  const IntMatrix& action_matrix(int i) const { return matrices_[static_cast<std::size_t>(i - 1)]; }

  Nonfibering nonfibering() const { return nonfibering_; }
  int surface_genus() const { return surface_genus_; }
  void assert_surface_fiber(int genus);
  void assert_nonfibering();
  bool nonfibering_established() const { return nonfibering_ != Nonfibering::unknown; }

  bool operator==(const ExtensionSpec&) const;

 private:
  FiberKind kind_ = FiberKind::free;
  Presentation fiber_;
  int base_rank_ = 0;
  std::vector<Automorphism> automorphisms_;
  std::vector<Endomorphism> actions_;
  std::vector<std::optional<Endomorphism>> inverses_;
  std::vector<IntMatrix> matrices_;
  Nonfibering nonfibering_ = Nonfibering::unknown;
  int surface_genus_ = 0;
};

// <fiber gens, base gens | fiber relators, t_i a_j t_i^-1 phi_i(a_j)^-1>.
// Throws unsupported_fiber in abelian mode.
Presentation semidirect_presentation(const ExtensionSpec& e);

// Fiber relation columns followed by the blocks (Phi_i - I).
IntMatrix stacked_matrix(const ExtensionSpec& e);
// Z^k + Z^n / <relations, (Phi_i - I) columns>.
AbelianGroupShape extension_h1(const ExtensionSpec& e);

// Element h * w of G (free fiber) with h in the fiber and w in the base.
struct GroupElement {
  Word fiber;
  Word base;
  bool operator==(const GroupElement&) const = default;
};

Automorphism base_action(const ExtensionSpec& e, const Word& base_word);
IntMatrix base_matrix(const ExtensionSpec& e, const Word& base_word);
GroupElement multiply(const ExtensionSpec& e, const GroupElement& x, const GroupElement& y);
GroupElement inverse(const ExtensionSpec& e, const GroupElement& x);
// Normal form of a word over the generators of G.
GroupElement normal_form(const ExtensionSpec& e, const Word& g);
// Word over the generators of G spelling h * w.
Word to_word(const ExtensionSpec& e, const GroupElement& x);
// Conjugation x -> g x g^-1 restricted to the (free) fiber.
Endomorphism conjugation_action(const ExtensionSpec& e, const Word& g);

// K = L x| <g_1, ..., g_l> inside G.
struct SubgroupDescriptor {
  // Free basis of L = K n H over the fiber generators; nullopt is all of H.
  std::optional<std::vector<Word>> fiber_basis;
  // Presented fibers: L given by its coset table in H instead; its Schreier
  // generators (breadth-first transversal) become the new fiber generators.
  std::optional<CosetTable> fiber_table;
  // Lifts g_j over the generators of G; their base parts freely generate the
  // image of K in F_k.
  std::vector<Word> base_elements;
  bool operator==(const SubgroupDescriptor&) const = default;
};

struct SubExtension {
  ExtensionSpec spec;
  SubgroupDescriptor descriptor;
  std::size_t fiber_index = 0;  // [H : L]
  std::size_t base_index = 0;   // [F_k : pi(K)]
  std::size_t index() const { return fiber_index * base_index; }
};

// Rebuilds the extension structure of K from its descriptor. Throws
// not_free_basis / not_preserved when the descriptor does not describe such
// a subgroup, and precondition when the index is infinite.
SubExtension build_sub_extension(const ExtensionSpec& e, const SubgroupDescriptor& d);

// Image in F_k of the subgroup with coset table t for semidirect_presentation(e).
SubgroupGraph base_image(const ExtensionSpec& e, const CosetTable& t);

// Sub-extension of the finite-index subgroup with coset table t for
// semidirect_presentation(e). Free and presented fibers.
SubExtension sub_extension(const ExtensionSpec& e, const CosetTable& t);

}  // namespace exhom
