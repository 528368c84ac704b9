#pragma once

// Finite presentations, coset tables, low-index subgroups and
// Reidemeister-Schreier rewriting.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "exhom/words.hpp"
#include "exhom/zmat.hpp"

namespace exhom {

class Presentation {
 public:
  Presentation() = default;
  // Relators are cyclically reduced on entry; trivial and repeated relators
  // (up to cyclic permutation and inversion) are dropped.
  Presentation(int n_generators, std::vector<Word> relators);

  int n_generators() const { return n_generators_; }
  const std::vector<Word>& relators() const { return relators_; }

  bool operator==(const Presentation&) const = default;

 private:
  int n_generators_ = 0;
  std::vector<Word> relators_;
};

// n_generators x n_relators matrix of relator exponent sums.
IntMatrix relator_matrix(const Presentation& p);
AbelianGroupShape abelianization(const Presentation& p);

// Permutation action of the generators on the right cosets of a finite-index
// subgroup; coset 0 is the subgroup itself.
class CosetTable {
 public:
  CosetTable() = default;
  // action[c][d] for directions d = 0 .. 2n-1 (generator, inverse, ...).
  CosetTable(int n_generators, std::vector<std::vector<int>> action);

  std::size_t degree() const { return action_.size(); }
  int n_generators() const { return n_generators_; }
  int next(std::size_t coset, Letter l) const {
    return action_[coset][l.direction()];
  }
  // Coset reached from `coset` by reading u.
  std::size_t trace(std::size_t coset, const Word& u) const;

  const std::vector<std::vector<int>>& action() const { return action_; }

  // Same subgroup's conjugate: the table renumbered with `coset` as base.
  CosetTable rebased(std::size_t coset) const;

  // Relators of p act trivially on every coset and the action is transitive.
  bool is_valid_for(const Presentation& p) const;

  bool operator==(const CosetTable&) const = default;
  bool operator<(const CosetTable& o) const;

  // Number of distinct subgroups conjugate to this one (point stabilizers).
  std::size_t conjugacy_class_size() const;

  std::string to_string() const;

 private:
  int n_generators_ = 0;
  std::vector<std::vector<int>> action_;
};

// One coset table per conjugacy class of subgroups of index <= max_degree,
// sorted by (degree, table). Degrees above 12 are rejected.
std::vector<CosetTable> low_index(const Presentation& p, std::size_t max_degree);

enum class Transversal { breadth_first, depth_first };

// Schreier generators of the subgroup, one per non-tree (coset, generator)
// pair, in (coset, generator) order, for the chosen transversal.
struct SchreierData {
  std::vector<Word> representatives;  // per coset, over the group generators
  std::vector<Word> generators;       // Schreier generators, over the group generators
  // slot[c * n + (g-1)] = 1-based Schreier generator index, or 0 for tree edges
  std::vector<int> slot;
};
SchreierData schreier_data(const CosetTable& t, Transversal order = Transversal::breadth_first);

// Reidemeister rewriting of u, read from `coset`, over the Schreier
// generators. Throws not_in_subgroup unless u returns to `coset`.
Word schreier_rewrite(const CosetTable& t, const SchreierData& s, std::size_t coset, const Word& u);

// Presentation of the subgroup on its Schreier generators.
Presentation reidemeister_schreier(const Presentation& p, const CosetTable& t,
                                   Transversal order = Transversal::breadth_first);

}  // namespace exhom
