#pragma once

// Folded (Stallings) graphs of finitely generated subgroups of a free group.
//
// A SubgroupGraph is a folded core graph with base vertex 0. Vertices are
// numbered breadth-first from the base, scanning directions 1, 1^-1, 2, ...
// so two graphs represent the same subgroup iff their tables are equal.
//
// Each positive edge carries a transcript: a word over the basis alphabet
// such that, along any closed path at the base, the product of transcripts
// expands to the label of the path. Rewriting a member of the subgroup in
// the basis is then a single walk.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "exhom/words.hpp"

namespace exhom {

class SubgroupGraph {
 public:
  // Folds the subgroup generated by `generators`. The basis is the
  // Nielsen-Schreier basis of the breadth-first spanning tree: one word per
  // non-tree edge, ordered by (source vertex, label).
  static SubgroupGraph fold(std::span<const Word> generators, int ambient_rank);

  // Folds and keeps `basis` (in the given order) as the basis used by
  // rewrite(). Throws not_free_basis unless the words freely generate.
  static SubgroupGraph fold_with_basis(std::span<const Word> basis, int ambient_rank);

  // Complete graph of a transitive permutation action. action[v][i-1] is the
  // image of point v under generator i; `base` becomes vertex 0.
  static SubgroupGraph from_action(const std::vector<std::vector<int>>& action,
                                   int base, int ambient_rank);

  // The whole free group (single vertex with a loop per generator).
  static SubgroupGraph rose(int ambient_rank);

  int ambient_rank() const { return rank_; }
  std::size_t vertex_count() const { return vertex_count_; }
  std::size_t rank() const { return basis_.size(); }
  const std::vector<Word>& basis() const { return basis_; }

  // Endpoint of the edge leaving v in direction l, or -1.
  int target(std::size_t v, Letter l) const {
    return next_[v * directions() + l.direction()];
  }
  // Vertex reached by reading u from v, or nullopt when the path leaves the graph.
  std::optional<std::size_t> walk(std::size_t v, const Word& u) const;

  bool is_complete() const;
  // Vertex count when complete, nullopt for infinite index.
  std::optional<std::size_t> index() const;

  bool contains(const Word& u) const;
  // Word over basis letters 1..rank() whose expansion reduces to u.
  // Throws not_in_subgroup.
  Word rewrite(const Word& u) const;

  // Base-pointed equality of the represented subgroups.
  bool same_subgroup(const SubgroupGraph& other) const {
    return rank_ == other.rank_ && next_ == other.next_;
  }
  // Total order on subgroups, consistent with same_subgroup.
  bool canonical_less(const SubgroupGraph& other) const;

  // "vertices N" followed by one "u label v" line per positive edge.
  std::string canonical_text() const;

 private:
  friend class GraphBuilder;
  std::size_t directions() const { return 2 * static_cast<std::size_t>(rank_); }

  int rank_ = 0;
  std::size_t vertex_count_ = 1;
  std::vector<int> next_;
  std::vector<Word> transcript_;  // [v * rank + (label - 1)]
  std::vector<Word> basis_;
};

SubgroupGraph intersect(const SubgroupGraph& g1, const SubgroupGraph& g2);

// Subgroup generated by the images of the basis of g.
SubgroupGraph image_graph(std::span<const Word> images, const SubgroupGraph& g);

}  // namespace exhom
