#pragma once

// Slow, independent reference implementations the library is checked
// against. None of them calls into the algorithms they verify.

#include <cstddef>
#include <optional>
#include <random>
#include <vector>

#include "exhom/endos.hpp"
#include "exhom/words.hpp"
#include "exhom/zmat.hpp"

namespace oracle {

using exhom::Integer;
using exhom::IntMatrix;
using exhom::Word;

// Fraction-free Gaussian elimination.
std::size_t bareiss_rank(const IntMatrix& a);
Integer bareiss_determinant(const IntMatrix& a);

// Coincidence procedure on a bouquet of generator loops: union-find merges
// vertices until no vertex has two edges with one label. Naive rescans, so
// it is only good for small inputs.
class FoldingOracle {
 public:
  FoldingOracle(const std::vector<Word>& generators, int rank);
  bool contains(const Word& u) const;
  std::size_t vertices() const { return classes_; }
  bool complete() const;

 private:
  std::optional<int> step(int v, int letter) const;
  int rank_;
  std::size_t classes_ = 0;
  std::vector<std::vector<int>> out_;  // out_[v][direction], -1 if absent
};

// Number of subgroups of index n in the free group of rank r, from Hall's
// recursion a_n = n (n!)^(r-1) - sum_{k<n} ((n-k)!)^(r-1) a_k.
std::vector<Integer> hall_subgroup_counts(int rank, int max_index);

// Transitive actions of two permutations of {0..n-1} enumerated outright.
struct TransitiveCount {
  Integer subgroups;    // transitive pairs / (n-1)!
  std::size_t classes;  // pairs up to simultaneous relabelling
};
TransitiveCount brute_force_f2_subgroups(int n);

// Stabilizer of point 0 in a random transitive action of F_rank on n points,
// as Schreier generators, plus the permutations themselves.
struct RandomAction {
  std::vector<std::vector<int>> perms;  // perms[g][point]
  std::vector<Word> stabilizer;
  bool fixes_zero(const Word& u) const;
};
RandomAction random_transitive_action(std::mt19937& rng, int rank, int n);

Word random_word(std::mt19937& rng, int rank, std::size_t max_length);
IntMatrix random_matrix(std::mt19937& rng, std::size_t rows, std::size_t cols, int lo, int hi);
// Product of `steps` elementary Nielsen automorphisms of F_rank.
exhom::Endomorphism random_nielsen(std::mt19937& rng, int rank, int steps);

// All reduced words of length <= n over generators 1..rank.
std::vector<Word> ball(int rank, std::size_t n);

}  // namespace oracle
