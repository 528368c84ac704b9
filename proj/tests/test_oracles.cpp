#include <doctest.h>

#include <random>

#include "oracles.hpp"

using exhom::IntMatrix;
using exhom::Word;

TEST_CASE("oracle: fraction-free elimination") {
  CHECK(oracle::bareiss_rank(IntMatrix{{1, 2}, {2, 4}}) == 1);
  CHECK(oracle::bareiss_rank(IntMatrix{{0, 0}, {0, 0}}) == 0);
  CHECK(oracle::bareiss_rank(IntMatrix{{0, 1, 0}, {0, 0, 1}, {0, 1, 1}}) == 2);
  CHECK(oracle::bareiss_determinant(IntMatrix{{2, 1}, {1, 1}}) == 1);
  CHECK(oracle::bareiss_determinant(IntMatrix{{0, 1}, {1, 0}}) == -1);
  CHECK(oracle::bareiss_determinant(IntMatrix{{1, 2, 3}, {0, 1, 4}, {5, 6, 0}}) == 1);
  CHECK(oracle::bareiss_determinant(IntMatrix{{2, 0, 1}, {1, 3, 2}, {1, 1, 1}}) == 0);
  CHECK(oracle::bareiss_determinant(IntMatrix{{1, 2}, {2, 4}}) == 0);
}

TEST_CASE("oracle: union-find folding") {
  const oracle::FoldingOracle h({Word{1}, Word{2, 2}, Word{2, 1, -2}}, 2);
  CHECK(h.vertices() == 2);
  CHECK(h.complete());
  CHECK(h.contains(Word{2, 1, 2, 1}));
  CHECK_FALSE(h.contains(Word{2}));

  const oracle::FoldingOracle sq({Word{1, 1}}, 2);
  CHECK(sq.vertices() == 2);
  CHECK_FALSE(sq.complete());
  CHECK(sq.contains(Word{-1, -1}));
  CHECK_FALSE(sq.contains(Word{1}));

  // a b a^-1 and a b^2 a^-1 fold onto one petal
  const oracle::FoldingOracle f({Word{1, 2, -1}, Word{1, 2, 2, -1}}, 2);
  CHECK(f.contains(Word{1, 2, -1}));
  CHECK_FALSE(f.contains(Word{2}));
}

TEST_CASE("oracle: subgroup counts of F2") {
  const auto a = oracle::hall_subgroup_counts(2, 5);
  CHECK(a[1] == 1);
  CHECK(a[2] == 3);
  CHECK(a[3] == 13);
  CHECK(a[4] == 71);
  CHECK(a[5] == 461);
  const auto three = oracle::brute_force_f2_subgroups(3);
  CHECK(three.subgroups == 13);
  CHECK(three.classes == 7);
}

TEST_CASE("oracle: random stabilizers fix the base point") {
  std::mt19937 rng(3);
  for (int n = 2; n <= 5; ++n) {
    const auto act = oracle::random_transitive_action(rng, 2, n);
    for (const Word& w : act.stabilizer) CHECK(act.fixes_zero(w));
    // Schreier: 1 + n (2 - 1) generators
    CHECK(act.stabilizer.size() == static_cast<std::size_t>(n + 1));
  }
}

TEST_CASE("oracle: ball sizes") {
  CHECK(oracle::ball(2, 0).size() == 1);
  CHECK(oracle::ball(2, 3).size() == 1 + 4 + 12 + 36);
}
