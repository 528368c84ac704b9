#include <doctest.h>

#include <random>

#include "exhom/error.hpp"
#include "exhom/stallings.hpp"
#include "oracles.hpp"

using namespace exhom;

namespace {
const Alphabet ab = Alphabet::standard(2);
Word w(const char* text) { return ab.parse(text); }
std::vector<Word> ws(std::initializer_list<const char*> texts) {
  std::vector<Word> out;
  for (const char* t : texts) out.push_back(w(t));
  return out;
}
const std::vector<Word> h_gens = ws({"a", "b b", "b a b-"});
}  // namespace

TEST_CASE("folding the index-two subgroup") {
  const SubgroupGraph h = SubgroupGraph::fold(h_gens, 2);
  CHECK(h.vertex_count() == 2);
  REQUIRE(h.index());
  CHECK(*h.index() == 2);
  CHECK(h.rank() == 3);
  // tree edge 0 -b-> 1; non-tree edges (0, a), (1, a), (1, b)
  CHECK(h.basis() == ws({"a", "b a b-", "b b"}));
  CHECK(h.canonical_text() == "vertices 2\n0 1 0\n0 2 1\n1 1 1\n1 2 0\n");
}

TEST_CASE("whole group, trivial group, infinite index") {
  const SubgroupGraph rose = SubgroupGraph::fold(ws({"a", "b"}), 2);
  CHECK(rose.vertex_count() == 1);
  CHECK(rose.index() == std::optional<std::size_t>(1));
  CHECK(rose.basis() == ws({"a", "b"}));
  CHECK(rose.same_subgroup(SubgroupGraph::rose(2)));

  const SubgroupGraph sq = SubgroupGraph::fold(ws({"a a"}), 2);
  CHECK(sq.vertex_count() == 2);
  CHECK_FALSE(sq.index());

  const SubgroupGraph trivial = SubgroupGraph::fold({}, 2);
  CHECK(trivial.basis().empty());
  CHECK(trivial.contains(Word{}));
  CHECK_FALSE(trivial.contains(w("a")));
}

TEST_CASE("membership") {
  const SubgroupGraph h = SubgroupGraph::fold(h_gens, 2);
  CHECK(h.contains(w("a")));
  CHECK_FALSE(h.contains(w("b")));
  CHECK(h.contains(Word{}));
  // b-exponent parity decides membership; check every word of length <= 6
  for (const Word& u : oracle::ball(2, 6)) CHECK(h.contains(u) == (exponent_vector(u, 2)[1] % 2 == 0));
}

TEST_CASE("rewriting in the basis") {
  const SubgroupGraph h = SubgroupGraph::fold_with_basis(h_gens, 2);
  const Alphabet xyz({"x", "y", "z"});
  CHECK(xyz.format(h.rewrite(w("b a b a"))) == "z y x");
  CHECK(xyz.format(h.rewrite(w("a b b"))) == "x y");
  CHECK(h.rewrite(Word{}).empty());
  try {
    h.rewrite(w("b"));
    FAIL("expected not_in_subgroup");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::not_in_subgroup);
  }
}

TEST_CASE("explicit bases") {
  const SubgroupGraph h = SubgroupGraph::fold_with_basis(ws({"b a b-", "a", "b b"}), 2);
  CHECK(h.basis() == ws({"b a b-", "a", "b b"}));
  CHECK(h.same_subgroup(SubgroupGraph::fold(h_gens, 2)));
  // generates H but is not free
  try {
    SubgroupGraph::fold_with_basis(ws({"a", "b b", "b a b-", "a b b"}), 2);
    FAIL("expected not_free_basis");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::not_free_basis);
  }
}

TEST_CASE("intersections") {
  const SubgroupGraph h = SubgroupGraph::fold(h_gens, 2);
  const SubgroupGraph rose = SubgroupGraph::rose(2);
  CHECK(intersect(h, rose).same_subgroup(h));
  const SubgroupGraph i0 = intersect(SubgroupGraph::fold(ws({"a"}), 2), SubgroupGraph::fold(ws({"b"}), 2));
  CHECK(i0.basis().empty());

  const SubgroupGraph k = SubgroupGraph::fold(ws({"b", "a a", "a b a-"}), 2);
  const SubgroupGraph hk = intersect(h, k);
  CHECK(hk.index() == std::optional<std::size_t>(4));
  for (const Word& u : oracle::ball(2, 8)) {
    const bool both = (exponent_vector(u, 2)[1] % 2 == 0) && (exponent_vector(u, 2)[0] % 2 == 0);
    CHECK(hk.contains(u) == both);
  }
}

TEST_CASE("intersection on random finite-index pairs") {
  std::mt19937 rng(17);
  const auto words = oracle::ball(2, 5);
  for (int i = 0; i < 20; ++i) {
    const auto x = oracle::random_transitive_action(rng, 2, 2 + i % 3);
    const auto y = oracle::random_transitive_action(rng, 2, 2 + i % 4);
    const SubgroupGraph gx = SubgroupGraph::fold(x.stabilizer, 2);
    const SubgroupGraph gy = SubgroupGraph::fold(y.stabilizer, 2);
    const SubgroupGraph both = intersect(gx, gy);
    REQUIRE(both.index());
    CHECK((*gx.index() * *gy.index()) % *both.index() == 0);
    for (const Word& u : words) CHECK(both.contains(u) == (x.fixes_zero(u) && y.fixes_zero(u)));
  }
}

TEST_CASE("images of subgroups") {
  const SubgroupGraph h = SubgroupGraph::fold(h_gens, 2);
  const std::vector<Word> lambda = ws({"a b", "b"});
  const std::vector<Word> rho = ws({"a", "b a"});
  const SubgroupGraph lh = image_graph(lambda, h);
  CHECK_FALSE(lh.same_subgroup(h));
  CHECK(lh.index() == std::optional<std::size_t>(2));
  CHECK(lh.same_subgroup(SubgroupGraph::fold(ws({"a b", "b b", "b a"}), 2)));
  CHECK(image_graph(ws({"a", "b"}), h).same_subgroup(h));
  CHECK(image_graph(rho, h).same_subgroup(h));
}

TEST_CASE("complete graphs from permutation actions") {
  // b-exponent mod 2: a fixes both points, b swaps them
  const SubgroupGraph g = SubgroupGraph::from_action({{0, 1}, {1, 0}}, 0, 2);
  CHECK(g.same_subgroup(SubgroupGraph::fold(h_gens, 2)));
  const SubgroupGraph g1 = SubgroupGraph::from_action({{0, 1}, {1, 0}}, 1, 2);
  CHECK(g1.same_subgroup(g));
}

TEST_CASE("canonical order is a strict order on subgroups") {
  const SubgroupGraph h = SubgroupGraph::fold(h_gens, 2);
  const SubgroupGraph k = SubgroupGraph::fold(ws({"b", "a a", "a b a-"}), 2);
  CHECK(h.canonical_less(k) != k.canonical_less(h));
  CHECK_FALSE(h.canonical_less(h));
}
