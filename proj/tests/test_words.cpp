#include <doctest.h>

#include <random>

#include "exhom/error.hpp"
#include "exhom/words.hpp"
#include "oracles.hpp"

using namespace exhom;

namespace {
const Alphabet ab = Alphabet::standard(2);
Word w(const char* text) { return ab.parse(text); }
}  // namespace

TEST_CASE("free reduction") {
  const std::vector<Letter> cancel{Letter(1, 1), Letter(1, -1)};
  CHECK(Word::reduce(cancel).empty());
  const std::vector<Letter> mixed{Letter(2, 1), Letter(1, 1), Letter(1, -1), Letter(2, 1)};
  CHECK(Word::reduce(mixed) == Word{2, 2});
  const std::vector<Letter> nested{Letter(1, 1), Letter(2, 1), Letter(2, -1), Letter(1, -1), Letter(2, 1)};
  CHECK(Word::reduce(nested) == Word{2});
  const Word u{1, 2, -1};
  CHECK(Word::reduce(u.letters()) == u);
}

TEST_CASE("products and inverses") {
  CHECK(w("a b") * w("b- a") == w("a a"));
  const Word u = w("b a b- a a");
  CHECK(u * Word{} == u);
  CHECK((u * invert(u)).empty());
  CHECK(invert(w("a b")) == w("b- a-"));
  CHECK(invert(Word{}).empty());
  CHECK(invert(invert(u)) == u);
  CHECK(power(w("a b"), 3) == w("a b a b a b"));
  CHECK(power(w("a b"), -1) == w("b- a-"));
}

TEST_CASE("cyclic reduction") {
  auto [core, conj] = cyclic_reduce(w("b a b-"));
  CHECK(core == w("a"));
  CHECK(conj == w("b"));
  auto sq = cyclic_reduce(w("a a"));
  CHECK(sq.core == w("a a"));
  CHECK(sq.conjugator.empty());
  auto id = cyclic_reduce(Word{});
  CHECK(id.core.empty());
  CHECK(id.conjugator.empty());
  const Word u = w("a b- a b a-");
  auto r = cyclic_reduce(u);
  CHECK(r.conjugator * r.core * invert(r.conjugator) == u);
}

TEST_CASE("endomorphism images") {
  const std::vector<Word> lambda{w("a b"), w("b")};
  const std::vector<Word> rho{w("a"), w("b a")};
  CHECK(apply_endo(lambda, apply_endo(lambda, w("a"))) == w("a b b"));
  CHECK(apply_endo(rho, w("b a b-")) == w("b a b-"));
  const std::vector<Word> id{w("a"), w("b")};
  CHECK(apply_endo(id, w("a b- a")) == w("a b- a"));
  CHECK_THROWS_AS(apply_endo(std::vector<Word>{w("a")}, w("b")), Error);
}

TEST_CASE("exponent vectors") {
  CHECK(exponent_vector(w("b a b-"), 2) == std::vector<std::int64_t>{1, 0});
  CHECK(exponent_vector(w("a b b"), 2) == std::vector<std::int64_t>{1, 2});
  CHECK(exponent_vector(Word{}, 2) == std::vector<std::int64_t>{0, 0});
  try {
    exponent_vector(Word{3}, 2);
    FAIL("expected index_overflow");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::index_overflow);
  }
}

TEST_CASE("literal syntax") {
  CHECK(w("a b b") == Word{1, 2, 2});
  CHECK(w("b a b-") == Word{2, 1, -2});
  CHECK(w("1").empty());
  CHECK(w("").empty());
  CHECK(ab.format(Word{2, 1, -2}) == "b a b-");
  CHECK(ab.format(Word{}) == "1");
  CHECK_THROWS_AS(w("a c"), Error);
  const Alphabet g = ab.joined(Alphabet({"s", "t"}));
  CHECK(g.parse("s a t-") == Word{3, 1, -4});
  CHECK(shift(Word{1, -2}, 2) == Word{3, -4});
}

TEST_CASE("shortlex enumeration") {
  const auto two = words_of_length(2, 2);
  CHECK(two.size() == 12);
  for (std::size_t i = 1; i < two.size(); ++i) CHECK(shortlex_less(two[i - 1], two[i]));
  CHECK(words_of_length(2, 0).size() == 1);
  CHECK(shortlex_less(w("b-"), w("a a")));
}

TEST_CASE("algebraic laws on random words") {
  std::mt19937 rng(11);
  for (int i = 0; i < 300; ++i) {
    const Word u = oracle::random_word(rng, 3, 7), v = oracle::random_word(rng, 3, 7),
               x = oracle::random_word(rng, 3, 7);
    CHECK((u * v) * x == u * (v * x));
    CHECK(Word::reduce((u * v).letters()) == u * v);
    const auto eu = exponent_vector(u, 3), ev = exponent_vector(v, 3), euv = exponent_vector(u * v, 3);
    for (std::size_t j = 0; j < 3; ++j) CHECK(euv[j] == eu[j] + ev[j]);
    const std::vector<Word> f{oracle::random_word(rng, 3, 3), oracle::random_word(rng, 3, 3),
                              oracle::random_word(rng, 3, 3)};
    CHECK(apply_endo(f, u * v) == apply_endo(f, u) * apply_endo(f, v));
    CHECK(apply_endo(f, invert(u)) == invert(apply_endo(f, u)));
  }
}
