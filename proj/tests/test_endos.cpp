#include <doctest.h>

#include <random>

#include "exhom/endos.hpp"
#include "exhom/error.hpp"
#include "exhom/golden.hpp"
#include "oracles.hpp"

using namespace exhom;

namespace {
const Alphabet ab = Alphabet::standard(2);
Word w(const char* text) { return ab.parse(text); }
Endomorphism endo(const char* x, const char* y) { return Endomorphism(2, {w(x), w(y)}); }
const Endomorphism lambda = endo("a b", "b");
const Endomorphism rho = endo("a", "b a");

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::parse;
}
}  // namespace

TEST_CASE("composition") {
  CHECK(compose(lambda, lambda) == endo("a b b", "b"));
  CHECK(compose(lambda, Endomorphism::identity(2)) == lambda);
  CHECK(compose(lambda, endo("a b-", "b")).is_identity());
  CHECK(kind_of([] { compose(lambda, Endomorphism::identity(3)); }) == ErrorKind::rank_mismatch);
  // f o g means g first
  CHECK(compose(lambda, rho)(w("b")) == lambda(w("b a")));
}

TEST_CASE("certified inverses") {
  const Automorphism l = certify_automorphism(lambda);
  CHECK(l.inverse() == endo("a b-", "b"));
  const Automorphism id = certify_automorphism(Endomorphism::identity(2));
  CHECK(id.inverse().is_identity());
  CHECK(kind_of([] { certify_automorphism(endo("a a", "b")); }) == ErrorKind::not_surjective);
  CHECK(kind_of([] { Endomorphism(2, {Word{3}, Word{1}}); }) == ErrorKind::index_overflow);
}

TEST_CASE("abelianization matrices") {
  CHECK(abelianized(lambda) == IntMatrix{{1, 0}, {1, 1}});
  CHECK(abelianized(Endomorphism::identity(3)) == IntMatrix::identity(3));
  const SubgroupGraph h = SubgroupGraph::fold_with_basis(golden::h_basis(), 2);
  CHECK(abelianized(restrict(compose(lambda, lambda), h)) == golden::matrices()[0]);
}

TEST_CASE("inner automorphisms") {
  CHECK(is_inner(endo("b a b-", "b")) == std::optional<Word>(w("b")));
  CHECK_FALSE(is_inner(lambda));
  const Endomorphism c = Endomorphism::conjugation(2, w("a b"));
  CHECK(is_inner(c) == std::optional<Word>(w("a b")));
  CHECK(is_inner(Endomorphism::identity(2)) == std::optional<Word>(Word{}));
  // right abelianization but not inner
  CHECK_FALSE(is_inner(endo("a", "a b a- b a b-")));
}

TEST_CASE("innerness recovered for random conjugators") {
  std::mt19937 rng(23);
  for (int m = 2; m <= 3; ++m) {
    for (int i = 0; i < 60; ++i) {
      const Word g = oracle::random_word(rng, m, 6);
      const Endomorphism c = Endomorphism::conjugation(m, g);
      const auto found = is_inner(c);
      REQUIRE(found);
      CHECK(Endomorphism::conjugation(m, *found) == c);
    }
  }
}

TEST_CASE("restriction to the preserved subgroup") {
  const SubgroupGraph h = SubgroupGraph::fold_with_basis(golden::h_basis(), 2);
  const Alphabet xyz({"x", "y", "z"});
  const Endomorphism l2 = restrict(compose(lambda, lambda), h);
  CHECK(xyz.format(l2.image(1)) == "x y");
  CHECK(xyz.format(l2.image(2)) == "y");
  CHECK(xyz.format(l2.image(3)) == "z y");
  const Endomorphism r = restrict(rho, h);
  CHECK(xyz.format(r.image(1)) == "x");
  CHECK(xyz.format(r.image(2)) == "z y x");
  CHECK(xyz.format(r.image(3)) == "z");
  CHECK(abelianized(r) == golden::matrices()[1]);
  CHECK(restrict(Endomorphism::identity(2), h).is_identity());
  CHECK(kind_of([&] { restrict(lambda, h); }) == ErrorKind::not_preserved);
}

TEST_CASE("functoriality and unimodularity on random automorphisms") {
  std::mt19937 rng(29);
  for (int i = 0; i < 80; ++i) {
    const int m = 2 + i % 2;
    const Endomorphism f = oracle::random_nielsen(rng, m, 6);
    const Endomorphism g = oracle::random_nielsen(rng, m, 6);
    CHECK(abelianized(compose(f, g)) == abelianized(f) * abelianized(g));
    const Automorphism a = certify_automorphism(f);
    CHECK(compose(a.forward(), a.inverse()).is_identity());
    CHECK(compose(a.inverse(), a.forward()).is_identity());
    CHECK(abelianized(a.forward()) * abelianized(a.inverse()) == IntMatrix::identity(static_cast<std::size_t>(m)));
    CHECK(abs(oracle::bareiss_determinant(abelianized(f))) == 1);
  }
}
