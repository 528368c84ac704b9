#include <doctest.h>

#include "exhom/criterion.hpp"
#include "exhom/error.hpp"
#include "exhom/golden.hpp"

using namespace exhom;

namespace {
const Alphabet ab = Alphabet::standard(2);
Word w(const char* text) { return ab.parse(text); }
Endomorphism endo(const char* x, const char* y) { return Endomorphism(2, {w(x), w(y)}); }
const Endomorphism lambda = endo("a b", "b");
const Endomorphism rho = endo("a", "b a");

ExtensionSpec f2xf2() { return ExtensionSpec::free_by_free(2, {Endomorphism::identity(2), Endomorphism::identity(2)}); }

Character ch(std::initializer_list<long> v) {
  Character c;
  for (long x : v) c.values.emplace_back(x);
  return c;
}

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::parse;
}

// Value of a character on a word over the generators of G.
Rational value(const Character& c, const Word& g) {
  Rational s = 0;
  for (Letter l : g) s += l.sign() * c.values[static_cast<std::size_t>(l.index() - 1)];
  return s;
}
}  // namespace

TEST_CASE("excessive characters") {
  const auto two = excessive_characters(f2xf2());
  REQUIRE(two.size() == 2);
  CHECK(two[0] == ch({1, 0, 0, 0}));
  CHECK(two[1] == ch({0, 1, 0, 0}));
  CHECK(two[0].to_string(2) == "(1, 0 | 0, 0)");

  const ExtensionSpec g1 = golden::sub_extension_file().spec;
  const auto one = excessive_characters(g1);
  REQUIRE(one.size() == 1);
  CHECK(one[0] == ch({1, 0, -1, 0, 0, 0, 0}));
  CHECK(is_character(g1, one[0]));

  CHECK(excessive_characters(ExtensionSpec::free_by_free(2, {compose(lambda, lambda), rho})).empty());
  CHECK_FALSE(is_excessive(ExtensionSpec::free_by_free(2, {lambda, rho})));
  CHECK(is_excessive(ExtensionSpec::abelian(2, {IntMatrix::identity(2)})));
}

TEST_CASE("characters must kill the relators") {
  const ExtensionSpec g1 = golden::sub_extension_file().spec;
  CHECK_FALSE(is_character(g1, ch({1, 0, 0, 0, 0, 0, 0})));
  CHECK(is_character(g1, ch({0, 0, 0, 1, 0, 0, 0})));
  CHECK(is_character(f2xf2(), ch({1, 1, 1, 1})));
}

TEST_CASE("normalization") {
  // the map sending every generator to 1
  CHECK(normalize(f2xf2(), ch({1, 1, 1, 1})) == ch({1, 1, 0, 0}));
  CHECK(normalize(f2xf2(), ch({1, 1, 0, 0})) == ch({1, 1, 0, 0}));
  const ExtensionSpec g1 = golden::sub_extension_file().spec;
  CHECK(normalize(g1, ch({2, 0, -2, 0, 0, 0, 0})) == ch({1, 0, -1, 0, 0, 0, 0}));
  Character half = ch({1, 0, -1, 3, 0, 0, 0});
  half.values[0] = Rational(1, 2);
  half.values[2] = Rational(-1, 2);
  CHECK(normalize(g1, half) == ch({1, 0, -1, 0, 0, 0, 0}));
  CHECK(kind_of([&] { normalize(g1, ch({0, 0, 0, 1, 0, 0, 0})); }) == ErrorKind::precondition);
  CHECK(kind_of([&] { normalize(g1, ch({1, 0, 0, 0, 0, 0, 0})); }) == ErrorKind::not_a_character);
}

TEST_CASE("fibration plan on F2 x F2") {
  const ExtensionSpec e = f2xf2();
  const FibrationPlan plan = fibration_plan(e, ch({1, 1, 0, 0}));
  CHECK_FALSE(plan.effective);
  REQUIRE(plan.alpha.size() == 2);
  CHECK(plan.alpha[0] == ch({0, 0, 1, 0}));
  CHECK(plan.alpha[1] == ch({0, 0, 0, 1}));
  // <a s^-1, b s^-1> and <a t^-1, b t^-1>
  const Alphabet g = ab.joined(Alphabet({"s", "t"}));
  REQUIRE(plan.kernel_words.size() == 2);
  CHECK(plan.kernel_words[0] == std::vector<Word>{g.parse("a s-"), g.parse("b s-")});
  CHECK(plan.kernel_words[1] == std::vector<Word>{g.parse("a t-"), g.parse("b t-")});
  for (int r = 1; r <= 4; ++r) {
    for (int i = 1; i <= 2; ++i) {
      // beta_i = alpha_i + gamma / r
      Character beta = plan.alpha[static_cast<std::size_t>(i - 1)];
      for (std::size_t j = 0; j < beta.values.size(); ++j) beta.values[j] += plan.gamma.values[j] / r;
      for (int j = 1; j <= 2; ++j) CHECK(value(beta, fibration_kernel_word(e, plan, i, j, r)) == 0);
    }
  }
  CHECK(fibration_kernel_word(e, plan, 1, 2, 3) == g.parse("b b b s-"));
}

TEST_CASE("fibration plan on the index-three sub-extension") {
  const ExtensionSpec g1 = golden::sub_extension_file().spec;
  const FibrationPlan plan = fibration_plan(g1, ch({1, 0, -1, 0, 0, 0, 0}));
  CHECK(plan.kernel_words.size() == 4);
  CHECK(plan.alpha.size() == 4);
  CHECK(kind_of([] {
          const ExtensionSpec e = ExtensionSpec::free_by_free(2, {compose(lambda, lambda), rho});
          fibration_plan(e, ch({1, 0, 0, 0}));
        }) == ErrorKind::precondition);
}

TEST_CASE("outer kernel probe") {
  const Alphabet st({"s", "t"});
  SUBCASE("inner actions") {
    const ExtensionSpec e = ExtensionSpec::free_by_free(2, {Endomorphism::conjugation(2, w("a")),
                                                            Endomorphism::conjugation(2, w("b"))});
    const auto found = outer_kernel_probe(e, 4);
    REQUIRE(found);
    CHECK(st.format(found->w) == "s");
    CHECK(ab.format(found->g) == "a");
    CHECK(verify_outer_kernel_witness(e, *found));
  }
  SUBCASE("lambda and its inverse") {
    const ExtensionSpec e = ExtensionSpec::free_by_free(2, {lambda, endo("a b-", "b")});
    const auto found = outer_kernel_probe(e, 4);
    REQUIRE(found);
    CHECK(st.format(found->w) == "s t");
    CHECK(found->g.empty());
    CHECK(verify_outer_kernel_witness(e, *found));
  }
  SUBCASE("lambda and rho act faithfully on short words") {
    CHECK_FALSE(outer_kernel_probe(ExtensionSpec::free_by_free(2, {lambda, rho}), 4));
    CHECK_FALSE(outer_kernel_probe(ExtensionSpec::free_by_free(2, {compose(lambda, lambda), rho}), 4));
  }
  SUBCASE("a witness that does not commute is rejected") {
    const ExtensionSpec e = ExtensionSpec::free_by_free(2, {Endomorphism::conjugation(2, w("a")),
                                                            Endomorphism::conjugation(2, w("b"))});
    OuterKernelWitness bad = *outer_kernel_probe(e, 4);
    bad.c = bad.c * Word{1};
    CHECK_FALSE(verify_outer_kernel_witness(e, bad));
  }
  SUBCASE("rank-one fibers are refused") {
    const ExtensionSpec z = ExtensionSpec::free_by_free(1, {Endomorphism::identity(1), Endomorphism::identity(1)});
    CHECK(kind_of([&] { outer_kernel_probe(z, 3); }) == ErrorKind::precondition);
  }
}

TEST_CASE("strong fiber lift") {
  const std::vector<Rational> zero{0, 0}, fiber{1, 0, -1};
  const Character p = strong_fiber_lift(2, zero, fiber);
  CHECK(p.values == std::vector<Rational>{1, 0, -1, 0, 0});
  const std::vector<Rational> beta{Rational(1), Rational(1, 3)};
  CHECK(strong_fiber_lift(2, beta, fiber).values == std::vector<Rational>{1, 0, -1, 1, Rational(1, 3)});
  CHECK(strong_fiber_lift(0, {}, fiber).values == fiber);
  CHECK(kind_of([&] { strong_fiber_lift(3, zero, fiber); }) == ErrorKind::precondition);
}

TEST_CASE("rank-one descent") {
  SUBCASE("positive signs") {
    const ExtensionSpec e = ExtensionSpec::abelian(1, {IntMatrix{{1}}, IntMatrix{{1}}});
    const RankOneDescent d = rank_one_descent(e);
    CHECK(d.signs == std::vector<int>{1, 1});
    CHECK_FALSE(d.descended);
    CHECK(d.sub.index() == 1);
    CHECK(is_excessive(d.sub.spec));
  }
  SUBCASE("one negative sign") {
    const ExtensionSpec e = ExtensionSpec::abelian(1, {IntMatrix{{-1}}, IntMatrix{{1}}});
    CHECK_FALSE(is_excessive(e));
    const RankOneDescent d = rank_one_descent(e);
    CHECK(d.signs == std::vector<int>{-1, 1});
    CHECK(d.descended);
    CHECK(d.sub.index() == 2);
    CHECK(d.sub.spec.base_rank() == 3);
    CHECK(rank_one_descent(d.sub.spec).signs == std::vector<int>{1, 1, 1});
    CHECK(is_excessive(d.sub.spec));
    // the base elements span the kernel of the s-exponent mod 2
    std::vector<Word> base;
    for (const Word& g : d.sub.descriptor.base_elements) base.push_back(shift(g, -1));
    CHECK(SubgroupGraph::fold(base, 2).same_subgroup(SubgroupGraph::fold(std::vector<Word>{Word{1, 1}, Word{2}, Word{1, 2, -1}}, 2)));
  }
  SUBCASE("two negative signs") {
    const ExtensionSpec e = ExtensionSpec::abelian(1, {IntMatrix{{-1}}, IntMatrix{{-1}}});
    const RankOneDescent d = rank_one_descent(e);
    CHECK(d.signs == std::vector<int>{-1, -1});
    std::vector<Word> base;
    for (const Word& g : d.sub.descriptor.base_elements) base.push_back(shift(g, -1));
    CHECK(SubgroupGraph::fold(base, 2).same_subgroup(SubgroupGraph::fold(std::vector<Word>{Word{1, 1}, Word{2, 2}, Word{1, 2}}, 2)));
    CHECK(rank_one_descent(d.sub.spec).signs == std::vector<int>{1, 1, 1});
  }
  SUBCASE("free fiber of rank one") {
    const ExtensionSpec e = ExtensionSpec::free_by_free(1, {Endomorphism(1, {Word{-1}}), Endomorphism::identity(1)});
    const RankOneDescent d = rank_one_descent(e);
    CHECK(d.signs == std::vector<int>{-1, 1});
    CHECK(extension_h1(d.sub.spec).free_rank == 4);
  }
  SUBCASE("torsion next to the free part") {
    // Z + Z/2 written as <x, y | y^2>, s inverting x
    const ExtensionSpec e = ExtensionSpec::presented(Presentation(2, {Word{2, 2}, Word{1, 2, -1, -2}}),
                                                     {Endomorphism(2, {Word{-1}, Word{2}}), Endomorphism::identity(2)});
    const RankOneDescent d = rank_one_descent(e);
    CHECK(d.signs == std::vector<int>{-1, 1});
    CHECK(is_excessive(d.sub.spec));
  }
  SUBCASE("free rank other than one") {
    CHECK(kind_of([] { rank_one_descent(f2xf2()); }) == ErrorKind::precondition);
  }
}
