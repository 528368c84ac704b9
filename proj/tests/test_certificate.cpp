#include <doctest.h>

#include <algorithm>
#include <string>

#include "exhom/certificate.hpp"
#include "exhom/criterion.hpp"
#include "exhom/error.hpp"
#include "exhom/golden.hpp"

using namespace exhom;

namespace {
GroupFile load(const std::string& name) {
  return parse_group_file(read_text_file(std::string(EXHOM_DATA_DIR) + "/" + name));
}

bool has(const std::vector<Verdict>& vs, Verdict v) { return std::find(vs.begin(), vs.end(), v) != vs.end(); }
bool has(const std::vector<std::string>& xs, const std::string& x) {
  return std::find(xs.begin(), xs.end(), x) != xs.end();
}

std::string replace_line(std::string text, const std::string& prefix, const std::string& line) {
  const auto at = text.find("\n" + prefix);
  REQUIRE(at != std::string::npos);
  const auto end = text.find('\n', at + 1);
  return text.replace(at + 1, end - at - 1, line);
}
}  // namespace

TEST_CASE("F2 x F2 is incoherent by the direct route") {
  const Certificate c = incoherence_certificate(load("f2xf2.group"), Bounds{});
  CHECK(c.route == "R1");
  CHECK(c.scope == "group");
  CHECK(c.h1 == "Z^4");
  CHECK(c.verdicts == std::vector<Verdict>{Verdict::excessive_homology, Verdict::incoherent,
                                           Verdict::algebraically_fibers});
  CHECK(has(c.theorems, "excessive-homology-implies-incoherence"));
  CHECK(has(c.theorems, "amalgam-over-infinitely-generated-subgroup-not-finitely-presented"));
  REQUIRE(c.characters.size() == 1);
  CHECK(c.characters[0].to_string(2) == "(1, 1 | 0, 0)");
  CHECK(has(c.witness, "N = K(s) *_L K(t), K(x) = ker(alpha_x + gamma/r) on H x| <x>, L = ker(gamma|H)"));
  CHECK(has(c.witness, "K(s) at r = 1 contains a s-, b s-"));
  CHECK(has(c.witness, "K(t) at r = 1 contains a t-, b t-"));
  CHECK(c.definite());
}

TEST_CASE("inner actions give a product of free groups") {
  // inner maps abelianize to the identity, so homology is excessive and R1 comes first
  const GroupFile inner = load("f2_inner.group");
  const Certificate first = incoherence_certificate(inner, Bounds{});
  CHECK(first.route == "R1");
  CHECK(has(first.verdicts, Verdict::incoherent));
  CHECK(outer_kernel_probe(inner.spec, 4));

  // lambda^2, rho and conjugation by a: H1 = Z^3 + Z/2 on three base letters
  const Alphabet ab = Alphabet::standard(2);
  GroupFile g;
  g.name = "inner third letter";
  g.fiber = ab;
  g.base = Alphabet({"s", "t", "u"});
  g.spec = ExtensionSpec::free_by_free(2, {Endomorphism(2, {ab.parse("a b b"), ab.parse("b")}),
                                           Endomorphism(2, {ab.parse("a"), ab.parse("b a")}),
                                           Endomorphism::conjugation(2, ab.parse("a"))});
  const Certificate c = incoherence_certificate(g, Bounds{});
  CHECK(c.h1 == "Z^3 + Z/2");
  CHECK(c.route == "R2");
  CHECK(c.verdicts == std::vector<Verdict>{Verdict::incoherent});
  CHECK(has(c.theorems, "f2xf2-subgroup-implies-incoherence"));
  CHECK(has(c.witness, "base word u acts as conjugation by a"));
  CHECK(replay(serialize(c)).identical);
}

TEST_CASE("check mode stops before the subgroup search") {
  const GroupFile g = load("f2_l2_rho.group");
  const Certificate c = incoherence_certificate(g, Bounds{});
  CHECK(c.verdicts == std::vector<Verdict>{Verdict::inconclusive});
  CHECK(c.h1 == "Z^2 + Z/2");
  CHECK_FALSE(c.definite());

  const Certificate full = incoherence_certificate(g, Bounds{}, Mode::full);
  CHECK(full.route == "R3");
  CHECK(full.scope == "finite-index-subgroup");
  CHECK(has(full.verdicts, Verdict::incoherent));
  REQUIRE(full.subgroup);
  CHECK(full.subgroup->index() == 2);
  CHECK(full.subgroup_h1 == "Z^3");
}

TEST_CASE("base of rank one") {
  try {
    incoherence_certificate(load("f2_by_z.group"), Bounds{});
    FAIL("expected precondition");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::precondition);
  }
}

TEST_CASE("virtual verdicts") {
  SUBCASE("index two by both strategies") {
    const Certificate c = virtual_verdict(load("f2_l2_rho.group"), Bounds{});
    CHECK(c.verdicts == std::vector<Verdict>{Verdict::virtually_excessive, Verdict::algebraically_fibers,
                                             Verdict::incoherent});
    CHECK(c.subgroup_h1 == "Z^3");
    REQUIRE(c.subgroup);
    CHECK(c.subgroup->fiber_index == 2);
    CHECK(has(c.witness, "strategy orbit: index 2 fiber-index 2 base-index 1 H1 Z^3 (fiber index <= 4)"));
    CHECK(has(c.witness, "strategy lowindex: index 2 fiber-index 2 base-index 1 H1 Z^3 (index <= 6)"));
  }
  SUBCASE("F2 x F2 at index one") {
    const Certificate c = virtual_verdict(load("f2xf2.group"), Bounds{});
    CHECK(c.route == "R1");
    CHECK(has(c.verdicts, Verdict::virtually_excessive));
    CHECK(has(c.verdicts, Verdict::algebraically_fibers));
    CHECK(has(c.verdicts, Verdict::incoherent));
  }
  SUBCASE("the full Out(F2) action") {
    const GroupFile g = load("f2_lambda_rho.group");
    Bounds b;
    b.max_fiber_index = 2;
    b.strategy = Strategy::orbit;
    const Certificate c = virtual_verdict(g, b);
    REQUIRE(c.subgroup);
    CHECK(c.subgroup->index() == 6);
    CHECK(c.subgroup->base_index == 3);
    CHECK(c.subgroup_h1 == "Z^5");
    CHECK(has(c.verdicts, Verdict::incoherent));
    const Certificate d = virtual_verdict(g, Bounds{});
    REQUIRE(d.subgroup);
    CHECK(d.subgroup->index() == 4);
  }
  SUBCASE("rank-one fiber with a sign change") {
    const Certificate c = virtual_verdict(load("rank_one.group"), Bounds{});
    CHECK(c.route == "rank-one");
    REQUIRE(c.subgroup);
    CHECK(c.subgroup->index() == 2);
    CHECK(c.subgroup_h1 == "Z^4");
    CHECK(has(c.theorems, "rank-one-fiber-homology-index-two-descent"));
    CHECK(has(c.verdicts, Verdict::virtually_excessive));
  }
  SUBCASE("nothing within the bounds") {
    Bounds b;
    b.max_index = 3;
    b.max_fiber_index = 2;
    const Certificate c = virtual_verdict(load("z2_trivial.group"), b);
    CHECK(c.verdicts == std::vector<Verdict>{Verdict::inconclusive});
    CHECK(c.route == "none");
  }
  SUBCASE("presented fiber that is already excessive") {
    const Certificate c = virtual_verdict(load("bs12.group"), Bounds{});
    CHECK(c.h1 == "Z^3");
    CHECK(c.route == "R1");
  }
}

TEST_CASE("certificate text round trip and replay") {
  std::vector<Certificate> certs;
  certs.push_back(incoherence_certificate(load("f2xf2.group"), Bounds{}));
  certs.push_back(incoherence_certificate(load("f2_inner.group"), Bounds{}));
  certs.push_back(incoherence_certificate(load("f2_l2_rho.group"), Bounds{}, Mode::full));
  certs.push_back(virtual_verdict(load("f2_l2_rho.group"), Bounds{}));
  certs.push_back(virtual_verdict(load("rank_one.group"), Bounds{}));
  certs.push_back(incoherence_certificate(golden::sub_extension_file(), Bounds{}));
  for (const Certificate& c : certs) {
    const std::string text = serialize(c);
    CHECK(serialize(parse_certificate(text)) == text);
    const ReplayReport r = replay(text);
    CHECK(r.identical);
    CHECK(r.problems.empty());
    CHECK(r.recomputed == text);
  }
}

TEST_CASE("replay catches edited certificates") {
  const std::string text = serialize(virtual_verdict(load("f2_l2_rho.group"), Bounds{}));
  SUBCASE("homology") {
    const ReplayReport r = replay(replace_line(text, "subgroup-h1 ", "subgroup-h1 Z^4"));
    CHECK_FALSE(r.ok());
    CHECK_FALSE(r.problems.empty());
  }
  SUBCASE("character") {
    const ReplayReport r = replay(replace_line(text, "character ", "character 1 0 0 | 0 0"));
    CHECK_FALSE(r.ok());
    CHECK_FALSE(r.problems.empty());
  }
  SUBCASE("subgroup") {
    const ReplayReport r = replay(replace_line(text, "subgroup-fiber ", "subgroup-fiber a, b"));
    CHECK_FALSE(r.ok());
  }
  SUBCASE("verdict") {
    const ReplayReport r = replay(replace_line(text, "verdict ", "verdict inconclusive"));
    CHECK_FALSE(r.identical);
  }
  SUBCASE("bounds change the recomputation") {
    const ReplayReport r = replay(replace_line(text, "bound max-fiber-index ", "bound max-fiber-index 1"));
    CHECK(r.recomputed.find("bound max-fiber-index 1") != std::string::npos);
  }
}

TEST_CASE("malformed certificates") {
  CHECK_THROWS_AS(parse_certificate(""), Error);
  CHECK_THROWS_AS(parse_certificate("exhom-certificate 2\n"), Error);
  const std::string text = serialize(incoherence_certificate(load("f2xf2.group"), Bounds{}));
  CHECK_THROWS_AS(parse_certificate(replace_line(text, "verdict ", "verdict maybe")), Error);
  const std::string truncated = text.substr(0, text.find("end\n"));
  CHECK_THROWS_AS(parse_certificate(truncated), Error);
}
