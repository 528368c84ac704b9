#include "exhom/golden.hpp"

#include <sstream>

#include "exhom/certificate.hpp"
#include "exhom/error.hpp"
#include "exhom/search.hpp"

namespace exhom::golden {

Endomorphism lambda() { return Endomorphism(2, {Word{1, 2}, Word{2}}); }
Endomorphism rho() { return Endomorphism(2, {Word{1}, Word{2, 1}}); }

std::vector<Word> h_basis() { return {Word{1}, Word{2, 2}, Word{2, 1, -2}}; }

std::vector<Word> stabilizer_words() {
  return {Word{1, 1}, Word{2}, Word{1, 2, 2, -1}, Word{1, 2, 1, -2, -1}};
}

std::vector<IntMatrix> matrices() {
  return {
      IntMatrix{{1, 0, 0}, {1, 1, 1}, {0, 0, 1}},
      IntMatrix{{1, 1, 0}, {0, 1, 0}, {0, 1, 1}},
      IntMatrix{{0, 2, -1}, {-1, 3, -1}, {-1, 2, 0}},
      IntMatrix{{2, -1, 1}, {2, -1, 2}, {1, -1, 2}},
  };
}

std::vector<IntVector> spans() {
  return {{0, 1, 0}, {1, 0, 1}, {1, 1, 1}, {1, 2, 1}};
}

namespace {

const char* const kCokernel = "Z";
const char* const kH1 = "Z^5";
constexpr std::size_t kOrbitSize = 3;
constexpr std::size_t kStabilizerIndex = 3;

GroupFile make_sub_extension(const Endomorphism& l, const Endomorphism& r) {
  const std::vector<Automorphism> gens{Automorphism::certify(l), Automorphism::certify(r)};
  const SubgroupGraph h = SubgroupGraph::fold_with_basis(h_basis(), 2);
  std::vector<Endomorphism> acts;
  for (const Word& w : stabilizer_words()) {
    Automorphism phi = Automorphism::identity(2);
    for (Letter x : w) {
      const Automorphism& g = gens[static_cast<std::size_t>(x.index() - 1)];
      phi = compose(phi, x.sign() > 0 ? g : g.inverted());
    }
    acts.push_back(restrict(phi.forward(), h));
  }
  GroupFile f;
  f.name = "H x| F4, H = <a, b b, b a b->";
  f.fiber = Alphabet({"x", "y", "z"});
  f.base = Alphabet({"p", "q", "r", "u"});
  f.spec = ExtensionSpec::free_by_free(3, acts);
  return f;
}

std::string show(const IntMatrix& m) {
  std::string s = m.to_string();
  for (char& c : s) {
    if (c == '\n') c = ' ';
  }
  while (!s.empty() && s.back() == ' ') s.pop_back();
  return s;
}

}  // namespace

GroupFile sub_extension_file() { return make_sub_extension(lambda(), rho()); }

GroupFile full_action_file() {
  GroupFile f;
  f.name = "F2 x| F2, actions lambda rho";
  f.fiber = Alphabet({"a", "b"});
  f.base = Alphabet({"s", "t"});
  f.spec = ExtensionSpec::free_by_free(2, std::vector<Endomorphism>{lambda(), rho()});
  return f;
}

bool Report::ok() const {
  for (const Step& s : steps) {
    if (!s.ok) return false;
  }
  return !steps.empty();
}

Report reproduce(bool tamper) {
  Report rep;
  auto step = [&](std::string name, bool ok, std::string detail) {
    rep.steps.push_back({std::move(name), ok, std::move(detail)});
  };
  const Endomorphism l = lambda();
  const Endomorphism r = tamper ? Endomorphism(2, {Word{1}, Word{2, 1, 1}}) : rho();
  const Alphabet st({"s", "t"});

  try {
    const std::vector<Automorphism> acts{Automorphism::certify(l), Automorphism::certify(r)};
    const SubgroupGraph h = SubgroupGraph::fold_with_basis(h_basis(), 2);

    const OrbitData od = orbit_stabilizer(acts, h);
    step("orbit", od.orbit.size() == kOrbitSize,
         "size " + std::to_string(od.orbit.size()) + ", expected " + std::to_string(kOrbitSize));

    const std::vector<Word> words = stabilizer_words();
    for (const Word& w : words) {
      Automorphism phi = Automorphism::identity(2);
      for (Letter x : w) {
        const Automorphism& g = acts[static_cast<std::size_t>(x.index() - 1)];
        phi = compose(phi, x.sign() > 0 ? g : g.inverted());
      }
      const bool fixed = image_graph(phi.forward().images(), h).same_subgroup(h);
      step("fixes H: " + st.format(w), fixed, fixed ? "preserved" : "moved");
    }

    const SubgroupGraph emitted = SubgroupGraph::fold(od.stabilizer_words, 2);
    const SubgroupGraph printed = SubgroupGraph::fold(words, 2);
    const auto idx = emitted.index();
    step("stabilizer", emitted.same_subgroup(printed) && idx == kStabilizerIndex,
         "Schreier generators " + [&] {
           std::string s;
           for (const Word& w : od.stabilizer_words) s += (s.empty() ? "" : ", ") + st.format(w);
           return s;
         }() + "; index " + (idx ? std::to_string(*idx) : std::string("infinite")) +
             (emitted.same_subgroup(printed) ? "; same subgroup as the four words" : "; differs from the four words"));

    const GroupFile g1 = make_sub_extension(l, r);
    const std::vector<IntMatrix> want = matrices();
    const std::vector<IntVector> want_span = spans();
    const std::size_t n = 3;
    std::vector<IntMatrix> blocks;
    for (std::size_t i = 0; i < 4; ++i) {
      const IntMatrix& got = g1.spec.action_matrix(static_cast<int>(i + 1));
      step("matrix " + st.format(words[i]), got == want[i], show(got));
      const IntMatrix diff = got - IntMatrix::identity(n);
      blocks.push_back(diff);
      std::vector<IntVector> cols;
      for (std::size_t j = 0; j < n; ++j) cols.push_back(diff.column(j));
      const std::vector<IntVector> lattice = row_hermite(cols);
      const bool span_ok = rank_q(diff) == 1 && lattice.size() == 1 && lattice.front() == want_span[i];
      step("span " + st.format(words[i]), span_ok,
           lattice.size() == 1 ? to_string(lattice.front()) : "rank " + std::to_string(rank_q(diff)));
    }

    const IntMatrix stacked = IntMatrix::hstack(blocks);
    const AbelianGroupShape q = cokernel(stacked);
    const auto ann = left_annihilator(stacked);
    const bool x_free = ann.size() == 1 && ann.front()[0] != 0;
    step("cokernel", q.to_string() == kCokernel && x_free,
         q.to_string() + (x_free ? ", x has infinite order" : ", x has finite order"));

    const AbelianGroupShape h1 = extension_h1(g1.spec);
    step("h1", h1.to_string() == kH1, h1.to_string());

    const Certificate cert = incoherence_certificate(g1, Bounds{});
    bool incoherent = false, fibers = false;
    for (Verdict v : cert.verdicts) {
      incoherent = incoherent || v == Verdict::incoherent;
      fibers = fibers || v == Verdict::algebraically_fibers;
    }
    std::string verdicts;
    for (Verdict v : cert.verdicts) verdicts += (verdicts.empty() ? "" : " ") + std::string(to_string(v));
    step("verdict", incoherent && fibers && cert.route == "R1", verdicts + " (route " + cert.route + ")");
    rep.certificate = serialize(cert);
    const ReplayReport rr = replay(rep.certificate);
    step("replay", rr.ok(), rr.ok() ? "identical" : "differs");
  } catch (const Error& e) {
    step("computation", false, e.what());
  }
  return rep;
}

}  // namespace exhom::golden
