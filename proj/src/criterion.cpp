#include "exhom/criterion.hpp"

#include <sstream>

#include "exhom/error.hpp"

namespace exhom {

std::string Character::to_string(std::size_t fiber) const {
  std::ostringstream out;
  out << '(';
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out << (i == fiber ? " | " : ", ");
    out << values[i].get_str();
  }
  if (fiber == values.size()) out << " |";
  out << ')';
  return out.str();
}

bool is_character(const ExtensionSpec& e, const Character& c) {
  const auto n = static_cast<std::size_t>(e.fiber_generators());
  if (c.values.size() != n + static_cast<std::size_t>(e.base_rank())) return false;
  const IntMatrix m = stacked_matrix(e);
  for (std::size_t col = 0; col < m.cols(); ++col) {
    Rational s = 0;
    for (std::size_t i = 0; i < n; ++i) s += c.values[i] * Rational(m(i, col));
    if (s != 0) return false;
  }
  return true;
}

std::vector<Character> excessive_characters(const ExtensionSpec& e) {
  std::vector<Character> out;
  for (const IntVector& v : left_annihilator(stacked_matrix(e))) {
    Character c;
    for (const Integer& x : v) c.values.emplace_back(x);
    c.values.resize(c.values.size() + static_cast<std::size_t>(e.base_rank()), Rational(0));
    out.push_back(std::move(c));
  }
  return out;
}

bool is_excessive(const ExtensionSpec& e) {
  return rank_q(stacked_matrix(e)) < static_cast<std::size_t>(e.fiber_generators());
}

Character normalize(const ExtensionSpec& e, const Character& gamma) {
  if (!is_character(e, gamma)) throw Error(ErrorKind::not_a_character, "values do not kill the relators");
  const auto n = static_cast<std::size_t>(e.fiber_generators());
  Integer den = 1;
  for (std::size_t i = 0; i < n; ++i) den = lcm(den, gamma.values[i].get_den());
  IntVector fiber;
  for (std::size_t i = 0; i < n; ++i) {
    Rational scaled = gamma.values[i] * Rational(den);
    fiber.push_back(scaled.get_num());
  }
  const Integer g = content(fiber);
  if (g == 0) throw Error(ErrorKind::precondition, "character vanishes on the fiber");
  Character out;
  for (const Integer& x : fiber) out.values.emplace_back(Integer(x / g));
  out.values.resize(gamma.values.size(), Rational(0));
  return out;
}

FibrationPlan fibration_plan(const ExtensionSpec& e, const Character& gamma) {
  if (!is_excessive(e)) throw Error(ErrorKind::precondition, "extension is not excessive");
  FibrationPlan plan;
  plan.gamma = normalize(e, gamma);
  const auto n = static_cast<std::size_t>(e.fiber_generators());
  const auto k = static_cast<std::size_t>(e.base_rank());
  for (std::size_t i = 1; i <= k; ++i) {
    Character a;
    a.values.assign(n + k, Rational(0));
    a.values[n + i - 1] = 1;
    plan.alpha.push_back(std::move(a));
    std::vector<Word> words;
    for (std::size_t j = 1; j <= n; ++j) {
      words.push_back(fibration_kernel_word(e, plan, static_cast<int>(i), static_cast<int>(j), 1));
    }
    plan.kernel_words.push_back(std::move(words));
  }
  return plan;
}

Word fibration_kernel_word(const ExtensionSpec& e, const FibrationPlan& plan, int i, int j, int r) {
  if (r < 1) throw Error(ErrorKind::precondition, "r must be a positive integer");
  const int n = e.fiber_generators();
  const Rational& v = plan.gamma.values[static_cast<std::size_t>(j - 1)];
  const long c = v.get_num().get_si();
  return power(Word({j}), r) * power(Word({n + i}), -c);
}

std::optional<OuterKernelWitness> outer_kernel_probe(const ExtensionSpec& e, std::size_t max_length) {
  if (e.kind() != FiberKind::free || e.fiber_generators() < 2) {
    throw Error(ErrorKind::precondition, "the probe needs a free fiber of rank at least 2");
  }
  const int n = e.fiber_generators();
  const int k = e.base_rank();
  for (std::size_t len = 1; len <= max_length; ++len) {
    for (const Word& w : words_of_length(k, len)) {
      const Automorphism phi = base_action(e, w);
      const std::optional<Word> g = is_inner(phi);
      if (!g) continue;
      for (int i = 1; i <= k; ++i) {
        const Word u = Word::generator(i);
        const Word wc = u * w * invert(u);
        if (wc == w) continue;
        OuterKernelWitness out;
        out.w = w;
        out.g = *g;
        out.w_conjugate = wc;
        out.g_conjugate = e.automorphisms()[static_cast<std::size_t>(i - 1)].forward()(*g);
        out.c = invert(out.g) * shift(w, n);
        out.c_conjugate = invert(out.g_conjugate) * shift(wc, n);
        return out;
      }
    }
  }
  return std::nullopt;
}

bool verify_outer_kernel_witness(const ExtensionSpec& e, const OuterKernelWitness& w) {
  const int n = e.fiber_generators();
  const GroupElement one{};
  for (const Word& c : {w.c, w.c_conjugate}) {
    for (int j = 1; j <= n; ++j) {
      const Word a({j});
      if (!(normal_form(e, c * a * invert(c) * invert(a)) == one)) return false;
    }
  }
  // The base images must not commute, so the two centralising elements
  // generate a free group of rank 2.
  return !(w.w * w.w_conjugate == w.w_conjugate * w.w);
}

Character strong_fiber_lift(std::size_t quotient_rank, std::span<const Rational> base_values,
                            std::span<const Rational> fiber_values) {
  if (quotient_rank != base_values.size()) {
    throw Error(ErrorKind::precondition, "rank of H^1(Q) must equal the number of generators y_i");
  }
  Character p;
  p.values.assign(fiber_values.begin(), fiber_values.end());
  p.values.insert(p.values.end(), base_values.begin(), base_values.end());
  return p;
}

namespace {

// Sign of the action of each base generator on the free part of H_1(H).
std::vector<int> free_part_signs(const ExtensionSpec& e) {
  const IntMatrix rels = relator_matrix(e.fiber_presentation());
  const std::vector<IntVector> ann = left_annihilator(rels);
  if (cokernel(rels).free_rank != 1 || ann.size() != 1) {
    throw Error(ErrorKind::precondition, "fiber homology must have free rank 1");
  }
  const IntVector& v = ann.front();
  std::size_t j = 0;
  while (v[j] == 0) ++j;
  std::vector<int> signs;
  for (int i = 1; i <= e.base_rank(); ++i) {
    const IntVector vp = row_times(v, e.action_matrix(i));
    int s = 0;
    if (vp == v) {
      s = 1;
    } else {
      IntVector neg;
      for (const Integer& x : v) neg.push_back(-x);
      if (vp == neg) s = -1;
    }
    if (s == 0) throw Error(ErrorKind::precondition, "action does not preserve the free part of H_1");
    signs.push_back(s);
  }
  return signs;
}

}  // namespace

RankOneDescent rank_one_descent(const ExtensionSpec& e) {
  RankOneDescent out;
  out.signs = free_part_signs(e);
  const int n = e.fiber_generators();
  const int k = e.base_rank();
  int p = 0;
  for (int i = 1; i <= k && !p; ++i) {
    if (out.signs[static_cast<std::size_t>(i - 1)] < 0) p = i;
  }
  SubgroupDescriptor d;
  if (!p) {
    for (int i = 1; i <= k; ++i) d.base_elements.push_back(Word({n + i}));
    out.sub = build_sub_extension(e, d);
    return out;
  }
  // Schreier generators of the sign kernel for the transversal {1, t_p},
  // each ending in t_p^-1 pushed to t_p by a right multiplication with t_p^2.
  const Word tp({p});
  std::vector<Word> gens;
  for (int j = 1; j <= k; ++j) {
    if (j == p) continue;
    const Word tj({j});
    gens.push_back(out.signs[static_cast<std::size_t>(j - 1)] > 0 ? tj : tj * tp);
  }
  for (int j = 1; j <= k; ++j) {
    const Word tj({j});
    gens.push_back(out.signs[static_cast<std::size_t>(j - 1)] > 0 ? tp * tj * tp : tp * tj);
  }
  for (const Word& g : gens) d.base_elements.push_back(shift(g, n));
  out.sub = build_sub_extension(e, d);
  out.descended = true;
  return out;
}

}  // namespace exhom
