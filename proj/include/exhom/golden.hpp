#pragma once

// The worked index-two example for F_2 x| F_n: the subgroup
// H = <a, b^2, b a b^-1> of F_2 = <a, b>, the automorphisms
//   lambda: a -> a b, b -> b        rho: a -> a, b -> b a
// and the index-3 stabilizer of H in Out(F_2) they generate.

#include <string>
#include <vector>

#include "exhom/endos.hpp"
#include "exhom/groupfile.hpp"
#include "exhom/zmat.hpp"

namespace exhom::golden {

Endomorphism lambda();
Endomorphism rho();
// x = a, y = b^2, z = b a b^-1 in this order.
std::vector<Word> h_basis();
// Words in s = lambda, t = rho: s s, t, s t t s^-1, s t s t^-1 s^-1.
std::vector<Word> stabilizer_words();
// Printed action matrices on (x, y, z), in the order of stabilizer_words().
std::vector<IntMatrix> matrices();
// Generators of the column spans of Phi - I, same order.
std::vector<IntVector> spans();

// G_1 = H x| F_4 with the stabilizer words as base generators p, q, r, u.
GroupFile sub_extension_file();
// F_2 x| F_2 with actions lambda and rho.
GroupFile full_action_file();

struct Step {
  std::string name;
  bool ok = false;
  std::string detail;
};

struct Report {
  std::vector<Step> steps;
  std::string certificate;  // incoherence certificate of G_1
  bool ok() const;
};

// Recomputes every value and diffs it against the embedded goldens. With
// `tamper` the fixture rho is replaced by b -> b a a before computing, as a
// negative control.
Report reproduce(bool tamper = false);

}  // namespace exhom::golden
