#include "exhom/fpgroups.hpp"

#include <algorithm>

#include "exhom/error.hpp"

namespace exhom {

namespace {

// Least rotation of u or of u^-1, used to detect repeated relators.
Word cyclic_key(const Word& u) {
  Word best = u;
  for (const Word& w : {u, invert(u)}) {
    std::vector<Letter> ls(w.begin(), w.end());
    for (std::size_t r = 0; r < ls.size(); ++r) {
      std::rotate(ls.begin(), ls.begin() + 1, ls.end());
      Word cand = Word::reduce(ls);
      if (cand.size() == best.size() && shortlex_less(cand, best)) best = cand;
    }
  }
  return best;
}

}  // namespace

Presentation::Presentation(int n_generators, std::vector<Word> relators)
    : n_generators_(n_generators) {
  std::vector<Word> keys;
  for (const Word& r : relators) {
    if (r.max_index() > n_generators) {
      throw Error(ErrorKind::index_overflow, "relator uses an undeclared generator");
    }
    Word core = cyclic_reduce(r).core;
    if (core.empty()) continue;
    Word key = cyclic_key(core);
    if (std::find(keys.begin(), keys.end(), key) != keys.end()) continue;
    keys.push_back(key);
    relators_.push_back(core);
  }
}

IntMatrix relator_matrix(const Presentation& p) {
  std::vector<std::vector<std::int64_t>> cols;
  for (const Word& r : p.relators()) cols.push_back(exponent_vector(r, p.n_generators()));
  return IntMatrix::from_columns(static_cast<std::size_t>(p.n_generators()), cols);
}

AbelianGroupShape abelianization(const Presentation& p) { return cokernel(relator_matrix(p)); }

}  // namespace exhom
