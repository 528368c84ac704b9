#include "exhom/endos.hpp"

#include "exhom/error.hpp"

namespace exhom {

Endomorphism::Endomorphism(int rank, std::vector<Word> images)
    : rank_(rank), images_(std::move(images)) {
  if (static_cast<int>(images_.size()) != rank_) {
    throw Error(ErrorKind::missing_image, "expected " + std::to_string(rank_) + " images, got " +
                                              std::to_string(images_.size()));
  }
  for (const Word& w : images_) {
    if (w.max_index() > rank_) {
      throw Error(ErrorKind::index_overflow, "image uses a generator beyond rank " +
                                                 std::to_string(rank_));
    }
  }
}

Endomorphism Endomorphism::identity(int rank) {
  std::vector<Word> images;
  for (int i = 1; i <= rank; ++i) images.push_back(Word({i}));
  return Endomorphism(rank, std::move(images));
}

Endomorphism Endomorphism::conjugation(int rank, const Word& g) {
  std::vector<Word> images;
  const Word gi = invert(g);
  for (int i = 1; i <= rank; ++i) images.push_back(g * Word({i}) * gi);
  return Endomorphism(rank, std::move(images));
}

bool Endomorphism::is_identity() const { return *this == identity(rank_); }

Endomorphism compose(const Endomorphism& f, const Endomorphism& g) {
  if (f.rank() != g.rank()) throw Error(ErrorKind::rank_mismatch, "composing different ranks");
  std::vector<Word> images;
  images.reserve(g.images().size());
  for (const Word& w : g.images()) images.push_back(f(w));
  return Endomorphism(f.rank(), std::move(images));
}

Automorphism Automorphism::certify(const Endomorphism& f) {
  const int m = f.rank();
  SubgroupGraph image = [&] {
    try {
      return SubgroupGraph::fold_with_basis(f.images(), m);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::not_free_basis) throw;
      throw Error(ErrorKind::not_surjective, "images do not generate freely");
    }
  }();
  if (!image.same_subgroup(SubgroupGraph::rose(m))) {
    throw Error(ErrorKind::not_surjective, "images generate a proper subgroup");
  }
  std::vector<Word> back;
  for (int i = 1; i <= m; ++i) back.push_back(image.rewrite(Word({i})));
  return Automorphism(f, Endomorphism(m, std::move(back)));
}

Automorphism Automorphism::identity(int rank) {
  return Automorphism(Endomorphism::identity(rank), Endomorphism::identity(rank));
}

Automorphism compose(const Automorphism& f, const Automorphism& g) {
  return Automorphism(compose(f.forward(), g.forward()), compose(g.inverse(), f.inverse()));
}

IntMatrix abelianized(const Endomorphism& f) {
  std::vector<std::vector<std::int64_t>> cols;
  for (const Word& w : f.images()) cols.push_back(exponent_vector(w, f.rank()));
  return IntMatrix::from_columns(static_cast<std::size_t>(f.rank()), cols);
}

std::optional<Word> is_inner(const Endomorphism& f) {
  const int m = f.rank();
  if (m == 0) return Word{};
  if (m == 1) {
    // Z is abelian: inner means identity.
    if (f.is_identity()) return Word{};
    return std::nullopt;
  }
  const Word a = Word({1});
  auto [core, c0] = cyclic_reduce(f.image(1));
  if (core != a) return std::nullopt;
  // g = c0 * a^n; read n off c0^-1 f(b) c0 = a^n b a^-n.
  const Word v = invert(c0) * f.image(2) * c0;
  int n = 0;
  if (!v.empty() && v[0].index() == 1) {
    int s = v[0].sign();
    std::size_t i = 0;
    while (i < v.size() && v[i] == Letter(1, s)) ++i;
    n = s * static_cast<int>(i);
  }
  const Word g = c0 * power(a, n);
  if (Endomorphism::conjugation(m, g) == f) return g;
  return std::nullopt;
}

Endomorphism restrict(const Endomorphism& f, const SubgroupGraph& g) {
  if (f.rank() != g.ambient_rank()) throw Error(ErrorKind::rank_mismatch, "restrict ranks differ");
  std::vector<Word> images;
  for (const Word& b : g.basis()) {
    Word img = f(b);
    if (!g.contains(img)) throw Error(ErrorKind::not_preserved, "image of a basis word leaves the subgroup");
    images.push_back(g.rewrite(img));
  }
  if (!image_graph(f.images(), g).same_subgroup(g)) {
    throw Error(ErrorKind::not_preserved, "image is a proper subgroup");
  }
  return Endomorphism(static_cast<int>(g.rank()), std::move(images));
}

}  // namespace exhom
