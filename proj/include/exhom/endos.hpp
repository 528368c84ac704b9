#pragma once

// Endomorphisms and certified automorphisms of free groups.
//
// Composition is function composition: compose(f, g)(x) = f(g(x)).

#include <optional>
#include <vector>

#include "exhom/stallings.hpp"
#include "exhom/words.hpp"
#include "exhom/zmat.hpp"

namespace exhom {

class Endomorphism {
 public:
  Endomorphism() = default;
  // images[i-1] is the image of generator i. Throws index_overflow when an
  // image leaves the ambient rank.
  Endomorphism(int rank, std::vector<Word> images);

  static Endomorphism identity(int rank);
  // x -> g x g^-1
  static Endomorphism conjugation(int rank, const Word& g);

  int rank() const { return rank_; }
  const std::vector<Word>& images() const { return images_; }
  const Word& image(int generator) const { return images_[static_cast<std::size_t>(generator - 1)]; }

  Word operator()(const Word& u) const { return apply_endo(images_, u); }

  bool is_identity() const;
  bool operator==(const Endomorphism&) const = default;

 private:
  int rank_ = 0;
  std::vector<Word> images_;
};

// f o g. Throws rank_mismatch.
Endomorphism compose(const Endomorphism& f, const Endomorphism& g);

class Automorphism {
 public:
  // Throws not_surjective unless f is onto; the inverse is read off the
  // folded image graph.
  static Automorphism certify(const Endomorphism& f);
  static Automorphism identity(int rank);

  const Endomorphism& forward() const { return forward_; }
  const Endomorphism& inverse() const { return inverse_; }
  int rank() const { return forward_.rank(); }

  Automorphism inverted() const { return Automorphism(inverse_, forward_); }

 private:
  Automorphism(Endomorphism f, Endomorphism g) : forward_(std::move(f)), inverse_(std::move(g)) {}
  friend Automorphism compose(const Automorphism&, const Automorphism&);

  Endomorphism forward_;
  Endomorphism inverse_;
};

inline Automorphism certify_automorphism(const Endomorphism& f) { return Automorphism::certify(f); }
Automorphism compose(const Automorphism& f, const Automorphism& g);

// Column j is the exponent vector of the image of generator j.
IntMatrix abelianized(const Endomorphism& f);

// A word g with f(x) = g x g^-1 for every generator x, when one exists.
// Exact: g is pinned down by the images of the first two generators.
std::optional<Word> is_inner(const Endomorphism& f);
inline std::optional<Word> is_inner(const Automorphism& f) { return is_inner(f.forward()); }

// The endomorphism of the free group on basis(g) induced by f. Throws
// not_preserved unless f maps the subgroup of g onto itself.
Endomorphism restrict(const Endomorphism& f, const SubgroupGraph& g);

}  // namespace exhom
