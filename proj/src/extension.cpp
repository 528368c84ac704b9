#include "exhom/extension.hpp"

#include <deque>

#include "exhom/error.hpp"

namespace exhom {

const char* to_string(FiberKind kind) {
  switch (kind) {
    case FiberKind::free: return "free";
    case FiberKind::presented: return "presented";
    case FiberKind::abelian: return "abelian";
  }
  return "?";
}

const char* to_string(Nonfibering n) {
  switch (n) {
    case Nonfibering::free_rank: return "free-rank";
    case Nonfibering::surface_genus: return "surface-genus";
    case Nonfibering::user_asserted: return "user-asserted";
    case Nonfibering::unknown: return "unknown";
  }
  return "?";
}

ExtensionSpec ExtensionSpec::free_by_free(int fiber_rank, const std::vector<Endomorphism>& actions) {
  std::vector<Automorphism> autos;
  for (const Endomorphism& f : actions) {
    if (f.rank() != fiber_rank) throw Error(ErrorKind::rank_mismatch, "action rank differs from fiber rank");
    autos.push_back(Automorphism::certify(f));
  }
  return free_by_free(fiber_rank, std::move(autos));
}

ExtensionSpec ExtensionSpec::free_by_free(int fiber_rank, std::vector<Automorphism> actions) {
  ExtensionSpec e;
  e.kind_ = FiberKind::free;
  e.fiber_ = Presentation(fiber_rank, {});
  e.base_rank_ = static_cast<int>(actions.size());
  for (const Automorphism& a : actions) {
    if (a.rank() != fiber_rank) throw Error(ErrorKind::rank_mismatch, "action rank differs from fiber rank");
    e.actions_.push_back(a.forward());
    e.inverses_.push_back(a.inverse());
    e.matrices_.push_back(abelianized(a.forward()));
  }
  e.automorphisms_ = std::move(actions);
  if (fiber_rank >= 2) e.nonfibering_ = Nonfibering::free_rank;
  return e;
}

ExtensionSpec ExtensionSpec::presented(Presentation fiber, std::vector<Endomorphism> actions) {
  ExtensionSpec e;
  e.kind_ = FiberKind::presented;
  e.base_rank_ = static_cast<int>(actions.size());
  for (const Endomorphism& f : actions) {
    if (f.rank() != fiber.n_generators()) {
      throw Error(ErrorKind::rank_mismatch, "action rank differs from fiber generator count");
    }
    e.matrices_.push_back(abelianized(f));
    try {
      e.inverses_.push_back(Automorphism::certify(f).inverse());
    } catch (const Error&) {
      e.inverses_.emplace_back();
    }
  }
  e.actions_ = std::move(actions);
  e.fiber_ = std::move(fiber);
  return e;
}

ExtensionSpec ExtensionSpec::abelian(int rank, std::vector<IntMatrix> matrices) {
  ExtensionSpec e;
  e.kind_ = FiberKind::abelian;
  e.fiber_ = Presentation(rank, {});
  e.base_rank_ = static_cast<int>(matrices.size());
  for (const IntMatrix& m : matrices) {
    if (m.rows() != static_cast<std::size_t>(rank) || m.cols() != static_cast<std::size_t>(rank)) {
      throw Error(ErrorKind::rank_mismatch, "action matrix size differs from fiber rank");
    }
    if (!is_unimodular(m)) throw Error(ErrorKind::not_surjective, "action matrix is not invertible over Z");
  }
  e.matrices_ = std::move(matrices);
  e.inverses_.resize(e.matrices_.size());
  return e;
}

const std::vector<Automorphism>& ExtensionSpec::automorphisms() const {
  if (kind_ != FiberKind::free) throw Error(ErrorKind::unsupported_fiber, "automorphisms need a free fiber");
  return automorphisms_;
}

void ExtensionSpec::assert_surface_fiber(int genus) {
  if (genus < 2) throw Error(ErrorKind::precondition, "surface fibers need genus at least 2");
  nonfibering_ = Nonfibering::surface_genus;
  surface_genus_ = genus;
}

void ExtensionSpec::assert_nonfibering() {
  if (nonfibering_ == Nonfibering::unknown) nonfibering_ = Nonfibering::user_asserted;
}

bool ExtensionSpec::operator==(const ExtensionSpec& o) const {
  return kind_ == o.kind_ && fiber_ == o.fiber_ && base_rank_ == o.base_rank_ &&
         actions_ == o.actions_ && matrices_ == o.matrices_;
}

Presentation semidirect_presentation(const ExtensionSpec& e) {
  if (e.kind() == FiberKind::abelian) {
    throw Error(ErrorKind::unsupported_fiber, "no presentation for an abelianized-only fiber");
  }
  const int n = e.fiber_generators();
  std::vector<Word> rels = e.fiber_presentation().relators();
  for (int i = 1; i <= e.base_rank(); ++i) {
    const Word t({n + i});
    const Endomorphism& phi = e.actions()[static_cast<std::size_t>(i - 1)];
    for (int j = 1; j <= n; ++j) {
      rels.push_back(t * Word({j}) * invert(t) * invert(phi.image(j)));
    }
  }
  return Presentation(n + e.base_rank(), std::move(rels));
}

IntMatrix stacked_matrix(const ExtensionSpec& e) {
  const auto n = static_cast<std::size_t>(e.fiber_generators());
  std::vector<IntMatrix> blocks;
  blocks.push_back(relator_matrix(e.fiber_presentation()));
  const IntMatrix id = IntMatrix::identity(n);
  for (int i = 1; i <= e.base_rank(); ++i) blocks.push_back(e.action_matrix(i) - id);
  return IntMatrix::hstack(blocks);
}

AbelianGroupShape extension_h1(const ExtensionSpec& e) {
  AbelianGroupShape s = cokernel(stacked_matrix(e));
  s.free_rank += static_cast<std::size_t>(e.base_rank());
  return s;
}

Automorphism base_action(const ExtensionSpec& e, const Word& base_word) {
  const auto& autos = e.automorphisms();
  Automorphism cur = Automorphism::identity(e.fiber_generators());
  for (Letter l : base_word) {
    if (l.index() > e.base_rank()) throw Error(ErrorKind::index_overflow, "base letter beyond base rank");
    const Automorphism& a = autos[static_cast<std::size_t>(l.index() - 1)];
    cur = compose(cur, l.sign() > 0 ? a : a.inverted());
  }
  return cur;
}

IntMatrix base_matrix(const ExtensionSpec& e, const Word& base_word) {
  IntMatrix cur = IntMatrix::identity(static_cast<std::size_t>(e.fiber_generators()));
  for (Letter l : base_word) {
    if (l.index() > e.base_rank()) throw Error(ErrorKind::index_overflow, "base letter beyond base rank");
    const IntMatrix& m = e.action_matrix(l.index());
    cur = cur * (l.sign() > 0 ? m : unimodular_inverse(m));
  }
  return cur;
}

GroupElement multiply(const ExtensionSpec& e, const GroupElement& x, const GroupElement& y) {
  const Automorphism phi = base_action(e, x.base);
  return {x.fiber * phi.forward()(y.fiber), x.base * y.base};
}

GroupElement inverse(const ExtensionSpec& e, const GroupElement& x) {
  // (h w)^-1 = w^-1 h^-1 = phi_{w^-1}(h^-1) w^-1
  const Word wi = invert(x.base);
  return {base_action(e, wi).forward()(invert(x.fiber)), wi};
}

GroupElement normal_form(const ExtensionSpec& e, const Word& g) {
  const int n = e.fiber_generators();
  Automorphism phi = Automorphism::identity(n);
  GroupElement out;
  for (Letter l : g) {
    if (l.index() <= n) {
      out.fiber = out.fiber * phi.forward()(Word({l.value()}));
    } else {
      Letter t(l.index() - n, l.sign());
      if (t.index() > e.base_rank()) throw Error(ErrorKind::index_overflow, "letter beyond G's generators");
      out.base = out.base * Word({t.value()});
      const Automorphism& a = e.automorphisms()[static_cast<std::size_t>(t.index() - 1)];
      phi = compose(phi, t.sign() > 0 ? a : a.inverted());
    }
  }
  return out;
}

Word to_word(const ExtensionSpec& e, const GroupElement& x) {
  return x.fiber * shift(x.base, e.fiber_generators());
}

Endomorphism conjugation_action(const ExtensionSpec& e, const Word& g) {
  if (e.kind() == FiberKind::abelian) {
    throw Error(ErrorKind::unsupported_fiber, "conjugation action needs fiber words");
  }
  const int n = e.fiber_generators();
  Endomorphism cur = Endomorphism::identity(n);
  for (Letter l : g) {
    if (l.index() <= n) {
      cur = compose(cur, Endomorphism::conjugation(n, Word({l.value()})));
      continue;
    }
    Letter t(l.index() - n, l.sign());
    if (t.index() > e.base_rank()) throw Error(ErrorKind::index_overflow, "letter beyond G's generators");
    if (t.sign() > 0) {
      cur = compose(cur, e.actions()[static_cast<std::size_t>(t.index() - 1)]);
    } else if (const auto& inv = e.inverse_action(t.index())) {
      cur = compose(cur, *inv);
    } else {
      throw Error(ErrorKind::unsupported_fiber,
                  "an inverse base letter needs an action invertible on the free group over the fiber generators");
    }
  }
  return cur;
}

namespace {

// Base-letter subsequence of a word over G's generators: its image in F_k.
Word base_part(const ExtensionSpec& e, const Word& g) {
  const int n = e.fiber_generators();
  std::vector<Letter> ls;
  for (Letter l : g) {
    if (l.index() > n) ls.emplace_back(l.index() - n, l.sign());
  }
  return Word::reduce(ls);
}

ExtensionSpec presented_sub_fiber(const ExtensionSpec& e, const CosetTable& table,
                                  const std::vector<Word>& lifts) {
  if (!table.is_valid_for(e.fiber_presentation())) {
    throw Error(ErrorKind::invalid_table, "fiber table is not a coset table of the fiber");
  }
  const SchreierData sd = schreier_data(table);
  Presentation fiber = reidemeister_schreier(e.fiber_presentation(), table);
  const int rank = fiber.n_generators();
  std::vector<Endomorphism> acts;
  for (const Word& g : lifts) {
    const Endomorphism theta = conjugation_action(e, g);
    std::vector<Word> images;
    for (const Word& s : sd.generators) {
      try {
        images.push_back(schreier_rewrite(table, sd, 0, theta(s)));
      } catch (const Error&) {
        throw Error(ErrorKind::not_preserved, "lift does not normalize the fiber subgroup");
      }
    }
    acts.emplace_back(rank, std::move(images));
  }
  return ExtensionSpec::presented(std::move(fiber), std::move(acts));
}

// Breadth-first orbit of coset 0 under the fiber generators, with the fiber
// word reaching each orbit point.
struct FiberOrbit {
  std::vector<int> local;  // coset -> orbit position, or -1
  std::vector<std::size_t> cosets;
  std::vector<Word> paths;
};

FiberOrbit fiber_orbit(const CosetTable& t, int n) {
  FiberOrbit o;
  o.local.assign(t.degree(), -1);
  o.cosets.push_back(0);
  o.paths.emplace_back();
  o.local[0] = 0;
  for (std::size_t head = 0; head < o.cosets.size(); ++head) {
    for (std::size_t dir = 0; dir < 2 * static_cast<std::size_t>(n); ++dir) {
      Letter l = Letter::from_direction(dir);
      auto y = static_cast<std::size_t>(t.next(o.cosets[head], l));
      if (o.local[y] >= 0) continue;
      o.local[y] = static_cast<int>(o.cosets.size());
      o.cosets.push_back(y);
      o.paths.push_back(o.paths[head] * Word({l.value()}));
    }
  }
  return o;
}

}  // namespace

SubExtension build_sub_extension(const ExtensionSpec& e, const SubgroupDescriptor& d) {
  const int n = e.fiber_generators();
  const int k = e.base_rank();
  SubExtension out;
  out.descriptor = d;

  std::vector<Word> projections;
  for (const Word& g : d.base_elements) {
    if (g.max_index() > n + k) throw Error(ErrorKind::index_overflow, "lift uses unknown generators");
    projections.push_back(base_part(e, g));
  }
  const SubgroupGraph image = SubgroupGraph::fold_with_basis(projections, k);
  if (!image.index()) throw Error(ErrorKind::precondition, "image in the base has infinite index");
  out.base_index = *image.index();

  if (e.kind() == FiberKind::abelian) {
    if (d.fiber_basis || d.fiber_table) throw Error(ErrorKind::unsupported_fiber, "abelian fibers admit no fiber subgroup");
    std::vector<IntMatrix> mats;
    for (const Word& w : projections) mats.push_back(base_matrix(e, w));
    out.spec = ExtensionSpec::abelian(n, std::move(mats));
    out.fiber_index = 1;
  } else if (e.kind() == FiberKind::presented) {
    if (d.fiber_basis) throw Error(ErrorKind::unsupported_fiber, "presented fibers take a coset table");
    if (d.fiber_table) {
      out.spec = presented_sub_fiber(e, *d.fiber_table, d.base_elements);
      out.fiber_index = d.fiber_table->degree();
    } else {
      std::vector<Endomorphism> acts;
      for (const Word& g : d.base_elements) acts.push_back(conjugation_action(e, g));
      out.spec = ExtensionSpec::presented(e.fiber_presentation(), std::move(acts));
      out.fiber_index = 1;
    }
  } else {
    if (d.fiber_table) throw Error(ErrorKind::unsupported_fiber, "free fibers take a basis");
    std::vector<Word> basis;
    if (d.fiber_basis) {
      basis = *d.fiber_basis;
    } else {
      for (int i = 1; i <= n; ++i) basis.push_back(Word({i}));
    }
    const SubgroupGraph fiber = SubgroupGraph::fold_with_basis(basis, n);
    if (!fiber.index()) throw Error(ErrorKind::precondition, "fiber subgroup has infinite index");
    out.fiber_index = *fiber.index();
    std::vector<Endomorphism> acts;
    for (const Word& g : d.base_elements) acts.push_back(restrict(conjugation_action(e, g), fiber));
    out.spec = ExtensionSpec::free_by_free(static_cast<int>(fiber.rank()), acts);
  }

  // Surface subgroups of index d have genus 1 + d(g - 1); an asserted
  // non-fibering fiber says nothing about its proper subgroups.
  if (e.nonfibering() == Nonfibering::surface_genus) {
    out.spec.assert_surface_fiber(1 + static_cast<int>(out.fiber_index) * (e.surface_genus() - 1));
  } else if (e.nonfibering() == Nonfibering::user_asserted && out.fiber_index == 1) {
    out.spec.assert_nonfibering();
  }
  return out;
}

SubgroupGraph base_image(const ExtensionSpec& e, const CosetTable& t) {
  const int n = e.fiber_generators();
  const int k = e.base_rank();
  const std::size_t deg = t.degree();
  // The fiber orbits are blocks for the base action.
  std::vector<int> block(deg, -1);
  int blocks = 0;
  for (std::size_t c = 0; c < deg; ++c) {
    if (block[c] >= 0) continue;
    std::deque<std::size_t> q{c};
    block[c] = blocks;
    while (!q.empty()) {
      std::size_t x = q.front();
      q.pop_front();
      for (std::size_t dir = 0; dir < 2 * static_cast<std::size_t>(n); ++dir) {
        auto y = static_cast<std::size_t>(t.next(x, Letter::from_direction(dir)));
        if (block[y] < 0) {
          block[y] = blocks;
          q.push_back(y);
        }
      }
    }
    ++blocks;
  }
  std::vector<std::vector<int>> action(static_cast<std::size_t>(blocks),
                                       std::vector<int>(static_cast<std::size_t>(k), -1));
  for (std::size_t c = 0; c < deg; ++c) {
    for (int i = 1; i <= k; ++i) {
      action[static_cast<std::size_t>(block[c])][static_cast<std::size_t>(i - 1)] =
          block[static_cast<std::size_t>(t.next(c, Letter(n + i, 1)))];
    }
  }
  return SubgroupGraph::from_action(action, block[0], k);
}

SubExtension sub_extension(const ExtensionSpec& e, const CosetTable& t) {
  if (e.kind() == FiberKind::abelian) {
    throw Error(ErrorKind::unsupported_fiber, "coset tables need fiber words");
  }
  const int n = e.fiber_generators();
  if (!t.is_valid_for(semidirect_presentation(e))) {
    throw Error(ErrorKind::invalid_table, "table is not a coset table of this extension");
  }
  const FiberOrbit orbit = fiber_orbit(t, n);
  std::vector<std::vector<int>> fiber_action;
  for (std::size_t c : orbit.cosets) {
    std::vector<int> row;
    for (std::size_t dir = 0; dir < 2 * static_cast<std::size_t>(n); ++dir) {
      row.push_back(orbit.local[static_cast<std::size_t>(t.next(c, Letter::from_direction(dir)))]);
    }
    fiber_action.push_back(std::move(row));
  }

  SubgroupDescriptor d;
  if (e.kind() == FiberKind::free) {
    std::vector<std::vector<int>> positive;
    for (const auto& row : fiber_action) {
      std::vector<int> p;
      for (std::size_t i = 0; i < row.size(); i += 2) p.push_back(row[i]);
      positive.push_back(std::move(p));
    }
    d.fiber_basis = SubgroupGraph::from_action(positive, 0, n).basis();
  } else {
    d.fiber_table = CosetTable(n, std::move(fiber_action));
  }
  const SubgroupGraph image = base_image(e, t);
  for (const Word& w : image.basis()) {
    const Word lifted = shift(w, n);
    const int target = orbit.local[t.trace(0, invert(lifted))];
    if (target < 0) throw Error(ErrorKind::invalid_table, "base image outside the fiber orbit");
    d.base_elements.push_back(orbit.paths[static_cast<std::size_t>(target)] * lifted);
  }
  return build_sub_extension(e, d);
}

}  // namespace exhom
