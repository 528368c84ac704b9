#include "exhom/search.hpp"

#include <algorithm>
#include <set>

#include "exhom/error.hpp"

namespace exhom {

OrbitData orbit_stabilizer(std::span<const Automorphism> actions, const SubgroupGraph& root,
                           std::size_t cap) {
  OrbitData out;
  out.orbit.push_back(root);
  out.transversal.emplace_back();
  auto find = [&](const SubgroupGraph& g) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < out.orbit.size(); ++i) {
      if (out.orbit[i].same_subgroup(g)) return i;
    }
    return std::nullopt;
  };
  for (std::size_t head = 0; head < out.orbit.size(); ++head) {
    for (std::size_t j = 0; j < actions.size(); ++j) {
      const SubgroupGraph& cur = out.orbit[head];
      SubgroupGraph img = image_graph(actions[j].forward().images(), cur);
      const Word tj = Word::generator(static_cast<int>(j + 1));
      if (auto m = find(img)) {
        Word s = invert(out.transversal[*m]) * tj * out.transversal[head];
        if (!s.empty()) out.stabilizer_words.push_back(std::move(s));
        continue;
      }
      if (out.orbit.size() >= cap) {
        throw Error(ErrorKind::orbit_cap, "orbit exceeds " + std::to_string(cap) + " subgroups");
      }
      out.transversal.push_back(tj * out.transversal[head]);
      out.orbit.push_back(std::move(img));
    }
  }
  return out;
}

const char* to_string(Strategy s) {
  switch (s) {
    case Strategy::orbit: return "orbit";
    case Strategy::lowindex: return "lowindex";
    case Strategy::both: return "both";
  }
  return "?";
}

namespace {

std::vector<std::vector<int>> positive_action(const CosetTable& t) {
  std::vector<std::vector<int>> out;
  for (const auto& row : t.action()) {
    std::vector<int> p;
    for (std::size_t i = 0; i < row.size(); i += 2) p.push_back(row[i]);
    out.push_back(std::move(p));
  }
  return out;
}

SearchHit make_hit(SubExtension sub) {
  SearchHit h;
  h.character = normalize(sub.spec, excessive_characters(sub.spec).front());
  h.sub = std::move(sub);
  return h;
}

}  // namespace

SearchOutcome preserved_subgroup_search(const ExtensionSpec& e, std::size_t max_fiber_index,
                                        std::size_t orbit_cap) {
  if (e.kind() != FiberKind::free) throw Error(ErrorKind::unsupported_fiber, "orbit search needs a free fiber");
  const int n = e.fiber_generators();
  struct Candidate {
    std::size_t total;
    std::size_t fiber_index;
    CosetTable table;
    OrbitData orbit;
  };
  std::vector<Candidate> candidates;
  SearchOutcome out;
  const Presentation free_fiber(n, {});
  for (const CosetTable& cls : low_index(free_fiber, max_fiber_index)) {
    // every subgroup in the class, as a standardized table
    std::set<CosetTable> members;
    for (std::size_t c = 0; c < cls.degree(); ++c) members.insert(cls.rebased(c));
    for (const CosetTable& t : members) {
      const SubgroupGraph root = SubgroupGraph::from_action(positive_action(t), 0, n);
      try {
        OrbitData od = orbit_stabilizer(e.automorphisms(), root, orbit_cap);
        const std::size_t total = t.degree() * od.orbit.size();
        candidates.push_back({total, t.degree(), t, std::move(od)});
      } catch (const Error& err) {
        if (err.kind() != ErrorKind::orbit_cap) throw;
        ++out.over_cap;
      }
    }
  }
  std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
    if (a.total != b.total) return a.total < b.total;
    if (a.fiber_index != b.fiber_index) return a.fiber_index < b.fiber_index;
    return a.table < b.table;
  });
  for (const Candidate& c : candidates) {
    ++out.examined;
    SubgroupDescriptor d;
    d.fiber_basis = c.orbit.orbit.front().basis();
    for (const Word& w : c.orbit.stabilizer_words) d.base_elements.push_back(shift(w, n));
    SubExtension sub = build_sub_extension(e, d);
    if (is_excessive(sub.spec)) {
      out.hit = make_hit(std::move(sub));
      return out;
    }
  }
  return out;
}

SearchOutcome low_index_search(const ExtensionSpec& e, std::size_t max_index) {
  if (e.kind() == FiberKind::abelian) {
    throw Error(ErrorKind::unsupported_fiber, "low-index search needs fiber words");
  }
  const Presentation p = semidirect_presentation(e);
  const int k = e.base_rank();
  SearchOutcome out;
  if (k < 1) return out;
  for (std::size_t d = 1; d <= max_index; ++d) {
    for (const CosetTable& t : low_index(p, d)) {
      if (t.degree() != d) continue;
      ++out.examined;
      const std::size_t h1 = abelianization(reidemeister_schreier(p, t)).free_rank;
      const std::size_t base_rank = 1 + *base_image(e, t).index() * static_cast<std::size_t>(k - 1);
      if (h1 < base_rank + 1) continue;
      std::optional<SubExtension> built;
      try {
        built = sub_extension(e, t);
      } catch (const Error& err) {
        if (err.kind() != ErrorKind::unsupported_fiber) throw;
        ++out.unbuilt;
        continue;
      }
      SubExtension& sub = *built;
      if (extension_h1(sub.spec).free_rank != h1 || sub.spec.base_rank() != static_cast<int>(base_rank)) {
        throw Error(ErrorKind::certificate, "subgroup homology disagrees between the two computations");
      }
      out.hit = make_hit(std::move(sub));
      out.hit->table = t;
      return out;
    }
  }
  return out;
}

}  // namespace exhom
