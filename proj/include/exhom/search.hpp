#pragma once

// Searches for finite-index subgroups with excessive homology: fiber
// subgroups preserved by a finite-index subgroup of the base (orbit
// strategy), and whole-group low-index enumeration.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "exhom/criterion.hpp"
#include "exhom/extension.hpp"
#include "exhom/fpgroups.hpp"
#include "exhom/stallings.hpp"

namespace exhom {

struct OrbitData {
  std::vector<SubgroupGraph> orbit;     // orbit[0] is the root
  std::vector<Word> transversal;        // phi_{transversal[i]}(root) = orbit[i]
  std::vector<Word> stabilizer_words;   // free basis of the stabilizer
};

// Breadth-first orbit of root under the actions (base-pointed equality) and
// Schreier generators u_m^-1 t_j u_i of its stabilizer. Throws orbit_cap.
OrbitData orbit_stabilizer(std::span<const Automorphism> actions, const SubgroupGraph& root,
                           std::size_t cap = 64);

enum class Strategy { orbit, lowindex, both };
const char* to_string(Strategy s);

struct SearchHit {
  SubExtension sub;
  Character character;              // normalized, on the generators of sub.spec
  std::optional<CosetTable> table;  // whole-group table (low-index strategy)
};

struct SearchOutcome {
  std::optional<SearchHit> hit;
  std::size_t examined = 0;
  std::size_t over_cap = 0;  // roots whose orbit exceeded the cap
  // Excessive subgroups of a presented-fiber group whose fiber action could
  // not be written down (a lift needs an inverse the data does not give).
  std::size_t unbuilt = 0;
};

// Every subgroup of the fiber of index <= max_fiber_index as a root, ordered
// by the index of the resulting subgroup of G; first excessive one wins.
SearchOutcome preserved_subgroup_search(const ExtensionSpec& e, std::size_t max_fiber_index,
                                        std::size_t orbit_cap = 64);

// Conjugacy classes of subgroups of G of index <= max_index, by degree then
// table; first K with rk H_1(K) >= rk pi(K) + 1 wins. H_1(K) is computed from
// the Reidemeister-Schreier presentation and cross-checked against the
// sub-extension formula.
SearchOutcome low_index_search(const ExtensionSpec& e, std::size_t max_index);

}  // namespace exhom
