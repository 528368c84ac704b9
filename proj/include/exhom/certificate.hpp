#pragma once

// Verdicts with the data that justifies them, as replayable text.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "exhom/criterion.hpp"
#include "exhom/groupfile.hpp"
#include "exhom/search.hpp"

namespace exhom {

enum class Verdict { excessive_homology, incoherent, algebraically_fibers, virtually_excessive, inconclusive };
const char* to_string(Verdict v);

struct Bounds {
  std::size_t probe_length = 4;
  std::size_t max_fiber_index = 4;
  std::size_t max_index = 6;
  std::size_t orbit_cap = 64;
  Strategy strategy = Strategy::both;
  bool operator==(const Bounds&) const = default;
};

// check: routes R1 and R2. full: R1, R2 and the subgroup search R3.
// virtual: the virtual verdict.
enum class Mode { check, full, virtual_search };

struct Certificate {
  Mode mode = Mode::check;
  std::vector<Verdict> verdicts;
  std::string scope;  // "group" or "finite-index-subgroup"
  std::string route;  // R1, R2, R3, rank-one or none
  std::vector<std::string> theorems;
  std::string h1;
  std::string subgroup_h1;
  std::vector<Character> characters;  // on G, or on the subgroup's generators
  std::vector<std::string> witness;
  std::vector<std::string> assumptions;
  Bounds bounds;
  std::optional<SubExtension> subgroup;
  GroupFile group;

  bool definite() const;
};

// Routes in order: excessive homology of G with a non-fibering fiber (R1),
// a base word acting by an inner automorphism (R2), and with Mode::full a
// finite-index subgroup with excessive homology (R3). Throws precondition
// when the base has rank < 2.
Certificate incoherence_certificate(const GroupFile& g, const Bounds& b, Mode mode = Mode::check);

// Excessive homology of G or of a finite-index subgroup: index 1, the
// rank-one descent, then the orbit and low-index strategies.
Certificate virtual_verdict(const GroupFile& g, const Bounds& b);

std::string serialize(const Certificate& c);
// Throws Error(certificate) on malformed text.
Certificate parse_certificate(std::string_view text);

struct ReplayReport {
  bool identical = false;
  std::vector<std::string> problems;  // independent data checks that failed
  std::string recomputed;
  bool ok() const { return identical && problems.empty(); }
};

// Recomputes the certificate from its embedded group and bounds, compares
// the text byte for byte, and re-checks characters and subgroup data.
ReplayReport replay(std::string_view text);

}  // namespace exhom
