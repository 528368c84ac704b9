#pragma once

// Line-oriented group description files (see docs/grammar.md).
//
//   name F2 x F2
//   fiber free a b
//   base s t
//   action s
//     a -> a
//     b -> b
//   action t
//     a -> a
//     b -> b
//
// Presented fibers add `rel WORD` lines after the fiber line; abelian fibers
// give each action as `row INT...` lines of the matrix on H_1.

#include <string>
#include <string_view>

#include "exhom/extension.hpp"
#include "exhom/fpgroups.hpp"
#include "exhom/words.hpp"

namespace exhom {

struct GroupFile {
  std::string name;
  Alphabet fiber;
  Alphabet base;
  ExtensionSpec spec;

  // Fiber names followed by base names: the generators of G.
  Alphabet group_alphabet() const { return fiber.joined(base); }
};

// Throws Error(parse) with a line number on malformed input, and the
// library's own errors (e.g. not_surjective) for invalid actions.
GroupFile parse_group_file(std::string_view text);
// Canonical text; parse_group_file(write_group_file(g)) == g.
std::string write_group_file(const GroupFile& g);

struct PresentationFile {
  Alphabet alphabet;
  Presentation presentation;
};

//   gens a b
//   rel a a
PresentationFile parse_presentation_file(std::string_view text);

// Presentation files are recognised by a leading `gens` line.
bool looks_like_presentation_file(std::string_view text);

std::string read_text_file(const std::string& path);

}  // namespace exhom
