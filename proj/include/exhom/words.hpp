#pragma once

// Reduced words in finitely generated free groups.
//
// Generators are numbered from 1. A letter is a generator together with a
// sign; a Word is a freely reduced sequence of letters. Every Word in the
// library is reduced, so equality of group elements is equality of
// sequences.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace exhom {

class Letter {
 public:
  constexpr Letter() = default;
  constexpr Letter(int index, int sign) : value_(sign < 0 ? -index : index) {}

  static constexpr Letter from_signed(int value) {
    Letter l;
    l.value_ = value;
    return l;
  }
  // Directions enumerate letters as 1, 1^-1, 2, 2^-1, ...
  static constexpr Letter from_direction(std::size_t d) {
    int i = static_cast<int>(d / 2) + 1;
    return Letter(i, (d % 2 == 0) ? 1 : -1);
  }

  constexpr int index() const { return value_ < 0 ? -value_ : value_; }
  constexpr int sign() const { return value_ < 0 ? -1 : 1; }
  constexpr int value() const { return value_; }
  constexpr Letter inverse() const { return from_signed(-value_); }
  constexpr std::size_t direction() const {
    return 2 * static_cast<std::size_t>(index() - 1) + (value_ < 0 ? 1 : 0);
  }

  constexpr bool operator==(const Letter&) const = default;
  // Letter order follows direction order.
  constexpr std::strong_ordering operator<=>(const Letter& o) const {
    return direction() <=> o.direction();
  }

 private:
  int value_ = 0;
};

class Word {
 public:
  Word() = default;
  // Signed generator indices, e.g. {2, 1, -2} for b a b^-1. Reduced on entry.
  Word(std::initializer_list<int> signed_letters);

  static Word reduce(std::span<const Letter> letters);
  static Word generator(int index) { return Word({index}); }

  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  const Letter& operator[](std::size_t i) const { return letters_[i]; }
  auto begin() const { return letters_.begin(); }
  auto end() const { return letters_.end(); }
  std::span<const Letter> letters() const { return letters_; }

  // Largest generator index occurring; 0 for the identity.
  int max_index() const;

  bool operator==(const Word&) const = default;

 private:
  std::vector<Letter> letters_;
};

// Shortlex: shorter first, then letterwise in direction order.
bool shortlex_less(const Word& u, const Word& v);

Word concat(const Word& u, const Word& v);
inline Word operator*(const Word& u, const Word& v) { return concat(u, v); }
Word invert(const Word& u);
Word power(const Word& u, int n);

struct CyclicReduction {
  Word core;
  Word conjugator;
};

// u = conjugator * core * conjugator^-1 with core cyclically reduced.
CyclicReduction cyclic_reduce(const Word& u);

// Homomorphic image of u where generator i maps to images[i-1].
// Throws missing_image when u uses a generator beyond images.size().
Word apply_endo(std::span<const Word> images, const Word& u);

// Signed exponent sums of generators 1..rank. Throws index_overflow.
std::vector<std::int64_t> exponent_vector(const Word& u, int rank);

// Renumbers generator i to i + offset.
Word shift(const Word& u, int offset);

// All reduced words of the given length over generators 1..rank, shortlex.
std::vector<Word> words_of_length(int rank, std::size_t length);

// Name table for the literal syntax: whitespace separated generator names,
// a trailing '-' marks an inverse, the token "1" is the identity.
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> names);

  // Default names: a, b, c, ... (or x1, x2, ... past the letter supply).
  static Alphabet standard(int rank, std::string_view letters = "abcdefghijklmnopqr",
                           std::string_view fallback = "x");

  int rank() const { return static_cast<int>(names_.size()); }
  const std::vector<std::string>& names() const { return names_; }
  // 1-based index, 0 when unknown.
  int index_of(std::string_view name) const;

  Word parse(std::string_view text) const;
  std::string format(const Word& u) const;

  // Concatenation; the second alphabet's generators are renumbered after the
  // first's.
  Alphabet joined(const Alphabet& other) const;

 private:
  std::vector<std::string> names_;
};

bool is_valid_generator_name(std::string_view name);

}  // namespace exhom
