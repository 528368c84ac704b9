#include "exhom/words.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "exhom/error.hpp"

namespace exhom {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::parse: return "parse error";
    case ErrorKind::missing_image: return "missing generator image";
    case ErrorKind::index_overflow: return "generator index out of range";
    case ErrorKind::rank_mismatch: return "rank mismatch";
    case ErrorKind::not_in_subgroup: return "not in subgroup";
    case ErrorKind::not_surjective: return "not surjective";
    case ErrorKind::not_preserved: return "subgroup not preserved";
    case ErrorKind::not_free_basis: return "not a free basis";
    case ErrorKind::invalid_table: return "invalid coset table";
    case ErrorKind::unsupported_fiber: return "unsupported fiber";
    case ErrorKind::precondition: return "precondition violated";
    case ErrorKind::orbit_cap: return "orbit size cap exceeded";
    case ErrorKind::not_a_character: return "not a character";
    case ErrorKind::certificate: return "certificate error";
  }
  return "error";
}

Word::Word(std::initializer_list<int> signed_letters) {
  std::vector<Letter> tmp;
  tmp.reserve(signed_letters.size());
  for (int v : signed_letters) {
    if (v == 0) throw Error(ErrorKind::index_overflow, "generator index 0");
    tmp.push_back(Letter::from_signed(v));
  }
  *this = reduce(tmp);
}

Word Word::reduce(std::span<const Letter> letters) {
  Word w;
  w.letters_.reserve(letters.size());
  for (Letter l : letters) {
    if (!w.letters_.empty() && w.letters_.back() == l.inverse()) {
      w.letters_.pop_back();
    } else {
      w.letters_.push_back(l);
    }
  }
  return w;
}

int Word::max_index() const {
  int m = 0;
  for (Letter l : letters_) m = std::max(m, l.index());
  return m;
}

bool shortlex_less(const Word& u, const Word& v) {
  if (u.size() != v.size()) return u.size() < v.size();
  return std::lexicographical_compare(u.begin(), u.end(), v.begin(), v.end());
}

Word concat(const Word& u, const Word& v) {
  std::size_t cancel = 0;
  while (cancel < u.size() && cancel < v.size() &&
         u[u.size() - 1 - cancel] == v[cancel].inverse()) {
    ++cancel;
  }
  std::vector<Letter> out;
  out.reserve(u.size() + v.size() - 2 * cancel);
  out.insert(out.end(), u.begin(), u.end() - static_cast<std::ptrdiff_t>(cancel));
  out.insert(out.end(), v.begin() + static_cast<std::ptrdiff_t>(cancel), v.end());
  // Both halves are reduced and the seam no longer cancels.
  return Word::reduce(out);
}

Word invert(const Word& u) {
  std::vector<Letter> out;
  out.reserve(u.size());
  for (auto it = u.letters().rbegin(); it != u.letters().rend(); ++it) {
    out.push_back(it->inverse());
  }
  return Word::reduce(out);
}

Word power(const Word& u, int n) {
  Word base = n < 0 ? invert(u) : u;
  Word out;
  for (int i = 0; i < (n < 0 ? -n : n); ++i) out = concat(out, base);
  return out;
}

CyclicReduction cyclic_reduce(const Word& u) {
  std::size_t i = 0;
  std::size_t n = u.size();
  while (2 * i + 1 < n && u[i] == u[n - 1 - i].inverse()) ++i;
  std::vector<Letter> conj(u.begin(), u.begin() + static_cast<std::ptrdiff_t>(i));
  std::vector<Letter> core(u.begin() + static_cast<std::ptrdiff_t>(i),
                           u.end() - static_cast<std::ptrdiff_t>(i));
  return {Word::reduce(core), Word::reduce(conj)};
}

Word apply_endo(std::span<const Word> images, const Word& u) {
  std::vector<Letter> out;
  for (Letter l : u) {
    auto i = static_cast<std::size_t>(l.index());
    if (i > images.size()) {
      throw Error(ErrorKind::missing_image,
                  "no image for generator " + std::to_string(i));
    }
    const Word& img = images[i - 1];
    if (l.sign() > 0) {
      out.insert(out.end(), img.begin(), img.end());
    } else {
      for (auto it = img.letters().rbegin(); it != img.letters().rend(); ++it) {
        out.push_back(it->inverse());
      }
    }
  }
  return Word::reduce(out);
}

std::vector<std::int64_t> exponent_vector(const Word& u, int rank) {
  std::vector<std::int64_t> v(static_cast<std::size_t>(rank), 0);
  for (Letter l : u) {
    if (l.index() > rank) {
      throw Error(ErrorKind::index_overflow,
                  "generator " + std::to_string(l.index()) + " exceeds rank " +
                      std::to_string(rank));
    }
    v[static_cast<std::size_t>(l.index() - 1)] += l.sign();
  }
  return v;
}

Word shift(const Word& u, int offset) {
  std::vector<Letter> out;
  out.reserve(u.size());
  for (Letter l : u) out.emplace_back(l.index() + offset, l.sign());
  return Word::reduce(out);
}

std::vector<Word> words_of_length(int rank, std::size_t length) {
  std::vector<Word> layer{Word{}};
  for (std::size_t step = 0; step < length; ++step) {
    std::vector<Word> next;
    for (const Word& w : layer) {
      for (std::size_t d = 0; d < 2 * static_cast<std::size_t>(rank); ++d) {
        Letter l = Letter::from_direction(d);
        if (!w.empty() && w[w.size() - 1] == l.inverse()) continue;
        std::vector<Letter> ls(w.begin(), w.end());
        ls.push_back(l);
        next.push_back(Word::reduce(ls));
      }
    }
    layer = std::move(next);
  }
  return layer;
}

bool is_valid_generator_name(std::string_view name) {
  if (name.empty() || !std::isalpha(static_cast<unsigned char>(name[0]))) {
    return false;
  }
  return std::all_of(name.begin(), name.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

Alphabet::Alphabet(std::vector<std::string> names) : names_(std::move(names)) {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (!is_valid_generator_name(names_[i])) {
      throw Error(ErrorKind::parse, "invalid generator name '" + names_[i] + "'");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (names_[i] == names_[j]) {
        throw Error(ErrorKind::parse, "duplicate generator name '" + names_[i] + "'");
      }
    }
  }
}

Alphabet Alphabet::standard(int rank, std::string_view letters,
                            std::string_view fallback) {
  std::vector<std::string> names;
  for (int i = 0; i < rank; ++i) {
    if (rank <= static_cast<int>(letters.size())) {
      names.emplace_back(1, letters[static_cast<std::size_t>(i)]);
    } else {
      names.push_back(std::string(fallback) + std::to_string(i + 1));
    }
  }
  return Alphabet(std::move(names));
}

int Alphabet::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return static_cast<int>(i) + 1;
  }
  return 0;
}

Word Alphabet::parse(std::string_view text) const {
  std::istringstream in{std::string(text)};
  std::string token;
  std::vector<Letter> letters;
  while (in >> token) {
    if (token == "1") continue;
    int sign = 1;
    if (token.back() == '-') {
      sign = -1;
      token.pop_back();
    }
    int i = index_of(token);
    if (i == 0) throw Error(ErrorKind::parse, "unknown generator '" + token + "'");
    letters.emplace_back(i, sign);
  }
  return Word::reduce(letters);
}

std::string Alphabet::format(const Word& u) const {
  if (u.empty()) return "1";
  std::string out;
  for (Letter l : u) {
    if (!out.empty()) out += ' ';
    auto i = static_cast<std::size_t>(l.index());
    if (i > names_.size()) throw Error(ErrorKind::index_overflow, "no name for generator");
    out += names_[i - 1];
    if (l.sign() < 0) out += '-';
  }
  return out;
}

Alphabet Alphabet::joined(const Alphabet& other) const {
  std::vector<std::string> names = names_;
  names.insert(names.end(), other.names_.begin(), other.names_.end());
  return Alphabet(std::move(names));
}

}  // namespace exhom
