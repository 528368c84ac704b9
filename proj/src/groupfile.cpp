#include "exhom/groupfile.hpp"

#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "exhom/error.hpp"

namespace exhom {

namespace {

struct Line {
  std::size_t number;
  std::string keyword;
  std::string rest;  // trimmed text after the keyword
};

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<Line> split_lines(std::string_view text) {
  std::vector<Line> out;
  std::size_t number = 0;
  std::istringstream in{std::string(text)};
  std::string raw;
  while (std::getline(in, raw)) {
    ++number;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::string s = trim(raw);
    if (s.empty()) continue;
    const auto sp = s.find_first_of(" \t");
    Line l{number, s.substr(0, sp), sp == std::string::npos ? std::string{} : trim(s.substr(sp))};
    out.push_back(std::move(l));
  }
  return out;
}

[[noreturn]] void fail(std::size_t line, const std::string& msg) {
  throw Error(ErrorKind::parse, "line " + std::to_string(line) + ": " + msg);
}

// Message of a nested error without its kind prefix.
std::string detail(const Error& e) {
  const std::string w = e.what();
  const auto colon = w.find(": ");
  return colon == std::string::npos ? w : w.substr(colon + 2);
}

std::vector<std::string> tokens(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  std::string t;
  while (in >> t) out.push_back(t);
  return out;
}

Alphabet make_alphabet(std::size_t line, const std::vector<std::string>& names) {
  try {
    return Alphabet(names);
  } catch (const Error& e) {
    fail(line, detail(e));
  }
}

Word parse_word(std::size_t line, const Alphabet& a, const std::string& text) {
  if (trim(text).empty()) fail(line, "empty word (write 1 for the identity)");
  try {
    return a.parse(text);
  } catch (const Error& e) {
    fail(line, detail(e));
  }
}

struct ActionBlock {
  std::size_t line = 0;
  std::map<int, Word> images;
  std::vector<std::vector<long>> rows;
};

}  // namespace

GroupFile parse_group_file(std::string_view text) {
  GroupFile g;
  std::optional<FiberKind> kind;
  std::vector<Word> relators;
  bool have_base = false;
  std::map<int, ActionBlock> blocks;
  ActionBlock* current = nullptr;
  std::optional<int> surface_genus;
  bool assert_nonfibering = false;

  for (const Line& l : split_lines(text)) {
    const std::string& kw = l.keyword;
    if (kw == "name") {
      g.name = l.rest;
      current = nullptr;
    } else if (kw == "fiber") {
      if (kind) fail(l.number, "second fiber line");
      auto t = tokens(l.rest);
      if (t.empty()) fail(l.number, "fiber needs a kind: free, presented or abelian");
      if (t[0] == "free") {
        kind = FiberKind::free;
      } else if (t[0] == "presented") {
        kind = FiberKind::presented;
      } else if (t[0] == "abelian") {
        kind = FiberKind::abelian;
      } else {
        fail(l.number, "unknown fiber kind '" + t[0] + "'");
      }
      t.erase(t.begin());
      if (t.empty()) fail(l.number, "fiber needs at least one generator");
      g.fiber = make_alphabet(l.number, t);
      current = nullptr;
    } else if (kw == "rel") {
      if (kind != FiberKind::presented) fail(l.number, "rel lines need a presented fiber");
      relators.push_back(parse_word(l.number, g.fiber, l.rest));
      current = nullptr;
    } else if (kw == "base") {
      if (!kind) fail(l.number, "base must follow the fiber line");
      if (have_base) fail(l.number, "second base line");
      have_base = true;
      g.base = make_alphabet(l.number, tokens(l.rest));
      make_alphabet(l.number, g.group_alphabet().names());
      current = nullptr;
    } else if (kw == "action") {
      if (!have_base) fail(l.number, "action before the base line");
      const int i = g.base.index_of(l.rest);
      if (i == 0) fail(l.number, "unknown base generator '" + l.rest + "'");
      if (blocks.count(i)) fail(l.number, "second action block for '" + l.rest + "'");
      current = &blocks[i];
      current->line = l.number;
    } else if (kw == "row") {
      if (!current) fail(l.number, "row outside an action block");
      if (kind != FiberKind::abelian) fail(l.number, "row lines need an abelian fiber");
      std::vector<long> row;
      for (const std::string& t : tokens(l.rest)) {
        try {
          std::size_t used = 0;
          row.push_back(std::stol(t, &used));
          if (used != t.size()) throw std::invalid_argument(t);
        } catch (const std::exception&) {
          fail(l.number, "bad integer '" + t + "'");
        }
      }
      if (row.size() != static_cast<std::size_t>(g.fiber.rank())) fail(l.number, "row length differs from fiber rank");
      current->rows.push_back(std::move(row));
    } else if (kw == "flag") {
      auto t = tokens(l.rest);
      if (t.size() == 1 && t[0] == "assert-nonfibering") {
        assert_nonfibering = true;
      } else if (t.size() == 2 && t[0] == "surface-fiber") {
        try {
          surface_genus = std::stoi(t[1]);
        } catch (const std::exception&) {
          fail(l.number, "bad genus '" + t[1] + "'");
        }
      } else {
        fail(l.number, "unknown flag '" + l.rest + "'");
      }
      current = nullptr;
    } else {
      // gen -> WORD inside an action block
      const std::string full = kw + (l.rest.empty() ? "" : " " + l.rest);
      const auto arrow = full.find("->");
      if (arrow == std::string::npos) fail(l.number, "unrecognised line '" + full + "'");
      if (!current) fail(l.number, "image line outside an action block");
      if (kind == FiberKind::abelian) fail(l.number, "abelian fibers take row lines");
      const std::string lhs = trim(full.substr(0, arrow));
      const int j = g.fiber.index_of(lhs);
      if (j == 0) fail(l.number, "unknown fiber generator '" + lhs + "'");
      if (current->images.count(j)) fail(l.number, "second image for '" + lhs + "'");
      current->images[j] = parse_word(l.number, g.fiber, full.substr(arrow + 2));
    }
  }

  if (!kind) fail(0, "missing fiber line");
  if (!have_base) fail(0, "missing base line");
  const int n = g.fiber.rank();
  const int k = g.base.rank();
  for (int i = 1; i <= k; ++i) {
    if (!blocks.count(i)) fail(0, "no action block for '" + g.base.names()[static_cast<std::size_t>(i - 1)] + "'");
  }

  if (*kind == FiberKind::abelian) {
    std::vector<IntMatrix> mats;
    for (int i = 1; i <= k; ++i) {
      const ActionBlock& b = blocks[i];
      if (b.rows.size() != static_cast<std::size_t>(n)) fail(b.line, "action needs one row per fiber generator");
      IntMatrix m(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
      for (std::size_t r = 0; r < b.rows.size(); ++r) {
        for (std::size_t c = 0; c < b.rows[r].size(); ++c) m(r, c) = b.rows[r][c];
      }
      mats.push_back(std::move(m));
    }
    g.spec = ExtensionSpec::abelian(n, std::move(mats));
  } else {
    std::vector<Endomorphism> acts;
    for (int i = 1; i <= k; ++i) {
      const ActionBlock& b = blocks[i];
      std::vector<Word> images;
      for (int j = 1; j <= n; ++j) {
        auto it = b.images.find(j);
        if (it == b.images.end()) {
          fail(b.line, "no image for '" + g.fiber.names()[static_cast<std::size_t>(j - 1)] + "'");
        }
        images.push_back(it->second);
      }
      acts.emplace_back(n, std::move(images));
    }
    if (*kind == FiberKind::free) {
      g.spec = ExtensionSpec::free_by_free(n, acts);
    } else {
      g.spec = ExtensionSpec::presented(Presentation(n, relators), std::move(acts));
    }
  }
  if (surface_genus) g.spec.assert_surface_fiber(*surface_genus);
  if (assert_nonfibering) g.spec.assert_nonfibering();
  return g;
}

std::string write_group_file(const GroupFile& g) {
  std::ostringstream out;
  if (!g.name.empty()) out << "name " << g.name << '\n';
  out << "fiber " << to_string(g.spec.kind());
  for (const auto& s : g.fiber.names()) out << ' ' << s;
  out << '\n';
  if (g.spec.kind() == FiberKind::presented) {
    for (const Word& r : g.spec.fiber_presentation().relators()) out << "rel " << g.fiber.format(r) << '\n';
  }
  out << "base";
  for (const auto& s : g.base.names()) out << ' ' << s;
  out << '\n';
  for (int i = 1; i <= g.spec.base_rank(); ++i) {
    out << "action " << g.base.names()[static_cast<std::size_t>(i - 1)] << '\n';
    if (g.spec.kind() == FiberKind::abelian) {
      const IntMatrix& m = g.spec.action_matrix(i);
      for (std::size_t r = 0; r < m.rows(); ++r) {
        out << "  row";
        for (std::size_t c = 0; c < m.cols(); ++c) out << ' ' << m(r, c).get_str();
        out << '\n';
      }
    } else {
      const Endomorphism& f = g.spec.actions()[static_cast<std::size_t>(i - 1)];
      for (int j = 1; j <= g.fiber.rank(); ++j) {
        out << "  " << g.fiber.names()[static_cast<std::size_t>(j - 1)] << " -> " << g.fiber.format(f.image(j)) << '\n';
      }
    }
  }
  switch (g.spec.nonfibering()) {
    case Nonfibering::surface_genus:
      out << "flag surface-fiber " << g.spec.surface_genus() << '\n';
      break;
    case Nonfibering::user_asserted:
      out << "flag assert-nonfibering\n";
      break;
    default:
      break;
  }
  return out.str();
}

bool looks_like_presentation_file(std::string_view text) {
  auto lines = split_lines(text);
  return !lines.empty() && lines.front().keyword == "gens";
}

PresentationFile parse_presentation_file(std::string_view text) {
  PresentationFile p;
  bool have_gens = false;
  std::vector<Word> rels;
  for (const Line& l : split_lines(text)) {
    if (l.keyword == "gens") {
      if (have_gens) fail(l.number, "second gens line");
      have_gens = true;
      p.alphabet = make_alphabet(l.number, tokens(l.rest));
    } else if (l.keyword == "rel") {
      if (!have_gens) fail(l.number, "rel before gens");
      rels.push_back(parse_word(l.number, p.alphabet, l.rest));
    } else {
      fail(l.number, "unrecognised line '" + l.keyword + "'");
    }
  }
  if (!have_gens) fail(0, "missing gens line");
  p.presentation = Presentation(p.alphabet.rank(), std::move(rels));
  return p;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::parse, "cannot read '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace exhom
