#include "exhom/certificate.hpp"

#include <sstream>

#include "exhom/error.hpp"

namespace exhom {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::excessive_homology: return "excessive-homology";
    case Verdict::incoherent: return "incoherent";
    case Verdict::algebraically_fibers: return "algebraically-fibers";
    case Verdict::virtually_excessive: return "virtually-excessive";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "?";
}

bool Certificate::definite() const {
  return !verdicts.empty() && verdicts.front() != Verdict::inconclusive;
}

namespace {

constexpr const char* kHomologyFormula = "homology-of-fiber-by-free-extension";
constexpr const char* kExcessiveIncoherent = "excessive-homology-implies-incoherence";
constexpr const char* kAmalgam = "amalgam-over-infinitely-generated-subgroup-not-finitely-presented";
constexpr const char* kFibers = "excessive-homology-implies-algebraic-fibering";
constexpr const char* kProduct = "f2xf2-subgroup-implies-incoherence";
constexpr const char* kVirtual = "virtual-fibering-iff-virtually-excessive";
constexpr const char* kOvergroup = "incoherent-subgroup-implies-incoherent-group";
constexpr const char* kRankOne = "rank-one-fiber-homology-index-two-descent";

const char* mode_name(Mode m) {
  switch (m) {
    case Mode::check: return "check";
    case Mode::full: return "full";
    case Mode::virtual_search: return "virtual";
  }
  return "?";
}

std::string join_words(const Alphabet& a, const std::vector<Word>& ws) {
  std::string out;
  for (const Word& w : ws) {
    if (!out.empty()) out += ", ";
    out += a.format(w);
  }
  return out;
}

std::string values_text(const Character& c, std::size_t fiber) {
  std::string out;
  for (std::size_t i = 0; i < c.values.size(); ++i) {
    if (i) out += ' ';
    if (i == fiber) out += "| ";
    out += c.values[i].get_str();
  }
  if (fiber == c.values.size()) out += out.empty() ? "|" : " |";
  return out;
}

std::string provenance(const ExtensionSpec& e) {
  switch (e.nonfibering()) {
    case Nonfibering::free_rank:
      return "fiber is free of rank " + std::to_string(e.fiber_generators()) + " and does not algebraically fiber";
    case Nonfibering::surface_genus:
      return "fiber is a closed surface group of genus " + std::to_string(e.surface_genus()) +
             " (flagged) and does not algebraically fiber";
    case Nonfibering::user_asserted:
      return "fiber does not algebraically fiber (asserted, not checked)";
    case Nonfibering::unknown:
      break;
  }
  return "fiber may algebraically fiber; incoherence needs it not to";
}

void add_verdict(Certificate& c, Verdict v) {
  for (Verdict x : c.verdicts) {
    if (x == v) return;
  }
  c.verdicts.push_back(v);
}

void add_theorem(Certificate& c, const char* t) {
  for (const auto& x : c.theorems) {
    if (x == t) return;
  }
  c.theorems.emplace_back(t);
}

// Sum of the basis characters, normalized; on F2 x F2 this is the map
// sending every fiber generator to 1.
Character combined(const ExtensionSpec& e, const std::vector<Character>& basis) {
  Character sum = basis.front();
  for (std::size_t i = 1; i < basis.size(); ++i) {
    for (std::size_t j = 0; j < sum.values.size(); ++j) sum.values[j] += basis[i].values[j];
  }
  return normalize(e, sum);
}

// Witness of the excessive-homology route on G itself.
void excessive_witness(Certificate& c, const GroupFile& g, const Character& gamma) {
  const ExtensionSpec& e = g.spec;
  const FibrationPlan plan = fibration_plan(e, gamma);
  c.characters.push_back(plan.gamma);
  const int k = e.base_rank();
  if (k >= 2) {
    const std::string& s = g.base.names()[0];
    const std::string& t = g.base.names()[1];
    c.witness.push_back("N = K(" + s + ") *_L K(" + t + "), K(x) = ker(alpha_x + gamma/r) on H x| <x>, L = ker(gamma|H)");
  }
  if (e.kind() != FiberKind::abelian) {
    const Alphabet a = g.group_alphabet();
    for (int i = 0; i < k; ++i) {
      c.witness.push_back("K(" + g.base.names()[static_cast<std::size_t>(i)] + ") at r = 1 contains " +
                          join_words(a, plan.kernel_words[static_cast<std::size_t>(i)]));
    }
  }
  c.witness.push_back("r left symbolic: a large enough r exists by openness of the BNS invariant");
}

struct VirtualHit {
  SubExtension sub;
  Character character;
  std::string route;
  std::vector<std::string> witness;
};

std::string strategy_line(const char* name, const SearchOutcome& o) {
  if (!o.hit) {
    return std::string("strategy ") + name + ": none after " + std::to_string(o.examined) + " candidates" +
           (o.over_cap ? ", " + std::to_string(o.over_cap) + " roots over the orbit cap" : "") +
           (o.unbuilt ? ", " + std::to_string(o.unbuilt) + " excessive subgroups without computable actions" : "");
  }
  const SubExtension& s = o.hit->sub;
  return std::string("strategy ") + name + ": index " + std::to_string(s.index()) + " fiber-index " +
         std::to_string(s.fiber_index) + " base-index " + std::to_string(s.base_index) + " H1 " +
         extension_h1(s.spec).to_string();
}

// R3 and the virtual searches. Returns nullopt when nothing is found; the
// search lines go to `notes` either way.
std::optional<VirtualHit> subgroup_search(const ExtensionSpec& e, const Bounds& b,
                                          std::vector<std::string>& notes) {
  if (e.fiber_generators() > 0 && e.base_rank() >= 1 &&
      cokernel(relator_matrix(e.fiber_presentation())).free_rank == 1) {
    RankOneDescent d = rank_one_descent(e);
    if (is_excessive(d.sub.spec)) {
      VirtualHit h;
      h.character = normalize(d.sub.spec, excessive_characters(d.sub.spec).front());
      std::string signs;
      for (int s : d.signs) signs += (signs.empty() ? "" : " ") + std::string(s > 0 ? "+1" : "-1");
      h.witness.push_back("fiber H1 free rank 1, action signs " + signs);
      h.sub = std::move(d.sub);
      h.route = "rank-one";
      return h;
    }
  }
  std::optional<SearchOutcome> orbit, low;
  if (b.strategy != Strategy::lowindex && e.kind() == FiberKind::free) {
    orbit = preserved_subgroup_search(e, b.max_fiber_index, b.orbit_cap);
    notes.push_back(strategy_line("orbit", *orbit) + " (fiber index <= " + std::to_string(b.max_fiber_index) + ")");
  }
  if (b.strategy != Strategy::orbit && e.kind() != FiberKind::abelian) {
    low = low_index_search(e, b.max_index);
    notes.push_back(strategy_line("lowindex", *low) + " (index <= " + std::to_string(b.max_index) + ")");
  }
  const SearchHit* best = nullptr;
  if (orbit && orbit->hit) best = &*orbit->hit;
  if (low && low->hit && (!best || low->hit->sub.index() < best->sub.index())) best = &*low->hit;
  if (!best) return std::nullopt;
  VirtualHit h;
  h.sub = best->sub;
  h.character = best->character;
  h.route = "R3";
  return h;
}

void fill_subgroup(Certificate& c, VirtualHit h) {
  c.scope = "finite-index-subgroup";
  c.route = h.route;
  c.subgroup_h1 = extension_h1(h.sub.spec).to_string();
  c.characters.push_back(h.character);
  for (auto& w : h.witness) c.witness.push_back(std::move(w));
  add_verdict(c, Verdict::virtually_excessive);
  add_verdict(c, Verdict::algebraically_fibers);
  add_theorem(c, kVirtual);
  add_theorem(c, kFibers);
  if (h.route == "rank-one") add_theorem(c, kRankOne);
  const ExtensionSpec& s = h.sub.spec;
  c.assumptions.push_back("subgroup " + provenance(s));
  if (s.nonfibering_established() && s.base_rank() >= 2) {
    add_verdict(c, Verdict::incoherent);
    add_theorem(c, kExcessiveIncoherent);
    add_theorem(c, kAmalgam);
    add_theorem(c, kOvergroup);
  }
  c.subgroup = std::move(h.sub);
}

Certificate start(const GroupFile& g, const Bounds& b, Mode m) {
  Certificate c;
  c.mode = m;
  c.group = g;
  c.bounds = b;
  c.scope = "group";
  c.route = "none";
  c.h1 = extension_h1(g.spec).to_string();
  c.theorems.emplace_back(kHomologyFormula);
  return c;
}

void finish_inconclusive(Certificate& c) {
  if (c.verdicts.empty()) c.verdicts.push_back(Verdict::inconclusive);
}

}  // namespace

Certificate incoherence_certificate(const GroupFile& g, const Bounds& b, Mode mode) {
  const ExtensionSpec& e = g.spec;
  if (e.base_rank() < 2) throw Error(ErrorKind::precondition, "incoherence routes need a base of rank at least 2");
  if (mode == Mode::virtual_search) return virtual_verdict(g, b);
  Certificate c = start(g, b, mode);

  // R1
  const auto chars = excessive_characters(e);
  if (!chars.empty()) {
    add_verdict(c, Verdict::excessive_homology);
    add_verdict(c, Verdict::algebraically_fibers);
    add_theorem(c, kFibers);
    excessive_witness(c, g, combined(e, chars));
    c.assumptions.push_back(provenance(e));
    if (e.nonfibering_established()) {
      c.verdicts.insert(c.verdicts.begin() + 1, Verdict::incoherent);
      add_theorem(c, kExcessiveIncoherent);
      add_theorem(c, kAmalgam);
      c.route = "R1";
      return c;
    }
    c.route = "index-1";
  }

  // R2
  if (e.kind() == FiberKind::free && e.fiber_generators() >= 2) {
    if (auto w = outer_kernel_probe(e, b.probe_length)) {
      if (!verify_outer_kernel_witness(e, *w)) throw Error(ErrorKind::certificate, "probe witness fails to commute");
      const Alphabet a = g.group_alphabet();
      add_verdict(c, Verdict::incoherent);
      add_theorem(c, kProduct);
      c.route = "R2";
      c.witness.push_back("base word " + g.base.format(w->w) + " acts as conjugation by " + g.fiber.format(w->g));
      c.witness.push_back("conjugate " + g.base.format(w->w_conjugate) + " acts as conjugation by " +
                          g.fiber.format(w->g_conjugate));
      std::vector<Word> gens;
      for (int j = 1; j <= e.fiber_generators(); ++j) gens.push_back(Word({j}));
      c.witness.push_back("F2 x F2 inside <" + join_words(a, gens) + "> x <" + a.format(w->c) + ", " +
                          a.format(w->c_conjugate) + ">");
      return c;
    }
    c.witness.push_back("no base word of length <= " + std::to_string(b.probe_length) + " acts by an inner automorphism");
  }

  // R3
  if (mode == Mode::full && c.verdicts.empty()) {
    std::vector<std::string> notes;
    auto hit = subgroup_search(e, b, notes);
    for (auto& n : notes) c.witness.push_back(std::move(n));
    if (hit) {
      fill_subgroup(c, std::move(*hit));
      return c;
    }
  }
  finish_inconclusive(c);
  return c;
}

Certificate virtual_verdict(const GroupFile& g, const Bounds& b) {
  const ExtensionSpec& e = g.spec;
  Certificate c = start(g, b, Mode::virtual_search);
  const auto chars = excessive_characters(e);
  if (!chars.empty()) {
    add_verdict(c, Verdict::excessive_homology);
    add_verdict(c, Verdict::virtually_excessive);
    add_verdict(c, Verdict::algebraically_fibers);
    add_theorem(c, kFibers);
    excessive_witness(c, g, combined(e, chars));
    c.assumptions.push_back(provenance(e));
    if (e.nonfibering_established() && e.base_rank() >= 2) {
      add_verdict(c, Verdict::incoherent);
      add_theorem(c, kExcessiveIncoherent);
      add_theorem(c, kAmalgam);
      c.route = "R1";
    } else {
      c.route = "index-1";
    }
    return c;
  }
  std::vector<std::string> notes;
  auto hit = subgroup_search(e, b, notes);
  for (auto& n : notes) c.witness.push_back(std::move(n));
  if (hit) {
    fill_subgroup(c, std::move(*hit));
    return c;
  }
  finish_inconclusive(c);
  return c;
}

std::string serialize(const Certificate& c) {
  std::ostringstream out;
  const auto n = static_cast<std::size_t>(c.group.spec.fiber_generators());
  out << "exhom-certificate 1\n";
  out << "mode " << mode_name(c.mode) << '\n';
  out << "verdict";
  for (Verdict v : c.verdicts) out << ' ' << to_string(v);
  out << '\n';
  out << "scope " << c.scope << '\n';
  out << "route " << c.route << '\n';
  for (const auto& t : c.theorems) out << "theorem " << t << '\n';
  out << "h1 " << c.h1 << '\n';
  if (c.subgroup) out << "subgroup-h1 " << c.subgroup_h1 << '\n';
  for (const Character& ch : c.characters) {
    const std::size_t fiber = c.subgroup ? static_cast<std::size_t>(c.subgroup->spec.fiber_generators()) : n;
    out << "character " << values_text(ch, fiber) << '\n';
  }
  for (const auto& w : c.witness) out << "witness " << w << '\n';
  for (const auto& a : c.assumptions) out << "assumption " << a << '\n';
  out << "bound probe-length " << c.bounds.probe_length << '\n';
  out << "bound max-fiber-index " << c.bounds.max_fiber_index << '\n';
  out << "bound max-index " << c.bounds.max_index << '\n';
  out << "bound orbit-cap " << c.bounds.orbit_cap << '\n';
  out << "bound strategy " << to_string(c.bounds.strategy) << '\n';
  if (c.subgroup) {
    const SubExtension& s = *c.subgroup;
    out << "subgroup index " << s.index() << " fiber-index " << s.fiber_index << " base-index " << s.base_index << '\n';
    if (s.descriptor.fiber_basis) out << "subgroup-fiber " << join_words(c.group.fiber, *s.descriptor.fiber_basis) << '\n';
    if (s.descriptor.fiber_table) {
      out << "subgroup-fiber-table";
      const auto& rows = s.descriptor.fiber_table->action();
      for (std::size_t r = 0; r < rows.size(); ++r) {
        out << (r ? " ;" : "");
        for (int y : rows[r]) out << ' ' << y;
      }
      out << '\n';
    }
    out << "subgroup-base " << join_words(c.group.group_alphabet(), s.descriptor.base_elements) << '\n';
  }
  out << "group\n";
  std::istringstream gin(write_group_file(c.group));
  std::string line;
  while (std::getline(gin, line)) out << "  " << line << '\n';
  out << "end\n";
  return out.str();
}

namespace {

[[noreturn]] void bad(const std::string& msg) { throw Error(ErrorKind::certificate, msg); }

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    auto comma = s.find(',', start);
    std::string item = s.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    const auto b = item.find_first_not_of(' ');
    const auto e = item.find_last_not_of(' ');
    if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

std::size_t to_size(const std::string& s) {
  try {
    std::size_t used = 0;
    unsigned long v = std::stoul(s, &used);
    if (used != s.size()) bad("bad number '" + s + "'");
    return v;
  } catch (const std::logic_error&) {
    bad("bad number '" + s + "'");
  }
}

Character parse_values(const std::string& s) {
  std::istringstream in(s);
  std::string tok;
  Character c;
  while (in >> tok) {
    if (tok == "|") continue;
    try {
      c.values.emplace_back(tok);
      c.values.back().canonicalize();
    } catch (const std::invalid_argument&) {
      bad("bad character value '" + tok + "'");
    }
  }
  return c;
}

}  // namespace

Certificate parse_certificate(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line) || line != "exhom-certificate 1") bad("missing header");
  Certificate c;
  std::string group_text;
  bool in_group = false, ended = false, have_group = false;
  struct PendingSubgroup {
    bool present = false;
    std::size_t fiber_index = 0, base_index = 0;
    std::optional<std::string> fiber, table;
    std::string base;
  } pending;
  while (std::getline(in, line)) {
    if (in_group) {
      if (line == "end") {
        in_group = false;
        ended = true;
        continue;
      }
      if (line.rfind("  ", 0) != 0) bad("group lines must be indented");
      group_text += line.substr(2) + '\n';
      continue;
    }
    if (ended) bad("text after end");
    const auto sp = line.find(' ');
    const std::string key = line.substr(0, sp);
    const std::string rest = sp == std::string::npos ? "" : line.substr(sp + 1);
    if (key == "mode") {
      if (rest == "check") c.mode = Mode::check;
      else if (rest == "full") c.mode = Mode::full;
      else if (rest == "virtual") c.mode = Mode::virtual_search;
      else bad("unknown mode '" + rest + "'");
    } else if (key == "verdict") {
      std::istringstream vs(rest);
      std::string v;
      while (vs >> v) {
        bool found = false;
        for (Verdict x : {Verdict::excessive_homology, Verdict::incoherent, Verdict::algebraically_fibers,
                          Verdict::virtually_excessive, Verdict::inconclusive}) {
          if (v == to_string(x)) {
            c.verdicts.push_back(x);
            found = true;
          }
        }
        if (!found) bad("unknown verdict '" + v + "'");
      }
    } else if (key == "scope") {
      c.scope = rest;
    } else if (key == "route") {
      c.route = rest;
    } else if (key == "theorem") {
      c.theorems.push_back(rest);
    } else if (key == "h1") {
      c.h1 = rest;
    } else if (key == "subgroup-h1") {
      c.subgroup_h1 = rest;
    } else if (key == "character") {
      c.characters.push_back(parse_values(rest));
    } else if (key == "witness") {
      c.witness.push_back(rest);
    } else if (key == "assumption") {
      c.assumptions.push_back(rest);
    } else if (key == "bound") {
      std::istringstream bs(rest);
      std::string name, value;
      bs >> name >> value;
      if (name == "probe-length") c.bounds.probe_length = to_size(value);
      else if (name == "max-fiber-index") c.bounds.max_fiber_index = to_size(value);
      else if (name == "max-index") c.bounds.max_index = to_size(value);
      else if (name == "orbit-cap") c.bounds.orbit_cap = to_size(value);
      else if (name == "strategy") {
        if (value == "orbit") c.bounds.strategy = Strategy::orbit;
        else if (value == "lowindex") c.bounds.strategy = Strategy::lowindex;
        else if (value == "both") c.bounds.strategy = Strategy::both;
        else bad("unknown strategy '" + value + "'");
      } else {
        bad("unknown bound '" + name + "'");
      }
    } else if (key == "subgroup") {
      std::istringstream ss(rest);
      std::string a, b, c2, d, e2, f;
      ss >> a >> b >> c2 >> d >> e2 >> f;
      if (a != "index" || c2 != "fiber-index" || e2 != "base-index") bad("malformed subgroup line");
      pending.present = true;
      pending.fiber_index = to_size(d);
      pending.base_index = to_size(f);
    } else if (key == "subgroup-fiber") {
      pending.fiber = rest;
    } else if (key == "subgroup-fiber-table") {
      pending.table = rest;
    } else if (key == "subgroup-base") {
      pending.base = rest;
    } else if (key == "group") {
      in_group = true;
      have_group = true;
    } else {
      bad("unknown key '" + key + "'");
    }
  }
  if (!have_group || !ended) bad("missing group block");
  try {
    c.group = parse_group_file(group_text);
  } catch (const Error& e) {
    bad(std::string("embedded group: ") + e.what());
  }
  if (pending.present) {
    SubExtension s;
    s.fiber_index = pending.fiber_index;
    s.base_index = pending.base_index;
    try {
      if (pending.fiber) {
        std::vector<Word> ws;
        for (const auto& item : split_list(*pending.fiber)) ws.push_back(c.group.fiber.parse(item));
        s.descriptor.fiber_basis = std::move(ws);
      }
      if (pending.table) {
        std::vector<std::vector<int>> rows(1);
        std::istringstream ts(*pending.table);
        std::string tok;
        while (ts >> tok) {
          if (tok == ";") {
            rows.emplace_back();
          } else {
            rows.back().push_back(static_cast<int>(to_size(tok)));
          }
        }
        s.descriptor.fiber_table = CosetTable(c.group.spec.fiber_generators(), std::move(rows));
      }
      const Alphabet a = c.group.group_alphabet();
      for (const auto& item : split_list(pending.base)) s.descriptor.base_elements.push_back(a.parse(item));
    } catch (const Error& e) {
      bad(std::string("subgroup data: ") + e.what());
    }
    // a descriptor that no longer builds is left for replay to report
    try {
      const SubExtension built = build_sub_extension(c.group.spec, s.descriptor);
      s.spec = built.spec;
    } catch (const Error&) {
    }
    c.subgroup = std::move(s);
  }
  return c;
}

ReplayReport replay(std::string_view text) {
  ReplayReport r;
  const Certificate c = parse_certificate(text);
  const ExtensionSpec& e = c.group.spec;

  Certificate again;
  switch (c.mode) {
    case Mode::virtual_search:
      again = virtual_verdict(c.group, c.bounds);
      break;
    default:
      again = incoherence_certificate(c.group, c.bounds, c.mode);
      break;
  }
  r.recomputed = serialize(again);
  r.identical = r.recomputed == text;

  // Independent checks on the recorded data.
  if (extension_h1(e).to_string() != c.h1) r.problems.push_back("h1 does not match the group");
  if (c.subgroup) {
    try {
      const SubExtension s = build_sub_extension(e, c.subgroup->descriptor);
      if (s.fiber_index != c.subgroup->fiber_index || s.base_index != c.subgroup->base_index) {
        r.problems.push_back("subgroup indices do not match the descriptor");
      }
      if (extension_h1(s.spec).to_string() != c.subgroup_h1) r.problems.push_back("subgroup h1 does not match");
      if (!is_excessive(s.spec)) r.problems.push_back("subgroup is not excessive");
      for (const Character& ch : c.characters) {
        if (!is_character(s.spec, ch)) r.problems.push_back("character does not kill the subgroup's relators");
      }
    } catch (const Error& err) {
      r.problems.push_back(std::string("subgroup descriptor: ") + err.what());
    }
  } else {
    for (const Character& ch : c.characters) {
      if (!is_character(e, ch)) r.problems.push_back("character does not kill the relators");
    }
  }
  return r;
}

}  // namespace exhom
