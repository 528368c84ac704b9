// exhom: excessive homology checks for fiber-by-free groups.
//
// Exit status: 0 definite verdict, 1 inconclusive (or a failed replay or
// golden diff), 2 input error, 3 internal disagreement.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "exhom/certificate.hpp"
#include "exhom/error.hpp"
#include "exhom/golden.hpp"
#include "exhom/groupfile.hpp"

namespace {

using namespace exhom;

enum class Format { text, machine };

struct Options {
  std::string file;
  std::string certificate_out;
  Format format = Format::text;
  Bounds bounds;
  bool tamper = false;
  std::string basis;
  std::vector<std::string> words;
};

void write_certificate(const Options& o, const std::string& text) {
  if (o.certificate_out.empty()) return;
  std::ofstream out(o.certificate_out, std::ios::binary);
  if (!out) throw Error(ErrorKind::parse, "cannot write '" + o.certificate_out + "'");
  out << text;
}

std::string verdict_line(const Certificate& c) {
  std::string s;
  for (Verdict v : c.verdicts) s += (s.empty() ? "" : " ") + std::string(to_string(v));
  return s;
}

void print_report(const Certificate& c) {
  const GroupFile& g = c.group;
  if (!g.name.empty()) std::cout << "group: " << g.name << '\n';
  std::cout << "fiber: " << to_string(g.spec.kind()) << " on " << g.fiber.rank() << " generators, base rank "
            << g.spec.base_rank() << '\n';
  std::cout << "H1 = " << c.h1 << '\n';
  bool excessive = false;
  for (Verdict v : c.verdicts) excessive = excessive || v == Verdict::excessive_homology;
  std::cout << (excessive ? "excessive" : "not excessive") << '\n';
  if (c.subgroup) {
    const SubExtension& s = *c.subgroup;
    std::cout << "subgroup: index " << s.index() << " (fiber-index " << s.fiber_index << ", base-index "
              << s.base_index << "), H1 = " << c.subgroup_h1 << '\n';
  }
  for (const Character& ch : c.characters) {
    const auto fiber = static_cast<std::size_t>(c.subgroup ? c.subgroup->spec.fiber_generators()
                                                           : g.spec.fiber_generators());
    std::cout << "character " << ch.to_string(fiber) << '\n';
  }
  for (const auto& w : c.witness) std::cout << "  " << w << '\n';
  for (const auto& a : c.assumptions) std::cout << "assuming " << a << '\n';
  std::cout << "theorems:";
  for (const auto& t : c.theorems) std::cout << ' ' << t;
  std::cout << '\n';
  std::cout << "verdict: " << verdict_line(c) << " (route " << c.route << ", scope " << c.scope << ")\n";
}

int emit(const Options& o, const Certificate& c) {
  const std::string text = serialize(c);
  if (o.format == Format::machine) {
    std::cout << text;
  } else {
    print_report(c);
  }
  write_certificate(o, text);
  return c.definite() ? 0 : 1;
}

int run_check(const Options& o) {
  const GroupFile g = parse_group_file(read_text_file(o.file));
  return emit(o, incoherence_certificate(g, o.bounds, Mode::check));
}

int run_search(const Options& o) {
  const GroupFile g = parse_group_file(read_text_file(o.file));
  const Certificate c = virtual_verdict(g, o.bounds);
  const int code = emit(o, c);
  if (code != 0 && o.format == Format::text) {
    std::cout << "bounds: max-fiber-index " << o.bounds.max_fiber_index << ", max-index " << o.bounds.max_index
              << ", orbit-cap " << o.bounds.orbit_cap << ", strategy " << to_string(o.bounds.strategy) << '\n';
  }
  return code;
}

int run_abelianize(const Options& o) {
  const std::string text = read_text_file(o.file);
  if (looks_like_presentation_file(text)) {
    const PresentationFile p = parse_presentation_file(text);
    std::cout << "presentation: " << abelianization(p.presentation).to_string() << '\n';
    return 0;
  }
  const GroupFile g = parse_group_file(text);
  const AbelianGroupShape formula = extension_h1(g.spec);
  std::cout << "formula:      " << formula.to_string() << '\n';
  if (g.spec.kind() == FiberKind::abelian) {
    std::cout << "presentation: unavailable (abelian fiber data only)\n";
    return 0;
  }
  const AbelianGroupShape pres = abelianization(semidirect_presentation(g.spec));
  std::cout << "presentation: " << pres.to_string() << '\n';
  if (!(pres == formula)) {
    std::cerr << "exhom: the two computations disagree\n";
    return 3;
  }
  return 0;
}

std::vector<std::string> comma_list(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(item);
  return out;
}

// Matrices of base words on a fiber subgroup, in the basis order given.
int run_restrict(const Options& o) {
  const GroupFile g = parse_group_file(read_text_file(o.file));
  if (g.spec.kind() != FiberKind::free) throw Error(ErrorKind::precondition, "restrict needs a free fiber");
  std::vector<Word> basis;
  for (const auto& item : comma_list(o.basis)) basis.push_back(g.fiber.parse(item));
  const SubgroupGraph h = SubgroupGraph::fold_with_basis(basis, g.fiber.rank());
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= basis.size(); ++i) names.push_back("h" + std::to_string(i));
  const Alphabet hs(names);
  std::cout << "subgroup: rank " << h.rank() << ", index "
            << (h.index() ? std::to_string(*h.index()) : std::string("infinite")) << '\n';
  for (std::size_t i = 0; i < basis.size(); ++i) std::cout << "  " << names[i] << " = " << g.fiber.format(basis[i]) << '\n';

  std::vector<Word> words;
  for (const auto& w : o.words) words.push_back(g.base.parse(w));
  if (words.empty()) {
    for (int i = 1; i <= g.base.rank(); ++i) words.push_back(Word{i});
  }
  int moved = 0;
  for (const Word& w : words) {
    std::cout << "word " << g.base.format(w) << '\n';
    try {
      const Endomorphism r = restrict(base_action(g.spec, w).forward(), h);
      for (std::size_t i = 0; i < basis.size(); ++i) {
        std::cout << "  " << names[i] << " -> " << hs.format(r.images()[i]) << '\n';
      }
      std::istringstream rows(abelianized(r).to_string());
      for (std::string line; std::getline(rows, line);) std::cout << "  " << line << '\n';
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::not_preserved) throw;
      std::cout << "  does not preserve the subgroup\n";
      ++moved;
    }
  }
  return moved ? 1 : 0;
}

int run_reproduce(const Options& o) {
  const golden::Report r = golden::reproduce(o.tamper);
  for (const auto& s : r.steps) {
    std::cout << (s.ok ? "ok   " : "FAIL ") << s.name << ": " << s.detail << '\n';
  }
  if (o.format == Format::machine && !r.certificate.empty()) std::cout << r.certificate;
  write_certificate(o, r.certificate);
  std::cout << (r.ok() ? "all values match" : "mismatch against golden values") << '\n';
  return r.ok() ? 0 : 1;
}

int run_replay(const Options& o) {
  const ReplayReport r = replay(read_text_file(o.file));
  std::cout << "recomputed certificate " << (r.identical ? "identical" : "differs") << '\n';
  for (const auto& p : r.problems) std::cout << "problem: " << p << '\n';
  if (!r.identical && o.format == Format::machine) std::cout << r.recomputed;
  return r.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Excessive homology, incoherence and virtual fibering of fiber-by-free groups"};
  app.require_subcommand(1);
  Options o;
  const std::map<std::string, Format> formats{{"text", Format::text}, {"machine", Format::machine}};
  const std::map<std::string, Strategy> strategies{
      {"orbit", Strategy::orbit}, {"lowindex", Strategy::lowindex}, {"both", Strategy::both}};

  auto common = [&](CLI::App* sub) {
    sub->add_option("--format", o.format, "text or machine")->transform(CLI::CheckedTransformer(formats));
  };
  auto bounds = [&](CLI::App* sub) {
    sub->add_option("--probe-length", o.bounds.probe_length, "longest base word tried for inner actions")
        ->check(CLI::Range(1, 12));
    sub->add_option("--certificate", o.certificate_out, "write the certificate to this file");
  };

  auto* check = app.add_subcommand("check", "homology and incoherence of the group itself");
  check->add_option("file", o.file, "group file")->required();
  common(check);
  bounds(check);

  auto* search = app.add_subcommand("search", "look for a finite-index subgroup with excessive homology");
  search->add_option("file", o.file, "group file")->required();
  search->add_option("--max-index", o.bounds.max_index, "whole-group index bound")->check(CLI::Range(1, 12));
  search->add_option("--max-fiber-index", o.bounds.max_fiber_index, "fiber subgroup index bound")
      ->check(CLI::Range(1, 12));
  search->add_option("--orbit-cap", o.bounds.orbit_cap, "largest orbit of fiber subgroups")
      ->check(CLI::Range(1, 100000));
  search->add_option("--strategy", o.bounds.strategy, "orbit, lowindex or both")
      ->transform(CLI::CheckedTransformer(strategies));
  common(search);
  bounds(search);

  auto* reproduce = app.add_subcommand("reproduce", "recompute the index-two example and diff against goldens");
  reproduce->add_flag("--tamper", o.tamper, "perturb the fixture (negative control)");
  reproduce->add_option("--certificate", o.certificate_out, "write the certificate to this file");
  common(reproduce);

  auto* abelianize = app.add_subcommand("abelianize", "H1 by the extension formula and from the presentation");
  abelianize->add_option("file", o.file, "group or presentation file")->required();

  auto* restrict_cmd = app.add_subcommand("restrict", "action matrices on a fiber subgroup in a chosen basis order");
  restrict_cmd->add_option("file", o.file, "group file")->required();
  restrict_cmd->add_option("--basis", o.basis, "free basis of the subgroup, comma separated, in this order")
      ->required();
  restrict_cmd->add_option("--word", o.words, "base word to restrict (repeatable; default each base generator)");

  auto* replay_cmd = app.add_subcommand("replay", "recompute a certificate and compare");
  replay_cmd->add_option("file", o.file, "certificate file")->required();
  common(replay_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*check) return run_check(o);
    if (*search) return run_search(o);
    if (*reproduce) return run_reproduce(o);
    if (*abelianize) return run_abelianize(o);
    if (*replay_cmd) return run_replay(o);
    if (*restrict_cmd) return run_restrict(o);
  } catch (const Error& e) {
    std::cerr << "exhom: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
