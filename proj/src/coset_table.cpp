#include <algorithm>
#include <sstream>

#include "exhom/error.hpp"
#include "exhom/fpgroups.hpp"

namespace exhom {

namespace {

constexpr std::size_t kMaxLowIndexDegree = 12;

std::size_t inverse_direction(std::size_t d) { return d ^ 1U; }

// Renumbers a (possibly partial) table from `base` in order of first
// appearance along a row-major scan. Undefined entries stay -1; cosets not
// reached are dropped.
std::vector<std::vector<int>> standardize(const std::vector<std::vector<int>>& table,
                                          std::size_t base) {
  const std::size_t n = table.size();
  std::vector<int> fwd(n, -1);
  std::vector<std::size_t> back{base};
  fwd[base] = 0;
  for (std::size_t i = 0; i < back.size(); ++i) {
    for (int y : table[back[i]]) {
      if (y >= 0 && fwd[static_cast<std::size_t>(y)] < 0) {
        fwd[static_cast<std::size_t>(y)] = static_cast<int>(back.size());
        back.push_back(static_cast<std::size_t>(y));
      }
    }
  }
  std::vector<std::vector<int>> out(back.size());
  for (std::size_t i = 0; i < back.size(); ++i) {
    for (int y : table[back[i]]) out[i].push_back(y < 0 ? -1 : fwd[static_cast<std::size_t>(y)]);
  }
  return out;
}

class LowIndexSearch {
 public:
  LowIndexSearch(const Presentation& p, std::size_t max_degree)
      : n_(p.n_generators()),
        dirs_(2 * static_cast<std::size_t>(p.n_generators())),
        max_degree_(max_degree),
        table_(max_degree, std::vector<int>(dirs_, -1)) {
    for (const Word& r : p.relators()) {
      std::vector<std::size_t> ds;
      for (Letter l : r) ds.push_back(l.direction());
      relators_.push_back(std::move(ds));
    }
  }

  std::vector<CosetTable> run() {
    count_ = 1;
    search();
    std::sort(found_.begin(), found_.end());
    return std::move(found_);
  }

 private:
  void set(std::size_t c, std::size_t d, std::size_t target) {
    table_[c][d] = static_cast<int>(target);
    table_[target][inverse_direction(d)] = static_cast<int>(c);
    trail_.emplace_back(c, d);
    trail_.emplace_back(target, inverse_direction(d));
  }

  void undo_to(std::size_t mark) {
    while (trail_.size() > mark) {
      auto [c, d] = trail_.back();
      table_[c][d] = -1;
      trail_.pop_back();
    }
  }

  int at(std::size_t c, std::size_t d) const { return table_[c][d]; }

  // Scans every relator from every coset, filling forced entries. False on
  // a contradiction.
  bool deduce() {
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t c = 0; c < count_; ++c) {
        for (const auto& r : relators_) {
          const std::size_t len = r.size();
          std::size_t f = c;
          std::size_t i = 0;
          while (i < len && at(f, r[i]) >= 0) f = static_cast<std::size_t>(at(f, r[i++]));
          if (i == len) {
            if (f != c) return false;
            continue;
          }
          std::size_t b = c;
          std::size_t j = len;
          while (j > i && at(b, inverse_direction(r[j - 1])) >= 0) {
            b = static_cast<std::size_t>(at(b, inverse_direction(r[j - 1])));
            --j;
          }
          if (j == i) return false;
          if (j == i + 1) {
            set(f, r[i], b);
            changed = true;
          }
        }
      }
    }
    return true;
  }

  // False when some other base coset yields a smaller standardized table.
  bool canonical() const {
    for (std::size_t b = 1; b < count_; ++b) {
      std::vector<int> fwd(count_, -1);
      std::vector<std::size_t> back{b};
      fwd[b] = 0;
      bool decided = false;
      for (std::size_t i = 0; i < back.size() && !decided; ++i) {
        for (std::size_t d = 0; d < dirs_; ++d) {
          int y = at(back[i], d);
          int x = at(i, d);
          if (y < 0 || x < 0) {
            decided = true;
            break;
          }
          if (fwd[static_cast<std::size_t>(y)] < 0) {
            fwd[static_cast<std::size_t>(y)] = static_cast<int>(back.size());
            back.push_back(static_cast<std::size_t>(y));
          }
          int ny = fwd[static_cast<std::size_t>(y)];
          if (ny < x) return false;
          if (ny > x) {
            decided = true;
            break;
          }
        }
      }
    }
    return true;
  }

  void search() {
    const std::size_t mark = trail_.size();
    if (!deduce() || !canonical()) {
      undo_to(mark);
      return;
    }
    std::size_t c = 0;
    std::size_t d = 0;
    bool open = false;
    for (c = 0; c < count_ && !open; ++c) {
      for (d = 0; d < dirs_; ++d) {
        if (at(c, d) < 0) {
          open = true;
          break;
        }
      }
      if (open) break;
    }
    if (!open) {
      std::vector<std::vector<int>> rows(table_.begin(),
                                         table_.begin() + static_cast<std::ptrdiff_t>(count_));
      found_.emplace_back(n_, std::move(rows));
      undo_to(mark);
      return;
    }
    for (std::size_t t = 0; t < count_; ++t) {
      if (at(t, inverse_direction(d)) >= 0) continue;
      const std::size_t inner = trail_.size();
      set(c, d, t);
      search();
      undo_to(inner);
    }
    if (count_ < max_degree_) {
      const std::size_t inner = trail_.size();
      set(c, d, count_);
      ++count_;
      search();
      --count_;
      undo_to(inner);
    }
    undo_to(mark);
  }

  int n_;
  std::size_t dirs_;
  std::size_t max_degree_;
  std::size_t count_ = 1;
  std::vector<std::vector<int>> table_;
  std::vector<std::pair<std::size_t, std::size_t>> trail_;
  std::vector<std::vector<std::size_t>> relators_;
  std::vector<CosetTable> found_;
};

}  // namespace

CosetTable::CosetTable(int n_generators, std::vector<std::vector<int>> action)
    : n_generators_(n_generators), action_(std::move(action)) {
  const auto dirs = 2 * static_cast<std::size_t>(n_generators_);
  const auto n = static_cast<int>(action_.size());
  if (action_.empty()) throw Error(ErrorKind::invalid_table, "empty coset table");
  for (std::size_t c = 0; c < action_.size(); ++c) {
    if (action_[c].size() != dirs) throw Error(ErrorKind::invalid_table, "row width");
    for (std::size_t d = 0; d < dirs; ++d) {
      int y = action_[c][d];
      if (y < 0 || y >= n) throw Error(ErrorKind::invalid_table, "entry out of range");
      if (action_[static_cast<std::size_t>(y)][inverse_direction(d)] != static_cast<int>(c)) {
        throw Error(ErrorKind::invalid_table, "inverse entries disagree");
      }
    }
  }
}

std::size_t CosetTable::trace(std::size_t coset, const Word& u) const {
  for (Letter l : u) {
    if (l.index() > n_generators_) throw Error(ErrorKind::index_overflow, "trace letter");
    coset = static_cast<std::size_t>(action_[coset][l.direction()]);
  }
  return coset;
}

CosetTable CosetTable::rebased(std::size_t coset) const {
  return CosetTable(n_generators_, standardize(action_, coset));
}

bool CosetTable::is_valid_for(const Presentation& p) const {
  if (p.n_generators() != n_generators_) return false;
  if (standardize(action_, 0).size() != action_.size()) return false;
  for (std::size_t c = 0; c < degree(); ++c) {
    for (const Word& r : p.relators()) {
      if (trace(c, r) != c) return false;
    }
  }
  return true;
}

bool CosetTable::operator<(const CosetTable& o) const {
  if (degree() != o.degree()) return degree() < o.degree();
  return action_ < o.action_;
}

std::size_t CosetTable::conjugacy_class_size() const {
  const auto base = standardize(action_, 0);
  std::size_t same = 0;
  for (std::size_t c = 0; c < degree(); ++c) {
    if (standardize(action_, c) == base) ++same;
  }
  return degree() / same;
}

std::string CosetTable::to_string() const {
  std::ostringstream out;
  for (std::size_t c = 0; c < degree(); ++c) {
    out << c << ':';
    for (int y : action_[c]) out << ' ' << y;
    out << '\n';
  }
  return out.str();
}

std::vector<CosetTable> low_index(const Presentation& p, std::size_t max_degree) {
  if (max_degree < 1 || max_degree > kMaxLowIndexDegree) {
    throw Error(ErrorKind::precondition, "low_index degree bound must lie in [1, 12]");
  }
  return LowIndexSearch(p, max_degree).run();
}

SchreierData schreier_data(const CosetTable& t, Transversal order) {
  const std::size_t d = t.degree();
  const int n = t.n_generators();
  const auto dirs = 2 * static_cast<std::size_t>(n);
  SchreierData out;
  out.representatives.assign(d, Word{});
  std::vector<bool> seen(d, false);
  // tree[c * n + g-1]: positive edge (c, g) lies in the spanning tree
  std::vector<bool> tree(d * static_cast<std::size_t>(n), false);
  auto mark_tree = [&](std::size_t c, Letter l) {
    if (l.sign() > 0) {
      tree[c * static_cast<std::size_t>(n) + static_cast<std::size_t>(l.index() - 1)] = true;
    } else {
      auto src = static_cast<std::size_t>(t.next(c, l));
      tree[src * static_cast<std::size_t>(n) + static_cast<std::size_t>(l.index() - 1)] = true;
    }
  };
  seen[0] = true;
  if (order == Transversal::breadth_first) {
    std::vector<std::size_t> queue{0};
    for (std::size_t head = 0; head < queue.size(); ++head) {
      std::size_t c = queue[head];
      for (std::size_t dir = 0; dir < dirs; ++dir) {
        Letter l = Letter::from_direction(dir);
        auto y = static_cast<std::size_t>(t.next(c, l));
        if (seen[y]) continue;
        seen[y] = true;
        out.representatives[y] = concat(out.representatives[c], Word({l.value()}));
        mark_tree(c, l);
        queue.push_back(y);
      }
    }
  } else {
    std::vector<std::pair<std::size_t, std::size_t>> stack{{0, 0}};
    while (!stack.empty()) {
      auto& [c, dir] = stack.back();
      if (dir == dirs) {
        stack.pop_back();
        continue;
      }
      Letter l = Letter::from_direction(dir++);
      auto y = static_cast<std::size_t>(t.next(c, l));
      if (seen[y]) continue;
      seen[y] = true;
      out.representatives[y] = concat(out.representatives[c], Word({l.value()}));
      mark_tree(c, l);
      stack.emplace_back(y, 0);
    }
  }
  out.slot.assign(d * static_cast<std::size_t>(n), 0);
  for (std::size_t c = 0; c < d; ++c) {
    for (int g = 1; g <= n; ++g) {
      std::size_t s = c * static_cast<std::size_t>(n) + static_cast<std::size_t>(g - 1);
      if (tree[s]) continue;
      auto y = static_cast<std::size_t>(t.next(c, Letter(g, 1)));
      out.generators.push_back(out.representatives[c] * Word({g}) * invert(out.representatives[y]));
      out.slot[s] = static_cast<int>(out.generators.size());
    }
  }
  return out;
}

Word schreier_rewrite(const CosetTable& t, const SchreierData& s, std::size_t coset, const Word& u) {
  const auto n = static_cast<std::size_t>(t.n_generators());
  std::vector<Letter> out;
  std::size_t cur = coset;
  for (Letter l : u) {
    if (l.sign() > 0) {
      int k = s.slot[cur * n + static_cast<std::size_t>(l.index() - 1)];
      if (k) out.emplace_back(k, 1);
      cur = static_cast<std::size_t>(t.next(cur, l));
    } else {
      auto prev = static_cast<std::size_t>(t.next(cur, l));
      int k = s.slot[prev * n + static_cast<std::size_t>(l.index() - 1)];
      if (k) out.emplace_back(k, -1);
      cur = prev;
    }
  }
  if (cur != coset) throw Error(ErrorKind::not_in_subgroup, "word does not return to its coset");
  return Word::reduce(out);
}

Presentation reidemeister_schreier(const Presentation& p, const CosetTable& t, Transversal order) {
  if (!t.is_valid_for(p)) throw Error(ErrorKind::invalid_table, "table does not satisfy the relators");
  const SchreierData s = schreier_data(t, order);
  std::vector<Word> relators;
  for (std::size_t c = 0; c < t.degree(); ++c) {
    for (const Word& r : p.relators()) relators.push_back(schreier_rewrite(t, s, c, r));
  }
  return Presentation(static_cast<int>(s.generators.size()), std::move(relators));
}

}  // namespace exhom
