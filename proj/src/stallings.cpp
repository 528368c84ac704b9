#include "exhom/stallings.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

#include "exhom/error.hpp"

namespace exhom {

namespace {

struct Edge {
  int from;
  int to;
  int label;
  Word transcript;
  bool alive = true;
};

}  // namespace

// Mutable labelled graph used while folding; finalized into a SubgroupGraph.
class GraphBuilder {
 public:
  explicit GraphBuilder(int rank) : rank_(rank) { add_vertex(); }

  int add_vertex() {
    incident_.emplace_back();
    vertex_alive_.push_back(true);
    return static_cast<int>(incident_.size()) - 1;
  }

  void add_edge(int from, int to, int label, Word transcript) {
    edges_.push_back({from, to, label, std::move(transcript)});
    int id = static_cast<int>(edges_.size()) - 1;
    incident_[static_cast<std::size_t>(from)].push_back(id);
    if (to != from) incident_[static_cast<std::size_t>(to)].push_back(id);
  }

  // Closed path at the base reading `w`; the first edge carries `transcript`.
  void add_petal(const Word& w, const Word& transcript) {
    if (w.empty()) return;
    int cur = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      int next = (i + 1 == w.size()) ? 0 : add_vertex();
      Letter l = w[i];
      Word tr = (i == 0) ? transcript : Word{};
      if (l.sign() > 0) {
        add_edge(cur, next, l.index(), tr);
      } else {
        add_edge(next, cur, l.index(), invert(tr));
      }
      cur = next;
    }
  }

  void fold() {
    std::deque<int> work;
    for (std::size_t v = 0; v < incident_.size(); ++v) work.push_back(static_cast<int>(v));
    while (!work.empty()) {
      int v = work.front();
      work.pop_front();
      if (!vertex_alive_[static_cast<std::size_t>(v)]) continue;
      if (fold_at(v, work)) work.push_front(v);
    }
  }

  // Removes hanging trees; only the base may have degree below two.
  void prune() {
    std::vector<int> degree(incident_.size(), 0);
    for (const Edge& e : edges_) {
      if (!e.alive) continue;
      degree[static_cast<std::size_t>(e.from)]++;
      degree[static_cast<std::size_t>(e.to)]++;
    }
    std::deque<int> work;
    for (std::size_t v = 1; v < incident_.size(); ++v) {
      if (vertex_alive_[v] && degree[v] <= 1) work.push_back(static_cast<int>(v));
    }
    while (!work.empty()) {
      int v = work.front();
      work.pop_front();
      auto vi = static_cast<std::size_t>(v);
      if (!vertex_alive_[vi]) continue;
      vertex_alive_[vi] = false;
      for (int id : incident_[vi]) {
        Edge& e = edges_[static_cast<std::size_t>(id)];
        if (!e.alive) continue;
        e.alive = false;
        int other = e.from == v ? e.to : e.from;
        auto oi = static_cast<std::size_t>(other);
        degree[oi] -= (other == v) ? 0 : 1;
        if (other != 0 && other != v && vertex_alive_[oi] && degree[oi] <= 1) {
          work.push_back(other);
        }
      }
    }
  }

  std::size_t cycle_rank() const {
    std::size_t e = 0;
    std::size_t v = 0;
    for (const Edge& ed : edges_) e += ed.alive ? 1 : 0;
    for (bool a : vertex_alive_) v += a ? 1 : 0;
    return e + 1 - v;
  }

  bool lost_transcript() const { return lost_; }

  // Canonical numbering. With `keep_transcripts` the builder's transcripts
  // (over `basis`) are kept; otherwise the spanning-tree basis is computed.
  SubgroupGraph finish(bool keep_transcripts, std::vector<Word> basis) {
    const std::size_t dirs = 2 * static_cast<std::size_t>(rank_);
    // direction table on builder vertices: (edge id, other endpoint)
    std::vector<std::vector<int>> out(incident_.size(), std::vector<int>(dirs, -1));
    for (std::size_t id = 0; id < edges_.size(); ++id) {
      const Edge& e = edges_[id];
      if (!e.alive) continue;
      Letter pos(e.label, 1);
      out[static_cast<std::size_t>(e.from)][pos.direction()] = static_cast<int>(id);
      out[static_cast<std::size_t>(e.to)][pos.inverse().direction()] = static_cast<int>(id);
    }
    std::vector<int> number(incident_.size(), -1);
    std::vector<int> order;
    std::vector<bool> tree_edge(edges_.size(), false);
    number[0] = 0;
    order.push_back(0);
    for (std::size_t head = 0; head < order.size(); ++head) {
      int v = order[head];
      for (std::size_t d = 0; d < dirs; ++d) {
        int id = out[static_cast<std::size_t>(v)][d];
        if (id < 0) continue;
        const Edge& e = edges_[static_cast<std::size_t>(id)];
        int w = (d % 2 == 0) ? e.to : e.from;
        if (number[static_cast<std::size_t>(w)] < 0) {
          number[static_cast<std::size_t>(w)] = static_cast<int>(order.size());
          order.push_back(w);
          tree_edge[static_cast<std::size_t>(id)] = true;
        }
      }
    }

    SubgroupGraph g;
    g.rank_ = rank_;
    g.vertex_count_ = order.size();
    g.next_.assign(order.size() * dirs, -1);
    g.transcript_.assign(order.size() * static_cast<std::size_t>(rank_), Word{});
    std::vector<int> edge_at(order.size() * static_cast<std::size_t>(rank_), -1);
    for (std::size_t id = 0; id < edges_.size(); ++id) {
      const Edge& e = edges_[id];
      if (!e.alive) continue;
      auto u = static_cast<std::size_t>(number[static_cast<std::size_t>(e.from)]);
      auto w = static_cast<std::size_t>(number[static_cast<std::size_t>(e.to)]);
      Letter pos(e.label, 1);
      g.next_[u * dirs + pos.direction()] = static_cast<int>(w);
      g.next_[w * dirs + pos.inverse().direction()] = static_cast<int>(u);
      std::size_t slot = u * static_cast<std::size_t>(rank_) + static_cast<std::size_t>(e.label - 1);
      g.transcript_[slot] = e.transcript;
      edge_at[slot] = static_cast<int>(id);
    }

    if (keep_transcripts) {
      g.basis_ = std::move(basis);
      return g;
    }

    // Tree paths from the base, in canonical numbering.
    std::vector<Word> path(order.size());
    for (std::size_t i = 1; i < order.size(); ++i) {
      // parent is found by scanning the tree edge that discovered it
      int v = order[i];
      for (std::size_t d = 0; d < dirs; ++d) {
        int id = out[static_cast<std::size_t>(v)][d];
        if (id < 0 || !tree_edge[static_cast<std::size_t>(id)]) continue;
        const Edge& e = edges_[static_cast<std::size_t>(id)];
        int parent = (d % 2 == 0) ? e.to : e.from;
        if (number[static_cast<std::size_t>(parent)] >= static_cast<int>(i)) continue;
        // stepping from parent to v reads the inverse direction
        Letter step = Letter::from_direction(d).inverse();
        path[i] = concat(path[static_cast<std::size_t>(number[static_cast<std::size_t>(parent)])],
                         Word::reduce(std::span<const Letter>(&step, 1)));
        break;
      }
    }
    for (std::size_t u = 0; u < order.size(); ++u) {
      for (int label = 1; label <= rank_; ++label) {
        std::size_t slot = u * static_cast<std::size_t>(rank_) + static_cast<std::size_t>(label - 1);
        int id = edge_at[slot];
        if (id < 0) continue;
        if (tree_edge[static_cast<std::size_t>(id)]) {
          g.transcript_[slot] = Word{};
          continue;
        }
        auto w = static_cast<std::size_t>(g.next_[u * dirs + Letter(label, 1).direction()]);
        g.basis_.push_back(concat(concat(path[u], Word({label})), invert(path[w])));
        g.transcript_[slot] = Word({static_cast<int>(g.basis_.size())});
      }
    }
    return g;
  }

 private:
  // Folds one pair of equally labelled edges at v; false when v is folded.
  bool fold_at(int v, std::deque<int>& work) {
    const std::size_t dirs = 2 * static_cast<std::size_t>(rank_);
    std::vector<int> seen(dirs, -1);
    auto& inc = incident_[static_cast<std::size_t>(v)];
    inc.erase(std::remove_if(inc.begin(), inc.end(),
                             [&](int id) { return !edges_[static_cast<std::size_t>(id)].alive; }),
              inc.end());
    for (int id : inc) {
      const Edge& e = edges_[static_cast<std::size_t>(id)];
      for (int s : {1, -1}) {
        if ((s > 0 && e.from != v) || (s < 0 && e.to != v)) continue;
        std::size_t d = Letter(e.label, s).direction();
        if (seen[d] < 0) {
          seen[d] = id;
          continue;
        }
        if (seen[d] == id) continue;
        merge(v, seen[d], id, s, work);
        return true;
      }
    }
    return false;
  }

  void merge(int v, int id1, int id2, int sign, std::deque<int>& work) {
    auto traverse = [&](int id) {
      const Edge& e = edges_[static_cast<std::size_t>(id)];
      return sign > 0 ? e.transcript : invert(e.transcript);
    };
    auto other = [&](int id) {
      const Edge& e = edges_[static_cast<std::size_t>(id)];
      return sign > 0 ? e.to : e.from;
    };
    int w1 = other(id1);
    int w2 = other(id2);
    if (w1 == w2) {
      Edge& e2 = edges_[static_cast<std::size_t>(id2)];
      if (traverse(id1) != traverse(id2)) lost_ = true;
      e2.alive = false;
      return;
    }
    if (w2 == 0) {
      std::swap(id1, id2);
      std::swap(w1, w2);
    }
    Word t1 = traverse(id1);
    Word t2 = traverse(id2);
    edges_[static_cast<std::size_t>(id2)].alive = false;
    const Word shift_out = concat(invert(t1), t2);
    const Word shift_in = invert(shift_out);
    auto& from_list = incident_[static_cast<std::size_t>(w2)];
    auto& to_list = incident_[static_cast<std::size_t>(w1)];
    for (int id : from_list) {
      Edge& e = edges_[static_cast<std::size_t>(id)];
      if (!e.alive) continue;
      bool leaves = e.from == w2;
      bool enters = e.to == w2;
      if (leaves) {
        e.transcript = concat(shift_out, e.transcript);
        e.from = w1;
      }
      if (enters) {
        e.transcript = concat(e.transcript, shift_in);
        e.to = w1;
      }
      if (leaves || enters) to_list.push_back(id);
    }
    from_list.clear();
    vertex_alive_[static_cast<std::size_t>(w2)] = false;
    work.push_back(w1);
    if (v != w2) work.push_back(v);
  }

  int rank_;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> incident_;
  std::vector<bool> vertex_alive_;
  bool lost_ = false;
};

namespace {

void check_rank(std::span<const Word> words, int ambient_rank) {
  for (const Word& w : words) {
    if (w.max_index() > ambient_rank) {
      throw Error(ErrorKind::index_overflow, "word uses generator beyond ambient rank");
    }
  }
}

}  // namespace

SubgroupGraph SubgroupGraph::fold(std::span<const Word> generators, int ambient_rank) {
  check_rank(generators, ambient_rank);
  GraphBuilder b(ambient_rank);
  for (const Word& w : generators) b.add_petal(w, Word{});
  b.fold();
  b.prune();
  return b.finish(false, {});
}

SubgroupGraph SubgroupGraph::fold_with_basis(std::span<const Word> basis, int ambient_rank) {
  check_rank(basis, ambient_rank);
  GraphBuilder b(ambient_rank);
  for (std::size_t j = 0; j < basis.size(); ++j) {
    if (basis[j].empty()) throw Error(ErrorKind::not_free_basis, "basis contains the identity");
    b.add_petal(basis[j], Word({static_cast<int>(j) + 1}));
  }
  b.fold();
  b.prune();
  if (b.cycle_rank() != basis.size() || b.lost_transcript()) {
    throw Error(ErrorKind::not_free_basis,
                std::to_string(basis.size()) + " words generate a subgroup of rank " +
                    std::to_string(b.cycle_rank()));
  }
  return b.finish(true, std::vector<Word>(basis.begin(), basis.end()));
}

SubgroupGraph SubgroupGraph::from_action(const std::vector<std::vector<int>>& action,
                                         int base, int ambient_rank) {
  GraphBuilder b(ambient_rank);
  const int n = static_cast<int>(action.size());
  // builder vertex 0 is the base point; point p maps to builder vertex idx[p]
  std::vector<int> idx(action.size(), -1);
  idx[static_cast<std::size_t>(base)] = 0;
  for (int p = 0; p < n; ++p) {
    if (p != base) idx[static_cast<std::size_t>(p)] = b.add_vertex();
  }
  for (int p = 0; p < n; ++p) {
    const auto& row = action[static_cast<std::size_t>(p)];
    if (static_cast<int>(row.size()) != ambient_rank) {
      throw Error(ErrorKind::rank_mismatch, "action row size differs from ambient rank");
    }
    for (int i = 1; i <= ambient_rank; ++i) {
      int q = row[static_cast<std::size_t>(i - 1)];
      if (q < 0 || q >= n) throw Error(ErrorKind::invalid_table, "action entry out of range");
      b.add_edge(idx[static_cast<std::size_t>(p)], idx[static_cast<std::size_t>(q)], i, Word{});
    }
  }
  b.fold();
  b.prune();
  return b.finish(false, {});
}

SubgroupGraph SubgroupGraph::rose(int ambient_rank) {
  std::vector<Word> gens;
  for (int i = 1; i <= ambient_rank; ++i) gens.push_back(Word({i}));
  return fold(gens, ambient_rank);
}

std::optional<std::size_t> SubgroupGraph::walk(std::size_t v, const Word& u) const {
  for (Letter l : u) {
    if (l.index() > rank_) return std::nullopt;
    int w = target(v, l);
    if (w < 0) return std::nullopt;
    v = static_cast<std::size_t>(w);
  }
  return v;
}

bool SubgroupGraph::is_complete() const {
  return std::none_of(next_.begin(), next_.end(), [](int t) { return t < 0; });
}

std::optional<std::size_t> SubgroupGraph::index() const {
  if (!is_complete()) return std::nullopt;
  return vertex_count_;
}

bool SubgroupGraph::contains(const Word& u) const {
  auto end = walk(0, u);
  return end && *end == 0;
}

Word SubgroupGraph::rewrite(const Word& u) const {
  std::vector<Letter> out;
  std::size_t v = 0;
  const auto r = static_cast<std::size_t>(rank_);
  for (Letter l : u) {
    int w = l.index() <= rank_ ? target(v, l) : -1;
    if (w < 0) throw Error(ErrorKind::not_in_subgroup, "path leaves the subgroup graph");
    if (l.sign() > 0) {
      const Word& t = transcript_[v * r + static_cast<std::size_t>(l.index() - 1)];
      out.insert(out.end(), t.begin(), t.end());
    } else {
      const Word& t = transcript_[static_cast<std::size_t>(w) * r + static_cast<std::size_t>(l.index() - 1)];
      for (auto it = t.letters().rbegin(); it != t.letters().rend(); ++it) {
        out.push_back(it->inverse());
      }
    }
    v = static_cast<std::size_t>(w);
  }
  if (v != 0) throw Error(ErrorKind::not_in_subgroup, "path does not return to the base");
  return Word::reduce(out);
}

bool SubgroupGraph::canonical_less(const SubgroupGraph& other) const {
  if (rank_ != other.rank_) return rank_ < other.rank_;
  if (vertex_count_ != other.vertex_count_) return vertex_count_ < other.vertex_count_;
  return next_ < other.next_;
}

std::string SubgroupGraph::canonical_text() const {
  std::ostringstream out;
  out << "vertices " << vertex_count_ << '\n';
  for (std::size_t u = 0; u < vertex_count_; ++u) {
    for (int label = 1; label <= rank_; ++label) {
      int w = target(u, Letter(label, 1));
      if (w >= 0) out << u << ' ' << label << ' ' << w << '\n';
    }
  }
  return out.str();
}

SubgroupGraph intersect(const SubgroupGraph& g1, const SubgroupGraph& g2) {
  if (g1.ambient_rank() != g2.ambient_rank()) {
    throw Error(ErrorKind::rank_mismatch, "intersection of graphs over different ranks");
  }
  const int rank = g1.ambient_rank();
  const std::size_t n2 = g2.vertex_count();
  GraphBuilder b(rank);
  std::vector<int> id(g1.vertex_count() * n2, -1);
  std::vector<std::pair<std::size_t, std::size_t>> queue{{0, 0}};
  id[0] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    auto [u1, u2] = queue[head];
    for (std::size_t d = 0; d < 2 * static_cast<std::size_t>(rank); ++d) {
      Letter l = Letter::from_direction(d);
      int w1 = g1.target(u1, l);
      int w2 = g2.target(u2, l);
      if (w1 < 0 || w2 < 0) continue;
      std::size_t key = static_cast<std::size_t>(w1) * n2 + static_cast<std::size_t>(w2);
      if (id[key] < 0) {
        id[key] = b.add_vertex();
        queue.emplace_back(static_cast<std::size_t>(w1), static_cast<std::size_t>(w2));
      }
      if (l.sign() > 0) b.add_edge(id[u1 * n2 + u2], id[key], l.index(), Word{});
    }
  }
  b.fold();
  b.prune();
  return b.finish(false, {});
}

SubgroupGraph image_graph(std::span<const Word> images, const SubgroupGraph& g) {
  std::vector<Word> gens;
  gens.reserve(g.basis().size());
  for (const Word& w : g.basis()) gens.push_back(apply_endo(images, w));
  return SubgroupGraph::fold(gens, g.ambient_rank());
}

}  // namespace exhom
