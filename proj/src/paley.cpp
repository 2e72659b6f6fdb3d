#include "paleytk/paley.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <ostream>
#include <random>
#include <string>
#include <thread>

namespace paleytk {

PaleyGraph PaleyGraph::build(const Field& field) {
  const std::int64_t q = field.q();
  if (q % 4 != 1) {
    raise("BadCongruence",
          "Paley graph needs q = 1 mod 4, got q = " + std::to_string(q));
  }
  PaleyGraph g(field);

  std::vector<char> qr(static_cast<std::size_t>(q), 0);
  for (std::int64_t l : field.quadratic_residue_labels()) {
    qr[static_cast<std::size_t>(l)] = 1;
  }

  g.adj_.assign(static_cast<std::size_t>(q),
                DynBitset(static_cast<std::size_t>(q)));
  for (std::int64_t i = 0; i < q; ++i) {
    DynBitset& row = g.adj_[static_cast<std::size_t>(i)];
    for (std::int64_t j = 0; j < q; ++j) {
      if (qr[static_cast<std::size_t>(field.sub_labels(i, j))]) {
        row.set(static_cast<std::size_t>(j));
      }
    }
  }
  return g;
}

void PaleyGraph::write_dimacs(std::ostream& os) const {
  const std::int64_t n = q();
  std::int64_t edges = n * ((n - 1) / 2) / 2;
  os << "p edge " << n << ' ' << edges << '\n';
  for (std::int64_t i = 0; i < n; ++i) {
    for (std::int64_t j = i + 1; j < n; ++j) {
      if (adjacent(i, j)) os << "e " << i + 1 << ' ' << j + 1 << '\n';
    }
  }
}

bool verify_clique(const PaleyGraph& graph,
                   const std::vector<std::int64_t>& vertices) {
  for (std::int64_t v : vertices) {
    if (v < 0 || v >= graph.q()) {
      raise("LabelOutOfRange", "vertex label " + std::to_string(v));
    }
  }
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    for (std::size_t j = i + 1; j < vertices.size(); ++j) {
      if (vertices[i] == vertices[j]) return false;
      if (!graph.adjacent(vertices[i], vertices[j])) return false;
    }
  }
  return true;
}

bool is_clique(const Field& field, const std::vector<std::int64_t>& vertices) {
  for (std::int64_t v : vertices) {
    if (v < 0 || v >= field.q()) {
      raise("LabelOutOfRange", "vertex label " + std::to_string(v));
    }
  }
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    for (std::size_t j = i + 1; j < vertices.size(); ++j) {
      if (vertices[i] == vertices[j]) return false;
      FieldElem diff = field.elem_of(
          field.sub_labels(vertices[i], vertices[j]));
      if (!field.is_quadratic_residue(diff)) return false;
    }
  }
  return true;
}

namespace {

// Branch and bound on an index-compressed induced subgraph. The candidate
// ordering inside the colouring is plain label order: the graph is regular,
// so degree-based orders buy nothing and label order keeps runs reproducible.
class CliqueSearch {
 public:
  CliqueSearch(const PaleyGraph& graph, const std::vector<std::int64_t>& verts,
               std::uint64_t budget)
      : labels_(verts), m_(verts.size()), budget_(budget) {
    adj_.assign(m_, DynBitset(m_));
    for (std::size_t i = 0; i < m_; ++i) {
      for (std::size_t j = 0; j < m_; ++j) {
        if (i != j && graph.adjacent(labels_[i], labels_[j])) {
          adj_[i].set(j);
        }
      }
    }
  }

  // Greedy colouring of P; returns vertices ordered by colour class with
  // their colour numbers (1-based). Bound for a clique inside P is the
  // number of classes.
  void colour_sort(const DynBitset& P, std::vector<std::size_t>& order,
                   std::vector<int>& colour,
                   std::vector<DynBitset>& classes) const {
    order.clear();
    colour.clear();
    std::size_t used = 0;
    P.for_each([&](std::size_t v) {
      std::size_t c = 0;
      while (c < used && classes[c].intersects(adj_[v])) ++c;
      if (c == used) {
        if (used == classes.size()) classes.emplace_back(m_);
        classes[used].clear();
        ++used;
      }
      classes[c].set(v);
    });
    for (std::size_t c = 0; c < used; ++c) {
      classes[c].for_each([&](std::size_t v) {
        order.push_back(v);
        colour.push_back(static_cast<int>(c) + 1);
      });
    }
  }

  int colour_bound(const DynBitset& P, std::vector<DynBitset>& classes) const {
    int used = 0;
    P.for_each([&](std::size_t v) {
      int c = 0;
      while (c < used && classes[static_cast<std::size_t>(c)].intersects(adj_[v]))
        ++c;
      if (c == used) {
        if (static_cast<std::size_t>(used) == classes.size())
          classes.emplace_back(m_);
        classes[static_cast<std::size_t>(used)].clear();
        ++used;
      }
      classes[static_cast<std::size_t>(c)].set(v);
    });
    return used;
  }

  bool charge_node() {
    return nodes_.fetch_add(1, std::memory_order_relaxed) < budget_;
  }
  bool exhausted() const {
    return nodes_.load(std::memory_order_relaxed) >= budget_;
  }
  std::uint64_t nodes() const {
    return std::min<std::uint64_t>(nodes_.load(), budget_);
  }

  int best_size() const { return best_size_.load(std::memory_order_relaxed); }

  void offer(const std::vector<std::size_t>& clique) {
    int sz = static_cast<int>(clique.size());
    int cur = best_size_.load(std::memory_order_relaxed);
    while (sz > cur &&
           !best_size_.compare_exchange_weak(cur, sz,
                                             std::memory_order_relaxed)) {
    }
    std::lock_guard<std::mutex> lock(witness_mutex_);
    if (sz > static_cast<int>(best_witness_.size())) best_witness_ = clique;
  }

  void expand(std::vector<std::size_t>& R, const DynBitset& P, int depth,
              std::vector<std::vector<DynBitset>>& scratch) {
    if (!charge_node()) return;
    if (P.none()) {
      offer(R);
      return;
    }
    if (static_cast<std::size_t>(depth) >= scratch.size()) {
      scratch.emplace_back();
    }
    std::vector<std::size_t> order;
    std::vector<int> colour;
    colour_sort(P, order, colour, scratch[static_cast<std::size_t>(depth)]);

    DynBitset rem = P;
    for (std::size_t idx = order.size(); idx-- > 0;) {
      if (exhausted()) return;
      std::size_t v = order[idx];
      if (static_cast<int>(R.size()) + colour[idx] <= best_size()) {
        return;  // every remaining vertex has colour <= this one
      }
      DynBitset next(m_);
      DynBitset::and_of(rem, adj_[v], next);
      R.push_back(v);
      if (next.none()) {
        offer(R);
      } else {
        expand(R, next, depth + 1, scratch);
      }
      R.pop_back();
      rem.reset(v);
    }
  }

  // Lexicographically smallest clique of size target containing base; the
  // label-ascending DFS with a sound colour prune finds it first.
  bool extend_lex(std::vector<std::size_t>& R, const DynBitset& P, int target,
                  std::vector<std::size_t>& out) {
    if (static_cast<int>(R.size()) == target) {
      out = R;
      return true;
    }
    std::vector<DynBitset> classes;
    if (static_cast<int>(R.size()) + colour_bound(P, classes) < target) {
      return false;
    }
    std::vector<std::size_t> cand;
    P.for_each([&](std::size_t v) { cand.push_back(v); });
    for (std::size_t v : cand) {
      DynBitset next(m_);
      DynBitset::and_of(P, adj_[v], next);
      // candidates after v only, to keep the output ascending
      for (std::size_t u = 0; u <= v; ++u) {
        if (next.test(u)) next.reset(u);
      }
      R.push_back(v);
      if (extend_lex(R, next, target, out)) return true;
      R.pop_back();
    }
    return false;
  }

  void run(int threads) {
    if (m_ == 0) return;
    DynBitset all(m_);
    for (std::size_t i = 0; i < m_; ++i) all.set(i);

    if (threads <= 1) {
      std::vector<std::size_t> R;
      std::vector<std::vector<DynBitset>> scratch;
      expand(R, all, 0, scratch);
      return;
    }

    // Root-level split: workers pull top branches in label order; the shared
    // best size makes the final size schedule-independent.
    std::vector<std::size_t> order;
    std::vector<int> colour;
    std::vector<DynBitset> classes;
    colour_sort(all, order, colour, classes);

    std::atomic<std::size_t> next_branch{0};
    auto worker = [&]() {
      std::vector<std::vector<DynBitset>> scratch;
      for (;;) {
        std::size_t idx = next_branch.fetch_add(1);
        if (idx >= order.size() || exhausted()) return;
        // process branches from the high-colour end, as the sequential
        // search does
        std::size_t pos = order.size() - 1 - idx;
        std::size_t v = order[pos];
        if (!charge_node()) return;
        DynBitset rem(m_);
        for (std::size_t j = 0; j <= pos; ++j) rem.set(order[j]);
        DynBitset P(m_);
        DynBitset::and_of(rem, adj_[v], P);
        std::vector<std::size_t> R{v};
        if (P.none()) {
          offer(R);
        } else {
          expand(R, P, 0, scratch);
        }
      }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  std::vector<std::int64_t> witness_labels() const {
    std::vector<std::int64_t> out;
    for (std::size_t i : best_witness_) out.push_back(labels_[i]);
    std::sort(out.begin(), out.end());
    return out;
  }

  const std::vector<std::int64_t>& labels() const { return labels_; }
  std::size_t size() const { return m_; }

 private:
  std::vector<std::int64_t> labels_;
  std::size_t m_;
  std::uint64_t budget_;
  std::vector<DynBitset> adj_;
  std::atomic<std::uint64_t> nodes_{0};
  std::atomic<int> best_size_{0};
  std::mutex witness_mutex_;
  std::vector<std::size_t> best_witness_;
};

}  // namespace

MaxCliqueResult max_clique(const PaleyGraph& graph,
                           const MaxCliqueOptions& options) {
  if (options.node_budget == 0) raise("BadBudget", "budget must be positive");
  const std::int64_t q = graph.q();

  std::vector<std::int64_t> base;
  std::vector<std::int64_t> verts;
  if (options.symmetry_reduction) {
    // P_q is vertex- and edge-transitive: x -> x - a and scaling by a
    // residue move any edge onto {0, 1}, so some maximum clique contains it.
    base = {0, 1};
    const DynBitset& n0 = graph.neighbors(0);
    const DynBitset& n1 = graph.neighbors(1);
    DynBitset common(static_cast<std::size_t>(q));
    DynBitset::and_of(n0, n1, common);
    common.for_each([&](std::size_t v) {
      verts.push_back(static_cast<std::int64_t>(v));
    });
  } else {
    for (std::int64_t v = 0; v < q; ++v) verts.push_back(v);
  }

  CliqueSearch search(graph, verts, options.node_budget);
  search.run(std::max(1, options.threads));

  std::vector<std::int64_t> witness = search.witness_labels();
  witness.insert(witness.begin(), base.begin(), base.end());
  std::sort(witness.begin(), witness.end());
  if (witness.empty()) witness = {0};  // q >= 5, singleton always exists

  MaxCliqueResult result;
  result.nodes_explored = search.nodes();
  result.completed = !search.exhausted();

  if (result.completed && options.canonical_witness &&
      options.symmetry_reduction) {
    int target = static_cast<int>(witness.size()) - 2;
    std::vector<std::size_t> R, lex;
    DynBitset all(search.size());
    for (std::size_t i = 0; i < search.size(); ++i) all.set(i);
    if (target == 0 || search.extend_lex(R, all, target, lex)) {
      std::vector<std::int64_t> canon = {0, 1};
      for (std::size_t i : lex) canon.push_back(search.labels()[i]);
      std::sort(canon.begin(), canon.end());
      witness = canon;
    }
  }

  result.clique.q = q;
  result.clique.vertices = witness;
  result.clique.exact = result.completed;
  return result;
}

Clique greedy_clique(const PaleyGraph& graph, std::uint64_t seed) {
  const std::int64_t q = graph.q();
  std::mt19937_64 rng(seed);
  std::int64_t start = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(q));

  std::vector<std::int64_t> clique{start};
  DynBitset cand = graph.neighbors(start);
  while (cand.any()) {
    std::size_t count = cand.count();
    std::size_t pick = static_cast<std::size_t>(rng() % count);
    std::int64_t chosen = -1;
    cand.for_each([&](std::size_t v) {
      if (pick == 0 && chosen < 0) chosen = static_cast<std::int64_t>(v);
      if (chosen < 0) --pick;
    });
    clique.push_back(chosen);
    DynBitset next(static_cast<std::size_t>(q));
    DynBitset::and_of(cand, graph.neighbors(chosen), next);
    cand = next;
  }
  std::sort(clique.begin(), clique.end());
  Clique out;
  out.q = q;
  out.vertices = clique;
  out.exact = false;
  return out;
}

}  // namespace paleytk
