#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "paleytk/bitset.hpp"
#include "paleytk/ffield.hpp"

namespace paleytk {

/// Clique witness over the element labels of F_q, strictly increasing.
/// exact is true only when the size has been proven maximum.
struct Clique {
  std::int64_t q = 0;
  std::vector<std::int64_t> vertices;
  bool exact = false;

  std::int64_t size() const { return static_cast<std::int64_t>(vertices.size()); }
  bool operator==(const Clique&) const = default;
};

/// Paley graph P_q: vertex labels [0, q), edge (i, j) iff elem(i) - elem(j)
/// is a quadratic residue. Requires q = 1 mod 4 so that -1 is a square and
/// the adjacency is symmetric. Rows are bitsets; immutable after build.
class PaleyGraph {
 public:
  static PaleyGraph build(const Field& field);  // Error("BadCongruence")

  const Field& field() const { return field_; }
  std::int64_t q() const { return field_.q(); }

  const DynBitset& neighbors(std::int64_t v) const { return adj_[v]; }
  bool adjacent(std::int64_t u, std::int64_t v) const { return adj_[u].test(v); }
  std::int64_t degree(std::int64_t v) const {
    return static_cast<std::int64_t>(adj_[v].count());
  }

  /// DIMACS edge format, 1-indexed, for cross-checks with external solvers.
  void write_dimacs(std::ostream& os) const;

 private:
  explicit PaleyGraph(Field field) : field_(std::move(field)) {}
  Field field_;
  std::vector<DynBitset> adj_;
};

/// True iff all pairs are adjacent; empty sets and singletons are cliques.
/// Labels outside [0, q) raise Error("LabelOutOfRange").
bool verify_clique(const PaleyGraph& graph,
                   const std::vector<std::int64_t>& vertices);

/// Graph-free clique check straight from Euler's criterion on pairwise
/// differences; used where building the full adjacency would be wasteful.
bool is_clique(const Field& field, const std::vector<std::int64_t>& vertices);

struct MaxCliqueOptions {
  std::uint64_t node_budget = 1'000'000'000;  // completes q <= ~3e4 at desk scale
  int threads = 1;
  /// Fix {0,1} in the clique and search N(0) & N(1); any maximum clique maps
  /// onto one containing that edge by translation and residue scaling.
  bool symmetry_reduction = true;
  /// Single-threaded second pass returning the lexicographically smallest
  /// maximum clique containing {0,1}. Reported size never depends on this.
  bool canonical_witness = true;
};

struct MaxCliqueResult {
  Clique clique;
  std::uint64_t nodes_explored = 0;
  bool completed = false;  // false iff the node budget ran out
};

/// Exact branch-and-bound with a greedy-colouring upper bound on bitset
/// candidate sets. If the budget runs out, the best clique found so far is
/// returned with exact = false.
MaxCliqueResult max_clique(const PaleyGraph& graph,
                           const MaxCliqueOptions& options = {});

/// Deterministic seeded maximal clique; a fast witness for large q.
Clique greedy_clique(const PaleyGraph& graph, std::uint64_t seed);

}  // namespace paleytk
