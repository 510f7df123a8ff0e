#pragma once

// Exact maximum-independent-set machinery on small dense graphs:
// branch-and-bound with a greedy clique-cover upper bound, plus full
// enumeration of all independent sets of a given size. Deterministic.

#include <cstdint>
#include <functional>
#include <vector>

#include <boost/dynamic_bitset.hpp>

namespace crossfam {

using SolverBits = boost::dynamic_bitset<std::uint64_t>;

struct DenseGraph {
    std::size_t n = 0;
    std::vector<SolverBits> adj; // adj[v], bit u set <=> (u,v) edge; irreflexive

    explicit DenseGraph(std::size_t n_ = 0) : n(n_), adj(n_, SolverBits(n_)) {}
    void add_edge(std::size_t u, std::size_t v) {
        adj[u].set(v);
        adj[v].set(u);
    }
};

struct SolveBudget {
    std::uint64_t max_nodes = std::uint64_t{1} << 26;
    std::uint64_t max_solutions = 1'000'000; // cap for enumeration
};

/// Exact alpha by branch and bound. Throws BudgetExceeded past max_nodes.
std::size_t max_independent_set_size(const DenseGraph& g, const SolveBudget& budget = {});

/// All independent sets of size exactly `target`, canonically ordered
/// (lexicographic on sorted vertex lists). Throws BudgetExceeded when the
/// node or solution budget is exhausted.
std::vector<std::vector<std::uint32_t>>
independent_sets_of_size(const DenseGraph& g, std::size_t target,
                         const SolveBudget& budget = {});

/// Streaming form: visits each size-`target` independent set in canonical
/// order; `visit` may return false to stop early (then this returns false).
bool for_each_independent_set_of_size(
    const DenseGraph& g, std::size_t target,
    const std::function<bool(const std::vector<std::uint32_t>&)>& visit,
    const SolveBudget& budget = {});

/// Greedy clique cover of the vertices in `cand`; the number of cliques is an
/// upper bound on the independence number of the induced subgraph. Stops and
/// returns `cap` as soon as the count reaches it (callers prune only on
/// values below their threshold, so capping loses nothing).
std::size_t clique_cover_bound(const DenseGraph& g, const SolverBits& cand,
                               std::size_t cap = SIZE_MAX);

/// Visits every independent set (including the empty one) in canonical DFS
/// order; `visit(members)` may return false to stop early. Returns false when
/// stopped early. Throws BudgetExceeded past max_nodes.
bool for_each_independent_set(const DenseGraph& g,
                              const std::function<bool(const std::vector<std::uint32_t>&)>& visit,
                              const SolveBudget& budget = {});

} // namespace crossfam
