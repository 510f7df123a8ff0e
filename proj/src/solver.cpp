#include "crossfam/solver.hpp"

#include <algorithm>

#include "crossfam/errors.hpp"

namespace crossfam {

std::size_t clique_cover_bound(const DenseGraph& g, const SolverBits& cand,
                               std::size_t cap) {
    // First-fit: a vertex joins a clique iff adjacent to all its members.
    // `common[c]` = vertices adjacent to every member of clique c. The
    // workspace is reused across calls; this runs at every search node.
    thread_local std::vector<SolverBits> common;
    std::size_t used = 0;
    for (auto v = cand.find_first(); v != SolverBits::npos; v = cand.find_next(v)) {
        bool placed = false;
        for (std::size_t i = 0; i < used; ++i) {
            if (common[i].test(v)) {
                common[i] &= g.adj[v];
                placed = true;
                break;
            }
        }
        if (!placed) {
            if (used + 1 >= cap) return cap;
            if (used == common.size()) common.emplace_back();
            common[used] = g.adj[v];
            ++used;
        }
    }
    return used;
}

namespace {

struct AlphaSearch {
    const DenseGraph& g;
    const SolveBudget& budget;
    std::uint64_t nodes = 0;
    std::size_t best = 0;

    void run(SolverBits cand, std::size_t cur) {
        if (++nodes > budget.max_nodes)
            throw BudgetExceeded("independent set solver node budget exhausted");
        if (cur > best) best = cur;
        std::size_t remaining = cand.count();
        if (remaining == 0) return;
        if (cur + remaining <= best) return;
        if (cur + clique_cover_bound(g, cand, best - cur + 1) <= best) return;

        // Pivot on the max-degree candidate (ties: lowest index).
        std::size_t pivot = SolverBits::npos, pivot_deg = 0;
        SolverBits tmp(g.n);
        for (auto v = cand.find_first(); v != SolverBits::npos; v = cand.find_next(v)) {
            tmp = g.adj[v];
            tmp &= cand;
            const std::size_t d = tmp.count();
            if (pivot == SolverBits::npos || d > pivot_deg) {
                pivot = v;
                pivot_deg = d;
            }
        }
        SolverBits incl = cand;
        incl &= ~g.adj[pivot];
        incl.reset(pivot);
        run(std::move(incl), cur + 1);
        cand.reset(pivot);
        run(std::move(cand), cur);
    }
};

std::size_t greedy_seed(const DenseGraph& g) {
    // Repeatedly take the min-degree remaining vertex.
    SolverBits cand(g.n);
    cand.set();
    std::size_t size = 0;
    SolverBits tmp(g.n);
    while (cand.any()) {
        std::size_t pick = SolverBits::npos, pick_deg = g.n + 1;
        for (auto v = cand.find_first(); v != SolverBits::npos; v = cand.find_next(v)) {
            tmp = g.adj[v];
            tmp &= cand;
            const std::size_t d = tmp.count();
            if (d < pick_deg) {
                pick = v;
                pick_deg = d;
            }
        }
        ++size;
        cand &= ~g.adj[pick];
        cand.reset(pick);
    }
    return size;
}

} // namespace

std::size_t max_independent_set_size(const DenseGraph& g, const SolveBudget& budget) {
    if (g.n == 0) return 0;
    AlphaSearch s{g, budget};
    s.best = greedy_seed(g) - 1; // strict improvement threshold; re-proves the seed
    SolverBits all(g.n);
    all.set();
    s.run(std::move(all), 0);
    return s.best;
}

namespace {

struct EnumSearch {
    const DenseGraph& g;
    const SolveBudget& budget;
    std::size_t target;
    const std::function<bool(const std::vector<std::uint32_t>&)>& visit;
    std::uint64_t nodes = 0;
    std::uint64_t emitted = 0;
    std::vector<std::uint32_t> cur;
    bool stopped = false;

    void run(SolverBits cand) {
        if (stopped) return;
        if (++nodes > budget.max_nodes)
            throw BudgetExceeded("independent set enumeration node budget exhausted");
        if (cur.size() == target) {
            if (++emitted > budget.max_solutions)
                throw BudgetExceeded("independent set enumeration solution cap exceeded");
            if (!visit(cur)) stopped = true;
            return;
        }
        const std::size_t need = target - cur.size();
        while (!stopped) {
            if (cand.count() < need) return;
            if (clique_cover_bound(g, cand, need) < need) return;
            const auto v = cand.find_first();
            cand.reset(v);
            SolverBits incl = cand;
            incl &= ~g.adj[v];
            cur.push_back(static_cast<std::uint32_t>(v));
            run(std::move(incl));
            cur.pop_back();
            // loop continues with v excluded
        }
    }
};

} // namespace

bool for_each_independent_set_of_size(
    const DenseGraph& g, std::size_t target,
    const std::function<bool(const std::vector<std::uint32_t>&)>& visit,
    const SolveBudget& budget) {
    if (target == 0) return visit({});
    EnumSearch s{g, budget, target, visit, 0, 0, {}, false};
    SolverBits all(g.n);
    all.set();
    s.run(std::move(all));
    return !s.stopped;
}

std::vector<std::vector<std::uint32_t>>
independent_sets_of_size(const DenseGraph& g, std::size_t target, const SolveBudget& budget) {
    // Emitted in lexicographic order of sorted member lists by construction.
    std::vector<std::vector<std::uint32_t>> out;
    for_each_independent_set_of_size(
        g, target,
        [&](const std::vector<std::uint32_t>& s) {
            out.push_back(s);
            return true;
        },
        budget);
    return out;
}

bool for_each_independent_set(const DenseGraph& g,
                              const std::function<bool(const std::vector<std::uint32_t>&)>& visit,
                              const SolveBudget& budget) {
    std::vector<std::uint32_t> cur;
    std::uint64_t nodes = 0;

    // Explicit stack DFS: each frame owns its candidate set.
    struct Frame {
        SolverBits cand;
        bool entered = false;
    };
    if (!visit(cur)) return false;
    std::vector<Frame> stack;
    SolverBits all(g.n);
    all.set();
    stack.push_back({std::move(all), false});
    while (!stack.empty()) {
        Frame& f = stack.back();
        if (f.cand.none()) {
            stack.pop_back();
            if (!cur.empty()) cur.pop_back();
            continue;
        }
        const auto v = f.cand.find_first();
        f.cand.reset(v);
        if (++nodes > budget.max_nodes)
            throw BudgetExceeded("independent set sweep node budget exhausted");
        cur.push_back(static_cast<std::uint32_t>(v));
        if (!visit(cur)) return false;
        SolverBits incl = f.cand;
        incl &= ~g.adj[v];
        stack.push_back({std::move(incl), false});
    }
    return true;
}

} // namespace crossfam
