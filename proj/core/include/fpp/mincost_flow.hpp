#pragma once

#include <cstdint>
#include <vector>

namespace fpp {

/// Minimum-cost flow by successive shortest augmenting paths with Johnson
/// potentials (costs are non-negative, so initial potentials are zero).
/// The disjointness reductions only ever push two units, so each call is a
/// couple of Dijkstra runs. Fully deterministic: fixed arc order, heap keyed
/// by (distance, node).
class MinCostFlow {
public:
    explicit MinCostFlow(int num_nodes);

    int add_node();
    /// Returns the arc id; the reverse arc is id^1.
    int add_arc(int from, int to, int64_t cap, int64_t cost);

    /// Augments up to `max_units` units from s to t along successively
    /// cheapest paths. Returns (units sent, total cost).
    std::pair<int64_t, int64_t> solve(int s, int t, int64_t max_units);

    int64_t arc_flow(int arc_id) const;
    int arc_head(int arc_id) const { return arcs_[arc_id].to; }
    int64_t arc_cost(int arc_id) const { return arcs_[arc_id].cost; }

    /// Greedy decomposition of the current flow into unit paths from s to t
    /// (zero-cost flow cycles are left behind, which is what every caller
    /// wants). Deterministic: lowest arc id first.
    std::vector<std::vector<int>> unit_paths(int s, int t) const;

private:
    struct Arc {
        int to;
        int64_t cap;
        int64_t cost;
    };
    std::vector<Arc> arcs_;
    std::vector<std::vector<int>> out_;  // arc ids per node
    std::vector<int64_t> potential_;
    int n_;
};

}  // namespace fpp
