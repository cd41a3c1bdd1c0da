#include "fpp/mincost_flow.hpp"

#include <limits>
#include <queue>
#include <stdexcept>

namespace fpp {

namespace {
constexpr int64_t kInf = std::numeric_limits<int64_t>::max() / 4;
}

MinCostFlow::MinCostFlow(int num_nodes) : out_(num_nodes), potential_(num_nodes, 0), n_(num_nodes) {}

int MinCostFlow::add_node() {
    out_.emplace_back();
    potential_.push_back(0);
    return n_++;
}

int MinCostFlow::add_arc(int from, int to, int64_t cap, int64_t cost) {
    if (cost < 0) throw std::invalid_argument("MinCostFlow: negative cost");
    const int id = static_cast<int>(arcs_.size());
    arcs_.push_back({to, cap, cost});
    arcs_.push_back({from, 0, -cost});
    out_[from].push_back(id);
    out_[to].push_back(id + 1);
    return id;
}

std::pair<int64_t, int64_t> MinCostFlow::solve(int s, int t, int64_t max_units) {
    int64_t flow = 0, cost = 0;
    std::vector<int64_t> dist(n_);
    std::vector<int> pred_arc(n_);

    while (flow < max_units) {
        dist.assign(n_, kInf);
        pred_arc.assign(n_, -1);
        dist[s] = 0;
        using Item = std::pair<int64_t, int>;
        std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
        heap.emplace(0, s);
        while (!heap.empty()) {
            const auto [d, u] = heap.top();
            heap.pop();
            if (d != dist[u]) continue;
            for (int id : out_[u]) {
                const Arc& a = arcs_[id];
                if (a.cap <= 0) continue;
                const int64_t nd = d + a.cost + potential_[u] - potential_[a.to];
                if (nd < dist[a.to]) {
                    dist[a.to] = nd;
                    pred_arc[a.to] = id;
                    heap.emplace(nd, a.to);
                }
            }
        }
        if (dist[t] >= kInf) break;
        for (int v = 0; v < n_; ++v) {
            if (dist[v] < kInf) potential_[v] += dist[v];
        }
        // unit capacities throughout: push one unit per augmentation
        int64_t push = max_units - flow;
        for (int v = t; v != s;) {
            const Arc& a = arcs_[pred_arc[v]];
            push = std::min(push, a.cap);
            v = arcs_[pred_arc[v] ^ 1].to;
        }
        for (int v = t; v != s;) {
            const int id = pred_arc[v];
            arcs_[id].cap -= push;
            arcs_[id ^ 1].cap += push;
            cost += push * arcs_[id].cost;
            v = arcs_[id ^ 1].to;
        }
        flow += push;
    }
    return {flow, cost};
}

int64_t MinCostFlow::arc_flow(int arc_id) const { return arcs_[arc_id ^ 1].cap; }

std::vector<std::vector<int>> MinCostFlow::unit_paths(int s, int t) const {
    std::vector<int64_t> flow_left(arcs_.size() / 2);
    for (size_t i = 0; i < flow_left.size(); ++i) {
        flow_left[i] = arcs_[2 * i + 1].cap;  // flow on forward arc 2i
    }
    std::vector<std::vector<int>> paths;
    while (true) {
        std::vector<int> path;        // arc ids
        std::vector<int> nodes{s};    // nodes[i] precedes path[i]
        std::vector<int> seen_at(static_cast<size_t>(n_), -1);
        seen_at[s] = 0;
        int v = s;
        while (v != t) {
            int chosen = -1;
            for (int id : out_[v]) {
                if (id % 2 == 0 && flow_left[id / 2] > 0) {
                    chosen = id;
                    break;
                }
            }
            if (chosen < 0) break;
            flow_left[chosen / 2] -= 1;
            path.push_back(chosen);
            v = arcs_[chosen].to;
            if (seen_at[v] >= 0) {
                // walked around a flow cycle; its flow is consumed, drop it
                for (size_t i = seen_at[v] + 1; i < nodes.size(); ++i) seen_at[nodes[i]] = -1;
                path.resize(static_cast<size_t>(seen_at[v]));
                nodes.resize(static_cast<size_t>(seen_at[v]) + 1);
            } else {
                nodes.push_back(v);
                seen_at[v] = static_cast<int>(path.size());
            }
        }
        if (v == t && !path.empty()) {
            paths.push_back(std::move(path));
        } else {
            break;
        }
    }
    return paths;
}

}  // namespace fpp
