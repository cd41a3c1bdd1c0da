#include "fpp/disjoint.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <set>

#include "fpp/mincost_flow.hpp"

namespace fpp {

const char* to_string(Ternary t) {
    switch (t) {
        case Ternary::True: return "true";
        case Ternary::False: return "false";
        default: return "undecided";
    }
}

namespace {

bool compatible(const GeodesicDag& a, const GeodesicDag& b) {
    return a.box == b.box && a.env_fingerprint == b.env_fingerprint &&
           a.plane_n == b.plane_n && a.scale == b.scale;
}

// Vertex-split flow network over the union of one or two DAGs. Entities are
// lattice vertices followed by deduplicated hyperplane endpoints; entity k
// splits into nodes 2k (in) and 2k+1 (out). Vertices in `cap2` may carry both
// units (shared source or shared target); everything else has capacity 1.
class PairFlow {
public:
    PairFlow(const GeodesicDag& a, const GeodesicDag* b, const std::set<VertexId>& cap2) {
        for (VertexId v : a.vertices) verts_.push_back(v);
        if (b) {
            for (VertexId v : b->vertices) verts_.push_back(v);
        }
        std::sort(verts_.begin(), verts_.end());
        verts_.erase(std::unique(verts_.begin(), verts_.end()), verts_.end());
        for (const auto& t : a.terminals) eps_.push_back(t.endpoint);
        if (b) {
            for (const auto& t : b->terminals) eps_.push_back(t.endpoint);
        }
        std::sort(eps_.begin(), eps_.end());
        eps_.erase(std::unique(eps_.begin(), eps_.end()), eps_.end());

        const int nv = static_cast<int>(verts_.size());
        const int ne = static_cast<int>(eps_.size());
        source_node_ = 2 * (nv + ne);
        sink_node_ = source_node_ + 1;
        mcf_ = std::make_unique<MinCostFlow>(sink_node_ + 2);

        for (int k = 0; k < nv; ++k) {
            mcf_->add_arc(2 * k, 2 * k + 1, cap2.count(verts_[k]) ? 2 : 1, 0);
        }
        for (int k = 0; k < ne; ++k) {
            const int base = 2 * (nv + k);
            mcf_->add_arc(base, base + 1, 1, 0);
        }
        add_dag(a);
        if (b) add_dag(*b);
        if (a.target) add_target_arc(*a.target, cap2.count(*a.target) ? 2 : 1);
        if (b && b->target) add_target_arc(*b->target, cap2.count(*b->target) ? 2 : 1);
    }

    void add_source(VertexId v, int64_t cap) {
        mcf_->add_arc(source_node_, vin(v), cap, 0);
    }

    std::pair<int64_t, int64_t> solve(int64_t units) {
        return mcf_->solve(source_node_, sink_node_, units);
    }

    /// Decomposed unit paths as GeoPaths, keyed by their start vertex.
    std::vector<std::pair<VertexId, GeoPath>> decompose() const {
        std::vector<std::pair<VertexId, GeoPath>> out;
        for (const auto& arc_ids : mcf_->unit_paths(source_node_, sink_node_)) {
            GeoPath p;
            for (int id : arc_ids) {
                const int head = mcf_->arc_head(id);
                if (head == sink_node_ || head % 2 != 0) continue;
                const int entity = head / 2;
                if (entity < static_cast<int>(verts_.size())) {
                    p.verts.push_back(verts_[static_cast<size_t>(entity)]);
                } else {
                    p.endpoint = eps_[static_cast<size_t>(entity - verts_.size())];
                }
            }
            for (int id : arc_ids) p.cost += mcf_->arc_cost(id);
            out.emplace_back(p.verts.front(), std::move(p));
        }
        return out;
    }

private:
    int vid(VertexId v) const {
        return static_cast<int>(std::lower_bound(verts_.begin(), verts_.end(), v) - verts_.begin());
    }
    int eid(const HyperplaneEndpoint& e) const {
        return static_cast<int>(std::lower_bound(eps_.begin(), eps_.end(), e) - eps_.begin());
    }
    int vin(VertexId v) const { return 2 * vid(v); }
    int vout(VertexId v) const { return 2 * vid(v) + 1; }

    void add_dag(const GeodesicDag& dag) {
        for (const auto& e : dag.edges) {
            mcf_->add_arc(vout(e.from), vin(e.to), 1, e.w);
        }
        for (const auto& t : dag.terminals) {
            const int base = 2 * (static_cast<int>(verts_.size()) + eid(t.endpoint));
            mcf_->add_arc(vout(t.attach), base, 1, t.cost);
            if (!ep_sunk_.count(eid(t.endpoint))) {
                ep_sunk_.insert(eid(t.endpoint));
                mcf_->add_arc(base + 1, sink_node_, 1, 0);
            }
        }
    }

    void add_target_arc(VertexId t, int64_t cap) {
        if (target_sunk_.count(t)) return;
        target_sunk_.insert(t);
        mcf_->add_arc(vout(t), sink_node_, cap, 0);
    }

    std::vector<VertexId> verts_;
    std::vector<HyperplaneEndpoint> eps_;
    std::set<int> ep_sunk_;
    std::set<VertexId> target_sunk_;
    int source_node_ = 0, sink_node_ = 0;
    std::unique_ptr<MinCostFlow> mcf_;
};

// ----- Tier 3: exact search over pairs of simple DAG paths --------------

struct AdjMap {
    std::map<VertexId, std::vector<std::pair<VertexId, int64_t>>> succ;
    explicit AdjMap(const GeodesicDag& dag) {
        for (const auto& e : dag.edges) succ[e.from].emplace_back(e.to, e.w);
        for (auto& [v, s] : succ) std::sort(s.begin(), s.end());
    }
};

class PairSearch {
public:
    PairSearch(const GeodesicDag& a, const GeodesicDag& b, const Budget& budget)
        : a_(a), b_(b), adj_a_(a), adj_b_(b), budget_(budget) {}

    // Ternary::True with witness filled / False when exhausted / Undecided on budget.
    Ternary run() {
        path_a_ = {a_.source};
        cost_a_ = 0;
        blocked_.insert(a_.source);
        const bool found = dfs_a(a_.source);
        if (found) return Ternary::True;
        return out_of_budget_ ? Ternary::Undecided : Ternary::False;
    }

    Witness witness() const {
        Witness w;
        w.box = a_.box;
        w.a = {path_a_, {}, cost_a_};
        w.b = {path_b_, {}, cost_b_};
        return w;
    }

private:
    bool spend() {
        if (++nodes_ > budget_.max_search_nodes) {
            out_of_budget_ = true;
            return false;
        }
        return true;
    }

    bool dfs_a(VertexId v) {
        if (out_of_budget_) return false;
        if (v == *a_.target) {
            return b_reachable() && dfs_b_start();
        }
        auto it = adj_a_.succ.find(v);
        if (it == adj_a_.succ.end()) return false;
        for (const auto& [to, w] : it->second) {
            if (blocked_.count(to)) continue;
            if (!spend()) return false;
            blocked_.insert(to);
            path_a_.push_back(to);
            cost_a_ += w;
            if (dfs_a(to)) return true;
            cost_a_ -= w;
            path_a_.pop_back();
            blocked_.erase(to);
        }
        return false;
    }

    // cheap admissible filter: can t2 still be reached at all?
    bool b_reachable() {
        std::set<VertexId> seen;
        std::vector<VertexId> stack;
        if (blocked_.count(b_.source)) return false;
        stack.push_back(b_.source);
        seen.insert(b_.source);
        while (!stack.empty()) {
            const VertexId v = stack.back();
            stack.pop_back();
            if (!spend()) return false;
            if (v == *b_.target) return true;
            auto it = adj_b_.succ.find(v);
            if (it == adj_b_.succ.end()) continue;
            for (const auto& [to, w] : it->second) {
                if (blocked_.count(to) || seen.count(to)) continue;
                seen.insert(to);
                stack.push_back(to);
            }
        }
        return false;
    }

    bool dfs_b_start() {
        path_b_ = {b_.source};
        cost_b_ = 0;
        used_b_ = {b_.source};
        return dfs_b(b_.source);
    }

    bool dfs_b(VertexId v) {
        if (out_of_budget_) return false;
        if (v == *b_.target) return true;
        auto it = adj_b_.succ.find(v);
        if (it == adj_b_.succ.end()) return false;
        for (const auto& [to, w] : it->second) {
            if (blocked_.count(to) || used_b_.count(to)) continue;
            if (!spend()) return false;
            used_b_.insert(to);
            path_b_.push_back(to);
            cost_b_ += w;
            if (dfs_b(to)) return true;
            cost_b_ -= w;
            path_b_.pop_back();
            used_b_.erase(to);
        }
        return false;
    }

    const GeodesicDag &a_, &b_;
    AdjMap adj_a_, adj_b_;
    Budget budget_;
    int64_t nodes_ = 0;
    bool out_of_budget_ = false;
    std::set<VertexId> blocked_, used_b_;
    std::vector<VertexId> path_a_, path_b_;
    int64_t cost_a_ = 0, cost_b_ = 0;
};

Witness make_witness(const Box& box, GeoPath a, GeoPath b) {
    Witness w;
    w.box = box;
    w.a = std::move(a);
    w.b = std::move(b);
    return w;
}

// vertex-set + endpoint disjointness of two concrete paths
bool paths_disjoint(const GeoPath& a, const GeoPath& b) {
    std::set<VertexId> sa(a.verts.begin(), a.verts.end());
    for (VertexId v : b.verts) {
        if (sa.count(v)) return false;
    }
    if (a.endpoint && b.endpoint && *a.endpoint == *b.endpoint) return false;
    return true;
}

}  // namespace

Decision internally_disjoint_pair(const GeodesicDag& dag) {
    if (dag.edges.empty() && dag.terminals.empty()) {
        throw std::domain_error("internally_disjoint_pair: empty DAG");
    }
    std::set<VertexId> cap2{dag.source};
    if (dag.target) cap2.insert(*dag.target);
    PairFlow flow(dag, nullptr, cap2);
    flow.add_source(dag.source, 2);
    const auto [units, cost] = flow.solve(2);
    if (units < 2) return Decision::no("menger");
    auto paths = flow.decompose();
    auto w = make_witness(dag.box, std::move(paths[0].second), std::move(paths[1].second));
    (void)cost;
    return Decision::yes("menger", std::move(w));
}

Decision disjoint_dag_pair(const GeodesicDag& a, const GeodesicDag& b, const Budget& budget) {
    if (!compatible(a, b)) throw std::invalid_argument("disjoint_dag_pair: DAGs not comparable");
    if (a.source == b.source) throw std::invalid_argument("disjoint_dag_pair: same source");

    PairFlow flow(a, &b, {});
    flow.add_source(a.source, 1);
    flow.add_source(b.source, 1);
    const auto [units, cost] = flow.solve(2);
    const int64_t want = a.total + b.total;

    if (units < 2) return Decision::no("flow-infeasible");
    if (a.is_hyperplane()) {
        // shared sink: cost equality alone forces both decomposed paths to be
        // geodesics for their own sources; exact either way
        if (cost != want) return Decision::no("flow-exact");
        auto paths = flow.decompose();
        GeoPath pa = paths[0].first == a.source ? paths[0].second : paths[1].second;
        GeoPath pb = paths[0].first == a.source ? paths[1].second : paths[0].second;
        return Decision::yes("flow-exact", make_witness(a.box, std::move(pa), std::move(pb)));
    }

    if (cost > want) return Decision::no("tier1");
    auto paths = flow.decompose();
    GeoPath& p0 = paths[0].second;
    GeoPath& p1 = paths[1].second;
    const bool first_is_a = paths[0].first == a.source;
    GeoPath& pa = first_is_a ? p0 : p1;
    GeoPath& pb = first_is_a ? p1 : p0;
    if (cost == want && pa.verts.back() == *a.target && pb.verts.back() == *b.target) {
        return Decision::yes("tier2", make_witness(a.box, std::move(pa), std::move(pb)));
    }

    PairSearch search(a, b, budget);
    switch (search.run()) {
        case Ternary::True: return Decision::yes("tier3", search.witness());
        case Ternary::False: return Decision::no("tier3");
        default: return Decision::open("budget");
    }
}

Decision source_disjoint_hyperplane_pair(const Environment& env, int64_t i, int64_t j, int64_t n) {
    if (i == j) throw std::invalid_argument("source_disjoint_hyperplane_pair: i == j");
    const Box& box = env.box();
    Coords ci(box.dim(), 0), cj(box.dim(), 0);
    ci[1] = i;
    cj[1] = j;
    const auto gi = hyperplane_dag(env, box.index_of(ci), n);
    const auto gj = hyperplane_dag(env, box.index_of(cj), n);
    return disjoint_dag_pair(gi, gj, Budget{});
}

Decision paired_disjoint(const Environment& env, VertexId s1, VertexId t1, VertexId s2,
                         VertexId t2, const Budget& budget) {
    if (s1 == s2 || s1 == t2 || t1 == s2 || t1 == t2) {
        throw std::domain_error("paired_disjoint: terminal pairs overlap");
    }
    const auto a = geodesic_dag(env, s1, t1);
    const auto b = geodesic_dag(env, s2, t2);
    return disjoint_dag_pair(a, b, budget);
}

Decision intersects_all_pairs(const GeodesicDag& a, const GeodesicDag& b, const Budget& budget) {
    Decision d = disjoint_dag_pair(a, b, budget);
    switch (d.outcome) {
        case Ternary::True: {
            Decision out = Decision::no("negation-" + d.reason);
            out.witness = std::move(d.witness);  // the disjoint pair refuting "all intersect"
            return out;
        }
        case Ternary::False: return {Ternary::True, "negation-" + d.reason, {}};
        default: return d;
    }
}

std::vector<GeoPath> all_geodesics(const GeodesicDag& dag, int64_t cap) {
    AdjMap adj(dag);
    std::map<VertexId, const GeodesicDag::Terminal*> term;
    for (const auto& t : dag.terminals) term[t.attach] = &t;

    std::vector<GeoPath> out;
    std::vector<VertexId> path{dag.source};
    std::set<VertexId> used{dag.source};
    int64_t cost = 0;

    auto dfs = [&](auto&& self, VertexId v) -> void {
        if (dag.target && v == *dag.target) {
            if (static_cast<int64_t>(out.size()) >= cap) throw OracleOverflow();
            out.push_back({path, {}, cost});
            return;  // simple paths cannot extend past the target
        }
        if (!dag.target) {
            if (auto it = term.find(v); it != term.end()) {
                if (static_cast<int64_t>(out.size()) >= cap) throw OracleOverflow();
                out.push_back({path, it->second->endpoint, cost + it->second->cost});
                // fall through: geodesics may also continue left of the plane
            }
        }
        auto it = adj.succ.find(v);
        if (it == adj.succ.end()) return;
        for (const auto& [to, w] : it->second) {
            if (used.count(to)) continue;
            used.insert(to);
            path.push_back(to);
            cost += w;
            self(self, to);
            cost -= w;
            path.pop_back();
            used.erase(to);
        }
    };
    dfs(dfs, dag.source);
    return out;
}

Decision oracle_disjoint_dag_pair(const GeodesicDag& a, const GeodesicDag& b, int64_t cap) {
    const auto ga = all_geodesics(a, cap);
    const auto gb = all_geodesics(b, cap);
    for (const auto& pa : ga) {
        for (const auto& pb : gb) {
            if (paths_disjoint(pa, pb)) {
                return Decision::yes("oracle", make_witness(a.box, pa, pb));
            }
        }
    }
    return Decision::no("oracle");
}

Decision oracle_pair_disjoint(const Environment& env, VertexId s1, VertexId t1, VertexId s2,
                              VertexId t2, int64_t cap) {
    if (s1 == s2 || s1 == t2 || t1 == s2 || t1 == t2) {
        throw std::domain_error("oracle_pair_disjoint: terminal pairs overlap");
    }
    const auto a = geodesic_dag(env, s1, t1);
    const auto b = geodesic_dag(env, s2, t2);
    return oracle_disjoint_dag_pair(a, b, cap);
}

Decision oracle_internally_disjoint(const GeodesicDag& dag, int64_t cap) {
    const auto gs = all_geodesics(dag, cap);
    for (size_t i = 0; i < gs.size(); ++i) {
        for (size_t j = i + 1; j < gs.size(); ++j) {
            std::set<VertexId> inter;
            const std::set<VertexId> si(gs[i].verts.begin(), gs[i].verts.end());
            for (VertexId v : gs[j].verts) {
                if (si.count(v)) inter.insert(v);
            }
            bool ok;
            if (dag.target) {
                ok = inter == std::set<VertexId>{dag.source, *dag.target};
            } else {
                ok = inter == std::set<VertexId>{dag.source} &&
                     !(*gs[i].endpoint == *gs[j].endpoint);
            }
            if (ok) return Decision::yes("oracle", make_witness(dag.box, gs[i], gs[j]));
        }
    }
    return Decision::no("oracle");
}

Decision two_source_shared_target_pair(const Environment& env, VertexId s1, VertexId s2,
                                       VertexId u) {
    if (s1 == s2 || u == s1 || u == s2) {
        throw std::domain_error("two_source_shared_target_pair: degenerate terminals");
    }
    const auto a = geodesic_dag(env, s1, u);
    const auto b = geodesic_dag(env, s2, u);
    PairFlow flow(a, &b, {u});
    flow.add_source(s1, 1);
    flow.add_source(s2, 1);
    const auto [units, cost] = flow.solve(2);
    if (units < 2 || cost != a.total + b.total) return Decision::no("flow-exact");
    auto paths = flow.decompose();
    GeoPath pa = paths[0].first == s1 ? paths[0].second : paths[1].second;
    GeoPath pb = paths[0].first == s1 ? paths[1].second : paths[0].second;
    return Decision::yes("flow-exact", make_witness(a.box, std::move(pa), std::move(pb)));
}

bool verify_witness_disjoint(const Environment& env, const GeodesicDag& a, const GeodesicDag& b,
                             const Witness& w) {
    return verify_geodesic(env, a, w.a) && verify_geodesic(env, b, w.b) &&
           paths_disjoint(w.a, w.b);
}

bool verify_witness_internal(const Environment& env, const GeodesicDag& dag, const Witness& w) {
    if (!verify_geodesic(env, dag, w.a) || !verify_geodesic(env, dag, w.b)) return false;
    std::set<VertexId> inter;
    const std::set<VertexId> sa(w.a.verts.begin(), w.a.verts.end());
    for (VertexId v : w.b.verts) {
        if (sa.count(v)) inter.insert(v);
    }
    if (dag.target) return inter == std::set<VertexId>{dag.source, *dag.target};
    return inter == std::set<VertexId>{dag.source} && w.a.endpoint && w.b.endpoint &&
           !(*w.a.endpoint == *w.b.endpoint);
}

}  // namespace fpp
