#include "fpp/geodesic.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace fpp {

namespace {

void collect_vertices(GeodesicDag& dag) {
    auto& vs = dag.vertices;
    vs.push_back(dag.source);
    if (dag.target) vs.push_back(*dag.target);
    for (const auto& e : dag.edges) {
        vs.push_back(e.from);
        vs.push_back(e.to);
    }
    for (const auto& t : dag.terminals) vs.push_back(t.attach);
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
}

struct HyperplaneLayout {
    Box lbox;            // columns x1 <= last_col
    Coord last_col = 0;  // rightmost lattice column before H_n
    bool odd = false;
};

HyperplaneLayout hyperplane_layout(const Environment& env, int64_t n) {
    if (n < 1) throw std::domain_error("hyperplane: n must be >= 1");
    const bool odd = (n % 2 != 0);
    if (odd && env.scale() % 2 != 0) {
        throw std::domain_error("hyperplane: odd n requires doubled scale");
    }
    const Coord last_col = odd ? (n - 1) / 2 : n / 2 - 1;
    const Box& box = env.box();
    if (box.lo(0) > last_col || box.hi(0) < last_col + 1) {
        throw std::out_of_range("hyperplane: H_n not inside box");
    }
    return {box.restricted_axis0(box.lo(0), last_col), last_col, odd};
}

// Final-step cost from a rightmost-column vertex: the crossing edge's full
// weight for even n (step onto the plane vertex), half of it for odd n.
int64_t terminal_cost(const Environment& env, const HyperplaneLayout& lay, const Coords& a) {
    const VertexId v = env.box().index_of(a);
    const int64_t w = env.weight(v, 0);
    if (lay.odd) {
        if (w % 2 != 0) throw std::domain_error("hyperplane: odd crossing weight at doubled scale");
        return w / 2;
    }
    return w;
}

HyperplaneLayout checked_layout(const Environment& env, VertexId x, int64_t n) {
    auto lay = hyperplane_layout(env, n);
    if (2 * env.box().coord_of(x, 0) >= n) {
        throw std::domain_error("hyperplane: source not strictly left of H_n");
    }
    return lay;
}

HyperplaneEndpoint make_endpoint(const HyperplaneLayout& lay, const Coords& a) {
    HyperplaneEndpoint ep;
    ep.odd = lay.odd;
    ep.lateral.assign(a.begin() + 1, a.end());
    ep.near_vertex = a;
    if (!lay.odd) ep.near_vertex[0] += 1;  // the plane vertex itself
    return ep;
}

void scan_dag_edges(const Environment& env, const Box& box, const std::vector<int64_t>& from_src,
                    const std::vector<int64_t>& to_tgt, int64_t total, GeodesicDag& dag) {
    box.for_each_canonical_edge([&](VertexId u, int k, EdgeSlot) {
        const VertexId v = *box.neighbor(u, k, +1);
        const int64_t w = env.weight_between(u, v);
        if (from_src[static_cast<size_t>(u)] + w + to_tgt[static_cast<size_t>(v)] == total) {
            dag.edges.push_back({u, v, w});
        }
        if (from_src[static_cast<size_t>(v)] + w + to_tgt[static_cast<size_t>(u)] == total) {
            dag.edges.push_back({v, u, w});
        }
    });
}

}  // namespace

std::vector<HyperplaneEndpoint> GeodesicDag::endpoints() const {
    std::vector<HyperplaneEndpoint> out;
    out.reserve(terminals.size());
    for (const auto& t : terminals) out.push_back(t.endpoint);
    std::sort(out.begin(), out.end());
    return out;
}

GeodesicDag geodesic_dag_from_fields(const Environment& env, VertexId s, VertexId t,
                                     const TimeField& from_s, const TimeField& from_t) {
    if (s == t) throw std::invalid_argument("geodesic_dag: s == t");
    GeodesicDag dag;
    dag.box = env.box();
    dag.scale = env.scale();
    dag.env_fingerprint = from_s.env_fingerprint;
    dag.source = s;
    dag.target = t;
    dag.total = from_s.at(t);
    scan_dag_edges(env, env.box(), from_s.dist, from_t.dist, dag.total, dag);
    collect_vertices(dag);
    return dag;
}

GeodesicDag geodesic_dag(const Environment& env, VertexId s, VertexId t, SpBackend backend) {
    const auto fs = shortest_field_seeded(env, {{s, 0}}, backend);
    const auto ft = shortest_field_seeded(env, {{t, 0}}, backend);
    return geodesic_dag_from_fields(env, s, t, fs, ft);
}

std::pair<Box, TimeField> hyperplane_field(const Environment& env, int64_t n) {
    const auto lay = hyperplane_layout(env, n);
    const Environment lenv = env.restricted(lay.lbox);
    std::vector<std::pair<VertexId, int64_t>> seeds;
    Coords a(env.box().dim());
    for (VertexId v = 0; v < lay.lbox.vertex_count(); ++v) {
        if (lay.lbox.coord_of(v, 0) != lay.last_col) continue;
        lay.lbox.coords_of(v, a);
        seeds.emplace_back(v, terminal_cost(env, lay, a));
    }
    return {lay.lbox, shortest_field_seeded(lenv, seeds)};
}

int64_t hyperplane_time(const Environment& env, VertexId x, int64_t n) {
    checked_layout(env, x, n);
    const Coords xc = env.box().coords_of(x);
    const auto [lbox, field] = hyperplane_field(env, n);
    return field.at(lbox.index_of(xc));
}

GeodesicDag hyperplane_dag(const Environment& env, VertexId x, int64_t n, SpBackend backend) {
    const auto lay = checked_layout(env, x, n);
    const Environment lenv = env.restricted(lay.lbox);
    const VertexId xl = lay.lbox.index_of(env.box().coords_of(x));

    std::vector<std::pair<VertexId, int64_t>> plane_seeds;
    std::vector<std::pair<VertexId, int64_t>> costs;  // (attach vertex, final-step cost)
    Coords a(env.box().dim());
    for (VertexId v = 0; v < lay.lbox.vertex_count(); ++v) {
        if (lay.lbox.coord_of(v, 0) != lay.last_col) continue;
        lay.lbox.coords_of(v, a);
        const int64_t c = terminal_cost(env, lay, a);
        plane_seeds.emplace_back(v, c);
        costs.emplace_back(v, c);
    }
    const auto from_x = shortest_field_seeded(lenv, {{xl, 0}}, backend);
    const auto to_plane = shortest_field_seeded(lenv, plane_seeds, backend);

    GeodesicDag dag;
    dag.box = lay.lbox;
    dag.scale = env.scale();
    dag.env_fingerprint = env.fingerprint();
    dag.source = xl;
    dag.plane_n = n;
    dag.total = to_plane.at(xl);
    scan_dag_edges(lenv, lay.lbox, from_x.dist, to_plane.dist, dag.total, dag);
    for (const auto& [v, c] : costs) {
        if (from_x.at(v) + c == dag.total) {
            lay.lbox.coords_of(v, a);
            dag.terminals.push_back({v, c, make_endpoint(lay, a)});
        }
    }
    collect_vertices(dag);
    return dag;
}

GeoPath canonical_geodesic(const GeodesicDag& dag) {
    if (dag.vertices.empty()) throw std::domain_error("canonical_geodesic: empty DAG");

    std::map<VertexId, std::vector<std::pair<VertexId, int64_t>>> adj;
    for (const auto& e : dag.edges) adj[e.from].emplace_back(e.to, e.w);
    for (auto& [v, succs] : adj) std::sort(succs.begin(), succs.end());
    std::map<VertexId, const GeodesicDag::Terminal*> term;
    for (const auto& t : dag.terminals) term[t.attach] = &t;

    std::vector<VertexId> path{dag.source};
    std::map<VertexId, bool> used{{dag.source, true}};
    int64_t cost = 0;
    GeoPath out;

    // depth-first, smallest next vertex first, stop as soon as stopping is
    // allowed: the first complete path found is the lexicographic minimum
    auto dfs = [&](auto&& self, VertexId v) -> bool {
        if (dag.target && v == *dag.target) {
            out.verts = path;
            out.cost = cost;
            return true;
        }
        if (!dag.target) {
            if (auto it = term.find(v); it != term.end()) {
                out.verts = path;
                out.endpoint = it->second->endpoint;
                out.cost = cost + it->second->cost;
                return true;
            }
        }
        auto it = adj.find(v);
        if (it == adj.end()) return false;
        for (const auto& [to, w] : it->second) {
            if (used[to]) continue;
            used[to] = true;
            path.push_back(to);
            cost += w;
            if (self(self, to)) return true;
            cost -= w;
            path.pop_back();
            used[to] = false;
        }
        return false;
    };
    if (!dfs(dfs, dag.source)) throw std::runtime_error("canonical_geodesic: no path in DAG");
    return out;
}

int64_t busemann(const Environment& env, VertexId x, VertexId y, VertexId z) {
    const auto fz = shortest_field_seeded(env, {{z, 0}});
    return fz.at(x) - fz.at(y);
}

bool dag_touches_boundary(const GeodesicDag& dag, const Box& box) {
    for (VertexId v : dag.vertices) {
        if (dag.is_hyperplane()) {
            if (box.on_boundary_excluding_face(v, 0, box.hi(0))) return true;
        } else if (box.on_boundary(v)) {
            return true;
        }
    }
    return false;
}

std::vector<VertexId> geodesic_union_vertices(const Environment& env, VertexId source,
                                              const std::vector<VertexId>& targets) {
    const auto fs = shortest_field_seeded(env, {{source, 0}});
    const Box& box = env.box();
    // reverse adjacency of the full shortest-path DAG from `source`
    std::vector<std::vector<VertexId>> rev(static_cast<size_t>(box.vertex_count()));
    box.for_each_canonical_edge([&](VertexId u, int k, EdgeSlot) {
        const VertexId v = *box.neighbor(u, k, +1);
        const int64_t w = env.weight(u, k);
        if (fs.at(u) + w == fs.at(v)) rev[static_cast<size_t>(v)].push_back(u);
        if (fs.at(v) + w == fs.at(u)) rev[static_cast<size_t>(u)].push_back(v);
    });
    std::vector<char> seen(static_cast<size_t>(box.vertex_count()), 0);
    std::vector<VertexId> stack(targets), out;
    for (VertexId t : targets) seen[static_cast<size_t>(t)] = 1;
    while (!stack.empty()) {
        const VertexId v = stack.back();
        stack.pop_back();
        out.push_back(v);
        for (VertexId u : rev[static_cast<size_t>(v)]) {
            if (!seen[static_cast<size_t>(u)]) {
                seen[static_cast<size_t>(u)] = 1;
                stack.push_back(u);
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool verify_geodesic(const Environment& env, const GeodesicDag& dag, const GeoPath& path) {
    if (path.verts.empty() || path.verts.front() != dag.source) return false;
    // simple path
    auto sorted = path.verts;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;

    const Box& pbox = dag.box;
    int64_t cost = 0;
    for (size_t i = 0; i + 1 < path.verts.size(); ++i) {
        const Coords a = pbox.coords_of(path.verts[i]);
        const Coords b = pbox.coords_of(path.verts[i + 1]);
        if (l1_dist(a, b) != 1) return false;
        cost += env.weight_between(env.box().index_of(a), env.box().index_of(b));
    }
    if (dag.target) {
        if (path.endpoint || path.verts.back() != *dag.target) return false;
        return cost == dag.total;
    }
    if (!path.endpoint) return false;
    // final crossing step: re-derive its cost from the environment
    Coords attach = path.endpoint->near_vertex;
    if (!path.endpoint->odd) attach[0] -= 1;
    if (pbox.coords_of(path.verts.back()) != attach) return false;
    const VertexId av = env.box().index_of(attach);
    const int64_t w = env.weight(av, 0);
    cost += path.endpoint->odd ? w / 2 : w;
    return cost == dag.total;
}

}  // namespace fpp
