#include "fpp/events.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace fpp {

namespace {

Coords unit(int dim, int axis, int64_t k) {
    Coords c(dim, 0);
    c[axis] = k;
    return c;
}

std::string coords_str(const Coords& c) {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << c[i];
    os << ")";
    return os.str();
}

Environment hyper_env(const Environment& env, int64_t n) {
    return n % 2 != 0 ? env.doubled() : env;
}

// Coordinates of a path plus its hyperplane endpoint, for diameter checks.
std::vector<Coords> path_coords(const Box& box, const GeoPath& p) {
    std::vector<Coords> out;
    out.reserve(p.verts.size() + 1);
    for (VertexId v : p.verts) out.push_back(box.coords_of(v));
    if (p.endpoint) out.push_back(p.endpoint->near_vertex);
    return out;
}

EdgeRef edge_between(const Coords& a, const Coords& b) {
    for (size_t k = 0; k < a.size(); ++k) {
        if (a[k] + 1 == b[k]) return {a, static_cast<int>(k)};
        if (b[k] + 1 == a[k]) return {b, static_cast<int>(k)};
    }
    throw std::invalid_argument("edge_between: vertices not adjacent");
}

struct GnCore {
    std::optional<GnWitnessResult> witness;
    Decision decision;  // the underlying disjointness decision
    bool box_valid = true;
};

GnCore gn_core(const Environment& envH, int64_t n, int64_t c2) {
    const Box& box = envH.box();
    const auto g0 = hyperplane_dag(envH, box.index_of(unit(box.dim(), 1, 0)), n);
    const auto g1 = hyperplane_dag(envH, box.index_of(unit(box.dim(), 1, 1)), n);
    GnCore out;
    out.box_valid = !dag_touches_boundary(g0, g0.box) && !dag_touches_boundary(g1, g1.box);
    out.decision = disjoint_dag_pair(g0, g1, Budget{});
    if (!out.decision.is_true()) return out;

    const Witness& w = *out.decision.witness;
    const auto c0 = path_coords(g0.box, w.a);
    const auto c1 = path_coords(g1.box, w.b);
    if (diameter(c0) > c2 * n || diameter(c1) > c2 * n) return out;

    GnWitnessResult res;
    res.g0 = w.a;
    res.g1 = w.b;
    res.u0 = *w.a.endpoint;
    res.u1 = *w.b.endpoint;
    res.box = g0.box;
    res.lambda_member = true;
    for (const auto* ep : {&res.u0, &res.u1}) {
        for (Coord c : ep->lateral) {
            if (std::abs(c) > c2 * n) res.lambda_member = false;
        }
    }
    out.witness = std::move(res);
    return out;
}

}  // namespace

EventSpec EventSpec::thm1item1(int dim, int64_t n) { return {EventFamily::Thm1Item1, dim, n}; }
EventSpec EventSpec::thm1item2(int dim, int64_t n, Coords y, Coords y2) {
    EventSpec s{EventFamily::Thm1Item2, dim, n};
    s.y = std::move(y);
    s.y2 = std::move(y2);
    return s;
}
EventSpec EventSpec::thm2item1(int dim, int64_t n) { return {EventFamily::Thm2Item1, dim, n}; }
EventSpec EventSpec::thm2item2(int dim, int64_t n, Coords u) {
    EventSpec s{EventFamily::Thm2Item2, dim, n};
    s.u = std::move(u);
    return s;
}
EventSpec EventSpec::an(int dim, int64_t n, int64_t i, int64_t j) {
    EventSpec s{EventFamily::An, dim, n};
    s.i = i;
    s.j = j;
    return s;
}
EventSpec EventSpec::gn(int dim, int64_t n, int64_t c2) {
    EventSpec s{EventFamily::Gn, dim, n};
    s.c2 = c2;
    return s;
}
EventSpec EventSpec::same_source_hyperplane(int dim, int64_t n) {
    return {EventFamily::SameSourceHyperplane, dim, n};
}
EventSpec EventSpec::coex_level(int dim, int64_t n, int64_t k) {
    EventSpec s{EventFamily::CoexLevel, dim, n};
    s.level_k = k;
    return s;
}

std::string EventSpec::label() const {
    std::ostringstream os;
    switch (family) {
        case EventFamily::Thm1Item1: os << "thm1item1(n=" << n << ")"; break;
        case EventFamily::Thm1Item2:
            os << "thm1item2(n=" << n << ",y=" << coords_str(y) << ",y2=" << coords_str(y2) << ")";
            break;
        case EventFamily::Thm2Item1: os << "thm2item1(n=" << n << ")"; break;
        case EventFamily::Thm2Item2:
            os << "thm2item2(n=" << n << ",u=" << coords_str(u) << ")";
            break;
        case EventFamily::An: os << "an(n=" << n << ",i=" << i << ",j=" << j << ")"; break;
        case EventFamily::Gn: os << "gn(n=" << n << ",c2=" << c2 << ")"; break;
        case EventFamily::SameSourceHyperplane: os << "samesource(n=" << n << ")"; break;
        case EventFamily::CoexLevel: os << "coexlevel(n=" << n << ",k=" << level_k << ")"; break;
    }
    return os.str();
}

Box policy_box(const EventSpec& spec, int64_t kappa) {
    const int d = spec.dim;
    Coords lo(d, 0), hi(d, 0);
    auto cover = [&](const Coords& c) {
        for (int k = 0; k < d; ++k) {
            lo[k] = std::min(lo[k], c[k]);
            hi[k] = std::max(hi[k], c[k]);
        }
    };
    switch (spec.family) {
        case EventFamily::Thm1Item1:
            cover(unit(d, 0, spec.n));
            cover(unit(d, 1, 1));
            break;
        case EventFamily::Thm2Item1:
            cover(unit(d, 0, spec.n));
            break;
        case EventFamily::An:
        case EventFamily::Gn:
        case EventFamily::SameSourceHyperplane:
            cover(unit(d, 0, (spec.n + 1) / 2));
            cover(unit(d, 1, std::min<int64_t>(0, std::min(spec.i, spec.j))));
            cover(unit(d, 1, std::max<int64_t>(1, std::max(spec.i, spec.j))));
            break;
        case EventFamily::Thm1Item2:
        case EventFamily::Thm2Item2:
        case EventFamily::CoexLevel:
            cover(Coords(d, -spec.n));
            cover(Coords(d, spec.n));
            break;
    }
    const int64_t m = kappa * spec.n;
    for (int k = 0; k < d; ++k) {
        lo[k] -= m;
        hi[k] += m;
    }
    return Box(std::move(lo), std::move(hi));
}

DetectResult detect(const EventSpec& spec, const Environment& env, const Budget& budget) {
    const Box& box = env.box();
    if (box.dim() != spec.dim) throw std::out_of_range("detect: dimension mismatch");
    const int d = spec.dim;
    const int64_t n = spec.n;

    switch (spec.family) {
        case EventFamily::Thm1Item1:
        case EventFamily::Thm1Item2: {
            Coords t1c = spec.family == EventFamily::Thm1Item1 ? unit(d, 0, n) : spec.y;
            Coords t2c = spec.family == EventFamily::Thm1Item1 ? unit(d, 0, n) : spec.y2;
            if (spec.family == EventFamily::Thm1Item1) {
                t2c[1] += 1;
            }
            const auto a = geodesic_dag(env, box.index_of(unit(d, 0, 0)), box.index_of(t1c));
            const auto b = geodesic_dag(env, box.index_of(unit(d, 1, 1)), box.index_of(t2c));
            const bool valid =
                !dag_touches_boundary(a, a.box) && !dag_touches_boundary(b, b.box);
            return {disjoint_dag_pair(a, b, budget), valid};
        }
        case EventFamily::Thm2Item1:
        case EventFamily::Thm2Item2: {
            const Coords t = spec.family == EventFamily::Thm2Item1 ? unit(d, 0, n) : spec.u;
            const auto dag = geodesic_dag(env, box.index_of(Coords(d, 0)), box.index_of(t));
            return {internally_disjoint_pair(dag), !dag_touches_boundary(dag, dag.box)};
        }
        case EventFamily::An: {
            const Environment envH = hyper_env(env, n);
            const auto gi = hyperplane_dag(envH, box.index_of(unit(d, 1, spec.i)), n);
            const auto gj = hyperplane_dag(envH, box.index_of(unit(d, 1, spec.j)), n);
            const bool valid =
                !dag_touches_boundary(gi, gi.box) && !dag_touches_boundary(gj, gj.box);
            return {disjoint_dag_pair(gi, gj, budget), valid};
        }
        case EventFamily::SameSourceHyperplane: {
            const Environment envH = hyper_env(env, n);
            const auto g0 = hyperplane_dag(envH, box.index_of(Coords(d, 0)), n);
            return {internally_disjoint_pair(g0), !dag_touches_boundary(g0, g0.box)};
        }
        case EventFamily::Gn: {
            const Environment envH = hyper_env(env, n);
            auto core = gn_core(envH, n, spec.c2);
            if (!core.witness) {
                return {Decision::no("gn-" + core.decision.reason), core.box_valid};
            }
            Witness w;
            w.box = core.witness->box;
            w.a = core.witness->g0;
            w.b = core.witness->g1;
            return {Decision::yes("gn-witness", std::move(w)), core.box_valid};
        }
        case EventFamily::CoexLevel: {
            const VertexId v0 = box.index_of(Coords(d, 0));
            const VertexId v1 = box.index_of(unit(d, 1, 1));
            const auto f0 = shortest_field_seeded(env, {{v0, 0}});
            const auto f1 = shortest_field_seeded(env, {{v1, 0}});
            const int64_t level = spec.level_k * static_cast<int64_t>(env.scale());
            std::optional<VertexId> zge, zlt;
            std::vector<VertexId> sphere_ids;
            for (const auto& zc : enumerate_sphere(box, n)) {
                const VertexId z = box.index_of(zc);
                sphere_ids.push_back(z);
                const int64_t b = f0.at(z) - f1.at(z);
                if (b >= level && !zge) zge = z;
                if (b < level && !zlt) zlt = z;
            }
            bool valid = true;
            for (VertexId src : {v0, v1}) {
                for (VertexId v : geodesic_union_vertices(env, src, sphere_ids)) {
                    if (box.on_boundary(v)) valid = false;
                }
            }
            if (zge && zlt) {
                Witness w;
                w.box = box;
                w.a = {{*zge}, {}, 0};
                w.b = {{*zlt}, {}, 0};
                return {Decision::yes("level-scan", std::move(w)), valid};
            }
            return {Decision::no("level-scan"), valid};
        }
    }
    throw std::logic_error("detect: unhandled family");
}

int64_t d_statistic(const Environment& env2x, int64_t n) {
    const auto [lbox, field] = hyperplane_field(env2x, n);
    const int d = env2x.box().dim();
    return field.at(lbox.index_of(Coords(d, 0))) - field.at(lbox.index_of(unit(d, 1, 1)));
}

SurgeryReport surgery_prop24(const Environment& env2x, int64_t n) {
    SurgeryReport rep;
    const int d = env2x.box().dim();
    const auto an = source_disjoint_hyperplane_pair(env2x, 0, 1, n);
    const int64_t dstat = d_statistic(env2x, n);
    rep.premise_held = an.is_true() && is_physical_integer(env2x, dstat);
    if (!rep.premise_held) {
        rep.note = "premise: A_n(0,1) and integer D required";
        return rep;
    }
    // |D| <= tau(0, e2) by the triangle inequality; symmetry reduction swaps
    // the roles of 0 and e2 when D < 0
    const Coords src = dstat >= 0 ? Coords(d, 0) : unit(d, 1, 1);
    rep.value_scaled = std::abs(dstat);
    Environment envbar = env2x.with_edge({Coords(d, 0), 1}, rep.value_scaled);
    const auto g = hyperplane_dag(envbar, envbar.box().index_of(src), n);
    const auto ver = internally_disjoint_pair(g);
    bool ok = ver.is_true();
    if (ok && !verify_witness_internal(envbar, g, *ver.witness)) {
        ok = false;
        rep.failures.push_back("witness re-check");
    }
    if (!ver.is_true()) rep.failures.push_back("no source-only disjoint pair after surgery");
    rep.postconditions_verified = ok;
    rep.modified = std::move(envbar);
    return rep;
}

SurgeryReport surgery_claim25(const Environment& env2x, int64_t n) {
    SurgeryReport rep;
    const int d = env2x.box().dim();
    if (n % 2 == 0) {
        rep.note = "premise: n odd required";
        return rep;
    }
    const auto an = source_disjoint_hyperplane_pair(env2x, 0, 1, n);
    if (!an.is_true()) {
        rep.note = "premise: A_n(0,1) fails";
        return rep;
    }
    const auto [lbox, field] = hyperplane_field(env2x, n);
    const int64_t t0 = field.at(lbox.index_of(Coords(d, 0)));
    const int64_t t1 = field.at(lbox.index_of(unit(d, 1, 1)));
    const int64_t dstat = t0 - t1;
    if (is_physical_integer(env2x, dstat) || is_physical_integer(env2x, t0)) {
        rep.note = "premise: needs D and tau(gamma_0) non-integer";
        return rep;
    }
    rep.premise_held = true;

    // E_0: the crossing edge at the canonical gamma_0's endpoint; its
    // physical weight i_0 is odd exactly because tau(gamma_0) is half-integer
    const HyperplaneEndpoint e0 = *an.witness->a.endpoint;
    const EdgeRef crossing{e0.near_vertex, 0};
    const int64_t w = env2x.weight(crossing);
    const auto scale = static_cast<int64_t>(env2x.scale());
    if (w % scale != 0 || (w / scale) % 2 == 0) {
        rep.failures.push_back("crossing weight not an odd integer");
        return rep;
    }
    rep.value_scaled = w - scale;  // i_0 - 1
    Environment envbar = env2x.with_edge(crossing, rep.value_scaled);

    const auto an2 = source_disjoint_hyperplane_pair(envbar, 0, 1, n);
    if (!an2.is_true()) rep.failures.push_back("A_n(0,1) lost after surgery");
    if (an2.is_true()) {
        const HyperplaneEndpoint e0b = *an2.witness->a.endpoint;
        if (!(e0b == e0)) rep.failures.push_back("crossing edge moved");
    }
    const int64_t dstat2 = d_statistic(envbar, n);
    if (dstat2 != dstat - scale / 2) rep.failures.push_back("D did not drop by 1/2");
    if (!is_physical_integer(envbar, dstat2)) rep.failures.push_back("D' not an integer");
    rep.postconditions_verified = rep.failures.empty();
    rep.modified = std::move(envbar);
    return rep;
}

std::optional<SphereScanHit> scan_sphere_K(const Environment& env, int64_t n, int64_t level_k) {
    const Box& box = env.box();
    const int d = box.dim();
    const VertexId v0 = box.index_of(Coords(d, 0));
    const VertexId v1 = box.index_of(unit(d, 1, 1));
    const auto f0 = shortest_field_seeded(env, {{v0, 0}});
    const auto f1 = shortest_field_seeded(env, {{v1, 0}});
    const int64_t level = level_k * static_cast<int64_t>(env.scale());

    for (const auto& [yc, y2c] : sphere_adjacent_pairs(box, n)) {
        const VertexId y = box.index_of(yc);
        const VertexId y2 = box.index_of(y2c);
        const int64_t by = f0.at(y) - f1.at(y);
        const int64_t by2 = f0.at(y2) - f1.at(y2);
        if (by < level && by2 >= level) {
            return SphereScanHit{yc, y2c, f0.at(y) - (f1.at(y2) + level)};
        }
    }
    return std::nullopt;
}

SurgeryReport surgery_claim33(const Environment& env, int64_t n, int64_t level_k,
                              const Budget& budget) {
    SurgeryReport rep;
    const Box& box = env.box();
    const int d = box.dim();
    if (n < 2) {
        rep.note = "premise: n >= 2 (sphere must avoid e2)";
        return rep;
    }
    const auto hit = scan_sphere_K(env, n, level_k);
    if (!hit) {
        rep.note = "premise: no level-crossing sphere pair";
        return rep;
    }
    const auto dec = paired_disjoint(env, box.index_of(Coords(d, 0)), box.index_of(hit->y),
                                     box.index_of(unit(d, 1, 1)), box.index_of(hit->y2), budget);
    if (!dec.decided()) {
        rep.premise_undecided = true;
        rep.note = "premise: disjointness undecided within budget";
        return rep;
    }
    if (!dec.is_true()) {
        rep.note = "premise: no disjoint geodesic pair to (y, y')";
        return rep;
    }
    rep.premise_held = true;

    const int64_t level = level_k * static_cast<int64_t>(env.scale());
    const Coords u = hit->delta_scaled >= 0 ? hit->y : hit->y2;
    rep.value_scaled = std::abs(hit->delta_scaled);
    Environment envbar = env.with_edge(edge_between(hit->y, hit->y2), rep.value_scaled);

    const VertexId uu = box.index_of(u);
    const auto f0 = shortest_field_seeded(envbar, {{box.index_of(Coords(d, 0)), 0}});
    const auto f1 = shortest_field_seeded(envbar, {{box.index_of(unit(d, 1, 1)), 0}});
    if (f0.at(uu) != f1.at(uu) + level) {
        rep.failures.push_back("T(0,u) != T_K(e2,u) after surgery");
    }
    const auto meet = two_source_shared_target_pair(envbar, box.index_of(Coords(d, 0)),
                                                    box.index_of(unit(d, 1, 1)), uu);
    if (!meet.is_true()) rep.failures.push_back("no pair sharing only u after surgery");
    rep.postconditions_verified = rep.failures.empty();
    rep.modified = std::move(envbar);
    return rep;
}

SurgeryReport surgery_claim34(const Environment& env, int64_t n, int64_t level_k,
                              const Coords& u) {
    SurgeryReport rep;
    const Box& box = env.box();
    const int d = box.dim();
    (void)n;
    const VertexId v0 = box.index_of(Coords(d, 0));
    const VertexId v1 = box.index_of(unit(d, 1, 1));
    const VertexId uu = box.index_of(u);
    const int64_t level = level_k * static_cast<int64_t>(env.scale());

    const auto f1 = shortest_field_seeded(env, {{v1, 0}});
    const auto f0 = shortest_field_seeded(env, {{v0, 0}});
    const bool time_eq = f0.at(uu) == f1.at(uu) + level;
    rep.premise_held = time_eq && two_source_shared_target_pair(env, v0, v1, uu).is_true();
    if (!rep.premise_held) {
        rep.note = "premise: Claim 3.3 event at u required";
        return rep;
    }
    rep.value_scaled = level;
    Environment envbar = env.with_edge({Coords(d, 0), 1}, level);
    const auto dag = geodesic_dag(envbar, v0, uu);
    const auto ver = internally_disjoint_pair(dag);
    bool ok = ver.is_true();
    if (!ok) rep.failures.push_back("no internally disjoint pair 0->u after surgery");
    if (ok && !verify_witness_internal(envbar, dag, *ver.witness)) {
        ok = false;
        rep.failures.push_back("witness re-check");
    }
    rep.postconditions_verified = ok;
    rep.modified = std::move(envbar);
    return rep;
}

std::optional<GnWitnessResult> gn_witness(const Environment& env2x, int64_t n, int64_t c2) {
    return gn_core(env2x, n, c2).witness;
}

Environment glue_mirror(const Environment& envL, const Environment& envR, int64_t n) {
    if (n % 2 != 0) throw std::domain_error("glue_mirror: odd n unsupported");
    if (!(envL.box() == envR.box())) throw std::invalid_argument("glue_mirror: box mismatch");
    if (envL.scale() != envR.scale()) throw std::invalid_argument("glue_mirror: scale mismatch");
    const Box& half = envL.box();
    const int d = half.dim();
    if (half.hi(0) != n / 2) {
        throw std::out_of_range("glue_mirror: half box must end at the plane column n/2");
    }

    Coords lo(d), hi(d);
    for (int k = 0; k < d; ++k) {
        lo[k] = half.lo(k);
        hi[k] = k == 0 ? n - half.lo(0) : half.hi(k);
    }
    Box full(std::move(lo), std::move(hi));
    std::vector<int64_t> w(static_cast<size_t>(full.vertex_count()) * d, -1);
    full.for_each_canonical_edge([&](VertexId v, int k, EdgeSlot slot) {
        Coords a = full.coords_of(v);
        Coords b = a;
        b[k] += 1;
        int64_t weight;
        if (b[0] <= n / 2) {
            // left edge (includes in-plane lateral edges, taken from envL)
            weight = envL.weight({a, k});
        } else {
            // right edge: pull back under x1 -> n - x1
            Coords img = a;
            img[0] = n - a[0];
            if (k == 0) img[0] -= 1;
            weight = envR.weight({img, k});
        }
        w[static_cast<size_t>(slot)] = weight;
    });
    Provenance prov;
    prov.dist_id = "glued(" + envL.provenance().dist_id + ")";
    return Environment(std::move(full), envL.scale(), std::move(w), std::move(prov));
}

bool symmetrization_check(const Environment& envL, const Environment& envR, int64_t n,
                          int64_t c2) {
    if (n % 2 != 0) {
        throw std::domain_error(
            "symmetrization_check: odd n conditions on crossing-edge times; unsupported");
    }
    const auto wl = gn_witness(envL, n, c2);
    const auto wr = gn_witness(envR, n, c2);
    if (!wl || !wr) return true;  // vacuous
    if (!(wl->u0.lateral == wr->u0.lateral) || !(wl->u1.lateral == wr->u1.lateral)) {
        return true;  // U != U-bar: vacuous
    }

    const Environment glued = glue_mirror(envL, envR, n);
    const Box& gbox = glued.box();
    const int d = gbox.dim();

    auto concatenated = [&](const GeoPath& left, const GeoPath& right,
                            const HyperplaneEndpoint& u) {
        std::vector<Coords> verts;
        for (VertexId v : left.verts) verts.push_back(wl->box.coords_of(v));
        verts.push_back(u.near_vertex);  // the shared plane vertex (even n)
        std::vector<Coords> mirrored;
        for (VertexId v : right.verts) {
            Coords c = wr->box.coords_of(v);
            c[0] = n - c[0];
            mirrored.push_back(std::move(c));
        }
        std::reverse(mirrored.begin(), mirrored.end());
        verts.insert(verts.end(), mirrored.begin(), mirrored.end());
        return verts;
    };
    const auto p0 = concatenated(wl->g0, wr->g0, wl->u0);
    const auto p1 = concatenated(wl->g1, wr->g1, wl->u1);

    auto path_cost = [&](const std::vector<Coords>& p) {
        int64_t cost = 0;
        for (size_t i = 0; i + 1 < p.size(); ++i) {
            cost += glued.weight_between(gbox.index_of(p[i]), gbox.index_of(p[i + 1]));
        }
        return cost;
    };
    const auto f0 = shortest_field_seeded(glued, {{gbox.index_of(Coords(d, 0)), 0}});
    const auto f1 = shortest_field_seeded(glued, {{gbox.index_of(unit(d, 1, 1)), 0}});
    Coords ne1 = unit(d, 0, n);
    Coords ne1e2 = ne1;
    ne1e2[1] += 1;
    if (path_cost(p0) != f0.at(gbox.index_of(ne1))) return false;
    if (path_cost(p1) != f1.at(gbox.index_of(ne1e2))) return false;

    std::set<Coords> s0(p0.begin(), p0.end());
    for (const auto& c : p1) {
        if (s0.count(c)) return false;
    }
    return true;
}

bool mn_chain_check(const Environment& env2x, int64_t n, int64_t c_mult) {
    const Box& box = env2x.box();
    const int d = box.dim();
    auto gamma = [&](int64_t i) {
        return hyperplane_dag(env2x, box.index_of(unit(d, 1, i)), n);
    };
    GeodesicDag prev = gamma(0);
    for (int64_t i = 0; i < c_mult * n; ++i) {
        GeodesicDag next = gamma(i + 1);
        const auto dec = intersects_all_pairs(prev, next, Budget{});
        if (dec.is_true()) {
            const auto ei = prev.endpoints();
            const auto ej = next.endpoints();
            if (!std::includes(ej.begin(), ej.end(), ei.begin(), ei.end())) return false;
        }
        prev = std::move(next);
    }
    return true;
}

CoexStats coex_stats(const Environment& env, int64_t horizon, int64_t level_bound, int axis,
                     int64_t offset) {
    const Box& box = env.box();
    const int d = box.dim();
    if (!box.contains(unit(d, axis, horizon)) || !box.contains(unit(d, axis, -horizon))) {
        throw std::out_of_range("coex_stats: horizon exceeds box");
    }
    CoexStats st;
    st.axis = axis;
    st.offset = offset;
    st.horizon = horizon;
    st.level_bound = level_bound;

    const VertexId p0 = box.index_of(unit(d, axis, offset));
    const VertexId p1 = box.index_of(unit(d, axis, offset + 1));
    st.pair_edge_weight = env.weight(unit(d, axis, offset), axis);
    const auto f0 = shortest_field_seeded(env, {{p0, 0}});
    const auto f1 = shortest_field_seeded(env, {{p1, 0}});
    for (int64_t k = 1; k <= horizon; ++k) {
        const VertexId z = box.index_of(unit(d, axis, k));
        st.b_pos.push_back(f0.at(z) - f1.at(z));
        const VertexId zn = box.index_of(unit(d, axis, -k));
        st.b_neg.push_back(f0.at(zn) - f1.at(zn));
    }
    st.max_pos = *std::max_element(st.b_pos.begin(), st.b_pos.end());
    st.min_neg = *std::min_element(st.b_neg.begin(), st.b_neg.end());

    const auto scale = static_cast<int64_t>(env.scale());
    for (int64_t k = -level_bound; k <= level_bound; ++k) {
        const int64_t level = k * scale;
        st.count_ge_pos.push_back(
            std::count_if(st.b_pos.begin(), st.b_pos.end(), [&](int64_t b) { return b >= level; }));
        st.count_lt_neg.push_back(
            std::count_if(st.b_neg.begin(), st.b_neg.end(), [&](int64_t b) { return b < level; }));
    }
    return st;
}

}  // namespace fpp
