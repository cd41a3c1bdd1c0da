#include "fpp/percolation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <stdexcept>

#include "fpp/rng.hpp"

namespace fpp {

namespace {

struct UnionFind {
    std::vector<int32_t> parent;
    explicit UnionFind(int64_t n) : parent(static_cast<size_t>(n)) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    int32_t find(int32_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    void unite(int32_t a, int32_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

Box ladder_box(const Coords& direction, int64_t top) {
    const int d = static_cast<int>(direction.size());
    Coords lo(d, 0), hi(d, 0);
    for (int k = 0; k < d; ++k) {
        lo[k] = std::min<Coord>(0, direction[k] * top);
        hi[k] = std::max<Coord>(0, direction[k] * top);
    }
    Coord span = 0;
    for (int k = 0; k < d; ++k) span = std::max(span, std::abs(direction[k]) * top);
    const Coord margin = std::max<Coord>(span, 4);
    for (int k = 0; k < d; ++k) {
        lo[k] -= margin;
        hi[k] += margin;
    }
    return Box(std::move(lo), std::move(hi));
}

Coords scaled_dir(const Coords& direction, int64_t k) {
    Coords c(direction);
    for (auto& v : c) v *= k;
    return c;
}

}  // namespace

ClusterLabeling clusters(const Environment& env, int64_t threshold_scaled) {
    if (threshold_scaled < 0) throw std::domain_error("clusters: negative threshold");
    const Box& box = env.box();
    UnionFind uf(box.vertex_count());
    box.for_each_canonical_edge([&](VertexId v, int k, EdgeSlot slot) {
        if (env.weight_slot(slot) <= threshold_scaled) {
            uf.unite(static_cast<int32_t>(v), static_cast<int32_t>(*box.neighbor(v, k, +1)));
        }
    });

    ClusterLabeling lab;
    lab.threshold_scaled = threshold_scaled;
    lab.label.resize(static_cast<size_t>(box.vertex_count()));
    std::vector<int32_t> remap(static_cast<size_t>(box.vertex_count()), -1);
    int32_t next = 0;
    for (VertexId v = 0; v < box.vertex_count(); ++v) {
        const int32_t root = uf.find(static_cast<int32_t>(v));
        if (remap[root] < 0) {
            remap[root] = next++;
            lab.sizes.push_back(0);
        }
        lab.label[static_cast<size_t>(v)] = remap[root];
        lab.sizes[remap[root]] += 1;
    }
    lab.largest = static_cast<int32_t>(
        std::max_element(lab.sizes.begin(), lab.sizes.end()) - lab.sizes.begin());

    const int d = box.dim();
    std::vector<char> face_hit(static_cast<size_t>(2 * d), 0);
    for (VertexId v = 0; v < box.vertex_count(); ++v) {
        if (lab.label[static_cast<size_t>(v)] != lab.largest) continue;
        for (int k = 0; k < d; ++k) {
            const Coord c = box.coord_of(v, k);
            if (c == box.lo(k)) face_hit[static_cast<size_t>(2 * k)] = 1;
            if (c == box.hi(k)) face_hit[static_cast<size_t>(2 * k + 1)] = 1;
        }
    }
    lab.largest_touches_all_faces =
        std::all_of(face_hit.begin(), face_hit.end(), [](char c) { return c != 0; });
    return lab;
}

std::optional<int64_t> chemical_distance(const ClusterLabeling& lab, const Environment& env,
                                         VertexId x, VertexId y) {
    if (lab.label[static_cast<size_t>(x)] != lab.label[static_cast<size_t>(y)]) {
        return std::nullopt;
    }
    if (x == y) return 0;
    const Box& box = env.box();
    std::vector<int64_t> dist(static_cast<size_t>(box.vertex_count()), -1);
    std::queue<VertexId> q;
    dist[static_cast<size_t>(x)] = 0;
    q.push(x);
    while (!q.empty()) {
        const VertexId u = q.front();
        q.pop();
        for (int k = 0; k < box.dim(); ++k) {
            for (int dir : {+1, -1}) {
                const auto nb = box.neighbor(u, k, dir);
                if (!nb || dist[static_cast<size_t>(*nb)] >= 0) continue;
                const int64_t w = dir > 0 ? env.weight(u, k) : env.weight(*nb, k);
                if (w > lab.threshold_scaled) continue;
                dist[static_cast<size_t>(*nb)] = dist[static_cast<size_t>(u)] + 1;
                if (*nb == y) return dist[static_cast<size_t>(*nb)];
                q.push(*nb);
            }
        }
    }
    return std::nullopt;  // unreachable within the labeling contract
}

RegularizedMap regularized_map(const Environment& env, const ClusterLabeling& lab) {
    const Box& box = env.box();
    const int64_t nv = box.vertex_count();
    RegularizedMap map;
    map.threshold_scaled = lab.threshold_scaled;
    map.image.assign(static_cast<size_t>(nv), -1);

    // multi-source BFS by ell-1 rings; within a ring, the image is the
    // lexicographically smallest image among the ring-below neighbors, which
    // yields the lex-min closest cluster point (images propagate monotonely)
    std::vector<int64_t> dist(static_cast<size_t>(nv), -1);
    std::vector<VertexId> frontier;
    for (VertexId v = 0; v < nv; ++v) {
        if (lab.label[static_cast<size_t>(v)] == lab.largest) {
            dist[static_cast<size_t>(v)] = 0;
            map.image[static_cast<size_t>(v)] = v;
            frontier.push_back(v);
        }
    }
    if (frontier.empty()) throw std::domain_error("regularized_map: empty largest cluster");
    int64_t ring = 0;
    while (!frontier.empty()) {
        ++ring;
        std::vector<VertexId> next;
        for (VertexId u : frontier) {
            for (int k = 0; k < box.dim(); ++k) {
                for (int dir : {+1, -1}) {
                    const auto nb = box.neighbor(u, k, dir);
                    if (nb && dist[static_cast<size_t>(*nb)] < 0) {
                        dist[static_cast<size_t>(*nb)] = ring;
                        next.push_back(*nb);
                    }
                }
            }
        }
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        for (VertexId v : next) {
            VertexId best = -1;
            for (int k = 0; k < box.dim(); ++k) {
                for (int dir : {+1, -1}) {
                    const auto nb = box.neighbor(v, k, dir);
                    if (!nb || dist[static_cast<size_t>(*nb)] != ring - 1) continue;
                    const VertexId cand = map.image[static_cast<size_t>(*nb)];
                    if (best < 0 || cand < best) best = cand;
                }
            }
            map.image[static_cast<size_t>(v)] = best;
        }
        frontier = std::move(next);
    }
    return map;
}

int64_t t_regularized(const Environment& env, const RegularizedMap& map, VertexId x, VertexId y) {
    const VertexId xm = map.image[static_cast<size_t>(x)];
    const VertexId ym = map.image[static_cast<size_t>(y)];
    const auto f = shortest_field_seeded(env, {{xm, 0}});
    return f.at(ym);
}

MuEstimate mu_estimate(const WeightDist& dist, int64_t threshold_scaled, const Coords& direction,
                       const std::vector<int64_t>& ladder, uint64_t samples, uint64_t master) {
    if (ladder.empty() || !std::is_sorted(ladder.begin(), ladder.end())) {
        throw std::invalid_argument("mu_estimate: ladder must be increasing");
    }
    MuEstimate est;
    est.direction = direction;
    est.ladder = ladder;
    est.samples = samples;
    const Box box = ladder_box(direction, ladder.back());
    const auto q = static_cast<double>(dist.scale());

    std::vector<double> sum(ladder.size(), 0.0), sumsq(ladder.size(), 0.0);
    for (uint64_t s = 0; s < samples; ++s) {
        const Environment env =
            Environment::sample(box, dist, derive_stream(master, s), master, s);
        const auto lab = clusters(env, threshold_scaled);
        const auto map = regularized_map(env, lab);
        const VertexId origin = box.index_of(Coords(box.dim(), 0));
        const auto f =
            shortest_field_seeded(env, {{map.image[static_cast<size_t>(origin)], 0}});
        for (size_t r = 0; r < ladder.size(); ++r) {
            const VertexId target = box.index_of(scaled_dir(direction, ladder[r]));
            const auto tm = static_cast<double>(
                f.at(map.image[static_cast<size_t>(target)]));
            const double v = tm / q / static_cast<double>(ladder[r]);
            sum[r] += v;
            sumsq[r] += v * v;
        }
    }
    for (size_t r = 0; r < ladder.size(); ++r) {
        const double m = sum[r] / static_cast<double>(samples);
        est.mean.push_back(m);
        const double var =
            samples > 1 ? std::max(0.0, (sumsq[r] - static_cast<double>(samples) * m * m) /
                                            static_cast<double>(samples - 1))
                        : 0.0;
        est.half_width.push_back(1.96 * std::sqrt(var / static_cast<double>(samples)));
        if (r > 0 && est.mean[r] > est.mean[r - 1] + 1e-12) est.monotone_nonincreasing = false;
    }
    est.mu_hat = est.mean.back();
    return est;
}

CesaroResult cesaro_fraction(const WeightDist& dist, int64_t threshold_scaled,
                             const Coords& direction, int64_t horizon, double eps,
                             uint64_t samples, uint64_t master) {
    CesaroResult res;
    res.horizon = horizon;
    res.samples = samples;
    res.eps = eps;

    // mu from an independent sub-stream, ladder topping out at the horizon
    std::vector<int64_t> ladder;
    if (horizon >= 2) ladder.push_back(std::max<int64_t>(1, horizon / 2));
    ladder.push_back(std::max<int64_t>(1, horizon));
    ladder.erase(std::unique(ladder.begin(), ladder.end()), ladder.end());
    const uint64_t mu_master = SplitMix64(master ^ 0x6d75u).next();
    res.mu_hat =
        mu_estimate(dist, threshold_scaled, direction, ladder, samples, mu_master).mu_hat;

    const Box box = ladder_box(direction, horizon);
    const auto q = static_cast<double>(dist.scale());
    const double bar = res.mu_hat * (1.0 - eps) - 1e-12;
    res.count_ge.assign(static_cast<size_t>(horizon), 0);
    for (uint64_t s = 0; s < samples; ++s) {
        const Environment env =
            Environment::sample(box, dist, derive_stream(master, s), master, s);
        const auto lab = clusters(env, threshold_scaled);
        const auto map = regularized_map(env, lab);
        const VertexId origin = box.index_of(Coords(box.dim(), 0));
        const VertexId xvert = box.index_of(direction);
        const auto f0 =
            shortest_field_seeded(env, {{map.image[static_cast<size_t>(origin)], 0}});
        const auto f1 =
            shortest_field_seeded(env, {{map.image[static_cast<size_t>(xvert)], 0}});
        for (int64_t k = 1; k <= horizon; ++k) {
            const VertexId z = box.index_of(scaled_dir(direction, k));
            const VertexId zm = map.image[static_cast<size_t>(z)];
            const double b = static_cast<double>(f0.at(zm) - f1.at(zm)) / q;
            if (b >= bar) res.count_ge[static_cast<size_t>(k - 1)] += 1;
        }
    }
    const double need = (1.0 - eps) * static_cast<double>(samples) - 1e-9;
    int64_t good = 0;
    for (int64_t c : res.count_ge) {
        if (static_cast<double>(c) >= need) ++good;
    }
    res.fraction = static_cast<double>(good) / static_cast<double>(horizon);
    return res;
}

}  // namespace fpp
