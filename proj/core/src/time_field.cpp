#include "fpp/time_field.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>

namespace fpp {

namespace {

int64_t max_weight(const Environment& env) {
    int64_t m = 0;
    for (int64_t w : env.raw_weights()) m = std::max(m, w);
    return m;
}

void relax_neighbors(const Environment& env, VertexId u, int64_t du,
                     const std::vector<int64_t>& dist, auto&& push) {
    const Box& box = env.box();
    const int d = box.dim();
    for (int k = 0; k < d; ++k) {
        if (auto nb = box.neighbor(u, k, +1)) {
            const int64_t nd = du + env.weight(u, k);
            if (nd < dist[static_cast<size_t>(*nb)]) push(*nb, nd);
        }
        if (auto nb = box.neighbor(u, k, -1)) {
            const int64_t nd = du + env.weight(*nb, k);
            if (nd < dist[static_cast<size_t>(*nb)]) push(*nb, nd);
        }
    }
}

std::vector<int64_t> dijkstra_heap(const Environment& env,
                                   const std::vector<std::pair<VertexId, int64_t>>& seeds) {
    std::vector<int64_t> dist(static_cast<size_t>(env.box().vertex_count()), kInfTime);
    using Item = std::pair<int64_t, VertexId>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    for (const auto& [v, d0] : seeds) {
        if (d0 < dist[static_cast<size_t>(v)]) {
            dist[static_cast<size_t>(v)] = d0;
            heap.emplace(d0, v);
        }
    }
    while (!heap.empty()) {
        const auto [du, u] = heap.top();
        heap.pop();
        if (du != dist[static_cast<size_t>(u)]) continue;
        relax_neighbors(env, u, du, dist, [&](VertexId v, int64_t nd) {
            dist[static_cast<size_t>(v)] = nd;
            heap.emplace(nd, v);
        });
    }
    return dist;
}

// Dial's algorithm: circular buckets over distance mod (maxw+1). Zero-weight
// relaxations land in the bucket currently being drained, so each bucket is
// drained to empty before advancing.
std::vector<int64_t> dijkstra_bucket(const Environment& env,
                                     const std::vector<std::pair<VertexId, int64_t>>& seeds) {
    std::vector<int64_t> dist(static_cast<size_t>(env.box().vertex_count()), kInfTime);
    const int64_t span = max_weight(env) + 1;
    std::vector<std::vector<VertexId>> buckets(static_cast<size_t>(span));

    int64_t cur = kInfTime;
    int64_t remaining = 0;
    for (const auto& [v, d0] : seeds) {
        if (d0 < dist[static_cast<size_t>(v)]) {
            if (dist[static_cast<size_t>(v)] == kInfTime) ++remaining;
            dist[static_cast<size_t>(v)] = d0;
            cur = std::min(cur, d0);
        }
    }
    if (remaining == 0) return dist;
    for (const auto& [v, d0] : seeds) {
        if (dist[static_cast<size_t>(v)] == d0) buckets[static_cast<size_t>(d0 % span)].push_back(v);
    }

    std::vector<char> done(dist.size(), 0);
    int64_t settled = 0;
    const int64_t n = env.box().vertex_count();
    while (settled < n) {
        auto& bucket = buckets[static_cast<size_t>(cur % span)];
        while (!bucket.empty()) {
            const VertexId u = bucket.back();
            bucket.pop_back();
            if (done[static_cast<size_t>(u)] || dist[static_cast<size_t>(u)] != cur) continue;
            done[static_cast<size_t>(u)] = 1;
            ++settled;
            relax_neighbors(env, u, cur, dist, [&](VertexId v, int64_t nd) {
                dist[static_cast<size_t>(v)] = nd;
                buckets[static_cast<size_t>(nd % span)].push_back(v);
            });
        }
        ++cur;
    }
    return dist;
}

}  // namespace

std::vector<std::pair<VertexId, int64_t>> source_seeds(const Environment& env,
                                                       const SourceSpec& source) {
    const Box& box = env.box();
    std::vector<std::pair<VertexId, int64_t>> seeds;
    switch (source.kind) {
        case SourceSpec::Kind::Vertex:
        case SourceSpec::Kind::VertexSet:
            for (VertexId v : source.vertices) seeds.emplace_back(v, 0);
            if (seeds.empty()) throw std::invalid_argument("source_seeds: empty source");
            break;
        case SourceSpec::Kind::Hyperplane: {
            const int64_t n = source.plane_n;
            if (n % 2 == 0) {
                const Coord plane = n / 2;
                if (plane < box.lo(0) || plane > box.hi(0)) {
                    throw std::out_of_range("source_seeds: hyperplane outside box");
                }
                for (VertexId v = 0; v < box.vertex_count(); ++v) {
                    if (box.coord_of(v, 0) == plane) seeds.emplace_back(v, 0);
                }
            } else {
                if (env.scale() % 2 != 0) {
                    throw std::domain_error("source_seeds: odd hyperplane needs doubled scale");
                }
                const Coord left = (n - 1) / 2;
                if (left < box.lo(0) || left + 1 > box.hi(0)) {
                    throw std::out_of_range("source_seeds: hyperplane outside box");
                }
                for (VertexId v = 0; v < box.vertex_count(); ++v) {
                    if (box.coord_of(v, 0) != left) continue;
                    const int64_t w = env.weight(v, 0);
                    if (w % 2 != 0) throw std::domain_error("source_seeds: odd crossing weight");
                    seeds.emplace_back(v, w / 2);
                    seeds.emplace_back(*box.neighbor(v, 0, +1), w / 2);
                }
            }
            break;
        }
    }
    return seeds;
}

TimeField shortest_field_seeded(const Environment& env,
                                const std::vector<std::pair<VertexId, int64_t>>& seeds,
                                SpBackend backend) {
    if (backend == SpBackend::Auto) {
        // bucket queue only pays off for small weight ranges
        backend = max_weight(env) <= 4096 ? SpBackend::BucketQueue : SpBackend::BinaryHeap;
    }
    TimeField field;
    field.env_fingerprint = env.fingerprint();
    field.dist = backend == SpBackend::BucketQueue ? dijkstra_bucket(env, seeds)
                                                   : dijkstra_heap(env, seeds);
    return field;
}

TimeField shortest_field(const Environment& env, const SourceSpec& source, SpBackend backend) {
    auto field = shortest_field_seeded(env, source_seeds(env, source), backend);
    field.source = source;
    return field;
}

}  // namespace fpp
