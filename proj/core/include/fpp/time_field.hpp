#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "fpp/environment.hpp"

namespace fpp {

constexpr int64_t kInfTime = std::numeric_limits<int64_t>::max() / 4;

/// Source of a passage-time field: a vertex, a vertex set, or the
/// hyperplane H_n = {x1 = n/2}. Odd-n hyperplanes require an environment
/// with even scale (double_weights applied) so crossing halves stay integer.
struct SourceSpec {
    enum class Kind { Vertex, VertexSet, Hyperplane };
    Kind kind = Kind::Vertex;
    std::vector<VertexId> vertices;
    int64_t plane_n = 0;

    static SourceSpec vertex(VertexId v) { return {Kind::Vertex, {v}, 0}; }
    static SourceSpec vertex_set(std::vector<VertexId> vs) {
        return {Kind::VertexSet, std::move(vs), 0};
    }
    static SourceSpec hyperplane(int64_t n) { return {Kind::Hyperplane, {}, n}; }
};

/// Exact per-vertex scaled passage time T(source, v) over the box.
struct TimeField {
    SourceSpec source;
    std::vector<int64_t> dist;  // scaled; kInfTime if unreachable
    uint64_t env_fingerprint = 0;

    int64_t at(VertexId v) const { return dist[static_cast<size_t>(v)]; }
};

enum class SpBackend { Auto, BucketQueue, BinaryHeap };

/// Multi-source Dijkstra with per-source initial offsets. Non-negative
/// integer weights only; the two backends must agree exactly.
TimeField shortest_field_seeded(const Environment& env,
                                const std::vector<std::pair<VertexId, int64_t>>& seeds,
                                SpBackend backend = SpBackend::Auto);

TimeField shortest_field(const Environment& env, const SourceSpec& source,
                         SpBackend backend = SpBackend::Auto);

/// Seeds realizing a SourceSpec: dist 0 at vertices, or crossing-edge
/// half-weights for an odd hyperplane.
std::vector<std::pair<VertexId, int64_t>> source_seeds(const Environment& env,
                                                       const SourceSpec& source);

}  // namespace fpp
