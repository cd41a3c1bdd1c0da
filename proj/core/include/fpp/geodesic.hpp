#pragma once

#include <optional>
#include <vector>

#include "fpp/environment.hpp"
#include "fpp/time_field.hpp"

namespace fpp {

/// Where a point-to-hyperplane geodesic meets H_n. For even n this is a
/// lattice vertex on the plane; for odd n it is the midpoint of the
/// crossing edge {left, left+e1}, identified by the shared lateral
/// coordinates. Ordered lexicographically by lateral vector.
struct HyperplaneEndpoint {
    bool odd = false;
    Coords lateral;      // coordinates along axes 1..d-1
    Coords near_vertex;  // even: the plane vertex; odd: the left endpoint

    bool operator==(const HyperplaneEndpoint&) const = default;
    bool operator<(const HyperplaneEndpoint& o) const { return lateral < o.lateral; }
};

struct DagEdge {
    VertexId from = 0, to = 0;
    int64_t w = 0;
};

/// All edges lying on some geodesic between the terminals, oriented from
/// source side to target side. Every simple source-to-target path inside
/// the DAG costs exactly `total`; zero-weight edges may appear in both
/// orientations, so consumers quantify over simple paths.
///
/// Hyperplane DAGs are built on the left-restricted graph (columns up to
/// the last one before H_n); the final crossing steps appear as terminal
/// attachments with their (half-)weights. This encodes the cut-at-first-
/// contact normal form of geodesics and keeps every hyperplane decision a
/// function of the edges left of H_n.
struct GeodesicDag {
    Box box;  // compute box: env box for point targets, left-restricted otherwise
    uint64_t scale = 1;
    uint64_t env_fingerprint = 0;
    int64_t total = 0;  // scaled optimal time
    VertexId source = 0;
    std::optional<VertexId> target;   // point target
    std::optional<int64_t> plane_n;   // hyperplane target

    std::vector<DagEdge> edges;
    std::vector<VertexId> vertices;  // sorted; every vertex on some geodesic

    struct Terminal {
        VertexId attach = 0;  // rightmost-column vertex taking the final step
        int64_t cost = 0;     // scaled cost of the final step
        HyperplaneEndpoint endpoint;
    };
    std::vector<Terminal> terminals;  // hyperplane targets only

    std::vector<HyperplaneEndpoint> endpoints() const;
    bool is_hyperplane() const { return plane_n.has_value(); }
};

/// A concrete geodesic extracted from a DAG.
struct GeoPath {
    std::vector<VertexId> verts;  // in dag.box indexing
    std::optional<HyperplaneEndpoint> endpoint;
    int64_t cost = 0;  // scaled
};

GeodesicDag geodesic_dag(const Environment& env, VertexId s, VertexId t,
                         SpBackend backend = SpBackend::Auto);

/// Same, with the two fields supplied by the caller (sphere scans amortize
/// a field per endpoint across many DAGs).
GeodesicDag geodesic_dag_from_fields(const Environment& env, VertexId s, VertexId t,
                                     const TimeField& from_s, const TimeField& from_t);

/// T(x, H_n), scaled. Requires even scale when n is odd and x strictly left
/// of the plane.
int64_t hyperplane_time(const Environment& env, VertexId x, int64_t n);

/// The field v -> T(v, H_n) over the left-restricted box, together with that
/// box. One Dijkstra serves every left source.
std::pair<Box, TimeField> hyperplane_field(const Environment& env, int64_t n);

GeodesicDag hyperplane_dag(const Environment& env, VertexId x, int64_t n,
                           SpBackend backend = SpBackend::Auto);

/// The lexicographically smallest simple source-to-target vertex sequence in
/// the DAG (greedy smallest-next-vertex with dead-end backtracking;
/// terminating is preferred over extending). Deterministic.
GeoPath canonical_geodesic(const GeodesicDag& dag);

/// B_z(x,y) = T(x,z) - T(y,z), scaled; may be negative.
int64_t busemann(const Environment& env, VertexId x, VertexId y, VertexId z);

/// True iff a DAG vertex lies on the inner boundary of the box. For
/// hyperplane DAGs the plane-side face does not count: ending there is the
/// point of the computation, not an escape.
bool dag_touches_boundary(const GeodesicDag& dag, const Box& box);

/// Union of all geodesics from `source` to each target: vertices v such that
/// some target z has T(s,v) + T(v,z) = T(s,z). Used by the box-validity
/// guard for sphere scans.
std::vector<VertexId> geodesic_union_vertices(const Environment& env, VertexId source,
                                              const std::vector<VertexId>& targets);

/// Re-check that a path is a geodesic for the DAG's terminals: consecutive
/// adjacency, exact cost, and correct endpoints.
bool verify_geodesic(const Environment& env, const GeodesicDag& dag, const GeoPath& path);

}  // namespace fpp
