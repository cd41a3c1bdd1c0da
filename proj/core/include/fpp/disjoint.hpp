#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "fpp/geodesic.hpp"

namespace fpp {

enum class Ternary { True, False, Undecided };

const char* to_string(Ternary t);

struct Budget {
    int64_t max_search_nodes = 1'000'000;
    int64_t max_enumerated_geodesics = 100'000;
};

struct Witness {
    Box box;  // indexing of both paths
    GeoPath a, b;
};

/// Three-valued outcome of a disjointness decision. True always carries a
/// witness pair that re-verifies.
struct Decision {
    Ternary outcome = Ternary::Undecided;
    std::string reason;
    std::optional<Witness> witness;

    static Decision yes(std::string why, Witness w) {
        return {Ternary::True, std::move(why), std::move(w)};
    }
    static Decision no(std::string why) { return {Ternary::False, std::move(why), {}}; }
    static Decision open(std::string why) { return {Ternary::Undecided, std::move(why), {}}; }

    bool is_true() const { return outcome == Ternary::True; }
    bool is_false() const { return outcome == Ternary::False; }
    bool decided() const { return outcome != Ternary::Undecided; }
};

/// Thrown by the enumeration oracle when the geodesic count exceeds its cap;
/// the test harness reacts by shrinking the instance.
struct OracleOverflow : std::runtime_error {
    OracleOverflow() : std::runtime_error("oracle: geodesic count cap exceeded") {}
};

/// Exact Menger reduction on one DAG: do two geodesics sharing only the
/// terminals (point target) resp. only the source (hyperplane target)
/// exist? Vertex-split unit-capacity max flow; never Undecided.
Decision internally_disjoint_pair(const GeodesicDag& dag);

/// Exact decision for two DAGs with distinct sources and a common target
/// kind: does a vertex-disjoint pair (one geodesic per DAG) exist?
/// Hyperplane pairs are decided purely by the min-cost-flow total; point
/// pairs fall back to the budgeted exact search when the flow is
/// inconclusive about the pairing.
Decision disjoint_dag_pair(const GeodesicDag& a, const GeodesicDag& b, const Budget& budget);

/// A_n(i,j): disjoint hyperplane geodesics from ie2 and je2. Exact.
Decision source_disjoint_hyperplane_pair(const Environment& env, int64_t i, int64_t j, int64_t n);

/// Theorem/1-style paired disjointness for distinct terminal pairs.
/// Tier 1: unpaired min-cost relaxation (exact False filter).
/// Tier 2: decomposition with identity pairing (sufficient True).
/// Tier 3: budgeted exact search over simple DAG path pairs.
Decision paired_disjoint(const Environment& env, VertexId s1, VertexId t1, VertexId s2,
                         VertexId t2, const Budget& budget);

/// Whether every pair of geodesics (one per DAG) intersects: the exact
/// negation of the corresponding disjoint-pair decision.
Decision intersects_all_pairs(const GeodesicDag& a, const GeodesicDag& b, const Budget& budget);

/// Ground-truth oracle: enumerate all simple geodesics in each DAG (throws
/// OracleOverflow beyond `cap`) and test every pair with bitsets.
Decision oracle_pair_disjoint(const Environment& env, VertexId s1, VertexId t1, VertexId s2,
                              VertexId t2, int64_t cap);

/// Oracle building blocks, reused by tests.
std::vector<GeoPath> all_geodesics(const GeodesicDag& dag, int64_t cap);
Decision oracle_disjoint_dag_pair(const GeodesicDag& a, const GeodesicDag& b, int64_t cap);
Decision oracle_internally_disjoint(const GeodesicDag& dag, int64_t cap);

/// Exact two-source flow into one shared target u with everything else
/// vertex-capacity 1: do gamma1 from s1 and gamma2 from s2, both geodesics
/// to u, share only u? (The verification engine of the sphere surgeries.)
Decision two_source_shared_target_pair(const Environment& env, VertexId s1, VertexId s2,
                                       VertexId u);

/// Re-check a witness: both paths are geodesics for their DAG's terminals
/// and the disjointness condition holds exactly.
bool verify_witness_disjoint(const Environment& env, const GeodesicDag& a, const GeodesicDag& b,
                             const Witness& w);
bool verify_witness_internal(const Environment& env, const GeodesicDag& dag, const Witness& w);

}  // namespace fpp
