#pragma once

#include <optional>

#include "fpp/environment.hpp"
#include "fpp/time_field.hpp"

namespace fpp {

/// Connected components of the sub-graph of edges with tau <= M. The largest
/// cluster is the finite-box stand-in for the infinite cluster; samples where
/// it misses a box face are flagged, the proxy being dubious there.
struct ClusterLabeling {
    int64_t threshold_scaled = 0;
    std::vector<int32_t> label;   // per vertex
    std::vector<int64_t> sizes;   // per label id
    int32_t largest = -1;
    bool largest_touches_all_faces = false;
};

ClusterLabeling clusters(const Environment& env, int64_t threshold_scaled);

/// Intrinsic hop distance within the open sub-graph; nullopt when x and y sit
/// in different clusters.
std::optional<int64_t> chemical_distance(const ClusterLabeling& lab, const Environment& env,
                                         VertexId x, VertexId y);

/// x -> x^M: the ell-1-closest vertex of the largest cluster, ties broken
/// lexicographically.
struct RegularizedMap {
    int64_t threshold_scaled = 0;
    std::vector<VertexId> image;
};

RegularizedMap regularized_map(const Environment& env, const ClusterLabeling& lab);

/// T^M(x, y) = T(x^M, y^M), scaled.
int64_t t_regularized(const Environment& env, const RegularizedMap& map, VertexId x, VertexId y);

struct MuEstimate {
    Coords direction;
    std::vector<int64_t> ladder;
    std::vector<double> mean;        // of T^M(0, n x) / n, physical units
    std::vector<double> half_width;  // 1.96 * sd / sqrt(samples)
    uint64_t samples = 0;
    double mu_hat = 0.0;  // mean at the largest rung
    bool monotone_nonincreasing = true;
};

MuEstimate mu_estimate(const WeightDist& dist, int64_t threshold_scaled, const Coords& direction,
                       const std::vector<int64_t>& ladder, uint64_t samples, uint64_t master);

struct CesaroResult {
    double fraction = 0.0;  // share of k <= N passing the probability bar
    std::vector<int64_t> count_ge;  // per k: samples with B^M_{kx}(0,x) >= mu_hat (1-eps)
    uint64_t samples = 0;
    int64_t horizon = 0;
    double mu_hat = 0.0;
    double eps = 0.0;
};

CesaroResult cesaro_fraction(const WeightDist& dist, int64_t threshold_scaled,
                             const Coords& direction, int64_t horizon, double eps,
                             uint64_t samples, uint64_t master);

}  // namespace fpp
