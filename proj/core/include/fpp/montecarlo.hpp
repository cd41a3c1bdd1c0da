#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fpp/events.hpp"

namespace fpp {

struct WilsonInterval {
    double lo = 0.0, hi = 1.0;
};

/// Wilson score interval for k successes out of `total`.
WilsonInterval wilson(uint64_t k, uint64_t total, double z = 1.96);

/// Three-valued Monte Carlo tally for one event at one n. Undecided samples
/// (including box-invalid ones) widen the bracket [p_lo, p_hi] instead of
/// being dropped.
struct EstimateRecord {
    std::string event;
    int64_t n = 0;
    uint64_t samples = 0;
    uint64_t n_true = 0, n_false = 0, n_undecided = 0;
    uint64_t n_box_invalid = 0;  // subset of n_undecided
    double p_lo = 0.0, p_hi = 0.0;
    WilsonInterval ci_lo, ci_hi;
    double seconds = 0.0;  // measured; output files carry a placeholder
    uint64_t seed = 0;
};

struct McOptions {
    Budget budget;
    BoxPolicy policy;
    int threads = 1;  // affects speed only, never results
};

/// Per-sample pipeline: derive stream -> sample environment on the policy
/// box -> detect -> tally; the box is enlarged (kappa doubling, fresh draw
/// from the same stream) while the validity guard fails.
EstimateRecord estimate(const EventSpec& spec, const WeightDist& dist, uint64_t samples,
                        uint64_t master, const McOptions& opts);

/// Theorem item-2 scans: one record per ordered adjacent sphere pair (y,y')
/// resp. per u in S_n, all evaluated on shared per-sample time fields.
/// The last record is the reported maximum (by p_lo, then p_hi).
std::vector<EstimateRecord> estimate_sphere_family(EventFamily family, int dim, int64_t n,
                                                   const WeightDist& dist, uint64_t samples,
                                                   uint64_t master, const McOptions& opts);

struct ScanResult {
    std::vector<EstimateRecord> records;  // one per n (the max record for item-2 scans)
    double slope = 0.0;     // least-squares slope of log p_lo vs log n
    double slope_se = 0.0;  // its standard error
    int slope_points = 0;   // rows with p_lo > 0 entering the fit
};

ScanResult scan_n(const EventSpec& base, const std::vector<int64_t>& ns, const WeightDist& dist,
                  uint64_t samples, uint64_t master, const McOptions& opts);

}  // namespace fpp
