#pragma once

#include <optional>
#include <string>

#include "fpp/disjoint.hpp"

namespace fpp {

enum class EventFamily {
    Thm1Item1,             // disjoint geodesics 0->ne1 and e2->ne1+e2
    Thm1Item2,             // disjoint geodesics 0->y and e2->y' for y ~ y' on S_n
    Thm2Item1,             // two geodesics 0->ne1 sharing only {0, ne1}
    Thm2Item2,             // two geodesics 0->u sharing only {0, u}, u on S_n
    An,                    // disjoint hyperplane geodesics from ie2 and je2
    Gn,                    // A_n(0,1) with both witnesses of diameter <= C2*n
    SameSourceHyperplane,  // two geodesics 0->H_n sharing only {0}
    CoexLevel,             // both Busemann level sets at K meet S_n
};

struct EventSpec {
    EventFamily family = EventFamily::Thm1Item1;
    int dim = 2;
    int64_t n = 1;
    Coords y, y2;        // Thm1Item2
    Coords u;            // Thm2Item2
    int64_t i = 0, j = 1;  // An
    int64_t c2 = 4;        // Gn diameter constant
    int64_t level_k = 0;   // CoexLevel (physical units)

    static EventSpec thm1item1(int dim, int64_t n);
    static EventSpec thm1item2(int dim, int64_t n, Coords y, Coords y2);
    static EventSpec thm2item1(int dim, int64_t n);
    static EventSpec thm2item2(int dim, int64_t n, Coords u);
    static EventSpec an(int dim, int64_t n, int64_t i, int64_t j);
    static EventSpec gn(int dim, int64_t n, int64_t c2 = 4);
    static EventSpec same_source_hyperplane(int dim, int64_t n);
    static EventSpec coex_level(int dim, int64_t n, int64_t k);

    std::string label() const;
};

struct BoxPolicy {
    int64_t kappa = 1;
    int64_t kappa_max = 4;
};

/// Sampling window for one event at margin multiplier kappa: the bounding
/// box of the event's anchor vertices, padded by kappa*n on every side.
Box policy_box(const EventSpec& spec, int64_t kappa);

struct DetectResult {
    Decision decision;
    bool box_valid = true;  // no relevant geodesic structure touched the boundary
};

/// Routes the event to its disjointness decision. Doubles the environment
/// internally for odd-n hyperplane events. box_valid reports whether the
/// finite-volume guard held; callers enlarge the box or count the sample
/// Undecided when it did not.
DetectResult detect(const EventSpec& spec, const Environment& env, const Budget& budget);

/// D = T(0,H_n) - T(e2,H_n), scaled at the environment scale.
int64_t d_statistic(const Environment& env2x, int64_t n);
/// Whether a scaled quantity is an integer in physical units.
inline bool is_physical_integer(const Environment& env, int64_t scaled) {
    return scaled % static_cast<int64_t>(env.scale()) == 0;
}

struct SurgeryReport {
    bool premise_held = false;
    bool premise_undecided = false;  // budgeted premise could not be established
    bool postconditions_verified = false;
    int64_t value_scaled = 0;  // Delta, i0-1, |Delta| or K (scaled)
    std::optional<Environment> modified;
    std::vector<std::string> failures;  // which postcondition checks failed
    std::string note;

    bool faithful() const { return !premise_held || postconditions_verified; }
};

/// Prop 2.4: on A_n(0,1) with integer D, set tau(0,e2) = |D| and re-verify
/// that two geodesics to H_n sharing only the source exist.
SurgeryReport surgery_prop24(const Environment& env2x, int64_t n);

/// Claim 2.5: odd n, non-integer D, half-integer T(0,H_n): decrement the
/// crossing edge at the canonical geodesic's endpoint by one physical unit;
/// re-verify A_n(0,1), the unchanged crossing edge, and D' = D - 1/2.
SurgeryReport surgery_claim25(const Environment& env2x, int64_t n);

struct SphereScanHit {
    Coords y, y2;          // adjacent sphere vertices, B_y < K <= B_{y'}
    int64_t delta_scaled;  // T(0,y) - T_K(e2,y')
};

/// Claim 3.2 scan: first adjacent sphere pair (fixed traversal order) where
/// the Busemann level K separates y from y'.
std::optional<SphereScanHit> scan_sphere_K(const Environment& env, int64_t n, int64_t level_k);

/// Claim 3.3: set tau(y,y') = |Delta| and verify T(0,u) = T_K(e2,u) with
/// geodesics from 0 and e2 meeting only at u (u = y or y' by sign of Delta).
SurgeryReport surgery_claim33(const Environment& env, int64_t n, int64_t level_k,
                              const Budget& budget);

/// Claim 3.4: set tau(0,e2) = K and verify two internally disjoint
/// geodesics 0 -> u.
SurgeryReport surgery_claim34(const Environment& env, int64_t n, int64_t level_k, const Coords& u);

struct GnWitnessResult {
    GeoPath g0, g1;  // disjoint hyperplane geodesics from 0 and e2
    HyperplaneEndpoint u0, u1;
    Box box;  // left-restricted compute box for the paths
    bool lambda_member = false;  // endpoints inside {n/2} x [-C2*n, C2*n]^{d-1}
};

/// Deterministic G_n witness: the flow decomposition pair, accepted when
/// both diameters are at most C2*n.
std::optional<GnWitnessResult> gn_witness(const Environment& env2x, int64_t n, int64_t c2);

/// Claim 2.7 executable check. envL and envR are independent samples on the
/// same left half-box (axis-0 range ending at the plane column n/2). Returns
/// true when the premise fails (vacuous) or the glued concatenations verify
/// as disjoint geodesics. Even n only.
bool symmetrization_check(const Environment& envL, const Environment& envR, int64_t n, int64_t c2);

/// Builds the glued environment used by symmetrization_check (exposed for
/// tests): left weights from envL, right weights mirrored from envR,
/// in-plane weights from envL.
Environment glue_mirror(const Environment& envL, const Environment& envR, int64_t n);

/// Prop 2.2 induction step: whenever all pairs of geodesics of consecutive
/// Gamma_i, Gamma_{i+1} intersect, endpoints(Gamma_i) must be contained in
/// endpoints(Gamma_{i+1}); checks i = 0 .. c_mult*n - 1.
bool mn_chain_check(const Environment& env2x, int64_t n, int64_t c_mult);

struct CoexStats {
    int axis = 1;
    int64_t offset = 0;   // the pair is (a*e_axis, (a+1)*e_axis)
    int64_t horizon = 0;  // N
    std::vector<int64_t> b_pos;  // B_{k e_axis}(pair), k = 1..N, scaled
    std::vector<int64_t> b_neg;  // k = -1..-N, scaled
    int64_t max_pos = 0, min_neg = 0;  // finite-horizon limsup/liminf proxies
    int64_t pair_edge_weight = 0;      // scaled tau of the pair edge
    int64_t level_bound = 0;           // S: levels scanned are -S..S (physical)
    std::vector<int64_t> count_ge_pos;  // per K: #{k in [1,N] : B >= K}
    std::vector<int64_t> count_lt_neg;  // per K: #{k in [-N,-1] : B < K}
};

CoexStats coex_stats(const Environment& env, int64_t horizon, int64_t level_bound, int axis = 1,
                     int64_t offset = 0);

}  // namespace fpp
