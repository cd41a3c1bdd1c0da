#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fpp/box.hpp"
#include "fpp/weight_dist.hpp"

namespace fpp {

/// Canonical reference to the undirected edge {base, base + e_axis}.
struct EdgeRef {
    Coords base;
    int axis = 0;

    bool operator==(const EdgeRef&) const = default;
};

/// Replayable record of how an environment was produced and then modified.
struct Provenance {
    uint64_t master_seed = 0;
    uint64_t sample_index = 0;
    std::string dist_id;

    struct Op {
        enum class Kind { SetEdge, Double, Reflect } kind;
        Coords base;         // SetEdge
        int axis = 0;        // SetEdge
        int64_t value = 0;   // SetEdge (scaled)
        int64_t plane_n = 0; // Reflect
    };
    std::vector<Op> ops;
};

/// The random medium: one scaled-integer weight per canonical edge of a
/// finite box. Stored weights are Q times the physical weight, so geodesic
/// ties are exact integer equalities. Immutable after construction; all
/// modifying operations return new values.
class Environment {
public:
    Environment(Box box, uint64_t scale, std::vector<int64_t> weights, Provenance prov);

    /// One i.i.d. draw per canonical edge, in canonical (lexicographic) edge
    /// order. Byte-identical for identical (box, dist, stream).
    static Environment sample(const Box& box, const WeightDist& dist, Xoshiro256PlusPlus stream,
                              uint64_t master_seed = 0, uint64_t sample_index = 0);
    static Environment constant(const Box& box, int64_t weight_scaled, uint64_t scale = 1);

    const Box& box() const { return box_; }
    uint64_t scale() const { return scale_; }

    int64_t weight_slot(EdgeSlot slot) const { return weights_[static_cast<size_t>(slot)]; }
    int64_t weight(VertexId v, int axis) const { return weights_[static_cast<size_t>(v) * dim_ + axis]; }
    int64_t weight(const EdgeRef& e) const;
    /// Weight of the edge {u, v} for neighboring vertices.
    int64_t weight_between(VertexId u, VertexId v) const;

    const std::vector<int64_t>& raw_weights() const { return weights_; }
    const Provenance& provenance() const { return prov_; }

    /// Copy with exactly edge e changed to value (scaled); logged.
    Environment with_edge(const EdgeRef& e, int64_t value_scaled) const;
    /// Weights pulled back under x1 -> n - x1 (box must be symmetric).
    Environment reflected(int64_t plane_n) const;
    /// All weights and the scale multiplied by 2; physical times unchanged.
    Environment doubled() const;
    /// Copy restricted to a sub-box (weights of surviving edges kept).
    Environment restricted(const Box& sub) const;

    /// FNV-1a over box, scale and weights; identifies the medium.
    uint64_t fingerprint() const;

    bool same_weights(const Environment& other) const;
    /// Slots where the two environments differ (for surgery diffs).
    std::vector<EdgeSlot> diff(const Environment& other) const;

private:
    Box box_;
    int dim_;
    uint64_t scale_;
    std::vector<int64_t> weights_;  // size V*d; -1 in non-edge slots
    Provenance prov_;
};

}  // namespace fpp
