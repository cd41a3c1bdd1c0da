#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace fpp {

using Coord = int64_t;
using Coords = std::vector<Coord>;
using VertexId = int64_t;
using EdgeSlot = int64_t;  // vertex_id * d + axis; canonical iff valid

/// Finite axis-aligned box of Z^d with a total vertex <-> linear-index
/// bijection. Index order equals lexicographic order on coordinates
/// (first axis most significant), which is the order every sampling and
/// serialization contract in this project relies on.
class Box {
public:
    Box(Coords lo, Coords hi);

    static Box cube(int dim, Coord lo, Coord hi);
    // [-radius, radius]^dim around the origin
    static Box centered(int dim, Coord radius);

    int dim() const { return static_cast<int>(lo_.size()); }
    Coord lo(int axis) const { return lo_[axis]; }
    Coord hi(int axis) const { return hi_[axis]; }
    int64_t len(int axis) const { return hi_[axis] - lo_[axis] + 1; }

    int64_t vertex_count() const { return vertex_count_; }
    int64_t edge_count() const;

    bool contains(std::span<const Coord> x) const;
    bool contains(const Box& other) const;

    VertexId index_of(std::span<const Coord> x) const;
    Coords coords_of(VertexId v) const;
    void coords_of(VertexId v, std::span<Coord> out) const;
    Coord coord_of(VertexId v, int axis) const;

    /// Neighbor v +- e_axis, or nullopt when it leaves the box.
    std::optional<VertexId> neighbor(VertexId v, int axis, int dir) const;

    /// Canonical edge slot for the edge {v, v+e_axis}; valid iff the far
    /// endpoint is still inside the box.
    EdgeSlot edge_slot(VertexId v, int axis) const { return v * dim() + axis; }
    bool edge_slot_valid(VertexId v, int axis) const {
        return coord_of(v, axis) < hi_[axis];
    }

    /// Visits every undirected edge exactly once, ascending in
    /// (vertex index, axis) — the canonical edge order.
    template <typename F>
    void for_each_canonical_edge(F&& f) const {
        const int d = dim();
        Coords x(lo_);
        for (VertexId v = 0; v < vertex_count_; ++v) {
            for (int k = 0; k < d; ++k) {
                if (x[k] < hi_[k]) f(v, k, v * d + k);
            }
            // lexicographic increment, last axis fastest
            for (int k = d - 1; k >= 0; --k) {
                if (++x[k] <= hi_[k]) break;
                x[k] = lo_[k];
            }
        }
    }

    bool on_boundary(VertexId v) const;
    /// Boundary test that ignores the two faces of `skip_axis` at the given
    /// coordinate values (used by the hyperplane guard, which must not treat
    /// the plane-side face as an escape).
    bool on_boundary_excluding_face(VertexId v, int skip_axis, Coord skip_value) const;

    Box expanded(Coord margin) const;
    /// Clamp this box to [lo1..hi1] along the first axis.
    Box restricted_axis0(Coord lo1, Coord hi1) const;

    bool operator==(const Box& other) const = default;

    std::string to_string() const;

private:
    Coords lo_, hi_;
    std::vector<int64_t> stride_;
    int64_t vertex_count_ = 0;
};

/// Vertices x with ||x||_inf == n around the origin, lexicographic order.
std::vector<Coords> enumerate_sphere(const Box& box, int64_t n);

/// Ordered pairs (y, y') with y,y' on the sphere S_n and y ~ y'.
std::vector<std::pair<Coords, Coords>> sphere_adjacent_pairs(const Box& box, int64_t n);

/// max over pairs of ||x - y||_inf; throws on empty input.
Coord diameter(std::span<const Coords> vertices);

/// ell-1 norm of a coordinate difference.
int64_t l1_dist(std::span<const Coord> a, std::span<const Coord> b);

}  // namespace fpp
