#include "fpp/box.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace fpp {

Box::Box(Coords lo, Coords hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
    if (lo_.size() != hi_.size() || lo_.size() < 2) {
        throw std::invalid_argument("Box: need matching bounds with d >= 2");
    }
    for (size_t k = 0; k < lo_.size(); ++k) {
        if (lo_[k] > hi_[k]) throw std::invalid_argument("Box: lo > hi");
    }
    const int d = dim();
    stride_.assign(d, 1);
    vertex_count_ = 1;
    for (int k = d - 1; k >= 0; --k) {
        stride_[k] = vertex_count_;
        const int64_t l = len(k);
        if (vertex_count_ > std::numeric_limits<int64_t>::max() / l) {
            throw std::overflow_error("Box: vertex count exceeds 64-bit range");
        }
        vertex_count_ *= l;
    }
}

Box Box::cube(int dim, Coord lo, Coord hi) {
    return Box(Coords(dim, lo), Coords(dim, hi));
}

Box Box::centered(int dim, Coord radius) { return cube(dim, -radius, radius); }

int64_t Box::edge_count() const {
    int64_t total = 0;
    for (int k = 0; k < dim(); ++k) {
        int64_t prod = 1;
        for (int j = 0; j < dim(); ++j) prod *= len(j) - (j == k ? 1 : 0);
        total += prod;
    }
    return total;
}

bool Box::contains(std::span<const Coord> x) const {
    if (static_cast<int>(x.size()) != dim()) return false;
    for (int k = 0; k < dim(); ++k) {
        if (x[k] < lo_[k] || x[k] > hi_[k]) return false;
    }
    return true;
}

bool Box::contains(const Box& other) const {
    if (other.dim() != dim()) return false;
    for (int k = 0; k < dim(); ++k) {
        if (other.lo_[k] < lo_[k] || other.hi_[k] > hi_[k]) return false;
    }
    return true;
}

VertexId Box::index_of(std::span<const Coord> x) const {
    if (!contains(x)) throw std::out_of_range("Box::index_of: vertex outside box");
    VertexId v = 0;
    for (int k = 0; k < dim(); ++k) v += (x[k] - lo_[k]) * stride_[k];
    return v;
}

Coords Box::coords_of(VertexId v) const {
    Coords x(dim());
    coords_of(v, x);
    return x;
}

void Box::coords_of(VertexId v, std::span<Coord> out) const {
    for (int k = 0; k < dim(); ++k) {
        out[k] = lo_[k] + v / stride_[k];
        v %= stride_[k];
    }
}

Coord Box::coord_of(VertexId v, int axis) const {
    return lo_[axis] + (v / stride_[axis]) % len(axis);
}

std::optional<VertexId> Box::neighbor(VertexId v, int axis, int dir) const {
    const Coord c = coord_of(v, axis);
    if (dir > 0 ? c >= hi_[axis] : c <= lo_[axis]) return std::nullopt;
    return v + (dir > 0 ? stride_[axis] : -stride_[axis]);
}

bool Box::on_boundary(VertexId v) const {
    for (int k = 0; k < dim(); ++k) {
        const Coord c = coord_of(v, k);
        if (c == lo_[k] || c == hi_[k]) return true;
    }
    return false;
}

bool Box::on_boundary_excluding_face(VertexId v, int skip_axis, Coord skip_value) const {
    for (int k = 0; k < dim(); ++k) {
        const Coord c = coord_of(v, k);
        if (c == lo_[k] && !(k == skip_axis && lo_[k] == skip_value)) return true;
        if (c == hi_[k] && !(k == skip_axis && hi_[k] == skip_value)) return true;
    }
    return false;
}

Box Box::expanded(Coord margin) const {
    Coords lo(lo_), hi(hi_);
    for (int k = 0; k < dim(); ++k) {
        lo[k] -= margin;
        hi[k] += margin;
    }
    return Box(std::move(lo), std::move(hi));
}

Box Box::restricted_axis0(Coord lo1, Coord hi1) const {
    Coords lo(lo_), hi(hi_);
    lo[0] = std::max(lo[0], lo1);
    hi[0] = std::min(hi[0], hi1);
    return Box(std::move(lo), std::move(hi));
}

std::string Box::to_string() const {
    std::ostringstream os;
    for (int k = 0; k < dim(); ++k) {
        os << (k ? "x" : "") << "[" << lo_[k] << "," << hi_[k] << "]";
    }
    return os.str();
}

std::vector<Coords> enumerate_sphere(const Box& box, int64_t n) {
    const int d = box.dim();
    if (n < 0) throw std::invalid_argument("enumerate_sphere: n < 0");
    const Box shell = Box::centered(d, std::max<int64_t>(n, 1));
    if (n > 0 && !box.contains(Box::centered(d, n))) {
        throw std::out_of_range("enumerate_sphere: sphere not contained in box");
    }
    if (n == 0) {
        if (!box.contains(Coords(d, 0))) {
            throw std::out_of_range("enumerate_sphere: origin not in box");
        }
        return {Coords(d, 0)};
    }
    std::vector<Coords> out;
    Coords x(d, -n);
    while (true) {
        Coord sup = 0;
        for (int k = 0; k < d; ++k) sup = std::max<Coord>(sup, std::abs(x[k]));
        if (sup == n) out.push_back(x);
        int k = d - 1;
        for (; k >= 0; --k) {
            if (++x[k] <= n) break;
            x[k] = -n;
        }
        if (k < 0) break;
    }
    (void)shell;
    return out;
}

std::vector<std::pair<Coords, Coords>> sphere_adjacent_pairs(const Box& box, int64_t n) {
    std::vector<std::pair<Coords, Coords>> out;
    const auto sphere = enumerate_sphere(box, n);
    const int d = box.dim();
    for (const auto& y : sphere) {
        for (int k = 0; k < d; ++k) {
            for (int dir : {-1, +1}) {
                Coords y2(y);
                y2[k] += dir;
                Coord sup = 0;
                for (int j = 0; j < d; ++j) sup = std::max<Coord>(sup, std::abs(y2[j]));
                if (sup == n) out.emplace_back(y, y2);
            }
        }
    }
    return out;
}

Coord diameter(std::span<const Coords> vertices) {
    if (vertices.empty()) throw std::domain_error("diameter: empty vertex set");
    const size_t d = vertices.front().size();
    Coord best = 0;
    for (size_t k = 0; k < d; ++k) {
        Coord mn = vertices.front()[k], mx = mn;
        for (const auto& x : vertices) {
            mn = std::min(mn, x[k]);
            mx = std::max(mx, x[k]);
        }
        best = std::max(best, mx - mn);
    }
    return best;
}

int64_t l1_dist(std::span<const Coord> a, std::span<const Coord> b) {
    int64_t s = 0;
    for (size_t k = 0; k < a.size(); ++k) s += std::abs(a[k] - b[k]);
    return s;
}

}  // namespace fpp
