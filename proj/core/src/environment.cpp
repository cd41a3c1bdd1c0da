#include "fpp/environment.hpp"

#include <limits>
#include <stdexcept>

namespace fpp {

namespace {
constexpr int64_t kNoEdge = -1;
}

Environment::Environment(Box box, uint64_t scale, std::vector<int64_t> weights, Provenance prov)
    : box_(std::move(box)), dim_(box_.dim()), scale_(scale), weights_(std::move(weights)),
      prov_(std::move(prov)) {
    if (scale_ < 1) throw std::invalid_argument("Environment: scale must be >= 1");
    if (weights_.size() != static_cast<size_t>(box_.vertex_count()) * dim_) {
        throw std::invalid_argument("Environment: weight array size mismatch");
    }
}

Environment Environment::sample(const Box& box, const WeightDist& dist, Xoshiro256PlusPlus stream,
                                uint64_t master_seed, uint64_t sample_index) {
    std::vector<int64_t> w(static_cast<size_t>(box.vertex_count()) * box.dim(), kNoEdge);
    box.for_each_canonical_edge([&](VertexId, int, EdgeSlot slot) {
        w[static_cast<size_t>(slot)] = dist.sample(stream);
    });
    Provenance prov;
    prov.master_seed = master_seed;
    prov.sample_index = sample_index;
    prov.dist_id = dist.id();
    return Environment(box, dist.scale(), std::move(w), std::move(prov));
}

Environment Environment::constant(const Box& box, int64_t weight_scaled, uint64_t scale) {
    std::vector<int64_t> w(static_cast<size_t>(box.vertex_count()) * box.dim(), kNoEdge);
    box.for_each_canonical_edge([&](VertexId, int, EdgeSlot slot) {
        w[static_cast<size_t>(slot)] = weight_scaled;
    });
    Provenance prov;
    prov.dist_id = "constant(" + std::to_string(weight_scaled) + "/" + std::to_string(scale) + ")";
    return Environment(box, scale, std::move(w), std::move(prov));
}

int64_t Environment::weight(const EdgeRef& e) const {
    const VertexId v = box_.index_of(e.base);
    if (!box_.edge_slot_valid(v, e.axis)) throw std::out_of_range("Environment: edge outside box");
    return weight(v, e.axis);
}

int64_t Environment::weight_between(VertexId u, VertexId v) const {
    if (u > v) std::swap(u, v);
    // v = u + stride_k for exactly one axis
    for (int k = 0; k < dim_; ++k) {
        const auto nb = box_.neighbor(u, k, +1);
        if (nb && *nb == v) return weight(u, k);
    }
    throw std::invalid_argument("Environment: vertices not adjacent");
}

Environment Environment::with_edge(const EdgeRef& e, int64_t value_scaled) const {
    if (value_scaled < 0) throw std::domain_error("with_edge: negative weight");
    const VertexId v = box_.index_of(e.base);
    if (!box_.edge_slot_valid(v, e.axis)) throw std::out_of_range("with_edge: edge outside box");
    Environment out(*this);
    out.weights_[static_cast<size_t>(box_.edge_slot(v, e.axis))] = value_scaled;
    Provenance::Op op;
    op.kind = Provenance::Op::Kind::SetEdge;
    op.base = e.base;
    op.axis = e.axis;
    op.value = value_scaled;
    out.prov_.ops.push_back(std::move(op));
    return out;
}

Environment Environment::reflected(int64_t plane_n) const {
    // box symmetric under x1 -> n - x1 means lo1 + hi1 == n
    if (box_.lo(0) + box_.hi(0) != plane_n) {
        throw std::out_of_range("reflected: box not symmetric under x1 -> n - x1");
    }
    Environment out(*this);
    Coords x(dim_);
    for (VertexId v = 0; v < box_.vertex_count(); ++v) {
        box_.coords_of(v, x);
        for (int k = 0; k < dim_; ++k) {
            if (!box_.edge_slot_valid(v, k)) continue;
            // image of edge {x, x+e_k}: axis 0 edges flip their base
            Coords y(x);
            y[0] = plane_n - x[0];
            if (k == 0) y[0] -= 1;
            const VertexId img = box_.index_of(y);
            out.weights_[static_cast<size_t>(box_.edge_slot(v, k))] =
                weights_[static_cast<size_t>(box_.edge_slot(img, k))];
        }
    }
    Provenance::Op op;
    op.kind = Provenance::Op::Kind::Reflect;
    op.plane_n = plane_n;
    out.prov_.ops.push_back(std::move(op));
    return out;
}

Environment Environment::doubled() const {
    Environment out(*this);
    if (scale_ > std::numeric_limits<uint64_t>::max() / 2) {
        throw std::overflow_error("doubled: scale overflow");
    }
    out.scale_ = scale_ * 2;
    for (auto& w : out.weights_) {
        if (w == kNoEdge) continue;
        if (w > std::numeric_limits<int64_t>::max() / 2) {
            throw std::overflow_error("doubled: weight overflow");
        }
        w *= 2;
    }
    Provenance::Op op;
    op.kind = Provenance::Op::Kind::Double;
    out.prov_.ops.push_back(std::move(op));
    return out;
}

Environment Environment::restricted(const Box& sub) const {
    if (!box_.contains(sub)) throw std::out_of_range("restricted: sub-box not contained");
    std::vector<int64_t> w(static_cast<size_t>(sub.vertex_count()) * dim_, kNoEdge);
    Coords x(dim_);
    sub.for_each_canonical_edge([&](VertexId v, int k, EdgeSlot slot) {
        sub.coords_of(v, x);
        w[static_cast<size_t>(slot)] = weight(box_.index_of(x), k);
    });
    return Environment(sub, scale_, std::move(w), prov_);
}

uint64_t Environment::fingerprint() const {
    uint64_t h = 0xCBF29CE484222325ull;
    auto mix = [&h](uint64_t x) {
        for (int i = 0; i < 8; ++i) {
            h ^= (x >> (8 * i)) & 0xFF;
            h *= 0x100000001B3ull;
        }
    };
    mix(static_cast<uint64_t>(box_.dim()));
    for (int k = 0; k < dim_; ++k) {
        mix(static_cast<uint64_t>(box_.lo(k)));
        mix(static_cast<uint64_t>(box_.hi(k)));
    }
    mix(scale_);
    for (int64_t w : weights_) mix(static_cast<uint64_t>(w));
    return h;
}

bool Environment::same_weights(const Environment& other) const {
    return box_ == other.box_ && scale_ == other.scale_ && weights_ == other.weights_;
}

std::vector<EdgeSlot> Environment::diff(const Environment& other) const {
    if (!(box_ == other.box_)) throw std::invalid_argument("diff: box mismatch");
    std::vector<EdgeSlot> out;
    for (size_t i = 0; i < weights_.size(); ++i) {
        if (weights_[i] != other.weights_[i]) out.push_back(static_cast<EdgeSlot>(i));
    }
    return out;
}

}  // namespace fpp
