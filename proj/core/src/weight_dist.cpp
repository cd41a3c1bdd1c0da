#include "fpp/weight_dist.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace fpp {

WeightDist::WeightDist(std::vector<WeightAtom> atoms, uint64_t prob_den, uint64_t scale)
    : atoms_(std::move(atoms)), prob_den_(prob_den), scale_(scale) {
    if (atoms_.empty()) throw std::invalid_argument("WeightDist: empty support");
    if (prob_den_ == 0 || scale_ == 0) throw std::invalid_argument("WeightDist: zero denominator");
    std::sort(atoms_.begin(), atoms_.end(),
              [](const WeightAtom& a, const WeightAtom& b) { return a.value_scaled < b.value_scaled; });
    uint64_t sum = 0;
    int64_t prev = -1;
    for (const auto& a : atoms_) {
        if (a.value_scaled < 0) throw std::invalid_argument("WeightDist: negative atom");
        if (a.value_scaled == prev) throw std::invalid_argument("WeightDist: duplicate atom");
        prev = a.value_scaled;
        sum += a.prob_num;
        cum_.push_back(sum);
    }
    if (sum != prob_den_) throw std::invalid_argument("WeightDist: probabilities do not sum to 1");
}

WeightDist WeightDist::constant(int64_t value_scaled, uint64_t scale) {
    return WeightDist({{value_scaled, 1}}, 1, scale);
}

WeightDist WeightDist::uniform_int(int64_t lo, int64_t hi) {
    if (lo > hi) throw std::invalid_argument("uniform_int: lo > hi");
    std::vector<WeightAtom> atoms;
    for (int64_t v = lo; v <= hi; ++v) atoms.push_back({v, 1});
    return WeightDist(std::move(atoms), static_cast<uint64_t>(hi - lo + 1), 1);
}

WeightDist WeightDist::range_with_probs(const std::vector<uint64_t>& nums, uint64_t den) {
    std::vector<WeightAtom> atoms;
    for (size_t v = 0; v < nums.size(); ++v) {
        if (nums[v] > 0) atoms.push_back({static_cast<int64_t>(v), nums[v]});
    }
    return WeightDist(std::move(atoms), den, 1);
}

uint64_t WeightDist::zero_mass_num() const {
    for (const auto& a : atoms_) {
        if (a.value_scaled == 0) return a.prob_num;
    }
    return 0;
}

int64_t WeightDist::max_atom_scaled() const { return atoms_.back().value_scaled; }

int64_t WeightDist::support_bound() const {
    return (max_atom_scaled() + static_cast<int64_t>(scale_) - 1) / static_cast<int64_t>(scale_);
}

bool WeightDist::theorem2_regime() const {
    if (scale_ != 1) return false;
    for (size_t i = 0; i < atoms_.size(); ++i) {
        if (atoms_[i].value_scaled != static_cast<int64_t>(i)) return false;
        if (atoms_[i].prob_num == 0) return false;
    }
    return true;
}

int64_t WeightDist::sample(Xoshiro256PlusPlus& rng) const {
    if (atoms_.size() == 1) return atoms_[0].value_scaled;
    const uint64_t u = rng.below(prob_den_);
    const auto it = std::upper_bound(cum_.begin(), cum_.end(), u);
    return atoms_[static_cast<size_t>(it - cum_.begin())].value_scaled;
}

std::string WeightDist::id() const {
    std::ostringstream os;
    os << "atoms(q=" << scale_ << ",den=" << prob_den_;
    for (const auto& a : atoms_) os << "," << a.value_scaled << ":" << a.prob_num;
    os << ")";
    return os.str();
}

}  // namespace fpp
