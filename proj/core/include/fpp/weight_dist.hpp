#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fpp/rng.hpp"

namespace fpp {

/// One support atom: a non-negative rational weight value stored as
/// value_scaled / Q, with probability prob_num / prob_den (den shared).
struct WeightAtom {
    int64_t value_scaled = 0;
    uint64_t prob_num = 0;
};

/// Finite weight distribution with exact rational atoms and probabilities.
/// All arithmetic on probabilities is integer arithmetic; there is no
/// floating-point sampling path.
class WeightDist {
public:
    WeightDist(std::vector<WeightAtom> atoms, uint64_t prob_den, uint64_t scale);

    static WeightDist constant(int64_t value_scaled, uint64_t scale = 1);
    static WeightDist uniform_int(int64_t lo, int64_t hi);  // scale 1
    /// Support {0,1,...,s}, probabilities nums[i]/den.
    static WeightDist range_with_probs(const std::vector<uint64_t>& nums, uint64_t den);

    uint64_t scale() const { return scale_; }
    uint64_t prob_den() const { return prob_den_; }
    const std::vector<WeightAtom>& atoms() const { return atoms_; }

    bool is_deterministic() const { return atoms_.size() == 1; }
    /// P[tau = 0] as an exact fraction numerator over prob_den().
    uint64_t zero_mass_num() const;
    int64_t max_atom_scaled() const;
    /// Smallest integer >= max physical atom (the paper's S when scale==1).
    int64_t support_bound() const;

    /// True iff the support is exactly {0,1,...,S} at scale 1 with every
    /// atom's probability positive.
    bool theorem2_regime() const;

    int64_t sample(Xoshiro256PlusPlus& rng) const;

    /// Stable identifier embedded in provenance and config fingerprints.
    std::string id() const;

private:
    std::vector<WeightAtom> atoms_;
    uint64_t prob_den_ = 1;
    uint64_t scale_ = 1;
    std::vector<uint64_t> cum_;  // cumulative numerators
};

}  // namespace fpp
