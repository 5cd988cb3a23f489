#pragma once

#include <memory>
#include <vector>

#include "flowering/error.hpp"
#include "flowering/rim.hpp"
#include "flowering/word.hpp"

namespace flowering {

// Subsets V_0..V_{m-1} of a parent RIM with isomorphisms phi_i from the cut
// graph at V_0 onto the cut graph at V_i. phi(i)[k] is the parent vertex that
// local vertex k of the cut is sent to.
class CutCollection {
public:
    CutCollection(std::shared_ptr<const Rim> parent, std::vector<std::vector<std::uint32_t>> phis)
        : parent_(std::move(parent)), phi_(std::move(phis)) {
        if (!parent_) throw Error(Errc::invalid_argument, "null parent graph");
        if (phi_.size() < 2) throw Error(Errc::invalid_cut_collection, "a flowering cut collection has order at least 2");
        const std::size_t nv = parent_->vertex_count();
        base_ = normalize_subset(*parent_, phi_[0]);
        if (base_.size() != phi_[0].size()) throw Error(Errc::invalid_cut_collection, "phi_0 repeats a vertex");
        cut_ = std::make_shared<const Rim>(cut_graph(*parent_, base_));

        multiplicity_.assign(nv, 0);
        inverse_.assign(phi_.size(), std::vector<std::int32_t>(nv, -1));
        for (std::size_t i = 0; i < phi_.size(); ++i) {
            const auto& phi = phi_[i];
            if (phi.size() != base_.size()) throw Error(Errc::invalid_cut_collection, "cuts of different sizes");
            for (std::size_t k = 0; k < phi.size(); ++k) {
                if (phi[k] >= nv) throw Error(Errc::invalid_cut_collection, "phi target out of range");
                if (inverse_[i][phi[k]] >= 0) throw Error(Errc::invalid_cut_collection, "phi is not injective");
                inverse_[i][phi[k]] = static_cast<std::int32_t>(k);
                ++multiplicity_[phi[k]];
            }
        }
        for (std::size_t v = 0; v < nv; ++v)
            if (multiplicity_[v] == 0) throw Error(Errc::invalid_cut_collection, "cuts do not cover the parent");

        for (std::size_t i = 0; i < phi_.size(); ++i) {
            auto sorted = normalize_subset(*parent_, phi_[i]);
            Rim cut_i = cut_graph(*parent_, sorted);
            std::vector<std::uint32_t> local(base_.size());
            for (std::size_t k = 0; k < base_.size(); ++k) {
                auto it = std::lower_bound(sorted.begin(), sorted.end(), phi_[i][k]);
                local[k] = static_cast<std::uint32_t>(it - sorted.begin());
            }
            if (!check_isomorphism(*cut_, cut_i, local))
                throw Error(Errc::invalid_cut_collection, "phi_" + std::to_string(i) + " is not an isomorphism");
            for (std::size_t k = 0; k < base_.size(); ++k)
                if (multiplicity_[base_[k]] != multiplicity_[phi_[i][k]])
                    throw Error(Errc::invalid_cut_collection, "multiplicity is not invariant under phi_" + std::to_string(i));
        }
    }

    std::size_t order() const { return phi_.size(); }
    const Rim& parent() const { return *parent_; }
    const Rim& cut() const { return *cut_; }
    std::shared_ptr<const Rim> parent_ptr() const { return parent_; }
    std::shared_ptr<const Rim> cut_ptr() const { return cut_; }

    // Sorted V_0; base()[k] is the parent vertex of cut vertex k.
    const std::vector<std::uint32_t>& base() const { return base_; }
    std::uint32_t phi(std::size_t i, std::size_t k) const { return phi_[i][k]; }
    const std::vector<std::uint32_t>& phi(std::size_t i) const { return phi_[i]; }
    // Cut vertex k with phi_i(k) = v, or -1 when v is not in V_i.
    std::int32_t phi_inverse(std::size_t i, std::size_t v) const { return inverse_[i][v]; }
    std::uint32_t multiplicity(std::size_t v) const { return multiplicity_[v]; }

    std::vector<std::uint32_t> subset(std::size_t i) const { return normalize_subset(*parent_, phi_[i]); }

private:
    std::shared_ptr<const Rim> parent_;
    std::shared_ptr<const Rim> cut_;
    std::vector<std::vector<std::uint32_t>> phi_;
    std::vector<std::uint32_t> base_;
    std::vector<std::vector<std::int32_t>> inverse_;
    std::vector<std::uint32_t> multiplicity_;
};

inline WeightFn refine_weights(const WeightFn& w, const CutCollection& c) {
    w.validate(c.parent());
    WeightFn out;
    out.weights.reserve(c.base().size());
    for (auto v : c.base()) out.weights.push_back(w[v] / Rational(c.multiplicity(v)));
    return out;
}

} // namespace flowering
