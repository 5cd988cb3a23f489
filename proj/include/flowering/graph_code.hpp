#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "flowering/error.hpp"
#include "flowering/linalg.hpp"
#include "flowering/reed_solomon.hpp"
#include "flowering/rim.hpp"
#include "flowering/word.hpp"

namespace flowering {

// C(G, k): words on the edges of G whose every local view lies in RS[n,k].
class GraphCode {
public:
    static constexpr std::size_t max_edges = 20000;

    GraphCode(std::shared_ptr<const Rim> graph, RSCode base) : graph_(std::move(graph)), base_(std::move(base)) {
        if (!graph_) throw Error(Errc::invalid_argument, "null graph");
        if (graph_->arity() != base_.length()) throw Error(Errc::shape_mismatch, "graph arity differs from code length");
    }

    GraphCode(const Rim& graph, RSCode base) : GraphCode(std::make_shared<const Rim>(graph), std::move(base)) {}

    const Rim& graph() const { return *graph_; }
    const RSCode& base() const { return base_; }
    const PrimeField& field() const { return base_.field(); }

    bool vertex_valid(const EdgeWord& f, std::size_t v) const { return rs_is_member(f.local_view(*graph_, v), base_); }

    // Stacked parity system: n-k rows per vertex over the edge variables.
    std::vector<std::vector<std::uint64_t>> parity_rows() const {
        const auto& g = *graph_;
        const auto& F = field();
        const std::size_t n = g.arity(), r = n - base_.dimension();
        std::vector<std::vector<std::uint64_t>> rows;
        rows.reserve(g.vertex_count() * r);
        for (std::size_t v = 0; v < g.vertex_count(); ++v) {
            for (std::size_t e = 0; e < r; ++e) {
                std::vector<std::uint64_t> row(g.edge_count(), 0);
                for (std::size_t j = 0; j < n; ++j) {
                    auto col = g.edge_of(v, j);
                    row[col] = F.add({row[col]}, base_.parity(e, j)).value;
                }
                rows.push_back(std::move(row));
            }
        }
        return rows;
    }

    const KernelSolver& solver() const {
        if (!solver_) {
            if (graph_->edge_count() > max_edges) throw Error(Errc::too_large, "dense elimination limited to 20000 edges");
            solver_ = std::make_shared<KernelSolver>(field(), graph_->edge_count(), parity_rows());
        }
        return *solver_;
    }

    std::size_t dimension() const { return solver().nullity(); }

private:
    std::shared_ptr<const Rim> graph_;
    RSCode base_;
    mutable std::shared_ptr<KernelSolver> solver_;
};

inline bool graph_membership(const EdgeWord& f, const GraphCode& gc) {
    require_shape(gc.graph(), f);
    for (std::size_t v = 0; v < gc.graph().vertex_count(); ++v)
        if (!gc.vertex_valid(f, v)) return false;
    return true;
}

struct Basis {
    std::vector<EdgeWord> words;
    std::size_t dimension = 0;
};

inline Basis compute_basis(const GraphCode& gc) {
    const auto& s = gc.solver();
    Basis b;
    b.dimension = s.nullity();
    const auto& F = gc.field();
    for (std::size_t i = 0; i < s.nullity(); ++i) {
        std::vector<FieldElement> free(s.nullity(), F.zero());
        free[i] = F.one();
        b.words.emplace_back(s.complete(free));
    }
    return b;
}

// Uniform over the code: uniform free coordinates determine a uniform kernel vector.
template <ByteSource S>
EdgeWord sample_codeword(const GraphCode& gc, S& source) {
    const auto& s = gc.solver();
    std::vector<FieldElement> free(s.nullity());
    for (auto& x : free) x = sample_uniform(gc.field(), source);
    return EdgeWord(s.complete(free));
}

// Minimum Hamming weight (in edges) over nonzero codewords, or nullopt when the
// code is zero-dimensional or |F|^dim exceeds the budget.
inline std::optional<std::size_t> min_distance_bruteforce(const GraphCode& gc, std::uint64_t budget = 10'000'000) {
    auto basis = compute_basis(gc);
    if (basis.dimension == 0) return std::nullopt;
    const auto& F = gc.field();
    const std::uint64_t p = F.modulus();
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < basis.dimension; ++i) {
        if (total > budget / p) return std::nullopt;
        total *= p;
    }
    const std::size_t E = gc.graph().edge_count();
    std::vector<FieldElement> word(E, F.zero());
    std::vector<std::uint64_t> digit(basis.dimension, 0);
    std::size_t best = E;
    for (std::uint64_t step = 1; step < total; ++step) {
        for (std::size_t i = 0; i < basis.dimension; ++i) {
            for (std::size_t e = 0; e < E; ++e) word[e] = F.add(word[e], basis.words[i][e]);
            if (++digit[i] < p) break;
            digit[i] = 0;
        }
        std::size_t wt = 0;
        for (auto x : word) wt += x.value != 0;
        best = std::min(best, wt);
    }
    return best;
}

} // namespace flowering
