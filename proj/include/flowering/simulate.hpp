#pragma once

#include <cmath>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "flowering/fold.hpp"
#include "flowering/protocol.hpp"
#include "flowering/random.hpp"

namespace flowering {

// What a (possibly cheating) prover commits in each round of the interactive protocol.
class ProverStrategy {
public:
    virtual ~ProverStrategy() = default;
    virtual std::string name() const = 0;
    // Word f_r on Gamma_r, given the previously committed f_{r-1} and rho_{r-1}.
    virtual EdgeWord commit(const ProtocolParams& P, std::size_t r, const EdgeWord& prev, FieldElement rho) = 0;
};

class HonestFold : public ProverStrategy {
public:
    std::string name() const override { return "honest-fold"; }
    EdgeWord commit(const ProtocolParams& P, std::size_t r, const EdgeWord& prev, FieldElement rho) override {
        return fold(P.field, prev, P.seq().round(r), rho);
    }
};

// Commits the folds of a fixed codeword c instead of those of f_0, so every
// later word is a codeword; cheating is only visible in the round-1 checks.
class CodewordSwap : public ProverStrategy {
public:
    explicit CodewordSwap(EdgeWord c) : c0_(std::move(c)) {}
    std::string name() const override { return "codeword-swap"; }
    EdgeWord commit(const ProtocolParams& P, std::size_t r, const EdgeWord&, FieldElement rho) override {
        if (r == 1) cur_ = c0_;
        cur_ = fold(P.field, cur_, P.seq().round(r), rho);
        return cur_;
    }

private:
    EdgeWord c0_, cur_;
};

struct InteractiveResult {
    bool accepted = false;
    Verdict verdict = Verdict::accept;
    ComplexityCounters counters;
};

// Interactive run with oracle access to the committed words (no Merkle layer).
inline InteractiveResult run_interactive(const EdgeWord& f0, const ProtocolParams& P, ProverStrategy& prover, SeededRng& rng) {
    const auto& seq = P.seq();
    const std::size_t R = seq.round_count();
    require_shape(seq.graph(0), f0);
    InteractiveResult res;
    auto& ctr = res.counters;
    RngCoins coins{&rng};
    std::vector<EdgeWord> words{f0};
    std::vector<FieldElement> rhos;
    for (std::size_t r = 1; r <= R; ++r) {
        rhos.push_back(coins.field(P.field, 'c'));
        ++ctr.random_field_elements;
        words.push_back(prover.commit(P, r, words.back(), rhos.back()));
        require_shape(seq.graph(r), words.back());
        ctr.proof_length += words.back().size();
        ++ctr.rounds;
    }
    auto view = flower_view(seq.graph(R), words.back());
    ctr.queries += P.arity();
    auto code = P.code();
    ctr.verifier_ops += code.member_check_ops();
    if (!rs_is_member(view, code)) {
        res.verdict = Verdict::final_check_failed;
        return res;
    }
    WordOracle oracle{&words};
    for (std::size_t l = 0; l < P.repetitions; ++l) {
        auto q = run_query_repetition(P, oracle, coins, rhos, view, ctr, true);
        if (q.verdict != Verdict::accept) {
            res.verdict = q.verdict;
            return res;
        }
    }
    res.accepted = true;
    return res;
}

struct WilsonInterval {
    double low = 0, high = 0;
    double half_width() const { return (high - low) / 2; }
};

inline WilsonInterval wilson_interval(std::size_t successes, std::size_t trials, double z = 2.5758293035489004) {
    if (trials == 0) return {0, 1};
    const double n = static_cast<double>(trials);
    const double ph = static_cast<double>(successes) / n;
    const double denom = 1 + z * z / n;
    const double centre = (ph + z * z / (2 * n)) / denom;
    const double half = z * std::sqrt(ph * (1 - ph) / n + z * z / (4 * n * n)) / denom;
    return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

struct SimulationResult {
    std::size_t trials = 0;
    std::size_t accepted = 0;
    double rate = 0;
    WilsonInterval interval;
};

using StrategyFactory = std::function<std::unique_ptr<ProverStrategy>()>;

inline SimulationResult simulate_soundness(const ProtocolParams& P, const EdgeWord& f0, const StrategyFactory& make,
                                           std::size_t trials, std::uint64_t seed) {
    SimulationResult s;
    s.trials = trials;
    SeededRng rng(seed);
    for (std::size_t i = 0; i < trials; ++i) {
        auto prover = make();
        s.accepted += run_interactive(f0, P, *prover, rng).accepted;
    }
    s.rate = trials ? static_cast<double>(s.accepted) / static_cast<double>(trials) : 0;
    s.interval = wilson_interval(s.accepted, trials);
    return s;
}

} // namespace flowering
