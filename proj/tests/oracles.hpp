#pragma once

// Independent reference computations shared by the unit tests and the
// acceptance binary.

#include <map>
#include <set>
#include <vector>

#include "flowering/cayley.hpp"
#include "flowering/protocol.hpp"
#include "flowering/rational.hpp"

namespace oracle {

using flowering::BlossomingSequence;
using flowering::Rational;

// Exact law of v_r for the query walk: v_0 uniform on Gamma_0, then i uniform
// over the cuts containing v_{r-1}, v_r = phi_i^{-1}(v_{r-1}). Computed
// forward from the cut membership lists only.
inline std::vector<std::vector<Rational>> walk_distribution(const BlossomingSequence& seq) {
    std::vector<std::vector<Rational>> dist;
    const std::size_t n0 = seq.graph(0).vertex_count();
    dist.emplace_back(n0, Rational(1, n0));
    for (std::size_t r = 1; r <= seq.round_count(); ++r) {
        const auto& c = seq.round(r);
        const std::size_t np = c.parent().vertex_count();
        // members[v] = list of (i, k) with phi_i(k) = v
        std::vector<std::vector<std::size_t>> members(np);
        for (std::size_t i = 0; i < c.order(); ++i)
            for (std::size_t k = 0; k < c.base().size(); ++k) members[c.phi(i, k)].push_back(k);
        std::vector<Rational> next(c.base().size(), Rational(0));
        for (std::size_t v = 0; v < np; ++v) {
            if (members[v].empty()) continue;
            Rational share = dist.back()[v] / Rational(members[v].size());
            for (auto k : members[v]) next[k] += share;
        }
        dist.push_back(std::move(next));
    }
    return dist;
}

// Coins replaying a script of choices; records the ranges asked for.
struct ScriptedCoins {
    std::vector<std::uint64_t> script;
    std::vector<std::uint64_t> ranges;
    std::size_t pos = 0;
    flowering::FieldElement field(const flowering::PrimeField&, std::uint8_t) { return {0}; }
    std::uint64_t below(std::uint64_t range, std::uint8_t) {
        ranges.push_back(range);
        return pos < script.size() ? script[pos++] : (++pos, 0);
    }
};

// Records, per level, the edges opened as fold targets. Within a round the
// parent openings on level r-1 precede the target opening on level r, while
// parent openings on level r come after a level-r or level-(r+1) opening.
struct EdgeLog {
    const std::vector<flowering::EdgeWord>* words;
    std::map<std::size_t, std::set<std::uint32_t>> child_edges;
    std::size_t last_level = 0;
    std::optional<flowering::FieldElement> open(std::size_t level, std::uint32_t edge) {
        if (level >= 1 && last_level == level - 1) child_edges[level].insert(edge);
        last_level = level;
        return (*words)[level][edge];
    }
};

// Law of v_r as realised by run_query_repetition itself: every coin script is
// enumerated (odometer over the ranges the code asks for) and weighted by the
// product of 1/range. Needs t = n so the opened target edges pin down v_r.
// Entries for 0 < r < R; rows 0 and R are left empty.
inline std::vector<std::vector<Rational>> implementation_walk_law(const flowering::ProtocolParams& P, std::size_t* runs = nullptr) {
    using namespace flowering;
    const auto& seq = P.seq();
    const std::size_t R = seq.round_count(), n = seq.arity();
    if (P.edges_per_check != n) throw Error(Errc::invalid_argument, "enumeration needs t = n");
    std::vector<EdgeWord> words;
    for (std::size_t r = 0; r <= R; ++r) words.emplace_back(seq.graph(r));
    std::vector<FieldElement> rhos(R, P.field.zero()), view(n, P.field.zero());

    std::vector<std::map<std::set<std::uint32_t>, std::size_t>> who(R + 1);
    for (std::size_t r = 1; r < R; ++r)
        for (std::size_t v = 0; v < seq.graph(r).vertex_count(); ++v) {
            std::set<std::uint32_t> es;
            for (std::size_t j = 0; j < n; ++j) es.insert(seq.graph(r).edge_of(v, j));
            if (!who[r].emplace(es, v).second) throw Error(Errc::invalid_argument, "edge sets do not identify vertices");
        }

    std::vector<std::vector<Rational>> law(R + 1);
    for (std::size_t r = 1; r < R; ++r) law[r].assign(seq.graph(r).vertex_count(), Rational(0));
    std::vector<std::uint64_t> script;
    std::size_t count = 0;
    for (;;) {
        ScriptedCoins coins{script, {}, 0};
        EdgeLog log{&words, {}, 0};
        ComplexityCounters ctr;
        auto q = run_query_repetition(P, log, coins, rhos, view, ctr);
        if (q.verdict != Verdict::accept) throw Error(Errc::invalid_argument, "zero word rejected during enumeration");
        script.resize(coins.ranges.size(), 0);
        Rational p = 1;
        for (auto rg : coins.ranges) p /= Rational(rg);
        for (std::size_t r = 1; r < R; ++r) law[r][who[r].at(log.child_edges[r])] += p;
        ++count;
        std::size_t i = script.size();
        while (i > 0 && script[i - 1] + 1 >= coins.ranges[i - 1]) --i;
        if (i == 0) break;
        ++script[i - 1];
        script.resize(i);
    }
    if (runs) *runs = count;
    return law;
}

} // namespace oracle
