#pragma once

#include <algorithm>
#include <deque>
#include <memory>
#include <string>
#include <vector>

#include "flowering/cut.hpp"
#include "flowering/error.hpp"
#include "flowering/group.hpp"
#include "flowering/rim.hpp"
#include "flowering/word.hpp"

namespace flowering {

template <FiniteGroup G>
struct CayleyGraph {
    IndexedGroup<G> group;
    GeneratorSet<G> gens;
    std::shared_ptr<const Rim> graph;
};

template <FiniteGroup G>
CayleyGraph<G> build_cayley(G group, GeneratorSet<G> gens) {
    IndexedGroup<G> ig(std::move(group));
    const auto& grp = ig.group();
    for (const auto& s : gens.all) {
        if (s == grp.identity()) throw Error(Errc::identity_in_generators, "identity in generator set");
        if (!ig.contains(s)) throw Error(Errc::invalid_argument, "generator not in group");
    }
    const std::size_t n = gens.size(), nv = ig.size();
    std::vector<std::uint32_t> nb(nv * n), pr(nv * n);
    for (std::size_t j = 0; j < n; ++j) {
        auto right = ig.right_table(gens.all[j]);
        for (std::size_t g = 0; g < nv; ++g) {
            nb[g * n + j] = right[g];
            pr[g * n + j] = static_cast<std::uint32_t>(right[g] * n + gens.inverse[j]);
        }
    }
    // generation check: everything reachable from the identity
    std::vector<char> seen(nv, 0);
    std::vector<std::uint32_t> stack{ig.identity_id()};
    seen[stack.back()] = 1;
    std::size_t reached = 1;
    while (!stack.empty()) {
        auto g = stack.back();
        stack.pop_back();
        for (std::size_t j = 0; j < n; ++j) {
            auto h = nb[g * n + j];
            if (!seen[h]) {
                seen[h] = 1;
                ++reached;
                stack.push_back(h);
            }
        }
    }
    if (reached != nv) throw Error(Errc::not_generating, "generators reach " + std::to_string(reached) + " of " + std::to_string(nv));
    auto rim = std::make_shared<const Rim>(Rim::build(n, std::move(nb), std::move(pr)));
    return {std::move(ig), std::move(gens), std::move(rim)};
}

inline std::vector<std::uint32_t> bfs_distances(const Rim& g, std::size_t source) {
    constexpr std::uint32_t unseen = ~std::uint32_t{0};
    std::vector<std::uint32_t> dist(g.vertex_count(), unseen);
    std::vector<std::uint32_t> queue{static_cast<std::uint32_t>(source)};
    dist[source] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        auto v = queue[head];
        for (std::size_t j = 0; j < g.arity(); ++j) {
            auto u = g.neighbor(v, j);
            if (dist[u] == unseen) {
                dist[u] = dist[v] + 1;
                queue.push_back(u);
            }
        }
    }
    return dist;
}

inline std::size_t graph_diameter(const Rim& g) {
    std::size_t diam = 0;
    for (std::size_t s = 0; s < g.vertex_count(); ++s) {
        auto d = bfs_distances(g, s);
        for (auto x : d) {
            if (x == ~std::uint32_t{0}) throw Error(Errc::disconnected, "graph is not connected");
            diam = std::max<std::size_t>(diam, x);
        }
    }
    return diam;
}

enum class ExponentPolicy {
    symmetric,       // {0, 1, -1}, deduplicated
    full_cycle,      // {0, 1, ..., ord(s)-1}
    symmetric_auto,  // symmetric, switching to full_cycle where multiplicities would not be invariant
};

struct ScheduleStep {
    std::size_t generator = 0;  // index into the base list
    std::vector<std::int64_t> exponents;  // list position = power of rho

    std::size_t order() const { return exponents.size(); }
    friend bool operator==(const ScheduleStep&, const ScheduleStep&) = default;
};

template <FiniteGroup G>
std::vector<std::int64_t> exponent_set(const IndexedGroup<G>& ig, const typename G::element_type& s, ExponentPolicy policy) {
    std::vector<std::int64_t> out;
    if (policy == ExponentPolicy::full_cycle) {
        auto ord = ig.order_of(s);
        for (std::size_t i = 0; i < ord; ++i) out.push_back(static_cast<std::int64_t>(i));
        return out;
    }
    std::vector<std::uint32_t> seen;
    for (std::int64_t e : {0, 1, -1}) {
        auto id = ig.id(ig.power(s, e));
        if (std::find(seen.begin(), seen.end(), id) != seen.end()) continue;
        seen.push_back(id);
        out.push_back(e);
    }
    return out;
}

// R = n~ * diameter steps; step r uses s_{r mod n~}.
template <FiniteGroup G>
std::vector<ScheduleStep> decomposition_schedule(const IndexedGroup<G>& ig, const GeneratorSet<G>& gens, std::size_t diameter,
                                                 ExponentPolicy policy = ExponentPolicy::symmetric) {
    if (diameter == 0) throw Error(Errc::invalid_argument, "diameter must be at least 1");
    const std::size_t nb = gens.base_size();
    std::vector<ScheduleStep> out;
    for (std::size_t r = 0; r < nb * diameter; ++r) {
        std::size_t g = r % nb;
        auto pol = policy == ExponentPolicy::symmetric_auto ? ExponentPolicy::symmetric : policy;
        out.push_back({g, exponent_set(ig, gens.base[g], pol)});
    }
    return out;
}

struct BlossomingSequence {
    std::vector<std::shared_ptr<const Rim>> graphs;  // Gamma_0 .. Gamma_R
    std::vector<CutCollection> rounds;               // rounds[r-1] cuts Gamma_{r-1} into Gamma_r
    std::vector<WeightFn> weights;                   // w_0 .. w_R
    std::vector<ScheduleStep> schedule;              // step of each round
    std::vector<std::vector<std::uint32_t>> labels;  // group element id of each vertex of Gamma_r

    std::size_t round_count() const { return rounds.size(); }
    std::size_t arity() const { return graphs.front()->arity(); }
    const Rim& graph(std::size_t r) const { return *graphs[r]; }
    const CutCollection& round(std::size_t r) const { return rounds[r - 1]; }
    std::size_t order(std::size_t r) const { return rounds[r - 1].order(); }
    std::vector<std::size_t> orders() const {
        std::vector<std::size_t> m;
        for (const auto& c : rounds) m.push_back(c.order());
        return m;
    }
};

struct BlossomingOptions {
    ExponentPolicy policy = ExponentPolicy::symmetric_auto;
    // Drop leading steps that act on the whole group already (V_{r,0} = G).
    bool trim = true;
};

namespace detail {

inline bool multiplicity_invariant(const std::vector<std::vector<std::uint32_t>>& images, std::size_t group_size) {
    std::vector<std::uint32_t> mult(group_size, 0);
    for (const auto& img : images)
        for (auto g : img) ++mult[g];
    for (const auto& img : images)
        for (std::size_t k = 0; k < img.size(); ++k)
            if (mult[img[k]] != mult[images[0][k]]) return false;
    return true;
}

} // namespace detail

template <FiniteGroup G>
BlossomingSequence build_blossoming(const CayleyGraph<G>& cg, BlossomingOptions opt = {}) {
    const auto& ig = cg.group;
    const std::size_t order = ig.size();
    if (order == 1) throw Error(Errc::invalid_argument, "trivial group has no blossoming sequence");
    auto diam = graph_diameter(*cg.graph);
    auto steps = decomposition_schedule(ig, cg.gens, diam, opt.policy);
    const std::size_t R = steps.size();

    // Backward construction of V_{r,0} as sorted group-id lists, and of the
    // left-multiplication images s^e * V_{r+1,0} in exponent order.
    std::vector<std::vector<std::uint32_t>> V(R + 1);
    std::vector<std::vector<std::vector<std::uint32_t>>> images(R);
    V[R] = {ig.identity_id()};
    for (std::size_t r = R; r-- > 0;) {
        const auto& s = cg.gens.base[steps[r].generator];
        auto compute = [&](const std::vector<std::int64_t>& exps) {
            std::vector<std::vector<std::uint32_t>> imgs;
            for (auto e : exps) {
                auto left = ig.left_table(ig.power(s, e));
                std::vector<std::uint32_t> img;
                for (auto g : V[r + 1]) img.push_back(left[g]);
                imgs.push_back(std::move(img));
            }
            return imgs;
        };
        images[r] = compute(steps[r].exponents);
        if (opt.policy == ExponentPolicy::symmetric_auto && !detail::multiplicity_invariant(images[r], order)) {
            steps[r].exponents = exponent_set(ig, s, ExponentPolicy::full_cycle);
            images[r] = compute(steps[r].exponents);
        }
        std::vector<std::uint32_t> u;
        for (const auto& img : images[r]) u.insert(u.end(), img.begin(), img.end());
        std::sort(u.begin(), u.end());
        u.erase(std::unique(u.begin(), u.end()), u.end());
        V[r] = std::move(u);
    }
    if (V[0].size() != order) throw Error(Errc::coverage_failure, "schedule does not cover the group");

    std::size_t start = 0;
    if (opt.trim)
        while (start + 1 < R && V[start + 1].size() == order) ++start;

    BlossomingSequence seq;
    seq.graphs.push_back(cg.graph);
    seq.weights.push_back(WeightFn::uniform(order));
    seq.labels.push_back(V[start]);
    for (std::size_t r = start; r < R; ++r) {
        const auto& parent_ids = V[r];
        std::vector<std::int32_t> local(order, -1);
        for (std::size_t i = 0; i < parent_ids.size(); ++i) local[parent_ids[i]] = static_cast<std::int32_t>(i);
        std::vector<std::vector<std::uint32_t>> phis;
        for (const auto& img : images[r]) {
            std::vector<std::uint32_t> phi;
            for (auto g : img) {
                if (local[g] < 0) throw Error(Errc::coverage_failure, "cut leaves the parent vertex set");
                phi.push_back(static_cast<std::uint32_t>(local[g]));
            }
            phis.push_back(std::move(phi));
        }
        CutCollection cc(seq.graphs.back(), std::move(phis));
        seq.weights.push_back(refine_weights(seq.weights.back(), cc));
        seq.graphs.push_back(cc.cut_ptr());
        seq.labels.push_back(V[r + 1]);
        seq.schedule.push_back(steps[r]);
        seq.rounds.push_back(std::move(cc));
    }
    if (seq.graphs.back()->vertex_count() != 1) throw Error(Errc::coverage_failure, "last graph is not a flower");
    return seq;
}

} // namespace flowering
