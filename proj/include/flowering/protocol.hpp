#pragma once

#include <cmath>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "flowering/cayley.hpp"
#include "flowering/error.hpp"
#include "flowering/field.hpp"
#include "flowering/fold.hpp"
#include "flowering/merkle.hpp"
#include "flowering/reed_solomon.hpp"
#include "flowering/transcript.hpp"
#include "flowering/word.hpp"

namespace flowering {

enum class Mode { interactive, fiat_shamir };

struct ProtocolParams {
    std::shared_ptr<const BlossomingSequence> blossoming;
    PrimeField field;
    std::size_t k = 0;
    std::size_t repetitions = 1;      // L
    std::size_t edges_per_check = 1;  // t
    Mode mode = Mode::fiat_shamir;

    ProtocolParams(std::shared_ptr<const BlossomingSequence> seq, PrimeField F, std::size_t k_, std::size_t L,
                   std::size_t t, Mode m = Mode::fiat_shamir)
        : blossoming(std::move(seq)), field(F), k(k_), repetitions(L), edges_per_check(t), mode(m) {
        if (!blossoming || blossoming->round_count() == 0) throw Error(Errc::invalid_argument, "empty blossoming sequence");
        const std::size_t n = blossoming->arity();
        if (k < 1 || k >= n) throw Error(Errc::invalid_argument, "need 1 <= k < n");
        if (repetitions < 1) throw Error(Errc::invalid_argument, "need L >= 1");
        if (edges_per_check < 1 || edges_per_check > n) throw Error(Errc::invalid_argument, "need 1 <= t <= n");
        if (n > F.modulus()) throw Error(Errc::invalid_argument, "field smaller than the arity");
        for (auto m_r : blossoming->orders())
            if (m_r > 255) throw Error(Errc::invalid_argument, "round order does not fit the wire format");
    }

    // t = max(1, floor(mu * n)) for an edge proportion mu in [0, 1].
    static std::size_t edges_for_proportion(double mu, std::size_t n) {
        auto t = static_cast<std::size_t>(std::floor(mu * static_cast<double>(n) + 1e-12));
        return std::max<std::size_t>(1, std::min(t, n));
    }

    const BlossomingSequence& seq() const { return *blossoming; }
    std::size_t arity() const { return blossoming->arity(); }
    std::size_t rounds() const { return blossoming->round_count(); }
    RSCode code() const { return RSCode(field, arity(), k); }
};

struct ComplexityCounters {
    std::uint64_t prover_ops = 0;
    std::uint64_t verifier_ops = 0;
    std::uint64_t queries = 0;
    std::uint64_t rounds = 0;
    std::uint64_t proof_length = 0;  // field elements committed after the input word
    std::uint64_t random_field_elements = 0;
    std::uint64_t random_vertices = 0;
    std::uint64_t random_subsets = 0;
    std::uint64_t random_cut_choices = 0;
};

// Closed forms the counters are checked against.
inline std::uint64_t expected_query_count(const ProtocolParams& p) {
    std::uint64_t sum_m = 0;
    for (auto m : p.seq().orders()) sum_m += m;
    return p.repetitions * p.edges_per_check * (sum_m + 1) + p.arity();
}

inline std::uint64_t expected_proof_length(const BlossomingSequence& s) {
    std::uint64_t len = 0;
    for (std::size_t r = 1; r <= s.round_count(); ++r) len += s.graph(r).edge_count();
    return len;
}

// Openings carried by the proof for one repetition (f_R reads come from the final view).
inline std::uint64_t openings_per_repetition(const std::vector<std::size_t>& orders, std::size_t t) {
    std::uint64_t c = 0;
    for (std::size_t r = 0; r < orders.size(); ++r) c += (r == 0 ? orders[r] : orders[r] - 1) + (r + 1 < orders.size() ? 1 : 0);
    return c * t;
}

struct Opening {
    std::uint32_t leaf = 0;
    FieldElement value;
    std::vector<Digest> path;

    friend bool operator==(const Opening&, const Opening&) = default;
};

struct Proof {
    std::uint64_t modulus = 0;
    std::uint32_t n = 0, k = 0, rounds = 0, repetitions = 0, edges_per_check = 0;
    std::vector<std::uint8_t> orders;
    Digest input_root{};
    std::vector<Digest> roots;
    std::vector<FieldElement> final_view;
    std::vector<std::vector<Opening>> openings;
    ComplexityCounters counters;  // prover side, not serialized

    friend bool operator==(const Proof& a, const Proof& b) {
        return a.modulus == b.modulus && a.n == b.n && a.k == b.k && a.rounds == b.rounds && a.repetitions == b.repetitions &&
               a.edges_per_check == b.edges_per_check && a.orders == b.orders && a.input_root == b.input_root &&
               a.roots == b.roots && a.final_view == b.final_view && a.openings == b.openings;
    }
};

enum class Verdict { accept, opening_invalid, fold_mismatch, final_check_failed, parameter_mismatch, malformed };

inline const char* verdict_name(Verdict v) {
    switch (v) {
    case Verdict::accept: return "accept";
    case Verdict::opening_invalid: return "OpeningInvalid";
    case Verdict::fold_mismatch: return "FoldMismatch";
    case Verdict::final_check_failed: return "FinalCheckFailed";
    case Verdict::parameter_mismatch: return "ParameterMismatch";
    case Verdict::malformed: return "MalformedProof";
    }
    return "unknown";
}

struct VerifyResult {
    Verdict verdict = Verdict::accept;
    ComplexityCounters counters;
    bool accepted() const { return verdict == Verdict::accept; }
};

inline Digest sequence_digest(const BlossomingSequence& s) {
    Sha256 h;
    h.update("FLWR/sequence");
    h.update_u32(static_cast<std::uint32_t>(s.round_count()));
    for (const auto& g : s.graphs) {
        h.update_u32(static_cast<std::uint32_t>(g->vertex_count())).update_u32(static_cast<std::uint32_t>(g->arity()));
        for (auto x : g->neighbor_table()) h.update_u32(x);
        for (auto x : g->partner_table()) h.update_u32(x);
    }
    for (const auto& c : s.rounds) {
        h.update_u32(static_cast<std::uint32_t>(c.order()));
        for (std::size_t i = 0; i < c.order(); ++i)
            for (auto x : c.phi(i)) h.update_u32(x);
    }
    return h.finish();
}

inline Digest params_digest(const ProtocolParams& p) {
    Sha256 h;
    h.update("FLWR/params");
    h.update_u64(p.field.modulus());
    h.update_u32(static_cast<std::uint32_t>(p.arity())).update_u32(static_cast<std::uint32_t>(p.k));
    h.update_u32(static_cast<std::uint32_t>(p.rounds())).update_u32(static_cast<std::uint32_t>(p.repetitions));
    h.update_u32(static_cast<std::uint32_t>(p.edges_per_check));
    for (auto m : p.seq().orders()) h.update(static_cast<std::uint8_t>(m));
    auto sd = sequence_digest(p.seq());
    h.update(std::span<const std::uint8_t>(sd));
    return h.finish();
}

inline std::vector<std::vector<std::uint8_t>> word_leaves(const PrimeField& F, const EdgeWord& f) {
    std::vector<std::vector<std::uint8_t>> leaves;
    leaves.reserve(f.size());
    for (auto x : f.values()) leaves.push_back(F.to_bytes(x));
    return leaves;
}

inline std::vector<FieldElement> flower_view(const Rim& flower, const EdgeWord& f) { return f.local_view(flower, 0); }

// The word on the flower described by a local view, or nullopt if the view
// disagrees across a paired loop.
inline std::optional<EdgeWord> word_from_view(const Rim& flower, const std::vector<FieldElement>& view) {
    if (view.size() != flower.arity()) return std::nullopt;
    EdgeWord f(flower);
    for (std::size_t j = 0; j < flower.arity(); ++j) {
        if (view[j] != view[flower.partner(0, j).index]) return std::nullopt;
        f[flower.edge_of(0, j)] = view[j];
    }
    return f;
}

struct QueryOutcome {
    Verdict verdict = Verdict::accept;
};

// One repetition of the query phase. The oracle serves f_0..f_{R-1}; f_R is
// read from `final_view`. Opening order is normative for the wire format:
// per round, per j in J (sampled order), the m values of f_{r-1} by list
// position (skipping the cached position from round 2 on), then f_r.
template <class Oracle, class Coins>
QueryOutcome run_query_repetition(const ProtocolParams& P, Oracle& oracle, Coins& coins,
                                  const std::vector<FieldElement>& rhos, const std::vector<FieldElement>& final_view,
                                  ComplexityCounters& ctr, bool stop_on_failure = true) {
    const auto& seq = P.seq();
    const auto& F = P.field;
    const std::size_t n = P.arity(), t = P.edges_per_check, R = seq.round_count();
    QueryOutcome out;
    auto fail = [&](Verdict v) {
        if (out.verdict == Verdict::accept) out.verdict = v;
    };

    std::size_t v = coins.below(seq.graph(0).vertex_count(), 'v');
    ++ctr.random_vertices;
    std::vector<std::size_t> idx(n);
    for (std::size_t j = 0; j < n; ++j) idx[j] = j;
    for (std::size_t a = 0; a < t; ++a) std::swap(idx[a], idx[a + coins.below(n - a, 'j')]);
    ++ctr.random_subsets;
    std::vector<std::size_t> J(idx.begin(), idx.begin() + t);

    std::vector<FieldElement> cached(t);
    std::vector<FieldElement> vals;
    for (std::size_t r = 1; r <= R; ++r) {
        const auto& cc = seq.round(r);
        const auto& child = seq.graph(r);
        const auto& parent = seq.graph(r - 1);
        std::vector<std::size_t> cand;
        for (std::size_t i = 0; i < cc.order(); ++i)
            if (cc.phi_inverse(i, v) >= 0) cand.push_back(i);
        std::size_t pick = cand[coins.below(cand.size(), 'i')];
        ++ctr.random_cut_choices;
        std::size_t w = static_cast<std::size_t>(cc.phi_inverse(pick, v));
        const FieldElement rho = rhos[r - 1];

        for (std::size_t a = 0; a < t; ++a) {
            const std::size_t j = J[a];
            vals.assign(cc.order(), F.zero());
            for (std::size_t i = 0; i < cc.order(); ++i) {
                if (r > 1 && i == pick) {
                    vals[i] = cached[a];
                    continue;
                }
                ++ctr.queries;
                auto x = oracle.open(r - 1, parent.edge_of(cc.phi(i, w), j));
                if (!x) {
                    fail(Verdict::opening_invalid);
                    if (stop_on_failure) return out;
                    x = F.zero();
                }
                vals[i] = *x;
            }
            // Horner: m-1 multiplications and m-1 additions
            FieldElement folded = vals.back();
            for (std::size_t i = cc.order() - 1; i-- > 0;) folded = F.add(F.mul(folded, rho), vals[i]);
            ctr.verifier_ops += 2 * (cc.order() - 1);

            ++ctr.queries;
            FieldElement cur;
            if (r < R) {
                auto x = oracle.open(r, child.edge_of(w, j));
                if (!x) {
                    fail(Verdict::opening_invalid);
                    if (stop_on_failure) return out;
                    x = F.zero();
                }
                cur = *x;
            } else {
                cur = final_view[j];
            }
            if (folded != cur) {
                fail(Verdict::fold_mismatch);
                if (stop_on_failure) return out;
            }
            cached[a] = cur;
        }
        v = w;
    }
    return out;
}

// Serves openings straight from the prover's words (interactive simulation).
struct WordOracle {
    const std::vector<EdgeWord>* words;
    std::optional<FieldElement> open(std::size_t level, std::uint32_t edge) const { return (*words)[level][edge]; }
};

// Prover side: answers from its words and records openings with paths.
struct RecordingOracle {
    const PrimeField* field;
    const std::vector<EdgeWord>* words;
    const std::vector<MerkleTree>* trees;
    std::vector<Opening>* record;
    std::optional<FieldElement> open(std::size_t level, std::uint32_t edge) const {
        auto x = (*words)[level][edge];
        record->push_back({edge, x, (*trees)[level].path(edge)});
        return x;
    }
};

// Verifier side: consumes openings in order and checks each against its root.
struct ReplayOracle {
    const PrimeField* field;
    const std::vector<MerkleCommitment>* commitments;
    const std::vector<Opening>* openings;
    std::size_t next = 0;
    std::optional<FieldElement> open(std::size_t level, std::uint32_t edge) {
        if (next >= openings->size()) return std::nullopt;
        const auto& o = (*openings)[next++];
        if (o.leaf != edge || !field->contains(o.value)) return std::nullopt;
        auto bytes = field->to_bytes(o.value);
        if (!merkle_verify((*commitments)[level], edge, bytes, o.path)) return std::nullopt;
        return o.value;
    }
};

inline Proof prove(const EdgeWord& f0, const ProtocolParams& P) {
    const auto& seq = P.seq();
    const auto& F = P.field;
    const std::size_t R = seq.round_count();
    require_shape(seq.graph(0), f0);

    Proof pf;
    pf.modulus = F.modulus();
    pf.n = static_cast<std::uint32_t>(P.arity());
    pf.k = static_cast<std::uint32_t>(P.k);
    pf.rounds = static_cast<std::uint32_t>(R);
    pf.repetitions = static_cast<std::uint32_t>(P.repetitions);
    pf.edges_per_check = static_cast<std::uint32_t>(P.edges_per_check);
    for (auto m : seq.orders()) pf.orders.push_back(static_cast<std::uint8_t>(m));
    auto& ctr = pf.counters;

    std::vector<EdgeWord> words{f0};
    std::vector<MerkleTree> trees{MerkleTree(word_leaves(F, f0))};
    pf.input_root = trees[0].root();

    Transcript tr(params_digest(P));
    tr.absorb('I', trees[0].root());
    std::vector<FieldElement> rhos;
    for (std::size_t r = 1; r <= R; ++r) {
        rhos.push_back(tr.challenge(F, 'c'));
        ++ctr.random_field_elements;
        words.push_back(fold(F, words.back(), seq.round(r), rhos.back()));
        ctr.prover_ops += fold_ops(seq.round(r));
        ctr.proof_length += words.back().size();
        trees.emplace_back(word_leaves(F, words.back()));
        pf.roots.push_back(trees.back().root());
        tr.absorb('R', trees.back().root());
        ++ctr.rounds;
    }
    pf.final_view = flower_view(seq.graph(R), words.back());

    TranscriptCoins coins{&tr};
    for (std::size_t l = 0; l < P.repetitions; ++l) {
        pf.openings.emplace_back();
        RecordingOracle oracle{&F, &words, &trees, &pf.openings.back()};
        run_query_repetition(P, oracle, coins, rhos, pf.final_view, ctr, false);
    }
    ctr.queries += P.arity();
    return pf;
}

inline VerifyResult verify(const Proof& pf, const ProtocolParams& P) {
    VerifyResult res;
    auto& ctr = res.counters;
    const auto& seq = P.seq();
    const auto& F = P.field;
    const std::size_t R = seq.round_count();

    bool header_ok = pf.modulus == F.modulus() && pf.n == P.arity() && pf.k == P.k && pf.rounds == R &&
                     pf.repetitions == P.repetitions && pf.edges_per_check == P.edges_per_check && pf.orders.size() == R;
    for (std::size_t r = 0; header_ok && r < R; ++r) header_ok = pf.orders[r] == seq.order(r + 1);
    if (!header_ok) {
        res.verdict = Verdict::parameter_mismatch;
        return res;
    }
    auto per_rep = openings_per_repetition(seq.orders(), P.edges_per_check);
    if (pf.roots.size() != R || pf.final_view.size() != P.arity() || pf.openings.size() != P.repetitions) {
        res.verdict = Verdict::malformed;
        return res;
    }
    for (const auto& o : pf.openings)
        if (o.size() != per_rep) {
            res.verdict = Verdict::malformed;
            return res;
        }
    for (auto x : pf.final_view)
        if (!F.contains(x)) {
            res.verdict = Verdict::malformed;
            return res;
        }

    Transcript tr(params_digest(P));
    tr.absorb('I', pf.input_root);
    std::vector<FieldElement> rhos;
    for (std::size_t r = 0; r < R; ++r) {
        rhos.push_back(tr.challenge(F, 'c'));
        ++ctr.random_field_elements;
        tr.absorb('R', pf.roots[r]);
        ++ctr.rounds;
    }

    // The final view must be the committed f_R and an RS codeword.
    const auto& flower = seq.graph(R);
    auto fR = word_from_view(flower, pf.final_view);
    ctr.queries += P.arity();
    if (!fR || MerkleTree(word_leaves(F, *fR)).root() != pf.roots[R - 1]) {
        res.verdict = Verdict::opening_invalid;
        return res;
    }
    auto code = P.code();
    ctr.verifier_ops += code.member_check_ops();
    if (!rs_is_member(pf.final_view, code)) {
        res.verdict = Verdict::final_check_failed;
        return res;
    }

    std::vector<MerkleCommitment> coms{{pf.input_root, seq.graph(0).edge_count()}};
    for (std::size_t r = 1; r < R; ++r) coms.push_back({pf.roots[r - 1], seq.graph(r).edge_count()});
    TranscriptCoins coins{&tr};
    for (std::size_t l = 0; l < P.repetitions; ++l) {
        ReplayOracle oracle{&F, &coms, &pf.openings[l]};
        auto q = run_query_repetition(P, oracle, coins, rhos, pf.final_view, ctr, true);
        if (q.verdict != Verdict::accept) {
            res.verdict = q.verdict;
            return res;
        }
    }
    return res;
}

} // namespace flowering

namespace flowering {

// Verification against an input root obtained out of band.
inline VerifyResult verify(const Proof& pf, const ProtocolParams& P, const Digest& input_root) {
    if (pf.input_root != input_root) {
        VerifyResult r;
        r.verdict = Verdict::opening_invalid;
        return r;
    }
    return verify(pf, P);
}

} // namespace flowering
