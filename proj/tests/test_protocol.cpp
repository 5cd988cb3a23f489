#include <gtest/gtest.h>
#include <openssl/sha.h>

#include <cmath>
#include <map>
#include <set>

#include "flowering.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace flowering;

namespace {

Digest openssl_sha(const std::vector<std::uint8_t>& msg) {
    Digest d;
    SHA256(msg.data(), msg.size(), d.data());
    return d;
}

std::vector<std::uint8_t> cat(std::initializer_list<std::vector<std::uint8_t>> parts) {
    std::vector<std::uint8_t> out;
    for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
    return out;
}

std::vector<std::uint8_t> bytes_of(const Digest& d) { return {d.begin(), d.end()}; }

struct Instance {
    std::shared_ptr<const BlossomingSequence> seq;
    PrimeField F;
    std::unique_ptr<GraphCode> code;
};

Instance a4_instance(std::uint64_t p = 101, std::size_t k = 2) {
    Instance in{std::make_shared<const BlossomingSequence>(build_blossoming(a4_cayley())), PrimeField(p), nullptr};
    in.code = std::make_unique<GraphCode>(in.seq->graphs[0], RSCode(in.F, 3, k));
    return in;
}

// Corrupts the value opened at `index`, or flips a path byte.
Proof tamper_opening(Proof pf, std::size_t rep, std::size_t index, bool path) {
    auto& o = pf.openings[rep][index];
    if (path && !o.path.empty())
        o.path[0][3] ^= 0x40;
    else
        o.value.value = (o.value.value + 1) % pf.modulus;
    return pf;
}

} // namespace

TEST(Sha256, KnownVector) {
    std::string abc = "abc";
    auto d = Sha256().update(abc).finish();
    const std::uint8_t want[4] = {0xba, 0x78, 0x16, 0xbf};
    for (int i = 0; i < 4; ++i) EXPECT_EQ(d[i], want[i]);
}

TEST(Merkle, SingleAndTwoLeaves) {
    std::vector<std::uint8_t> l0{1, 2, 3}, l1{9};
    EXPECT_EQ(merkle_commit({l0}).root, openssl_sha(cat({{0x00}, l0})));
    auto h0 = openssl_sha(cat({{0x00}, l0})), h1 = openssl_sha(cat({{0x00}, l1}));
    EXPECT_EQ(merkle_commit({l0, l1}).root, openssl_sha(cat({{0x01}, bytes_of(h0), bytes_of(h1)})));
}

TEST(Merkle, OddLevelDuplicatesLastNode) {
    std::vector<std::vector<std::uint8_t>> leaves{{1}, {2}, {3}};
    std::vector<Digest> h;
    for (const auto& l : leaves) h.push_back(openssl_sha(cat({{0x00}, l})));
    auto a = openssl_sha(cat({{0x01}, bytes_of(h[0]), bytes_of(h[1])}));
    auto b = openssl_sha(cat({{0x01}, bytes_of(h[2]), bytes_of(h[2])}));
    EXPECT_EQ(merkle_commit(leaves).root, openssl_sha(cat({{0x01}, bytes_of(a), bytes_of(b)})));
}

TEST(Merkle, EmptyLeaves) {
    expect_errc(Errc::empty_leaves, [] { merkle_commit({}); });
}

TEST(Merkle, PathsVerifyAndTamperingFails) {
    SeededRng rng(1);
    for (std::size_t count : {1u, 2u, 3u, 5u, 8u, 13u, 64u, 100u}) {
        std::vector<std::vector<std::uint8_t>> leaves(count);
        for (auto& l : leaves) {
            l.resize(1 + rng.below(8));
            rng.fill(l);
        }
        MerkleTree t(leaves);
        MerkleCommitment c{t.root(), count};
        for (std::size_t i = 0; i < count; ++i) {
            auto path = t.path(i);
            EXPECT_TRUE(merkle_verify(c, i, leaves[i], path));
            auto bad = leaves[i];
            bad[rng.below(bad.size())] ^= static_cast<std::uint8_t>(1 + rng.below(255));
            EXPECT_FALSE(merkle_verify(c, i, bad, path));
            if (!path.empty()) {
                auto p2 = path;
                p2[rng.below(p2.size())][rng.below(32)] ^= 1;
                EXPECT_FALSE(merkle_verify(c, i, leaves[i], p2));
                p2 = path;
                p2.pop_back();
                EXPECT_FALSE(merkle_verify(c, i, leaves[i], p2));
            }
            if (count > 1 && leaves[i] != leaves[(i + 1) % count]) {
                EXPECT_FALSE(merkle_verify(c, (i + 1) % count, leaves[i], path));
            }
        }
    }
}

TEST(Transcript, DeterministicAndRootSensitive) {
    PrimeField F(101);
    Digest pd{};
    pd[0] = 7;
    Digest r1{}, r2{};
    r2[31] = 1;
    Transcript a(pd), b(pd), c(pd);
    a.absorb('R', r1);
    b.absorb('R', r1);
    c.absorb('R', r2);
    auto x = a.challenge(F, 'c'), y = b.challenge(F, 'c');
    EXPECT_EQ(x, y);
    EXPECT_EQ(a.state(), b.state());
    EXPECT_NE(a.state(), c.state());
    // over a run of draws the two transcripts must diverge
    int diff = 0;
    for (int i = 0; i < 20; ++i) diff += a.challenge(F, 'c') != c.challenge(F, 'c');
    EXPECT_GT(diff, 15);
}

TEST(Transcript, ChallengesLookUniform) {
    PrimeField F(101);
    Transcript t(Digest{});
    const int draws = 100000;
    std::vector<int> hist(101, 0);
    for (int i = 0; i < draws; ++i) ++hist[t.challenge(F, 'c').value];
    const double p = 1.0 / 101, expect = draws * p, sigma = std::sqrt(draws * p * (1 - p));
    double chi2 = 0;
    for (int h : hist) {
        EXPECT_LT(std::fabs(h - expect), 5 * sigma);
        chi2 += (h - expect) * (h - expect) / expect;
    }
    // 100 degrees of freedom, P(chi2 > 160) ~ 1e-4
    EXPECT_LT(chi2, 160.0);
}

TEST(Transcript, IndexRange) {
    Transcript t(Digest{});
    std::vector<int> hist(7, 0);
    for (int i = 0; i < 7000; ++i) {
        auto x = t.index(7, 'v');
        ASSERT_LT(x, 7u);
        ++hist[x];
    }
    for (int h : hist) EXPECT_GT(h, 800);
    EXPECT_EQ(t.index(1, 'v'), 0u);
}

TEST(Params, Validation) {
    auto in = a4_instance();
    EXPECT_THROW(ProtocolParams(in.seq, in.F, 3, 1, 1), Error);
    EXPECT_THROW(ProtocolParams(in.seq, in.F, 0, 1, 1), Error);
    EXPECT_THROW(ProtocolParams(in.seq, in.F, 2, 0, 1), Error);
    EXPECT_THROW(ProtocolParams(in.seq, in.F, 2, 1, 4), Error);
    EXPECT_THROW(ProtocolParams(in.seq, in.F, 2, 1, 0), Error);
    EXPECT_EQ(ProtocolParams::edges_for_proportion(1.0, 3), 3u);
    EXPECT_EQ(ProtocolParams::edges_for_proportion(1.0 / 3, 3), 1u);
    EXPECT_EQ(ProtocolParams::edges_for_proportion(0.0, 6), 1u);
    EXPECT_EQ(ProtocolParams::edges_for_proportion(0.5, 6), 3u);
}

TEST(Prove, CompletenessOnRandomCodewords) {
    auto in = a4_instance();
    SeededRng rng(2);
    for (std::size_t L : {1u, 3u})
        for (std::size_t t : {1u, 2u, 3u}) {
            ProtocolParams P(in.seq, in.F, 2, L, t);
            for (int i = 0; i < 10; ++i) {
                auto f = sample_codeword(*in.code, rng);
                auto pf = prove(f, P);
                auto res = verify(pf, P, MerkleTree(word_leaves(in.F, f)).root());
                EXPECT_TRUE(res.accepted()) << verdict_name(res.verdict);
            }
        }
}

TEST(Prove, CompletenessOtherFamilies) {
    SeededRng rng(3);
    std::vector<std::shared_ptr<const BlossomingSequence>> seqs{
        std::make_shared<const BlossomingSequence>(build_blossoming(k4_cayley())),
        std::make_shared<const BlossomingSequence>(build_blossoming(z2r_cayley(3))),
        std::make_shared<const BlossomingSequence>(build_blossoming(z2r_cayley(5))),
        std::make_shared<const BlossomingSequence>(build_blossoming(cyclic_cayley(12, {1, 5})))};
    PrimeField F(65537);
    for (const auto& seq : seqs) {
        const std::size_t n = seq->arity();
        for (std::size_t k = 1; k < n; ++k) {
            GraphCode gc(seq->graphs[0], RSCode(F, n, k));
            ProtocolParams P(seq, F, k, 2, n);
            for (int i = 0; i < 3; ++i) EXPECT_TRUE(verify(prove(sample_codeword(gc, rng), P), P).accepted());
        }
    }
}

TEST(Prove, CountersMatchClosedForms) {
    auto in = a4_instance();
    SeededRng rng(4);
    for (std::size_t L : {1u, 2u, 5u})
        for (std::size_t t : {1u, 3u}) {
            ProtocolParams P(in.seq, in.F, 2, L, t);
            auto pf = prove(sample_codeword(*in.code, rng), P);
            auto res = verify(pf, P);
            ASSERT_TRUE(res.accepted());
            // orders 3,2,3: L t (3 + 2 + 3 + 1) + 3
            const std::uint64_t q = L * t * 9 + 3;
            EXPECT_EQ(pf.counters.queries, q);
            EXPECT_EQ(res.counters.queries, q);
            EXPECT_EQ(expected_query_count(P), q);
            EXPECT_EQ(pf.counters.proof_length, 11u + 6 + 3);
            EXPECT_EQ(pf.counters.proof_length, expected_proof_length(*in.seq));
            EXPECT_EQ(pf.counters.rounds, 3u);
            EXPECT_EQ(res.counters.rounds, 3u);
            // Horner per check, then one RS parity check on the flower
            EXPECT_EQ(res.counters.verifier_ops, L * t * (4 + 2 + 4) + (3 - 2) * (2 * 3 - 1));
            EXPECT_EQ(pf.counters.prover_ops, 5u * in.seq->graph(1).edge_count() + 3 * in.seq->graph(2).edge_count() +
                                                  5 * in.seq->graph(3).edge_count());
            EXPECT_EQ(res.counters.random_field_elements, 3u);
            EXPECT_EQ(res.counters.random_vertices, L);
            EXPECT_EQ(res.counters.random_subsets, L);
            EXPECT_EQ(res.counters.random_cut_choices, 3 * L);
        }
}

TEST(Prove, QueryClosedFormForConstantOrder) {
    // with m = 2 every round, sum(m_r) + 1 = m R + m - 1
    auto seq = std::make_shared<const BlossomingSequence>(build_blossoming(z2r_cayley(4)));
    PrimeField F(101);
    GraphCode gc(seq->graphs[0], RSCode(F, 4, 2));
    SeededRng rng(5);
    for (std::size_t L : {1u, 4u})
        for (std::size_t t : {1u, 2u, 4u}) {
            ProtocolParams P(seq, F, 2, L, t);
            auto pf = prove(sample_codeword(gc, rng), P);
            const std::size_t m = 2, R = 4, n = 4;
            EXPECT_EQ(pf.counters.queries, (m * R + m - 1) * t * L + n);
        }
}

TEST(Verify, VerifierOpsWithinBound) {
    auto in = a4_instance();
    SeededRng rng(6);
    for (std::size_t L : {1u, 4u})
        for (std::size_t t : {1u, 3u}) {
            ProtocolParams P(in.seq, in.F, 2, L, t);
            auto res = verify(prove(sample_codeword(*in.code, rng), P), P);
            double bound = 0;
            for (auto m : in.seq->orders()) bound += static_cast<double>(L * t * (m + 2));
            bound += 3 * std::log2(3.0);
            EXPECT_LE(static_cast<double>(res.counters.verifier_ops), bound);
        }
}

TEST(Prove, DeterministicBytes) {
    auto in = a4_instance();
    SeededRng rng(7);
    auto f = sample_codeword(*in.code, rng);
    ProtocolParams P(in.seq, in.F, 2, 3, 2);
    EXPECT_EQ(serialize_proof(prove(f, P)), serialize_proof(prove(f, P)));
}

TEST(Codec, RoundTrip) {
    auto in = a4_instance();
    SeededRng rng(8);
    ProtocolParams P(in.seq, in.F, 2, 2, 3);
    auto pf = prove(sample_codeword(*in.code, rng), P);
    auto bytes = serialize_proof(pf);
    auto back = deserialize_proof(bytes);
    EXPECT_TRUE(back == pf);
    EXPECT_EQ(serialize_proof(back), bytes);
    EXPECT_TRUE(verify(back, P).accepted());
    // header layout: magic, version, modulus length and byte, then n, k as u32
    EXPECT_EQ(std::string(bytes.begin(), bytes.begin() + 4), "FLWR");
    EXPECT_EQ(bytes[4], 1);
    EXPECT_EQ(bytes[5], 1);
    EXPECT_EQ(bytes[6], 101);
    EXPECT_EQ(bytes[7], 3);
    EXPECT_EQ(bytes[11], 2);
}

TEST(Codec, SingleByteCorruptionsReject) {
    auto in = a4_instance();
    SeededRng rng(9);
    ProtocolParams P(in.seq, in.F, 2, 2, 2);
    auto f = sample_codeword(*in.code, rng);
    auto bytes = serialize_proof(prove(f, P));
    auto root = MerkleTree(word_leaves(in.F, f)).root();
    for (int trial = 0; trial < 1000; ++trial) {
        auto b = bytes;
        b[rng.below(b.size())] ^= static_cast<std::uint8_t>(1 + rng.below(255));
        bool rejected = false;
        try {
            rejected = !verify(deserialize_proof(b), P, root).accepted();
        } catch (const Error& e) {
            EXPECT_EQ(e.code(), Errc::malformed_proof);
            rejected = true;
        }
        EXPECT_TRUE(rejected) << "trial " << trial;
    }
}

TEST(Codec, TruncationAndTrailing) {
    auto in = a4_instance();
    SeededRng rng(10);
    ProtocolParams P(in.seq, in.F, 2, 1, 1);
    auto bytes = serialize_proof(prove(sample_codeword(*in.code, rng), P));
    for (std::size_t cut : {std::size_t{0}, std::size_t{3}, std::size_t{30}, bytes.size() - 1}) {
        std::vector<std::uint8_t> b(bytes.begin(), bytes.begin() + static_cast<std::ptrdiff_t>(cut));
        expect_errc(Errc::malformed_proof, [&] { deserialize_proof(b); });
    }
    auto b = bytes;
    b.push_back(0);
    expect_errc(Errc::malformed_proof, [&] { deserialize_proof(b); });
}

TEST(Verify, BindingRejectsTamperedOpenings) {
    auto in = a4_instance();
    SeededRng rng(11);
    ProtocolParams P(in.seq, in.F, 2, 2, 2);
    auto pf = prove(sample_codeword(*in.code, rng), P);
    for (std::size_t rep = 0; rep < pf.openings.size(); ++rep)
        for (std::size_t i = 0; i < pf.openings[rep].size(); ++i)
            for (bool path : {false, true}) {
                auto res = verify(tamper_opening(pf, rep, i, path), P);
                EXPECT_EQ(res.verdict, Verdict::opening_invalid);
            }
    auto other = pf;
    other.input_root[0] ^= 1;
    EXPECT_FALSE(verify(other, P).accepted());
    EXPECT_FALSE(verify(pf, P, other.input_root).accepted());
    auto wrong = ProtocolParams(in.seq, in.F, 1, 2, 2);
    EXPECT_EQ(verify(pf, wrong).verdict, Verdict::parameter_mismatch);
}

TEST(Verify, FinalCheckFailsForFarWord) {
    auto in = a4_instance();
    SeededRng rng(12);
    ProtocolParams P(in.seq, in.F, 1, 1, 1);
    int final_failures = 0;
    for (int i = 0; i < 20; ++i) {
        EdgeWord f(in.seq->graph(0));
        for (auto& x : f.values()) x = sample_uniform(in.F, rng);
        auto res = verify(prove(f, P), P);
        final_failures += res.verdict == Verdict::final_check_failed;
    }
    // a random flower view has degree < 1 with probability 1/101^2
    EXPECT_GE(final_failures, 19);
}

namespace {

class ShiftedFold : public ProverStrategy {
public:
    std::string name() const override { return "shifted"; }
    EdgeWord commit(const ProtocolParams& P, std::size_t r, const EdgeWord& prev, FieldElement rho) override {
        auto g = fold(P.field, prev, P.seq().round(r), rho);
        if (r == 1)
            for (auto& x : g.values()) x = P.field.add(x, P.field.one());
        return g;
    }
};

class NonCodewordFlower : public ProverStrategy {
public:
    std::string name() const override { return "bad-flower"; }
    EdgeWord commit(const ProtocolParams& P, std::size_t r, const EdgeWord& prev, FieldElement rho) override {
        auto g = fold(P.field, prev, P.seq().round(r), rho);
        if (r == P.rounds()) g[0] = P.field.add(g[0], P.field.one());
        return g;
    }
};

} // namespace

TEST(Interactive, Outcomes) {
    auto in = a4_instance();
    SeededRng rng(13);
    ProtocolParams P(in.seq, in.F, 2, 2, 1, Mode::interactive);
    auto c = sample_codeword(*in.code, rng);
    HonestFold honest;
    EXPECT_TRUE(run_interactive(c, P, honest, rng).accepted);
    ShiftedFold shifted;
    // every f_1 value is off by one: the round-1 check always fires
    for (int i = 0; i < 20; ++i) EXPECT_EQ(run_interactive(c, P, shifted, rng).verdict, Verdict::fold_mismatch);
    NonCodewordFlower bad;
    EXPECT_EQ(run_interactive(c, P, bad, rng).verdict, Verdict::final_check_failed);
}

TEST(QueryWalk, DistributionEqualsNormalizedWeights) {
    for (auto seq : {build_blossoming(a4_cayley()), build_blossoming(k4_cayley()), build_blossoming(z2r_cayley(3)),
                     build_blossoming(cyclic_cayley(9))}) {
        auto dist = oracle::walk_distribution(seq);
        for (std::size_t r = 0; r <= seq.round_count(); ++r) {
            Rational total = seq.weights[r].total(), sum = 0;
            for (std::size_t v = 0; v < dist[r].size(); ++v) {
                EXPECT_EQ(dist[r][v], seq.weights[r][v] / total) << "round " << r << " vertex " << v;
                sum += dist[r][v];
            }
            EXPECT_EQ(sum, 1);
        }
    }
}

// Every coin script of run_query_repetition, enumerated, against the DP.
TEST(QueryWalk, ImplementationMatchesOracle) {
    for (auto seq : {std::make_shared<const BlossomingSequence>(build_blossoming(a4_cayley())),
                     std::make_shared<const BlossomingSequence>(build_blossoming(k4_cayley())),
                     std::make_shared<const BlossomingSequence>(build_blossoming(z2r_cayley(3)))}) {
        ProtocolParams P(seq, PrimeField(101), 2, 1, 3, Mode::interactive);
        std::size_t runs = 0;
        auto law = oracle::implementation_walk_law(P, &runs);
        auto dist = oracle::walk_distribution(*seq);
        for (std::size_t r = 1; r < seq->round_count(); ++r) EXPECT_EQ(law[r], dist[r]) << "round " << r;
        EXPECT_GT(runs, seq->graph(0).vertex_count());
    }
}

TEST(Simulate, CodewordAlwaysAccepted) {
    auto in = a4_instance();
    SeededRng rng(14);
    auto c = sample_codeword(*in.code, rng);
    ProtocolParams P(in.seq, in.F, 2, 2, 3, Mode::interactive);
    auto s = simulate_soundness(P, c, [] { return std::make_unique<HonestFold>(); }, 500, 1);
    EXPECT_EQ(s.accepted, 500u);
    EXPECT_EQ(s.rate, 1.0);
}

TEST(Simulate, LogRateScalesWithRepetitions) {
    auto in = a4_instance();
    SeededRng rng(15);
    auto c = sample_codeword(*in.code, rng);
    auto f = c;
    for (std::size_t v : {0u, 6u}) {
        auto e = in.seq->graph(0).edge_of(v, 0);
        f[e] = in.F.add(f[e], in.F.one());
    }
    auto rate = [&](std::size_t L) {
        ProtocolParams P(in.seq, in.F, 2, L, 1, Mode::interactive);
        return simulate_soundness(P, f, [&] { return std::make_unique<CodewordSwap>(c); }, 20000, 3 + L).rate;
    };
    double r2 = rate(2), r4 = rate(4);
    ASSERT_GT(r4, 0.0);
    double slope = std::log(r4) / std::log(r2);
    EXPECT_NEAR(slope, 2.0, 0.3);
}

TEST(Simulate, WilsonInterval) {
    auto w = wilson_interval(50, 100);
    EXPECT_NEAR(w.low, 0.375281, 1e-5);
    EXPECT_NEAR(w.high, 0.624719, 1e-5);
    auto z = wilson_interval(0, 10000);
    EXPECT_EQ(z.low, 0.0);
    EXPECT_NEAR(z.high, 6.6349 / 10000 / (1 + 6.6349 / 10000), 1e-6);
}
