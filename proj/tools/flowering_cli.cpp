#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "flowering.hpp"

using namespace flowering;

namespace {

// exit codes: 0 accept / success, 1 reject, 2 usage or malformed input
constexpr int kReject = 1;
constexpr int kUsage = 2;

struct FamilyArgs {
    std::string family = "a4";
    unsigned r = 3;
    std::uint32_t order = 9;
    std::vector<std::uint32_t> gens{1};
    std::uint64_t p = 5, q = 13;
    std::string graph_file;
};

struct Built {
    std::shared_ptr<const Rim> graph;
    std::function<BlossomingSequence()> blossom;
    Metadata meta;
};

template <FiniteGroup G>
Built wrap(CayleyGraph<G> cg, Metadata meta) {
    auto shared = std::make_shared<CayleyGraph<G>>(std::move(cg));
    return {shared->graph, [shared] { return build_blossoming(*shared); }, std::move(meta)};
}

std::string join(const std::vector<std::uint32_t>& v) {
    std::string s;
    for (auto x : v) s += (s.empty() ? "" : ",") + std::to_string(x);
    return s;
}

Built build_family(FamilyArgs a) {
    if (a.family == "file") {
        std::ifstream in(a.graph_file);
        if (!in) throw Error(Errc::invalid_argument, "cannot open " + a.graph_file);
        Metadata meta;
        Rim g = read_rim(in, &meta);
        FamilyArgs b;
        b.family.clear();
        for (const auto& [k, v] : meta) {
            if (k == "family") b.family = v;
            else if (k == "r") b.r = static_cast<unsigned>(std::stoul(v));
            else if (k == "order") b.order = static_cast<std::uint32_t>(std::stoul(v));
            else if (k == "p") b.p = std::stoull(v);
            else if (k == "q") b.q = std::stoull(v);
            else if (k == "gens") {
                b.gens.clear();
                std::stringstream ss(v);
                std::string tok;
                while (std::getline(ss, tok, ',')) b.gens.push_back(static_cast<std::uint32_t>(std::stoul(tok)));
            }
        }
        if (b.family.empty() || b.family == "file") throw Error(Errc::parse_error, "graph file has no family metadata");
        Built built = build_family(b);
        // the blossoming needs the group, so the file must be the graph it names
        if (!(*built.graph == g)) throw Error(Errc::parse_error, "graph file does not match its family metadata");
        return built;
    }
    if (a.family == "a4") return wrap(a4_cayley(), {{"family", "a4"}});
    if (a.family == "k4") return wrap(k4_cayley(), {{"family", "k4"}});
    if (a.family == "z2r") {
        if (a.r < 1 || a.r > 20) throw Error(Errc::invalid_argument, "need 1 <= r <= 20");
        return wrap(z2r_cayley(a.r), {{"family", "z2r"}, {"r", std::to_string(a.r)}});
    }
    if (a.family == "cyclic")
        return wrap(cyclic_cayley(a.order, a.gens),
                    {{"family", "cyclic"}, {"order", std::to_string(a.order)}, {"gens", join(a.gens)}});
    if (a.family == "lps") {
        auto lps = lps_graph(a.p, a.q);
        return wrap(std::move(lps.cayley), {{"family", "lps"}, {"p", std::to_string(a.p)}, {"q", std::to_string(a.q)}});
    }
    throw Error(Errc::invalid_argument, "unknown family " + a.family);
}

void add_family(CLI::App* c, FamilyArgs& a) {
    c->add_option("--family", a.family, "a4 | k4 | z2r | cyclic | lps | file")
        ->check(CLI::IsMember({"a4", "k4", "z2r", "cyclic", "lps", "file"}));
    c->add_option("--r", a.r, "rank for z2r");
    c->add_option("--order", a.order, "group order for cyclic");
    c->add_option("--gens", a.gens, "base generators for cyclic")->delimiter(',');
    c->add_option("--p", a.p, "LPS degree parameter");
    c->add_option("--q", a.q, "LPS field");
    c->add_option("--graph", a.graph_file, "graph file written by the graph subcommand (family file)");
}

struct CodeArgs {
    std::uint64_t modulus = 101;
    std::size_t k = 2;
    std::size_t L = 1;
    std::size_t t = 1;
};

void add_code(CLI::App* c, CodeArgs& a, bool protocol) {
    c->add_option("--modulus", a.modulus, "prime field modulus");
    c->add_option("--k", a.k, "local Reed-Solomon dimension");
    if (protocol) {
        c->add_option("--L", a.L, "query repetitions");
        c->add_option("--t", a.t, "edges checked per fold");
    }
}

std::vector<std::uint8_t> read_bytes(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::invalid_argument, "cannot open " + path);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

EdgeWord load_word(const std::string& path, const PrimeField& F, const Rim& g) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::invalid_argument, "cannot open " + path);
    return read_word(in, F, g.edge_count());
}

template <class Fn>
void write_file(const std::string& path, Fn&& fn) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(Errc::invalid_argument, "cannot write " + path);
    fn(out);
}

void print_counters(const ComplexityCounters& c) {
    std::printf("queries=%llu\nverifier_ops=%llu\nrounds=%llu\n", static_cast<unsigned long long>(c.queries),
                static_cast<unsigned long long>(c.verifier_ops), static_cast<unsigned long long>(c.rounds));
}

// Adds a random nonzero value on one edge of each of `count` distinct vertices.
EdgeWord corrupt(const PrimeField& F, const Rim& g, EdgeWord f, std::size_t count, SeededRng& rng) {
    if (count > g.vertex_count()) throw Error(Errc::invalid_argument, "more corruptions than vertices");
    std::vector<std::uint32_t> vs(g.vertex_count());
    for (std::size_t i = 0; i < vs.size(); ++i) vs[i] = static_cast<std::uint32_t>(i);
    for (std::size_t i = 0; i < count; ++i) {
        std::swap(vs[i], vs[i + rng.below(vs.size() - i)]);
        auto e = g.edge_of(vs[i], rng.below(g.arity()));
        f[e] = F.add(f[e], F.from_u64(1 + rng.below(F.modulus() - 1)));
    }
    return f;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Flowering proximity test toolkit"};
    app.require_subcommand(1);
    FamilyArgs fam;
    CodeArgs code;
    std::string out_path, word_path, proof_path, codeword_path, adversary = "honest";
    std::uint64_t seed = 1;
    std::size_t corruptions = 0, trials = 1000;

    auto* graph = app.add_subcommand("graph", "write a Cayley graph in the rim text format");
    add_family(graph, fam);
    graph->add_option("-o,--out", out_path, "output file")->required();

    auto* sample = app.add_subcommand("sample", "sample a uniform codeword, optionally corrupted");
    add_family(sample, fam);
    add_code(sample, code, false);
    sample->add_option("--seed", seed);
    sample->add_option("--corrupt", corruptions, "number of vertices to corrupt");
    sample->add_option("-o,--out", out_path)->required();

    auto* prove_cmd = app.add_subcommand("prove", "write a non-interactive proof for a word");
    add_family(prove_cmd, fam);
    add_code(prove_cmd, code, true);
    prove_cmd->add_option("--word", word_path)->required();
    prove_cmd->add_option("-o,--out", out_path)->required();

    auto* verify_cmd = app.add_subcommand("verify", "check a proof; exit 0 accept, 1 reject");
    add_family(verify_cmd, fam);
    add_code(verify_cmd, code, true);
    verify_cmd->add_option("--proof", proof_path)->required();
    verify_cmd->add_option("--word", word_path, "bind the proof to this input word");

    auto* sim = app.add_subcommand("simulate", "empirical acceptance rate of a cheating prover");
    add_family(sim, fam);
    add_code(sim, code, true);
    sim->add_option("--word", word_path)->required();
    sim->add_option("--adversary", adversary)->check(CLI::IsMember({"honest", "swap"}));
    sim->add_option("--codeword", codeword_path, "codeword committed by the swap adversary");
    sim->add_option("--trials", trials);
    sim->add_option("--seed", seed);

    double N = 524288, K = 262144, security = 128, kappa = 128, delta = -1;
    std::uint64_t cs_p = 0, cs_q = 0, cs_k = 0;
    auto* params = app.add_subcommand("params", "closed-form parameter report");
    params->add_option("--N", N);
    params->add_option("--K", K);
    params->add_option("--security", security);
    params->add_option("--kappa", kappa);
    params->add_option("--delta", delta);
    params->add_option("--case-p", cs_p, "LPS case study p");
    params->add_option("--case-q", cs_q, "LPS case study q");
    params->add_option("--case-k", cs_k, "LPS case study k");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (params->parsed()) {
            auto r = comparison_report(N, K, security, kappa, 6, delta);
            std::printf("%-18s %-34s %-28s %-22s %s\n", "", "FRI", "STIR", "Flowering (orig)", "Flowering");
            for (const auto& row : r.rows)
                std::printf("%-18s %-34s %-28s %-22s %s\n", row.name.c_str(), row.fri.c_str(), row.stir.c_str(),
                            row.flowering_orig.c_str(), row.flowering.c_str());
            std::printf("\n# field thresholds: exact log2, then the whole power stated (Flowering rounded up, FRI/STIR rounded down)\n");
            std::printf("delta=%.10g\n", r.delta);
            std::printf("flowering_field_log2=%.6f\nflowering_field_threshold=2^%d\n", r.flowering_field_log2, r.flowering_field_stated);
            std::printf("fri_field_log2=%.6f\nfri_field_threshold=2^%d\n", r.fri_field_log2, r.fri_field_stated);
            std::printf("stir_field_log2=%.6f\nstir_field_threshold=2^%d\n", r.stir_field_log2, r.stir_field_stated);
            std::printf("flowering_orig_field_log2=%.6f\n", r.flowering_orig_field_log2);
            std::printf("flowering_L=%.0f\nfri_L=%.0f\n", r.flowering_L, r.fri_L);
            if (cs_p) {
                auto c = case_study(cs_p, cs_q, cs_k);
                std::printf("case_vertices=%.0f\ncase_N=%.0f\ncase_dimension_bound=%.0f\ncase_delta=%.10g\n", c.vertices, c.N,
                            c.dimension_bound, c.delta);
                std::printf("case_lambda_tilde=%.10g\ncase_distance_bound=%.10g\ncase_diameter_bound=%.6f\n", c.lambda_tilde,
                            c.distance_bound, c.diameter_bound);
                std::printf("case_ramanujan_lambda=%.10g\ncase_ramanujan_distance_bound=%.10g\n", c.ramanujan_lambda,
                            c.ramanujan_distance_bound);
                std::printf("case_round_bound=%.0f\ncase_kappa=%.6f\n", c.round_bound, c.kappa);
            }
            return 0;
        }

        Built b = build_family(fam);
        if (graph->parsed()) {
            write_file(out_path, [&](std::ostream& os) { write_rim(os, *b.graph, b.meta); });
            std::printf("vertices=%zu\nedges=%zu\narity=%zu\ndiameter=%zu\n", b.graph->vertex_count(), b.graph->edge_count(),
                        b.graph->arity(), graph_diameter(*b.graph));
            return 0;
        }

        PrimeField F(code.modulus);
        const Rim& g0 = *b.graph;
        if (sample->parsed()) {
            GraphCode gc(b.graph, RSCode(F, g0.arity(), code.k));
            SeededRng rng(seed);
            auto f = corrupt(F, g0, sample_codeword(gc, rng), corruptions, rng);
            write_file(out_path, [&](std::ostream& os) { write_word(os, F, f); });
            auto bad = invalid_vertices(g0, f, gc.base());
            std::printf("edges=%zu\ndimension=%zu\ninvalid_vertices=%zu\n", f.size(), gc.dimension(),
                        static_cast<std::size_t>(std::count(bad.begin(), bad.end(), 1)));
            return 0;
        }

        auto seq = std::make_shared<const BlossomingSequence>(b.blossom());
        const bool interactive = sim->parsed();
        ProtocolParams P(seq, F, code.k, code.L, code.t, interactive ? Mode::interactive : Mode::fiat_shamir);

        if (prove_cmd->parsed()) {
            auto f = load_word(word_path, F, g0);
            auto pf = prove(f, P);
            auto bytes = serialize_proof(pf);
            write_file(out_path, [&](std::ostream& os) { os.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size())); });
            std::printf("bytes=%zu\nproof_length=%llu\nprover_ops=%llu\n", bytes.size(),
                        static_cast<unsigned long long>(pf.counters.proof_length),
                        static_cast<unsigned long long>(pf.counters.prover_ops));
            std::printf("rounds=%llu\n", static_cast<unsigned long long>(pf.counters.rounds));
            return 0;
        }

        if (verify_cmd->parsed()) {
            Proof pf;
            try {
                pf = deserialize_proof(read_bytes(proof_path));
            } catch (const Error& e) {
                if (e.code() != Errc::malformed_proof) throw;
                std::printf("verdict=%s\n", verdict_name(Verdict::malformed));
                return kReject;
            }
            VerifyResult res = word_path.empty()
                                   ? verify(pf, P)
                                   : verify(pf, P, MerkleTree(word_leaves(F, load_word(word_path, F, g0))).root());
            std::printf("verdict=%s\n", verdict_name(res.verdict));
            print_counters(res.counters);
            return res.accepted() ? 0 : kReject;
        }

        if (sim->parsed()) {
            auto f = load_word(word_path, F, g0);
            StrategyFactory make;
            if (adversary == "honest") {
                make = [] { return std::make_unique<HonestFold>(); };
            } else {
                if (codeword_path.empty()) throw Error(Errc::invalid_argument, "swap adversary needs --codeword");
                auto c = load_word(codeword_path, F, g0);
                make = [c] { return std::make_unique<CodewordSwap>(c); };
            }
            auto s = simulate_soundness(P, f, make, trials, seed);
            // invalid-vertex fraction lower-bounds the distance, and the bound is
            // decreasing in delta, so this keeps the comparison conservative
            Rational inv = invalid_fraction(g0, f, P.code(), seq->weights[0]);
            const double d = to_double(inv);
            std::printf("trials=%zu\naccepted=%zu\nrate=%.6f\nwilson_low=%.6f\nwilson_high=%.6f\n", s.trials, s.accepted, s.rate,
                        s.interval.low, s.interval.high);
            std::printf("delta_lower=%.6f\n", d);
            if (d > 0) {
                SoundnessInputs in{seq->orders(), static_cast<double>(F.modulus()),
                                   static_cast<double>(code.t) / static_cast<double>(g0.arity()), code.L};
                auto bd = soundness_bound(in, d);
                std::printf("bound_eps=%.6g\nbound_commit=%.6g\nbound_query=%.6g\nbound_total=%.6g\n", bd.eps, bd.commit, bd.query,
                            bd.total);
            }
            return 0;
        }
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kUsage;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kUsage;
    }
    return kUsage;
}
