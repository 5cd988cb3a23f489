#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "flowering.hpp"
#include "test_util.hpp"

using namespace flowering;

namespace {

std::vector<double> eigen_oracle(const Rim& g) {
    const auto nv = static_cast<Eigen::Index>(g.vertex_count());
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(nv, nv);
    // built from the edge list rather than the slot table
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
        const auto& ed = g.edge(e);
        const auto v = ed.representative.vertex;
        const auto u = g.partner(v, ed.representative.index).vertex;
        if (ed.is_petal) {
            a(v, v) += 1;
        } else {
            a(v, u) += 1;
            a(u, v) += 1;
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a, Eigen::EigenvaluesOnly);
    std::vector<double> ev(es.eigenvalues().data(), es.eigenvalues().data() + nv);
    std::sort(ev.begin(), ev.end());
    return ev;
}

std::vector<double> sorted(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    return v;
}

void expect_spectra_close(const std::vector<double>& a, const std::vector<double>& b, double tol) {
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(a[i], b[i], tol) << "index " << i;
}

double grid_minimum(const SoundnessInputs& in, double delta, int points) {
    const double hi = delta / static_cast<double>(in.orders.size());
    double best = 1e300;
    // the right end is excluded from the search interval but the objective is
    // continuous there
    for (int i = 1; i <= points; ++i) best = std::min(best, soundness_at(in, delta, hi * i / points).total);
    return best;
}

} // namespace

TEST(Spectrum, SmallExamples) {
    auto k4 = adjacency_spectrum(*k4_cayley().graph);
    expect_spectra_close(sorted(k4.eigenvalues), {-1, -1, -1, 3}, 1e-9);
    EXPECT_TRUE(k4.ramanujan);
    EXPECT_NEAR(k4.nontrivial_max, 1, 1e-9);
    EXPECT_FALSE(k4.bipartite);

    auto c4 = adjacency_spectrum(*cyclic_cayley(4).graph);
    expect_spectra_close(sorted(c4.eigenvalues), {-2, 0, 0, 2}, 1e-9);
    EXPECT_TRUE(c4.bipartite);
    // the strict ordering puts -2 second
    EXPECT_NEAR(c4.lambda_bar, 1, 1e-9);
    EXPECT_NEAR(c4.nontrivial_max, 0, 1e-9);

    auto c6 = adjacency_spectrum(*cyclic_cayley(6).graph);
    EXPECT_NEAR(c6.nontrivial_max, 1, 1e-9);
    EXPECT_TRUE(c6.ramanujan);
}

TEST(Spectrum, MatchesEigenOracle) {
    std::vector<std::shared_ptr<const Rim>> graphs{a4_cayley().graph, z2r_cayley(4).graph, cyclic_cayley(12, {1, 5}).graph,
                                                   cyclic_cayley(15, {1, 4, 6}).graph};
    // cut graphs carry petals
    auto seq = build_blossoming(a4_cayley());
    for (const auto& g : seq.graphs) graphs.push_back(g);
    auto s5 = build_blossoming(z2r_cayley(5));
    for (const auto& g : s5.graphs) graphs.push_back(g);
    for (const auto& g : graphs) {
        auto rep = adjacency_spectrum(*g);
        auto want = eigen_oracle(*g);
        expect_spectra_close(sorted(rep.eigenvalues), want, 1e-8);
        double sum = 0;
        for (double x : rep.eigenvalues) sum += x;
        EXPECT_NEAR(sum, rep.trace, 1e-6 * static_cast<double>(g->arity() * g->vertex_count()));
        if (g->petal_count() == 0) {
            EXPECT_NEAR(*std::max_element(want.begin(), want.end()), g->arity(), 1e-9);
        }
    }
}

TEST(Spectrum, LpsIsRamanujan) {
    auto lps = lps_graph(5, 13);
    auto rep = adjacency_spectrum(*lps.cayley.graph);
    EXPECT_EQ(rep.eigenvalues.size(), 2184u);
    EXPECT_NEAR(rep.eigenvalues[0], 6, 1e-9);
    EXPECT_LE(rep.nontrivial_max, 2 * std::sqrt(5.0) + 1e-6);
    EXPECT_TRUE(rep.ramanujan);
    EXPECT_NEAR(rep.trace, 0, 1e-12);
}

TEST(Spectrum, TooLarge) {
    expect_errc(Errc::too_large, [] { adjacency_spectrum(*z2r_cayley(6).graph, 32); });
}

TEST(Bounds, DistanceBound) {
    EXPECT_DOUBLE_EQ(distance_bound(0.5, 0), 0.25);
    EXPECT_EQ(distance_bound(0.3, 0.3), 0);
    EXPECT_EQ(distance_bound(0.2, 0.5), 0);
    EXPECT_NEAR(distance_bound(0.5, 1 / std::sqrt(5.0)), 0.0263932, 1e-7);
}

TEST(Bounds, DiameterBound) {
    EXPECT_DOUBLE_EQ(diameter_bound(2, 0.3), 3);
    EXPECT_NEAR(diameter_bound(2184, 1 / std::sqrt(5.0)), 2 * std::log(1092.0) / std::log((3 - 1 / std::sqrt(5.0)) / 2) + 3,
                1e-12);
    EXPECT_NEAR(diameter_bound(2184, 1 / std::sqrt(5.0)), 60.33, 0.01);
    expect_errc(Errc::invalid_argument, [] { diameter_bound(1, 0.1); });
    expect_errc(Errc::invalid_argument, [] { diameter_bound(10, 1); });
}

TEST(Bounds, MeasuredDiameterWithinBound) {
    std::vector<std::shared_ptr<const Rim>> graphs{a4_cayley().graph, k4_cayley().graph, z2r_cayley(3).graph,
                                                   cyclic_cayley(12, {1, 5}).graph, cyclic_cayley(9).graph};
    int checked = 0;
    for (const auto& g : graphs) {
        auto rep = adjacency_spectrum(*g);
        if (rep.lambda_tilde >= 1) continue;
        EXPECT_LE(static_cast<double>(graph_diameter(*g)), diameter_bound(static_cast<double>(g->vertex_count()), rep.lambda_tilde));
        ++checked;
    }
    EXPECT_GE(checked, 4);
}

TEST(Bounds, MinDistanceAboveSpectralBound) {
    struct Case {
        std::shared_ptr<const Rim> g;
        std::uint64_t p;
    };
    for (auto [g, p] : {Case{k4_cayley().graph, 3}, Case{z2r_cayley(3).graph, 13}}) {
        GraphCode gc(g, RSCode(PrimeField(p), 3, 2));
        auto rep = adjacency_spectrum(*g);
        const double delta = 2.0 / 3;
        auto d = min_distance_bruteforce(gc, 10'000'000);
        ASSERT_TRUE(d.has_value());
        double bound = distance_bound(delta, rep.lambda_tilde) * static_cast<double>(g->edge_count());
        EXPECT_GT(bound, 1.0);
        EXPECT_GE(static_cast<double>(*d), bound);
    }
}

TEST(Soundness, GoldenSectionMatchesGrid) {
    SoundnessInputs in{{3}, 101, 1.0, 1};
    auto b = soundness_bound(in, 0.5);
    EXPECT_NEAR(b.total, grid_minimum(in, 0.5, 10000), 1e-6);
    EXPECT_DOUBLE_EQ(b.total, b.commit + b.query);
    EXPECT_GT(b.eps, 0);
    EXPECT_LT(b.eps, 0.5);

    SeededRng rng(1);
    for (int i = 0; i < 30; ++i) {
        SoundnessInputs r;
        const std::size_t R = 1 + rng.below(6);
        for (std::size_t k = 0; k < R; ++k) r.orders.push_back(2 + rng.below(5));
        r.field_size = std::pow(10.0, 2 + static_cast<double>(rng.below(5)));
        r.edge_fraction = static_cast<double>(1 + rng.below(3)) / 3;
        r.repetitions = 1 + rng.below(10);
        const double delta = 0.1 + 0.8 * static_cast<double>(rng.below(1000)) / 1000;
        EXPECT_NEAR(soundness_bound(r, delta).total, grid_minimum(r, delta, 10000), 1e-6);
    }
}

TEST(Soundness, LargeFieldLimit) {
    SoundnessInputs in{{3, 2, 3}, 1e30, 1.0, 4};
    EXPECT_NEAR(soundness_bound(in, 0.4).total, std::pow(0.6, 4), 1e-6);
}

TEST(Soundness, MonotoneInRepetitionsAndField) {
    SoundnessInputs in{{3, 2, 3}, 101, 1.0, 1};
    double prev = 2;
    for (std::size_t L = 1; L <= 20; ++L) {
        in.repetitions = L;
        double t = soundness_bound(in, 0.5).total;
        EXPECT_LE(t, prev + 1e-12);
        prev = t;
    }
    in.repetitions = 3;
    prev = 1e300;
    for (double q : {101.0, 1009.0, 65537.0, 2147483647.0, 1e18}) {
        in.field_size = q;
        double t = soundness_bound(in, 0.5).total;
        EXPECT_LE(t, prev + 1e-12);
        prev = t;
    }
}

TEST(Soundness, Errors) {
    SoundnessInputs in{{3}, 101, 1.0, 1};
    expect_errc(Errc::invalid_argument, [&] { soundness_bound(in, 0); });
    SoundnessInputs empty{{}, 101, 1.0, 1};
    expect_errc(Errc::invalid_argument, [&] { soundness_bound(empty, 0.5); });
}

TEST(Report, FieldSizeFigures) {
    auto r = comparison_report(524288, 262144, 128, 128);
    EXPECT_NEAR(r.delta, 1 - std::sqrt(0.5), 1e-15);
    // 2^{129} * 2^7 * 2^19 * 19
    EXPECT_NEAR(r.flowering_field_log2, 155 + std::log2(19.0), 1e-9);
    EXPECT_EQ(r.flowering_field_stated, 160);
    // 2^128 * 1e7 * 2^66.5 * 18 / 2^27
    EXPECT_NEAR(r.fri_field_log2, 128 + std::log2(1e7) + 66.5 + std::log2(18.0) - 27, 1e-9);
    EXPECT_EQ(r.fri_field_stated, 194);
    EXPECT_NEAR(r.stir_field_log2, 237.5, 1e-9);
    EXPECT_EQ(r.stir_field_stated, 237);
    EXPECT_EQ(r.rows.size(), 8u);
    EXPECT_NEAR(flowering_commit_soundness(r, r.flowering_field_log2), std::exp2(-128.0), 1e-45);
    expect_errc(Errc::invalid_argument, [] { comparison_report(4, 4, 128, 1); });
}

TEST(Report, CaseStudy) {
    auto c = case_study(5, 13, 4);
    EXPECT_FALSE(c.special);
    EXPECT_EQ(c.vertices, 2184);
    EXPECT_EQ(c.N, 6552);
    EXPECT_EQ(c.dimension_bound, 2184);
    EXPECT_DOUBLE_EQ(c.delta, 0.5);
    EXPECT_DOUBLE_EQ(c.lambda_tilde, 1 / std::sqrt(5.0));
    EXPECT_NEAR(c.distance_bound, 0.0263932, 1e-7);
    EXPECT_EQ(c.base_generators, 3u);
    EXPECT_DOUBLE_EQ(c.round_bound, 3 * std::ceil(c.diameter_bound));
    EXPECT_DOUBLE_EQ(c.kappa, c.round_bound / std::log2(6552.0));
    // 2 sqrt(p)/(p+1) exceeds 1/sqrt(p), so the Ramanujan-only figures are weaker
    EXPECT_GT(c.ramanujan_diameter_bound, c.diameter_bound);
    EXPECT_LT(c.ramanujan_distance_bound, c.distance_bound);

    auto d = case_study(5, 17, 4);
    EXPECT_EQ(d.distance_bound, c.distance_bound);
    EXPECT_EQ(d.vertices, 16 * 17 * 18);

    auto s = case_study(13, 17, 10);
    EXPECT_TRUE(s.special);
    EXPECT_EQ(s.vertices, 2448);

    expect_errc(Errc::bad_congruence, [] { case_study(7, 13, 4); });
    expect_errc(Errc::invalid_argument, [] { case_study(5, 13, 6); });
}

TEST(Report, CaseStudyMatchesConstructedGraph) {
    auto lps = lps_graph(5, 13);
    auto c = case_study(5, 13, 4);
    EXPECT_EQ(static_cast<double>(lps.cayley.graph->vertex_count()), c.vertices);
    EXPECT_EQ(static_cast<double>(lps.cayley.graph->edge_count()), c.N);
    EXPECT_LE(static_cast<double>(graph_diameter(*lps.cayley.graph)), c.diameter_bound);
}
