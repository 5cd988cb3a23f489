#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "flowering/error.hpp"
#include "flowering/lps.hpp"
#include "flowering/rational.hpp"

namespace flowering {

// delta(delta - lambda~), clamped at 0.
inline double distance_bound(double delta, double lambda_tilde) { return std::max(0.0, delta * (delta - lambda_tilde)); }

inline double diameter_bound(double vertices, double lambda_tilde) {
    if (vertices < 2) throw Error(Errc::invalid_argument, "need at least 2 vertices");
    if (!(lambda_tilde < 1)) throw Error(Errc::invalid_argument, "need lambda~ < 1");
    return 2 * std::log(vertices / 2) / std::log((3 - lambda_tilde) / 2) + 3;
}

// R <= n~ * ceil(diameter bound)
inline double round_bound(std::size_t base_generators, double diam_bound) {
    return static_cast<double>(base_generators) * std::ceil(diam_bound - 1e-12);
}

struct SoundnessInputs {
    std::vector<std::size_t> orders;  // m_r per round
    double field_size = 0;
    double edge_fraction = 1;  // t / n
    std::size_t repetitions = 1;
};

struct SoundnessBound {
    double eps = 0;
    double commit = 0;
    double query = 0;
    double total = 0;
};

inline SoundnessBound soundness_at(const SoundnessInputs& in, double delta, double eps) {
    double sum = 0;
    for (auto m : in.orders) sum += static_cast<double>(m) - 1;
    const double R = static_cast<double>(in.orders.size());
    SoundnessBound b;
    b.eps = eps;
    b.commit = sum / (eps * in.field_size);
    b.query = std::pow(1 - in.edge_fraction * (delta - R * eps), static_cast<double>(in.repetitions));
    b.total = b.commit + b.query;
    return b;
}

// min over eps in (0, delta/R) by golden-section search (the objective is
// convex: a decreasing hyperbola plus an increasing power of a linear term).
inline SoundnessBound soundness_bound(const SoundnessInputs& in, double delta) {
    if (!(delta > 0)) throw Error(Errc::invalid_argument, "need delta > 0");
    if (in.orders.empty() || in.field_size <= 0) throw Error(Errc::invalid_argument, "need rounds and a field size");
    const double R = static_cast<double>(in.orders.size());
    const double phi = (std::sqrt(5.0) - 1) / 2;
    double a = 0, b = delta / R;
    double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
    double f1 = soundness_at(in, delta, x1).total, f2 = soundness_at(in, delta, x2).total;
    for (int it = 0; it < 4000 && (b - a) > 1e-9 * std::min(1.0, b); ++it) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - phi * (b - a);
            f1 = soundness_at(in, delta, x1).total;
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + phi * (b - a);
            f2 = soundness_at(in, delta, x2).total;
        }
    }
    return soundness_at(in, delta, (a + b) / 2);
}

struct ComparisonRow {
    std::string name, fri, stir, flowering_orig, flowering;
};

struct ParameterReport {
    // inputs
    double N = 0, K = 0, security = 0, kappa = 0, n = 0, delta = 0;
    // field-size thresholds, as log2 of the lower bound
    double flowering_field_log2 = 0, flowering_orig_field_log2 = 0, fri_field_log2 = 0, stir_field_log2 = 0;
    // whole-power statements: Flowering rounded up, FRI and STIR rounded down,
    // so the rounding never favours Flowering
    int flowering_field_stated = 0, fri_field_stated = 0, stir_field_stated = 0;
    // repetitions needed to push the query term below 2^-security
    double flowering_L = 0, fri_L = 0;
    double flowering_query_base = 0, fri_query_base = 0;
    // closed forms evaluated at those L
    double flowering_prover = 0, flowering_verifier = 0, flowering_queries = 0, flowering_rounds = 0, flowering_length = 0;
    double fri_prover = 0, fri_verifier = 0, fri_queries = 0, fri_rounds = 0, fri_length = 0;
    double orig_prover = 0, orig_verifier = 0, orig_queries = 0, orig_rounds = 0, orig_length = 0;
    std::vector<ComparisonRow> rows;
    std::vector<std::pair<std::string, std::string>> extra;  // case-study figures
};

namespace detail {
inline std::string fmt(double x, int prec = 4) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", prec, x);
    return buf;
}
inline std::string pow2(double lg) { return "2^" + fmt(lg, 6); }
} // namespace detail

// Closed forms of the FRI / STIR / Flowering comparison at code length N,
// dimension K, security lambda and round constant kappa. delta <= 0 selects
// the default 1 - sqrt(K/N).
inline ParameterReport comparison_report(double N, double K, double security, double kappa, double n = 6, double delta = -1) {
    if (!(N > K && K >= 1)) throw Error(Errc::invalid_argument, "need N > K >= 1");
    ParameterReport r;
    r.N = N;
    r.K = K;
    r.security = security;
    r.kappa = kappa;
    r.n = n;
    r.delta = delta > 0 ? delta : 1 - std::sqrt(K / N);
    const double lam = security, logN = std::log2(N), logK = std::log2(K), d = r.delta;

    r.flowering_field_log2 = lam + 1 + std::log2(kappa) + logN + std::log2(logN);
    r.flowering_orig_field_log2 = lam + logN + std::log2(logN);
    r.fri_field_log2 = lam + std::log2(1e7) + 3.5 * logN + std::log2(logK) - 1.5 * logK;
    r.stir_field_log2 = std::log2(lam) + lam + 2 * logK + 3.5 * logN - std::log2(std::log2(N / K));

    r.flowering_field_stated = static_cast<int>(std::ceil(r.flowering_field_log2 - 1e-9));
    r.fri_field_stated = static_cast<int>(std::floor(r.fri_field_log2 + 1e-9));
    r.stir_field_stated = static_cast<int>(std::floor(r.stir_field_log2 + 1e-9));

    r.flowering_query_base = 1 - d - logN / N;
    r.fri_query_base = 1 - std::min(d, 1 - 1.05 * std::sqrt(K / N));
    r.flowering_L = std::ceil(lam / -std::log2(r.flowering_query_base));
    r.fri_L = std::ceil(lam / -std::log2(r.fri_query_base));

    const double denom = d + logN / N;
    r.flowering_prover = 5 * kappa * N * logN;
    r.flowering_verifier = 8 * lam * n * kappa * logN / denom;
    r.flowering_queries = 3 * lam * n * kappa * logN / denom;
    r.flowering_rounds = kappa * logN;
    r.flowering_length = kappa * N * logN;
    r.orig_prover = 3 * N;
    r.orig_verifier = 4 * lam * logN * logN / denom;
    r.orig_queries = 2 * lam * logN * logN / denom;
    r.orig_rounds = logN;
    r.orig_length = N;
    const double fri_den = std::min(d, 1 - std::sqrt(K / N));
    r.fri_prover = 8 * N;
    r.fri_verifier = 2 * lam * logK / fri_den;
    r.fri_queries = r.fri_verifier;
    r.fri_rounds = logK;
    r.fri_length = N;

    using detail::fmt;
    using detail::pow2;
    r.rows = {
        {"prover", "<" + fmt(r.fri_prover), "O(N)", "<" + fmt(r.orig_prover), "<" + fmt(r.flowering_prover)},
        {"verifier", "<" + fmt(r.fri_verifier), "O(lambda^2+lambda loglog K)", "<" + fmt(r.orig_verifier),
         "<" + fmt(r.flowering_verifier)},
        {"queries", fmt(r.fri_queries), "O(lambda loglog K)", "<" + fmt(r.orig_queries), "<" + fmt(r.flowering_queries)},
        {"rounds", fmt(r.fri_rounds), "O(log K)", "<" + fmt(r.orig_rounds), "<" + fmt(r.flowering_rounds)},
        {"length", "<" + fmt(r.fri_length), "N+O(log K)", "<" + fmt(r.orig_length), "<" + fmt(r.flowering_length)},
        {"field size", ">" + pow2(r.fri_field_log2), ">" + pow2(r.stir_field_log2), ">" + pow2(r.flowering_orig_field_log2),
         ">" + pow2(r.flowering_field_log2)},
        {"commit soundness", "1e7 N^3.5 log K/(K^1.5 |F|)", "-", "N log N/|F|", "2 kappa N log N/|F|"},
        {"query soundness", "(1-min(delta,1-1.05 sqrt(K/N)))^L", "-", "(1-delta-log N/N)^L", "(1-delta-log N/N)^L"},
    };
    return r;
}

// Commit-soundness terms at a concrete field size (log2 |F|).
inline double flowering_commit_soundness(const ParameterReport& r, double field_log2) {
    return 2 * r.kappa * r.N * std::log2(r.N) / std::exp2(field_log2);
}
inline double fri_commit_soundness(const ParameterReport& r, double field_log2) {
    return 1e7 * std::pow(r.N, 3.5) * std::log2(r.K) / (std::pow(r.K, 1.5) * std::exp2(field_log2));
}

struct CaseStudy {
    std::uint64_t p = 0, q = 0, k = 0;
    bool special = false;        // PSL2 when p is a square mod q
    double vertices = 0;
    double N = 0;                // code length = edges
    double dimension_bound = 0;  // (k - (p+1)/2) |V|
    double delta = 0;            // (p - k + 2) / (p + 1)
    double lambda_tilde = 0;     // 1/sqrt(p)
    double distance_bound = 0;
    double ramanujan_lambda = 0;  // 2 sqrt(p) / (p + 1)
    double ramanujan_distance_bound = 0;
    double diameter_bound = 0;
    double ramanujan_diameter_bound = 0;
    std::size_t base_generators = 0;  // ceil((p+1)/2)
    double round_bound = 0;
    double kappa = 0;  // round_bound / log2 N
};

inline CaseStudy case_study(std::uint64_t p, std::uint64_t q, std::uint64_t k) {
    if (!lps_parameters_valid(p, q)) throw Error(Errc::bad_congruence, "need primes p != q, both 1 mod 4, with q > 2 sqrt(p)");
    if (k < 1 || k > p) throw Error(Errc::invalid_argument, "need 1 <= k <= p");
    CaseStudy c;
    c.p = p;
    c.q = q;
    c.k = k;
    c.special = is_quadratic_residue(p, q);
    const double Q = static_cast<double>(q), n = static_cast<double>(p + 1);
    c.vertices = (Q - 1) * Q * (Q + 1) / (c.special ? 2 : 1);
    c.N = n * c.vertices / 2;
    c.dimension_bound = (static_cast<double>(k) - n / 2) * c.vertices;
    c.delta = static_cast<double>(p - k + 2) / n;
    c.lambda_tilde = 1 / std::sqrt(static_cast<double>(p));
    c.distance_bound = distance_bound(c.delta, c.lambda_tilde);
    c.ramanujan_lambda = 2 * std::sqrt(static_cast<double>(p)) / n;
    c.ramanujan_distance_bound = distance_bound(c.delta, c.ramanujan_lambda);
    c.diameter_bound = diameter_bound(c.vertices, c.lambda_tilde);
    c.ramanujan_diameter_bound = diameter_bound(c.vertices, c.ramanujan_lambda);
    c.base_generators = (p + 2) / 2;
    c.round_bound = round_bound(c.base_generators, c.diameter_bound);
    c.kappa = c.round_bound / std::log2(c.N);
    return c;
}

} // namespace flowering
