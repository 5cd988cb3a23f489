#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "flowering/cayley.hpp"
#include "flowering/error.hpp"
#include "flowering/rim.hpp"

namespace flowering {

// Eigenvalues of a dense symmetric matrix (row-major, only the lower triangle
// is read): Householder reduction to tridiagonal form, then implicit QL.
inline std::vector<double> symmetric_eigenvalues(std::vector<double> a, std::size_t n) {
    if (a.size() != n * n) throw Error(Errc::shape_mismatch, "matrix size");
    if (n == 0) return {};
    std::vector<double> d(n), e(n, 0.0), p(n);
    auto A = [&](std::size_t i, std::size_t j) -> double& { return a[i * n + j]; };

    for (std::size_t i = n - 1; i > 0; --i) {
        const std::size_t l = i - 1;
        double h = 0, scale = 0;
        if (l > 0) {
            for (std::size_t k = 0; k <= l; ++k) scale += std::fabs(A(i, k));
            if (scale == 0) {
                e[i] = A(i, l);
            } else {
                for (std::size_t k = 0; k <= l; ++k) {
                    A(i, k) /= scale;
                    h += A(i, k) * A(i, k);
                }
                double f = A(i, l);
                double g = f >= 0 ? -std::sqrt(h) : std::sqrt(h);
                e[i] = scale * g;
                h -= f * g;
                A(i, l) = f - g;
                // p = A u / h over the leading (l+1) block, u = row i
                const double* u = &A(i, 0);
                std::fill(p.begin(), p.begin() + l + 1, 0.0);
                for (std::size_t j = 0; j <= l; ++j) {
                    const double* row = &A(j, 0);
                    double s = 0;
                    const double uj = u[j];
                    for (std::size_t k = 0; k < j; ++k) {
                        s += row[k] * u[k];
                        p[k] += row[k] * uj;
                    }
                    p[j] += s + row[j] * uj;
                }
                f = 0;
                for (std::size_t j = 0; j <= l; ++j) {
                    p[j] /= h;
                    f += p[j] * u[j];
                }
                const double hh = f / (h + h);
                for (std::size_t j = 0; j <= l; ++j) p[j] -= hh * u[j];
                for (std::size_t j = 0; j <= l; ++j) {
                    double* row = &A(j, 0);
                    const double uj = u[j], pj = p[j];
                    for (std::size_t k = 0; k <= j; ++k) row[k] -= uj * p[k] + pj * u[k];
                }
            }
        } else {
            e[i] = A(i, l);
        }
    }
    for (std::size_t i = 0; i < n; ++i) d[i] = A(i, i);

    // implicit QL with Wilkinson-style shifts on (d, e)
    for (std::size_t i = 1; i < n; ++i) e[i - 1] = e[i];
    e[n - 1] = 0;
    for (std::size_t l = 0; l < n; ++l) {
        int iter = 0;
        std::size_t m;
        do {
            for (m = l; m + 1 < n; ++m) {
                double dd = std::fabs(d[m]) + std::fabs(d[m + 1]);
                if (std::fabs(e[m]) <= std::numeric_limits<double>::epsilon() * dd) break;
            }
            if (m != l) {
                if (++iter > 200) throw Error(Errc::invalid_argument, "eigenvalue iteration did not converge");
                double g = (d[l + 1] - d[l]) / (2 * e[l]);
                double r = std::hypot(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + (g >= 0 ? std::fabs(r) : -std::fabs(r)));
                double s = 1, c = 1, pp = 0;
                bool deflated = false;
                for (std::size_t i = m; i-- > l;) {
                    double f = s * e[i], b = c * e[i];
                    r = std::hypot(f, g);
                    e[i + 1] = r;
                    if (r == 0) {
                        d[i + 1] -= pp;
                        e[m] = 0;
                        deflated = true;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - pp;
                    r = (d[i] - g) * s + 2 * c * b;
                    pp = s * r;
                    d[i + 1] = g + pp;
                    g = c * r - b;
                }
                if (deflated) continue;
                d[l] -= pp;
                e[l] = g;
                e[m] = 0;
            }
        } while (m != l);
    }
    return d;
}

// Dense adjacency: every half-edge (v, j) adds 1 at (v, E(v, j)), so a
// two-half-edge loop adds 2 on the diagonal and a petal adds 1.
inline std::vector<double> adjacency_matrix(const Rim& g) {
    const std::size_t nv = g.vertex_count();
    std::vector<double> a(nv * nv, 0.0);
    for (std::size_t v = 0; v < nv; ++v)
        for (std::size_t j = 0; j < g.arity(); ++j) a[v * nv + g.neighbor(v, j)] += 1;
    return a;
}

inline bool is_bipartite(const Rim& g) {
    std::vector<int> side(g.vertex_count(), -1);
    for (std::size_t s = 0; s < g.vertex_count(); ++s) {
        if (side[s] >= 0) continue;
        side[s] = 0;
        std::vector<std::uint32_t> q{static_cast<std::uint32_t>(s)};
        for (std::size_t h = 0; h < q.size(); ++h) {
            auto v = q[h];
            for (std::size_t j = 0; j < g.arity(); ++j) {
                auto u = g.neighbor(v, j);
                if (side[u] < 0) {
                    side[u] = 1 - side[v];
                    q.push_back(u);
                } else if (side[u] == side[v]) {
                    return false;
                }
            }
        }
    }
    return true;
}

struct SpectrumReport {
    std::vector<double> eigenvalues;  // decreasing absolute value, ties: larger first
    std::size_t degree = 0;
    double lambda_bar = 0;       // |lambda_2| / n with the ordering above
    double nontrivial_max = 0;   // largest |lambda| once +n (and -n if bipartite) are removed
    double lambda_tilde = 0;     // nontrivial_max / n
    bool bipartite = false;
    bool ramanujan = false;
    double trace = 0;
};

inline bool is_ramanujan(const SpectrumReport& r) {
    return r.nontrivial_max <= 2 * std::sqrt(static_cast<double>(r.degree) - 1) + 1e-6;
}

inline SpectrumReport adjacency_spectrum(const Rim& g, std::size_t max_vertices = 4096) {
    const std::size_t nv = g.vertex_count();
    if (nv > max_vertices) throw Error(Errc::too_large, "dense eigensolve limited to " + std::to_string(max_vertices) + " vertices");
    SpectrumReport r;
    r.degree = g.arity();
    auto a = adjacency_matrix(g);
    for (std::size_t v = 0; v < nv; ++v) r.trace += a[v * nv + v];
    r.eigenvalues = symmetric_eigenvalues(std::move(a), nv);
    std::sort(r.eigenvalues.begin(), r.eigenvalues.end(), [](double x, double y) {
        if (std::fabs(std::fabs(x) - std::fabs(y)) > 1e-12) return std::fabs(x) > std::fabs(y);
        return x > y;
    });
    const double n = static_cast<double>(g.arity());
    r.bipartite = is_bipartite(g);
    r.lambda_bar = nv > 1 ? std::fabs(r.eigenvalues[1]) / n : 0;

    std::vector<double> rest = r.eigenvalues;
    auto drop_near = [&](double target) {
        auto it = std::min_element(rest.begin(), rest.end(),
                                   [&](double x, double y) { return std::fabs(x - target) < std::fabs(y - target); });
        if (it != rest.end() && std::fabs(*it - target) < 1e-6 * std::max(1.0, n)) rest.erase(it);
    };
    drop_near(n);
    if (r.bipartite) drop_near(-n);
    for (double x : rest) r.nontrivial_max = std::max(r.nontrivial_max, std::fabs(x));
    r.lambda_tilde = r.nontrivial_max / n;
    r.ramanujan = is_ramanujan(r);
    return r;
}

} // namespace flowering
