#pragma once

#include <vector>

#include "flowering/error.hpp"
#include "flowering/field.hpp"

namespace flowering {

// RS[n,k] evaluated at the field elements 0..n-1.
class RSCode {
public:
    RSCode(PrimeField field, std::size_t n, std::size_t k) : F_(field), n_(n), k_(k) {
        if (k == 0 || k > n) throw Error(Errc::invalid_argument, "need 1 <= k <= n");
        if (n > F_.modulus()) throw Error(Errc::invalid_argument, "evaluation points must be distinct field elements");
        // Dual code: generalized RS with column multipliers u_i = 1/prod_{j!=i}(x_i - x_j).
        std::vector<FieldElement> u(n);
        for (std::size_t i = 0; i < n; ++i) {
            FieldElement d = F_.one();
            for (std::size_t j = 0; j < n; ++j)
                if (j != i) d = F_.mul(d, F_.sub(point(i), point(j)));
            u[i] = F_.inv(d);
        }
        parity_.assign((n - k) * n, F_.zero());
        for (std::size_t i = 0; i < n; ++i) {
            FieldElement c = u[i];
            for (std::size_t e = 0; e < n - k; ++e) {
                parity_[e * n + i] = c;
                c = F_.mul(c, point(i));
            }
        }
    }

    const PrimeField& field() const { return F_; }
    std::size_t length() const { return n_; }
    std::size_t dimension() const { return k_; }
    FieldElement point(std::size_t i) const { return F_.from_u64(i); }

    // Row-major (n-k) x n parity-check matrix.
    const std::vector<FieldElement>& parity() const { return parity_; }
    FieldElement parity(std::size_t row, std::size_t col) const { return parity_[row * n_ + col]; }

    std::vector<FieldElement> encode(const std::vector<FieldElement>& coeffs) const {
        if (coeffs.size() > k_) throw Error(Errc::length_mismatch, "too many coefficients");
        std::vector<FieldElement> out(n_);
        for (std::size_t i = 0; i < n_; ++i) {
            FieldElement acc = F_.zero();
            for (std::size_t c = coeffs.size(); c-- > 0;) acc = F_.add(F_.mul(acc, point(i)), coeffs[c]);
            out[i] = acc;
        }
        return out;
    }

    // Number of field operations spent by is_member's parity evaluation.
    std::size_t member_check_ops() const { return (n_ - k_) * (2 * n_ - 1); }

private:
    PrimeField F_;
    std::size_t n_, k_;
    std::vector<FieldElement> parity_;
};

inline bool rs_is_member(const std::vector<FieldElement>& v, const RSCode& code) {
    const auto& F = code.field();
    const std::size_t n = code.length();
    if (v.size() != n) throw Error(Errc::length_mismatch, "word length differs from code length");
    for (std::size_t e = 0; e + code.dimension() < n; ++e) {
        FieldElement acc = F.zero();
        for (std::size_t i = 0; i < n; ++i) acc = F.add(acc, F.mul(code.parity(e, i), v[i]));
        if (acc.value != 0) return false;
    }
    return true;
}

// Coefficients (low degree first) of the interpolating polynomial through
// (xs[i], ys[i]), via Newton divided differences.
inline std::vector<FieldElement> interpolate(const PrimeField& F, const std::vector<FieldElement>& xs,
                                             std::vector<FieldElement> ys) {
    const std::size_t n = xs.size();
    if (ys.size() != n) throw Error(Errc::length_mismatch, "interpolation sizes");
    for (std::size_t lvl = 1; lvl < n; ++lvl)
        for (std::size_t i = n - 1; i >= lvl; --i)
            ys[i] = F.div(F.sub(ys[i], ys[i - 1]), F.sub(xs[i], xs[i - lvl]));
    std::vector<FieldElement> poly(n, F.zero());
    for (std::size_t i = n; i-- > 0;) {
        // poly = poly * (X - xs[i]) + ys[i]
        std::vector<FieldElement> next(n, F.zero());
        for (std::size_t d = 0; d + 1 < n; ++d) next[d + 1] = poly[d];
        for (std::size_t d = 0; d < n; ++d) next[d] = F.sub(next[d], F.mul(poly[d], xs[i]));
        next[0] = F.add(next[0], ys[i]);
        poly = std::move(next);
    }
    return poly;
}

// Exact distance by trying every k-subset of positions.
inline std::size_t rs_distance(const std::vector<FieldElement>& v, const RSCode& code) {
    const auto& F = code.field();
    const std::size_t n = code.length(), k = code.dimension();
    if (v.size() != n) throw Error(Errc::length_mismatch, "word length differs from code length");
    if (n > 16) throw Error(Errc::too_large, "subset oracle limited to n <= 16");
    std::size_t best = 0;
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    std::vector<FieldElement> xs(k), ys(k);
    for (;;) {
        for (std::size_t i = 0; i < k; ++i) {
            xs[i] = code.point(idx[i]);
            ys[i] = v[idx[i]];
        }
        auto poly = interpolate(F, xs, ys);
        std::size_t agree = 0;
        for (std::size_t p = 0; p < n; ++p) {
            FieldElement acc = F.zero();
            for (std::size_t c = poly.size(); c-- > 0;) acc = F.add(F.mul(acc, code.point(p)), poly[c]);
            agree += acc == v[p];
        }
        best = std::max(best, agree);
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + (i - 1)) --i;
        if (i == 0) break;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
    return n - best;
}

} // namespace flowering
