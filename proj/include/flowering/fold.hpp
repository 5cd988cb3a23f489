#pragma once

#include <vector>

#include "flowering/cut.hpp"
#include "flowering/error.hpp"
#include "flowering/field.hpp"
#include "flowering/rational.hpp"
#include "flowering/reed_solomon.hpp"
#include "flowering/word.hpp"

namespace flowering {

struct FoldStep {
    const CutCollection* collection = nullptr;
    FieldElement rho;
};

// Field operations spent folding one round: m multiplications and m-1
// additions per edge of the cut graph.
inline std::size_t fold_ops(const CutCollection& c) { return (2 * c.order() - 1) * c.cut().edge_count(); }

// Fold(f, rho)(v, j) = sum_i rho^i f(phi_i(v), j)
inline EdgeWord fold(const PrimeField& F, const EdgeWord& f, const FoldStep& step) {
    const auto& c = *step.collection;
    const auto& parent = c.parent();
    const auto& cut = c.cut();
    require_shape(parent, f);
    std::vector<FieldElement> pw(c.order());
    pw[0] = F.one();
    for (std::size_t i = 1; i < pw.size(); ++i) pw[i] = F.mul(pw[i - 1], step.rho);
    EdgeWord out(cut);
    for (std::size_t e = 0; e < cut.edge_count(); ++e) {
        HalfEdge h = cut.edge(e).representative;
        FieldElement acc = F.zero();
        for (std::size_t i = 0; i < c.order(); ++i)
            acc = F.add(acc, F.mul(pw[i], f.at(parent, c.phi(i, h.vertex), h.index)));
        out[e] = acc;
    }
    return out;
}

inline EdgeWord fold(const PrimeField& F, const EdgeWord& f, const CutCollection& c, FieldElement rho) {
    return fold(F, f, FoldStep{&c, rho});
}

inline std::vector<char> invalid_vertices(const Rim& g, const EdgeWord& f, const RSCode& code) {
    std::vector<char> bad(g.vertex_count());
    for (std::size_t v = 0; v < g.vertex_count(); ++v) bad[v] = !rs_is_member(f.local_view(g, v), code);
    return bad;
}

// Weighted fraction of vertices whose local view is not an RS codeword.
inline Rational invalid_fraction(const Rim& g, const EdgeWord& f, const RSCode& code, const WeightFn& w) {
    w.validate(g);
    return w.mass(invalid_vertices(g, f, code)) / w.total();
}

struct CommitSoundnessResult {
    std::size_t bad_count = 0;
    Rational bad_fraction;
    Rational bound;
    Rational delta;  // weighted invalid fraction of f on the parent
};

// Counts rho with invalid_fraction(Fold(f, rho)) < invalid_fraction(f) - eps,
// the refined weights being used on the cut.
inline CommitSoundnessResult commit_soundness_exhaustive(const RSCode& code, const EdgeWord& f, const CutCollection& c,
                                                         const WeightFn& w, const Rational& eps) {
    const auto& F = code.field();
    if (F.modulus() > 10000) throw Error(Errc::field_too_large, "exhaustive check limited to |F| <= 10^4");
    if (eps <= 0) throw Error(Errc::invalid_argument, "eps must be positive");
    CommitSoundnessResult res;
    res.delta = invalid_fraction(c.parent(), f, code, w);
    auto wc = refine_weights(w, c);

    // Integer weights over a common denominator keep the inner loop exact and cheap.
    BigInt den = 1;
    for (const auto& x : wc.weights) den = boost::multiprecision::lcm(den, boost::multiprecision::denominator(x));
    std::vector<BigInt> iw;
    BigInt itotal = 0;
    for (const auto& x : wc.weights) {
        iw.push_back(boost::multiprecision::numerator(x) * (den / boost::multiprecision::denominator(x)));
        itotal += iw.back();
    }
    const Rational target = res.delta - eps;
    const auto& cut = c.cut();
    for (std::uint64_t r = 0; r < F.modulus(); ++r) {
        auto g = fold(F, f, c, FieldElement{r});
        BigInt mass = 0;
        for (std::size_t v = 0; v < cut.vertex_count(); ++v)
            if (!rs_is_member(g.local_view(cut, v), code)) mass += iw[v];
        if (Rational(mass, itotal) < target) ++res.bad_count;
    }
    res.bad_fraction = Rational(res.bad_count, F.modulus());
    res.bound = Rational(c.order() - 1) / (eps * F.modulus());
    return res;
}

} // namespace flowering
