#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "flowering/error.hpp"
#include "flowering/field.hpp"
#include "flowering/rational.hpp"
#include "flowering/rim.hpp"

namespace flowering {

// Field values indexed by edge id of a specific RIM. Both half-edges of an
// edge read the same slot, so the pairing constraint holds by construction.
class EdgeWord {
public:
    EdgeWord() = default;
    explicit EdgeWord(const Rim& g) : values_(g.edge_count()) {}
    explicit EdgeWord(std::vector<FieldElement> values) : values_(std::move(values)) {}

    std::size_t size() const { return values_.size(); }
    FieldElement operator[](std::size_t e) const { return values_[e]; }
    FieldElement& operator[](std::size_t e) { return values_[e]; }
    FieldElement at(const Rim& g, std::size_t v, std::size_t j) const { return values_[g.edge_of(v, j)]; }
    const std::vector<FieldElement>& values() const { return values_; }
    std::vector<FieldElement>& values() { return values_; }

    bool fits(const Rim& g) const { return values_.size() == g.edge_count(); }

    std::vector<FieldElement> local_view(const Rim& g, std::size_t v) const {
        std::vector<FieldElement> out(g.arity());
        for (std::size_t j = 0; j < g.arity(); ++j) out[j] = at(g, v, j);
        return out;
    }

    friend bool operator==(const EdgeWord&, const EdgeWord&) = default;

private:
    std::vector<FieldElement> values_;
};

inline void require_shape(const Rim& g, const EdgeWord& f) {
    if (!f.fits(g)) throw Error(Errc::shape_mismatch, "word does not match the graph's edge count");
}

inline void require_shape(const Rim& g, const EdgeWord& f, const EdgeWord& h) {
    require_shape(g, f);
    require_shape(g, h);
}

// Restriction of f to the cut graph `cut` (which must be cut_graph(g, subset)).
inline EdgeWord cut_word(const Rim& g, const EdgeWord& f, const Rim& cut, const std::vector<std::uint32_t>& subset) {
    require_shape(g, f);
    auto sorted = normalize_subset(g, subset);
    if (sorted.size() != cut.vertex_count()) throw Error(Errc::shape_mismatch, "cut graph does not match subset");
    EdgeWord out(cut);
    for (std::size_t e = 0; e < cut.edge_count(); ++e) {
        HalfEdge h = cut.edge(e).representative;
        out[e] = f.at(g, sorted[h.vertex], h.index);
    }
    return out;
}

inline EdgeWord cut_word(const Rim& g, const EdgeWord& f, const std::vector<std::uint32_t>& subset) {
    return cut_word(g, f, cut_graph(g, subset), subset);
}

inline std::vector<char> differing_vertices(const Rim& g, const EdgeWord& f, const EdgeWord& h) {
    require_shape(g, f, h);
    std::vector<char> diff(g.vertex_count(), 0);
    for (std::size_t v = 0; v < g.vertex_count(); ++v)
        for (std::size_t j = 0; j < g.arity() && !diff[v]; ++j)
            if (f.at(g, v, j) != h.at(g, v, j)) diff[v] = 1;
    return diff;
}

inline Rational hamming_distance(const Rim& g, const EdgeWord& f, const EdgeWord& h) {
    require_shape(g, f, h);
    std::size_t d = 0;
    for (std::size_t e = 0; e < f.size(); ++e) d += f[e] != h[e];
    return Rational(d, g.edge_count());
}

inline Rational vertex_distance(const Rim& g, const EdgeWord& f, const EdgeWord& h) {
    auto diff = differing_vertices(g, f, h);
    std::size_t d = std::count(diff.begin(), diff.end(), 1);
    return Rational(d, g.vertex_count());
}

struct WeightFn {
    std::vector<Rational> weights;

    static WeightFn uniform(std::size_t vertices) { return {std::vector<Rational>(vertices, Rational(1))}; }

    std::size_t size() const { return weights.size(); }
    const Rational& operator[](std::size_t v) const { return weights[v]; }

    Rational total() const {
        Rational s = 0;
        for (const auto& w : weights) s += w;
        return s;
    }

    Rational mass(const std::vector<char>& members) const {
        Rational s = 0;
        for (std::size_t v = 0; v < weights.size(); ++v)
            if (members[v]) s += weights[v];
        return s;
    }

    void validate(const Rim& g) const {
        if (weights.size() != g.vertex_count()) throw Error(Errc::shape_mismatch, "weight function size");
        for (const auto& w : weights)
            if (w <= 0) throw Error(Errc::invalid_argument, "weights must be positive");
    }
};

inline Rational weighted_vertex_distance(const Rim& g, const EdgeWord& f, const EdgeWord& h, const WeightFn& w) {
    w.validate(g);
    auto diff = differing_vertices(g, f, h);
    return w.mass(diff) / w.total();
}

// Certified constant with vertex_distance >= mu * hamming_distance:
// mean(n + c(v)) / max(n + c(v)), c(v) the petal count at v.
inline Rational mu_lower_bound(const Rim& g) {
    std::size_t sum = 0, mx = 0;
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
        std::size_t x = g.arity() + g.petals_at(v);
        sum += x;
        mx = std::max(mx, x);
    }
    return Rational(sum, g.vertex_count() * mx);
}

// Text form: "word <modulus> <edges>" then one canonical value per line, in
// edge-id order.
inline void write_word(std::ostream& os, const PrimeField& F, const EdgeWord& f) {
    os << "word " << F.modulus() << ' ' << f.size() << '\n';
    for (auto x : f.values()) os << x.value << '\n';
}

inline EdgeWord read_word(std::istream& is, const PrimeField& F, std::size_t expected_edges) {
    std::string tag;
    std::uint64_t p = 0;
    std::size_t count = 0;
    if (!(is >> tag >> p >> count) || tag != "word") throw Error(Errc::parse_error, "bad word header");
    if (p != F.modulus()) throw Error(Errc::parse_error, "word modulus " + std::to_string(p) + " does not match the field");
    if (count != expected_edges) throw Error(Errc::size_mismatch, "word has " + std::to_string(count) + " values, graph has " + std::to_string(expected_edges) + " edges");
    std::vector<FieldElement> vals(count);
    for (auto& x : vals) {
        std::uint64_t v = 0;
        if (!(is >> v)) throw Error(Errc::parse_error, "truncated word");
        if (v >= p) throw Error(Errc::parse_error, "value out of range");
        x.value = v;
    }
    std::string extra;
    if (is >> extra) throw Error(Errc::parse_error, "trailing data after word");
    return EdgeWord(std::move(vals));
}

} // namespace flowering
