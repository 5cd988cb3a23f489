#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "flowering/error.hpp"

namespace flowering {

struct HalfEdge {
    std::uint32_t vertex = 0;
    std::uint32_t index = 0;

    friend bool operator==(HalfEdge, HalfEdge) = default;
    friend auto operator<=>(HalfEdge, HalfEdge) = default;
};

struct Edge {
    HalfEdge representative;
    bool is_petal = false;
};

// n-regular indexed multigraph. Half-edge (v, j) is stored at flat slot v*n+j;
// the pairing is an involution on slots, fixed points being petals.
class Rim {
public:
    Rim() = default;

    // neighbor and partner are indexed by flat slot; partner holds flat slots.
    static Rim build(std::size_t arity, std::vector<std::uint32_t> neighbor, std::vector<std::uint32_t> partner) {
        if (arity == 0) throw Error(Errc::invalid_argument, "arity must be positive");
        if (neighbor.size() != partner.size() || neighbor.size() % arity != 0 || neighbor.empty())
            throw Error(Errc::size_mismatch, "neighbor/pairing tables must cover V x [n]");
        Rim g;
        g.n_ = arity;
        g.nv_ = neighbor.size() / arity;
        g.neighbor_ = std::move(neighbor);
        g.partner_ = std::move(partner);
        g.validate();
        g.origin_.resize(g.nv_);
        for (std::size_t v = 0; v < g.nv_; ++v) g.origin_[v] = static_cast<std::uint32_t>(v);
        g.materialize_edges();
        return g;
    }

    // Pairing derived for graphs without parallel edges: (v,j) pairs with the
    // unique (u,j') such that E(v,j)=u and E(u,j')=v. A slot pointing to its
    // own vertex becomes a petal.
    static Rim from_simple_neighbors(std::size_t arity, std::vector<std::uint32_t> neighbor) {
        if (arity == 0 || neighbor.size() % arity != 0)
            throw Error(Errc::size_mismatch, "neighbor table must cover V x [n]");
        std::size_t nv = neighbor.size() / arity;
        std::vector<std::uint32_t> partner(neighbor.size());
        for (std::size_t v = 0; v < nv; ++v) {
            for (std::size_t j = 0; j < arity; ++j) {
                std::uint32_t u = neighbor[v * arity + j];
                if (u >= nv) throw Error(Errc::pairing_violation, "neighbor out of range");
                if (u == v) {
                    partner[v * arity + j] = static_cast<std::uint32_t>(v * arity + j);
                    continue;
                }
                int found = -1;
                for (std::size_t jj = 0; jj < arity; ++jj) {
                    if (neighbor[u * arity + jj] == v) {
                        if (found >= 0) throw Error(Errc::pairing_violation, "parallel edges: pairing is ambiguous");
                        found = static_cast<int>(jj);
                    }
                }
                if (found < 0) throw Error(Errc::pairing_violation, "adjacency is not symmetric");
                partner[v * arity + j] = static_cast<std::uint32_t>(u * arity + found);
            }
        }
        return build(arity, std::move(neighbor), std::move(partner));
    }

    // One vertex, n self-paired petals.
    static Rim flower(std::size_t arity) {
        std::vector<std::uint32_t> nb(arity, 0), pr(arity);
        for (std::size_t j = 0; j < arity; ++j) pr[j] = static_cast<std::uint32_t>(j);
        return build(arity, std::move(nb), std::move(pr));
    }

    std::size_t vertex_count() const { return nv_; }
    std::size_t arity() const { return n_; }
    std::size_t slot_count() const { return neighbor_.size(); }
    std::size_t edge_count() const { return edges_.size(); }
    std::size_t petal_count() const { return petal_count_; }

    std::uint32_t neighbor(std::size_t v, std::size_t j) const { return neighbor_[v * n_ + j]; }
    HalfEdge partner(std::size_t v, std::size_t j) const { return unflat(partner_[v * n_ + j]); }
    std::uint32_t partner_slot(std::size_t slot) const { return partner_[slot]; }
    std::uint32_t edge_of(std::size_t v, std::size_t j) const { return edge_of_[v * n_ + j]; }
    std::uint32_t edge_of_slot(std::size_t slot) const { return edge_of_[slot]; }
    const Edge& edge(std::size_t e) const { return edges_[e]; }
    const std::vector<Edge>& edges() const { return edges_; }
    bool is_petal(std::size_t v, std::size_t j) const { return partner_[v * n_ + j] == v * n_ + j; }

    std::size_t petals_at(std::size_t v) const {
        std::size_t c = 0;
        for (std::size_t j = 0; j < n_; ++j) c += is_petal(v, j);
        return c;
    }

    // Vertex label in the graph this one was cut from (identity for fresh graphs).
    std::uint32_t origin(std::size_t v) const { return origin_[v]; }
    const std::vector<std::uint32_t>& origins() const { return origin_; }

    const std::vector<std::uint32_t>& neighbor_table() const { return neighbor_; }
    const std::vector<std::uint32_t>& partner_table() const { return partner_; }

    HalfEdge unflat(std::uint32_t slot) const {
        return {static_cast<std::uint32_t>(slot / n_), static_cast<std::uint32_t>(slot % n_)};
    }

    friend bool operator==(const Rim& a, const Rim& b) {
        return a.n_ == b.n_ && a.nv_ == b.nv_ && a.neighbor_ == b.neighbor_ && a.partner_ == b.partner_;
    }

private:
    friend Rim cut_graph(const Rim&, const std::vector<std::uint32_t>&);

    void validate() const {
        const std::size_t slots = neighbor_.size();
        for (std::size_t h = 0; h < slots; ++h) {
            if (neighbor_[h] >= nv_) throw Error(Errc::pairing_violation, "neighbor out of range");
            if (partner_[h] >= slots) throw Error(Errc::not_involution, "pairing target out of range");
        }
        for (std::size_t h = 0; h < slots; ++h) {
            if (partner_[partner_[h]] != h) throw Error(Errc::not_involution, "pairing applied twice is not the identity");
        }
        for (std::size_t h = 0; h < slots; ++h) {
            std::size_t v = h / n_;
            std::size_t h2 = partner_[h];
            std::size_t v2 = h2 / n_;
            if (neighbor_[h] != v2 || neighbor_[h2] != v)
                throw Error(Errc::pairing_violation, "pairing disagrees with neighbor map");
        }
    }

    void materialize_edges() {
        edges_.clear();
        edge_of_.assign(neighbor_.size(), 0);
        petal_count_ = 0;
        for (std::size_t h = 0; h < neighbor_.size(); ++h) {
            std::size_t h2 = partner_[h];
            if (h2 < h) {
                edge_of_[h] = edge_of_[h2];
                continue;
            }
            bool petal = h2 == h;
            edge_of_[h] = static_cast<std::uint32_t>(edges_.size());
            edges_.push_back({unflat(static_cast<std::uint32_t>(h)), petal});
            petal_count_ += petal;
        }
    }

    std::size_t n_ = 0;
    std::size_t nv_ = 0;
    std::vector<std::uint32_t> neighbor_;
    std::vector<std::uint32_t> partner_;
    std::vector<std::uint32_t> edge_of_;
    std::vector<Edge> edges_;
    std::size_t petal_count_ = 0;
    std::vector<std::uint32_t> origin_;
};

inline std::vector<std::uint32_t> normalize_subset(const Rim& g, std::vector<std::uint32_t> subset) {
    if (subset.empty()) throw Error(Errc::empty_subset, "cut at an empty vertex set");
    std::sort(subset.begin(), subset.end());
    subset.erase(std::unique(subset.begin(), subset.end()), subset.end());
    if (subset.back() >= g.vertex_count()) throw Error(Errc::invalid_argument, "subset vertex out of range");
    return subset;
}

// Restriction to `subset`. New vertex i is the i-th smallest member of the
// subset; half-edges leaving the subset become petals.
inline Rim cut_graph(const Rim& g, const std::vector<std::uint32_t>& subset_in) {
    auto subset = normalize_subset(g, subset_in);
    const std::size_t n = g.arity();
    std::vector<std::int64_t> local(g.vertex_count(), -1);
    for (std::size_t i = 0; i < subset.size(); ++i) local[subset[i]] = static_cast<std::int64_t>(i);

    std::vector<std::uint32_t> nb(subset.size() * n), pr(subset.size() * n);
    for (std::size_t i = 0; i < subset.size(); ++i) {
        std::size_t v = subset[i];
        for (std::size_t j = 0; j < n; ++j) {
            std::uint32_t u = g.neighbor(v, j);
            std::size_t slot = i * n + j;
            if (local[u] >= 0) {
                HalfEdge h = g.partner(v, j);
                nb[slot] = static_cast<std::uint32_t>(local[u]);
                pr[slot] = static_cast<std::uint32_t>(local[h.vertex] * n + h.index);
            } else {
                nb[slot] = static_cast<std::uint32_t>(i);
                pr[slot] = static_cast<std::uint32_t>(slot);
            }
        }
    }
    Rim out = Rim::build(n, std::move(nb), std::move(pr));
    for (std::size_t i = 0; i < subset.size(); ++i) out.origin_[i] = g.origin(subset[i]);
    return out;
}

// True iff phi maps neighbors and pairings of a onto those of b, index by index.
inline bool check_isomorphism(const Rim& a, const Rim& b, const std::vector<std::uint32_t>& phi) {
    if (a.vertex_count() != b.vertex_count() || a.arity() != b.arity() || phi.size() != a.vertex_count())
        throw Error(Errc::size_mismatch, "isomorphism between graphs of different shape");
    std::vector<char> hit(b.vertex_count(), 0);
    for (auto x : phi) {
        if (x >= b.vertex_count() || hit[x]) throw Error(Errc::invalid_argument, "mapping is not a bijection");
        hit[x] = 1;
    }
    for (std::size_t v = 0; v < a.vertex_count(); ++v) {
        for (std::size_t j = 0; j < a.arity(); ++j) {
            if (phi[a.neighbor(v, j)] != b.neighbor(phi[v], j)) return false;
            HalfEdge ha = a.partner(v, j);
            HalfEdge hb = b.partner(phi[v], j);
            if (phi[ha.vertex] != hb.vertex || ha.index != hb.index) return false;
        }
    }
    return true;
}

using Metadata = std::vector<std::pair<std::string, std::string>>;

inline void write_rim(std::ostream& os, const Rim& g, const Metadata& meta = {}) {
    os << "rim " << g.vertex_count() << ' ' << g.arity() << '\n';
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
        os << v;
        for (std::size_t j = 0; j < g.arity(); ++j) {
            HalfEdge h = g.partner(v, j);
            os << ' ' << g.neighbor(v, j) << ' ' << h.vertex << ' ' << h.index;
        }
        os << '\n';
    }
    for (const auto& [k, val] : meta) os << "meta " << k << ' ' << val << '\n';
}

inline Rim read_rim(std::istream& is, Metadata* meta = nullptr) {
    std::string line;
    if (!std::getline(is, line)) throw Error(Errc::parse_error, "empty graph file");
    std::istringstream head(line);
    std::string tag;
    std::size_t nv = 0, n = 0;
    if (!(head >> tag >> nv >> n) || tag != "rim" || nv == 0 || n == 0)
        throw Error(Errc::parse_error, "bad graph header");
    if (nv > (std::size_t{1} << 24) || n > 4096) throw Error(Errc::parse_error, "graph too large");
    std::vector<std::uint32_t> nb(nv * n), pr(nv * n);
    for (std::size_t v = 0; v < nv; ++v) {
        if (!std::getline(is, line)) throw Error(Errc::parse_error, "truncated graph file");
        std::istringstream ls(line);
        std::size_t id = 0;
        if (!(ls >> id) || id != v) throw Error(Errc::parse_error, "vertex lines must be in order");
        for (std::size_t j = 0; j < n; ++j) {
            std::uint64_t t = 0, pv = 0, pj = 0;
            if (!(ls >> t >> pv >> pj)) throw Error(Errc::parse_error, "short vertex line");
            if (t >= nv || pv >= nv || pj >= n) throw Error(Errc::parse_error, "index out of range");
            nb[v * n + j] = static_cast<std::uint32_t>(t);
            pr[v * n + j] = static_cast<std::uint32_t>(pv * n + pj);
        }
    }
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (line.rfind("meta ", 0) != 0) throw Error(Errc::parse_error, "unexpected line after vertex table");
        if (meta) {
            auto rest = line.substr(5);
            auto sp = rest.find(' ');
            if (sp == std::string::npos) meta->emplace_back(rest, "");
            else meta->emplace_back(rest.substr(0, sp), rest.substr(sp + 1));
        }
    }
    return Rim::build(n, std::move(nb), std::move(pr));
}

} // namespace flowering
