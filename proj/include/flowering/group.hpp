#pragma once

#include <algorithm>
#include <array>
#include <concepts>
#include <cstdint>
#include <numeric>
#include <string>
#include <unordered_map>
#include <vector>

#include "flowering/error.hpp"
#include "flowering/field.hpp"

namespace flowering {

template <class G>
concept FiniteGroup = requires(const G& g, const typename G::element_type& a) {
    { g.multiply(a, a) } -> std::convertible_to<typename G::element_type>;
    { g.inverse(a) } -> std::convertible_to<typename G::element_type>;
    { g.identity() } -> std::convertible_to<typename G::element_type>;
    { g.encode(a) } -> std::convertible_to<std::string>;
    { g.elements() } -> std::convertible_to<std::vector<typename G::element_type>>;
    { g.describe() } -> std::convertible_to<std::string>;
    { a == a } -> std::convertible_to<bool>;
};

namespace detail {
inline void put_be32(std::string& s, std::uint32_t x) {
    for (int b = 3; b >= 0; --b) s.push_back(static_cast<char>((x >> (8 * b)) & 0xff));
}
} // namespace detail

class CyclicGroup {
public:
    using element_type = std::uint32_t;
    explicit CyclicGroup(std::uint32_t order) : n_(order) {
        if (order == 0) throw Error(Errc::invalid_argument, "cyclic group of order 0");
    }
    element_type multiply(element_type a, element_type b) const { return static_cast<element_type>((std::uint64_t{a} + b) % n_); }
    element_type inverse(element_type a) const { return a == 0 ? 0 : n_ - a; }
    element_type identity() const { return 0; }
    std::string encode(element_type a) const {
        std::string s;
        detail::put_be32(s, a);
        return s;
    }
    std::vector<element_type> elements() const {
        std::vector<element_type> v(n_);
        std::iota(v.begin(), v.end(), 0u);
        return v;
    }
    std::string describe() const { return "Z/" + std::to_string(n_); }
    std::string show(element_type a) const { return std::to_string(a); }

private:
    std::uint32_t n_;
};

// (Z/2)^r with elements as bitmasks.
class ElementaryAbelian2 {
public:
    using element_type = std::uint32_t;
    explicit ElementaryAbelian2(unsigned rank) : r_(rank) {
        if (rank == 0 || rank > 20) throw Error(Errc::invalid_argument, "rank must be in 1..20");
    }
    element_type multiply(element_type a, element_type b) const { return a ^ b; }
    element_type inverse(element_type a) const { return a; }
    element_type identity() const { return 0; }
    std::string encode(element_type a) const {
        std::string s;
        detail::put_be32(s, a);
        return s;
    }
    std::vector<element_type> elements() const {
        std::vector<element_type> v(std::size_t{1} << r_);
        std::iota(v.begin(), v.end(), 0u);
        return v;
    }
    std::string describe() const { return "(Z/2)^" + std::to_string(r_); }
    std::string show(element_type a) const {
        std::string s;
        for (unsigned i = 0; i < r_; ++i) s.push_back((a >> i) & 1 ? '1' : '0');
        return s;
    }
    element_type basis(unsigned i) const { return element_type{1} << i; }
    unsigned rank() const { return r_; }

private:
    unsigned r_;
};

// Alternating group on d points; a permutation is its image list, and
// (a*b)(x) = a(b(x)).
class AlternatingGroup {
public:
    using element_type = std::vector<std::uint8_t>;
    explicit AlternatingGroup(unsigned degree) : d_(degree) {
        if (degree < 3 || degree > 8) throw Error(Errc::invalid_argument, "degree must be in 3..8");
    }
    element_type multiply(const element_type& a, const element_type& b) const {
        element_type c(d_);
        for (unsigned x = 0; x < d_; ++x) c[x] = a[b[x]];
        return c;
    }
    element_type inverse(const element_type& a) const {
        element_type c(d_);
        for (unsigned x = 0; x < d_; ++x) c[a[x]] = static_cast<std::uint8_t>(x);
        return c;
    }
    element_type identity() const {
        element_type c(d_);
        std::iota(c.begin(), c.end(), 0);
        return c;
    }
    std::string encode(const element_type& a) const { return std::string(a.begin(), a.end()); }
    std::vector<element_type> elements() const {
        std::vector<element_type> out;
        element_type p = identity();
        do {
            if (is_even(p)) out.push_back(p);
        } while (std::next_permutation(p.begin(), p.end()));
        return out;
    }
    std::string describe() const { return "A" + std::to_string(d_); }
    // Cycle notation on points 1..d.
    std::string show(const element_type& a) const {
        std::string s;
        std::vector<char> seen(d_, 0);
        for (unsigned x = 0; x < d_; ++x) {
            if (seen[x] || a[x] == x) continue;
            s += '(';
            for (unsigned y = x; !seen[y]; y = a[y]) {
                seen[y] = 1;
                s += std::to_string(y + 1);
            }
            s += ')';
        }
        return s.empty() ? "()" : s;
    }
    // Permutation from 1-based cycles, e.g. {{1,2,3}} or {{1,2},{3,4}}.
    element_type from_cycles(const std::vector<std::vector<unsigned>>& cycles) const {
        element_type p = identity();
        for (const auto& c : cycles)
            for (std::size_t i = 0; i < c.size(); ++i) p[c[i] - 1] = static_cast<std::uint8_t>(c[(i + 1) % c.size()] - 1);
        if (!is_even(p)) throw Error(Errc::invalid_argument, "odd permutation is not in the alternating group");
        return p;
    }

private:
    static bool is_even(const element_type& p) {
        std::size_t inv = 0;
        for (std::size_t i = 0; i < p.size(); ++i)
            for (std::size_t j = i + 1; j < p.size(); ++j) inv += p[i] > p[j];
        return inv % 2 == 0;
    }
    unsigned d_;
};

using Matrix2 = std::array<std::uint32_t, 4>;  // row-major [[a,b],[c,d]]

// Scale so the first nonzero entry (row-major) is 1.
inline Matrix2 projective_canonicalize(const Matrix2& m, std::uint32_t q) {
    Matrix2 r;
    for (std::size_t i = 0; i < 4; ++i) r[i] = m[i] % q;
    std::uint64_t det = (std::uint64_t{r[0]} * r[3] + q - std::uint64_t{r[1]} * r[2] % q) % q;
    if (det == 0) throw Error(Errc::singular_matrix, "matrix is not invertible");
    std::size_t lead = 0;
    while (r[lead] == 0) ++lead;
    std::uint64_t inv = detail::powmod_u64(r[lead], q - 2, q);
    for (auto& e : r) e = static_cast<std::uint32_t>(e * inv % q);
    return r;
}

// PGL_2(F_q), or PSL_2(F_q) realized as the classes with square determinant.
class ProjectiveLinearGroup {
public:
    using element_type = Matrix2;
    ProjectiveLinearGroup(std::uint32_t q, bool special) : q_(q), special_(special) {
        if (q < 3 || q > 1000 || !is_probable_prime(q)) throw Error(Errc::invalid_argument, "q must be an odd prime below 1000");
    }
    element_type multiply(const element_type& x, const element_type& y) const {
        auto m = [&](std::uint32_t a, std::uint32_t b, std::uint32_t c, std::uint32_t d) {
            return static_cast<std::uint32_t>((std::uint64_t{a} * b + std::uint64_t{c} * d) % q_);
        };
        return projective_canonicalize(
            {m(x[0], y[0], x[1], y[2]), m(x[0], y[1], x[1], y[3]), m(x[2], y[0], x[3], y[2]), m(x[2], y[1], x[3], y[3])}, q_);
    }
    element_type inverse(const element_type& x) const {
        return projective_canonicalize({x[3], (q_ - x[1]) % q_, (q_ - x[2]) % q_, x[0]}, q_);
    }
    element_type identity() const { return {1, 0, 0, 1}; }
    std::string encode(const element_type& x) const {
        std::string s;
        for (auto e : x) detail::put_be32(s, e);
        return s;
    }
    std::vector<element_type> elements() const {
        std::vector<element_type> out;
        for (std::uint32_t b = 0; b < q_; ++b)
            for (std::uint32_t c = 0; c < q_; ++c)
                for (std::uint32_t d = 0; d < q_; ++d)
                    if ((std::uint64_t{d} + q_ - std::uint64_t{b} * c % q_) % q_ != 0) out.push_back({1, b, c, d});
        for (std::uint32_t c = 1; c < q_; ++c)
            for (std::uint32_t d = 0; d < q_; ++d) out.push_back({0, 1, c, d});
        if (special_) {
            std::erase_if(out, [&](const element_type& x) { return !is_square(det(x)); });
        }
        return out;
    }
    std::string describe() const { return std::string(special_ ? "PSL2" : "PGL2") + "(F_" + std::to_string(q_) + ")"; }
    std::string show(const element_type& x) const {
        return "[[" + std::to_string(x[0]) + "," + std::to_string(x[1]) + "],[" + std::to_string(x[2]) + "," +
               std::to_string(x[3]) + "]]";
    }
    std::uint32_t q() const { return q_; }
    bool special() const { return special_; }
    std::uint32_t det(const element_type& x) const {
        return static_cast<std::uint32_t>((std::uint64_t{x[0]} * x[3] % q_ + q_ - std::uint64_t{x[1]} * x[2] % q_) % q_);
    }
    bool is_square(std::uint32_t a) const { return a != 0 && detail::powmod_u64(a, (q_ - 1) / 2, q_) == 1; }

private:
    std::uint32_t q_;
    bool special_;
};

// Group with elements numbered 0..|G|-1 by sorted canonical encoding.
template <FiniteGroup G>
class IndexedGroup {
public:
    using element_type = typename G::element_type;

    explicit IndexedGroup(G group) : group_(std::move(group)), elements_(group_.elements()) {
        std::sort(elements_.begin(), elements_.end(),
                  [&](const element_type& a, const element_type& b) { return group_.encode(a) < group_.encode(b); });
        index_.reserve(elements_.size());
        for (std::size_t i = 0; i < elements_.size(); ++i) {
            if (!index_.emplace(group_.encode(elements_[i]), static_cast<std::uint32_t>(i)).second)
                throw Error(Errc::invalid_argument, "group encoding is not injective");
        }
    }

    const G& group() const { return group_; }
    std::size_t size() const { return elements_.size(); }
    const element_type& element(std::size_t id) const { return elements_[id]; }
    std::uint32_t id(const element_type& x) const {
        auto it = index_.find(group_.encode(x));
        if (it == index_.end()) throw Error(Errc::invalid_argument, "element not in group");
        return it->second;
    }
    std::uint32_t identity_id() const { return id(group_.identity()); }
    bool contains(const element_type& x) const { return index_.count(group_.encode(x)) != 0; }

    element_type power(const element_type& x, std::int64_t e) const {
        element_type base = e < 0 ? group_.inverse(x) : x;
        std::uint64_t k = static_cast<std::uint64_t>(e < 0 ? -e : e);
        element_type r = group_.identity();
        for (std::uint64_t i = 0; i < k; ++i) r = group_.multiply(r, base);
        return r;
    }

    std::size_t order_of(const element_type& x) const {
        element_type r = x;
        std::size_t k = 1;
        while (!(r == group_.identity())) {
            r = group_.multiply(r, x);
            if (++k > elements_.size()) throw Error(Errc::invalid_argument, "element order exceeds group size");
        }
        return k;
    }

    // id(x * g) for every g
    std::vector<std::uint32_t> left_table(const element_type& x) const {
        std::vector<std::uint32_t> t(elements_.size());
        for (std::size_t g = 0; g < elements_.size(); ++g) t[g] = id(group_.multiply(x, elements_[g]));
        return t;
    }
    // id(g * x) for every g
    std::vector<std::uint32_t> right_table(const element_type& x) const {
        std::vector<std::uint32_t> t(elements_.size());
        for (std::size_t g = 0; g < elements_.size(); ++g) t[g] = id(group_.multiply(elements_[g], x));
        return t;
    }

private:
    G group_;
    std::vector<element_type> elements_;
    std::unordered_map<std::string, std::uint32_t> index_;
};

// Base list S1 and its symmetric closure S with the index involution j -> jbar.
template <FiniteGroup G>
struct GeneratorSet {
    using element_type = typename G::element_type;

    std::vector<element_type> base;        // s_0..s_{n~-1}
    std::vector<element_type> all;         // S
    std::vector<std::uint32_t> inverse;    // s_{inverse[j]} = s_j^{-1}
    std::vector<std::uint32_t> base_slot;  // all[base_slot[i]] == base[i]

    std::size_t base_size() const { return base.size(); }
    std::size_t size() const { return all.size(); }

    // S = base followed by the inverses of its non-involutions, in base order.
    static GeneratorSet from_base(const G& group, std::vector<element_type> base_list) {
        GeneratorSet s;
        s.base = std::move(base_list);
        if (s.base.empty()) throw Error(Errc::not_generating, "empty generator list");
        for (const auto& x : s.base) {
            if (x == group.identity()) throw Error(Errc::identity_in_generators, "identity in generator list");
            if (s.find(x) >= 0) throw Error(Errc::invalid_argument, "repeated generator");
            s.base_slot.push_back(static_cast<std::uint32_t>(s.all.size()));
            s.all.push_back(x);
        }
        for (const auto& x : s.base) {
            auto y = group.inverse(x);
            if (s.find(y) < 0) s.all.push_back(y);
        }
        s.link_inverses(group);
        return s;
    }

    // S given explicitly (must be inverse closed); the base keeps each
    // element whose inverse has not already been kept.
    static GeneratorSet from_symmetric(const G& group, std::vector<element_type> all_list) {
        GeneratorSet s;
        s.all = std::move(all_list);
        if (s.all.empty()) throw Error(Errc::not_generating, "empty generator list");
        for (std::size_t j = 0; j < s.all.size(); ++j) {
            if (s.all[j] == group.identity()) throw Error(Errc::identity_in_generators, "identity in generator list");
            for (std::size_t i = 0; i < j; ++i)
                if (s.all[i] == s.all[j]) throw Error(Errc::invalid_argument, "repeated generator");
        }
        s.link_inverses(group);
        for (std::size_t j = 0; j < s.all.size(); ++j) {
            bool inverse_kept = false;
            for (auto b : s.base_slot) inverse_kept |= b == s.inverse[j];
            if (!inverse_kept) {
                s.base_slot.push_back(static_cast<std::uint32_t>(j));
                s.base.push_back(s.all[j]);
            }
        }
        return s;
    }

private:
    int find(const element_type& x) const {
        for (std::size_t j = 0; j < all.size(); ++j)
            if (all[j] == x) return static_cast<int>(j);
        return -1;
    }

    void link_inverses(const G& group) {
        inverse.assign(all.size(), 0);
        for (std::size_t j = 0; j < all.size(); ++j) {
            int k = find(group.inverse(all[j]));
            if (k < 0) throw Error(Errc::invalid_argument, "generator set is not closed under inverses");
            inverse[j] = static_cast<std::uint32_t>(k);
        }
    }
};

} // namespace flowering
