#pragma once

#include <vector>

#include "flowering/cayley.hpp"
#include "flowering/group.hpp"

namespace flowering {

// A4 on 12 vertices, S = {(12)(34), (123), (132)}.
inline CayleyGraph<AlternatingGroup> a4_cayley() {
    AlternatingGroup g(4);
    auto b = g.from_cycles({{1, 2}, {3, 4}});
    auto a = g.from_cycles({{1, 2, 3}});
    return build_cayley(g, GeneratorSet<AlternatingGroup>::from_base(g, {b, a}));
}

// (Z/2)^r with the standard basis.
inline CayleyGraph<ElementaryAbelian2> z2r_cayley(unsigned r) {
    ElementaryAbelian2 g(r);
    std::vector<std::uint32_t> base;
    for (unsigned i = 0; i < r; ++i) base.push_back(g.basis(i));
    return build_cayley(g, GeneratorSet<ElementaryAbelian2>::from_base(g, base));
}

// (Z/2)^2 with all three nonzero elements: the complete graph K4.
inline CayleyGraph<ElementaryAbelian2> k4_cayley() {
    ElementaryAbelian2 g(2);
    return build_cayley(g, GeneratorSet<ElementaryAbelian2>::from_base(g, {1, 2, 3}));
}

inline CayleyGraph<CyclicGroup> cyclic_cayley(std::uint32_t order, std::vector<std::uint32_t> base = {1}) {
    CyclicGroup g(order);
    return build_cayley(g, GeneratorSet<CyclicGroup>::from_base(g, std::move(base)));
}

} // namespace flowering
