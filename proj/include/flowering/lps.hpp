#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

#include "flowering/cayley.hpp"
#include "flowering/error.hpp"
#include "flowering/group.hpp"

namespace flowering {

inline bool lps_parameters_valid(std::uint64_t p, std::uint64_t q) {
    return p >= 3 && q >= 3 && p != q && p % 4 == 1 && q % 4 == 1 && is_probable_prime(p) && is_probable_prime(q) &&
           q * q > 4 * p;
}

inline bool is_quadratic_residue(std::uint64_t a, std::uint64_t q) {
    a %= q;
    return a != 0 && detail::powmod_u64(a, (q - 1) / 2, q) == 1;
}

// Integer quaternions of norm p with a0 > 0 odd and a1, a2, a3 even, in
// lexicographic order of (a0, a1, a2, a3).
inline std::vector<std::array<std::int64_t, 4>> lps_quaternions(std::uint64_t p) {
    std::vector<std::array<std::int64_t, 4>> out;
    const auto P = static_cast<std::int64_t>(p);
    std::int64_t b = 0;
    while ((b + 1) * (b + 1) <= P) ++b;
    for (std::int64_t a0 = 1; a0 <= b; a0 += 2)
        for (std::int64_t a1 = -b; a1 <= b; ++a1)
            for (std::int64_t a2 = -b; a2 <= b; ++a2)
                for (std::int64_t a3 = -b; a3 <= b; ++a3) {
                    if ((a1 | a2 | a3) & 1) continue;
                    if (a0 * a0 + a1 * a1 + a2 * a2 + a3 * a3 == P) out.push_back({a0, a1, a2, a3});
                }
    return out;
}

struct LpsGraph {
    ProjectiveLinearGroup group;
    CayleyGraph<ProjectiveLinearGroup> cayley;
};

inline LpsGraph lps_graph(std::uint64_t p, std::uint64_t q) {
    if (!lps_parameters_valid(p, q))
        throw Error(Errc::bad_congruence, "need primes p != q, both 1 mod 4, with q > 2 sqrt(p)");
    const auto Q = static_cast<std::int64_t>(q);
    std::int64_t i = 1;
    while ((i * i + 1) % Q != 0) ++i;
    auto quats = lps_quaternions(p);
    if (quats.size() != p + 1) throw Error(Errc::too_few_solutions, std::to_string(quats.size()) + " quaternions of norm p");

    ProjectiveLinearGroup grp(static_cast<std::uint32_t>(q), is_quadratic_residue(p, q));
    auto mod = [&](std::int64_t x) { return static_cast<std::uint32_t>(((x % Q) + Q) % Q); };
    std::vector<Matrix2> S;
    for (const auto& a : quats) {
        Matrix2 m{mod(a[0] + a[1] * i), mod(a[2] + a[3] * i), mod(-a[2] + a[3] * i), mod(a[0] - a[1] * i)};
        S.push_back(projective_canonicalize(m, static_cast<std::uint32_t>(q)));
    }
    auto gens = GeneratorSet<ProjectiveLinearGroup>::from_symmetric(grp, S);
    auto cg = build_cayley(grp, std::move(gens));
    return {grp, std::move(cg)};
}

} // namespace flowering
