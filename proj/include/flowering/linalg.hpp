#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "flowering/error.hpp"
#include "flowering/field.hpp"

namespace flowering {

namespace detail {

// Reduction policies for the elimination kernels. All keep residues < p.
struct MersenneOps {
    static constexpr std::uint64_t p = (std::uint64_t{1} << 31) - 1;
    static std::uint64_t reduce(std::uint64_t x) {
        x = (x & p) + (x >> 31);
        x = (x & p) + (x >> 31);
        return x >= p ? x - p : x;
    }
    std::uint64_t modulus() const { return p; }
    // row[c] += f * piv[c], columns [lo, hi)
    void axpy(std::uint64_t* row, const std::uint64_t* piv, std::uint64_t f, std::size_t lo, std::size_t hi) const {
        for (std::size_t c = lo; c < hi; ++c) row[c] = reduce(row[c] + f * piv[c]);
    }
    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const { return reduce(a * b); }
};

struct GenericOps {
    std::uint64_t p;
    std::uint64_t modulus() const { return p; }
    void axpy(std::uint64_t* row, const std::uint64_t* piv, std::uint64_t f, std::size_t lo, std::size_t hi) const {
        for (std::size_t c = lo; c < hi; ++c) {
            if (piv[c] == 0) continue;
            std::uint64_t t = static_cast<std::uint64_t>(static_cast<unsigned __int128>(f) * piv[c] % p);
            std::uint64_t s = row[c] + t;
            row[c] = s >= p ? s - p : s;
        }
    }
    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
        return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
    }
};

} // namespace detail

// Row echelon form of a homogeneous system M x = 0 over a prime field, kept
// for kernel sampling by back-substitution. Pivots are normalized to 1.
class KernelSolver {
public:
    KernelSolver(const PrimeField& F, std::size_t cols, std::vector<std::vector<std::uint64_t>> rows)
        : F_(F), cols_(cols), rows_(std::move(rows)) {
        for (auto& r : rows_)
            if (r.size() != cols_) throw Error(Errc::shape_mismatch, "row width");
        if (F_.modulus() == detail::MersenneOps::p) eliminate(detail::MersenneOps{});
        else eliminate(detail::GenericOps{F_.modulus()});
    }

    std::size_t rank() const { return pivot_cols_.size(); }
    std::size_t cols() const { return cols_; }
    std::size_t nullity() const { return cols_ - rank(); }
    const std::vector<std::size_t>& free_cols() const { return free_cols_; }
    const std::vector<std::size_t>& pivot_cols() const { return pivot_cols_; }

    // The kernel vector whose free coordinates are `free_values` (in free_cols order).
    std::vector<FieldElement> complete(const std::vector<FieldElement>& free_values) const {
        if (free_values.size() != free_cols_.size()) throw Error(Errc::length_mismatch, "free value count");
        std::vector<std::uint64_t> x(cols_, 0);
        for (std::size_t i = 0; i < free_cols_.size(); ++i) x[free_cols_[i]] = free_values[i].value;
        if (F_.modulus() == detail::MersenneOps::p) back_substitute(detail::MersenneOps{}, x);
        else back_substitute(detail::GenericOps{F_.modulus()}, x);
        std::vector<FieldElement> out(cols_);
        for (std::size_t c = 0; c < cols_; ++c) out[c] = {x[c]};
        return out;
    }

private:
    template <class Ops>
    void eliminate(const Ops& ops) {
        const std::uint64_t p = ops.modulus();
        std::vector<std::size_t> last(rows_.size(), 0);
        for (std::size_t r = 0; r < rows_.size(); ++r) last[r] = span_end(rows_[r]);
        std::size_t rank = 0;
        for (std::size_t c = 0; c < cols_ && rank < rows_.size(); ++c) {
            std::size_t piv = rows_.size();
            for (std::size_t r = rank; r < rows_.size(); ++r)
                if (rows_[r][c] != 0) {
                    piv = r;
                    break;
                }
            if (piv == rows_.size()) {
                free_cols_.push_back(c);
                continue;
            }
            std::swap(rows_[piv], rows_[rank]);
            std::swap(last[piv], last[rank]);
            auto& prow = rows_[rank];
            std::uint64_t inv = F_.inv({prow[c]}).value;
            for (std::size_t j = c; j < last[rank]; ++j) prow[j] = ops.mul(prow[j], inv);
            for (std::size_t r = rank + 1; r < rows_.size(); ++r) {
                std::uint64_t a = rows_[r][c];
                if (a == 0) continue;
                std::size_t hi = std::max(last[r], last[rank]);
                ops.axpy(rows_[r].data(), prow.data(), p - a, c, hi);
                last[r] = hi;
            }
            pivot_cols_.push_back(c);
            ++rank;
        }
        for (std::size_t c = (pivot_cols_.empty() ? 0 : pivot_cols_.back() + 1); c < cols_; ++c)
            if (std::find(free_cols_.begin(), free_cols_.end(), c) == free_cols_.end()) free_cols_.push_back(c);
        std::sort(free_cols_.begin(), free_cols_.end());
        rows_.resize(rank);
        last_.assign(last.begin(), last.begin() + rank);
    }

    template <class Ops>
    void back_substitute(const Ops& ops, std::vector<std::uint64_t>& x) const {
        const std::uint64_t p = ops.modulus();
        for (std::size_t r = rows_.size(); r-- > 0;) {
            const auto& row = rows_[r];
            std::size_t pc = pivot_cols_[r];
            unsigned __int128 acc = 0;
            for (std::size_t c = pc + 1; c < last_[r]; ++c) acc += static_cast<unsigned __int128>(row[c]) * x[c];
            std::uint64_t s = static_cast<std::uint64_t>(acc % p);
            x[pc] = s == 0 ? 0 : p - s;
        }
    }

    static std::size_t span_end(const std::vector<std::uint64_t>& r) {
        std::size_t e = r.size();
        while (e > 0 && r[e - 1] == 0) --e;
        return e;
    }

    PrimeField F_;
    std::size_t cols_;
    std::vector<std::vector<std::uint64_t>> rows_;
    std::vector<std::size_t> last_;
    std::vector<std::size_t> pivot_cols_;
    std::vector<std::size_t> free_cols_;
};

} // namespace flowering
