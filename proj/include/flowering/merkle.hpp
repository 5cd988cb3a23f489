#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "flowering/error.hpp"
#include "flowering/sha256.hpp"

namespace flowering {

inline constexpr std::uint8_t tag_leaf = 0x00;
inline constexpr std::uint8_t tag_node = 0x01;

inline Digest hash_leaf(std::span<const std::uint8_t> leaf) { return Sha256().update(tag_leaf).update(leaf).finish(); }

inline Digest hash_node(const Digest& l, const Digest& r) {
    return Sha256().update(tag_node).update(std::span<const std::uint8_t>(l)).update(std::span<const std::uint8_t>(r)).finish();
}

inline std::size_t merkle_depth(std::size_t leaf_count) {
    std::size_t d = 0;
    while ((std::size_t{1} << d) < leaf_count) ++d;
    return d;
}

// Binary SHA-256 tree; an odd node at the end of a level is paired with itself.
class MerkleTree {
public:
    explicit MerkleTree(const std::vector<std::vector<std::uint8_t>>& leaves) {
        if (leaves.empty()) throw Error(Errc::empty_leaves, "merkle tree over no leaves");
        std::vector<Digest> level;
        level.reserve(leaves.size());
        for (const auto& l : leaves) level.push_back(hash_leaf(l));
        levels_.push_back(std::move(level));
        while (levels_.back().size() > 1) {
            const auto& cur = levels_.back();
            std::vector<Digest> next;
            for (std::size_t i = 0; i < cur.size(); i += 2) next.push_back(hash_node(cur[i], cur[i + 1 < cur.size() ? i + 1 : i]));
            levels_.push_back(std::move(next));
        }
    }

    const Digest& root() const { return levels_.back().front(); }
    std::size_t leaf_count() const { return levels_.front().size(); }

    std::vector<Digest> path(std::size_t index) const {
        std::vector<Digest> out;
        for (std::size_t l = 0; l + 1 < levels_.size(); ++l) {
            const auto& cur = levels_[l];
            std::size_t sib = index ^ 1;
            out.push_back(cur[sib < cur.size() ? sib : index]);
            index >>= 1;
        }
        return out;
    }

private:
    std::vector<std::vector<Digest>> levels_;
};

struct MerkleCommitment {
    Digest root{};
    std::size_t leaf_count = 0;
};

inline MerkleCommitment merkle_commit(const std::vector<std::vector<std::uint8_t>>& leaves) {
    MerkleTree t(leaves);
    return {t.root(), t.leaf_count()};
}

inline bool merkle_verify(const MerkleCommitment& c, std::size_t index, std::span<const std::uint8_t> leaf,
                          const std::vector<Digest>& path) {
    if (index >= c.leaf_count || path.size() != merkle_depth(c.leaf_count)) return false;
    Digest h = hash_leaf(leaf);
    for (const auto& sib : path) {
        h = (index & 1) ? hash_node(sib, h) : hash_node(h, sib);
        index >>= 1;
    }
    return h == c.root;
}

} // namespace flowering
