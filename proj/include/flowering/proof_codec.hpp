#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "flowering/error.hpp"
#include "flowering/field.hpp"
#include "flowering/protocol.hpp"

namespace flowering {

namespace detail {

class ByteWriter {
public:
    void u8(std::uint8_t x) { out.push_back(x); }
    void u32(std::uint32_t x) {
        for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(x >> (8 * i)));
    }
    void bytes(std::span<const std::uint8_t> b) { out.insert(out.end(), b.begin(), b.end()); }
    std::vector<std::uint8_t> out;
};

class ByteReader {
public:
    explicit ByteReader(std::span<const std::uint8_t> in) : in_(in) {}
    std::size_t remaining() const { return in_.size() - pos_; }
    void need(std::size_t n) const {
        if (remaining() < n) throw Error(Errc::malformed_proof, "truncated proof");
    }
    std::uint8_t u8() {
        need(1);
        return in_[pos_++];
    }
    std::uint32_t u32() {
        need(4);
        std::uint32_t x = 0;
        for (int i = 0; i < 4; ++i) x |= std::uint32_t{in_[pos_++]} << (8 * i);
        return x;
    }
    std::span<const std::uint8_t> take(std::size_t n) {
        need(n);
        auto s = in_.subspan(pos_, n);
        pos_ += n;
        return s;
    }
    Digest digest() {
        Digest d;
        auto s = take(32);
        std::copy(s.begin(), s.end(), d.begin());
        return d;
    }

private:
    std::span<const std::uint8_t> in_;
    std::size_t pos_ = 0;
};

} // namespace detail

inline constexpr std::uint8_t proof_version = 1;

inline std::vector<std::uint8_t> serialize_proof(const Proof& pf) {
    PrimeField F(pf.modulus);
    detail::ByteWriter w;
    w.bytes(std::span<const std::uint8_t>(reinterpret_cast<const std::uint8_t*>("FLWR"), 4));
    w.u8(proof_version);
    std::vector<std::uint8_t> mod;
    for (std::uint64_t m = pf.modulus; m; m >>= 8) mod.push_back(static_cast<std::uint8_t>(m));
    w.u8(static_cast<std::uint8_t>(mod.size()));
    w.bytes(mod);
    for (auto x : {pf.n, pf.k, pf.rounds, pf.repetitions, pf.edges_per_check}) w.u32(x);
    w.bytes(pf.orders);
    w.bytes(pf.input_root);
    for (const auto& r : pf.roots) w.bytes(r);
    std::vector<std::uint8_t> buf(F.byte_len());
    for (auto x : pf.final_view) {
        F.write_bytes(x, buf.data());
        w.bytes(buf);
    }
    for (const auto& rep : pf.openings)
        for (const auto& o : rep) {
            w.u32(o.leaf);
            F.write_bytes(o.value, buf.data());
            w.bytes(buf);
            if (o.path.size() > 255) throw Error(Errc::invalid_argument, "authentication path too long");
            w.u8(static_cast<std::uint8_t>(o.path.size()));
            for (const auto& d : o.path) w.bytes(d);
        }
    return std::move(w.out);
}

inline Proof deserialize_proof(std::span<const std::uint8_t> bytes) {
    detail::ByteReader r(bytes);
    auto magic = r.take(4);
    if (!std::equal(magic.begin(), magic.end(), "FLWR")) throw Error(Errc::malformed_proof, "bad magic");
    if (r.u8() != proof_version) throw Error(Errc::malformed_proof, "unsupported version");
    Proof pf;
    std::size_t mlen = r.u8();
    if (mlen == 0 || mlen > 8) throw Error(Errc::malformed_proof, "bad modulus length");
    auto mb = r.take(mlen);
    if (mb.back() == 0) throw Error(Errc::malformed_proof, "non-minimal modulus encoding");
    for (std::size_t i = mlen; i-- > 0;) pf.modulus = (pf.modulus << 8) | mb[i];
    std::optional<PrimeField> field;
    try {
        field.emplace(pf.modulus);
    } catch (const Error&) {
        throw Error(Errc::malformed_proof, "modulus is not an admissible prime");
    }
    const auto& F = *field;
    auto element = [&] {
        try {
            return F.from_bytes(r.take(F.byte_len()));
        } catch (const Error& e) {
            if (e.code() == Errc::malformed_proof) throw;
            throw Error(Errc::malformed_proof, "non-canonical field element");
        }
    };
    pf.n = r.u32();
    pf.k = r.u32();
    pf.rounds = r.u32();
    pf.repetitions = r.u32();
    pf.edges_per_check = r.u32();
    if (pf.n == 0 || pf.rounds == 0 || pf.repetitions == 0 || pf.edges_per_check == 0 || pf.edges_per_check > pf.n)
        throw Error(Errc::malformed_proof, "inconsistent header");
    r.need(pf.rounds);
    auto ob = r.take(pf.rounds);
    pf.orders.assign(ob.begin(), ob.end());
    std::vector<std::size_t> orders;
    for (auto m : pf.orders) {
        if (m < 2) throw Error(Errc::malformed_proof, "round order below 2");
        orders.push_back(m);
    }
    pf.input_root = r.digest();
    r.need(std::size_t{32} * pf.rounds);
    for (std::uint32_t i = 0; i < pf.rounds; ++i) pf.roots.push_back(r.digest());
    r.need(std::size_t{pf.n} * F.byte_len());
    for (std::uint32_t j = 0; j < pf.n; ++j) pf.final_view.push_back(element());

    const std::uint64_t per_rep = openings_per_repetition(orders, pf.edges_per_check);
    const std::uint64_t min_size = 4 + F.byte_len() + 1;
    if (per_rep * pf.repetitions > r.remaining() / min_size) throw Error(Errc::malformed_proof, "truncated openings");
    for (std::uint32_t l = 0; l < pf.repetitions; ++l) {
        auto& rep = pf.openings.emplace_back();
        rep.reserve(per_rep);
        for (std::uint64_t q = 0; q < per_rep; ++q) {
            Opening o;
            o.leaf = r.u32();
            o.value = element();
            std::size_t len = r.u8();
            r.need(32 * len);
            for (std::size_t i = 0; i < len; ++i) o.path.push_back(r.digest());
            rep.push_back(std::move(o));
        }
    }
    if (r.remaining() != 0) throw Error(Errc::malformed_proof, "trailing bytes");
    return pf;
}

} // namespace flowering
