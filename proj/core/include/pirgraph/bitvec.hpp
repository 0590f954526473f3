#ifndef PIRGRAPH_BITVEC_HPP
#define PIRGRAPH_BITVEC_HPP

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "pirgraph/rng.hpp"

namespace pir {

// Fixed-length bit vector packed MSB-first: bit 0 is the most significant
// bit of byte 0, matching the wire encoding of answers and files.
class BitVec {
public:
    BitVec() = default;

    explicit BitVec(std::size_t nbits)
        : nbits_(nbits), bytes_((nbits + 7) / 8, 0) {}

    static BitVec random(std::size_t nbits, Rng& rng) {
        BitVec v(nbits);
        for (std::size_t i = 0; i < nbits; ++i) v.set(i, rng.bit());
        return v;
    }

    // All zeros except position `pos`.
    static BitVec unit(std::size_t nbits, std::size_t pos) {
        BitVec v(nbits);
        v.set(pos, true);
        return v;
    }

    static BitVec from_bytes(const std::vector<std::uint8_t>& bytes, std::size_t nbits) {
        if (bytes.size() != (nbits + 7) / 8)
            throw std::invalid_argument("BitVec::from_bytes: size mismatch");
        BitVec v;
        v.nbits_ = nbits;
        v.bytes_ = bytes;
        // clear padding so equality is bytewise
        if (nbits % 8 != 0 && !v.bytes_.empty())
            v.bytes_.back() &= static_cast<std::uint8_t>(0xFF << (8 - nbits % 8));
        return v;
    }

    std::size_t size() const { return nbits_; }
    bool empty() const { return nbits_ == 0; }

    bool get(std::size_t i) const {
        check(i);
        return (bytes_[i / 8] >> (7 - i % 8)) & 1;
    }

    void set(std::size_t i, bool v) {
        check(i);
        const std::uint8_t mask = static_cast<std::uint8_t>(1u << (7 - i % 8));
        if (v) bytes_[i / 8] |= mask;
        else bytes_[i / 8] &= static_cast<std::uint8_t>(~mask);
    }

    void flip(std::size_t i) { set(i, !get(i)); }

    BitVec& operator^=(const BitVec& other) {
        if (other.nbits_ != nbits_)
            throw std::invalid_argument("BitVec xor: length mismatch");
        for (std::size_t i = 0; i < bytes_.size(); ++i) bytes_[i] ^= other.bytes_[i];
        return *this;
    }

    friend BitVec operator^(BitVec a, const BitVec& b) {
        a ^= b;
        return a;
    }

    bool operator==(const BitVec& other) const {
        return nbits_ == other.nbits_ && bytes_ == other.bytes_;
    }
    bool operator!=(const BitVec& other) const { return !(*this == other); }

    const std::vector<std::uint8_t>& bytes() const { return bytes_; }

    std::string to_string01() const {
        std::string s;
        s.reserve(nbits_);
        for (std::size_t i = 0; i < nbits_; ++i) s.push_back(get(i) ? '1' : '0');
        return s;
    }

private:
    void check(std::size_t i) const {
        if (i >= nbits_) throw std::out_of_range("BitVec: bit index out of range");
    }

    std::size_t nbits_ = 0;
    std::vector<std::uint8_t> bytes_;
};

} // namespace pir

#endif
