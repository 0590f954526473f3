#ifndef PIRGRAPH_WIRE_HPP
#define PIRGRAPH_WIRE_HPP

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "pirgraph/bitvec.hpp"
#include "pirgraph/schemes.hpp"

namespace pir::wire {

// Frame layout: 4-byte big-endian length prefix (payload length + 1 for
// the tag), 1 tag byte, payload. Payloads are capped at 2^24 bytes.
constexpr std::uint8_t kTagQuery = 0x01;
constexpr std::uint8_t kTagAnswer = 0x02;
constexpr std::uint8_t kTagError = 0x03;
constexpr std::uint32_t kMaxPayload = 1u << 24;

struct WireError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Frame {
    std::uint8_t tag = 0;
    std::vector<std::uint8_t> payload;

    bool operator==(const Frame&) const = default;
};

std::vector<std::uint8_t> encode_frame(const Frame& f);

// Decodes one frame from the front of `buf`. Returns false when more bytes
// are needed; throws WireError on a malformed or oversized header.
bool decode_frame(const std::vector<std::uint8_t>& buf, Frame& out, std::size_t& consumed);

// Canonical query serialization shared by the in-process schemes and the
// socket transport. Permutations travel as length-prefixed arrays of
// 16-bit big-endian indices; bijections as arrays indexed by subset
// bitmask; bit-vectors carry an explicit 16-bit bit length.
std::vector<std::uint8_t> encode_query(const Query& q);
Query decode_query(const std::vector<std::uint8_t>& payload);

std::vector<std::uint8_t> encode_answer_bits(const BitVec& bits);
BitVec decode_answer_bits(const std::vector<std::uint8_t>& payload);

} // namespace pir::wire

#endif
