#include "pirgraph/wire.hpp"

namespace pir::wire {

namespace {

constexpr std::uint8_t kQueryColor = 0x01;
constexpr std::uint8_t kQueryPerm = 0x02;
constexpr std::uint8_t kQueryBijection = 0x03;
constexpr std::uint8_t kQuerySym = 0x04;

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
    out.push_back(static_cast<std::uint8_t>(v >> 8));
    out.push_back(static_cast<std::uint8_t>(v & 0xFF));
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    out.push_back(static_cast<std::uint8_t>(v >> 24));
    out.push_back(static_cast<std::uint8_t>((v >> 16) & 0xFF));
    out.push_back(static_cast<std::uint8_t>((v >> 8) & 0xFF));
    out.push_back(static_cast<std::uint8_t>(v & 0xFF));
}

class Reader {
public:
    explicit Reader(const std::vector<std::uint8_t>& buf) : buf_(&buf) {}

    std::uint8_t u8() {
        need(1);
        return (*buf_)[pos_++];
    }
    std::uint16_t u16() {
        need(2);
        const std::uint16_t v = static_cast<std::uint16_t>(((*buf_)[pos_] << 8) | (*buf_)[pos_ + 1]);
        pos_ += 2;
        return v;
    }
    std::uint32_t u32() {
        need(4);
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v = (v << 8) | (*buf_)[pos_ + static_cast<std::size_t>(i)];
        pos_ += 4;
        return v;
    }
    std::vector<std::uint8_t> bytes(std::size_t n) {
        need(n);
        std::vector<std::uint8_t> out(buf_->begin() + static_cast<std::ptrdiff_t>(pos_),
                                      buf_->begin() + static_cast<std::ptrdiff_t>(pos_ + n));
        pos_ += n;
        return out;
    }
    bool done() const { return pos_ == buf_->size(); }

private:
    void need(std::size_t n) {
        if (pos_ + n > buf_->size()) throw WireError("truncated payload");
    }
    const std::vector<std::uint8_t>* buf_;
    std::size_t pos_ = 0;
};

void encode_perm(std::vector<std::uint8_t>& out, const std::vector<int>& perm) {
    put_u16(out, static_cast<std::uint16_t>(perm.size()));
    for (int v : perm) put_u16(out, static_cast<std::uint16_t>(v));
}

std::vector<int> decode_perm(Reader& r) {
    const std::uint16_t count = r.u16();
    std::vector<int> perm;
    perm.reserve(count);
    for (int i = 0; i < count; ++i) perm.push_back(r.u16());
    return perm;
}

void encode_query_into(std::vector<std::uint8_t>& out, const Query& q);

Query decode_query_from(Reader& r) {
    const std::uint8_t kind = r.u8();
    switch (kind) {
        case kQueryColor:
            return Query{ColorQuery{r.u16()}};
        case kQueryPerm:
            return Query{PermQuery{decode_perm(r)}};
        case kQueryBijection: {
            BijectionQuery bq;
            bq.n_vertices = r.u8();
            if (bq.n_vertices < 1 || bq.n_vertices > 16)
                throw WireError("bad bijection width");
            const std::uint32_t count = r.u32();
            if (count != (1u << bq.n_vertices)) throw WireError("bad bijection size");
            bq.sigma.reserve(count);
            for (std::uint32_t i = 0; i < count; ++i) bq.sigma.push_back(r.u16());
            return Query{std::move(bq)};
        }
        case kQuerySym: {
            SymQuery sq;
            sq.automorphism = decode_perm(r);
            sq.inner = std::make_shared<const Query>(decode_query_from(r));
            return Query{std::move(sq)};
        }
        default:
            throw WireError("unknown query kind");
    }
}

void encode_query_into(std::vector<std::uint8_t>& out, const Query& q) {
    std::visit(
        [&out](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, ColorQuery>) {
                out.push_back(kQueryColor);
                put_u16(out, static_cast<std::uint16_t>(v.value));
            } else if constexpr (std::is_same_v<T, PermQuery>) {
                out.push_back(kQueryPerm);
                encode_perm(out, v.perm);
            } else if constexpr (std::is_same_v<T, BijectionQuery>) {
                out.push_back(kQueryBijection);
                out.push_back(static_cast<std::uint8_t>(v.n_vertices));
                put_u32(out, static_cast<std::uint32_t>(v.sigma.size()));
                for (std::uint16_t s : v.sigma) put_u16(out, s);
            } else {
                out.push_back(kQuerySym);
                encode_perm(out, v.automorphism);
                encode_query_into(out, *v.inner);
            }
        },
        q.v);
}

} // namespace

std::vector<std::uint8_t> encode_frame(const Frame& f) {
    if (f.payload.size() > kMaxPayload) throw WireError("payload too large");
    std::vector<std::uint8_t> out;
    out.reserve(5 + f.payload.size());
    put_u32(out, static_cast<std::uint32_t>(f.payload.size() + 1));
    out.push_back(f.tag);
    out.insert(out.end(), f.payload.begin(), f.payload.end());
    return out;
}

bool decode_frame(const std::vector<std::uint8_t>& buf, Frame& out, std::size_t& consumed) {
    if (buf.size() < 4) return false;
    std::uint32_t len = 0;
    for (int i = 0; i < 4; ++i) len = (len << 8) | buf[static_cast<std::size_t>(i)];
    if (len < 1) throw WireError("length prefix must cover the tag");
    if (len > kMaxPayload + 1) throw WireError("frame too large");
    if (buf.size() < 4 + static_cast<std::size_t>(len)) return false;
    out.tag = buf[4];
    out.payload.assign(buf.begin() + 5, buf.begin() + 4 + static_cast<std::ptrdiff_t>(len));
    consumed = 4 + static_cast<std::size_t>(len);
    return true;
}

std::vector<std::uint8_t> encode_query(const Query& q) {
    std::vector<std::uint8_t> out;
    encode_query_into(out, q);
    return out;
}

Query decode_query(const std::vector<std::uint8_t>& payload) {
    Reader r(payload);
    Query q = decode_query_from(r);
    if (!r.done()) throw WireError("trailing bytes after query");
    return q;
}

std::vector<std::uint8_t> encode_answer_bits(const BitVec& bits) {
    if (bits.size() > 0xFFFF) throw WireError("answer too long for 16-bit length");
    std::vector<std::uint8_t> out;
    put_u16(out, static_cast<std::uint16_t>(bits.size()));
    out.insert(out.end(), bits.bytes().begin(), bits.bytes().end());
    return out;
}

BitVec decode_answer_bits(const std::vector<std::uint8_t>& payload) {
    Reader r(payload);
    const std::uint16_t nbits = r.u16();
    const auto bytes = r.bytes((static_cast<std::size_t>(nbits) + 7) / 8);
    if (!r.done()) throw WireError("trailing bytes after answer");
    return BitVec::from_bytes(bytes, nbits);
}

} // namespace pir::wire
