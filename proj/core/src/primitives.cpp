#include "authsim/primitives.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <array>

namespace authsim {

namespace {

using Digest = std::array<std::uint8_t, 32>;

Digest sha256(ByteView first, ByteView second = {}) {
    Digest out{};
    EVP_MD_CTX* ctx = EVP_MD_CTX_new();
    if (ctx == nullptr) throw std::runtime_error("EVP_MD_CTX_new failed");
    unsigned int out_len = 0;
    const bool ok = EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) == 1 &&
                    EVP_DigestUpdate(ctx, first.data(), first.size()) == 1 &&
                    EVP_DigestUpdate(ctx, second.data(), second.size()) == 1 &&
                    EVP_DigestFinal_ex(ctx, out.data(), &out_len) == 1;
    EVP_MD_CTX_free(ctx);
    if (!ok || out_len != out.size()) throw std::runtime_error("SHA-256 computation failed");
    return out;
}

void put_be64(std::uint8_t* dst, std::uint64_t v) {
    for (int i = 7; i >= 0; --i) {
        dst[i] = static_cast<std::uint8_t>(v & 0xff);
        v >>= 8;
    }
}

int hex_value(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

}  // namespace

Block::Block(Bytes bytes) : bytes_(std::move(bytes)) {}

Block Block::zero(std::size_t len) { return Block(Bytes(len, 0)); }

Block Block::from_hex(std::string_view hex) { return Block(authsim::from_hex(hex)); }

std::string Block::hex() const { return to_hex(bytes_); }

Block Block::with_flipped_bit(std::size_t bit) const {
    if (bit >= bytes_.size() * 8) throw BlockLengthError("bit index out of range");
    Bytes copy = bytes_;
    copy[bit / 8] ^= static_cast<std::uint8_t>(0x80u >> (bit % 8));
    return Block(std::move(copy));
}

SimClock::SimClock(std::uint64_t tick, Timestamp start) : now_(start), tick_(tick) {}

Timestamp SimClock::advance() noexcept { return advance_by(tick_); }

Timestamp SimClock::advance_by(std::uint64_t seconds) noexcept {
    now_.seconds += seconds;
    return now_;
}

Timestamp SimClock::advance_to(Timestamp t) noexcept {
    if (t > now_) now_ = t;
    return now_;
}

Identity::Identity(std::string id) : id_(std::move(id)) {
    if (id_.empty()) throw EncodingError("identity must not be empty");
    if (id_.size() > kMaxLen) throw EncodingError("identity longer than 64 bytes");
}

void validate_block_len(std::size_t len) {
    if (len < kMinBlockLen || len > kMaxBlockLen) {
        throw BlockLengthError("block length " + std::to_string(len) + " outside [" +
                               std::to_string(kMinBlockLen) + ", " + std::to_string(kMaxBlockLen) + "]");
    }
}

Block hash_f(ByteView input, std::size_t len) {
    if (len == 0 || len > kMaxBlockLen) throw BlockLengthError("invalid output length for f");
    Bytes out;
    out.reserve(len);
    const Digest head = sha256(input);
    out.insert(out.end(), head.begin(), head.begin() + static_cast<std::ptrdiff_t>(std::min(len, head.size())));
    for (std::uint32_t counter = 1; out.size() < len; ++counter) {
        const std::array<std::uint8_t, 4> suffix{
            static_cast<std::uint8_t>(counter >> 24), static_cast<std::uint8_t>(counter >> 16),
            static_cast<std::uint8_t>(counter >> 8), static_cast<std::uint8_t>(counter)};
        const Digest more = sha256(input, suffix);
        const std::size_t take = std::min(len - out.size(), more.size());
        out.insert(out.end(), more.begin(), more.begin() + static_cast<std::ptrdiff_t>(take));
    }
    return Block(std::move(out));
}

Block hash_f(std::string_view input, std::size_t len) {
    return hash_f(ByteView{reinterpret_cast<const std::uint8_t*>(input.data()), input.size()}, len);
}

Block hash_f(const Block& input) { return hash_f(input.view(), input.size()); }

Block xor_blocks(const Block& a, const Block& b) {
    if (a.size() != b.size()) {
        throw BlockLengthError("xor of blocks with different lengths (" + std::to_string(a.size()) + " vs " +
                               std::to_string(b.size()) + ")");
    }
    Bytes out(a.size());
    std::transform(a.bytes().begin(), a.bytes().end(), b.bytes().begin(), out.begin(),
                   [](std::uint8_t l, std::uint8_t r) { return static_cast<std::uint8_t>(l ^ r); });
    return Block(std::move(out));
}

Block encode_password(std::string_view pw, std::size_t len) {
    if (pw.empty()) throw EncodingError("password must not be empty");
    return hash_f(pw, len);
}

Bytes encode_eid(const Identity& id, std::uint64_t n) {
    Bytes out(id.view().begin(), id.view().end());
    out.push_back(0x00);
    out.resize(out.size() + 8);
    put_be64(out.data() + out.size() - 8, n);
    return out;
}

Block eid_block(const Identity& id, std::uint64_t n, const Block& x) {
    const Block normalized = hash_f(encode_eid(id, n), x.size());
    return hash_f(xor_blocks(normalized, x));
}

Block encode_timestamp(Timestamp t, std::size_t len) {
    if (len < 8) throw BlockLengthError("timestamp needs at least 8 bytes");
    Bytes out(len, 0);
    put_be64(out.data() + len - 8, t.seconds);
    return Block(std::move(out));
}

Block mask_password(const Block& b, std::string_view pw) {
    return hash_f(xor_blocks(b, encode_password(pw, b.size())));
}

std::string to_hex(ByteView bytes) {
    static constexpr char kDigits[] = "0123456789abcdef";
    std::string out;
    out.reserve(bytes.size() * 2);
    for (const std::uint8_t byte : bytes) {
        out.push_back(kDigits[byte >> 4]);
        out.push_back(kDigits[byte & 0x0f]);
    }
    return out;
}

Bytes from_hex(std::string_view hex) {
    if (hex.size() % 2 != 0) throw EncodingError("hex string has odd length");
    Bytes out;
    out.reserve(hex.size() / 2);
    for (std::size_t i = 0; i < hex.size(); i += 2) {
        const int hi = hex_value(hex[i]);
        const int lo = hex_value(hex[i + 1]);
        if (hi < 0 || lo < 0) throw EncodingError("invalid hex digit");
        out.push_back(static_cast<std::uint8_t>((hi << 4) | lo));
    }
    return out;
}

}  // namespace authsim
