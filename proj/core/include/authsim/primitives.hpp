#ifndef AUTHSIM_PRIMITIVES_HPP
#define AUTHSIM_PRIMITIVES_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace authsim {

using Bytes = std::vector<std::uint8_t>;
using ByteView = std::span<const std::uint8_t>;

/// Width of every Block when nothing else is configured (SHA-256 digest size).
inline constexpr std::size_t kDefaultBlockLen = 32;
/// Smallest width that still holds an 8-byte timestamp.
inline constexpr std::size_t kMinBlockLen = 8;
inline constexpr std::size_t kMaxBlockLen = 1024;

class BlockLengthError : public std::invalid_argument {
public:
    explicit BlockLengthError(const std::string& msg) : std::invalid_argument(msg) {}
};

class EncodingError : public std::invalid_argument {
public:
    explicit EncodingError(const std::string& msg) : std::invalid_argument(msg) {}
};

// Fixed-width byte string. Every operand of f and XOR in both schemes is a
// Block; the width is chosen once per scenario.
class Block {
public:
    Block() = default;
    explicit Block(Bytes bytes);

    static Block zero(std::size_t len);
    static Block from_hex(std::string_view hex);

    std::size_t size() const noexcept { return bytes_.size(); }
    bool empty() const noexcept { return bytes_.empty(); }
    ByteView view() const noexcept { return bytes_; }
    const Bytes& bytes() const noexcept { return bytes_; }
    std::uint8_t operator[](std::size_t i) const { return bytes_.at(i); }

    std::string hex() const;

    // Returns a copy with a single bit inverted; used to model tampering.
    Block with_flipped_bit(std::size_t bit) const;

    friend bool operator==(const Block&, const Block&) = default;

private:
    Bytes bytes_;
};

struct Timestamp {
    std::uint64_t seconds = 0;

    friend auto operator<=>(const Timestamp&, const Timestamp&) = default;
};

class SimClock {
public:
    explicit SimClock(std::uint64_t tick = 1, Timestamp start = {});

    Timestamp now() const noexcept { return now_; }
    std::uint64_t tick() const noexcept { return tick_; }

    // Advances by one tick and returns the new time.
    Timestamp advance() noexcept;
    Timestamp advance_by(std::uint64_t seconds) noexcept;
    // Moves forward to `t`; a target in the past leaves the clock unchanged.
    Timestamp advance_to(Timestamp t) noexcept;

private:
    Timestamp now_;
    std::uint64_t tick_;
};

class Identity {
public:
    static constexpr std::size_t kMaxLen = 64;

    explicit Identity(std::string id);

    const std::string& str() const noexcept { return id_; }
    ByteView view() const noexcept {
        return {reinterpret_cast<const std::uint8_t*>(id_.data()), id_.size()};
    }

    friend auto operator<=>(const Identity&, const Identity&) = default;

private:
    std::string id_;
};

// The one-way function f: SHA-256 truncated to `len` bytes. Widths above 32
// append SHA-256(input || be32(i)) for i = 1, 2, ... until `len` bytes exist.
Block hash_f(ByteView input, std::size_t len = kDefaultBlockLen);
Block hash_f(std::string_view input, std::size_t len = kDefaultBlockLen);
Block hash_f(const Block& input);

Block xor_blocks(const Block& a, const Block& b);

Block encode_password(std::string_view pw, std::size_t len = kDefaultBlockLen);

// id || 0x00 || be64(n)
Bytes encode_eid(const Identity& id, std::uint64_t n);

// f(f(ID || n) XOR x); the inner hash brings the EID to the width of x.
Block eid_block(const Identity& id, std::uint64_t n, const Block& x);

// be64(t.seconds), left-padded with zeros to `len` bytes.
Block encode_timestamp(Timestamp t, std::size_t len = kDefaultBlockLen);

// f(b XOR encode_password(pw)); the masked password both schemes build on.
Block mask_password(const Block& b, std::string_view pw);

void validate_block_len(std::size_t len);

std::string to_hex(ByteView bytes);
Bytes from_hex(std::string_view hex);

}  // namespace authsim

#endif  // AUTHSIM_PRIMITIVES_HPP
