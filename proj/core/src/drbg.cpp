#include "authsim/drbg.hpp"

#include <string_view>
#include <utility>

namespace authsim {

namespace {

constexpr std::string_view kDomain = "authsim-drbg";

void append_be64(Bytes& out, std::uint64_t v) {
    for (int shift = 56; shift >= 0; shift -= 8) out.push_back(static_cast<std::uint8_t>(v >> shift));
}

}  // namespace

Drbg::Drbg(std::uint64_t seed, std::string label) : seed_(seed), label_(std::move(label)) {}

Block Drbg::next_block(std::size_t len) {
    Bytes input(kDomain.begin(), kDomain.end());
    input.push_back(0x00);
    input.insert(input.end(), label_.begin(), label_.end());
    input.push_back(0x00);
    append_be64(input, seed_);
    append_be64(input, counter_++);
    return hash_f(input, len);
}

std::uint64_t Drbg::next_u64() {
    const Block block = next_block(8);
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < 8; ++i) v = (v << 8) | block[i];
    return v;
}

Block derive_server_secret(std::uint64_t seed, std::size_t len) { return Drbg(seed, "x").next_block(len); }

std::uint64_t derive_card_seed(std::uint64_t scenario_seed, std::uint64_t index) {
    Drbg drbg(scenario_seed, "card-seed");
    std::uint64_t value = 0;
    for (std::uint64_t i = 0; i <= index; ++i) value = drbg.next_u64();
    return value;
}

}  // namespace authsim
