#ifndef AUTHSIM_DRBG_HPP
#define AUTHSIM_DRBG_HPP

#include "authsim/primitives.hpp"

#include <cstdint>
#include <string>

namespace authsim {

// Counter-mode generator over f. Output k of stream (seed, label) is
//   f("authsim-drbg" || 0x00 || label || 0x00 || be64(seed) || be64(k))
// so any SHA-256 implementation can reproduce it.
class Drbg {
public:
    Drbg(std::uint64_t seed, std::string label);

    Block next_block(std::size_t len);
    std::uint64_t next_u64();

    std::uint64_t counter() const noexcept { return counter_; }

private:
    std::uint64_t seed_;
    std::string label_;
    std::uint64_t counter_ = 0;
};

// AS long-term secret x for a scenario seed.
Block derive_server_secret(std::uint64_t seed, std::size_t len);

// Generator seed for the card issued at position `index` within a scenario.
std::uint64_t derive_card_seed(std::uint64_t scenario_seed, std::uint64_t index);

}  // namespace authsim

#endif  // AUTHSIM_DRBG_HPP
