#ifndef AUTHSIM_YOON_HPP
#define AUTHSIM_YOON_HPP

#include "authsim/protocol.hpp"

#include <string_view>
#include <utility>

// Yoon et al. scheme. Login and verification are the Ku-Chen formulas; the
// card additionally stores V = f(EID XOR x), which gates password changes.
namespace authsim::yoon {

struct CardSecrets {
    Block v;
    Block r;
};

RegistrationSecrets user_register_prepare(std::string_view pw, std::uint64_t rng_seed,
                                          std::size_t block_len = kDefaultBlockLen);

CardSecrets server_register(ServerState& srv, const Identity& id, const Block& pw_s);

SmartCard issue_card(Identity id, CardSecrets secrets, Block b);

std::pair<LoginRequest, SessionContext> card_login(const SmartCard& card, std::string_view pw_entered,
                                                   const SimClock& clock);

VerifyResult server_verify(const ServerState& srv, const LoginRequest& req, const SimClock& clock);

bool card_check_response(const SessionContext& ctx, const AuthResponse& resp, const SimClock& clock,
                         std::uint64_t window = kDefaultFreshnessWindow);

// V* = R XOR f(b XOR PW_entered). Only when V* == V is R replaced by
// V* XOR f(b XOR PW_new); otherwise the card is left untouched.
PasswordChangeResult card_change_password(SmartCard& card, std::string_view pw_entered, std::string_view pw_new);

}  // namespace authsim::yoon

#endif  // AUTHSIM_YOON_HPP
