#ifndef AUTHSIM_KUCHEN_HPP
#define AUTHSIM_KUCHEN_HPP

#include "authsim/protocol.hpp"

#include <string_view>
#include <utility>

// Ku-Chen scheme: card holds R and b; the password change is not gated.
namespace authsim::kuchen {

// Draws b from the seeded generator and masks the password: PW_S = f(b XOR PW).
RegistrationSecrets user_register_prepare(std::string_view pw, std::uint64_t rng_seed,
                                          std::size_t block_len = kDefaultBlockLen);

// n := 0 on first registration, n + 1 afterwards. Returns R = f(EID XOR x) XOR PW_S.
Block server_register(ServerState& srv, const Identity& id, const Block& pw_s);

SmartCard issue_card(Identity id, Block r, Block b);

std::pair<LoginRequest, SessionContext> card_login(const SmartCard& card, std::string_view pw_entered,
                                                   const SimClock& clock);

VerifyResult server_verify(const ServerState& srv, const LoginRequest& req, const SimClock& clock);

bool card_check_response(const SessionContext& ctx, const AuthResponse& resp, const SimClock& clock,
                         std::uint64_t window = kDefaultFreshnessWindow);

// Replaces R with R XOR f(b XOR PW_entered) XOR f(b XOR PW_new). There is no
// check on PW_entered: a wrong old password silently corrupts R.
void card_change_password(SmartCard& card, std::string_view pw_entered, std::string_view pw_new);

}  // namespace authsim::kuchen

#endif  // AUTHSIM_KUCHEN_HPP
