#include "authsim/kuchen.hpp"

namespace authsim::kuchen {

namespace {

void require_kuchen(const SmartCard& card) {
    if (card.scheme() != Scheme::KuChen) throw SchemeMismatchError("expected a Ku-Chen card");
}

}  // namespace

RegistrationSecrets user_register_prepare(std::string_view pw, std::uint64_t rng_seed, std::size_t block_len) {
    return core::register_prepare(pw, rng_seed, block_len);
}

Block server_register(ServerState& srv, const Identity& id, const Block& pw_s) {
    return xor_blocks(core::register_identity(srv, id), pw_s);
}

SmartCard issue_card(Identity id, Block r, Block b) {
    return SmartCard(Scheme::KuChen, std::move(id), std::move(r), std::nullopt, std::move(b));
}

std::pair<LoginRequest, SessionContext> card_login(const SmartCard& card, std::string_view pw_entered,
                                                   const SimClock& clock) {
    require_kuchen(card);
    return core::login(card, pw_entered, clock.now());
}

VerifyResult server_verify(const ServerState& srv, const LoginRequest& req, const SimClock& clock) {
    return core::verify(srv, req, clock.now());
}

bool card_check_response(const SessionContext& ctx, const AuthResponse& resp, const SimClock& clock,
                         std::uint64_t window) {
    return core::check_response(ctx, resp, clock.now(), window);
}

void card_change_password(SmartCard& card, std::string_view pw_entered, std::string_view pw_new) {
    require_kuchen(card);
    card.replace_r(core::rekey(card, pw_entered, pw_new));
}

}  // namespace authsim::kuchen
