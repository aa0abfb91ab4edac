#include "authsim/yoon.hpp"

namespace authsim::yoon {

namespace {

void require_yoon(const SmartCard& card) {
    if (card.scheme() != Scheme::Yoon) throw SchemeMismatchError("expected a Yoon card");
}

}  // namespace

RegistrationSecrets user_register_prepare(std::string_view pw, std::uint64_t rng_seed, std::size_t block_len) {
    return core::register_prepare(pw, rng_seed, block_len);
}

CardSecrets server_register(ServerState& srv, const Identity& id, const Block& pw_s) {
    Block v = core::register_identity(srv, id);
    Block r = xor_blocks(v, pw_s);
    return {std::move(v), std::move(r)};
}

SmartCard issue_card(Identity id, CardSecrets secrets, Block b) {
    return SmartCard(Scheme::Yoon, std::move(id), std::move(secrets.r), std::move(secrets.v), std::move(b));
}

std::pair<LoginRequest, SessionContext> card_login(const SmartCard& card, std::string_view pw_entered,
                                                   const SimClock& clock) {
    require_yoon(card);
    return core::login(card, pw_entered, clock.now());
}

VerifyResult server_verify(const ServerState& srv, const LoginRequest& req, const SimClock& clock) {
    return core::verify(srv, req, clock.now());
}

bool card_check_response(const SessionContext& ctx, const AuthResponse& resp, const SimClock& clock,
                         std::uint64_t window) {
    return core::check_response(ctx, resp, clock.now(), window);
}

PasswordChangeResult card_change_password(SmartCard& card, std::string_view pw_entered, std::string_view pw_new) {
    require_yoon(card);
    const Block v_star = core::compute_c1(card, pw_entered);
    if (v_star != *card.v()) return PasswordChangeResult::RejectedWrongPassword;
    card.replace_r(xor_blocks(v_star, mask_password(card.b(), pw_new)));
    return PasswordChangeResult::Changed;
}

}  // namespace authsim::yoon
