#include "authsim/protocol.hpp"

#include "authsim/drbg.hpp"

#include <utility>

namespace authsim {

std::string_view to_string(Scheme scheme) {
    switch (scheme) {
        case Scheme::KuChen: return "kuchen";
        case Scheme::Yoon: return "yoon";
    }
    return "unknown";
}

std::optional<Scheme> parse_scheme(std::string_view name) {
    if (name == "kuchen") return Scheme::KuChen;
    if (name == "yoon") return Scheme::Yoon;
    return std::nullopt;
}

std::string_view to_string(RejectReason reason) {
    switch (reason) {
        case RejectReason::None: return "none";
        case RejectReason::UnknownIdentity: return "unknown_identity";
        case RejectReason::StaleTimestamp: return "stale_timestamp";
        case RejectReason::BadAuthenticator: return "bad_authenticator";
    }
    return "unknown";
}

std::string_view to_string(PasswordChangeResult result) {
    return result == PasswordChangeResult::Changed ? "changed" : "rejected_wrong_password";
}

ServerState::ServerState(Block secret, std::uint64_t window) : x(std::move(secret)), freshness_window(window) {
    validate_block_len(x.size());
}

std::optional<std::uint64_t> ServerState::counter(const Identity& id) const {
    const auto it = accounts.find(id);
    if (it == accounts.end()) return std::nullopt;
    return it->second;
}

SmartCard::SmartCard(Scheme scheme, Identity id, Block r, std::optional<Block> v, Block b)
    : scheme_(scheme), id_(std::move(id)), r_(std::move(r)), v_(std::move(v)), b_(std::move(b)) {
    if (scheme_ == Scheme::KuChen && v_.has_value()) throw SchemeMismatchError("Ku-Chen card must not hold V");
    if (scheme_ == Scheme::Yoon && !v_.has_value()) throw SchemeMismatchError("Yoon card requires V");
    if (r_.size() != b_.size() || (v_ && v_->size() != r_.size())) {
        throw BlockLengthError("card secrets have inconsistent widths");
    }
}

void SmartCard::replace_r(Block r_new) {
    if (r_new.size() != r_.size()) throw BlockLengthError("replacement R has wrong width");
    r_ = std::move(r_new);
}

bool is_fresh(Timestamp t, Timestamp now, std::uint64_t window) noexcept {
    return now.seconds > t.seconds && now.seconds - t.seconds <= window;
}

namespace core {

RegistrationSecrets register_prepare(std::string_view pw, std::uint64_t rng_seed, std::size_t block_len) {
    validate_block_len(block_len);
    if (pw.empty()) throw EncodingError("password must not be empty");
    Block b = Drbg(rng_seed, "b").next_block(block_len);
    Block pw_s = mask_password(b, pw);
    return {std::move(b), std::move(pw_s)};
}

Block register_identity(ServerState& srv, const Identity& id) {
    auto [it, inserted] = srv.accounts.try_emplace(id, 0);
    if (!inserted) ++it->second;
    return eid_block(id, it->second, srv.x);
}

Block compute_c1(const SmartCard& card, std::string_view pw_entered) {
    return xor_blocks(card.r(), mask_password(card.b(), pw_entered));
}

Block authenticator(const Block& secret, Timestamp t) {
    return hash_f(xor_blocks(secret, encode_timestamp(t, secret.size())));
}

std::pair<LoginRequest, SessionContext> login(const SmartCard& card, std::string_view pw_entered, Timestamp now) {
    Block c1 = compute_c1(card, pw_entered);
    LoginRequest req{card.id(), authenticator(c1, now), now};
    return {std::move(req), SessionContext{std::move(c1), now}};
}

VerifyResult verify(const ServerState& srv, const LoginRequest& req, Timestamp now) {
    const auto n = srv.counter(req.id);
    if (!n) return {false, RejectReason::UnknownIdentity, std::nullopt};
    if (!is_fresh(req.t_u, now, srv.freshness_window)) return {false, RejectReason::StaleTimestamp, std::nullopt};
    if (req.c2.size() != srv.block_len()) return {false, RejectReason::BadAuthenticator, std::nullopt};

    const Block secret = eid_block(req.id, *n, srv.x);
    if (req.c2 != authenticator(secret, req.t_u)) return {false, RejectReason::BadAuthenticator, std::nullopt};
    return {true, RejectReason::None, AuthResponse{authenticator(secret, now), now}};
}

bool check_response(const SessionContext& ctx, const AuthResponse& resp, Timestamp now, std::uint64_t window) {
    if (resp.t_s == ctx.t_u) return false;
    if (!is_fresh(resp.t_s, now, window)) return false;
    if (resp.c3.size() != ctx.c1.size()) return false;
    return resp.c3 == authenticator(ctx.c1, resp.t_s);
}

Block rekey(const SmartCard& card, std::string_view pw_entered, std::string_view pw_new) {
    return xor_blocks(compute_c1(card, pw_entered), mask_password(card.b(), pw_new));
}

}  // namespace core

}  // namespace authsim
