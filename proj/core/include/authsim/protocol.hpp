#ifndef AUTHSIM_PROTOCOL_HPP
#define AUTHSIM_PROTOCOL_HPP

#include "authsim/primitives.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

namespace authsim {

enum class Scheme { KuChen, Yoon };

std::string_view to_string(Scheme scheme);
std::optional<Scheme> parse_scheme(std::string_view name);

class SchemeMismatchError : public std::logic_error {
public:
    explicit SchemeMismatchError(const std::string& msg) : std::logic_error(msg) {}
};

/// Default freshness window, in simulated seconds.
inline constexpr std::uint64_t kDefaultFreshnessWindow = 60;

// Authentication server: long-term secret x and the registration counter n
// per identity. There is no record of previously seen login requests.
struct ServerState {
    Block x;
    std::map<Identity, std::uint64_t> accounts;
    std::uint64_t freshness_window = kDefaultFreshnessWindow;

    ServerState(Block secret, std::uint64_t window = kDefaultFreshnessWindow);

    std::optional<std::uint64_t> counter(const Identity& id) const;
    std::size_t block_len() const noexcept { return x.size(); }
};

class SmartCard {
public:
    // Throws SchemeMismatchError when `v` presence does not match `scheme`
    // (Ku-Chen cards carry no V, Yoon cards always do).
    SmartCard(Scheme scheme, Identity id, Block r, std::optional<Block> v, Block b);

    Scheme scheme() const noexcept { return scheme_; }
    const Identity& id() const noexcept { return id_; }
    const Block& r() const noexcept { return r_; }
    const std::optional<Block>& v() const noexcept { return v_; }
    const Block& b() const noexcept { return b_; }

    void replace_r(Block r_new);

    friend bool operator==(const SmartCard&, const SmartCard&) = default;

private:
    Scheme scheme_;
    Identity id_;
    Block r_;
    std::optional<Block> v_;
    Block b_;
};

struct LoginRequest {
    Identity id;
    Block c2;
    Timestamp t_u;

    friend bool operator==(const LoginRequest&, const LoginRequest&) = default;
};

struct AuthResponse {
    Block c3;
    Timestamp t_s;

    friend bool operator==(const AuthResponse&, const AuthResponse&) = default;
};

using Message = std::variant<LoginRequest, AuthResponse>;

// What the card keeps between sending a login request and checking the reply.
struct SessionContext {
    Block c1;
    Timestamp t_u;
};

enum class RejectReason { None, UnknownIdentity, StaleTimestamp, BadAuthenticator };

std::string_view to_string(RejectReason reason);

struct VerifyResult {
    bool accepted = false;
    RejectReason reason = RejectReason::None;
    std::optional<AuthResponse> response;
};

enum class PasswordChangeResult { Changed, RejectedWrongPassword };

std::string_view to_string(PasswordChangeResult result);

// User-side output of registration step one.
struct RegistrationSecrets {
    Block b;
    Block pw_s;
};

// `t` is fresh at local time `now` iff 0 < now - t <= window.
bool is_fresh(Timestamp t, Timestamp now, std::uint64_t window) noexcept;

// Shared login/verification core. Both schemes run exactly these formulas;
// the scheme modules only add the scheme tag check.
namespace core {

RegistrationSecrets register_prepare(std::string_view pw, std::uint64_t rng_seed, std::size_t block_len);

// Increments (or creates at 0) the counter for `id`, returns f(EID XOR x).
Block register_identity(ServerState& srv, const Identity& id);

Block compute_c1(const SmartCard& card, std::string_view pw_entered);
Block authenticator(const Block& secret, Timestamp t);

std::pair<LoginRequest, SessionContext> login(const SmartCard& card, std::string_view pw_entered, Timestamp now);

VerifyResult verify(const ServerState& srv, const LoginRequest& req, Timestamp now);

bool check_response(const SessionContext& ctx, const AuthResponse& resp, Timestamp now, std::uint64_t window);

// R XOR f(b XOR PW_entered) XOR f(b XOR PW_new)
Block rekey(const SmartCard& card, std::string_view pw_entered, std::string_view pw_new);

}  // namespace core

}  // namespace authsim

#endif  // AUTHSIM_PROTOCOL_HPP
