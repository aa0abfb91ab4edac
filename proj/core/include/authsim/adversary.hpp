#ifndef AUTHSIM_ADVERSARY_HPP
#define AUTHSIM_ADVERSARY_HPP

#include "authsim/channel.hpp"
#include "authsim/protocol.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

// Channel intruder: records, fabricates, injects and drops messages. It has
// no access to x, b, PW, R or V beyond a physically stolen card object.
namespace authsim::adversary {

struct InterceptedSession {
    LoginRequest request;
    AuthResponse response;
    std::uint64_t request_message = 0;
    std::uint64_t response_message = 0;
};

enum class AttackName { HsuParallelKuChen, PwChangeAbuseKuChen, ParallelYoon };

std::string_view to_string(AttackName name);

struct AttackOutcome {
    AttackName attack = AttackName::HsuParallelKuChen;
    std::optional<LoginRequest> fabricated;
    // Copied from the victim server's verdict, never recomputed here.
    bool server_accepted = false;
    std::vector<std::string> notes;

    std::optional<InterceptedSession> intercepted;
    // The (C4, T_S*) reply to the fabricated request, intercepted and dropped.
    std::optional<AuthResponse> dropped_response;
    std::optional<std::uint64_t> delay;
    std::optional<PasswordChangeResult> change_result;
    // Verdict of the honest login that the intruder observed.
    std::optional<bool> honest_accepted;
};

// Passive tap: pairs each login request with the server reply that follows it.
class Intruder final : public ChannelTap {
public:
    void on_login_request(std::uint64_t message, const LoginRequest& req, Channel& ch) override;
    void on_auth_response(std::uint64_t message, const AuthResponse& resp, Channel& ch) override;

    const std::vector<InterceptedSession>& sessions() const noexcept { return sessions_; }

private:
    std::optional<std::pair<std::uint64_t, LoginRequest>> pending_;
    std::vector<InterceptedSession> sessions_;
};

// (ID, C3, T_S): the server's own mutual-authentication reply, reflected as a
// login request.
LoginRequest fabricate_parallel_request(const InterceptedSession& session);

struct ParallelAttackOptions {
    // Arrival time of the fabricated request minus T_S. Unset means one clock
    // tick. Must be at least one tick, since the intruder injects after the
    // honest exchange has finished.
    std::optional<std::uint64_t> delay;
};

// Observes one honest login, then reflects the reply at the same server.
AttackOutcome run_parallel_session_attack(const ServerState& victim, const SmartCard& honest_card,
                                          std::uint64_t card_index, std::string_view pw, Channel& ch,
                                          ParallelAttackOptions options = {});

// Stolen-card password change with attacker-chosen passwords, followed by the
// legitimate user's login attempt. server_accepted == false means lockout.
AttackOutcome run_pw_change_abuse(SmartCard& card, std::uint64_t card_index, std::string_view pw_star,
                                  std::string_view pw_new_star, std::string_view true_pw, const ServerState& server,
                                  Channel& ch);

}  // namespace authsim::adversary

#endif  // AUTHSIM_ADVERSARY_HPP
