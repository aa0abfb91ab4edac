#ifndef AUTHSIM_CHANNEL_HPP
#define AUTHSIM_CHANNEL_HPP

#include "authsim/protocol.hpp"
#include "authsim/trace.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace authsim {

inline constexpr std::string_view kServerParty = "server";
inline constexpr std::string_view kIntruderParty = "intruder";

// Insecure channel between card and server. Every send, delivery, tap and
// drop is stamped with the current simulated time and forwarded to the sink.
class Channel {
public:
    explicit Channel(SimClock& clock, TraceSink* sink = nullptr);

    SimClock& clock() noexcept { return clock_; }

    std::uint64_t send(Actor actor, std::string_view party, std::string_view label, Fields fields,
                       Fields secrets = {});
    void receive(std::uint64_t message, Actor actor, std::string_view party);
    void intercept(std::uint64_t message, std::string_view party = kIntruderParty);
    void drop(std::uint64_t message, std::string_view party = kIntruderParty);
    void note(Actor actor, std::string_view party, EventKind kind, std::string_view label, Fields fields,
              Fields secrets = {});

private:
    void emit(TraceEvent event);

    SimClock& clock_;
    TraceSink* sink_;
    std::uint64_t next_message_ = 0;
};

// Observer of messages in transit; the intruder implements this.
class ChannelTap {
public:
    virtual ~ChannelTap() = default;
    virtual void on_login_request(std::uint64_t /*message*/, const LoginRequest& /*req*/, Channel& /*ch*/) {}
    virtual void on_auth_response(std::uint64_t /*message*/, const AuthResponse& /*resp*/, Channel& /*ch*/) {}
};

Fields login_request_fields(const LoginRequest& req);

// Which symbol names the server's reply carries in the trace: (c3, t_s) for an
// ordinary session, (c4, t_s_star) for the reply to a reflected request.
enum class ReplyNaming { Primary, Reflected };

struct ServerReply {
    VerifyResult verdict;
    std::optional<std::uint64_t> response_message;
};

void announce_server(const ServerState& srv, Channel& ch);

// Full registration: user prepares (b, PW_S), server derives R (and V), the
// card is issued. Registration travels out of band, so only state changes
// are traced.
SmartCard enroll(Scheme scheme, ServerState& srv, const Identity& id, std::string_view pw, std::uint64_t rng_seed,
                 std::uint64_t card_index, Channel& ch);

std::string card_party(std::uint64_t card_index);

// Server side of a login: receive, verify, reply on acceptance.
ServerReply serve_login(const ServerState& srv, const LoginRequest& req, std::uint64_t message, Channel& ch,
                        ReplyNaming naming = ReplyNaming::Primary, ChannelTap* tap = nullptr);

struct LoginExchange {
    LoginRequest request;
    SessionContext context;
    VerifyResult verdict;
    std::optional<bool> card_accepted;
};

// Card sends at t, server answers at t + tick, card checks at t + 2 tick.
LoginExchange login_exchange(const ServerState& srv, const SmartCard& card, std::uint64_t card_index,
                             std::string_view pw_entered, Channel& ch, ChannelTap* tap = nullptr);

PasswordChangeResult change_password(SmartCard& card, std::uint64_t card_index, std::string_view pw_entered,
                                     std::string_view pw_new, Channel& ch);

}  // namespace authsim

#endif  // AUTHSIM_CHANNEL_HPP
