#include "authsim/adversary.hpp"

#include <stdexcept>
#include <utility>

namespace authsim::adversary {

std::string_view to_string(AttackName name) {
    switch (name) {
        case AttackName::HsuParallelKuChen: return "hsu_parallel_kuchen";
        case AttackName::PwChangeAbuseKuChen: return "pw_change_abuse_kuchen";
        case AttackName::ParallelYoon: return "parallel_yoon";
    }
    return "unknown";
}

void Intruder::on_login_request(std::uint64_t message, const LoginRequest& req, Channel& ch) {
    ch.intercept(message);
    pending_.emplace(message, req);
}

void Intruder::on_auth_response(std::uint64_t message, const AuthResponse& resp, Channel& ch) {
    ch.intercept(message);
    if (!pending_) return;
    sessions_.push_back({pending_->second, resp, pending_->first, message});
    pending_.reset();
}

LoginRequest fabricate_parallel_request(const InterceptedSession& session) {
    return LoginRequest{session.request.id, session.response.c3, session.response.t_s};
}

AttackOutcome run_parallel_session_attack(const ServerState& victim, const SmartCard& honest_card,
                                          std::uint64_t card_index, std::string_view pw, Channel& ch,
                                          ParallelAttackOptions options) {
    const std::uint64_t delay = options.delay.value_or(ch.clock().tick());
    if (delay < ch.clock().tick()) throw std::invalid_argument("reflection delay shorter than one clock tick");

    AttackOutcome out;
    out.attack = honest_card.scheme() == Scheme::KuChen ? AttackName::HsuParallelKuChen : AttackName::ParallelYoon;
    out.delay = delay;

    Intruder intruder;
    const LoginExchange honest = login_exchange(victim, honest_card, card_index, pw, ch, &intruder);
    out.honest_accepted = honest.verdict.accepted;
    if (intruder.sessions().empty()) {
        out.notes.emplace_back("no server reply observed; nothing to reflect");
        return out;
    }
    const InterceptedSession& session = intruder.sessions().back();
    out.intercepted = session;
    out.notes.emplace_back("intercepted login request and mutual-authentication reply");

    LoginRequest forged = fabricate_parallel_request(session);
    Fields fields = login_request_fields(forged);
    fields.push_back({"reflects", session.response_message});
    const std::uint64_t forged_msg = ch.send(Actor::Intruder, kIntruderParty, "login_request", std::move(fields));
    out.notes.emplace_back("sent fabricated request (ID, C3, T_S)");

    ch.clock().advance_to(Timestamp{session.response.t_s.seconds + delay});
    ServerReply reply = serve_login(victim, forged, forged_msg, ch, ReplyNaming::Reflected);
    out.fabricated = std::move(forged);
    out.server_accepted = reply.verdict.accepted;

    if (reply.response_message) {
        ch.intercept(*reply.response_message);
        ch.drop(*reply.response_message);
        out.dropped_response = reply.verdict.response;
        out.notes.emplace_back("server accepted the fabricated request; dropped (C4, T_S*)");
    } else {
        out.notes.emplace_back(std::string("server rejected the fabricated request: ") +
                               std::string(authsim::to_string(reply.verdict.reason)));
    }
    return out;
}

AttackOutcome run_pw_change_abuse(SmartCard& card, std::uint64_t card_index, std::string_view pw_star,
                                  std::string_view pw_new_star, std::string_view true_pw, const ServerState& server,
                                  Channel& ch) {
    AttackOutcome out;
    out.attack = AttackName::PwChangeAbuseKuChen;

    ch.note(Actor::Intruder, kIntruderParty, EventKind::StateChange, "card_stolen", {{"card", card_index}});
    out.change_result = change_password(card, card_index, pw_star, pw_new_star, ch);
    out.notes.emplace_back(std::string("password change with attacker-chosen password: ") +
                           std::string(authsim::to_string(*out.change_result)));
    ch.note(Actor::Intruder, kIntruderParty, EventKind::StateChange, "card_returned", {{"card", card_index}});

    ch.clock().advance();
    const LoginExchange legit = login_exchange(server, card, card_index, true_pw, ch);
    out.server_accepted = legit.verdict.accepted;
    out.honest_accepted = legit.verdict.accepted;
    out.notes.emplace_back(out.server_accepted ? "legitimate user still authenticates"
                                               : "legitimate user locked out");
    return out;
}

}  // namespace authsim::adversary
