#include "authsim/channel.hpp"

#include "authsim/kuchen.hpp"
#include "authsim/yoon.hpp"

#include <utility>

namespace authsim {

std::string_view to_string(Actor actor) {
    switch (actor) {
        case Actor::User: return "User";
        case Actor::Card: return "Card";
        case Actor::Server: return "Server";
        case Actor::Intruder: return "Intruder";
    }
    return "Unknown";
}

std::string_view to_string(EventKind kind) {
    switch (kind) {
        case EventKind::Send: return "Send";
        case EventKind::Receive: return "Receive";
        case EventKind::Intercept: return "Intercept";
        case EventKind::Drop: return "Drop";
        case EventKind::Verdict: return "Verdict";
        case EventKind::StateChange: return "StateChange";
    }
    return "Unknown";
}

std::optional<Actor> parse_actor(std::string_view name) {
    for (const Actor a : {Actor::User, Actor::Card, Actor::Server, Actor::Intruder}) {
        if (to_string(a) == name) return a;
    }
    return std::nullopt;
}

std::optional<EventKind> parse_event_kind(std::string_view name) {
    for (const EventKind k : {EventKind::Send, EventKind::Receive, EventKind::Intercept, EventKind::Drop,
                              EventKind::Verdict, EventKind::StateChange}) {
        if (to_string(k) == name) return k;
    }
    return std::nullopt;
}

const FieldValue* find_field(const Fields& fields, std::string_view name) {
    for (const auto& f : fields) {
        if (f.name == name) return &f.value;
    }
    return nullptr;
}

Channel::Channel(SimClock& clock, TraceSink* sink) : clock_(clock), sink_(sink) {}

void Channel::emit(TraceEvent event) {
    if (sink_ != nullptr) sink_->record(std::move(event));
}

std::uint64_t Channel::send(Actor actor, std::string_view party, std::string_view label, Fields fields,
                            Fields secrets) {
    const std::uint64_t id = next_message_++;
    emit({clock_.now(), actor, std::string(party), EventKind::Send, std::string(label), id, std::move(fields),
          std::move(secrets)});
    return id;
}

void Channel::receive(std::uint64_t message, Actor actor, std::string_view party) {
    emit({clock_.now(), actor, std::string(party), EventKind::Receive, "receive", message, {}, {}});
}

void Channel::intercept(std::uint64_t message, std::string_view party) {
    emit({clock_.now(), Actor::Intruder, std::string(party), EventKind::Intercept, "intercept", message, {}, {}});
}

void Channel::drop(std::uint64_t message, std::string_view party) {
    emit({clock_.now(), Actor::Intruder, std::string(party), EventKind::Drop, "drop", message, {}, {}});
}

void Channel::note(Actor actor, std::string_view party, EventKind kind, std::string_view label, Fields fields,
                   Fields secrets) {
    emit({clock_.now(), actor, std::string(party), kind, std::string(label), std::nullopt, std::move(fields),
          std::move(secrets)});
}

Fields login_request_fields(const LoginRequest& req) {
    return {{"id", req.id.str()}, {"c2", req.c2.hex()}, {"t_u", req.t_u.seconds}};
}

std::string card_party(std::uint64_t card_index) { return "card-" + std::to_string(card_index); }

void announce_server(const ServerState& srv, Channel& ch) {
    ch.note(Actor::Server, kServerParty, EventKind::StateChange, "server_init",
            {{"delta_t", srv.freshness_window}, {"block_len", static_cast<std::uint64_t>(srv.block_len())}},
            {{"x", srv.x.hex()}});
}

SmartCard enroll(Scheme scheme, ServerState& srv, const Identity& id, std::string_view pw, std::uint64_t rng_seed,
                 std::uint64_t card_index, Channel& ch) {
    const std::string party = card_party(card_index);
    auto prepared = scheme == Scheme::KuChen ? kuchen::user_register_prepare(pw, rng_seed, srv.block_len())
                                             : yoon::user_register_prepare(pw, rng_seed, srv.block_len());
    ch.note(Actor::User, party, EventKind::StateChange, "register_prepare", {{"id", id.str()}, {"card", card_index}},
            {{"password", std::string(pw)},
             {"rng_seed", rng_seed},
             {"b", prepared.b.hex()},
             {"pw_s", prepared.pw_s.hex()}});

    std::optional<SmartCard> card;
    Fields server_secrets;
    if (scheme == Scheme::KuChen) {
        Block r = kuchen::server_register(srv, id, prepared.pw_s);
        server_secrets = {{"eid", to_hex(encode_eid(id, *srv.counter(id)))}, {"r", r.hex()}};
        card = kuchen::issue_card(id, std::move(r), prepared.b);
    } else {
        auto secrets = yoon::server_register(srv, id, prepared.pw_s);
        server_secrets = {{"eid", to_hex(encode_eid(id, *srv.counter(id)))},
                          {"r", secrets.r.hex()},
                          {"v", secrets.v.hex()}};
        card = yoon::issue_card(id, std::move(secrets), prepared.b);
    }
    ch.note(Actor::Server, kServerParty, EventKind::StateChange, "register", {{"id", id.str()}, {"n", *srv.counter(id)}},
            std::move(server_secrets));

    Fields card_secrets{{"r", card->r().hex()}};
    if (card->v()) card_secrets.push_back({"v", card->v()->hex()});
    card_secrets.push_back({"b", card->b().hex()});
    ch.note(Actor::Card, party, EventKind::StateChange, "card_issued",
            {{"id", id.str()}, {"scheme", std::string(to_string(scheme))}}, std::move(card_secrets));
    return std::move(*card);
}

ServerReply serve_login(const ServerState& srv, const LoginRequest& req, std::uint64_t message, Channel& ch,
                        ReplyNaming naming, ChannelTap* tap) {
    ch.receive(message, Actor::Server, kServerParty);
    VerifyResult verdict = core::verify(srv, req, ch.clock().now());
    ch.note(Actor::Server, kServerParty, EventKind::Verdict, "verify_login",
            {{"id", req.id.str()},
             {"accepted", verdict.accepted},
             {"reason", std::string(to_string(verdict.reason))}});

    ServerReply reply{std::move(verdict), std::nullopt};
    if (!reply.verdict.accepted) return reply;

    const AuthResponse& resp = *reply.verdict.response;
    Fields fields = naming == ReplyNaming::Primary
                        ? Fields{{"c3", resp.c3.hex()}, {"t_s", resp.t_s.seconds}}
                        : Fields{{"c4", resp.c3.hex()}, {"t_s_star", resp.t_s.seconds}};
    reply.response_message = ch.send(Actor::Server, kServerParty, "auth_response", std::move(fields));
    if (tap != nullptr) tap->on_auth_response(*reply.response_message, resp, ch);
    return reply;
}

LoginExchange login_exchange(const ServerState& srv, const SmartCard& card, std::uint64_t card_index,
                             std::string_view pw_entered, Channel& ch, ChannelTap* tap) {
    const std::string party = card_party(card_index);
    auto [req, ctx] = card.scheme() == Scheme::KuChen ? kuchen::card_login(card, pw_entered, ch.clock())
                                                      : yoon::card_login(card, pw_entered, ch.clock());
    const std::uint64_t request_msg =
        ch.send(Actor::Card, party, "login_request", login_request_fields(req),
                {{"pw_entered", std::string(pw_entered)}, {"c1", ctx.c1.hex()}});
    if (tap != nullptr) tap->on_login_request(request_msg, req, ch);

    ch.clock().advance();
    ServerReply reply = serve_login(srv, req, request_msg, ch, ReplyNaming::Primary, tap);

    LoginExchange out{std::move(req), std::move(ctx), std::move(reply.verdict), std::nullopt};
    if (!reply.response_message) return out;

    ch.clock().advance();
    ch.receive(*reply.response_message, Actor::Card, party);
    const AuthResponse& resp = *out.verdict.response;
    const bool ok = card.scheme() == Scheme::KuChen
                        ? kuchen::card_check_response(out.context, resp, ch.clock(), srv.freshness_window)
                        : yoon::card_check_response(out.context, resp, ch.clock(), srv.freshness_window);
    ch.note(Actor::Card, party, EventKind::Verdict, "check_response", {{"accepted", ok}});
    out.card_accepted = ok;
    return out;
}

PasswordChangeResult change_password(SmartCard& card, std::uint64_t card_index, std::string_view pw_entered,
                                     std::string_view pw_new, Channel& ch) {
    PasswordChangeResult result = PasswordChangeResult::Changed;
    if (card.scheme() == Scheme::KuChen) {
        kuchen::card_change_password(card, pw_entered, pw_new);
    } else {
        result = yoon::card_change_password(card, pw_entered, pw_new);
    }
    ch.note(Actor::Card, card_party(card_index), EventKind::StateChange, "password_change",
            {{"result", std::string(to_string(result))}},
            {{"pw_entered", std::string(pw_entered)}, {"pw_new", std::string(pw_new)}, {"r", card.r().hex()}});
    return result;
}

}  // namespace authsim
