#include "authsim/verify.hpp"

#include "authsim/drbg.hpp"

#include <map>
#include <set>
#include <sstream>

namespace authsim {

namespace {

std::string render(const FieldValue* v) {
    if (v == nullptr) return "<missing>";
    if (const auto* b = std::get_if<bool>(v)) return *b ? "true" : "false";
    if (const auto* n = std::get_if<std::uint64_t>(v)) return std::to_string(*n);
    return std::get<std::string>(*v);
}

std::string render(bool b) { return b ? "true" : "false"; }

struct CardModel {
    Scheme scheme = Scheme::KuChen;
    std::string id;
    Block r;
    std::optional<Block> v;
    Block b;
    std::optional<SessionContext> session;
    std::optional<bool> pending_check;
};

struct PendingRegistration {
    std::string id;
    Block b;
    Block pw_s;
};

// Replays events against an independent model of every party, built only
// from the scenario header and the revealed secrets. Each recomputed value is
// compared with the recorded one; the replay then continues with its own
// value, so one corrupted field yields one mismatch.
class Replayer {
public:
    Replayer(const Transcript& t, VerifyReport& report) : t_(t), report_(report) {}

    void run() {
        for (const auto& s : t_.events) step(s);
        compare_list("verdicts.server_accepts", server_accepts_, t_.verdicts.server_accepts);
        compare_list("verdicts.card_accepts", card_accepts_, t_.verdicts.card_accepts);

        const ExpectedVerdicts expected = expected_verdicts(t_.scenario);
        if (!(expected == t_.expected)) {
            mismatch(last_step(), "verdicts.expected", "table for " + std::string(to_string(t_.scenario.script)),
                     "differs");
        }
        ExpectedVerdicts observed{server_accepts_, card_accepts_, std::nullopt, t_.verdicts.delay_sweep};
        if (t_.verdicts.attack_outcome) observed.attack_accepted = t_.verdicts.attack_outcome->server_accepted;
        check(last_step(), "verdicts.matches_expected", render(observed == expected), render(t_.matches_expected));
    }

private:
    std::uint64_t last_step() const { return t_.events.empty() ? 0 : t_.events.back().step; }

    void mismatch(std::uint64_t step, std::string field, std::string expected, std::string recorded) {
        report_.mismatches.push_back({step, std::move(field), std::move(expected), std::move(recorded)});
    }

    void check(std::uint64_t step, const std::string& field, const std::string& expected, const std::string& recorded) {
        if (expected != recorded) mismatch(step, field, expected, recorded);
    }

    void check_field(const TranscriptStep& s, const char* name, const std::string& expected) {
        check(s.step, "fields." + std::string(name), expected, render(find_field(s.event.fields, name)));
    }

    void check_secret(const TranscriptStep& s, const char* name, const std::string& expected) {
        check(s.step, "secrets." + std::string(name), expected, render(find_field(s.event.secrets, name)));
    }

    // Secret inputs chosen by a party (passwords) are taken as given.
    std::string input_secret(const TranscriptStep& s, const char* name) {
        const FieldValue* v = find_field(s.event.secrets, name);
        if (v == nullptr || !std::holds_alternative<std::string>(*v) || std::get<std::string>(*v).empty()) {
            mismatch(s.step, "secrets." + std::string(name), "<password>", render(v));
            return "?";
        }
        return std::get<std::string>(*v);
    }

    std::string string_field(const TranscriptStep& s, const char* name) {
        const FieldValue* v = find_field(s.event.fields, name);
        if (v == nullptr || !std::holds_alternative<std::string>(*v)) {
            mismatch(s.step, "fields." + std::string(name), "<string>", render(v));
            return {};
        }
        return std::get<std::string>(*v);
    }

    std::optional<std::uint64_t> u64_field(const TranscriptStep& s, const char* name) {
        const FieldValue* v = find_field(s.event.fields, name);
        if (v == nullptr || !std::holds_alternative<std::uint64_t>(*v)) {
            mismatch(s.step, "fields." + std::string(name), "<unsigned>", render(v));
            return std::nullopt;
        }
        return std::get<std::uint64_t>(*v);
    }

    void compare_list(const char* name, const std::vector<bool>& expected, const std::vector<bool>& recorded) {
        auto join = [](const std::vector<bool>& xs) {
            std::string out = "[";
            for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? "," : "") + render(xs[i]);
            return out + "]";
        };
        check(last_step(), name, join(expected), join(recorded));
    }

    CardModel* card(const TranscriptStep& s) {
        const auto it = cards_.find(s.event.party);
        if (it == cards_.end()) {
            mismatch(s.step, "party", "an issued card", s.event.party);
            return nullptr;
        }
        return &it->second;
    }

    void step(const TranscriptStep& s) {
        const TraceEvent& e = s.event;
        switch (e.kind) {
            case EventKind::StateChange: return state_change(s);
            case EventKind::Send: return send(s);
            case EventKind::Receive: return receive(s);
            case EventKind::Intercept: intercepted_.insert(*e.message); return;
            case EventKind::Drop: return;
            case EventKind::Verdict: return verdict(s);
        }
    }

    void state_change(const TranscriptStep& s) {
        const TraceEvent& e = s.event;
        const std::size_t len = t_.scenario.block_len;
        if (e.label == "server_init") {
            server_.emplace(derive_server_secret(t_.scenario.seed, len), t_.scenario.delta_t);
            check_field(s, "delta_t", std::to_string(t_.scenario.delta_t));
            check_field(s, "block_len", std::to_string(len));
            check_secret(s, "x", server_->x.hex());
        } else if (e.label == "register_prepare") {
            const auto index = u64_field(s, "card");
            if (!index) return;
            const std::uint64_t rng_seed = derive_card_seed(t_.scenario.seed, *index);
            check_secret(s, "rng_seed", std::to_string(rng_seed));
            const auto prepared = core::register_prepare(input_secret(s, "password"), rng_seed, len);
            check_secret(s, "b", prepared.b.hex());
            check_secret(s, "pw_s", prepared.pw_s.hex());
            pending_ = PendingRegistration{string_field(s, "id"), prepared.b, prepared.pw_s};
        } else if (e.label == "register") {
            if (!server_ || !pending_) {
                mismatch(s.step, "label", "server_init and register_prepare first", e.label);
                return;
            }
            const Identity id(pending_->id);
            check_field(s, "id", id.str());
            const Block secret = core::register_identity(*server_, id);
            const std::uint64_t n = *server_->counter(id);
            check_field(s, "n", std::to_string(n));
            check_secret(s, "eid", to_hex(encode_eid(id, n)));
            issued_r_ = xor_blocks(secret, pending_->pw_s);
            check_secret(s, "r", issued_r_.hex());
            issued_v_.reset();
            if (t_.scenario.scheme == Scheme::Yoon) {
                issued_v_ = secret;
                check_secret(s, "v", secret.hex());
            }
        } else if (e.label == "card_issued") {
            if (!pending_) {
                mismatch(s.step, "label", "register_prepare first", e.label);
                return;
            }
            check_field(s, "id", pending_->id);
            check_field(s, "scheme", std::string(to_string(t_.scenario.scheme)));
            check_secret(s, "r", issued_r_.hex());
            if (issued_v_) check_secret(s, "v", issued_v_->hex());
            check_secret(s, "b", pending_->b.hex());
            cards_[e.party] = CardModel{t_.scenario.scheme, pending_->id, issued_r_, issued_v_, pending_->b, {}, {}};
        } else if (e.label == "password_change") {
            CardModel* c = card(s);
            if (c == nullptr) return;
            const std::string entered = input_secret(s, "pw_entered");
            const std::string fresh = input_secret(s, "pw_new");
            const Block v_star = xor_blocks(c->r, mask_password(c->b, entered));
            bool changed = true;
            if (c->scheme == Scheme::Yoon) changed = v_star == *c->v;
            if (changed) c->r = xor_blocks(v_star, mask_password(c->b, fresh));
            check_field(s, "result",
                        std::string(to_string(changed ? PasswordChangeResult::Changed
                                                      : PasswordChangeResult::RejectedWrongPassword)));
            check_secret(s, "r", c->r.hex());
        }
    }

    void send(const TranscriptStep& s) {
        const TraceEvent& e = s.event;
        const std::uint64_t msg = *e.message;
        if (e.label == "login_request" && e.actor == Actor::Card) {
            CardModel* c = card(s);
            if (c == nullptr) return;
            const Block c1 = xor_blocks(c->r, mask_password(c->b, input_secret(s, "pw_entered")));
            const Timestamp t_u = e.time;
            const Block c2 = core::authenticator(c1, t_u);
            check_secret(s, "c1", c1.hex());
            check_field(s, "id", c->id);
            check_field(s, "c2", c2.hex());
            check_field(s, "t_u", std::to_string(t_u.seconds));
            requests_.insert_or_assign(msg, LoginRequest{Identity(c->id), c2, t_u});
            c->session = SessionContext{c1, t_u};
        } else if (e.label == "login_request" && e.actor == Actor::Intruder) {
            const auto reflects = u64_field(s, "reflects");
            if (!reflects) return;
            const auto resp = responses_.find(*reflects);
            if (resp == responses_.end() || !intercepted_.contains(*reflects)) {
                mismatch(s.step, "fields.reflects", "an intercepted auth_response", std::to_string(*reflects));
                return;
            }
            const LoginRequest& original = requests_.at(answers_.at(*reflects));
            const LoginRequest forged{original.id, resp->second.c3, resp->second.t_s};
            check_field(s, "id", forged.id.str());
            check_field(s, "c2", forged.c2.hex());
            check_field(s, "t_u", std::to_string(forged.t_u.seconds));
            requests_.insert_or_assign(msg, forged);
        } else if (e.label == "auth_response") {
            if (!pending_response_) {
                mismatch(s.step, "label", "no reply after a rejected login", e.label);
                return;
            }
            const auto& [answered, resp] = *pending_response_;
            const bool reflected = find_field(e.fields, "c4") != nullptr;
            check_field(s, reflected ? "c4" : "c3", resp.c3.hex());
            check_field(s, reflected ? "t_s_star" : "t_s", std::to_string(resp.t_s.seconds));
            responses_.insert_or_assign(msg, resp);
            answers_.insert_or_assign(msg, answered);
            pending_response_.reset();
        }
    }

    void receive(const TranscriptStep& s) {
        const TraceEvent& e = s.event;
        const std::uint64_t msg = *e.message;
        if (e.actor == Actor::Server) {
            const auto it = requests_.find(msg);
            if (it == requests_.end() || !server_) {
                mismatch(s.step, "message", "a login request", std::to_string(msg));
                return;
            }
            pending_verdict_ = std::make_pair(msg, core::verify(*server_, it->second, e.time));
        } else if (e.actor == Actor::Card) {
            CardModel* c = card(s);
            const auto it = responses_.find(msg);
            if (c == nullptr || it == responses_.end() || !c->session) {
                mismatch(s.step, "message", "a reply to this card's session", std::to_string(msg));
                return;
            }
            c->pending_check = core::check_response(*c->session, it->second, e.time, t_.scenario.delta_t);
        }
    }

    void verdict(const TranscriptStep& s) {
        const TraceEvent& e = s.event;
        if (e.label == "verify_login") {
            if (!pending_verdict_) {
                mismatch(s.step, "label", "verdict after a server receive", e.label);
                return;
            }
            const auto [msg, result] = *pending_verdict_;
            pending_verdict_.reset();
            check_field(s, "id", requests_.at(msg).id.str());
            check_field(s, "accepted", render(result.accepted));
            check_field(s, "reason", std::string(to_string(result.reason)));
            server_accepts_.push_back(result.accepted);
            if (result.accepted) pending_response_ = std::make_pair(msg, *result.response);
        } else if (e.label == "check_response") {
            CardModel* c = card(s);
            if (c == nullptr) return;
            if (!c->pending_check) {
                mismatch(s.step, "label", "card verdict after a received reply", e.label);
                return;
            }
            check_field(s, "accepted", render(*c->pending_check));
            card_accepts_.push_back(*c->pending_check);
            c->pending_check.reset();
            c->session.reset();
        }
    }

    const Transcript& t_;
    VerifyReport& report_;

    std::optional<ServerState> server_;
    std::optional<PendingRegistration> pending_;
    Block issued_r_;
    std::optional<Block> issued_v_;
    std::map<std::string, CardModel> cards_;

    std::map<std::uint64_t, LoginRequest> requests_;
    std::map<std::uint64_t, AuthResponse> responses_;
    std::map<std::uint64_t, std::uint64_t> answers_;  // response message -> request message
    std::set<std::uint64_t> intercepted_;
    std::optional<std::pair<std::uint64_t, VerifyResult>> pending_verdict_;
    std::optional<std::pair<std::uint64_t, AuthResponse>> pending_response_;

    std::vector<bool> server_accepts_;
    std::vector<bool> card_accepts_;
};

void check_wellformed(const Transcript& t, VerifyReport& report) {
    auto& errors = report.wellformedness;
    if (!t.has_secrets) errors.emplace_back("transcript has no secrets appendix; rerun with --reveal-secrets");
    try {
        validate(t.scenario);
    } catch (const ConfigError& e) {
        errors.emplace_back(std::string("invalid scenario: ") + e.what());
    }

    std::map<std::uint64_t, std::uint64_t> sends;  // message -> step
    std::set<std::uint64_t> settled;
    for (std::size_t i = 0; i < t.events.size(); ++i) {
        const auto& s = t.events[i];
        const std::string where = "step " + std::to_string(s.step);
        if (i > 0) {
            const auto& prev = t.events[i - 1];
            if (s.step <= prev.step) errors.push_back(where + ": step index not strictly increasing");
            if (s.event.time < prev.event.time) errors.push_back(where + ": simulated time decreases");
        }
        const bool needs_message = s.event.kind == EventKind::Send || s.event.kind == EventKind::Receive ||
                                   s.event.kind == EventKind::Intercept || s.event.kind == EventKind::Drop;
        if (needs_message && !s.event.message) {
            errors.push_back(where + ": " + std::string(to_string(s.event.kind)) + " without message id");
            continue;
        }
        if (!needs_message) continue;
        const std::uint64_t msg = *s.event.message;
        if (s.event.kind == EventKind::Send) {
            if (!sends.emplace(msg, s.step).second) errors.push_back(where + ": message " + std::to_string(msg) + " sent twice");
            continue;
        }
        if (!sends.contains(msg)) {
            errors.push_back(where + ": references unsent message " + std::to_string(msg));
            continue;
        }
        if (s.event.kind == EventKind::Receive || s.event.kind == EventKind::Drop) {
            if (!settled.insert(msg).second) errors.push_back(where + ": message " + std::to_string(msg) + " settled twice");
        }
    }
    for (const auto& [msg, step] : sends) {
        if (!settled.contains(msg)) {
            errors.push_back("step " + std::to_string(step) + ": Send of message " + std::to_string(msg) +
                             " has no matching Receive or Drop");
        }
    }
}

}  // namespace

VerifyReport verify_transcript(const Transcript& t) {
    VerifyReport report;
    check_wellformed(t, report);
    if (!report.wellformedness.empty()) return report;
    try {
        Replayer(t, report).run();
    } catch (const std::exception& e) {
        report.wellformedness.push_back(std::string("replay aborted: ") + e.what());
    }
    return report;
}

std::string format_report(const VerifyReport& report) {
    std::ostringstream out;
    for (const auto& w : report.wellformedness) out << "malformed: " << w << '\n';
    for (const auto& m : report.mismatches) {
        out << "mismatch at step " << m.step << ": " << m.field << " expected " << m.expected << ", recorded "
            << m.recorded << '\n';
    }
    if (report.ok()) out << "ok: every recomputed value and verdict matches\n";
    return out.str();
}

}  // namespace authsim
