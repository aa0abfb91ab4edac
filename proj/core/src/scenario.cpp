#include "authsim/harness.hpp"

#include "authsim/adversary.hpp"
#include "authsim/channel.hpp"
#include "authsim/drbg.hpp"

#include <algorithm>
#include <array>
#include <set>
#include <utility>

namespace authsim {

namespace {

constexpr std::array kScripts{Script::HonestLogin,    Script::WrongPassword, Script::PasswordChangeHonest,
                              Script::HsuParallel,    Script::PwChangeAbuse, Script::ParallelYoon,
                              Script::ReRegistration, Script::DelaySweep};

std::string hex_token(Drbg& drbg, std::size_t bytes) { return drbg.next_block(bytes).hex(); }

class Recorder final : public TraceSink {
public:
    void record(TraceEvent event) override {
        if (event.kind == EventKind::Verdict && event.actor == Actor::Server && event.label == "verify_login") {
            server_accepts.push_back(std::get<bool>(*find_field(event.fields, "accepted")));
        }
        if (event.kind == EventKind::Verdict && event.actor == Actor::Card && event.label == "check_response") {
            card_accepts.push_back(std::get<bool>(*find_field(event.fields, "accepted")));
        }
        steps.push_back({steps.size(), std::move(event)});
    }

    std::vector<TranscriptStep> steps;
    std::vector<bool> server_accepts;
    std::vector<bool> card_accepts;
};

}  // namespace

std::string_view to_string(Script script) {
    switch (script) {
        case Script::HonestLogin: return "honest-login";
        case Script::WrongPassword: return "wrong-password";
        case Script::PasswordChangeHonest: return "password-change-honest";
        case Script::HsuParallel: return "hsu-parallel";
        case Script::PwChangeAbuse: return "pw-change-abuse";
        case Script::ParallelYoon: return "parallel-yoon";
        case Script::ReRegistration: return "re-registration";
        case Script::DelaySweep: return "delay-sweep";
    }
    return "unknown";
}

std::optional<Script> parse_script(std::string_view name) {
    for (const Script s : kScripts) {
        if (to_string(s) == name) return s;
    }
    return std::nullopt;
}

std::span<const Script> all_scripts() { return kScripts; }

std::string_view describe(Script script) {
    switch (script) {
        case Script::HonestLogin: return "register, log in with the right password, mutual authentication";
        case Script::WrongPassword: return "register, log in with a wrong password";
        case Script::PasswordChangeHonest: return "change password correctly; new password accepted, old rejected";
        case Script::HsuParallel: return "reflect (C3, T_S) back at the server as a login request";
        case Script::PwChangeAbuse: return "stolen-card password change with a guessed old password";
        case Script::ParallelYoon: return "same reflection playbook as hsu-parallel";
        case Script::ReRegistration: return "re-register the identity; the old card stops working";
        case Script::DelaySweep: return "reflection at increasing delays around the freshness window";
    }
    return "";
}

void validate(const Scenario& s) {
    if (s.block_len < kMinBlockLen || s.block_len > kMaxBlockLen) {
        throw ConfigError("block_len must be in [" + std::to_string(kMinBlockLen) + ", " +
                          std::to_string(kMaxBlockLen) + "], got " + std::to_string(s.block_len));
    }
    if (s.tick == 0) throw ConfigError("tick must be positive");
    if (s.delta_t == 0) throw ConfigError("delta_t must be positive");
}

Credentials derive_credentials(std::uint64_t seed) {
    Drbg drbg(seed, "credentials");
    Identity id("user-" + hex_token(drbg, 4));
    std::string pw = "pw-" + hex_token(drbg, 6);
    return Credentials{std::move(id),
                       std::move(pw),
                       "wrong-" + hex_token(drbg, 6),
                       "new-" + hex_token(drbg, 6),
                       "guess-" + hex_token(drbg, 6),
                       "evil-" + hex_token(drbg, 6)};
}

std::vector<std::uint64_t> sweep_delays(std::uint64_t delta_t, std::uint64_t tick) {
    std::set<std::uint64_t> delays;
    const std::uint64_t upper = std::min(delta_t + 2, tick + 127);
    for (std::uint64_t d = tick; d <= upper; ++d) delays.insert(d);
    for (const std::uint64_t d : {delta_t - 1, delta_t, delta_t + 1, delta_t + 2, 2 * delta_t + 1}) {
        if (d >= tick) delays.insert(d);
    }
    return {delays.begin(), delays.end()};
}

ExpectedVerdicts expected_verdicts(const Scenario& s) {
    ExpectedVerdicts e;
    switch (s.script) {
        case Script::HonestLogin:
            e.server_accepts = {true};
            e.card_accepts = {true};
            break;
        case Script::WrongPassword:
            e.server_accepts = {false};
            break;
        case Script::PasswordChangeHonest:
            e.server_accepts = {true, false};
            e.card_accepts = {true};
            break;
        case Script::HsuParallel:
        case Script::ParallelYoon:
            e.server_accepts = {true, true};
            e.card_accepts = {true};
            e.attack_accepted = true;
            break;
        case Script::PwChangeAbuse:
            if (s.scheme == Scheme::KuChen) {
                e.server_accepts = {false};
                e.attack_accepted = false;
            } else {
                e.server_accepts = {true};
                e.card_accepts = {true};
                e.attack_accepted = true;
            }
            break;
        case Script::ReRegistration:
            e.server_accepts = {false, true};
            e.card_accepts = {true};
            break;
        case Script::DelaySweep:
            for (const std::uint64_t d : sweep_delays(s.delta_t, s.tick)) {
                const bool inside = d <= s.delta_t;
                e.server_accepts.push_back(true);
                e.server_accepts.push_back(inside);
                e.card_accepts.push_back(true);
                e.delay_sweep.push_back({d, inside});
            }
            break;
    }
    return e;
}

Transcript run_scenario(const Scenario& s) {
    validate(s);

    Recorder recorder;
    SimClock clock(s.tick);
    Channel ch(clock, &recorder);
    ServerState server(derive_server_secret(s.seed, s.block_len), s.delta_t);
    const Credentials creds = derive_credentials(s.seed);

    Transcript t;
    t.tool_version = std::string(tool_version());
    t.scenario = s;

    announce_server(server, ch);
    SmartCard card = enroll(s.scheme, server, creds.id, creds.password, derive_card_seed(s.seed, 0), 0, ch);
    clock.advance();

    switch (s.script) {
        case Script::HonestLogin:
            login_exchange(server, card, 0, creds.password, ch);
            break;
        case Script::WrongPassword:
            login_exchange(server, card, 0, creds.wrong_password, ch);
            break;
        case Script::PasswordChangeHonest:
            change_password(card, 0, creds.password, creds.new_password, ch);
            clock.advance();
            login_exchange(server, card, 0, creds.new_password, ch);
            clock.advance();
            login_exchange(server, card, 0, creds.password, ch);
            break;
        case Script::HsuParallel:
        case Script::ParallelYoon:
            t.verdicts.attack_outcome = adversary::run_parallel_session_attack(server, card, 0, creds.password, ch);
            break;
        case Script::PwChangeAbuse:
            t.verdicts.attack_outcome = adversary::run_pw_change_abuse(
                card, 0, creds.attacker_password, creds.attacker_new_password, creds.password, server, ch);
            break;
        case Script::ReRegistration: {
            SmartCard renewed =
                enroll(s.scheme, server, creds.id, creds.password, derive_card_seed(s.seed, 1), 1, ch);
            clock.advance();
            login_exchange(server, card, 0, creds.password, ch);
            clock.advance();
            login_exchange(server, renewed, 1, creds.password, ch);
            break;
        }
        case Script::DelaySweep:
            for (const std::uint64_t d : sweep_delays(s.delta_t, s.tick)) {
                const auto outcome = adversary::run_parallel_session_attack(
                    server, card, 0, creds.password, ch, adversary::ParallelAttackOptions{d});
                t.verdicts.delay_sweep.push_back({d, outcome.server_accepted});
                clock.advance();
            }
            break;
    }

    t.events = std::move(recorder.steps);
    t.verdicts.server_accepts = std::move(recorder.server_accepts);
    t.verdicts.card_accepts = std::move(recorder.card_accepts);
    t.expected = expected_verdicts(s);

    ExpectedVerdicts observed{t.verdicts.server_accepts, t.verdicts.card_accepts, std::nullopt,
                              t.verdicts.delay_sweep};
    if (t.verdicts.attack_outcome) observed.attack_accepted = t.verdicts.attack_outcome->server_accepted;
    t.matches_expected = observed == t.expected;
    return t;
}

}  // namespace authsim
