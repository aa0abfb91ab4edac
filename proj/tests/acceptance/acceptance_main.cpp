// Acceptance suite: one line per criterion, exit status 0 iff all pass.

#include "authsim/drbg.hpp"
#include "authsim/harness.hpp"
#include "authsim/kuchen.hpp"
#include "authsim/yoon.hpp"

#include "oracle/reference_vectors.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace authsim;

namespace {

constexpr std::uint64_t kTrials = 100;

struct Result {
    bool pass = true;
    std::string detail;

    void fail(const std::string& why) {
        if (pass) detail = why;
        pass = false;
    }
};

Scenario make(Scheme scheme, Script script, std::uint64_t seed) {
    Scenario s;
    s.scheme = scheme;
    s.script = script;
    s.seed = seed;
    return s;
}

Result honest_completeness() {
    Result r;
    std::uint64_t ok = 0;
    for (const Scheme scheme : {Scheme::KuChen, Scheme::Yoon}) {
        for (std::uint64_t seed = 1; seed <= kTrials; ++seed) {
            const Transcript t = run_scenario(make(scheme, Script::HonestLogin, seed));
            if (t.verdicts.server_accepts == std::vector<bool>{true} &&
                t.verdicts.card_accepts == std::vector<bool>{true}) {
                ++ok;
            } else {
                r.fail(std::string(to_string(scheme)) + " seed " + std::to_string(seed) + " rejected");
            }
        }
    }
    r.detail = std::to_string(ok) + "/" + std::to_string(2 * kTrials) + (r.pass ? "" : "; " + r.detail);
    return r;
}

// Half the trials go through the scenario runner at its default delay, the
// other half through the adversary API at a random delay inside the window.
Result parallel_attack(Scheme scheme) {
    Result r;
    std::uint64_t ok = 0;
    std::mt19937_64 rng(scheme == Scheme::KuChen ? 0x4b43 : 0x594f);
    const Script script = scheme == Scheme::KuChen ? Script::HsuParallel : Script::ParallelYoon;
    for (std::uint64_t seed = 1; seed <= kTrials; ++seed) {
        std::optional<adversary::AttackOutcome> out;
        std::uint64_t window = kDefaultFreshnessWindow;
        if (seed % 2) {
            const Transcript t = run_scenario(make(scheme, script, seed));
            out = t.verdicts.attack_outcome;
        } else {
            SimClock clock(1, Timestamp{rng() % 1000000});
            Channel ch(clock);
            ServerState srv(derive_server_secret(seed, kDefaultBlockLen), window);
            const Credentials cred = derive_credentials(seed);
            const SmartCard card = enroll(scheme, srv, cred.id, cred.password, derive_card_seed(seed, 0), 0, ch);
            clock.advance();
            out = adversary::run_parallel_session_attack(srv, card, 0, cred.password, ch, {1 + rng() % window});
        }
        if (out && out->server_accepted && out->delay && *out->delay <= window) {
            ++ok;
        } else {
            r.fail("seed " + std::to_string(seed) + " not accepted");
        }
    }
    r.detail = std::to_string(ok) + "/" + std::to_string(kTrials) + (r.pass ? "" : "; " + r.detail);
    return r;
}

Result pw_change_abuse(Scheme scheme) {
    Result r;
    std::uint64_t ok = 0;
    for (std::uint64_t seed = 1; seed <= kTrials; ++seed) {
        const Transcript t = run_scenario(make(scheme, Script::PwChangeAbuse, seed));
        const auto& out = t.verdicts.attack_outcome;
        bool good = false;
        if (out && out->change_result) {
            if (scheme == Scheme::KuChen) {
                good = *out->change_result == PasswordChangeResult::Changed && !out->server_accepted;
            } else {
                good = *out->change_result == PasswordChangeResult::RejectedWrongPassword && out->server_accepted &&
                       t.verdicts.card_accepts == std::vector<bool>{true};
            }
        }
        if (good) {
            ++ok;
        } else {
            r.fail("seed " + std::to_string(seed));
        }
    }
    r.detail = std::to_string(ok) + "/" + std::to_string(kTrials) + (r.pass ? "" : "; failed at " + r.detail);
    return r;
}

Result oracle_equivalence() {
    Result r;
    std::size_t checked = 0;
    for (const auto& vec : testing::kReferenceVectors) {
        const std::string tag = std::string(vec.id) + ": ";
        auto expect = [&](const char* name, const Block& got, const char* want) {
            ++checked;
            if (got.hex() != want) r.fail(tag + name + " = " + got.hex() + ", oracle " + want);
        };

        ServerState srv(derive_server_secret(vec.seed, 32));
        expect("x", srv.x, vec.x);
        const Identity id(vec.id);

        const RegistrationSecrets prep = yoon::user_register_prepare(vec.password, vec.card_seed);
        expect("b", prep.b, vec.b);
        expect("pw_s", prep.pw_s, vec.pw_s);

        ServerState kc_srv(srv.x);
        expect("R (ku-chen)", kuchen::server_register(kc_srv, id, prep.pw_s), vec.r);

        const yoon::CardSecrets secrets = yoon::server_register(srv, id, prep.pw_s);
        expect("R", secrets.r, vec.r);
        expect("V", secrets.v, vec.v);
        const SmartCard card = yoon::issue_card(id, secrets, prep.b);
        expect("C1", core::compute_c1(card, vec.password), vec.c1);

        SimClock clock(1, Timestamp{vec.t_u});
        const auto [req, ctx] = yoon::card_login(card, vec.password, clock);
        expect("C2", req.c2, vec.c2);

        clock.advance_to(Timestamp{vec.t_s});
        const VerifyResult first = yoon::server_verify(srv, req, clock);
        if (!first.accepted) {
            r.fail(tag + "login rejected");
            continue;
        }
        expect("C3", first.response->c3, vec.c3);

        adversary::InterceptedSession session{req, *first.response, 0, 0};
        clock.advance_to(Timestamp{vec.t_s_star});
        const VerifyResult second = yoon::server_verify(srv, adversary::fabricate_parallel_request(session), clock);
        if (!second.accepted) {
            r.fail(tag + "reflection rejected");
            continue;
        }
        expect("C4", second.response->c3, vec.c4);
    }
    r.detail = std::to_string(std::size(testing::kReferenceVectors)) + " vectors, " + std::to_string(checked) +
               " values" + (r.pass ? "" : "; " + r.detail);
    return r;
}

// Invariants ----------------------------------------------------------------

Block random_block(std::mt19937_64& rng, std::size_t len) {
    Bytes b(len);
    for (auto& byte : b) byte = static_cast<std::uint8_t>(rng());
    return Block(std::move(b));
}

std::string random_password(std::mt19937_64& rng) {
    std::string pw(1 + rng() % 16, 'a');
    for (auto& c : pw) c = static_cast<char>('!' + rng() % 90);
    return pw;
}

bool xor_involution(std::mt19937_64& rng) {
    for (int i = 0; i < 1000; ++i) {
        const std::size_t len = 8 + rng() % 64;
        const Block a = random_block(rng, len);
        const Block b = random_block(rng, len);
        if (xor_blocks(xor_blocks(a, b), b) != a || xor_blocks(a, a) != Block::zero(len)) return false;
    }
    return true;
}

bool registration_consistency(std::mt19937_64& rng) {
    ServerState srv(random_block(rng, 32));
    for (int i = 0; i < 200; ++i) {
        const Identity id("u" + std::to_string(rng() % 50));
        const std::string pw = random_password(rng);
        auto prep = kuchen::user_register_prepare(pw, rng());
        const SmartCard card = kuchen::issue_card(id, kuchen::server_register(srv, id, prep.pw_s), prep.b);
        const Block lhs = xor_blocks(card.r(), hash_f(xor_blocks(card.b(), encode_password(pw))));
        if (lhs != eid_block(id, *srv.counter(id), srv.x)) return false;
    }
    return true;
}

bool password_change_algebra(std::mt19937_64& rng) {
    ServerState srv(random_block(rng, 32));
    const Identity id("alice");
    auto prep = kuchen::user_register_prepare("alpha", rng());
    SmartCard card = kuchen::issue_card(id, kuchen::server_register(srv, id, prep.pw_s), prep.b);
    const SmartCard original = card;
    for (int i = 0; i < 200; ++i) {
        const std::string p = random_password(rng);
        const std::string q = random_password(rng);
        kuchen::card_change_password(card, p, q);
        kuchen::card_change_password(card, q, p);
        if (card != original) return false;
        kuchen::card_change_password(card, p, p);
        if (card != original) return false;
    }
    return true;
}

bool reregistration_invalidates(std::mt19937_64& rng) {
    for (int i = 0; i < 50; ++i) {
        ServerState srv(random_block(rng, 32));
        const Identity id("u" + std::to_string(i));
        const std::string pw = random_password(rng);
        auto a = kuchen::user_register_prepare(pw, rng());
        const SmartCard old_card = kuchen::issue_card(id, kuchen::server_register(srv, id, a.pw_s), a.b);
        auto b = kuchen::user_register_prepare(pw, rng());
        const SmartCard new_card = kuchen::issue_card(id, kuchen::server_register(srv, id, b.pw_s), b.b);
        SimClock clock(1, Timestamp{10});
        const auto old_req = kuchen::card_login(old_card, pw, clock).first;
        const auto new_req = kuchen::card_login(new_card, pw, clock).first;
        clock.advance();
        if (kuchen::server_verify(srv, old_req, clock).accepted) return false;
        if (!kuchen::server_verify(srv, new_req, clock).accepted) return false;
    }
    return true;
}

bool delay_sweep_threshold() {
    for (const std::uint64_t window : {std::uint64_t{5}, std::uint64_t{60}}) {
        for (const Scheme scheme : {Scheme::KuChen, Scheme::Yoon}) {
            Scenario s = make(scheme, Script::DelaySweep, window);
            s.delta_t = window;
            const Transcript t = run_scenario(s);
            if (t.verdicts.delay_sweep.empty()) return false;
            for (const auto& p : t.verdicts.delay_sweep) {
                if (p.accepted != (p.delay <= window)) return false;
            }
        }
    }
    return true;
}

bool double_runs_identical() {
    for (const Scheme scheme : {Scheme::KuChen, Scheme::Yoon}) {
        for (const Script script : all_scripts()) {
            const Scenario s = make(scheme, script, 42);
            if (to_json(run_scenario(s), true) != to_json(run_scenario(s), true)) return false;
        }
    }
    return true;
}

bool golden_transcripts(std::string& why) {
    const std::filesystem::path dir = AUTHSIM_GOLDEN_DIR;
    std::size_t compared = 0;
    for (const Scheme scheme : {Scheme::KuChen, Scheme::Yoon}) {
        for (const Script script : all_scripts()) {
            const auto path = dir / (std::string(to_string(scheme)) + "_" + std::string(to_string(script)) + ".json");
            std::ifstream in(path, std::ios::binary);
            if (!in) {
                why = "missing " + path.filename().string();
                return false;
            }
            std::stringstream buf;
            buf << in.rdbuf();
            if (buf.str() != to_json(run_scenario(make(scheme, script, 1)), true)) {
                why = path.filename().string() + " differs";
                return false;
            }
            ++compared;
        }
    }
    return compared > 0;
}

Result invariants() {
    Result r;
    std::mt19937_64 rng(7);
    const std::vector<std::pair<const char*, std::function<bool()>>> checks = {
        {"xor involution", [&] { return xor_involution(rng); }},
        {"registration consistency", [&] { return registration_consistency(rng); }},
        {"password-change involution", [&] { return password_change_algebra(rng); }},
        {"re-registration invalidation", [&] { return reregistration_invalidates(rng); }},
        {"delay-sweep threshold", delay_sweep_threshold},
        {"bit-identical double runs", double_runs_identical},
    };
    std::size_t ok = 0;
    for (const auto& [name, check] : checks) {
        if (check()) {
            ++ok;
        } else {
            r.fail(name);
        }
    }
    std::string why;
    if (golden_transcripts(why)) {
        ++ok;
    } else {
        r.fail("golden transcripts: " + why);
    }
    r.detail = std::to_string(ok) + "/" + std::to_string(checks.size() + 1) + " invariants" +
               (r.pass ? "" : "; failed: " + r.detail);
    return r;
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Result()>>> criteria = {
        {"honest completeness", honest_completeness},
        {"reflection attack on ku-chen", [] { return parallel_attack(Scheme::KuChen); }},
        {"reflection attack on yoon", [] { return parallel_attack(Scheme::Yoon); }},
        {"ku-chen stolen-card password change locks out", [] { return pw_change_abuse(Scheme::KuChen); }},
        {"yoon password-change gate", [] { return pw_change_abuse(Scheme::Yoon); }},
        {"oracle equivalence", oracle_equivalence},
        {"invariant suite", invariants},
    };

    int failed = 0;
    int index = 0;
    for (const auto& [name, run] : criteria) {
        ++index;
        Result r;
        try {
            r = run();
        } catch (const std::exception& e) {
            r.fail(std::string("exception: ") + e.what());
        }
        std::printf("[%s] criterion %d: %s (%s)\n", r.pass ? "PASS" : "FAIL", index, name, r.detail.c_str());
        if (!r.pass) ++failed;
    }
    std::printf("%d/%zu criteria passed\n", index - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
