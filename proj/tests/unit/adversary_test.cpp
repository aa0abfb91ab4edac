#include "authsim/adversary.hpp"
#include "authsim/drbg.hpp"

#include <doctest.h>

#include <random>

using namespace authsim;
using namespace authsim::adversary;

namespace {

class VectorSink final : public TraceSink {
public:
    void record(TraceEvent e) override { events.push_back(std::move(e)); }
    std::vector<TraceEvent> events;
};

struct World {
    explicit World(Scheme scheme, std::uint64_t window = 60, std::uint64_t tick = 1, std::uint64_t seed = 1)
        : clock(tick), ch(clock, &sink), server(derive_server_secret(seed, 32), window),
          card(enroll(scheme, server, Identity("alice"), "alpha", seed + 100, 0, ch)) {
        clock.advance();
    }

    VectorSink sink;
    SimClock clock;
    Channel ch;
    ServerState server;
    SmartCard card;
};

}  // namespace

TEST_CASE("fabricate_parallel_request reflects the server reply") {
    const InterceptedSession s{LoginRequest{Identity("alice"), Block::from_hex(std::string(64, 'a')), Timestamp{10}},
                               AuthResponse{Block::from_hex(std::string(64, 'c')), Timestamp{11}}, 0, 1};
    const LoginRequest forged = fabricate_parallel_request(s);
    CHECK(forged.id == s.request.id);
    CHECK(forged.c2 == s.response.c3);
    CHECK(forged.t_u == s.response.t_s);
    CHECK_FALSE(forged == s.request);
}

TEST_CASE("parallel session attack succeeds on both schemes") {
    for (const Scheme scheme : {Scheme::KuChen, Scheme::Yoon}) {
        CAPTURE(to_string(scheme));
        World w(scheme);
        const AttackOutcome out = run_parallel_session_attack(w.server, w.card, 0, "alpha", w.ch);
        CHECK(out.attack == (scheme == Scheme::KuChen ? AttackName::HsuParallelKuChen : AttackName::ParallelYoon));
        CHECK(out.honest_accepted == true);
        CHECK(out.server_accepted);
        REQUIRE(out.fabricated);
        REQUIRE(out.intercepted);
        CHECK(out.delay == 1u);

        // The reflected C3 has exactly the shape of a valid C2 for t_u = T_S.
        const Block secret = eid_block(Identity("alice"), 0, w.server.x);
        const Block c3 = out.intercepted->response.c3;
        CHECK(c3 == hash_f(xor_blocks(secret, encode_timestamp(out.intercepted->response.t_s))));
        CHECK(out.fabricated->c2 == c3);

        // (C4, T_S*) was produced and dropped.
        REQUIRE(out.dropped_response);
        CHECK(out.dropped_response->t_s.seconds == out.intercepted->response.t_s.seconds + 1);
        CHECK(out.dropped_response->c3 ==
              hash_f(xor_blocks(secret, encode_timestamp(out.dropped_response->t_s))));
        const auto& last = w.sink.events.back();
        CHECK(last.kind == EventKind::Drop);
        CHECK(last.actor == Actor::Intruder);
    }
}

TEST_CASE("reflection fails outside the freshness window") {
    World w(Scheme::Yoon, 60);
    const AttackOutcome out = run_parallel_session_attack(w.server, w.card, 0, "alpha", w.ch, {61});
    CHECK_FALSE(out.server_accepted);
    CHECK_FALSE(out.dropped_response);
    CHECK(out.fabricated);
}

TEST_CASE("reflection delay shorter than a tick is refused") {
    World w(Scheme::KuChen, 60, 5);
    CHECK_THROWS_AS(run_parallel_session_attack(w.server, w.card, 0, "alpha", w.ch, {4}), std::invalid_argument);
}

TEST_CASE("no reply means nothing to reflect") {
    World w(Scheme::KuChen);
    const AttackOutcome out = run_parallel_session_attack(w.server, w.card, 0, "not-the-password", w.ch);
    CHECK(out.honest_accepted == false);
    CHECK_FALSE(out.server_accepted);
    CHECK_FALSE(out.fabricated);
}

TEST_CASE("attack success has a single threshold at delta_t") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 20; ++trial) {
        const std::uint64_t window = 1 + rng() % 40;
        const std::uint64_t tick = 1 + rng() % 3;
        const Scheme scheme = trial % 2 ? Scheme::Yoon : Scheme::KuChen;
        World w(scheme, window, tick, rng());
        for (std::uint64_t delay = tick; delay <= window + 5; ++delay) {
            const AttackOutcome out = run_parallel_session_attack(w.server, w.card, 0, "alpha", w.ch, {delay});
            if (tick > window) {
                CHECK_FALSE(out.honest_accepted.value());
                continue;
            }
            CHECK(out.server_accepted == (delay <= window));
        }
    }
}

TEST_CASE("stolen-card password change") {
    SUBCASE("ku-chen: wrong old password locks the user out") {
        World w(Scheme::KuChen);
        const AttackOutcome out = run_pw_change_abuse(w.card, 0, "guess", "evil", "alpha", w.server, w.ch);
        CHECK(out.attack == AttackName::PwChangeAbuseKuChen);
        CHECK(out.change_result == PasswordChangeResult::Changed);
        CHECK_FALSE(out.server_accepted);
    }
    SUBCASE("yoon: the gate rejects and the user still logs in") {
        World w(Scheme::Yoon);
        const SmartCard before = w.card;
        const AttackOutcome out = run_pw_change_abuse(w.card, 0, "guess", "evil", "alpha", w.server, w.ch);
        CHECK(out.change_result == PasswordChangeResult::RejectedWrongPassword);
        CHECK(w.card == before);
        CHECK(out.server_accepted);
    }
    SUBCASE("knowing the real password is indistinguishable from the user") {
        for (const Scheme scheme : {Scheme::KuChen, Scheme::Yoon}) {
            World w(scheme);
            const AttackOutcome out = run_pw_change_abuse(w.card, 0, "alpha", "evil", "alpha", w.server, w.ch);
            CHECK(out.change_result == PasswordChangeResult::Changed);
            CHECK_FALSE(out.server_accepted);
            w.clock.advance();
            CHECK(login_exchange(w.server, w.card, 0, "evil", w.ch).verdict.accepted);
        }
    }
}

TEST_CASE("intruder pairs requests with replies") {
    World w(Scheme::KuChen);
    Intruder tap;
    login_exchange(w.server, w.card, 0, "alpha", w.ch, &tap);
    w.clock.advance();
    login_exchange(w.server, w.card, 0, "wrong", w.ch, &tap);
    REQUIRE(tap.sessions().size() == 1);
    CHECK(tap.sessions()[0].request.id == Identity("alice"));
    CHECK(tap.sessions()[0].response.t_s.seconds == tap.sessions()[0].request.t_u.seconds + 1);
}
