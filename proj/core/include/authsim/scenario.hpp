#ifndef AUTHSIM_SCENARIO_HPP
#define AUTHSIM_SCENARIO_HPP

#include "authsim/primitives.hpp"
#include "authsim/protocol.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace authsim {

enum class Script {
    HonestLogin,
    WrongPassword,
    PasswordChangeHonest,
    HsuParallel,
    PwChangeAbuse,
    ParallelYoon,
    ReRegistration,
    DelaySweep,
};

std::string_view to_string(Script script);
std::optional<Script> parse_script(std::string_view name);
std::span<const Script> all_scripts();
std::string_view describe(Script script);

class ConfigError : public std::invalid_argument {
public:
    explicit ConfigError(const std::string& msg) : std::invalid_argument(msg) {}
};

struct Scenario {
    Scheme scheme = Scheme::KuChen;
    Script script = Script::HonestLogin;
    std::uint64_t seed = 1;
    std::uint64_t delta_t = kDefaultFreshnessWindow;
    std::uint64_t tick = 1;
    std::size_t block_len = kDefaultBlockLen;

    friend bool operator==(const Scenario&, const Scenario&) = default;
};

// Throws ConfigError for block_len outside [8, 1024], tick == 0 or delta_t == 0.
void validate(const Scenario& s);

// Per-seed user material; every string is derived from the scenario seed.
struct Credentials {
    Identity id;
    std::string password;
    std::string wrong_password;
    std::string new_password;
    std::string attacker_password;
    std::string attacker_new_password;
};

Credentials derive_credentials(std::uint64_t seed);

// Reflection delays probed by DelaySweep: every delay from one tick up to
// delta_t + 2 (capped at 128 probes), plus the points around the window edge.
std::vector<std::uint64_t> sweep_delays(std::uint64_t delta_t, std::uint64_t tick);

struct DelayProbe {
    std::uint64_t delay = 0;
    bool accepted = false;

    friend bool operator==(const DelayProbe&, const DelayProbe&) = default;
};

// The verdicts each script must produce for the schemes as published: honest
// sessions succeed, reflection succeeds inside the window, Ku-Chen locks the
// user out after the stolen-card change and Yoon does not.
struct ExpectedVerdicts {
    std::vector<bool> server_accepts;
    std::vector<bool> card_accepts;
    std::optional<bool> attack_accepted;
    std::vector<DelayProbe> delay_sweep;

    friend bool operator==(const ExpectedVerdicts&, const ExpectedVerdicts&) = default;
};

ExpectedVerdicts expected_verdicts(const Scenario& s);

}  // namespace authsim

#endif  // AUTHSIM_SCENARIO_HPP
