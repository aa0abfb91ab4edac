// authsim: run smart-card authentication scenarios and audit their transcripts.
//
//   authsim run --scheme kuchen --scenario hsu-parallel --seed 1 --out t.json
//   authsim verify t.json
//   authsim list-scenarios
//
// Exit status: 0 scenario matched its verdict table (or transcript verified),
// 1 verdict mismatch, 2 usage or configuration error.

#include "authsim/harness.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitUsage = 2;

std::string join(const std::vector<bool>& xs) {
    if (xs.size() > 12) {
        const auto accepted = std::count(xs.begin(), xs.end(), true);
        return std::to_string(accepted) + " accept, " + std::to_string(xs.size() - accepted) + " reject";
    }
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) out += std::string(i ? " " : "") + (xs[i] ? "accept" : "reject");
    return out.empty() ? "-" : out;
}

void print_summary(std::ostream& os, const authsim::Transcript& t) {
    os << "scheme:   " << authsim::to_string(t.scenario.scheme) << '\n'
       << "scenario: " << authsim::to_string(t.scenario.script) << " (seed " << t.scenario.seed << ")\n"
       << "server:   " << join(t.verdicts.server_accepts) << '\n'
       << "card:     " << join(t.verdicts.card_accepts) << '\n';
    if (const auto& o = t.verdicts.attack_outcome) {
        os << "attack:   " << authsim::adversary::to_string(o->attack) << " -> server "
           << (o->server_accepted ? "accepted" : "rejected") << '\n';
        for (const auto& note : o->notes) os << "          " << note << '\n';
    }
    if (!t.verdicts.delay_sweep.empty()) {
        std::uint64_t last_ok = 0;
        for (const auto& p : t.verdicts.delay_sweep) {
            if (p.accepted) last_ok = p.delay;
        }
        os << "sweep:    " << t.verdicts.delay_sweep.size() << " delays probed, largest accepted delay " << last_ok
           << " (delta_t " << t.scenario.delta_t << ")\n";
    }
    os << "expected: " << (t.matches_expected ? "match" : "MISMATCH") << '\n';
}

int run_command(const authsim::Scenario& s, bool reveal, const std::string& out_path) {
    const authsim::Transcript t = authsim::run_scenario(s);
    const std::string text = authsim::to_json(t, reveal);
    if (out_path == "-") {
        std::cout << text;
        print_summary(std::cerr, t);
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) {
            std::cerr << "error: cannot write " << out_path << '\n';
            return kExitUsage;
        }
        out << text;
        print_summary(std::cout, t);
    }
    return t.matches_expected ? kExitOk : kExitMismatch;
}

int verify_command(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        std::cerr << "error: cannot read " << path << '\n';
        return kExitUsage;
    }
    std::ostringstream buf;
    buf << in.rdbuf();

    authsim::Transcript t;
    try {
        t = authsim::parse_transcript(buf.str());
    } catch (const authsim::TranscriptParseError& e) {
        std::cerr << path;
        if (e.line() != 0) std::cerr << ':' << e.line() << ':' << e.column();
        std::cerr << ": " << e.what() << '\n';
        return kExitUsage;
    }
    const authsim::VerifyReport report = authsim::verify_transcript(t);
    std::cout << authsim::format_report(report);
    return report.ok() ? kExitOk : kExitMismatch;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Smart-card remote authentication simulator and attack harness"};
    app.require_subcommand(1);

    std::string scheme_name;
    std::string script_name;
    authsim::Scenario scenario;
    bool reveal = false;
    std::string out_path;
    auto* run = app.add_subcommand("run", "Run one scenario and write its transcript");
    run->add_option("--scheme", scheme_name, "kuchen or yoon")->required()->check(CLI::IsMember({"kuchen", "yoon"}));
    run->add_option("--scenario", script_name, "Scenario name (see list-scenarios)")->required();
    run->add_option("--seed", scenario.seed, "Scenario seed")->required();
    run->add_option("--delta-t", scenario.delta_t, "Freshness window in simulated seconds")->capture_default_str();
    run->add_option("--tick", scenario.tick, "Clock advance per protocol step")->capture_default_str();
    run->add_option("--block-len", scenario.block_len, "Block width in bytes")->capture_default_str();
    run->add_flag("--reveal-secrets", reveal, "Include the secrets appendix (required by verify)");
    run->add_option("--out", out_path, "Output path, or - for stdout")->required();

    std::string verify_path;
    auto* verify = app.add_subcommand("verify", "Recompute every value and verdict in a revealed transcript");
    verify->add_option("transcript", verify_path, "Transcript JSON")->required();

    auto* list = app.add_subcommand("list-scenarios", "List scenario names");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    if (*list) {
        for (const auto script : authsim::all_scripts()) {
            std::cout << authsim::to_string(script) << "\t" << authsim::describe(script) << '\n';
        }
        return kExitOk;
    }
    if (*verify) return verify_command(verify_path);

    const auto script = authsim::parse_script(script_name);
    if (!script) {
        std::cerr << "error: unknown scenario '" << script_name << "' (see authsim list-scenarios)\n";
        return kExitUsage;
    }
    scenario.scheme = *authsim::parse_scheme(scheme_name);
    scenario.script = *script;
    try {
        return run_command(scenario, reveal, out_path);
    } catch (const authsim::ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}
