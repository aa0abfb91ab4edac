#ifndef AUTHSIM_TRANSCRIPT_HPP
#define AUTHSIM_TRANSCRIPT_HPP

#include "authsim/adversary.hpp"
#include "authsim/scenario.hpp"
#include "authsim/trace.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace authsim {

inline constexpr int kTranscriptFormat = 1;

std::string_view tool_version();

struct TranscriptStep {
    std::uint64_t step = 0;
    TraceEvent event;
};

struct VerdictSummary {
    std::vector<bool> server_accepts;
    std::vector<bool> card_accepts;
    std::optional<adversary::AttackOutcome> attack_outcome;
    std::vector<DelayProbe> delay_sweep;
};

struct Transcript {
    int format = kTranscriptFormat;
    std::string tool_version;
    Scenario scenario;
    std::vector<TranscriptStep> events;
    VerdictSummary verdicts;
    ExpectedVerdicts expected;
    bool matches_expected = false;
    // False when parsed from a transcript written without --reveal-secrets.
    bool has_secrets = true;
};

class TranscriptParseError : public std::runtime_error {
public:
    TranscriptParseError(const std::string& msg, std::string path, std::size_t line = 0, std::size_t column = 0);

    const std::string& path() const noexcept { return path_; }
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::string path_;
    std::size_t line_;
    std::size_t column_;
};

// Deterministic JSON; blocks as lowercase hex. Party-internal values go to
// the "secrets" appendix, written only when `reveal_secrets` is set.
std::string to_json(const Transcript& t, bool reveal_secrets);

Transcript parse_transcript(std::string_view json);

}  // namespace authsim

#endif  // AUTHSIM_TRANSCRIPT_HPP
