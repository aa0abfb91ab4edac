#ifndef AUTHSIM_VERIFY_HPP
#define AUTHSIM_VERIFY_HPP

#include "authsim/transcript.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace authsim {

struct Mismatch {
    std::uint64_t step = 0;
    std::string field;
    std::string expected;
    std::string recorded;
};

struct VerifyReport {
    std::vector<std::string> wellformedness;
    std::vector<Mismatch> mismatches;

    bool ok() const noexcept { return wellformedness.empty() && mismatches.empty(); }
};

// Replays a revealed transcript: regenerates x and every b from the scenario
// seed, recomputes each C1..C4 and every server and card verdict, and lists
// each recorded value that disagrees. A transcript without secrets, or one
// that breaks ordering or Send/Receive pairing, is reported as malformed and
// not replayed.
VerifyReport verify_transcript(const Transcript& t);

std::string format_report(const VerifyReport& report);

}  // namespace authsim

#endif  // AUTHSIM_VERIFY_HPP
