#ifndef AUTHSIM_HARNESS_HPP
#define AUTHSIM_HARNESS_HPP

#include "authsim/scenario.hpp"
#include "authsim/transcript.hpp"
#include "authsim/verify.hpp"

namespace authsim {

// Runs the scripted flow against fresh parties. The result is a pure
// function of `s`; invalid configurations throw ConfigError before any step.
Transcript run_scenario(const Scenario& s);

}  // namespace authsim

#endif  // AUTHSIM_HARNESS_HPP
