#pragma once

// Scripted end-to-end runs over an in-process broadcast channel -- the
// broadcast is the append-only transcript itself.  A scenario names which
// parties misbehave and how; the runner executes all phases, records every
// posted message with its verdict, and reports whether the observed
// verdicts and reconstruction match the scenario's expectation (an honest
// prover cannot attest a false statement, so scripted parties fall back to
// the strongest generic attack: challenge-guessing simulation, which each
// verifier defeats except with probability 2^-lambda_rep per forgery).
//
// Determinism: one run's transcript is a pure function of (public params,
// scenario, seed); every sampling site forks the seed by a fixed tag path.

#include <map>
#include <string>
#include <vector>

#include "lpvss/pvss.hpp"

namespace lpvss {

// Per-party misbehavior scripts.
//   bad_key:       post a uniform public row with a simulated proof
//   wrong_reveal:  reveal a uniformly wrong share with a simulated proof
//   garbage_proof: reveal a wrong share with random proof bytes
//   silent:        post nothing in the reveal phase
enum class Misbehavior : u8 { bad_key, wrong_reveal, garbage_proof, silent };

struct Scenario {
  std::string name;
  bool dealer_off_code = false;  // dealer perturbs one share off the code
                                 // and attaches a simulated proof
  std::map<u32, Misbehavior> corrupted;  // original party index -> script
};

// The standard table: honest, bad-key, off-code-dealer, wrong-reveal,
// garbage-proof, silent, mixed-reveal.  Corrupted-party counts are capped
// so the qualified set always stays above the threshold.  Unknown names
// throw ConfigError.
Scenario scenario_by_name(const std::string& name, const ParamSet& ps);
const std::vector<std::string>& scenario_names();

struct RunOutcome {
  PvssTranscript tr;
  u128 secret = 0;   // the dealer's input; deliberately not in the transcript
  bool expected = false;  // observed verdicts/output == scenario expectation
  std::string summary;    // one "key=value" report line
};

// Execute all phases under the scenario's scripts.  Requires at most t
// corrupted parties with indices in 1..n (ConfigError otherwise).  The
// returned transcript always re-verifies (verdicts are recorded exactly as
// the public checks decided them); `expected` captures whether those
// decisions match what the scenario is supposed to produce.
RunOutcome run_scenario(const PvssPublicParams& pp, const Scenario& sc,
                        u64 seed);

}  // namespace lpvss
