// Copyright 2026 The chainsim authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CHAINSIM_VERIFY_HPP
#define CHAINSIM_VERIFY_HPP

#include <map>
#include <set>
#include <vector>

#include "chainsim/protocol.hpp"

namespace chainsim {

/// Property suites for the protocol's physical claims: readout marginal
/// uniformity and remote-input independence before any classical
/// communication, outcome support, full/compact equivalence, and sampling
/// statistics. The causality tolerance is pinned here.
inline constexpr double kNoSignalingTol = 1e-10;

struct NoSignalingReport {
  double max_pointer_uniform_deviation = 0.0;
  double max_remote_trace_distance = 0.0;
  bool pass = false;
};

/// Compares the two runs before any classical exchange: inputs must be
/// product lists differing at exactly one site. Every other site's reduced
/// spin state and every pointer's reduced state must agree between the
/// variants within kNoSignalingTol, and each pointer marginal must be uniform.
NoSignalingReport check_no_signaling(const ProtocolSpec& spec, const SpinInputs& input_a,
                                     const SpinInputs& input_b);

/// True iff every enumerated branch has all difference values in {0, 2}.
bool check_outcome_support(const ProtocolSpec& spec, const SpinInputs& inputs);

/// Max over difference classes of |prob_full - prob_compact| and of the
/// conditional-state infidelity between modes.
double cross_check_modes(const ProtocolSpec& spec, const SpinInputs& inputs);

struct OutcomeHistogram {
  std::map<std::vector<int>, long> counts;  // per difference vector
  long trials = 0;
  std::uint64_t seed = 0;
  double chi_square = 0.0;  // against enumerated class probabilities
  int dof = 0;
};

OutcomeHistogram outcome_statistics(const ProtocolSpec& spec, const SpinInputs& inputs,
                                    long trials, std::uint64_t seed);

/// Evidence for which classical pairing of readouts carries the measured
/// observables. `partner` pairs each first-layer pointer with the
/// second-layer pointer it was initialized with (q_j - q'_{j+1}); `crossed`
/// pairs it the other way around (q'_j - q_{j+1}). A pairing is deterministic
/// when its value set is confined to {0, 2} and fixing its difference vector
/// fixes the conditional spin state.
struct PairingDiagnostics {
  std::set<int> partner_support;
  std::set<int> crossed_support;
  double partner_max_class_infidelity = 0.0;
  double crossed_max_class_infidelity = 0.0;
  bool partner_deterministic = false;
  bool crossed_deterministic = false;
};

/// Full mode only (the crossed combination needs the individual pointers).
PairingDiagnostics diagnose_readout_pairing(const ProtocolSpec& spec,
                                            const SpinInputs& inputs);

}  // namespace chainsim

#endif
