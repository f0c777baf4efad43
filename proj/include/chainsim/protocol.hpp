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

#ifndef CHAINSIM_PROTOCOL_HPP
#define CHAINSIM_PROTOCOL_HPP

#include <optional>
#include <string>
#include <vector>

#include "chainsim/devices.hpp"
#include "chainsim/hilbert.hpp"
#include "chainsim/rand.hpp"

namespace chainsim {

class CorrectionTable;  // corrections.hpp

/// Protocol families:
///  - two-way-vaa: the two-party swap built from one x-type and one y-type
///    crossed link (requires n = 2);
///  - chain: the n-party ring with link axes x, y, x, y, ... and a
///    configurable axis on the wrap-around end link.
enum class Family { kTwoWayVaa, kChain };

enum class EndLink { kZ, kX, kY, kAuto };

/// full: all 2n physical pointers; compact: one dim-4 difference register per
/// link, statistically equivalent at the level of (d, conditional spin state).
enum class SimMode { kFull, kCompact };

struct ProtocolSpec {
  int n = 2;
  Family family = Family::kChain;
  EndLink end_link = EndLink::kZ;
  SimMode sim_mode = SimMode::kFull;

  /// Throws std::invalid_argument on bad combinations (two-way-vaa with
  /// n != 2, n < 2).
  void validate() const;

  /// The wrap-around link axis with `auto` resolved: x for odd n, y for even.
  Axis end_axis() const;

  /// Axis of link j (1-based): x for odd j < n, y for even j < n, end axis
  /// for j = n. The two-way family uses x, y.
  Axis link_axis(int j) const;

  std::string fingerprint() const;  // "n=... family=... end-link=..."
};

std::string family_name(Family family);
Family family_from_name(std::string_view name);
std::string end_link_name(EndLink e);
EndLink end_link_from_name(std::string_view name);
std::string sim_mode_name(SimMode m);
SimMode sim_mode_from_name(std::string_view name);

/// Exceeding the state-size guards (full mode n <= 4, compact n <= 8).
struct SizeLimitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Coupling {
  int site = 0;  // 1-based
  std::string pointer_id;
  Axis axis = Axis::kX;
};

/// The two impulsive interaction layers plus readout bookkeeping. Couplings
/// within one layer act on disjoint registers and commute; only the
/// first-layer-before-second-layer ordering is physical.
struct Schedule {
  std::vector<Coupling> layer_t1;
  std::vector<Coupling> layer_t2;
  std::vector<PointerPair> links;
  std::vector<std::string> readout_order;
};

Schedule build_schedule(const ProtocolSpec& spec);

/// Register layout for the configured mode: spins s1..sn, then (full mode)
/// pointers q1..qn and qp1..qpn, or (compact mode) difference registers
/// d1..dn. Throws SizeLimitError past the mode's size guard.
LayoutPtr protocol_layout(const ProtocolSpec& spec);

std::string spin_id(int site);
std::string pointer_id(int site);
std::string primed_pointer_id(int site);
std::string difference_id(int link);

/// Spin-sector input: either one normalized state per site or a joint
/// 2^n-dimensional state.
class SpinInputs {
 public:
  static SpinInputs product(std::vector<std::vector<cplx>> site_states);
  static SpinInputs joint(std::vector<cplx> amplitudes);

  bool is_product() const { return !site_states_.empty(); }
  int num_sites() const;
  const std::vector<std::vector<cplx>>& site_states() const { return site_states_; }

  /// Joint spin state on the spins-only layout.
  PureState as_state(int n) const;

 private:
  std::vector<std::vector<cplx>> site_states_;
  std::vector<cplx> joint_;
};

/// Layout holding only the n spin registers.
LayoutPtr spins_layout(int n);

/// The intended result: input j ends up at site j+1 (site indices mod n).
/// For joint inputs this is the cyclic permutation unitary applied to them.
PureState target_state(const SpinInputs& inputs, int n);

/// |b_1 ... b_n> -> |b_n b_1 ... b_{n-1}> on a spins-only state.
PureState apply_cyclic_permutation(const PureState& spins);
Mat cyclic_permutation_matrix(int n);

/// Initial joint state: spin inputs at the sites, pointers in correlated
/// pairs (full) or difference registers in |0> (compact).
PureState initial_state(const ProtocolSpec& spec, const SpinInputs& inputs);

/// Applies both coupling layers of the schedule (t1 in site order, then t2).
PureState apply_couplings(const ProtocolSpec& spec, const Schedule& schedule,
                          const PureState& state);

struct OutcomeRecord {
  std::vector<int> raw_q;        // unprimed readouts, site order (full mode)
  std::vector<int> raw_q_prime;  // primed readouts, site order (full mode)
  std::vector<int> differences;  // d_j per link, always length n, values in Z4
};

struct TrialResult {
  OutcomeRecord outcome;
  double prob = 0.0;  // joint probability of the observed readout
  PureState spins_raw;
  std::optional<PureState> spins_corrected;
  double fidelity_raw = 0.0;
  std::optional<double> fidelity_corrected;
};

/// One sampled protocol run: initialization, both layers, pointer readout in
/// canonical order, classical differences, optional per-site Pauli
/// corrections, fidelity against the cyclic target.
TrialResult run_trial(const ProtocolSpec& spec, const SpinInputs& inputs,
                      RandomStream& rng, const CorrectionTable* table = nullptr);

/// run_trial restricted to compact mode (throws if the spec is not compact).
TrialResult run_compact(const ProtocolSpec& spec, const SpinInputs& inputs,
                        RandomStream& rng, const CorrectionTable* table = nullptr);

struct BranchReport {
  OutcomeRecord outcome;
  double prob = 0.0;
  PureState spins;  // normalized conditional spin state, uncorrected
  double fidelity_raw = 0.0;
  std::optional<double> fidelity_corrected;
};

/// Every non-negligible pointer readout combination with its probability,
/// difference vector, conditional spin state and fidelities. Probabilities
/// sum to 1 within 1e-9.
std::vector<BranchReport> enumerate_protocol_branches(
    const ProtocolSpec& spec, const SpinInputs& inputs,
    const CorrectionTable* table = nullptr);

struct DifferenceClass {
  std::vector<int> d;
  double prob = 0.0;
  PureState representative;  // conditional spin state of one member branch
  double max_internal_infidelity = 0.0;  // across member branches
};

/// Branches grouped by difference vector, ordered lexicographically by d.
std::vector<DifferenceClass> difference_classes(const std::vector<BranchReport>& reports);

/// Normalized conditional spin state and joint probability of the whole
/// difference class `d`, computed from one canonical readout projection
/// (every readout in a class yields the same conditional state).
std::pair<PureState, double> conditional_for_difference(const ProtocolSpec& spec,
                                                        const SpinInputs& inputs,
                                                        const std::vector<int>& d);

/// The conditional spin-sector operator K_d for difference class d, assembled
/// column-by-column from computational-basis inputs. Scale convention follows
/// the configured mode; the operator is meaningful up to a positive factor.
Mat branch_kraus(const ProtocolSpec& spec, const std::vector<int>& d);

/// All difference vectors in {0,2}^n, lexicographic order.
std::vector<std::vector<int>> all_difference_vectors(int n);

}  // namespace chainsim

#endif
