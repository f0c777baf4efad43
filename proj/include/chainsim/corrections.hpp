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

#ifndef CHAINSIM_CORRECTIONS_HPP
#define CHAINSIM_CORRECTIONS_HPP

#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "chainsim/protocol.hpp"

namespace chainsim {

/// Per-site correction rotations. The protocol narrative leaves the concrete
/// rotations open; this module derives them by brute-force search over
/// per-site Pauli operators, checked at the channel level: a label vector is
/// accepted for difference class d exactly when it makes the corrected branch
/// operator proportional to the cyclic permutation unitary.

enum class PauliLabel : char { kI = 'I', kX = 'X', kY = 'Y', kZ = 'Z' };

char pauli_label_name(PauliLabel label);
PauliLabel pauli_label_from_name(char name);
Mat pauli_label_matrix(PauliLabel label);

/// Raised when some difference class admits no per-site Pauli correction.
/// This means the Pauli group is too small for that protocol configuration;
/// the failure is surfaced, never silently patched.
class NoPauliCorrectionError : public std::runtime_error {
 public:
  NoPauliCorrectionError(std::vector<int> d, const std::string& fingerprint);
  const std::vector<int>& difference() const { return d_; }

 private:
  std::vector<int> d_;
};

class CorrectionTable {
 public:
  CorrectionTable(int n, Family family, Axis end_axis);

  int n() const { return n_; }
  Family family() const { return family_; }
  Axis end_axis() const { return end_axis_; }

  bool matches(const ProtocolSpec& spec) const;

  void set_entry(const std::vector<int>& d, std::vector<PauliLabel> labels);
  const std::vector<PauliLabel>& entry(const std::vector<int>& d) const;
  const std::map<std::vector<int>, std::vector<PauliLabel>>& entries() const {
    return entries_;
  }

 private:
  int n_;
  Family family_;
  Axis end_axis_;
  std::map<std::vector<int>, std::vector<PauliLabel>> entries_;
};

/// Applies the per-site Pauli labels to a spins-only state.
PureState apply_correction(const PureState& spins, const std::vector<PauliLabel>& labels);

/// Brute-force derivation over all 4^n per-site label vectors per difference
/// class, deterministic tie-break: lexicographically smallest in I < X < Y < Z.
/// Throws NoPauliCorrectionError if a class has no Pauli correction.
CorrectionTable derive_table(const ProtocolSpec& spec);

struct ValidationReport {
  bool pass = false;
  double worst_infidelity = 0.0;
  std::vector<int> worst_d;
  std::string worst_input;
  int cases_checked = 0;
};

/// Checks corrected fidelity >= 1 - 1e-9 for every difference class on the
/// process-complete input set {|0>,|1>,|+>,|+i>}^n, 20 seeded random product
/// inputs, and 5 seeded random entangled inputs.
ValidationReport validate_table(const ProtocolSpec& spec, const CorrectionTable& table,
                                std::uint64_t seed = 0);

void write_table(const CorrectionTable& table, std::ostream& out);
CorrectionTable read_table(std::istream& in);
void write_table_file(const CorrectionTable& table, const std::string& path);
CorrectionTable read_table_file(const std::string& path);

}  // namespace chainsim

#endif
