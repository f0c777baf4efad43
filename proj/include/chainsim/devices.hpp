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

#ifndef CHAINSIM_DEVICES_HPP
#define CHAINSIM_DEVICES_HPP

#include <string>

#include "chainsim/hilbert.hpp"

namespace chainsim {

/// Measuring devices: Z4 pointer pairs with correlated initialization, the
/// impulsive spin-pointer couplings, and mod-4 readout arithmetic. The pair
/// for link j holds the unprimed pointer at site j (coupled in the first
/// layer) and the primed pointer at site j+1 (coupled in the second layer),
/// with site indices wrapping modulo the chain length.

/// An integer mod 4.
class Z4 {
 public:
  Z4() = default;
  explicit Z4(int value) : v_(((value % 4) + 4) % 4) {}
  int value() const { return v_; }
  friend bool operator==(Z4 a, Z4 b) { return a.v_ == b.v_; }

 private:
  int v_ = 0;
};

struct PointerPair {
  int link = 0;         // 1-based link index
  std::string unprimed;  // pointer coupled in the first layer
  std::string primed;    // pointer coupled in the second layer
  Axis axis = Axis::kX;
};

/// Sets the two (fiducial |0>) pointers of `pair` to the correlated state
/// (1/2) sum_q |q>|q>, leaving every other register untouched. Throws if
/// either register has support outside |0>.
PureState init_entangled_pair(const PureState& state, const PointerPair& pair);

/// One impulsive coupling: the pointer is shifted by the sigma_axis
/// eigenvalue of the spin (one step per unit eigenvalue).
PureState couple(const PureState& state, std::string_view spin,
                 std::string_view pointer, Axis axis);

/// (q - q_prime) mod 4: classical post-processing of two local readouts.
Z4 difference_mod4(Z4 q, Z4 q_prime);

}  // namespace chainsim

#endif
