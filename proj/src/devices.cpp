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

#include "chainsim/devices.hpp"

#include <cmath>
#include <stdexcept>

namespace chainsim {

PureState init_entangled_pair(const PureState& state, const PointerPair& pair) {
  const auto& layout = state.layout();
  const int ka = layout.index_of(pair.unprimed);
  const int kb = layout.index_of(pair.primed);
  if (ka == kb) throw std::invalid_argument("pointer pair registers must differ");
  if (layout.reg(ka).dim != 4 || layout.reg(kb).dim != 4) {
    throw std::invalid_argument("pointer pair registers must have dim 4");
  }
  PureState out = state;
  auto& amps = out.mutable_amplitudes();
  const std::size_t sa = layout.stride(ka);
  const std::size_t sb = layout.stride(kb);
  for (std::size_t idx = 0; idx < amps.size(); ++idx) {
    if (layout.digit(idx, ka) == 0 && layout.digit(idx, kb) == 0) continue;
    if (std::norm(amps[idx]) > 1e-24) {
      throw std::invalid_argument("pointer pair registers are not in the fiducial |0> state");
    }
  }
  for (std::size_t idx = 0; idx < amps.size(); ++idx) {
    if (layout.digit(idx, ka) != 0 || layout.digit(idx, kb) != 0) continue;
    const cplx base_amp = amps[idx] * 0.5;
    for (int q = 0; q < 4; ++q) {
      amps[idx + q * sa + q * sb] = base_amp;
    }
  }
  return out;
}

PureState couple(const PureState& state, std::string_view spin,
                 std::string_view pointer, Axis axis) {
  return apply_controlled_shift(state, spin, axis, pointer, 1);
}

Z4 difference_mod4(Z4 q, Z4 q_prime) { return Z4(q.value() - q_prime.value()); }

}  // namespace chainsim
