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

#ifndef CHAINSIM_RAND_HPP
#define CHAINSIM_RAND_HPP

#include <cstdint>
#include <random>
#include <vector>

#include "chainsim/linalg.hpp"

namespace chainsim {

/// Seeded random stream with a pinned uniform/gaussian derivation so that a
/// given seed reproduces the same values on every platform. mt19937_64 output
/// is converted to doubles via its top 53 bits; gaussians use Box-Muller.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform in [0, 1).
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double gaussian();

  /// Haar-random single-qubit state (two complex gaussians, normalized).
  std::vector<cplx> random_qubit();

  /// Haar-random pure state of the given dimension.
  std::vector<cplx> random_state(std::size_t dim);

 private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace chainsim

#endif
