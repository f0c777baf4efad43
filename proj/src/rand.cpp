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

#include "chainsim/rand.hpp"

#include <cmath>

namespace chainsim {

double RandomStream::gaussian() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  const double mag = std::sqrt(-2.0 * std::log(u1));
  constexpr double kTwoPi = 6.283185307179586476925286766559;
  spare_ = mag * std::sin(kTwoPi * u2);
  have_spare_ = true;
  return mag * std::cos(kTwoPi * u2);
}

std::vector<cplx> RandomStream::random_qubit() { return random_state(2); }

std::vector<cplx> RandomStream::random_state(std::size_t dim) {
  std::vector<cplx> v(dim);
  double norm_sq = 0.0;
  for (auto& a : v) {
    a = cplx(gaussian(), gaussian());
    norm_sq += std::norm(a);
  }
  const double inv = 1.0 / std::sqrt(norm_sq);
  for (auto& a : v) a *= inv;
  return v;
}

}  // namespace chainsim
