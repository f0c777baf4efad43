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

#ifndef CHAINSIM_HILBERT_HPP
#define CHAINSIM_HILBERT_HPP

#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "chainsim/linalg.hpp"
#include "chainsim/rand.hpp"

namespace chainsim {

/// Dense pure-state engine over heterogeneous tensor registers: qubit spins
/// (dim 2) and Z4 pointer/difference registers (dim 4). Amplitudes are stored
/// row-major in register order (register 0 most significant). States are
/// value types; operations return new states, so a state already handed out
/// is never mutated and independent trials can run on separate threads.

enum class RegisterRole { kSpin, kPointer, kPointerPrimed, kDifference };

struct RegisterInfo {
  std::string id;
  int dim;
  RegisterRole role;
};

class RegisterLayout {
 public:
  /// Validates: dims in {2,4}, spin registers dim 2, pointer/difference
  /// registers dim 4, ids unique. Throws std::invalid_argument.
  explicit RegisterLayout(std::vector<RegisterInfo> registers);

  int num_registers() const { return static_cast<int>(regs_.size()); }
  const RegisterInfo& reg(int k) const { return regs_.at(k); }
  std::size_t stride(int k) const { return strides_.at(k); }
  std::size_t total_dim() const { return total_dim_; }

  /// Position of the register with the given id; throws std::invalid_argument
  /// if absent.
  int index_of(std::string_view id) const;
  bool has(std::string_view id) const;

  /// Layout with the registers at the given positions removed.
  RegisterLayout without(const std::vector<int>& positions) const;

  /// Digit of a flat amplitude index at register position k.
  int digit(std::size_t flat_index, int k) const {
    return static_cast<int>((flat_index / strides_[k]) % regs_[k].dim);
  }

  bool same_shape(const RegisterLayout& other) const;

 private:
  std::vector<RegisterInfo> regs_;
  std::vector<std::size_t> strides_;
  std::size_t total_dim_ = 1;
};

using LayoutPtr = std::shared_ptr<const RegisterLayout>;

LayoutPtr make_layout(std::vector<RegisterInfo> registers);

class PureState {
 public:
  PureState(LayoutPtr layout, std::vector<cplx> amplitudes);

  const RegisterLayout& layout() const { return *layout_; }
  const LayoutPtr& layout_ptr() const { return layout_; }
  const std::vector<cplx>& amplitudes() const { return amps_; }
  std::vector<cplx>& mutable_amplitudes() { return amps_; }

  double norm_squared() const;
  /// Scales amplitudes to unit norm; throws on numerically zero norm.
  void renormalize();

 private:
  LayoutPtr layout_;
  std::vector<cplx> amps_;
};

/// A square unitary applied to one register.
struct LocalUnitary {
  Mat matrix;
  std::string target;
};

/// Reduced state over a subset of registers (`dims` in layout order).
struct DensityMatrix {
  std::vector<int> dims;
  Mat matrix;
};

/// Ordered tensor product of per-register factors. Each factor must have the
/// register's dimension and be normalized within 1e-10 (it is renormalized
/// exactly internally).
PureState product_state(LayoutPtr layout,
                        const std::vector<std::vector<cplx>>& factors);

/// I x ... x U x ... x I. The matrix must be unitary within 1e-12.
PureState apply_local(const PureState& state, const LocalUnitary& u);

/// Unitary on two distinct registers; `matrix` acts on the combined
/// (target_a, target_b) index, row-major.
PureState apply_two_register(const PureState& state, std::string_view target_a,
                             std::string_view target_b, const Mat& matrix);

/// In the sigma_axis eigenbasis of the control spin, eigenvalue s in {+1,-1}
/// shifts the dim-4 pointer by s*steps_for_plus mod 4.
PureState apply_controlled_shift(const PureState& state,
                                 std::string_view control, Axis axis,
                                 std::string_view pointer, int steps_for_plus);

struct MeasureResult {
  int outcome;
  double prob;
  PureState post;  // renormalized projection, measured register kept
};

/// Projective measurement of one register in its computational basis; outcome
/// sampled with Born probabilities from `rng`.
MeasureResult measure_register(const PureState& state, std::string_view target,
                               RandomStream& rng);

/// Outcome probabilities for measuring `target` in the computational basis.
std::vector<double> outcome_probabilities(const PureState& state,
                                          std::string_view target);

struct Branch {
  std::vector<int> outcomes;  // one outcome per target, in target order
  double prob;
  PureState conditional;  // normalized, with the measured registers removed
};

/// Exhaustive enumeration of joint measurement results on the given targets.
/// Branches with probability below 1e-14 are omitted; the remaining
/// probabilities sum to 1 within 1e-10. Conditionals live on the layout with
/// the target registers removed (an empty layout is a single amplitude).
std::vector<Branch> enumerate_branches(const PureState& state,
                                       const std::vector<std::string>& targets);

/// Removes registers that are already collapsed onto the given computational
/// basis states, keeping the rest of the state unchanged. Throws if a listed
/// register has support elsewhere.
PureState remove_collapsed(const PureState& state,
                           const std::vector<std::pair<std::string, int>>& assignments);

/// Unnormalized projection: the listed registers are projected onto the given
/// computational basis outcomes and removed. The squared norm of the result
/// is the probability of that joint outcome.
PureState project_registers(const PureState& state,
                            const std::vector<std::pair<std::string, int>>& assignments);

/// Partial trace down to the `keep` registers (result dims in layout order).
DensityMatrix reduced_density(const PureState& state,
                              const std::vector<std::string>& keep);

/// |<a|b>|^2. Layouts must have identical register dims.
double fidelity(const PureState& a, const PureState& b);

cplx inner_product(const PureState& a, const PureState& b);

/// Trace distance (1/2)||a - b||_1 between two density matrices of equal dims.
double trace_distance(const DensityMatrix& a, const DensityMatrix& b);

/// max_q |rho_qq - 1/dim|: deviation of the measurement marginal from uniform.
double diagonal_uniform_deviation(const DensityMatrix& rho);

}  // namespace chainsim

#endif
