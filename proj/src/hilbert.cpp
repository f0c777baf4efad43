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

#include "chainsim/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace chainsim {

namespace {

constexpr double kUnitaryTol = 1e-12;
constexpr double kFactorNormTol = 1e-10;
constexpr double kBranchEps = 1e-14;

// Iterates the flat base indices of all registers except the listed ones
// (those digits held at 0), invoking fn(base) for each.
template <typename Fn>
void for_each_base(const RegisterLayout& layout, const std::vector<int>& skip,
                   Fn&& fn) {
  std::vector<std::size_t> strides;
  std::vector<int> dims;
  for (int k = 0; k < layout.num_registers(); ++k) {
    if (std::find(skip.begin(), skip.end(), k) != skip.end()) continue;
    strides.push_back(layout.stride(k));
    dims.push_back(layout.reg(k).dim);
  }
  const int m = static_cast<int>(dims.size());
  std::vector<int> odo(m, 0);
  std::size_t base = 0;
  while (true) {
    fn(base);
    int k = m - 1;
    while (k >= 0) {
      ++odo[k];
      base += strides[k];
      if (odo[k] < dims[k]) break;
      base -= static_cast<std::size_t>(dims[k]) * strides[k];
      odo[k] = 0;
      --k;
    }
    if (k < 0) break;
  }
}

}  // namespace

RegisterLayout::RegisterLayout(std::vector<RegisterInfo> registers)
    : regs_(std::move(registers)) {
  std::set<std::string> seen;
  for (const auto& r : regs_) {
    if (!seen.insert(r.id).second) {
      throw std::invalid_argument("duplicate register id: " + r.id);
    }
    const bool spin = r.role == RegisterRole::kSpin;
    if (spin && r.dim != 2) {
      throw std::invalid_argument("spin register must have dim 2: " + r.id);
    }
    if (!spin && r.dim != 4) {
      throw std::invalid_argument("pointer/difference register must have dim 4: " + r.id);
    }
  }
  strides_.assign(regs_.size(), 1);
  for (int k = static_cast<int>(regs_.size()) - 2; k >= 0; --k) {
    strides_[k] = strides_[k + 1] * regs_[k + 1].dim;
  }
  total_dim_ = regs_.empty() ? 1 : strides_[0] * regs_[0].dim;
}

int RegisterLayout::index_of(std::string_view id) const {
  for (int k = 0; k < num_registers(); ++k) {
    if (regs_[k].id == id) return k;
  }
  throw std::invalid_argument("unknown register: " + std::string(id));
}

bool RegisterLayout::has(std::string_view id) const {
  for (const auto& r : regs_) {
    if (r.id == id) return true;
  }
  return false;
}

RegisterLayout RegisterLayout::without(const std::vector<int>& positions) const {
  std::vector<RegisterInfo> kept;
  for (int k = 0; k < num_registers(); ++k) {
    if (std::find(positions.begin(), positions.end(), k) == positions.end()) {
      kept.push_back(regs_[k]);
    }
  }
  return RegisterLayout(std::move(kept));
}

bool RegisterLayout::same_shape(const RegisterLayout& other) const {
  if (num_registers() != other.num_registers()) return false;
  for (int k = 0; k < num_registers(); ++k) {
    if (regs_[k].dim != other.regs_[k].dim) return false;
  }
  return true;
}

LayoutPtr make_layout(std::vector<RegisterInfo> registers) {
  return std::make_shared<const RegisterLayout>(std::move(registers));
}

PureState::PureState(LayoutPtr layout, std::vector<cplx> amplitudes)
    : layout_(std::move(layout)), amps_(std::move(amplitudes)) {
  if (!layout_) throw std::invalid_argument("null layout");
  if (amps_.size() != layout_->total_dim()) {
    throw std::invalid_argument("amplitude vector size does not match layout");
  }
}

double PureState::norm_squared() const {
  double s = 0.0;
  for (const auto& a : amps_) s += std::norm(a);
  return s;
}

void PureState::renormalize() {
  const double n2 = norm_squared();
  if (n2 < 1e-24) throw std::runtime_error("cannot renormalize zero-norm state");
  const double inv = 1.0 / std::sqrt(n2);
  for (auto& a : amps_) a *= inv;
}

PureState product_state(LayoutPtr layout,
                        const std::vector<std::vector<cplx>>& factors) {
  if (static_cast<int>(factors.size()) != layout->num_registers()) {
    throw std::invalid_argument("one factor required per register");
  }
  std::vector<std::vector<cplx>> norm_factors = factors;
  for (int k = 0; k < layout->num_registers(); ++k) {
    auto& f = norm_factors[k];
    if (static_cast<int>(f.size()) != layout->reg(k).dim) {
      throw std::invalid_argument("factor dimension mismatch at register " +
                                  layout->reg(k).id);
    }
    double n2 = 0.0;
    for (const auto& a : f) n2 += std::norm(a);
    if (n2 < 1e-20) {
      throw std::invalid_argument("zero-norm factor at register " + layout->reg(k).id);
    }
    if (std::abs(n2 - 1.0) > kFactorNormTol) {
      throw std::invalid_argument("factor not normalized at register " +
                                  layout->reg(k).id);
    }
    const double inv = 1.0 / std::sqrt(n2);
    for (auto& a : f) a *= inv;
  }
  std::vector<cplx> amps(layout->total_dim());
  for (std::size_t idx = 0; idx < amps.size(); ++idx) {
    cplx v = 1.0;
    for (int k = 0; k < layout->num_registers(); ++k) {
      v *= norm_factors[k][layout->digit(idx, k)];
    }
    amps[idx] = v;
  }
  return PureState(std::move(layout), std::move(amps));
}

PureState apply_local(const PureState& state, const LocalUnitary& u) {
  const auto& layout = state.layout();
  const int k = layout.index_of(u.target);
  const int d = layout.reg(k).dim;
  if (u.matrix.rows() != d || u.matrix.cols() != d) {
    throw std::invalid_argument("unitary dimension does not match register " + u.target);
  }
  if (!is_unitary(u.matrix, kUnitaryTol)) {
    throw std::invalid_argument("matrix is not unitary for register " + u.target);
  }
  PureState out = state;
  auto& amps = out.mutable_amplitudes();
  const std::size_t stride = layout.stride(k);
  std::vector<cplx> buf(d);
  for_each_base(layout, {k}, [&](std::size_t base) {
    for (int i = 0; i < d; ++i) buf[i] = amps[base + i * stride];
    for (int i = 0; i < d; ++i) {
      cplx acc = 0.0;
      for (int j = 0; j < d; ++j) acc += u.matrix(i, j) * buf[j];
      amps[base + i * stride] = acc;
    }
  });
  return out;
}

PureState apply_two_register(const PureState& state, std::string_view target_a,
                             std::string_view target_b, const Mat& matrix) {
  const auto& layout = state.layout();
  const int ka = layout.index_of(target_a);
  const int kb = layout.index_of(target_b);
  if (ka == kb) throw std::invalid_argument("two-register op needs distinct registers");
  const int da = layout.reg(ka).dim;
  const int db = layout.reg(kb).dim;
  const int dd = da * db;
  if (matrix.rows() != dd || matrix.cols() != dd) {
    throw std::invalid_argument("two-register matrix dimension mismatch");
  }
  if (!is_unitary(matrix, kUnitaryTol)) {
    throw std::invalid_argument("two-register matrix is not unitary");
  }
  PureState out = state;
  auto& amps = out.mutable_amplitudes();
  const std::size_t sa = layout.stride(ka);
  const std::size_t sb = layout.stride(kb);
  std::vector<cplx> buf(dd);
  // Row-major copy of the matrix for a tight inner loop.
  std::vector<cplx> m(dd * dd);
  for (int i = 0; i < dd; ++i)
    for (int j = 0; j < dd; ++j) m[i * dd + j] = matrix(i, j);
  for_each_base(layout, {ka, kb}, [&](std::size_t base) {
    for (int i = 0; i < da; ++i)
      for (int j = 0; j < db; ++j) buf[i * db + j] = amps[base + i * sa + j * sb];
    for (int i = 0; i < dd; ++i) {
      cplx acc = 0.0;
      const cplx* row = &m[static_cast<std::size_t>(i) * dd];
      for (int j = 0; j < dd; ++j) acc += row[j] * buf[j];
      amps[base + (i / db) * sa + (i % db) * sb] = acc;
    }
  });
  return out;
}

PureState apply_controlled_shift(const PureState& state,
                                 std::string_view control, Axis axis,
                                 std::string_view pointer, int steps_for_plus) {
  const auto& layout = state.layout();
  const int kc = layout.index_of(control);
  const int kp = layout.index_of(pointer);
  if (layout.reg(kc).role != RegisterRole::kSpin) {
    throw std::invalid_argument("controlled shift requires a spin control: " +
                                std::string(control));
  }
  if (layout.reg(kp).dim != 4) {
    throw std::invalid_argument("controlled shift requires a dim-4 pointer: " +
                                std::string(pointer));
  }
  return apply_two_register(state, control, pointer,
                            controlled_shift_matrix(axis, steps_for_plus));
}

std::vector<double> outcome_probabilities(const PureState& state,
                                          std::string_view target) {
  const auto& layout = state.layout();
  const int k = layout.index_of(target);
  const int d = layout.reg(k).dim;
  std::vector<double> probs(d, 0.0);
  const auto& amps = state.amplitudes();
  for (std::size_t idx = 0; idx < amps.size(); ++idx) {
    probs[layout.digit(idx, k)] += std::norm(amps[idx]);
  }
  return probs;
}

MeasureResult measure_register(const PureState& state, std::string_view target,
                               RandomStream& rng) {
  const auto& layout = state.layout();
  const int k = layout.index_of(target);
  const int d = layout.reg(k).dim;
  const auto probs = outcome_probabilities(state, target);
  double total = 0.0;
  for (double p : probs) total += p;
  if (total < 1e-18) throw std::runtime_error("measurement on zero-norm state");
  const double r = rng.uniform() * total;
  int outcome = d - 1;
  double acc = 0.0;
  for (int q = 0; q < d; ++q) {
    acc += probs[q];
    if (r < acc) {
      outcome = q;
      break;
    }
  }
  // Walk back over trailing zero-probability outcomes.
  while (outcome > 0 && probs[outcome] <= 0.0) --outcome;
  PureState post = state;
  auto& amps = post.mutable_amplitudes();
  const double inv = 1.0 / std::sqrt(probs[outcome]);
  for (std::size_t idx = 0; idx < amps.size(); ++idx) {
    if (layout.digit(idx, k) == outcome) {
      amps[idx] *= inv;
    } else {
      amps[idx] = 0.0;
    }
  }
  return MeasureResult{outcome, probs[outcome] / total, std::move(post)};
}

namespace {

// Unnormalized slice with register k projected onto `outcome` and removed.
PureState slice_register(const PureState& state, int k, int outcome) {
  const auto& layout = state.layout();
  auto reduced = std::make_shared<const RegisterLayout>(layout.without({k}));
  std::vector<cplx> amps(reduced->total_dim());
  const std::size_t stride = layout.stride(k);
  const std::size_t inner = stride;                      // block below register k
  const std::size_t outer = layout.total_dim() / (stride * layout.reg(k).dim);
  const auto& src = state.amplitudes();
  std::size_t dst = 0;
  for (std::size_t o = 0; o < outer; ++o) {
    const std::size_t base = o * stride * layout.reg(k).dim + outcome * stride;
    for (std::size_t i = 0; i < inner; ++i) amps[dst++] = src[base + i];
  }
  return PureState(std::move(reduced), std::move(amps));
}

// The recursion keeps slices unnormalized, so a leaf's squared norm is the
// joint probability of its outcome vector (the root has unit norm).
void enumerate_rec(const PureState& state, const std::vector<std::string>& targets,
                   std::size_t next, std::vector<int>& outcomes,
                   std::vector<Branch>& out) {
  if (next == targets.size()) {
    const double p = state.norm_squared();
    PureState cond = state;
    cond.renormalize();
    out.push_back(Branch{outcomes, p, std::move(cond)});
    return;
  }
  const int k = state.layout().index_of(targets[next]);
  const int d = state.layout().reg(k).dim;
  for (int q = 0; q < d; ++q) {
    PureState sliced = slice_register(state, k, q);
    if (sliced.norm_squared() <= kBranchEps) continue;
    outcomes.push_back(q);
    enumerate_rec(sliced, targets, next + 1, outcomes, out);
    outcomes.pop_back();
  }
}

}  // namespace

std::vector<Branch> enumerate_branches(const PureState& state,
                                       const std::vector<std::string>& targets) {
  std::set<std::string> unique(targets.begin(), targets.end());
  if (unique.size() != targets.size()) {
    throw std::invalid_argument("duplicate measurement targets");
  }
  for (const auto& t : targets) state.layout().index_of(t);  // existence check
  std::vector<Branch> out;
  std::vector<int> outcomes;
  enumerate_rec(state, targets, 0, outcomes, out);
  return out;
}

PureState remove_collapsed(const PureState& state,
                           const std::vector<std::pair<std::string, int>>& assignments) {
  PureState cur = state;
  for (const auto& [id, outcome] : assignments) {
    const int k = cur.layout().index_of(id);
    PureState sliced = slice_register(cur, k, outcome);
    const double kept = sliced.norm_squared();
    const double total = cur.norm_squared();
    if (std::abs(kept - total) > 1e-9 * std::max(1.0, total)) {
      throw std::invalid_argument("register " + id +
                                  " is not collapsed onto outcome " + std::to_string(outcome));
    }
    cur = std::move(sliced);
  }
  return cur;
}

PureState project_registers(const PureState& state,
                            const std::vector<std::pair<std::string, int>>& assignments) {
  PureState cur = state;
  for (const auto& [id, outcome] : assignments) {
    const int k = cur.layout().index_of(id);
    cur = slice_register(cur, k, outcome);
  }
  return cur;
}

DensityMatrix reduced_density(const PureState& state,
                              const std::vector<std::string>& keep) {
  if (keep.empty()) throw std::invalid_argument("keep set must be non-empty");
  const auto& layout = state.layout();
  std::vector<int> positions;
  for (const auto& id : keep) positions.push_back(layout.index_of(id));
  std::sort(positions.begin(), positions.end());
  positions.erase(std::unique(positions.begin(), positions.end()), positions.end());

  std::vector<int> dims;
  std::vector<std::size_t> strides;
  std::size_t keep_dim = 1;
  for (int k : positions) {
    dims.push_back(layout.reg(k).dim);
    strides.push_back(layout.stride(k));
    keep_dim *= layout.reg(k).dim;
  }
  Mat rho = Mat::Zero(keep_dim, keep_dim);
  const auto& amps = state.amplitudes();
  std::vector<cplx> v(keep_dim);
  // Enumerate the traced-out configuration; gather the kept-subspace vector.
  std::vector<std::size_t> offsets(keep_dim, 0);
  for (std::size_t r = 0; r < keep_dim; ++r) {
    std::size_t rem = r, off = 0;
    for (int i = static_cast<int>(positions.size()) - 1; i >= 0; --i) {
      off += (rem % dims[i]) * strides[i];
      rem /= dims[i];
    }
    offsets[r] = off;
  }
  for_each_base(layout, positions, [&](std::size_t base) {
    for (std::size_t r = 0; r < keep_dim; ++r) v[r] = amps[base + offsets[r]];
    for (std::size_t r = 0; r < keep_dim; ++r) {
      if (v[r] == cplx(0.0, 0.0)) continue;
      for (std::size_t c = 0; c < keep_dim; ++c) {
        rho(r, c) += v[r] * std::conj(v[c]);
      }
    }
  });
  return DensityMatrix{std::move(dims), std::move(rho)};
}

double fidelity(const PureState& a, const PureState& b) {
  return std::norm(inner_product(a, b));
}

cplx inner_product(const PureState& a, const PureState& b) {
  if (!a.layout().same_shape(b.layout())) {
    throw std::invalid_argument("layout mismatch in inner product");
  }
  cplx acc = 0.0;
  const auto& va = a.amplitudes();
  const auto& vb = b.amplitudes();
  for (std::size_t i = 0; i < va.size(); ++i) acc += std::conj(va[i]) * vb[i];
  return acc;
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.matrix.rows() != b.matrix.rows()) {
    throw std::invalid_argument("density matrix dimension mismatch");
  }
  Eigen::SelfAdjointEigenSolver<Mat> solver(a.matrix - b.matrix);
  return 0.5 * solver.eigenvalues().cwiseAbs().sum();
}

double diagonal_uniform_deviation(const DensityMatrix& rho) {
  const double uniform = 1.0 / static_cast<double>(rho.matrix.rows());
  double worst = 0.0;
  for (Eigen::Index q = 0; q < rho.matrix.rows(); ++q) {
    worst = std::max(worst, std::abs(rho.matrix(q, q).real() - uniform));
    worst = std::max(worst, std::abs(rho.matrix(q, q).imag()));
  }
  return worst;
}

}  // namespace chainsim
