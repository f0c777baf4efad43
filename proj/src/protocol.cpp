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

#include "chainsim/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

#include "chainsim/corrections.hpp"

namespace chainsim {

namespace {
constexpr int kMaxFullN = 4;
constexpr int kMaxCompactN = 8;
}

void ProtocolSpec::validate() const {
  if (n < 2) throw std::invalid_argument("protocol requires n >= 2");
  if (family == Family::kTwoWayVaa && n != 2) {
    throw std::invalid_argument("family two-way-vaa requires n = 2");
  }
}

Axis ProtocolSpec::end_axis() const {
  switch (end_link) {
    case EndLink::kZ: return Axis::kZ;
    case EndLink::kX: return Axis::kX;
    case EndLink::kY: return Axis::kY;
    case EndLink::kAuto: return (n % 2 == 1) ? Axis::kX : Axis::kY;
  }
  throw std::logic_error("bad end link");
}

Axis ProtocolSpec::link_axis(int j) const {
  if (j < 1 || j > n) throw std::invalid_argument("link index out of range");
  if (family == Family::kTwoWayVaa) return j == 1 ? Axis::kX : Axis::kY;
  if (j == n) return end_axis();
  return (j % 2 == 1) ? Axis::kX : Axis::kY;
}

std::string ProtocolSpec::fingerprint() const {
  std::ostringstream os;
  os << "n=" << n << " family=" << family_name(family);
  if (family == Family::kChain) {
    os << " end-link=" << axis_name(end_axis());
  }
  return os.str();
}

std::string family_name(Family family) {
  return family == Family::kTwoWayVaa ? "two-way-vaa" : "chain";
}

Family family_from_name(std::string_view name) {
  if (name == "two-way-vaa") return Family::kTwoWayVaa;
  if (name == "chain") return Family::kChain;
  throw std::invalid_argument("unknown family: " + std::string(name));
}

std::string end_link_name(EndLink e) {
  switch (e) {
    case EndLink::kZ: return "z";
    case EndLink::kX: return "x";
    case EndLink::kY: return "y";
    case EndLink::kAuto: return "auto";
  }
  throw std::logic_error("bad end link");
}

EndLink end_link_from_name(std::string_view name) {
  if (name == "z") return EndLink::kZ;
  if (name == "x") return EndLink::kX;
  if (name == "y") return EndLink::kY;
  if (name == "auto") return EndLink::kAuto;
  throw std::invalid_argument("unknown end-link: " + std::string(name));
}

std::string sim_mode_name(SimMode m) {
  return m == SimMode::kFull ? "full" : "compact";
}

SimMode sim_mode_from_name(std::string_view name) {
  if (name == "full") return SimMode::kFull;
  if (name == "compact") return SimMode::kCompact;
  throw std::invalid_argument("unknown mode: " + std::string(name));
}

std::string spin_id(int site) { return "s" + std::to_string(site); }
std::string pointer_id(int site) { return "q" + std::to_string(site); }
std::string primed_pointer_id(int site) { return "qp" + std::to_string(site); }
std::string difference_id(int link) { return "d" + std::to_string(link); }

Schedule build_schedule(const ProtocolSpec& spec) {
  spec.validate();
  Schedule sched;
  const bool compact = spec.sim_mode == SimMode::kCompact;
  for (int j = 1; j <= spec.n; ++j) {
    const Axis axis = spec.link_axis(j);
    const int next_site = (j % spec.n) + 1;
    const std::string t1_reg = compact ? difference_id(j) : pointer_id(j);
    const std::string t2_reg = compact ? difference_id(j) : primed_pointer_id(next_site);
    sched.layer_t1.push_back(Coupling{j, t1_reg, axis});
    sched.layer_t2.push_back(Coupling{next_site, t2_reg, axis});
    sched.links.push_back(
        PointerPair{j, pointer_id(j), primed_pointer_id(next_site), axis});
  }
  std::sort(sched.layer_t2.begin(), sched.layer_t2.end(),
            [](const Coupling& a, const Coupling& b) { return a.site < b.site; });
  if (compact) {
    for (int j = 1; j <= spec.n; ++j) sched.readout_order.push_back(difference_id(j));
  } else {
    for (int j = 1; j <= spec.n; ++j) sched.readout_order.push_back(pointer_id(j));
    for (int j = 1; j <= spec.n; ++j) sched.readout_order.push_back(primed_pointer_id(j));
  }
  return sched;
}

LayoutPtr protocol_layout(const ProtocolSpec& spec) {
  spec.validate();
  std::vector<RegisterInfo> regs;
  for (int j = 1; j <= spec.n; ++j) {
    regs.push_back(RegisterInfo{spin_id(j), 2, RegisterRole::kSpin});
  }
  if (spec.sim_mode == SimMode::kFull) {
    if (spec.n > kMaxFullN) {
      throw SizeLimitError("full mode supports n <= " + std::to_string(kMaxFullN) +
                           " (state dimension 2^(5n)); use compact mode");
    }
    for (int j = 1; j <= spec.n; ++j) {
      regs.push_back(RegisterInfo{pointer_id(j), 4, RegisterRole::kPointer});
    }
    for (int j = 1; j <= spec.n; ++j) {
      regs.push_back(RegisterInfo{primed_pointer_id(j), 4, RegisterRole::kPointerPrimed});
    }
  } else {
    if (spec.n > kMaxCompactN) {
      throw SizeLimitError("compact mode supports n <= " + std::to_string(kMaxCompactN));
    }
    for (int j = 1; j <= spec.n; ++j) {
      regs.push_back(RegisterInfo{difference_id(j), 4, RegisterRole::kDifference});
    }
  }
  return make_layout(std::move(regs));
}

LayoutPtr spins_layout(int n) {
  std::vector<RegisterInfo> regs;
  for (int j = 1; j <= n; ++j) {
    regs.push_back(RegisterInfo{spin_id(j), 2, RegisterRole::kSpin});
  }
  return make_layout(std::move(regs));
}

SpinInputs SpinInputs::product(std::vector<std::vector<cplx>> site_states) {
  if (site_states.empty()) throw std::invalid_argument("no input states");
  for (const auto& s : site_states) {
    if (s.size() != 2) throw std::invalid_argument("site inputs must be qubit states");
  }
  SpinInputs in;
  in.site_states_ = std::move(site_states);
  return in;
}

SpinInputs SpinInputs::joint(std::vector<cplx> amplitudes) {
  std::size_t dim = amplitudes.size();
  if (dim < 4 || (dim & (dim - 1)) != 0) {
    throw std::invalid_argument("joint input dimension must be 2^n with n >= 2");
  }
  SpinInputs in;
  in.joint_ = std::move(amplitudes);
  return in;
}

int SpinInputs::num_sites() const {
  if (is_product()) return static_cast<int>(site_states_.size());
  int n = 0;
  for (std::size_t d = joint_.size(); d > 1; d >>= 1) ++n;
  return n;
}

PureState SpinInputs::as_state(int n) const {
  if (num_sites() != n) throw std::invalid_argument("input site count mismatch");
  if (is_product()) {
    return product_state(spins_layout(n), site_states_);
  }
  PureState st(spins_layout(n), joint_);
  st.renormalize();
  return st;
}

PureState target_state(const SpinInputs& inputs, int n) {
  if (inputs.is_product()) {
    std::vector<std::vector<cplx>> rotated(inputs.site_states().size());
    const auto& site_states = inputs.site_states();
    for (std::size_t j = 0; j < site_states.size(); ++j) {
      rotated[(j + 1) % site_states.size()] = site_states[j];
    }
    return product_state(spins_layout(n), rotated);
  }
  return apply_cyclic_permutation(inputs.as_state(n));
}

PureState apply_cyclic_permutation(const PureState& spins) {
  const auto& layout = spins.layout();
  const int n = layout.num_registers();
  for (int k = 0; k < n; ++k) {
    if (layout.reg(k).dim != 2) {
      throw std::invalid_argument("cyclic permutation expects a spins-only state");
    }
  }
  const auto& src = spins.amplitudes();
  std::vector<cplx> dst(src.size());
  for (std::size_t idx = 0; idx < src.size(); ++idx) {
    const std::size_t perm = (idx >> 1) | ((idx & 1) << (n - 1));
    dst[perm] = src[idx];
  }
  return PureState(spins.layout_ptr(), std::move(dst));
}

Mat cyclic_permutation_matrix(int n) {
  const std::size_t dim = std::size_t{1} << n;
  Mat u = Mat::Zero(dim, dim);
  for (std::size_t idx = 0; idx < dim; ++idx) {
    const std::size_t perm = (idx >> 1) | ((idx & 1) << (n - 1));
    u(perm, idx) = 1.0;
  }
  return u;
}

PureState initial_state(const ProtocolSpec& spec, const SpinInputs& inputs) {
  auto layout = protocol_layout(spec);
  const int n = spec.n;
  if (inputs.num_sites() != n) throw std::invalid_argument("input site count mismatch");
  PureState state = [&] {
    if (inputs.is_product()) {
      std::vector<std::vector<cplx>> factors = inputs.site_states();
      const std::vector<cplx> fiducial{1.0, 0.0, 0.0, 0.0};
      for (int k = n; k < layout->num_registers(); ++k) factors.push_back(fiducial);
      return product_state(layout, factors);
    }
    PureState spins = inputs.as_state(n);
    const std::size_t device_dim = layout->total_dim() >> n;
    std::vector<cplx> amps(layout->total_dim(), 0.0);
    for (std::size_t b = 0; b < spins.amplitudes().size(); ++b) {
      amps[b * device_dim] = spins.amplitudes()[b];
    }
    return PureState(layout, std::move(amps));
  }();
  if (spec.sim_mode == SimMode::kFull) {
    const Schedule sched = build_schedule(spec);
    for (const auto& link : sched.links) {
      state = init_entangled_pair(state, link);
    }
  }
  return state;
}

PureState apply_couplings(const ProtocolSpec& spec, const Schedule& schedule,
                          const PureState& state) {
  PureState cur = state;
  for (const auto& c : schedule.layer_t1) {
    cur = apply_controlled_shift(cur, spin_id(c.site), c.axis, c.pointer_id, 1);
  }
  const int t2_steps = spec.sim_mode == SimMode::kCompact ? -1 : 1;
  for (const auto& c : schedule.layer_t2) {
    cur = apply_controlled_shift(cur, spin_id(c.site), c.axis, c.pointer_id, t2_steps);
  }
  return cur;
}

namespace {

OutcomeRecord outcomes_to_record(const ProtocolSpec& spec,
                                 const std::vector<int>& outcomes) {
  OutcomeRecord rec;
  const int n = spec.n;
  if (spec.sim_mode == SimMode::kCompact) {
    rec.differences = outcomes;
    return rec;
  }
  rec.raw_q.assign(outcomes.begin(), outcomes.begin() + n);
  rec.raw_q_prime.assign(outcomes.begin() + n, outcomes.end());
  rec.differences.resize(n);
  for (int j = 1; j <= n; ++j) {
    const int partner_site = (j % n) + 1;
    rec.differences[j - 1] =
        difference_mod4(Z4(rec.raw_q[j - 1]), Z4(rec.raw_q_prime[partner_site - 1]))
            .value();
  }
  return rec;
}

void attach_corrections(const ProtocolSpec& spec, const PureState& target,
                        const OutcomeRecord& rec, const PureState& spins,
                        const CorrectionTable* table,
                        std::optional<PureState>* corrected,
                        std::optional<double>* fidelity_corrected) {
  if (table == nullptr) return;
  if (!table->matches(spec)) {
    throw std::invalid_argument("correction table fingerprint does not match protocol");
  }
  PureState fixed = apply_correction(spins, table->entry(rec.differences));
  *fidelity_corrected = fidelity(fixed, target);
  if (corrected != nullptr) *corrected = std::move(fixed);
}

}  // namespace

TrialResult run_trial(const ProtocolSpec& spec, const SpinInputs& inputs,
                      RandomStream& rng, const CorrectionTable* table) {
  const Schedule sched = build_schedule(spec);
  PureState state = apply_couplings(spec, sched, initial_state(spec, inputs));

  std::vector<int> outcomes;
  double joint_prob = 1.0;
  for (const auto& reg : sched.readout_order) {
    MeasureResult m = measure_register(state, reg, rng);
    outcomes.push_back(m.outcome);
    joint_prob *= m.prob;
    state = std::move(m.post);
  }
  std::vector<std::pair<std::string, int>> assignments;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    assignments.emplace_back(sched.readout_order[i], outcomes[i]);
  }
  PureState spins = remove_collapsed(state, assignments);

  TrialResult result{outcomes_to_record(spec, outcomes), joint_prob, spins,
                     std::nullopt, 0.0, std::nullopt};
  const PureState target = target_state(inputs, spec.n);
  result.fidelity_raw = fidelity(spins, target);
  attach_corrections(spec, target, result.outcome, spins, table,
                     &result.spins_corrected, &result.fidelity_corrected);
  return result;
}

TrialResult run_compact(const ProtocolSpec& spec, const SpinInputs& inputs,
                        RandomStream& rng, const CorrectionTable* table) {
  if (spec.sim_mode != SimMode::kCompact) {
    throw std::invalid_argument("run_compact requires sim_mode = compact");
  }
  return run_trial(spec, inputs, rng, table);
}

std::vector<BranchReport> enumerate_protocol_branches(const ProtocolSpec& spec,
                                                      const SpinInputs& inputs,
                                                      const CorrectionTable* table) {
  const Schedule sched = build_schedule(spec);
  PureState state = apply_couplings(spec, sched, initial_state(spec, inputs));
  const PureState target = target_state(inputs, spec.n);

  std::vector<BranchReport> reports;
  for (auto& branch : enumerate_branches(state, sched.readout_order)) {
    BranchReport rep{outcomes_to_record(spec, branch.outcomes), branch.prob,
                     std::move(branch.conditional), 0.0, std::nullopt};
    rep.fidelity_raw = fidelity(rep.spins, target);
    attach_corrections(spec, target, rep.outcome, rep.spins, table, nullptr,
                       &rep.fidelity_corrected);
    reports.push_back(std::move(rep));
  }
  return reports;
}

std::vector<DifferenceClass> difference_classes(const std::vector<BranchReport>& reports) {
  std::map<std::vector<int>, DifferenceClass> classes;
  for (const auto& rep : reports) {
    auto it = classes.find(rep.outcome.differences);
    if (it == classes.end()) {
      classes.emplace(rep.outcome.differences,
                      DifferenceClass{rep.outcome.differences, rep.prob, rep.spins, 0.0});
    } else {
      it->second.prob += rep.prob;
      const double infid = 1.0 - fidelity(it->second.representative, rep.spins);
      it->second.max_internal_infidelity =
          std::max(it->second.max_internal_infidelity, infid);
    }
  }
  std::vector<DifferenceClass> out;
  out.reserve(classes.size());
  for (auto& [d, cls] : classes) out.push_back(std::move(cls));
  return out;
}

std::pair<PureState, double> conditional_for_difference(const ProtocolSpec& spec,
                                                        const SpinInputs& inputs,
                                                        const std::vector<int>& d) {
  if (static_cast<int>(d.size()) != spec.n) {
    throw std::invalid_argument("difference vector length mismatch");
  }
  const Schedule sched = build_schedule(spec);
  PureState state = apply_couplings(spec, sched, initial_state(spec, inputs));

  std::vector<std::pair<std::string, int>> assignments;
  double readouts_per_class = 1.0;
  if (spec.sim_mode == SimMode::kCompact) {
    for (int j = 1; j <= spec.n; ++j) {
      assignments.emplace_back(difference_id(j), d[j - 1]);
    }
  } else {
    // Canonical readout of the class: every unprimed pointer reads 0 and the
    // partner reads -d_j; all 4^n readouts of a class share one conditional.
    for (int j = 1; j <= spec.n; ++j) assignments.emplace_back(pointer_id(j), 0);
    for (int j = 1; j <= spec.n; ++j) {
      const int partner_site = (j % spec.n) + 1;
      assignments.emplace_back(primed_pointer_id(partner_site), ((-d[j - 1]) % 4 + 4) % 4);
      readouts_per_class *= 4.0;
    }
  }
  PureState proj = project_registers(state, assignments);
  const double class_prob = proj.norm_squared() * readouts_per_class;
  if (class_prob > 1e-18) proj.renormalize();
  return {std::move(proj), class_prob};
}

Mat branch_kraus(const ProtocolSpec& spec, const std::vector<int>& d) {
  const std::size_t dim = std::size_t{1} << spec.n;
  Mat k(dim, dim);
  for (std::size_t b = 0; b < dim; ++b) {
    std::vector<std::vector<cplx>> sites;
    for (int j = 0; j < spec.n; ++j) {
      const int bit = static_cast<int>((b >> (spec.n - 1 - j)) & 1);
      sites.push_back(bit == 0 ? std::vector<cplx>{1.0, 0.0}
                               : std::vector<cplx>{0.0, 1.0});
    }
    const Schedule sched = build_schedule(spec);
    PureState state = apply_couplings(
        spec, sched, initial_state(spec, SpinInputs::product(sites)));
    std::vector<std::pair<std::string, int>> assignments;
    if (spec.sim_mode == SimMode::kCompact) {
      for (int j = 1; j <= spec.n; ++j) assignments.emplace_back(difference_id(j), d[j - 1]);
    } else {
      for (int j = 1; j <= spec.n; ++j) assignments.emplace_back(pointer_id(j), 0);
      for (int j = 1; j <= spec.n; ++j) {
        const int partner_site = (j % spec.n) + 1;
        assignments.emplace_back(primed_pointer_id(partner_site),
                                 ((-d[j - 1]) % 4 + 4) % 4);
      }
    }
    const PureState proj = project_registers(state, assignments);
    for (std::size_t r = 0; r < dim; ++r) k(r, b) = proj.amplitudes()[r];
  }
  return k;
}

std::vector<std::vector<int>> all_difference_vectors(int n) {
  std::vector<std::vector<int>> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    std::vector<int> d(n);
    for (int j = 0; j < n; ++j) {
      d[j] = ((mask >> (n - 1 - j)) & 1) ? 2 : 0;
    }
    out.push_back(std::move(d));
  }
  return out;
}

}  // namespace chainsim
