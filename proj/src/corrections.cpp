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

#include "chainsim/corrections.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace chainsim {

namespace {

constexpr double kKrausTol = 1e-9;
constexpr double kValidationInfidelity = 1e-9;

const PauliLabel kLabelOrder[4] = {PauliLabel::kI, PauliLabel::kX, PauliLabel::kY,
                                   PauliLabel::kZ};

std::string d_to_string(const std::vector<int>& d) {
  std::string s;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (i > 0) s += ',';
    s += std::to_string(d[i]);
  }
  return s;
}

}  // namespace

char pauli_label_name(PauliLabel label) { return static_cast<char>(label); }

PauliLabel pauli_label_from_name(char name) {
  switch (name) {
    case 'I': return PauliLabel::kI;
    case 'X': return PauliLabel::kX;
    case 'Y': return PauliLabel::kY;
    case 'Z': return PauliLabel::kZ;
  }
  throw std::invalid_argument(std::string("unknown Pauli label: ") + name);
}

Mat pauli_label_matrix(PauliLabel label) {
  switch (label) {
    case PauliLabel::kI: return Mat::Identity(2, 2);
    case PauliLabel::kX: return pauli(Axis::kX);
    case PauliLabel::kY: return pauli(Axis::kY);
    case PauliLabel::kZ: return pauli(Axis::kZ);
  }
  throw std::logic_error("bad pauli label");
}

NoPauliCorrectionError::NoPauliCorrectionError(std::vector<int> d,
                                               const std::string& fingerprint)
    : std::runtime_error("no per-site Pauli correction exists for difference (" +
                         d_to_string(d) + ") of " + fingerprint +
                         "; the correction group would have to be enlarged"),
      d_(std::move(d)) {}

CorrectionTable::CorrectionTable(int n, Family family, Axis end_axis)
    : n_(n), family_(family), end_axis_(end_axis) {}

bool CorrectionTable::matches(const ProtocolSpec& spec) const {
  return spec.n == n_ && spec.family == family_ &&
         (family_ == Family::kTwoWayVaa || spec.end_axis() == end_axis_);
}

void CorrectionTable::set_entry(const std::vector<int>& d,
                                std::vector<PauliLabel> labels) {
  if (static_cast<int>(d.size()) != n_ || static_cast<int>(labels.size()) != n_) {
    throw std::invalid_argument("correction entry length mismatch");
  }
  for (int v : d) {
    if (v != 0 && v != 2) throw std::invalid_argument("difference values must be 0 or 2");
  }
  entries_[d] = std::move(labels);
}

const std::vector<PauliLabel>& CorrectionTable::entry(const std::vector<int>& d) const {
  auto it = entries_.find(d);
  if (it == entries_.end()) {
    throw std::out_of_range("no correction entry for difference (" + d_to_string(d) + ")");
  }
  return it->second;
}

PureState apply_correction(const PureState& spins,
                           const std::vector<PauliLabel>& labels) {
  if (static_cast<int>(labels.size()) != spins.layout().num_registers()) {
    throw std::invalid_argument("one correction label required per site");
  }
  PureState out = spins;
  for (std::size_t j = 0; j < labels.size(); ++j) {
    if (labels[j] == PauliLabel::kI) continue;
    out = apply_local(out, LocalUnitary{pauli_label_matrix(labels[j]),
                                        spin_id(static_cast<int>(j) + 1)});
  }
  return out;
}

namespace {

// C(labels) * kraus proportional to the cyclic permutation unitary?
// Site 1 owns the most significant qubit, matching the register layout.
bool correction_works(const std::vector<PauliLabel>& labels, const Mat& kraus,
                      const Mat& cyclic_adjoint) {
  Mat c = Mat::Identity(1, 1);
  for (PauliLabel l : labels) c = kron(c, pauli_label_matrix(l));
  const Mat m = c * kraus * cyclic_adjoint;
  const double scale =
      std::sqrt(m.squaredNorm() / static_cast<double>(m.rows()));
  if (scale < 1e-12) return false;
  return deviation_from_scaled_identity(m) <= kKrausTol * scale;
}

}  // namespace

CorrectionTable derive_table(const ProtocolSpec& spec) {
  spec.validate();
  CorrectionTable table(spec.n, spec.family, spec.end_axis());
  const Mat cyclic_adjoint = cyclic_permutation_matrix(spec.n).adjoint();
  const std::size_t candidates = std::size_t{1} << (2 * spec.n);

  for (const auto& d : all_difference_vectors(spec.n)) {
    const Mat kraus = branch_kraus(spec, d);
    bool found = false;
    for (std::size_t c = 0; c < candidates && !found; ++c) {
      std::vector<PauliLabel> labels(spec.n);
      for (int j = 0; j < spec.n; ++j) {
        labels[j] = kLabelOrder[(c >> (2 * (spec.n - 1 - j))) & 3];
      }
      if (correction_works(labels, kraus, cyclic_adjoint)) {
        table.set_entry(d, std::move(labels));
        found = true;
      }
    }
    if (!found) throw NoPauliCorrectionError(d, spec.fingerprint());
  }
  return table;
}

namespace {

// |0>, |1>, |+>, |+i>: informationally complete for process identification.
const std::vector<std::vector<cplx>>& tomography_states() {
  static const std::vector<std::vector<cplx>> kStates = {
      {1.0, 0.0},
      {0.0, 1.0},
      {cplx(1.0 / std::sqrt(2.0), 0.0), cplx(1.0 / std::sqrt(2.0), 0.0)},
      {cplx(1.0 / std::sqrt(2.0), 0.0), cplx(0.0, 1.0 / std::sqrt(2.0))}};
  return kStates;
}

void check_input(const ProtocolSpec& spec, const CorrectionTable& table,
                 const SpinInputs& inputs, const std::string& label,
                 ValidationReport* report) {
  for (const auto& rep : enumerate_protocol_branches(spec, inputs, &table)) {
    ++report->cases_checked;
    const double infid = 1.0 - rep.fidelity_corrected.value();
    if (infid > report->worst_infidelity) {
      report->worst_infidelity = infid;
      report->worst_d = rep.outcome.differences;
      report->worst_input = label;
    }
  }
}

}  // namespace

ValidationReport validate_table(const ProtocolSpec& spec, const CorrectionTable& table,
                                std::uint64_t seed) {
  if (!table.matches(spec)) {
    throw std::invalid_argument("correction table fingerprint does not match protocol");
  }
  ValidationReport report;
  const auto& basis = tomography_states();

  // All 4^n combinations of the single-site tomography states.
  const std::size_t combos = std::size_t{1} << (2 * spec.n);
  for (std::size_t c = 0; c < combos; ++c) {
    std::vector<std::vector<cplx>> sites(spec.n);
    std::string label = "tomo:";
    for (int j = 0; j < spec.n; ++j) {
      const int which = (c >> (2 * (spec.n - 1 - j))) & 3;
      sites[j] = basis[which];
      label += "01+i"[which];
    }
    check_input(spec, table, SpinInputs::product(std::move(sites)), label, &report);
  }

  RandomStream rng(seed);
  for (int t = 0; t < 20; ++t) {
    std::vector<std::vector<cplx>> sites(spec.n);
    for (auto& s : sites) s = rng.random_qubit();
    check_input(spec, table, SpinInputs::product(std::move(sites)),
                "random-product:" + std::to_string(t), &report);
  }
  for (int t = 0; t < 5; ++t) {
    check_input(spec, table,
                SpinInputs::joint(rng.random_state(std::size_t{1} << spec.n)),
                "random-entangled:" + std::to_string(t), &report);
  }

  report.pass = report.worst_infidelity <= kValidationInfidelity;
  return report;
}

void write_table(const CorrectionTable& table, std::ostream& out) {
  out << "chainsim-correction-table v1\n";
  out << "n " << table.n() << "\n";
  out << "family " << family_name(table.family()) << "\n";
  out << "end-link " << axis_name(table.end_axis()) << "\n";
  out << "entries " << table.entries().size() << "\n";
  for (const auto& [d, labels] : table.entries()) {
    out << "d";
    for (int v : d) out << ' ' << v;
    out << " labels";
    for (PauliLabel l : labels) out << ' ' << pauli_label_name(l);
    out << "\n";
  }
}

CorrectionTable read_table(std::istream& in) {
  std::string line;
  auto next_line = [&]() -> std::string {
    while (std::getline(in, line)) {
      if (!line.empty() && line[0] != '#') return line;
    }
    throw std::invalid_argument("truncated correction table");
  };
  if (next_line() != "chainsim-correction-table v1") {
    throw std::invalid_argument("not a chainsim correction table");
  }
  auto expect_kv = [&](const std::string& key) -> std::string {
    std::istringstream ls(next_line());
    std::string k, v;
    ls >> k >> v;
    if (k != key || v.empty()) {
      throw std::invalid_argument("correction table: expected '" + key + "' line");
    }
    return v;
  };
  const int n = std::stoi(expect_kv("n"));
  const Family family = family_from_name(expect_kv("family"));
  const Axis end_axis = axis_from_name(expect_kv("end-link")[0]);
  const int count = std::stoi(expect_kv("entries"));

  CorrectionTable table(n, family, end_axis);
  for (int e = 0; e < count; ++e) {
    std::istringstream ls(next_line());
    std::string tok;
    ls >> tok;
    if (tok != "d") throw std::invalid_argument("correction table: expected 'd' record");
    std::vector<int> d(n);
    for (int j = 0; j < n; ++j) ls >> d[j];
    ls >> tok;
    if (tok != "labels") {
      throw std::invalid_argument("correction table: expected 'labels' field");
    }
    std::vector<PauliLabel> labels;
    for (int j = 0; j < n; ++j) {
      std::string name;
      ls >> name;
      if (name.size() != 1) throw std::invalid_argument("bad correction label");
      labels.push_back(pauli_label_from_name(name[0]));
    }
    if (!ls) throw std::invalid_argument("truncated correction record");
    table.set_entry(d, std::move(labels));
  }
  return table;
}

void write_table_file(const CorrectionTable& table, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open table file for writing: " + path);
  write_table(table, out);
}

CorrectionTable read_table_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open table file: " + path);
  return read_table(in);
}

}  // namespace chainsim
