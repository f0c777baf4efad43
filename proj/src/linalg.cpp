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

#include "chainsim/linalg.hpp"

#include <stdexcept>

namespace chainsim {

namespace {
constexpr cplx kI{0.0, 1.0};
}

char axis_name(Axis axis) {
  switch (axis) {
    case Axis::kX: return 'x';
    case Axis::kY: return 'y';
    case Axis::kZ: return 'z';
  }
  throw std::logic_error("bad axis");
}

Axis axis_from_name(char name) {
  switch (name) {
    case 'x': return Axis::kX;
    case 'y': return Axis::kY;
    case 'z': return Axis::kZ;
  }
  throw std::invalid_argument(std::string("unknown axis name: ") + name);
}

Mat pauli(Axis axis) {
  Mat m(2, 2);
  switch (axis) {
    case Axis::kX:
      m << 0, 1, 1, 0;
      break;
    case Axis::kY:
      m << 0, -kI, kI, 0;
      break;
    case Axis::kZ:
      m << 1, 0, 0, -1;
      break;
  }
  return m;
}

Mat axis_eigenbasis(Axis axis) {
  const double r = 1.0 / std::sqrt(2.0);
  Mat v(2, 2);
  switch (axis) {
    case Axis::kZ:
      v << 1, 0, 0, 1;
      break;
    case Axis::kX:
      v << r, r, r, -r;
      break;
    case Axis::kY:
      v << r, -r * kI, r, r * kI;
      break;
  }
  return v;
}

Mat shift_matrix(int dim, int steps) {
  Mat s = Mat::Zero(dim, dim);
  const int k = ((steps % dim) + dim) % dim;
  for (int q = 0; q < dim; ++q) {
    s((q + k) % dim, q) = 1.0;
  }
  return s;
}

Mat controlled_shift_matrix(Axis axis, int steps_for_plus) {
  const Mat v = axis_eigenbasis(axis);
  Mat e0 = Mat::Zero(2, 2), e1 = Mat::Zero(2, 2);
  e0(0, 0) = 1.0;
  e1(1, 1) = 1.0;
  const Mat proj_plus = v.adjoint() * e0 * v;
  const Mat proj_minus = v.adjoint() * e1 * v;
  return kron(proj_plus, shift_matrix(4, steps_for_plus)) +
         kron(proj_minus, shift_matrix(4, -steps_for_plus));
}

Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

bool is_unitary(const Mat& m, double tol) {
  if (m.rows() != m.cols()) return false;
  const Mat gram = m.adjoint() * m;
  return max_abs_diff(gram, Mat::Identity(m.rows(), m.cols())) <= tol;
}

double max_abs_diff(const Mat& a, const Mat& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

double deviation_from_scaled_identity(const Mat& m) {
  const cplx scale = m.trace() / static_cast<double>(m.rows());
  return max_abs_diff(m, scale * Mat::Identity(m.rows(), m.cols()));
}

}  // namespace chainsim
