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

#ifndef CHAINSIM_LINALG_HPP
#define CHAINSIM_LINALG_HPP

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace chainsim {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

/// Spin measurement axis. Couplings and corrections are expressed in terms
/// of the Pauli operator along one of these axes.
enum class Axis { kX, kY, kZ };

char axis_name(Axis axis);
Axis axis_from_name(char name);

/// The Pauli matrix along `axis`.
Mat pauli(Axis axis);

/// Unitary V whose rows are the sigma_axis eigenbras, +1 eigenvalue first,
/// so that V maps the axis eigenbasis onto the computational basis.
Mat axis_eigenbasis(Axis axis);

/// Cyclic shift on a dim-d register: |q> -> |q + steps mod d>.
Mat shift_matrix(int dim, int steps);

/// Two-register unitary on (spin, pointer): in the sigma_axis eigenbasis of
/// the spin, eigenvalue s in {+1,-1} shifts the pointer by s*steps_for_plus
/// mod 4. This is the impulsive limit of a pointer-momentum coupling.
Mat controlled_shift_matrix(Axis axis, int steps_for_plus);

Mat kron(const Mat& a, const Mat& b);

bool is_unitary(const Mat& m, double tol);

/// max_ij |a_ij - b_ij|
double max_abs_diff(const Mat& a, const Mat& b);

/// Largest c such that m == c * identity fails: returns max |m - (tr m / d) I|.
double deviation_from_scaled_identity(const Mat& m);

}  // namespace chainsim

#endif
