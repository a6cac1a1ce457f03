// Copyright 2026 The gatepump Authors
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

#pragma once

// Independent reference implementations used only by tests. Everything here
// is coded from scratch on plain std types - full-matrix gate embeddings and
// naive triple-loop products instead of the library's strided kernels - so
// agreement with the library is a genuine cross-check, not a tautology.
// Shared conventions (they define the interface, not the implementation):
// qubit 0 is the most significant index bit; Bell order Phi+, Psi+, Psi-,
// Phi-; CNOT control first.

#include <array>
#include <complex>
#include <cstdint>
#include <vector>

namespace oracle {

using C = std::complex<double>;
using Mat = std::vector<C>;  // row-major square

Mat matmul(const Mat& a, const Mat& b, int n);
Mat dagger(const Mat& a, int n);

// Full 2^nbits-dimensional operator with gate g (on gbits qubits) at the
// given register positions and identity elsewhere.
Mat embed(const Mat& g, int gbits, const std::vector<int>& pos, int nbits);

// q * U rho U^dag + (1-q) * (I/4 on the two positions) (x) tr_pos(rho)
Mat noisy_apply(const Mat& rho, int nbits, const Mat& gate2q, int t0, int t1, double q);

// POVM measurement in the z (or x) basis with reliability eta; returns the
// outcome probability and the post state with the measured qubit removed.
struct MeasureResult {
  double prob;
  Mat post;  // dimension 2^(nbits-1)
};
MeasureResult povm_measure(const Mat& rho, int nbits, int target, bool x_basis, double eta,
                           int outcome);

// Bell-diagonal two-qubit state from its four coefficients.
Mat bell_diag_state(const std::array<double, 4>& lambda);
// Bell coefficients <Bell_k|rho|Bell_k> of a two-qubit state.
std::array<double, 4> bell_coefficients(const Mat& rho);

// One DEJMPS purification step on the full 16x16 density matrix.
struct DejmpsResult {
  double p_success;
  std::array<double, 4> lambda;
};
DejmpsResult dejmps_step(const std::array<double, 4>& target, const std::array<double, 4>& source,
                         double q, double eta);

// Choi matrix (trace 4) of the teleported CNOT consuming `pair`,
// reconstructed from the channel's action on an informationally complete
// set of product inputs.
Mat teleported_cnot_choi(const Mat& pair, double q, double eta);

// Smallest eigenvalue of a Hermitian matrix by sign-change bracketing:
// bisection on t with the predicate "m - t*I is positive definite"
// (attempted Cholesky factorization).
double min_eig_bisect(const Mat& m, int n, double tol = 1e-9);

// Haar-averaged overlap <psi|U^dag E(psi) U|psi> by direct sampling; the
// channel action is read off its (trace 4) Choi matrix.
struct HaarEstimate {
  double mean;
  double std_error;
};
HaarEstimate haar_avg_fidelity(const Mat& choi, const Mat& u, int samples, std::uint64_t seed);

}  // namespace oracle
