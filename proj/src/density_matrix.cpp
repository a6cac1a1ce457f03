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

#include "gatepump/density_matrix.hpp"

#include <algorithm>
#include <cmath>

#include "gatepump/kernels.hpp"

namespace gatepump {

namespace {

constexpr int kMaxQubits = 6;

void check_register_size(int num_qubits, const char* what) {
  if (num_qubits < 1 || num_qubits > kMaxQubits)
    throw std::invalid_argument(std::string(what) + ": register size " +
                                std::to_string(num_qubits) + " outside [1, 6]");
}

void check_targets(int num_qubits, std::span<const int> targets, int arity, const char* what) {
  if (static_cast<int>(targets.size()) != arity)
    throw std::invalid_argument(std::string(what) + ": target count does not match gate arity");
  for (int t : targets)
    if (t < 0 || t >= num_qubits)
      throw std::invalid_argument(std::string(what) + ": target index " + std::to_string(t) +
                                  " out of range for " + std::to_string(num_qubits) +
                                  "-qubit register");
  if (arity == 2 && targets[0] == targets[1])
    throw std::invalid_argument(std::string(what) + ": duplicate target indices");
}

}  // namespace

StateVector::StateVector(int num_qubits, std::vector<cplx> amplitudes)
    : nq_(num_qubits), a_(std::move(amplitudes)) {
  check_register_size(nq_, "StateVector");
  if (a_.size() != static_cast<std::size_t>(1) << nq_)
    throw std::invalid_argument("StateVector: amplitude count does not match qubit count");
  double norm2 = 0.0;
  for (const cplx& c : a_) norm2 += std::norm(c);
  if (std::abs(norm2 - 1.0) > 1e-12)
    throw std::invalid_argument("StateVector: squared norm deviates from 1 by more than 1e-12");
}

StateVector StateVector::basis(int num_qubits, unsigned index) {
  std::vector<cplx> a(static_cast<std::size_t>(1) << num_qubits, 0.0);
  a.at(index) = 1.0;
  return StateVector(num_qubits, std::move(a));
}

StateVector bell_phi() {
  const double s = 1.0 / std::sqrt(2.0);
  return StateVector(2, {s, 0.0, 0.0, s});
}

const StateVector& bell_state(int k) {
  const double s = 1.0 / std::sqrt(2.0);
  static const StateVector basis[4] = {
      StateVector(2, {s, 0.0, 0.0, s}),    // Phi+
      StateVector(2, {0.0, s, s, 0.0}),    // Psi+
      StateVector(2, {0.0, s, -s, 0.0}),   // Psi-
      StateVector(2, {s, 0.0, 0.0, -s}),   // Phi-
  };
  if (k < 0 || k > 3) throw std::invalid_argument("bell_state: index outside [0, 3]");
  return basis[k];
}

StateVector tensor(const StateVector& a, const StateVector& b) {
  const int db = b.dim();
  std::vector<cplx> out(static_cast<std::size_t>(a.dim()) * db);
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < db; ++j)
      out[static_cast<std::size_t>(i) * db + j] = a.amps()[i] * b.amps()[j];
  return StateVector(a.num_qubits() + b.num_qubits(), std::move(out));
}

DensityMatrix::DensityMatrix(int num_qubits, std::vector<cplx> elements) {
  check_register_size(num_qubits, "DensityMatrix");
  const std::size_t want = static_cast<std::size_t>(1) << (2 * num_qubits);
  if (elements.size() != want)
    throw std::invalid_argument("DensityMatrix: element count does not match qubit count");
  nq_ = num_qubits;
  m_ = std::move(elements);
  check_invariants();
}

DensityMatrix DensityMatrix::unchecked(int num_qubits, std::vector<cplx> elements) {
  DensityMatrix rho;
  rho.nq_ = num_qubits;
  rho.m_ = std::move(elements);
  return rho;
}

DensityMatrix DensityMatrix::maximally_mixed(int num_qubits) {
  check_register_size(num_qubits, "DensityMatrix");
  const int d = 1 << num_qubits;
  std::vector<cplx> m(static_cast<std::size_t>(d) * d, 0.0);
  for (int i = 0; i < d; ++i) m[static_cast<std::size_t>(i) * d + i] = 1.0 / d;
  return unchecked(num_qubits, std::move(m));
}

double DensityMatrix::trace_real() const {
  double t = 0.0;
  for (int i = 0; i < dim(); ++i) t += at(i, i).real();
  return t;
}

void DensityMatrix::check_invariants(double tol) const {
  const CMatrix m = to_matrix();
  const double herm = m.hermiticity_defect();
  if (herm > tol)
    throw invariant_error("DensityMatrix: Hermiticity defect " + std::to_string(herm));
  const double tr_err = std::abs(m.trace() - cplx(1.0));
  if (tr_err > tol)
    throw invariant_error("DensityMatrix: trace deviates from 1 by " + std::to_string(tr_err));
  const double min_eig = hermitian_min_eig(m);
  if (min_eig < -tol)
    throw invariant_error("DensityMatrix: negative eigenvalue " + std::to_string(min_eig));
}

DensityMatrix make_pure(const StateVector& psi) {
  const int d = psi.dim();
  std::vector<cplx> m(static_cast<std::size_t>(d) * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      m[static_cast<std::size_t>(i) * d + j] = psi.amps()[i] * std::conj(psi.amps()[j]);
  return DensityMatrix::unchecked(psi.num_qubits(), std::move(m));
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  const int na = a.num_qubits(), nb = b.num_qubits();
  check_register_size(na + nb, "tensor");
  const int da = a.dim(), db = b.dim();
  const int d = da * db;
  std::vector<cplx> m(static_cast<std::size_t>(d) * d);
  for (int i = 0; i < da; ++i)
    for (int k = 0; k < db; ++k)
      for (int j = 0; j < da; ++j) {
        const cplx aij = a.at(i, j);
        const std::size_t row = static_cast<std::size_t>(i * db + k) * d;
        for (int l = 0; l < db; ++l) m[row + j * db + l] = aij * b.at(k, l);
      }
  return DensityMatrix::unchecked(na + nb, std::move(m));
}

DensityMatrix apply_unitary(const DensityMatrix& rho, const UnitaryGate& u,
                            std::span<const int> targets) {
  const int n = rho.num_qubits();
  check_targets(n, targets, u.arity(), "apply_unitary");
  std::vector<cplx> amps = rho.elements();
  const std::size_t total = amps.size();  // 4^n
  std::vector<cplx> uconj(u.elements());
  for (cplx& c : uconj) c = std::conj(c);

  const auto& k = kernels::active();
  // Row index bits sit above the column index bits: qubit q maps to bit
  // (2n-1-q) of the flattened index for the row copy and (n-1-q) for the
  // column copy. rho -> U rho U^dagger is u on the row bits and conj(u) on
  // the column bits.
  if (u.arity() == 1) {
    const std::size_t row_s = static_cast<std::size_t>(1) << (2 * n - 1 - targets[0]);
    const std::size_t col_s = static_cast<std::size_t>(1) << (n - 1 - targets[0]);
    k.apply1(amps.data(), total, row_s, u.data());
    k.apply1(amps.data(), total, col_s, uconj.data());
  } else {
    const std::size_t row_hi = static_cast<std::size_t>(1) << (2 * n - 1 - targets[0]);
    const std::size_t row_lo = static_cast<std::size_t>(1) << (2 * n - 1 - targets[1]);
    const std::size_t col_hi = static_cast<std::size_t>(1) << (n - 1 - targets[0]);
    const std::size_t col_lo = static_cast<std::size_t>(1) << (n - 1 - targets[1]);
    k.apply2(amps.data(), total, row_hi, row_lo, u.data());
    k.apply2(amps.data(), total, col_hi, col_lo, uconj.data());
  }
  return DensityMatrix::unchecked(n, std::move(amps));
}

DensityMatrix apply_unitary(const DensityMatrix& rho, const UnitaryGate& u,
                            std::initializer_list<int> targets) {
  return apply_unitary(rho, u, std::span<const int>(targets.begin(), targets.size()));
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep) {
  const int n = rho.num_qubits();
  if (keep.empty()) throw std::invalid_argument("partial_trace: keep set must be nonempty");
  std::vector<bool> seen(n, false);
  for (int q : keep) {
    if (q < 0 || q >= n)
      throw std::invalid_argument("partial_trace: qubit index " + std::to_string(q) +
                                  " out of range");
    if (seen[q]) throw std::invalid_argument("partial_trace: duplicate qubit in keep set");
    seen[q] = true;
  }
  const int nk = static_cast<int>(keep.size());
  const int nt = n - nk;
  // Bit weight of result qubit p in the original index, and of traced qubit r.
  std::vector<unsigned> keep_w(nk), traced_w;
  for (int p = 0; p < nk; ++p) keep_w[p] = 1u << (n - 1 - keep[p]);
  for (int q = 0; q < n; ++q)
    if (!seen[q]) traced_w.push_back(1u << (n - 1 - q));

  const int dk = 1 << nk;
  const unsigned tcount = 1u << nt;
  std::vector<cplx> out(static_cast<std::size_t>(dk) * dk, 0.0);
  std::vector<unsigned> scatter_keep(dk), scatter_traced(tcount);
  for (int idx = 0; idx < dk; ++idx) {
    unsigned v = 0;
    for (int p = 0; p < nk; ++p)
      if (idx & (1 << (nk - 1 - p))) v |= keep_w[p];
    scatter_keep[idx] = v;
  }
  for (unsigned t = 0; t < tcount; ++t) {
    unsigned v = 0;
    for (int r = 0; r < nt; ++r)
      if (t & (1u << (nt - 1 - r))) v |= traced_w[r];
    scatter_traced[t] = v;
  }
  for (int i = 0; i < dk; ++i)
    for (int j = 0; j < dk; ++j) {
      cplx acc = 0.0;
      for (unsigned t = 0; t < tcount; ++t)
        acc += rho.at(static_cast<int>(scatter_keep[i] | scatter_traced[t]),
                      static_cast<int>(scatter_keep[j] | scatter_traced[t]));
      out[static_cast<std::size_t>(i) * dk + j] = acc;
    }
  return DensityMatrix::unchecked(nk, std::move(out));
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::initializer_list<int> keep) {
  return partial_trace(rho, std::span<const int>(keep.begin(), keep.size()));
}

CMatrix partial_transpose(const DensityMatrix& rho, std::span<const int> transpose_set) {
  const int n = rho.num_qubits();
  unsigned mask = 0;
  for (int q : transpose_set) {
    if (q < 0 || q >= n)
      throw std::invalid_argument("partial_transpose: qubit index out of range");
    mask |= 1u << (n - 1 - q);
  }
  const int d = rho.dim();
  CMatrix out(d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      const unsigned ip = (static_cast<unsigned>(i) & ~mask) | (static_cast<unsigned>(j) & mask);
      const unsigned jp = (static_cast<unsigned>(j) & ~mask) | (static_cast<unsigned>(i) & mask);
      out.at(static_cast<int>(ip), static_cast<int>(jp)) = rho.at(i, j);
    }
  return out;
}

CMatrix partial_transpose(const DensityMatrix& rho, std::initializer_list<int> transpose_set) {
  return partial_transpose(rho, std::span<const int>(transpose_set.begin(), transpose_set.size()));
}

double overlap(const DensityMatrix& rho, const StateVector& psi) {
  if (rho.num_qubits() != psi.num_qubits())
    throw std::invalid_argument("overlap: state and density matrix dimensions differ");
  const int d = rho.dim();
  std::vector<cplx> y(d, 0.0);
  for (int i = 0; i < d; ++i) {
    cplx acc = 0.0;
    for (int j = 0; j < d; ++j) acc += rho.at(i, j) * psi.amps()[j];
    y[i] = acc;
  }
  return kernels::active().cdotc(psi.amps().data(), y.data(), y.size()).real();
}

// ---------------------------------------------------------------------------
// Cyclic Jacobi eigensolver for Hermitian matrices (dimension <= 64 here, so
// no pivoting or blocking is worthwhile).

namespace {

double off_diagonal_norm(const CMatrix& m) {
  double acc = 0.0;
  for (int i = 0; i < m.dim; ++i)
    for (int j = 0; j < m.dim; ++j)
      if (i != j) acc += std::norm(m.at(i, j));
  return std::sqrt(acc);
}

}  // namespace

std::vector<double> hermitian_eigenvalues(const CMatrix& m, double herm_tol) {
  const int n = m.dim;
  if (n < 1) throw std::invalid_argument("hermitian_eigenvalues: empty matrix");
  if (m.hermiticity_defect() > herm_tol)
    throw std::invalid_argument("hermitian_eigenvalues: matrix is not Hermitian within tolerance");

  CMatrix a(n);
  double fro = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      a.at(i, j) = 0.5 * (m.at(i, j) + std::conj(m.at(j, i)));
      fro += std::norm(a.at(i, j));
    }
  for (int i = 0; i < n; ++i) a.at(i, i) = a.at(i, i).real();
  const double thresh = 1e-14 * std::max(1.0, std::sqrt(fro));

  for (int sweep = 0; sweep < 100 && off_diagonal_norm(a) > thresh; ++sweep) {
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const cplx apq = a.at(p, q);
        const double r = std::abs(apq);
        if (r == 0.0) continue;
        const double app = a.at(p, p).real();
        const double aqq = a.at(q, q).real();
        const double tau = (aqq - app) / (2.0 * r);
        const double t = tau == 0.0
                             ? 1.0
                             : (tau > 0 ? 1.0 : -1.0) / (std::abs(tau) + std::hypot(1.0, tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const cplx s = (t * c) * (apq / r);
        // A <- G^dagger A G with G = [[c, s], [-conj(s), c]] on rows/cols p,q
        for (int k = 0; k < n; ++k) {
          const cplx akp = a.at(k, p), akq = a.at(k, q);
          a.at(k, p) = c * akp - std::conj(s) * akq;
          a.at(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const cplx apk = a.at(p, k), aqk = a.at(q, k);
          a.at(p, k) = c * apk - s * aqk;
          a.at(q, k) = std::conj(s) * apk + c * aqk;
        }
        a.at(p, q) = 0.0;
        a.at(q, p) = 0.0;
        a.at(p, p) = a.at(p, p).real();
        a.at(q, q) = a.at(q, q).real();
      }
    }
  }
  if (off_diagonal_norm(a) > thresh)
    throw invariant_error("hermitian_eigenvalues: Jacobi iteration failed to converge");

  std::vector<double> eigs(n);
  for (int i = 0; i < n; ++i) eigs[i] = a.at(i, i).real();
  std::sort(eigs.begin(), eigs.end());
  return eigs;
}

double hermitian_min_eig(const CMatrix& m, double herm_tol) {
  return hermitian_eigenvalues(m, herm_tol).front();
}

}  // namespace gatepump
