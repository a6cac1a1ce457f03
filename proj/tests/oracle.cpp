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

#include "oracle.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace oracle {

namespace {

Mat zeros(int n) { return Mat(static_cast<std::size_t>(n) * n, C(0.0)); }

Mat identity(int n) {
  Mat m = zeros(n);
  for (int i = 0; i < n; ++i) m[static_cast<std::size_t>(i) * n + i] = 1.0;
  return m;
}

C tr(const Mat& m, int n) {
  C t = 0.0;
  for (int i = 0; i < n; ++i) t += m[static_cast<std::size_t>(i) * n + i];
  return t;
}

Mat scaled(Mat m, C f) {
  for (C& v : m) v *= f;
  return m;
}

Mat add(const Mat& a, const Mat& b) {
  Mat out(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) out[k] = a[k] + b[k];
  return out;
}

// Partial trace over the qubits listed in `traced`, remaining qubits keep
// their relative order.
Mat trace_out(const Mat& rho, int nbits, const std::vector<int>& traced) {
  std::vector<bool> is_traced(nbits, false);
  for (int q : traced) is_traced[q] = true;
  std::vector<int> kept;
  for (int q = 0; q < nbits; ++q)
    if (!is_traced[q]) kept.push_back(q);
  const int nk = static_cast<int>(kept.size());
  const int dk = 1 << nk;
  const int dt = 1 << static_cast<int>(traced.size());
  const int d = 1 << nbits;
  Mat out = zeros(dk);
  for (int i = 0; i < dk; ++i) {
    for (int j = 0; j < dk; ++j) {
      C acc = 0.0;
      for (int t = 0; t < dt; ++t) {
        int row = 0, col = 0, kb = 0, tb = 0;
        for (int q = 0; q < nbits; ++q) {
          const int shift = nbits - 1 - q;
          if (is_traced[q]) {
            const int bit = (t >> (static_cast<int>(traced.size()) - 1 - tb)) & 1;
            row |= bit << shift;
            col |= bit << shift;
            ++tb;
          } else {
            row |= ((i >> (nk - 1 - kb)) & 1) << shift;
            col |= ((j >> (nk - 1 - kb)) & 1) << shift;
            ++kb;
          }
        }
        acc += rho[static_cast<std::size_t>(row) * d + col];
      }
      out[static_cast<std::size_t>(i) * dk + j] = acc;
    }
  }
  return out;
}

const Mat kCnot = {1, 0, 0, 0,  //
                   0, 1, 0, 0,  //
                   0, 0, 0, 1,  //
                   0, 0, 1, 0};

Mat rx_gate(double theta) {
  const C ms(0.0, -std::sin(theta / 2.0));
  return Mat{std::cos(theta / 2.0), ms, ms, std::cos(theta / 2.0)};
}

Mat kron2(const Mat& a, const Mat& b) {
  Mat out(16);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l)
          out[static_cast<std::size_t>(i * 2 + k) * 4 + j * 2 + l] =
              a[static_cast<std::size_t>(i) * 2 + j] * b[static_cast<std::size_t>(k) * 2 + l];
  return out;
}

std::vector<C> bell_vector(int k) {
  const double s = 1.0 / std::sqrt(2.0);
  switch (k) {
    case 0: return {s, 0, 0, s};
    case 1: return {0, s, s, 0};
    case 2: return {0, s, -s, 0};
    default: return {s, 0, 0, -s};
  }
}

double u01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

Mat matmul(const Mat& a, const Mat& b, int n) {
  Mat out = zeros(n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      const C aik = a[static_cast<std::size_t>(i) * n + k];
      if (aik == C(0.0)) continue;
      for (int j = 0; j < n; ++j)
        out[static_cast<std::size_t>(i) * n + j] += aik * b[static_cast<std::size_t>(k) * n + j];
    }
  return out;
}

Mat dagger(const Mat& a, int n) {
  Mat out(a.size());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      out[static_cast<std::size_t>(i) * n + j] = std::conj(a[static_cast<std::size_t>(j) * n + i]);
  return out;
}

Mat embed(const Mat& g, int gbits, const std::vector<int>& pos, int nbits) {
  const int d = 1 << nbits;
  const int dg = 1 << gbits;
  Mat out = zeros(d);
  for (int row = 0; row < d; ++row) {
    for (int col = 0; col < d; ++col) {
      // all non-gate bits must agree between row and column
      bool ok = true;
      for (int q = 0; q < nbits && ok; ++q) {
        bool in_gate = false;
        for (int p : pos) in_gate = in_gate || (p == q);
        if (!in_gate) ok = ((row >> (nbits - 1 - q)) & 1) == ((col >> (nbits - 1 - q)) & 1);
      }
      if (!ok) continue;
      int gr = 0, gc = 0;
      for (int b = 0; b < gbits; ++b) {
        gr = (gr << 1) | ((row >> (nbits - 1 - pos[b])) & 1);
        gc = (gc << 1) | ((col >> (nbits - 1 - pos[b])) & 1);
      }
      out[static_cast<std::size_t>(row) * d + col] = g[static_cast<std::size_t>(gr) * dg + gc];
    }
  }
  return out;
}

Mat noisy_apply(const Mat& rho, int nbits, const Mat& gate2q, int t0, int t1, double q) {
  const int d = 1 << nbits;
  const Mat u = embed(gate2q, 2, {t0, t1}, nbits);
  const Mat rotated = matmul(matmul(u, rho, d), dagger(u, d), d);

  Mat mixed;
  if (nbits == 2) {
    mixed = scaled(identity(4), 0.25);
  } else {
    const Mat sigma = trace_out(rho, nbits, {t0, t1});
    // rebuild with I/4 at the target positions
    const int d_sig = 1 << (nbits - 2);
    mixed = zeros(d);
    std::vector<int> kept;
    for (int qq = 0; qq < nbits; ++qq)
      if (qq != t0 && qq != t1) kept.push_back(qq);
    for (int i = 0; i < d_sig; ++i)
      for (int j = 0; j < d_sig; ++j)
        for (int t = 0; t < 4; ++t) {
          int row = 0, col = 0;
          for (int b = 0; b < nbits - 2; ++b) {
            row |= ((i >> (nbits - 3 - b)) & 1) << (nbits - 1 - kept[b]);
            col |= ((j >> (nbits - 3 - b)) & 1) << (nbits - 1 - kept[b]);
          }
          row |= ((t >> 1) & 1) << (nbits - 1 - t0);
          col |= ((t >> 1) & 1) << (nbits - 1 - t0);
          row |= (t & 1) << (nbits - 1 - t1);
          col |= (t & 1) << (nbits - 1 - t1);
          mixed[static_cast<std::size_t>(row) * d + col] =
              0.25 * sigma[static_cast<std::size_t>(i) * d_sig + j];
        }
  }
  return add(scaled(rotated, q), scaled(mixed, 1.0 - q));
}

MeasureResult povm_measure(const Mat& rho, int nbits, int target, bool x_basis, double eta,
                           int outcome) {
  const int d = 1 << nbits;
  Mat work = rho;
  if (x_basis) {
    const double s = 1.0 / std::sqrt(2.0);
    const Mat h = embed(Mat{s, s, s, -s}, 1, {target}, nbits);
    work = matmul(matmul(h, work, d), dagger(h, d), d);
  }
  const Mat p0 = embed(Mat{1, 0, 0, 0}, 1, {target}, nbits);
  const Mat p1 = embed(Mat{0, 0, 0, 1}, 1, {target}, nbits);
  const Mat keep0 = matmul(matmul(p0, work, d), p0, d);
  const Mat keep1 = matmul(matmul(p1, work, d), p1, d);
  const double w = outcome == 0 ? eta : 1.0 - eta;
  const Mat unnorm = add(scaled(keep0, w), scaled(keep1, 1.0 - w));
  MeasureResult res;
  res.prob = tr(unnorm, d).real();
  res.post = trace_out(unnorm, nbits, {target});
  if (res.prob > 1e-15) res.post = scaled(res.post, 1.0 / res.prob);
  return res;
}

Mat bell_diag_state(const std::array<double, 4>& lambda) {
  Mat rho = zeros(4);
  for (int k = 0; k < 4; ++k) {
    const std::vector<C> v = bell_vector(k);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        rho[static_cast<std::size_t>(i) * 4 + j] += lambda[k] * v[i] * std::conj(v[j]);
  }
  return rho;
}

std::array<double, 4> bell_coefficients(const Mat& rho) {
  std::array<double, 4> lambda{};
  for (int k = 0; k < 4; ++k) {
    const std::vector<C> v = bell_vector(k);
    C acc = 0.0;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        acc += std::conj(v[i]) * rho[static_cast<std::size_t>(i) * 4 + j] * v[j];
    lambda[k] = acc.real();
  }
  return lambda;
}

DejmpsResult dejmps_step(const std::array<double, 4>& target, const std::array<double, 4>& source,
                         double q, double eta) {
  // Register [a1 b1 a2 b2]; kept pair (0,1), source pair (2,3).
  const Mat t_state = bell_diag_state(target);
  const Mat s_state = bell_diag_state(source);
  Mat rho = zeros(16);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 4; ++l)
          rho[static_cast<std::size_t>(i * 4 + k) * 16 + j * 4 + l] =
              t_state[static_cast<std::size_t>(i) * 4 + j] *
              s_state[static_cast<std::size_t>(k) * 4 + l];

  const Mat rot_a = kron2(rx_gate(M_PI / 2.0), rx_gate(M_PI / 2.0));
  const Mat rot_b = kron2(rx_gate(-M_PI / 2.0), rx_gate(-M_PI / 2.0));
  rho = noisy_apply(rho, 4, rot_a, 0, 2, q);
  rho = noisy_apply(rho, 4, rot_b, 1, 3, q);
  rho = noisy_apply(rho, 4, kCnot, 0, 2, q);
  rho = noisy_apply(rho, 4, kCnot, 1, 3, q);

  const MeasureResult a0 = povm_measure(rho, 4, 2, false, eta, 0);
  const MeasureResult a1 = povm_measure(rho, 4, 2, false, eta, 1);
  const MeasureResult b00 = povm_measure(a0.post, 3, 2, false, eta, 0);
  const MeasureResult b11 = povm_measure(a1.post, 3, 2, false, eta, 1);
  const double p00 = a0.prob * b00.prob;
  const double p11 = a1.prob * b11.prob;
  const double p = p00 + p11;
  DejmpsResult res{p, target};
  if (p <= 1e-12) return res;
  const Mat kept = add(scaled(b00.post, p00 / p), scaled(b11.post, p11 / p));
  res.lambda = bell_coefficients(kept);
  return res;
}

Mat teleported_cnot_choi(const Mat& pair, double q, double eta) {
  // E(sigma) for a two-qubit input sigma on register [A1 B1 A2 B2].
  const auto channel = [&](const Mat& sigma) {
    Mat rho = zeros(16);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 4; ++k)
          for (int l = 0; l < 4; ++l)
            rho[static_cast<std::size_t>(i * 4 + k) * 16 + j * 4 + l] =
                sigma[static_cast<std::size_t>(i) * 4 + j] *
                pair[static_cast<std::size_t>(k) * 4 + l];
    rho = noisy_apply(rho, 4, kCnot, 0, 2, q);  // CNOT A1 -> A2
    Mat out = zeros(4);
    const Mat sx = {0, 1, 1, 0};
    const Mat sz = {1, 0, 0, -1};
    for (int a = 0; a < 2; ++a) {
      MeasureResult ma = povm_measure(rho, 4, 2, false, eta, a);  // measure A2 in z
      if (ma.prob <= 1e-15) continue;
      Mat branch = ma.post;  // register [A1 B1 B2]
      if (a == 1) {
        const Mat x_b2 = embed(sx, 1, {2}, 3);
        branch = matmul(matmul(x_b2, branch, 8), dagger(x_b2, 8), 8);
      }
      branch = noisy_apply(branch, 3, kCnot, 2, 1, q);  // CNOT B2 -> B1
      for (int b = 0; b < 2; ++b) {
        MeasureResult mb = povm_measure(branch, 3, 2, true, eta, b);  // measure B2 in x
        if (mb.prob <= 1e-15) continue;
        Mat leaf = mb.post;  // register [A1 B1]
        if (b == 1) {
          const Mat z_a1 = embed(sz, 1, {0}, 2);
          leaf = matmul(matmul(z_a1, leaf, 4), dagger(z_a1, 4), 4);
        }
        out = add(out, scaled(leaf, ma.prob * mb.prob));
      }
    }
    return out;
  };

  // Informationally complete product inputs from {|0>,|1>,|+>,|+i>}.
  const double s = 1.0 / std::sqrt(2.0);
  const std::vector<std::vector<C>> kets = {
      {1, 0}, {0, 1}, {s, s}, {s, C(0, s)}};
  std::vector<Mat> tau(16), image(16);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      Mat t = zeros(4);
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
          t[static_cast<std::size_t>(i) * 4 + j] = kets[a][i >> 1] * kets[b][i & 1] *
                                                   std::conj(kets[a][j >> 1] * kets[b][j & 1]);
      tau[a * 4 + b] = t;
      image[a * 4 + b] = channel(t);
    }

  // Solve T x = vec(|i><j|) for each basis operator by Gaussian elimination
  // with partial pivoting; columns of T are the vectorized tau_k.
  const auto solve = [&](const Mat& rhs) {
    std::vector<C> aug(16 * 17);
    for (int r = 0; r < 16; ++r) {
      for (int k = 0; k < 16; ++k) aug[static_cast<std::size_t>(r) * 17 + k] = tau[k][r];
      aug[static_cast<std::size_t>(r) * 17 + 16] = rhs[r];
    }
    for (int col = 0; col < 16; ++col) {
      int piv = col;
      for (int r = col + 1; r < 16; ++r)
        if (std::abs(aug[static_cast<std::size_t>(r) * 17 + col]) >
            std::abs(aug[static_cast<std::size_t>(piv) * 17 + col]))
          piv = r;
      for (int c = 0; c < 17; ++c)
        std::swap(aug[static_cast<std::size_t>(col) * 17 + c],
                  aug[static_cast<std::size_t>(piv) * 17 + c]);
      const C diag = aug[static_cast<std::size_t>(col) * 17 + col];
      if (std::abs(diag) < 1e-12)
        throw std::runtime_error("oracle: IC input set is singular");
      for (int r = 0; r < 16; ++r) {
        if (r == col) continue;
        const C f = aug[static_cast<std::size_t>(r) * 17 + col] / diag;
        if (f == C(0.0)) continue;
        for (int c = col; c < 17; ++c)
          aug[static_cast<std::size_t>(r) * 17 + c] -=
              f * aug[static_cast<std::size_t>(col) * 17 + c];
      }
    }
    std::vector<C> x(16);
    for (int r = 0; r < 16; ++r)
      x[r] = aug[static_cast<std::size_t>(r) * 17 + 16] / aug[static_cast<std::size_t>(r) * 17 + r];
    return x;
  };

  Mat choi = zeros(16);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      Mat basis_op = zeros(4);
      basis_op[static_cast<std::size_t>(i) * 4 + j] = 1.0;
      const std::vector<C> coeff = solve(basis_op);
      Mat eij = zeros(4);
      for (int k = 0; k < 16; ++k)
        if (coeff[k] != C(0.0)) eij = add(eij, scaled(image[k], coeff[k]));
      for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 4; ++l)
          choi[static_cast<std::size_t>(i * 4 + k) * 16 + j * 4 + l] =
              eij[static_cast<std::size_t>(k) * 4 + l];
    }
  return choi;
}

double min_eig_bisect(const Mat& m, int n, double tol) {
  // Positive definite <=> complex Cholesky succeeds with positive pivots.
  const auto is_pd_shifted = [&](double t) {
    Mat a = m;
    for (int i = 0; i < n; ++i) a[static_cast<std::size_t>(i) * n + i] -= t;
    std::vector<C> l(static_cast<std::size_t>(n) * n, C(0.0));
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j <= i; ++j) {
        C sum = a[static_cast<std::size_t>(i) * n + j];
        for (int k = 0; k < j; ++k)
          sum -= l[static_cast<std::size_t>(i) * n + k] *
                 std::conj(l[static_cast<std::size_t>(j) * n + k]);
        if (i == j) {
          if (sum.real() <= 0.0) return false;
          l[static_cast<std::size_t>(i) * n + j] = std::sqrt(sum.real());
        } else {
          l[static_cast<std::size_t>(i) * n + j] = sum / l[static_cast<std::size_t>(j) * n + j];
        }
      }
    }
    return true;
  };
  double bound = 0.0;
  for (int i = 0; i < n; ++i) {
    double row = 0.0;
    for (int j = 0; j < n; ++j) row += std::abs(m[static_cast<std::size_t>(i) * n + j]);
    bound = std::max(bound, row);
  }
  double lo = -bound - 1.0, hi = bound + 1.0;  // A - lo*I is PD, A - hi*I is not
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    (is_pd_shifted(mid) ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

HaarEstimate haar_avg_fidelity(const Mat& choi, const Mat& u, int samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  double sum = 0.0, sum_sq = 0.0;
  for (int s = 0; s < samples; ++s) {
    // Haar state from 4 complex Gaussians (Box-Muller), normalized.
    std::array<C, 4> psi;
    double norm2 = 0.0;
    for (int i = 0; i < 4; ++i) {
      const double u1 = std::max(u01(rng), 1e-300);
      const double u2 = u01(rng);
      const double r = std::sqrt(-2.0 * std::log(u1));
      psi[i] = C(r * std::cos(2.0 * M_PI * u2), r * std::sin(2.0 * M_PI * u2));
      norm2 += std::norm(psi[i]);
    }
    for (C& c : psi) c /= std::sqrt(norm2);
    // phi = U psi, then <phi| E(|psi><psi|) |phi> read off the Choi matrix:
    // E(rho)[k][l] = sum_ij rho[i][j] C[(i,k),(j,l)].
    std::array<C, 4> phi{};
    for (int k = 0; k < 4; ++k)
      for (int i = 0; i < 4; ++i) phi[k] += u[static_cast<std::size_t>(k) * 4 + i] * psi[i];
    C val = 0.0;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        const C rho_ij = psi[i] * std::conj(psi[j]);
        if (rho_ij == C(0.0)) continue;
        C quad = 0.0;
        for (int k = 0; k < 4; ++k)
          for (int l = 0; l < 4; ++l)
            quad += std::conj(phi[k]) * choi[static_cast<std::size_t>(i * 4 + k) * 16 + j * 4 + l] *
                    phi[l];
        val += rho_ij * quad;
      }
    sum += val.real();
    sum_sq += val.real() * val.real();
  }
  const double n = samples;
  const double mean = sum / n;
  const double var = samples > 1 ? std::max(0.0, (sum_sq - n * mean * mean) / (n - 1.0)) : 0.0;
  return HaarEstimate{mean, std::sqrt(var / n)};
}

}  // namespace oracle
