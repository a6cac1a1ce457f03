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

#include <doctest.h>

#include <random>

#include "gatepump/noise.hpp"
#include "gatepump/teleport.hpp"

using namespace gatepump;

namespace {

DensityMatrix random_density(int nq, std::mt19937_64& rng, int rank = 3) {
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> u(0.1, 1.0);
  const int d = 1 << nq;
  std::vector<cplx> m(static_cast<std::size_t>(d) * d, 0.0);
  std::vector<double> w(rank);
  double tot = 0.0;
  for (double& x : w) tot += (x = u(rng));
  for (int r = 0; r < rank; ++r) {
    std::vector<cplx> psi(d);
    double norm2 = 0.0;
    for (cplx& c : psi) {
      c = cplx(g(rng), g(rng));
      norm2 += std::norm(c);
    }
    for (cplx& c : psi) c /= std::sqrt(norm2);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        m[static_cast<std::size_t>(i) * d + j] += (w[r] / tot) * psi[i] * std::conj(psi[j]);
  }
  return DensityMatrix::unchecked(nq, std::move(m));
}

double max_abs_diff(const DensityMatrix& a, const DensityMatrix& b) {
  return a.to_matrix().max_abs_diff(b.to_matrix());
}

}  // namespace

TEST_CASE("noisy_gate limits") {
  std::mt19937_64 rng(3);
  const DensityMatrix rho = random_density(3, rng);

  const DensityMatrix q1 = noisy_gate(rho, gates::cnot(), {0, 2}, 1.0);
  CHECK(max_abs_diff(q1, apply_unitary(rho, gates::cnot(), {0, 2})) < 1e-12);

  const DensityMatrix q0 = noisy_gate(rho, gates::cnot(), {0, 2}, 0.0);
  // targets replaced by the maximally mixed state, the rest by the marginal
  const DensityMatrix rest = partial_trace(rho, {1});
  CHECK(max_abs_diff(partial_trace(q0, {0, 2}), DensityMatrix::maximally_mixed(2)) < 1e-12);
  CHECK(max_abs_diff(partial_trace(q0, {1}), rest) < 1e-12);
  // and the two factors are uncorrelated
  const DensityMatrix rebuilt = apply_unitary(
      tensor(DensityMatrix::maximally_mixed(2), rest), gates::swap_gate(), {1, 2});
  CHECK(max_abs_diff(q0, rebuilt) < 1e-12);
}

TEST_CASE("noisy_gate fidelity matches (3q+1)/4 at q = 0.9") {
  const double f = avg_gate_fidelity(choi_of_noisy_gate(gates::cnot(), 0.9), gates::cnot());
  CHECK(f == doctest::Approx(0.925).epsilon(1e-12));
}

TEST_CASE("noisy_gate is affine in q and CPTP on a grid") {
  std::mt19937_64 rng(5);
  for (int it = 0; it < 5; ++it) {
    const DensityMatrix rho = random_density(3, rng);
    const DensityMatrix at0 = noisy_gate(rho, gates::cnot(), {1, 2}, 0.0);
    const DensityMatrix at1 = noisy_gate(rho, gates::cnot(), {1, 2}, 1.0);
    for (double q : {0.2, 0.5, 0.77}) {
      const DensityMatrix got = noisy_gate(rho, gates::cnot(), {1, 2}, q);
      double worst = 0.0;
      for (int i = 0; i < got.dim(); ++i)
        for (int j = 0; j < got.dim(); ++j)
          worst = std::max(worst,
                           std::abs(got.at(i, j) - (q * at1.at(i, j) + (1 - q) * at0.at(i, j))));
      CHECK(worst < 1e-12);
      got.check_invariants();
    }
  }
}

TEST_CASE("noisy_measure") {
  SUBCASE("|0> measured in z gives outcome 0 with probability eta") {
    const DensityMatrix zero = make_pure(StateVector::basis(1, 0));
    for (double eta : {0.0, 0.3, 0.8, 1.0}) {
      const MeasurementOutcome m = noisy_measure(zero, 0, MeasureBasis::z, eta);
      CHECK(m.probabilities[0] == doctest::Approx(eta).epsilon(1e-12));
      CHECK(m.probabilities[0] + m.probabilities[1] == doctest::Approx(1.0).epsilon(1e-10));
    }
  }
  SUBCASE("|+> measured in z is unbiased for every eta") {
    const double s = 1.0 / std::sqrt(2.0);
    const DensityMatrix plus = make_pure(StateVector(1, {s, s}));
    for (double eta : {0.0, 0.4, 1.0}) {
      const MeasurementOutcome m = noisy_measure(plus, 0, MeasureBasis::z, eta);
      CHECK(m.probabilities[0] == doctest::Approx(0.5).epsilon(1e-12));
    }
  }
  SUBCASE("eta = 1 reproduces projective collapse on an entangled state") {
    const DensityMatrix bell = make_pure(bell_phi());
    const MeasurementOutcome m = noisy_measure(bell, 0, MeasureBasis::z, 1.0);
    CHECK(m.probabilities[0] == doctest::Approx(0.5).epsilon(1e-12));
    REQUIRE(m.post_states[0]);
    REQUIRE(m.post_states[1]);
    CHECK(max_abs_diff(*m.post_states[0], make_pure(StateVector::basis(1, 0))) < 1e-12);
    CHECK(max_abs_diff(*m.post_states[1], make_pure(StateVector::basis(1, 1))) < 1e-12);
  }
  SUBCASE("x basis: |+> gives outcome 0 with probability eta") {
    const double s = 1.0 / std::sqrt(2.0);
    const DensityMatrix plus = make_pure(StateVector(1, {s, s}));
    const MeasurementOutcome m = noisy_measure(plus, 0, MeasureBasis::x, 0.85);
    CHECK(m.probabilities[0] == doctest::Approx(0.85).epsilon(1e-12));
  }
  SUBCASE("eta = 1/2 erases all information") {
    std::mt19937_64 rng(7);
    for (int it = 0; it < 5; ++it) {
      const DensityMatrix rho = random_density(2, rng);
      const MeasurementOutcome m = noisy_measure(rho, 1, MeasureBasis::z, 0.5);
      CHECK(m.probabilities[0] == doctest::Approx(0.5).epsilon(1e-10));
      CHECK(m.probabilities[1] == doctest::Approx(0.5).epsilon(1e-10));
    }
  }
  SUBCASE("post states pass invariants and probabilities sum to 1") {
    std::mt19937_64 rng(9);
    for (int it = 0; it < 5; ++it) {
      const DensityMatrix rho = random_density(3, rng);
      for (MeasureBasis basis : {MeasureBasis::z, MeasureBasis::x}) {
        const MeasurementOutcome m = noisy_measure(rho, 1, basis, 0.9);
        CHECK(m.probabilities[0] + m.probabilities[1] == doctest::Approx(1.0).epsilon(1e-10));
        for (int k = 0; k < 2; ++k)
          if (m.probabilities[k] > 1e-12) {
            REQUIRE(m.post_states[k]);
            m.post_states[k]->check_invariants();
          }
      }
    }
  }
  CHECK_THROWS_AS(noisy_measure(make_pure(bell_phi()), 2, MeasureBasis::z, 1.0),
                  std::invalid_argument);
}

TEST_CASE("werner") {
  CHECK(max_abs_diff(werner(1.0), make_pure(bell_phi())) < 1e-12);
  CHECK(max_abs_diff(werner(0.0), DensityMatrix::maximally_mixed(2)) < 1e-12);
  CHECK_THROWS_AS(werner(1.5), std::invalid_argument);
  CHECK_THROWS_AS(werner(-0.5), std::invalid_argument);

  SUBCASE("entangled iff x > 1/3 by the PPT sign") {
    for (double x : {0.30, 0.33}) CHECK(hermitian_min_eig(partial_transpose(werner(x), {0})) > -1e-9);
    for (double x : {0.34, 0.40}) CHECK(hermitian_min_eig(partial_transpose(werner(x), {0})) < -1e-9);
  }
}

TEST_CASE("bell_twirl") {
  SUBCASE("Bell-diagonal states are fixed points") {
    const BellDiagonal in{{0.6, 0.25, 0.1, 0.05}};
    const BellDiagonal out = bell_twirl(in.to_density());
    for (int k = 0; k < 4; ++k) CHECK(out.lambda[k] == doctest::Approx(in.lambda[k]).epsilon(1e-12));
  }
  SUBCASE("werner coefficients") {
    for (double x : {0.0, 0.5, 0.9}) {
      const BellDiagonal out = bell_twirl(werner(x));
      CHECK(out.lambda[0] == doctest::Approx(x + (1 - x) / 4).epsilon(1e-12));
      for (int k : {1, 2, 3}) CHECK(out.lambda[k] == doctest::Approx((1 - x) / 4).epsilon(1e-12));
    }
  }
  SUBCASE("twirl preserves the fidelity exactly") {
    std::mt19937_64 rng(11);
    for (int it = 0; it < 10; ++it) {
      const DensityMatrix rho = random_density(2, rng);
      const BellDiagonal out = bell_twirl(rho);
      CHECK(out.lambda[0] == doctest::Approx(overlap(rho, bell_phi())).epsilon(1e-13));
      double sum = 0.0;
      for (double l : out.lambda) sum += l;
      CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("raw_pair") {
  NoiseParams perfect;
  const RawPair ideal = raw_pair(perfect);
  CHECK(ideal.state.lambda[0] == doctest::Approx(1.0).epsilon(1e-12));

  for (double qp : {0.2, 0.5, 0.8}) {
    NoiseParams n;
    n.q_two = qp;
    CHECK(raw_pair(n).state.fidelity() == doctest::Approx(qp + (1 - qp) / 4).epsilon(1e-12));
  }

  NoiseParams heralded;
  heralded.p_herald = 0.1;
  CHECK(raw_pair(heralded).attempts_expected == doctest::Approx(10.0).epsilon(1e-12));
}

TEST_CASE("reliability and error-rate conversions") {
  CHECK(error_rate_from_q(1.0, 4) == doctest::Approx(0.0));
  CHECK(error_rate_from_q(1.0 / 9.0, 4) == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  CHECK(q_from_error_rate(0.15, 4) == doctest::Approx(0.8).epsilon(1e-14));

  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int it = 0; it < 20; ++it) {
    const double q = u(rng);
    CHECK(q_from_error_rate(error_rate_from_q(q, 4), 4) == doctest::Approx(q).epsilon(1e-12));
    const double p = 0.75 * u(rng);
    CHECK(error_rate_from_q(q_from_error_rate(p, 4), 4) == doctest::Approx(p).epsilon(1e-12));
  }

  CHECK_THROWS_AS(q_from_error_rate(0.9, 4), std::invalid_argument);
  CHECK_THROWS_AS(q_from_error_rate(-0.1, 4), std::invalid_argument);
  CHECK_THROWS_AS(error_rate_from_q(1.2, 4), std::invalid_argument);
  CHECK_THROWS_AS(q_from_error_rate(0.1, 1), std::invalid_argument);

  NoiseParams bad;
  bad.p_herald = 0.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}
