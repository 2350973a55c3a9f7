// Copyright 2026 The excl Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "excl/ensemble.hpp"
#include "excl/linalg.hpp"

namespace excl::test {

using Rng = std::mt19937_64;

inline ComplexMatrix random_matrix(int rows, int cols, Rng& rng, double scale = 1.0) {
  std::normal_distribution<double> g(0.0, scale);
  ComplexMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = cd(g(rng), g(rng));
  return m;
}

inline HermitianMatrix random_hermitian(int d, Rng& rng, double scale = 1.0) {
  return HermitianMatrix::from_symmetrized(random_matrix(d, d, rng, scale));
}

inline HermitianMatrix random_psd(int d, int rank, Rng& rng) {
  const ComplexMatrix g = random_matrix(d, rank, rng);
  return HermitianMatrix::from_symmetrized(g * g.adjoint());
}

inline HermitianMatrix random_density(int d, int rank, Rng& rng) {
  HermitianMatrix rho = random_psd(d, rank, rng);
  rho *= 1.0 / rho.trace_real();
  return rho;
}

inline ComplexMatrix random_unit_vector(int d, Rng& rng) {
  ComplexMatrix v = random_matrix(d, 1, rng);
  double norm = 0.0;
  for (int i = 0; i < d; ++i) norm += std::norm(v(i, 0));
  norm = std::sqrt(norm);
  for (int i = 0; i < d; ++i) v(i, 0) = v(i, 0) / norm;
  return v;
}

inline std::vector<double> random_priors(int k, Rng& rng) {
  std::uniform_real_distribution<double> u(0.05, 1.0);
  std::vector<double> p(k);
  double sum = 0.0;
  for (double& v : p) {
    v = u(rng);
    sum += v;
  }
  for (double& v : p) v /= sum;
  return p;
}

inline std::vector<double> uniform_priors(int k) {
  return std::vector<double>(k, 1.0 / k);
}

inline Ensemble random_ensemble(int k, int d, Rng& rng, bool uniform = false,
                                bool pure = false) {
  std::vector<HermitianMatrix> states;
  for (int i = 0; i < k; ++i) {
    const int rank = pure ? 1 : 1 + static_cast<int>(rng() % d);
    states.push_back(random_density(d, rank, rng));
  }
  return Ensemble::make(std::move(states), uniform ? uniform_priors(k) : random_priors(k, rng));
}

/// A random POVM with k outcomes: normalized Wishart parts.
inline Measurement random_measurement(int k, int d, Rng& rng) {
  std::vector<HermitianMatrix> parts;
  HermitianMatrix sum = HermitianMatrix::zero(d);
  for (int i = 0; i < k; ++i) {
    parts.push_back(random_psd(d, d, rng));
    sum += parts.back();
  }
  const Spectrum s = eig_hermitian(sum);
  std::vector<double> f(s.eigenvalues.size());
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = 1.0 / std::sqrt(s.eigenvalues[i]);
  const HermitianMatrix t = s.apply(f);
  std::vector<HermitianMatrix> elements;
  for (const auto& p : parts) {
    elements.push_back(HermitianMatrix::from_symmetrized(t.mat() * p.mat() * t.mat()));
  }
  return Measurement::make(std::move(elements));
}

inline ComplexMatrix basis_vector(int d, int i) {
  ComplexMatrix v(d, 1);
  v(i, 0) = 1.0;
  return v;
}

/// Pure qubit pair <psi_0|psi_1> = cos(angle), uniform priors.
inline Ensemble pure_pair(double angle) {
  ComplexMatrix v0(2, 1);
  v0(0, 0) = 1.0;
  ComplexMatrix v1(2, 1);
  v1(0, 0) = std::cos(angle);
  v1(1, 0) = std::sin(angle);
  return Ensemble::make({HermitianMatrix::projector(v0), HermitianMatrix::projector(v1)},
                        uniform_priors(2));
}

/// k states |psi_i> = sum_{j != i} |j> / sqrt(k-1), uniform priors:
/// conclusively excludable yet pairwise fidelity sum meets k(k-2).
inline Ensemble cusp_ensemble(int k) {
  std::vector<HermitianMatrix> states;
  for (int i = 0; i < k; ++i) {
    ComplexMatrix v(k, 1);
    for (int j = 0; j < k; ++j) {
      if (j != i) v(j, 0) = 1.0 / std::sqrt(k - 1.0);
    }
    states.push_back(HermitianMatrix::projector(v));
  }
  return Ensemble::make(std::move(states), uniform_priors(k));
}

/// The orthonormal-basis measurement in dimension d.
inline Measurement basis_measurement(int d) {
  std::vector<HermitianMatrix> elements;
  for (int i = 0; i < d; ++i) elements.push_back(HermitianMatrix::projector(basis_vector(d, i)));
  return Measurement::make(std::move(elements));
}

inline Ensemble identical_pair() {
  const HermitianMatrix rho = HermitianMatrix::projector(basis_vector(2, 0));
  return Ensemble::make({rho, rho}, uniform_priors(2));
}

inline Ensemble orthogonal_pair() {
  return Ensemble::make({HermitianMatrix::projector(basis_vector(2, 0)),
                         HermitianMatrix::projector(basis_vector(2, 1))},
                        uniform_priors(2));
}

inline double helstrom_error(double overlap) {
  return 0.5 * (1.0 - std::sqrt(1.0 - overlap * overlap));
}

}  // namespace excl::test
