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

#include "excl/pbr.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "excl/errors.hpp"

namespace excl {

namespace {

constexpr int kMaxSystems = 10;
constexpr double kPi = 3.14159265358979323846;

int popcount(unsigned v) { return std::popcount(v); }

std::string bit_label(unsigned x, int n) {
  std::string s(n, '0');
  for (int i = 0; i < n; ++i) {
    if ((x >> (n - 1 - i)) & 1u) s[i] = '1';
  }
  return s;
}

}  // namespace

PbrGame PbrGame::make(int n, double theta) {
  if (n < 1 || n > kMaxSystems) {
    throw ScaleCap("n = " + std::to_string(n) + " outside [1, " + std::to_string(kMaxSystems) +
                   "]");
  }
  if (!(theta >= 0.0 && theta <= kPi / 2 + 1e-12)) {
    throw Error("theta must lie in [0, pi/2]");
  }
  return {n, theta};
}

Ensemble build_pbr_ensemble(const PbrGame& game) {
  const int n = game.n;
  const unsigned dim = 1u << n;
  const double c = std::cos(game.theta / 2.0);
  const double s = std::sin(game.theta / 2.0);

  // Amplitude of |r> in |Psi_x>: (-1)^{x.r} c^{n-|r|} s^{|r|}.
  std::vector<double> weight(dim);
  for (unsigned r = 0; r < dim; ++r) {
    weight[r] = std::pow(c, n - popcount(r)) * std::pow(s, popcount(r));
  }

  std::vector<HermitianMatrix> states;
  std::vector<std::string> labels;
  states.reserve(dim);
  for (unsigned x = 0; x < dim; ++x) {
    ComplexMatrix v(static_cast<int>(dim), 1);
    for (unsigned r = 0; r < dim; ++r) {
      const double sign = (popcount(x & r) & 1) ? -1.0 : 1.0;
      v(static_cast<int>(r), 0) = sign * weight[r];
    }
    states.push_back(HermitianMatrix::projector(v));
    labels.push_back(bit_label(x, n));
  }
  std::vector<double> probs(dim, 1.0 / dim);
  return Ensemble::make(std::move(states), std::move(probs), std::move(labels));
}

Measurement zeta_measurement(int n) {
  if (n < 1 || n > kMaxSystems) {
    throw ScaleCap("n = " + std::to_string(n) + " outside [1, " + std::to_string(kMaxSystems) +
                   "]");
  }
  const unsigned dim = 1u << n;
  const double norm = 1.0 / std::sqrt(static_cast<double>(dim));
  std::vector<HermitianMatrix> elements;
  elements.reserve(dim);
  for (unsigned x = 0; x < dim; ++x) {
    ComplexMatrix v(static_cast<int>(dim), 1);
    v(0, 0) = norm;
    for (unsigned r = 1; r < dim; ++r) {
      const double sign = (popcount(x & r) & 1) ? -1.0 : 1.0;
      v(static_cast<int>(r), 0) = -sign * norm;
    }
    elements.push_back(HermitianMatrix::projector(v));
  }
  return Measurement::make(std::move(elements), false);
}

bool criterion(const PbrGame& game) {
  const double threshold = std::pow(2.0, 1.0 / game.n) - 1.0;
  return std::tan(game.theta / 2.0) - threshold >= 0.0;
}

double c_theta(const PbrGame& game) {
  const int n = game.n;
  const double t = std::tan(game.theta / 2.0);
  const double c = std::cos(game.theta / 2.0);
  return std::pow(c, 2 * n) * (2.0 - std::pow(1.0 + t, n)) / std::pow(2.0, n);
}

double alpha_analytic(const PbrGame& game) {
  if (criterion(game)) return 0.0;
  const int n = game.n;
  const double t = std::tan(game.theta / 2.0);
  const double c = std::cos(game.theta / 2.0);
  const double core = 2.0 - std::pow(1.0 + t, n);
  return std::pow(c, 2 * n) * core * core / std::pow(2.0, n);
}

HermitianMatrix analytic_certificate(const PbrGame& game) {
  const int n = game.n;
  const unsigned dim = 1u << n;
  const double coeff = c_theta(game);
  const double t = std::tan(game.theta / 2.0);

  std::vector<double> diag(dim);
  diag[0] = coeff;
  for (unsigned r = 1; r < dim; ++r) {
    diag[r] = -coeff * std::pow(t, popcount(r));
  }
  HermitianMatrix cert = HermitianMatrix::diagonal(diag);

  if (coeff > 0.0) {
    // Direct numerical replacement for the eigenvalue-interlacing proof:
    // every rho_tilde_x - N must be PSD and annihilate |zeta_x>.
    const Ensemble ens = build_pbr_ensemble(game);
    const Measurement zeta = zeta_measurement(n);
    for (unsigned x = 0; x < dim; ++x) {
      HermitianMatrix slack = ens.weighted_state(static_cast<int>(x));
      slack -= cert;
      if (psd_margin(slack) < -1e-8) {
        throw Error("analytic certificate margin violated at x = " + bit_label(x, n));
      }
      // (rho_tilde_x - N) |zeta_x> = 0: evaluate through the projector.
      const ComplexMatrix prod = slack.mat() * zeta.elements[x].mat();
      if (prod.max_abs() > 1e-8) {
        throw Error("analytic certificate kernel identity violated at x = " + bit_label(x, n));
      }
    }
  }
  return cert;
}

double p_win_global(const PbrGame& game) {
  return criterion(game) ? 1.0 : 1.0 - alpha_analytic(game);
}

double helstrom_q(double theta) { return 0.5 * (1.0 - std::sin(theta)); }

double p_win_separable(const PbrGame& game) {
  return 1.0 - std::pow(helstrom_q(game.theta), game.n);
}

PbrReport analyze(const PbrGame& game) {
  PbrReport r;
  r.criterion_met = criterion(game);
  r.c_theta = c_theta(game);
  r.q = helstrom_q(game.theta);
  r.alpha_analytic = alpha_analytic(game);
  r.p_win_global = p_win_global(game);
  r.p_win_separable = p_win_separable(game);
  return r;
}

}  // namespace excl
