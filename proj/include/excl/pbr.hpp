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

#include "excl/ensemble.hpp"

namespace excl {

/// n two-level systems, each prepared in |psi_0> or |psi_1> with opening
/// angle theta (radians, [0, pi/2]). Bob wins by naming any bitstring
/// other than the one prepared; the quantum strategy is single-state
/// exclusion on the 2^n product states.
struct PbrGame {
  int n = 1;
  double theta = 0.0;

  /// Validates 1 <= n <= 10 and 0 <= theta <= pi/2.
  static PbrGame make(int n, double theta);
};

struct PbrReport {
  bool criterion_met = false;
  double p_win_global = 0.0;
  double p_win_separable = 0.0;
  double alpha_analytic = 0.0;  // optimal exclusion error of the global strategy
  double c_theta = 0.0;
  double q = 0.0;  // single-copy discrimination error
};

/// The 2^n product states with uniform priors, bitstring labels, dim 2^n.
Ensemble build_pbr_ensemble(const PbrGame& game);

/// The theta-independent orthonormal projective measurement that is
/// optimal below the threshold.
Measurement zeta_measurement(int n);

/// tan(theta/2) >= 2^(1/n) - 1, ties counting as met.
bool criterion(const PbrGame& game);

/// The diagonal dual certificate; when the criterion fails (so the
/// leading coefficient is positive) its feasibility N <= rho_tilde_x and
/// the kernel identity (rho_tilde_x - N)|zeta_x> = 0 are verified
/// numerically.
HermitianMatrix analytic_certificate(const PbrGame& game);

/// C(theta) = cos^{2n}(theta/2) (2 - (1+tan(theta/2))^n) / 2^n.
double c_theta(const PbrGame& game);

/// Closed-form optimal exclusion error: 0 when the criterion holds, else
/// cos^{2n}(theta/2) (2 - (1+tan(theta/2))^n)^2 / 2^n.
double alpha_analytic(const PbrGame& game);

double p_win_global(const PbrGame& game);

/// 1 - q^n with the two-state discrimination error
/// q = (1 - sin(theta)) / 2.
double p_win_separable(const PbrGame& game);

double helstrom_q(double theta);

PbrReport analyze(const PbrGame& game);

}  // namespace excl
