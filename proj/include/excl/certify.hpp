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

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "excl/ensemble.hpp"

namespace excl {

/// Outcome of checking a measurement for min-error optimality via its
/// induced dual candidate N = sum_i rho_tilde_i M_i.
struct Certificate {
  HermitianMatrix n;
  double hermiticity_residual = 0.0;
  std::vector<double> margins;  // min eig of rho_tilde_i - N, per i
  double objective_match = 0.0;  // |tr N - alpha(M)|
  bool is_optimal = false;

  double min_margin() const;
};

enum class BoundKind { fidelity_condition, perm_lower_bound, witness_trace };

const char* bound_kind_name(BoundKind k);

struct BoundReport {
  BoundKind kind = BoundKind::fidelity_condition;
  double value = 0.0;

  // fidelity_condition: the threshold k(k-2) and the verdict.
  double threshold = 0.0;
  bool exclusion_impossible = false;

  // perm_lower_bound: the achieving permutation (0-based), search info.
  std::vector<int> permutation;
  bool exhaustive = false;
  std::uint64_t seed = 0;
  int permutations_tried = 0;

  // witness_trace: chosen parameters and verified dual margin.
  double p = 0.0;
  double eps = 0.0;
  double min_margin = 0.0;

  std::string note;
};

/// Builds N = sum_i rho_tilde_i M_i and checks Hermiticity, the dual
/// constraints N <= rho_tilde_i, and tr N = alpha(M). All three passing
/// proves the measurement optimal for min-error exclusion.
Certificate theorem1_certificate(const OperatorSet& weighted, const Measurement& m,
                                 double tol = 1e-8);
Certificate theorem1_certificate(const Ensemble& e, const Measurement& m, double tol = 1e-8);

/// Sum of pairwise fidelities over ordered pairs, compared against
/// k(k-2). Exceeding the threshold proves conclusive exclusion
/// impossible; priors play no role.
BoundReport fidelity_condition(const Ensemble& e);

/// The explicit dual witness built from polar unitaries of
/// sqrt(rho_l) sqrt(rho_j), with p at its largest admissible value for
/// the given eps. Feasible against the unit-trace states rho_i; a
/// positive trace certifies that conclusive exclusion is impossible.
/// Requires k >= 3.
std::pair<HermitianMatrix, BoundReport> witness_from_fidelity(const Ensemble& e,
                                                              double eps = 1e-3);

enum class PermSearch { automatic, exhaustive, sampled };

/// max over permutations of tr[min(rho_eps(k), min(..., rho_eps(1)))],
/// a lower bound on the min-error optimum. Exhaustive for k <= 8 (in
/// automatic mode), otherwise 10*k^2 seeded samples plus the identity.
BoundReport perm_lower_bound(const OperatorSet& weighted, PermSearch mode = PermSearch::automatic,
                             std::uint64_t seed = 0);
BoundReport perm_lower_bound(const Ensemble& e, PermSearch mode = PermSearch::automatic,
                             std::uint64_t seed = 0);

/// True iff all pairs satisfy tr[rho_j rho_l] <= tol: the necessary
/// condition for perfect discrimination (exclusion of all (k-1)-subsets).
bool orthogonality_required(const Ensemble& e, double tol = 1e-8);

}  // namespace excl
