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
#include <vector>

#include "excl/models.hpp"

namespace excl {

struct SolveOptions {
  double gap_tol = 1e-9;
  int max_iters = 200;
  double feas_tol = 1e-9;
  std::uint64_t seed = 0;  // drives restarts after numerical failure

  void validate() const;
};

enum class SolveStatus { optimal, max_iters, numerical_failure };

const char* status_name(SolveStatus s);

struct IterationRecord {
  double gap;
  double step_primal;
  double step_dual;
  double mu;
};

struct SolveReport {
  PrimalVars primal;
  DualVars dual;
  double alpha = 0.0;  // primal objective, unified minimization convention
  double beta = 0.0;   // tr[N] of the extracted dual certificate
  double gap = 0.0;    // certified duality gap (nonnegative at optimality)
  int iterations = 0;
  SolveStatus status = SolveStatus::numerical_failure;
  std::vector<IterationRecord> trace;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  int restarts = 0;
};

/// Strictly feasible interior starting points for each variant:
/// min-error uses M_i = I/k against N = -I; the worst-case primal adds
/// lambda above every tr[rho_tilde_i M_i]; the unambiguous primal scales
/// kernel projectors (identity fallback) so the trace constraints hold
/// within feas_tol.
std::pair<PrimalVars, DualVars> strict_start(const ExclusionModel& model);

/// Solve to optimality with an infeasible-start primal-dual interior-point
/// method (Nesterov-Todd scaling, Mehrotra predictor-corrector,
/// fraction-to-boundary 0.98, static Schur regularization 1e-12).
/// Problems are capped at k*d <= 1024.
SolveReport solve(const ExclusionModel& model, const SolveOptions& opts = {});

}  // namespace excl
