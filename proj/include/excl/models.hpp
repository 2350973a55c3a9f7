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

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "excl/ensemble.hpp"

namespace excl {

enum class Variant { min_error, unambiguous, worst_case };

const char* variant_name(Variant v);
std::optional<Variant> variant_from_name(const std::string& name);

/// Primal decision variables. lambda carries the worst-case bound; when it
/// is unset, evaluation uses max_i tr[rho_tilde_i M_i]. For the
/// unambiguous variant the inconclusive element is implicit:
/// M_? = I - sum_i M_i.
struct PrimalVars {
  std::vector<HermitianMatrix> m;
  std::optional<double> lambda;
};

/// Dual decision variables: the certificate N plus the scalar multipliers
/// a_i used by the unambiguous and worst-case duals.
struct DualVars {
  HermitianMatrix n;
  std::vector<double> a;
};

struct FeasibilityReport {
  // Named |residual| of each equality constraint.
  std::vector<std::pair<std::string, double>> equalities;
  // Named smallest-eigenvalue margin of each cone constraint.
  std::vector<std::pair<std::string, double>> margins;

  double max_equality_residual() const;
  double min_psd_margin() const;
  bool feasible(double tol) const {
    return max_equality_residual() <= tol && min_psd_margin() >= -tol;
  }
};

/// One of the three exclusion SDPs over a weighted operator list, in the
/// block form {A, B, Phi}. The block layouts (including the scalar lambda
/// slot of the worst-case primal and the d+k dual blocks of the
/// unambiguous variant) are fixed; the solver and the certificate mapping
/// both rely on them.
class ExclusionModel {
 public:
  /// Validates a nonempty PSD operator list.
  static ExclusionModel build(Variant variant, OperatorSet operators);

  Variant variant() const { return variant_; }
  int dim() const { return ops_.dim; }
  int count() const { return ops_.count(); }
  const OperatorSet& operators() const { return ops_; }
  const HermitianMatrix& op(int i) const { return ops_.ops[i]; }
  /// sum_j rho_tilde_j.
  const HermitianMatrix& operator_sum() const { return op_sum_; }
  double total_trace() const { return op_sum_.trace_real(); }

  /// Objective in the unified minimization convention: average error for
  /// min-error, inconclusive probability for unambiguous, worst-case
  /// error for worst-case.
  double primal_value(const PrimalVars& p) const;

  /// tr[N] for every variant (the unambiguous dual minimizes it, the
  /// other two maximize it).
  double dual_value(const DualVars& d) const;

  /// Oriented duality gap between a primal value and a dual value, both
  /// as reported by the functions above; nonnegative for feasible pairs.
  double duality_gap(double alpha, double beta) const;

  FeasibilityReport primal_feasibility(const PrimalVars& p) const;
  FeasibilityReport dual_feasibility(const DualVars& d) const;

  // --- Block form -------------------------------------------------------
  // X lives on x_block_dims() blocks, Y on y_block_dims() blocks;
  // dimension 1 entries are scalar slots.
  std::vector<int> x_block_dims() const;
  std::vector<int> y_block_dims() const;
  int x_space_dim() const;
  int y_space_dim() const;

  /// Phi(X) as a block list on the Y space.
  std::vector<ComplexMatrix> phi(const std::vector<ComplexMatrix>& xblocks) const;
  /// Phi*(Y) as a block list on the X space.
  std::vector<ComplexMatrix> phi_star(const std::vector<ComplexMatrix>& yblocks) const;

  /// The objective matrix A as one block-diagonal matrix on the X space.
  ComplexMatrix block_a() const;
  /// The constraint matrix B as one block-diagonal matrix on the Y space.
  ComplexMatrix block_b() const;

 private:
  Variant variant_ = Variant::min_error;
  OperatorSet ops_;
  HermitianMatrix op_sum_;
};

/// <X, Y> summed over matching blocks (real for Hermitian inputs).
double block_inner(const std::vector<ComplexMatrix>& x, const std::vector<ComplexMatrix>& y);

}  // namespace excl
