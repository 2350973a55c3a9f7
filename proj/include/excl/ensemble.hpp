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

#include <string>
#include <vector>

#include "excl/linalg.hpp"

namespace excl {

/// Weighted operator list fed to the SDP layer. Operators are PSD but not
/// necessarily unit trace: the problem reductions below produce
/// subnormalized operators by design.
struct OperatorSet {
  int dim = 0;
  std::vector<HermitianMatrix> ops;
  std::vector<std::string> labels;

  int count() const { return static_cast<int>(ops.size()); }
  double total_trace() const;

  /// Validates PSD (margin >= -1e-8), equal dims, count >= 1.
  static OperatorSet make(std::vector<HermitianMatrix> ops, std::vector<std::string> labels);
};

/// A set of preparations: density matrices with prior probabilities.
class Ensemble {
 public:
  /// Validates: each state PSD with unit trace (1e-8), priors sum to 1
  /// (1e-8), equal dims, k >= 1. Labels default to "1".."k".
  static Ensemble make(std::vector<HermitianMatrix> states, std::vector<double> probs,
                       std::vector<std::string> labels = {});

  int dim() const { return dim_; }
  int count() const { return static_cast<int>(states_.size()); }
  const HermitianMatrix& state(int i) const { return states_[i]; }
  double prob(int i) const { return probs_[i]; }
  const std::string& label(int i) const { return labels_[i]; }
  const std::vector<double>& probs() const { return probs_; }

  /// rho_tilde_i = p_i rho_i.
  HermitianMatrix weighted_state(int i) const;

  /// The weighted operator list {p_i rho_i} used by the SDP layer.
  OperatorSet weighted_operators() const;

 private:
  int dim_ = 0;
  std::vector<HermitianMatrix> states_;
  std::vector<double> probs_;
  std::vector<std::string> labels_;
};

/// POVM: PSD elements summing to the identity. When has_inconclusive is
/// set, the trailing element is the inconclusive outcome and the sum
/// constraint still covers every listed element.
struct Measurement {
  std::vector<HermitianMatrix> elements;
  bool has_inconclusive = false;

  /// Number of exclusion outcomes (the inconclusive element not counted).
  int outcome_count() const {
    return static_cast<int>(elements.size()) - (has_inconclusive ? 1 : 0);
  }
  int dim() const { return elements.empty() ? 0 : elements.front().dim(); }

  /// Validates PSD margins >= -1e-8 and sum = I within 1e-8.
  static Measurement make(std::vector<HermitianMatrix> elements, bool has_inconclusive = false);
};

/// All size-m subsets Y of {1..k} with rho_hat_Y = sum_{y in Y} p_y rho_y,
/// in lexicographic order of the index tuples; labels like "{1,3}".
/// Excluding every member of Y at once is single-state exclusion on this
/// set, so the result feeds the same SDP builders.
OperatorSet m_state_reduction(const OperatorSet& weighted, int m);
OperatorSet m_state_reduction(const Ensemble& e, int m);

/// theta_i = (1/(k-1)) sum_{j != i} rho_tilde_j. Minimum-error
/// discrimination on the result is equivalent to exclusion on the input.
OperatorSet to_discrimination(const OperatorSet& weighted);
OperatorSet to_discrimination(const Ensemble& e);

/// sum_i tr[rho_tilde_i M_i] over the exclusion outcomes.
double exclusion_error(const OperatorSet& weighted, const Measurement& m);
double exclusion_error(const Ensemble& e, const Measurement& m);

/// 1 - sum_i tr[theta_i M_i].
double discrimination_error(const OperatorSet& weighted, const Measurement& m);

}  // namespace excl
