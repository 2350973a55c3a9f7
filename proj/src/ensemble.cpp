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

#include "excl/ensemble.hpp"

#include <cmath>

#include "excl/errors.hpp"

namespace excl {

namespace {

constexpr double kPsdTol = 1e-8;
constexpr double kTraceTol = 1e-8;

void check_equal_dims(const std::vector<HermitianMatrix>& ops) {
  for (std::size_t i = 1; i < ops.size(); ++i) {
    if (ops[i].dim() != ops[0].dim()) {
      throw DimensionMismatch("operator " + std::to_string(i + 1) + " has dim " +
                              std::to_string(ops[i].dim()) + ", expected " +
                              std::to_string(ops[0].dim()));
    }
  }
}

}  // namespace

double OperatorSet::total_trace() const {
  double t = 0.0;
  for (const auto& op : ops) t += op.trace_real();
  return t;
}

OperatorSet OperatorSet::make(std::vector<HermitianMatrix> ops,
                              std::vector<std::string> labels) {
  if (ops.empty()) throw EmptyEnsemble("operator set must contain at least one operator");
  check_equal_dims(ops);
  for (std::size_t i = 0; i < ops.size(); ++i) {
    if (psd_margin(ops[i]) < -kPsdTol) {
      throw NotPSD("operator " + std::to_string(i + 1) + " is not PSD");
    }
  }
  if (labels.empty()) {
    for (std::size_t i = 0; i < ops.size(); ++i) labels.push_back(std::to_string(i + 1));
  }
  if (labels.size() != ops.size()) throw CountMismatch("label count != operator count");
  OperatorSet s;
  s.dim = ops[0].dim();
  s.ops = std::move(ops);
  s.labels = std::move(labels);
  return s;
}

Ensemble Ensemble::make(std::vector<HermitianMatrix> states, std::vector<double> probs,
                        std::vector<std::string> labels) {
  if (states.empty()) throw EmptyEnsemble("ensemble must contain at least one state");
  if (states.size() != probs.size()) throw CountMismatch("state count != prior count");
  check_equal_dims(states);
  double sum = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (probs[i] < -kTraceTol || probs[i] > 1.0 + kTraceTol) {
      throw ProbSum("prior " + std::to_string(i + 1) + " outside [0,1]");
    }
    sum += probs[i];
  }
  if (std::abs(sum - 1.0) > kTraceTol) {
    throw ProbSum("priors sum to " + std::to_string(sum) + ", expected 1");
  }
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (std::abs(states[i].trace_real() - 1.0) > kTraceTol) {
      throw NotDensity("state " + std::to_string(i + 1) + " has trace " +
                       std::to_string(states[i].trace_real()));
    }
    if (psd_margin(states[i]) < -kPsdTol) {
      throw NotDensity("state " + std::to_string(i + 1) + " is not PSD");
    }
  }
  if (labels.empty()) {
    for (std::size_t i = 0; i < states.size(); ++i) labels.push_back(std::to_string(i + 1));
  }
  if (labels.size() != states.size()) throw CountMismatch("label count != state count");

  Ensemble e;
  e.dim_ = states[0].dim();
  e.states_ = std::move(states);
  e.probs_ = std::move(probs);
  e.labels_ = std::move(labels);
  return e;
}

HermitianMatrix Ensemble::weighted_state(int i) const {
  HermitianMatrix m = states_[i];
  m *= probs_[i];
  return m;
}

OperatorSet Ensemble::weighted_operators() const {
  OperatorSet s;
  s.dim = dim_;
  s.labels = labels_;
  s.ops.reserve(states_.size());
  for (int i = 0; i < count(); ++i) s.ops.push_back(weighted_state(i));
  return s;
}

Measurement Measurement::make(std::vector<HermitianMatrix> elements, bool has_inconclusive) {
  if (elements.empty()) throw EmptyEnsemble("measurement must contain at least one element");
  check_equal_dims(elements);
  const int d = elements[0].dim();
  HermitianMatrix sum = HermitianMatrix::zero(d);
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (psd_margin(elements[i]) < -kPsdTol) {
      throw NotPSD("measurement element " + std::to_string(i + 1) + " is not PSD");
    }
    sum += elements[i];
  }
  const double completeness = (sum.mat() - ComplexMatrix::identity(d)).max_abs();
  if (completeness > kTraceTol) {
    throw NotPSD("measurement elements sum to identity only within " +
                 std::to_string(completeness));
  }
  Measurement m;
  m.elements = std::move(elements);
  m.has_inconclusive = has_inconclusive;
  return m;
}

OperatorSet m_state_reduction(const OperatorSet& weighted, int m) {
  const int k = weighted.count();
  if (m < 1 || m > k) {
    throw BadSubsetSize("subset size m = " + std::to_string(m) + " outside [1, " +
                        std::to_string(k) + "]");
  }
  OperatorSet out;
  out.dim = weighted.dim;
  // Lexicographic enumeration of index tuples 0 <= c[0] < ... < c[m-1] < k.
  std::vector<int> c(m);
  for (int i = 0; i < m; ++i) c[i] = i;
  while (true) {
    HermitianMatrix acc = HermitianMatrix::zero(weighted.dim);
    std::string label = "{";
    for (int i = 0; i < m; ++i) {
      acc += weighted.ops[c[i]];
      label += (i ? "," : "") + std::to_string(c[i] + 1);
    }
    label += "}";
    out.ops.push_back(std::move(acc));
    out.labels.push_back(std::move(label));

    int i = m - 1;
    while (i >= 0 && c[i] == k - m + i) --i;
    if (i < 0) break;
    ++c[i];
    for (int j = i + 1; j < m; ++j) c[j] = c[j - 1] + 1;
  }
  return out;
}

OperatorSet m_state_reduction(const Ensemble& e, int m) {
  return m_state_reduction(e.weighted_operators(), m);
}

OperatorSet to_discrimination(const OperatorSet& weighted) {
  const int k = weighted.count();
  if (k < 2) throw TooFewStates("discrimination conversion needs k >= 2");
  HermitianMatrix total = HermitianMatrix::zero(weighted.dim);
  for (const auto& op : weighted.ops) total += op;
  OperatorSet out;
  out.dim = weighted.dim;
  out.labels = weighted.labels;
  out.ops.reserve(k);
  const double scale = 1.0 / (k - 1);
  for (int i = 0; i < k; ++i) {
    HermitianMatrix t = total;
    t -= weighted.ops[i];
    t *= scale;
    out.ops.push_back(std::move(t));
  }
  return out;
}

OperatorSet to_discrimination(const Ensemble& e) {
  return to_discrimination(e.weighted_operators());
}

namespace {

double overlap_sum(const OperatorSet& weighted, const Measurement& m) {
  if (weighted.dim != m.dim()) throw DimensionMismatch("ensemble/measurement dim mismatch");
  if (weighted.count() != m.outcome_count()) {
    throw CountMismatch("operator count " + std::to_string(weighted.count()) +
                        " != outcome count " + std::to_string(m.outcome_count()));
  }
  double s = 0.0;
  for (int i = 0; i < weighted.count(); ++i) {
    s += frobenius_inner(weighted.ops[i].mat(), m.elements[i].mat()).real();
  }
  return s;
}

}  // namespace

double exclusion_error(const OperatorSet& weighted, const Measurement& m) {
  return overlap_sum(weighted, m);
}

double exclusion_error(const Ensemble& e, const Measurement& m) {
  return exclusion_error(e.weighted_operators(), m);
}

double discrimination_error(const OperatorSet& weighted, const Measurement& m) {
  return 1.0 - overlap_sum(weighted, m);
}

}  // namespace excl
