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

#include "excl/certify.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "excl/errors.hpp"

namespace excl {

double Certificate::min_margin() const {
  double m = margins.empty() ? 0.0 : margins.front();
  for (double v : margins) m = std::min(m, v);
  return m;
}

const char* bound_kind_name(BoundKind k) {
  switch (k) {
    case BoundKind::fidelity_condition: return "fidelity-condition";
    case BoundKind::perm_lower_bound: return "perm-lower-bound";
    case BoundKind::witness_trace: return "witness-trace";
  }
  return "?";
}

Certificate theorem1_certificate(const OperatorSet& weighted, const Measurement& m, double tol) {
  if (weighted.count() != m.outcome_count()) {
    throw CountMismatch("certificate needs one measurement outcome per operator");
  }
  if (weighted.dim != m.dim()) throw DimensionMismatch("ensemble/measurement dim mismatch");
  const int d = weighted.dim;
  const int k = weighted.count();

  ComplexMatrix n_raw(d, d);
  double alpha = 0.0;
  for (int i = 0; i < k; ++i) {
    n_raw += weighted.ops[i].mat() * m.elements[i].mat();
    alpha += frobenius_inner(weighted.ops[i].mat(), m.elements[i].mat()).real();
  }

  Certificate cert;
  cert.hermiticity_residual = (n_raw - n_raw.adjoint()).max_abs();
  cert.n = HermitianMatrix::from_symmetrized(n_raw);
  cert.objective_match = std::abs(cert.n.trace_real() - alpha);
  cert.margins.reserve(k);
  for (int i = 0; i < k; ++i) {
    HermitianMatrix slack = weighted.ops[i];
    slack -= cert.n;
    cert.margins.push_back(psd_margin(slack));
  }
  cert.is_optimal = cert.hermiticity_residual <= tol && cert.min_margin() >= -tol &&
                    cert.objective_match <= tol;
  return cert;
}

Certificate theorem1_certificate(const Ensemble& e, const Measurement& m, double tol) {
  return theorem1_certificate(e.weighted_operators(), m, tol);
}

namespace {

double ordered_pair_fidelity_sum(const Ensemble& e) {
  const int k = e.count();
  double sum = 0.0;
  for (int j = 0; j < k; ++j) {
    for (int l = j + 1; l < k; ++l) {
      sum += 2.0 * fidelity(e.state(j), e.state(l));
    }
  }
  return sum;
}

}  // namespace

BoundReport fidelity_condition(const Ensemble& e) {
  const int k = e.count();
  if (k < 2) throw TooFewStates("fidelity condition needs k >= 2");
  BoundReport r;
  r.kind = BoundKind::fidelity_condition;
  r.value = ordered_pair_fidelity_sum(e);
  r.threshold = static_cast<double>(k) * (k - 2);
  r.exclusion_impossible = r.value > r.threshold;
  r.note = r.exclusion_impossible ? "conclusive exclusion impossible"
                                  : "necessary condition met (not sufficient)";
  return r;
}

std::pair<HermitianMatrix, BoundReport> witness_from_fidelity(const Ensemble& e, double eps) {
  const int k = e.count();
  const int d = e.dim();
  if (k < 3) throw DegenerateK("the witness construction needs k >= 3");
  if (!(eps > 0.0 && eps < 1.0)) throw BadEps("eps must lie in (0, 1)");

  // Largest admissible p for this eps; the denominator must stay positive.
  const double denom =
      (k - 1) * (1.0 - eps) * (1.0 - eps) / ((k - 2.0) * (k - 2.0)) - eps;
  if (denom <= 0.0) throw BadEps("eps too large for this k: no admissible p");
  const double p = (eps / denom) * (1.0 - 1e-6);

  std::vector<HermitianMatrix> roots;
  roots.reserve(k);
  for (int i = 0; i < k; ++i) roots.push_back(sqrt_psd(e.state(i)));

  ComplexMatrix n(d, d);
  for (int i = 0; i < k; ++i) n -= e.state(i).mat() * cd(p, 0.0);
  const double couple = (1.0 - eps) / (k - 2.0) * p;
  double fid_sum = 0.0;
  for (int j = 0; j < k; ++j) {
    for (int l = j + 1; l < k; ++l) {
      const ComplexMatrix u = polar_unitary(roots[l].mat() * roots[j].mat());
      const ComplexMatrix cross = roots[j].mat() * u * roots[l].mat();
      n += (cross + cross.adjoint()) * cd(couple, 0.0);
      fid_sum += 2.0 * fidelity(e.state(j), e.state(l));
    }
  }

  BoundReport r;
  r.kind = BoundKind::witness_trace;
  r.p = p;
  r.eps = eps;
  HermitianMatrix nh = HermitianMatrix::from_symmetrized(n);
  r.value = nh.trace_real();
  double min_margin = 1e300;
  for (int i = 0; i < k; ++i) {
    HermitianMatrix slack = e.state(i);
    slack -= nh;
    min_margin = std::min(min_margin, psd_margin(slack));
  }
  r.min_margin = min_margin;
  r.threshold = -k * p + couple * fid_sum;  // closed-form tr N for cross-checking
  r.exclusion_impossible = r.value > 0.0 && min_margin >= -1e-8;
  r.note = r.exclusion_impossible ? "tr N > 0 with feasible margins: exclusion impossible"
                                  : "no verdict";
  return {std::move(nh), r};
}

namespace {

double permutation_trace(const OperatorSet& weighted, const std::vector<int>& perm,
                         HermitianMatrix* out) {
  HermitianMatrix acc = weighted.ops[perm[0]];
  for (std::size_t i = 1; i < perm.size(); ++i) {
    acc = min_op(weighted.ops[perm[i]], acc);
  }
  if (out) *out = acc;
  return acc.trace_real();
}

}  // namespace

BoundReport perm_lower_bound(const OperatorSet& weighted, PermSearch mode, std::uint64_t seed) {
  const int k = weighted.count();
  BoundReport r;
  r.kind = BoundKind::perm_lower_bound;
  r.seed = seed;

  std::vector<int> perm(k);
  std::iota(perm.begin(), perm.end(), 0);

  const bool exhaustive =
      mode == PermSearch::exhaustive || (mode == PermSearch::automatic && k <= 8);
  r.exhaustive = exhaustive;

  double best = -1e300;
  std::vector<int> best_perm;
  auto consider = [&](const std::vector<int>& candidate) {
    const double t = permutation_trace(weighted, candidate, nullptr);
    ++r.permutations_tried;
    if (t > best || (t == best && (best_perm.empty() || candidate < best_perm))) {
      best = t;
      best_perm = candidate;
    }
  };

  if (exhaustive) {
    std::sort(perm.begin(), perm.end());
    do {
      consider(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
  } else {
    consider(perm);  // identity first
    std::mt19937_64 rng(seed);
    const int samples = 10 * k * k;
    for (int s = 0; s < samples; ++s) {
      std::shuffle(perm.begin(), perm.end(), rng);
      consider(perm);
    }
  }

  r.value = best;
  r.permutation = best_perm;

  // By construction N_eps <= rho_tilde_i for every i; record the worst
  // verified margin for the winning permutation.
  HermitianMatrix n_eps;
  permutation_trace(weighted, best_perm, &n_eps);
  double min_margin = 1e300;
  for (int i = 0; i < k; ++i) {
    HermitianMatrix slack = weighted.ops[i];
    slack -= n_eps;
    min_margin = std::min(min_margin, psd_margin(slack));
  }
  r.min_margin = min_margin;
  return r;
}

BoundReport perm_lower_bound(const Ensemble& e, PermSearch mode, std::uint64_t seed) {
  return perm_lower_bound(e.weighted_operators(), mode, seed);
}

bool orthogonality_required(const Ensemble& e, double tol) {
  const int k = e.count();
  if (k < 2) throw TooFewStates("orthogonality check needs k >= 2");
  for (int j = 0; j < k; ++j) {
    for (int l = j + 1; l < k; ++l) {
      if (frobenius_inner(e.state(j).mat(), e.state(l).mat()).real() > tol) return false;
    }
  }
  return true;
}

}  // namespace excl
