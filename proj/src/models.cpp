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

#include "excl/models.hpp"

#include <algorithm>
#include <cmath>

#include "excl/errors.hpp"

namespace excl {

const char* variant_name(Variant v) {
  switch (v) {
    case Variant::min_error: return "min-error";
    case Variant::unambiguous: return "unambiguous";
    case Variant::worst_case: return "worst-case";
  }
  return "?";
}

std::optional<Variant> variant_from_name(const std::string& name) {
  if (name == "min-error") return Variant::min_error;
  if (name == "unambiguous") return Variant::unambiguous;
  if (name == "worst-case") return Variant::worst_case;
  return std::nullopt;
}

double FeasibilityReport::max_equality_residual() const {
  double m = 0.0;
  for (const auto& [name, r] : equalities) m = std::max(m, std::abs(r));
  return m;
}

double FeasibilityReport::min_psd_margin() const {
  if (margins.empty()) return 0.0;
  double m = margins.front().second;
  for (const auto& [name, v] : margins) m = std::min(m, v);
  return m;
}

ExclusionModel ExclusionModel::build(Variant variant, OperatorSet operators) {
  if (operators.count() == 0) throw EmptyEnsemble("model needs at least one operator");
  for (int i = 0; i < operators.count(); ++i) {
    if (psd_margin(operators.ops[i]) < -1e-8) {
      throw NotPSD("model operator " + std::to_string(i + 1) + " is not PSD");
    }
  }
  ExclusionModel m;
  m.variant_ = variant;
  m.op_sum_ = HermitianMatrix::zero(operators.dim);
  for (const auto& op : operators.ops) m.op_sum_ += op;
  m.ops_ = std::move(operators);
  return m;
}

namespace {

void check_primal_shape(const ExclusionModel& model, const PrimalVars& p) {
  if (static_cast<int>(p.m.size()) != model.count()) {
    throw CountMismatch("measurement has " + std::to_string(p.m.size()) +
                        " elements, model expects " + std::to_string(model.count()));
  }
  for (const auto& mi : p.m) {
    if (mi.dim() != model.dim()) throw DimensionMismatch("measurement element dim mismatch");
  }
}

double overlap(const HermitianMatrix& a, const HermitianMatrix& b) {
  return frobenius_inner(a.mat(), b.mat()).real();
}

}  // namespace

double ExclusionModel::primal_value(const PrimalVars& p) const {
  check_primal_shape(*this, p);
  switch (variant_) {
    case Variant::min_error: {
      double alpha = 0.0;
      for (int i = 0; i < count(); ++i) alpha += overlap(ops_.ops[i], p.m[i]);
      return alpha;
    }
    case Variant::unambiguous: {
      // Inconclusive probability tr[(sum_j rho_tilde_j) M_?].
      HermitianMatrix m_inc = HermitianMatrix::identity(dim());
      for (const auto& mi : p.m) m_inc -= mi;
      return overlap(op_sum_, m_inc);
    }
    case Variant::worst_case: {
      if (p.lambda) return *p.lambda;
      double worst = 0.0;
      for (int i = 0; i < count(); ++i) worst = std::max(worst, overlap(ops_.ops[i], p.m[i]));
      return worst;
    }
  }
  return 0.0;
}

double ExclusionModel::dual_value(const DualVars& d) const {
  if (d.n.dim() != dim()) throw DimensionMismatch("certificate dim mismatch");
  return d.n.trace_real();
}

double ExclusionModel::duality_gap(double alpha, double beta) const {
  if (variant_ == Variant::unambiguous) {
    // alpha + tr[N] converges to the total trace at optimality.
    return std::abs(total_trace() - alpha - beta);
  }
  return alpha - beta;
}

FeasibilityReport ExclusionModel::primal_feasibility(const PrimalVars& p) const {
  check_primal_shape(*this, p);
  FeasibilityReport r;
  HermitianMatrix sum = HermitianMatrix::zero(dim());
  for (const auto& mi : p.m) sum += mi;
  for (int i = 0; i < count(); ++i) {
    r.margins.emplace_back("M_" + ops_.labels[i] + " >= 0", psd_margin(p.m[i]));
  }
  switch (variant_) {
    case Variant::min_error: {
      r.equalities.emplace_back("sum M_i = I",
                                (sum.mat() - ComplexMatrix::identity(dim())).max_abs());
      break;
    }
    case Variant::unambiguous: {
      HermitianMatrix slack = HermitianMatrix::identity(dim());
      slack -= sum;
      r.margins.emplace_back("M_? = I - sum M_i >= 0", psd_margin(slack));
      for (int i = 0; i < count(); ++i) {
        r.equalities.emplace_back("tr[rho_" + ops_.labels[i] + " M_" + ops_.labels[i] + "] = 0",
                                  overlap(ops_.ops[i], p.m[i]));
      }
      break;
    }
    case Variant::worst_case: {
      r.equalities.emplace_back("sum M_i = I",
                                (sum.mat() - ComplexMatrix::identity(dim())).max_abs());
      const double lambda = p.lambda ? *p.lambda : primal_value(p);
      r.margins.emplace_back("lambda >= 0", lambda);
      for (int i = 0; i < count(); ++i) {
        r.margins.emplace_back("lambda >= tr[rho_" + ops_.labels[i] + " M_" + ops_.labels[i] + "]",
                               lambda - overlap(ops_.ops[i], p.m[i]));
      }
      break;
    }
  }
  return r;
}

FeasibilityReport ExclusionModel::dual_feasibility(const DualVars& d) const {
  if (d.n.dim() != dim()) throw DimensionMismatch("certificate dim mismatch");
  FeasibilityReport r;
  switch (variant_) {
    case Variant::min_error: {
      for (int i = 0; i < count(); ++i) {
        HermitianMatrix slack = ops_.ops[i];
        slack -= d.n;
        r.margins.emplace_back("rho_" + ops_.labels[i] + " - N >= 0", psd_margin(slack));
      }
      break;
    }
    case Variant::unambiguous: {
      if (static_cast<int>(d.a.size()) != count()) {
        throw CountMismatch("unambiguous dual needs k multipliers a_i");
      }
      r.margins.emplace_back("N >= 0", psd_margin(d.n));
      for (int i = 0; i < count(); ++i) {
        HermitianMatrix slack = ops_.ops[i];
        slack *= d.a[i];
        slack += d.n;
        slack -= op_sum_;
        r.margins.emplace_back("a_" + ops_.labels[i] + " rho + N - sum rho >= 0",
                               psd_margin(slack));
      }
      break;
    }
    case Variant::worst_case: {
      if (static_cast<int>(d.a.size()) != count()) {
        throw CountMismatch("worst-case dual needs k multipliers a_i");
      }
      double a_sum = 0.0;
      for (int i = 0; i < count(); ++i) {
        a_sum += d.a[i];
        r.margins.emplace_back("a_" + ops_.labels[i] + " >= 0", d.a[i]);
        HermitianMatrix slack = ops_.ops[i];
        slack *= d.a[i];
        slack -= d.n;
        r.margins.emplace_back("a_" + ops_.labels[i] + " rho - N >= 0", psd_margin(slack));
      }
      r.margins.emplace_back("1 - sum a_i >= 0", 1.0 - a_sum);
      break;
    }
  }
  return r;
}

std::vector<int> ExclusionModel::x_block_dims() const {
  std::vector<int> dims;
  if (variant_ == Variant::worst_case) dims.push_back(1);
  for (int i = 0; i < count(); ++i) dims.push_back(dim());
  return dims;
}

std::vector<int> ExclusionModel::y_block_dims() const {
  switch (variant_) {
    case Variant::min_error: return {dim()};
    case Variant::unambiguous: {
      std::vector<int> dims{dim()};
      dims.insert(dims.end(), count(), 1);
      return dims;
    }
    case Variant::worst_case: {
      std::vector<int> dims(count(), 1);
      dims.push_back(dim());
      return dims;
    }
  }
  return {};
}

int ExclusionModel::x_space_dim() const {
  int n = 0;
  for (int d : x_block_dims()) n += d;
  return n;
}

int ExclusionModel::y_space_dim() const {
  int n = 0;
  for (int d : y_block_dims()) n += d;
  return n;
}

namespace {

void check_blocks(const std::vector<ComplexMatrix>& blocks, const std::vector<int>& dims,
                  const char* what) {
  if (blocks.size() != dims.size()) throw CountMismatch(std::string(what) + ": block count");
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (blocks[i].rows() != dims[i] || blocks[i].cols() != dims[i]) {
      throw DimensionMismatch(std::string(what) + ": block " + std::to_string(i) + " shape");
    }
  }
}

}  // namespace

std::vector<ComplexMatrix> ExclusionModel::phi(const std::vector<ComplexMatrix>& x) const {
  check_blocks(x, x_block_dims(), "phi");
  const int d = dim();
  const int k = count();
  switch (variant_) {
    case Variant::min_error: {
      ComplexMatrix sum(d, d);
      for (const auto& b : x) sum += b;
      return {sum};
    }
    case Variant::unambiguous: {
      std::vector<ComplexMatrix> out;
      ComplexMatrix sum(d, d);
      for (const auto& b : x) sum += b;
      out.push_back(sum);
      for (int i = 0; i < k; ++i) {
        ComplexMatrix t(1, 1);
        t(0, 0) = frobenius_inner(ops_.ops[i].mat(), x[i]);
        out.push_back(t);
      }
      return out;
    }
    case Variant::worst_case: {
      std::vector<ComplexMatrix> out;
      const cd lambda = x[0](0, 0);
      for (int i = 0; i < k; ++i) {
        ComplexMatrix t(1, 1);
        t(0, 0) = lambda - frobenius_inner(ops_.ops[i].mat(), x[i + 1]);
        out.push_back(t);
      }
      ComplexMatrix sum(d, d);
      for (int i = 0; i < k; ++i) sum += x[i + 1];
      out.push_back(sum);
      return out;
    }
  }
  return {};
}

std::vector<ComplexMatrix> ExclusionModel::phi_star(const std::vector<ComplexMatrix>& y) const {
  check_blocks(y, y_block_dims(), "phi_star");
  const int k = count();
  switch (variant_) {
    case Variant::min_error: {
      std::vector<ComplexMatrix> out(k, y[0]);
      return out;
    }
    case Variant::unambiguous: {
      std::vector<ComplexMatrix> out;
      for (int i = 0; i < k; ++i) {
        ComplexMatrix b = ops_.ops[i].mat();
        b *= y[i + 1](0, 0);
        b += y[0];
        out.push_back(std::move(b));
      }
      return out;
    }
    case Variant::worst_case: {
      std::vector<ComplexMatrix> out;
      ComplexMatrix head(1, 1);
      for (int i = 0; i < k; ++i) head(0, 0) += y[i](0, 0);
      out.push_back(head);
      for (int i = 0; i < k; ++i) {
        ComplexMatrix b = ops_.ops[i].mat();
        b *= -y[i](0, 0);
        b += y[k];
        out.push_back(std::move(b));
      }
      return out;
    }
  }
  return {};
}

namespace {

ComplexMatrix block_diag(const std::vector<ComplexMatrix>& blocks) {
  int n = 0;
  for (const auto& b : blocks) n += b.rows();
  ComplexMatrix big(n, n);
  int off = 0;
  for (const auto& b : blocks) {
    for (int i = 0; i < b.rows(); ++i)
      for (int j = 0; j < b.cols(); ++j) big(off + i, off + j) = b(i, j);
    off += b.rows();
  }
  return big;
}

}  // namespace

ComplexMatrix ExclusionModel::block_a() const {
  std::vector<ComplexMatrix> blocks;
  switch (variant_) {
    case Variant::min_error:
      for (int i = 0; i < count(); ++i) blocks.push_back(ops_.ops[i].mat());
      break;
    case Variant::unambiguous:
      // Maximization objective: each diagonal block holds sum_j rho_tilde_j.
      for (int i = 0; i < count(); ++i) blocks.push_back(op_sum_.mat());
      break;
    case Variant::worst_case: {
      ComplexMatrix head(1, 1);
      head(0, 0) = 1.0;
      blocks.push_back(head);
      for (int i = 0; i < count(); ++i) blocks.push_back(ComplexMatrix::zero(dim(), dim()));
      break;
    }
  }
  return block_diag(blocks);
}

ComplexMatrix ExclusionModel::block_b() const {
  std::vector<ComplexMatrix> blocks;
  switch (variant_) {
    case Variant::min_error:
      blocks.push_back(ComplexMatrix::identity(dim()));
      break;
    case Variant::unambiguous:
      blocks.push_back(ComplexMatrix::identity(dim()));
      for (int i = 0; i < count(); ++i) blocks.push_back(ComplexMatrix::zero(1, 1));
      break;
    case Variant::worst_case:
      for (int i = 0; i < count(); ++i) blocks.push_back(ComplexMatrix::zero(1, 1));
      blocks.push_back(ComplexMatrix::identity(dim()));
      break;
  }
  return block_diag(blocks);
}

double block_inner(const std::vector<ComplexMatrix>& x, const std::vector<ComplexMatrix>& y) {
  if (x.size() != y.size()) throw CountMismatch("block_inner: block count mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += frobenius_inner(x[i], y[i]).real();
  return s;
}

}  // namespace excl
