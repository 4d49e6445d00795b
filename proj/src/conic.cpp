// SPDX-License-Identifier: Apache-2.0
//
// irsug: joint user grouping and resource allocation for IRS-aided SWIPT
// Copyright (C) 2026 The irsug Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "irsug/conic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace irsug::conic {

LinExpr LinExpr::var(int index, double coef) {
  LinExpr e;
  e.add_term(index, coef);
  return e;
}

void LinExpr::add_term(int index, double coef) {
  if (coef != 0.0) terms_.emplace_back(index, coef);
}

LinExpr& LinExpr::operator+=(const LinExpr& o) {
  terms_.insert(terms_.end(), o.terms_.begin(), o.terms_.end());
  constant_ += o.constant_;
  return *this;
}

LinExpr& LinExpr::operator-=(const LinExpr& o) {
  terms_.reserve(terms_.size() + o.terms_.size());
  for (const auto& [i, c] : o.terms_) terms_.emplace_back(i, -c);
  constant_ -= o.constant_;
  return *this;
}

LinExpr& LinExpr::operator*=(double s) {
  if (s == 0.0) {
    terms_.clear();
    constant_ = 0.0;
    return *this;
  }
  for (auto& t : terms_) t.second *= s;
  constant_ *= s;
  return *this;
}

double LinExpr::evaluate(const RVector& x) const {
  double v = constant_;
  for (const auto& [i, c] : terms_) v += c * x(i);
  return v;
}

void LinExpr::compact() {
  std::sort(terms_.begin(), terms_.end());
  std::vector<std::pair<int, double>> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    if (!out.empty() && out.back().first == t.first)
      out.back().second += t.second;
    else
      out.push_back(t);
  }
  std::erase_if(out, [](const auto& t) { return t.second == 0.0; });
  terms_ = std::move(out);
}

int svec_size(int d) { return d * (d + 1) / 2; }

int svec_index(int d, int row, int col) {
  // Column-major lower triangle: column c holds rows c..d-1.
  return col * d - col * (col - 1) / 2 + (row - col);
}

LinExpr HermitianVar::re(int i, int j) const {
  if (i > j) std::swap(i, j);
  return LinExpr::var(range_.start + i * dim_ + j);
}

LinExpr HermitianVar::im(int i, int j) const {
  if (i == j) return LinExpr();
  if (i < j) return LinExpr::var(range_.start + j * dim_ + i);
  return LinExpr::var(range_.start + i * dim_ + j, -1.0);
}

LinExpr HermitianVar::trace_with(const CMatrix& c) const {
  if (c.rows() != dim_ || c.cols() != dim_) throw ShapeMismatch("trace_with: dimension mismatch");
  LinExpr e;
  for (int i = 0; i < dim_; ++i) {
    e.add_term(range_.start + i * dim_ + i, c(i, i).real());
    for (int j = i + 1; j < dim_; ++j) {
      const Complex cij = 0.5 * (c(i, j) + std::conj(c(j, i)));
      e.add_term(range_.start + i * dim_ + j, 2.0 * cij.real());
      e.add_term(range_.start + j * dim_ + i, 2.0 * cij.imag());
    }
  }
  return e;
}

LinExpr HermitianVar::trace() const {
  LinExpr e;
  for (int i = 0; i < dim_; ++i) e.add_term(range_.start + i * dim_ + i, 1.0);
  return e;
}

CMatrix HermitianVar::decode(const RVector& x) const {
  CMatrix out(dim_, dim_);
  for (int i = 0; i < dim_; ++i) {
    out(i, i) = x(range_.start + i * dim_ + i);
    for (int j = i + 1; j < dim_; ++j) {
      const Complex z(x(range_.start + i * dim_ + j), x(range_.start + j * dim_ + i));
      out(i, j) = z;
      out(j, i) = std::conj(z);
    }
  }
  return out;
}

void HermitianVar::encode(const CMatrix& value, RVector& x) const {
  if (value.rows() != dim_ || value.cols() != dim_) throw ShapeMismatch("encode: dimension mismatch");
  for (int i = 0; i < dim_; ++i) {
    x(range_.start + i * dim_ + i) = value(i, i).real();
    for (int j = i + 1; j < dim_; ++j) {
      x(range_.start + i * dim_ + j) = value(i, j).real();
      x(range_.start + j * dim_ + i) = value(i, j).imag();
    }
  }
}

LinExpr HermitianExpr::re(int i, int j) const {
  LinExpr e(constant(i, j).real());
  for (const auto& [v, c] : terms) e += c * v.re(i, j);
  if (i == j)
    for (const auto& s : identity) e += s;
  return e;
}

LinExpr HermitianExpr::im(int i, int j) const {
  LinExpr e(constant(i, j).imag());
  for (const auto& [v, c] : terms) e += c * v.im(i, j);
  return e;
}

ConeConstraint embed_hermitian_psd(const HermitianExpr& x) {
  const int d = x.dim;
  const int n = 2 * d;
  ConeConstraint c;
  c.kind = ConeKind::Psd;
  c.dim = n;
  c.rows.resize(svec_size(n));
  for (int col = 0; col < n; ++col) {
    for (int row = col; row < n; ++row) {
      const int i = row % d, j = col % d;
      const bool lower_row = row >= d, lower_col = col >= d;
      LinExpr e;
      if (lower_row == lower_col)
        e = x.re(i, j);
      else if (lower_row)  // Im block below the diagonal
        e = x.im(i, j);
      else
        e = -x.im(i, j);
      e.compact();
      c.rows[svec_index(n, row, col)] = std::move(e);
    }
  }
  return c;
}

RMatrix embed_hermitian(const CMatrix& x) {
  const Eigen::Index d = x.rows();
  RMatrix e(2 * d, 2 * d);
  e.topLeftCorner(d, d) = x.real();
  e.bottomRightCorner(d, d) = x.real();
  e.bottomLeftCorner(d, d) = x.imag();
  e.topRightCorner(d, d) = -x.imag();
  return e;
}

CMatrix decode_embedded(const RMatrix& e) {
  const Eigen::Index d = e.rows() / 2;
  CMatrix x(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j)
      x(i, j) = Complex(0.5 * (e(i, j) + e(d + i, d + j)), 0.5 * (e(d + i, j) - e(i, d + j)));
  return x;
}

ConeConstraint perspective_log_hypograph(const LinExpr& u, const LinExpr& t, const LinExpr& z) {
  ConeConstraint c;
  c.kind = ConeKind::Exponential;
  c.rows = {z * std::numbers::ln2, t, u};
  return c;
}

const char* to_string(Status s) {
  switch (s) {
    case Status::Optimal: return "optimal";
    case Status::Infeasible: return "infeasible";
    case Status::Unbounded: return "unbounded";
    case Status::MaxIterations: return "max-iter";
    case Status::NumericalFailure: return "numerical-failure";
  }
  return "unknown";
}

VarRange ConicProblem::add_variable(const std::string& name, int size) {
  if (size < 0) throw InvalidInput("add_variable: negative size");
  if (registry_.count(name)) throw InvalidInput("add_variable: duplicate symbol '" + name + "'");
  VarRange r{num_vars_, size};
  num_vars_ += size;
  registry_[name] = r;
  return r;
}

HermitianVar ConicProblem::add_hermitian(const std::string& name, int dim) {
  return HermitianVar(add_variable(name, dim * dim), dim);
}

void ConicProblem::minimize(const LinExpr& objective) {
  objective_ = objective;
  objective_.compact();
  maximize_ = false;
}

void ConicProblem::maximize(const LinExpr& objective) {
  objective_ = objective;
  objective_.compact();
  maximize_ = true;
}

void ConicProblem::add_equality(const LinExpr& e) {
  LinExpr c = e;
  c.compact();
  equalities_.push_back(std::move(c));
}

void ConicProblem::add_nonnegative(const LinExpr& e) {
  ConeConstraint c;
  c.kind = ConeKind::NonNegative;
  c.rows = {e};
  add_cone(std::move(c));
}

void ConicProblem::add_second_order(std::vector<LinExpr> rows) {
  if (rows.empty()) throw InvalidInput("add_second_order: empty cone");
  ConeConstraint c;
  c.kind = ConeKind::SecondOrder;
  c.rows = std::move(rows);
  add_cone(std::move(c));
}

void ConicProblem::add_rotated_second_order(const LinExpr& y, const LinExpr& z, const std::vector<LinExpr>& x) {
  std::vector<LinExpr> rows;
  rows.reserve(x.size() + 2);
  rows.push_back(y + z);
  rows.push_back(y - z);
  for (const auto& xi : x) rows.push_back(2.0 * xi);
  add_second_order(std::move(rows));
}

void ConicProblem::add_psd(std::vector<LinExpr> lower, int dim) {
  if (static_cast<int>(lower.size()) != svec_size(dim)) throw InvalidInput("add_psd: row count is not svec(dim)");
  ConeConstraint c;
  c.kind = ConeKind::Psd;
  c.dim = dim;
  c.rows = std::move(lower);
  add_cone(std::move(c));
}

void ConicProblem::add_hermitian_psd(const HermitianExpr& x) { add_cone(embed_hermitian_psd(x)); }

void ConicProblem::add_exponential(const LinExpr& x, const LinExpr& y, const LinExpr& z) {
  ConeConstraint c;
  c.kind = ConeKind::Exponential;
  c.rows = {x, y, z};
  add_cone(std::move(c));
}

void ConicProblem::add_cone(ConeConstraint c) {
  if (c.kind == ConeKind::Zero) {
    for (auto& r : c.rows) add_equality(r);
    return;
  }
  if (c.kind == ConeKind::Exponential && c.rows.size() != 3) throw InvalidInput("exponential cone needs 3 rows");
  if (c.kind == ConeKind::Psd && static_cast<int>(c.rows.size()) != svec_size(c.dim))
    throw InvalidInput("psd cone row count mismatch");
  for (auto& r : c.rows) r.compact();
  cones_.push_back(std::move(c));
}

VarRange ConicProblem::lookup(const std::string& name) const {
  const auto it = registry_.find(name);
  if (it == registry_.end()) throw InvalidInput("unknown symbol '" + name + "'");
  return it->second;
}

}  // namespace irsug::conic
