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

#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "irsug/numerics.hpp"

namespace irsug::conic {

// Affine scalar expression sum_i coef_i * x[index_i] + constant.
class LinExpr {
 public:
  LinExpr() = default;
  LinExpr(double constant) : constant_(constant) {}  // NOLINT(implicit)
  static LinExpr var(int index, double coef = 1.0);

  LinExpr& operator+=(const LinExpr& o);
  LinExpr& operator-=(const LinExpr& o);
  LinExpr& operator*=(double s);
  friend LinExpr operator+(LinExpr a, const LinExpr& b) { return a += b; }
  friend LinExpr operator-(LinExpr a, const LinExpr& b) { return a -= b; }
  friend LinExpr operator*(LinExpr a, double s) { return a *= s; }
  friend LinExpr operator*(double s, LinExpr a) { return a *= s; }
  friend LinExpr operator-(LinExpr a) { return a *= -1.0; }

  void add_term(int index, double coef);
  double constant() const { return constant_; }
  const std::vector<std::pair<int, double>>& terms() const { return terms_; }
  double evaluate(const RVector& x) const;
  /// Merges duplicate indices and drops zero coefficients.
  void compact();

 private:
  std::vector<std::pair<int, double>> terms_;
  double constant_ = 0.0;
};

struct VarRange {
  int start = 0;
  int size = 0;
  LinExpr operator[](int i) const { return LinExpr::var(start + i); }
};

enum class ConeKind { Zero, NonNegative, SecondOrder, Psd, Exponential };

// Rows of one cone membership. SecondOrder: rows = (t, u...), t >= ||u||.
// Psd: rows are the lower triangle of a real symmetric d x d matrix, column
// by column. Exponential: rows = (x, y, z) with y * exp(x / y) <= z, y > 0.
struct ConeConstraint {
  ConeKind kind = ConeKind::NonNegative;
  std::vector<LinExpr> rows;
  int dim = 0;  // matrix order for Psd
};

int svec_size(int d);
int svec_index(int d, int row, int col);  // row >= col

// Complex Hermitian d x d matrix variable stored as d*d reals: the diagonal,
// Re X_ij in the strict upper cell (i, j) and Im X_ij in the strict lower
// cell (j, i), for i < j.
class HermitianVar {
 public:
  HermitianVar() = default;
  HermitianVar(VarRange range, int dim) : range_(range), dim_(dim) {}
  int dim() const { return dim_; }
  VarRange range() const { return range_; }
  LinExpr re(int i, int j) const;
  LinExpr im(int i, int j) const;
  /// Re tr(C X) for Hermitian C.
  LinExpr trace_with(const CMatrix& c) const;
  LinExpr trace() const;
  /// Re s^H X s.
  LinExpr quad(const CVector& s) const { return trace_with(s * s.adjoint()); }
  CMatrix decode(const RVector& x) const;
  void encode(const CMatrix& value, RVector& x) const;

 private:
  VarRange range_;
  int dim_ = 0;
};

// Affine Hermitian matrix expression sum_t coef_t * X_t + constant.
struct HermitianExpr {
  int dim = 0;
  std::vector<std::pair<HermitianVar, double>> terms;
  CMatrix constant;

  explicit HermitianExpr(int d) : dim(d), constant(CMatrix::Zero(d, d)) {}
  HermitianExpr(const HermitianVar& v) : dim(v.dim()), constant(CMatrix::Zero(v.dim(), v.dim())) {  // NOLINT
    terms.emplace_back(v, 1.0);
  }
  HermitianExpr& add(const HermitianVar& v, double coef) {
    terms.emplace_back(v, coef);
    return *this;
  }
  HermitianExpr& add_identity(const LinExpr& scale) {
    identity.push_back(scale);
    return *this;
  }
  LinExpr re(int i, int j) const;
  LinExpr im(int i, int j) const;
  std::vector<LinExpr> identity;  // affine multiples of I
};

/// Real symmetric embedding [[Re X, -Im X], [Im X, Re X]] of a Hermitian
/// expression as a Psd cone block of order 2d.
ConeConstraint embed_hermitian_psd(const HermitianExpr& x);
/// Numeric version of the embedding, used for checks.
RMatrix embed_hermitian(const CMatrix& x);
/// Numeric inverse of embed_hermitian.
CMatrix decode_embedded(const RMatrix& e);

/// Rows encoding z <= t * log2(u / t).
ConeConstraint perspective_log_hypograph(const LinExpr& u, const LinExpr& t, const LinExpr& z);

enum class Status { Optimal, Infeasible, Unbounded, MaxIterations, NumericalFailure };
const char* to_string(Status s);

class ConicProblem {
 public:
  VarRange add_variable(const std::string& name, int size = 1);
  HermitianVar add_hermitian(const std::string& name, int dim);
  int num_variables() const { return num_vars_; }

  void minimize(const LinExpr& objective);
  void maximize(const LinExpr& objective);
  const LinExpr& objective() const { return objective_; }
  bool is_maximization() const { return maximize_; }

  void add_equality(const LinExpr& e);            // e == 0
  void add_nonnegative(const LinExpr& e);         // e >= 0
  void add_second_order(std::vector<LinExpr> rows);  // rows[0] >= ||rows[1..]||
  void add_rotated_second_order(const LinExpr& y, const LinExpr& z, const std::vector<LinExpr>& x);  // y*z >= ||x||^2, y,z >= 0
  void add_psd(std::vector<LinExpr> lower, int dim);
  void add_hermitian_psd(const HermitianExpr& x);
  void add_exponential(const LinExpr& x, const LinExpr& y, const LinExpr& z);
  void add_cone(ConeConstraint c);

  const std::vector<LinExpr>& equalities() const { return equalities_; }
  const std::vector<ConeConstraint>& cones() const { return cones_; }
  const std::map<std::string, VarRange>& registry() const { return registry_; }
  VarRange lookup(const std::string& name) const;

 private:
  int num_vars_ = 0;
  LinExpr objective_;
  bool maximize_ = false;
  std::vector<LinExpr> equalities_;
  std::vector<ConeConstraint> cones_;
  std::map<std::string, VarRange> registry_;
};

struct SolverOptions {
  double tolerance = 1e-8;
  int max_iterations = 200;
  double barrier_growth = 10.0;
  std::optional<RVector> initial_point;
};

struct ResidualReport {
  double primal = 0.0;  // equality residual
  double dual = 0.0;    // scaled centering residual at the final point
  double gap = 0.0;     // barrier gap bound nu / t
};

struct ConicSolution {
  Status status = Status::NumericalFailure;
  RVector x;
  double objective = 0.0;  // in the caller's sense (max or min)
  ResidualReport residuals;
  int iterations = 0;
  bool phase_one_skipped = false;
  std::string message;

  bool usable() const { return status == Status::Optimal || (status == Status::MaxIterations && x.size() > 0); }
  double value(const LinExpr& e) const { return e.evaluate(x); }
  RVector values(const VarRange& r) const { return x.segment(r.start, r.size); }
};

ConicSolution solve(const ConicProblem& p, const SolverOptions& options = {});

/// True when every cone slack of `x` is strictly interior.
bool strictly_feasible(const ConicProblem& p, const RVector& x);

}  // namespace irsug::conic
