// Copyright 2026 The symcert authors
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

#include <Eigen/Dense>
#include <iosfwd>
#include <string>
#include <vector>

// Small-scale conic solver: one Hermitian PSD block plus a nonnegative scalar
// block, linear equality and interval constraints. Homogeneous self-dual
// embedding with Nesterov-Todd scaling and a Mehrotra predictor-corrector,
// so inconsistent (infeasible) data is detected and reported instead of
// looping. The reported dual value is repaired into a rigorous lower bound
// on the optimum whenever the feasible set carries a known trace bound.

namespace symcert {

struct EqualityConstraint {
  Eigen::MatrixXcd matrix;  // Hermitian
  double value = 0;
};

struct IntervalConstraint {
  Eigen::MatrixXcd matrix;  // Hermitian
  double lower = 0;
  double upper = 0;
};

/// min <C, X>  s.t.  <A_j, X> = b_j,  lo_j <= <B_j, X> <= hi_j,  X >= 0.
struct ConicProblem {
  Eigen::MatrixXcd objective;
  std::vector<EqualityConstraint> equalities;
  std::vector<IntervalConstraint> intervals;

  Eigen::Index dimension() const { return objective.rows(); }

  /// Throws unless every matrix is Hermitian to 1e-12, dimensions agree and
  /// lo_j <= hi_j.
  void validate() const;
};

enum class SolveStatus { optimal, primal_infeasible, dual_infeasible, max_iterations };

const char* to_string(SolveStatus status);

struct SolveOptions {
  double gap_tolerance = 1e-7;
  double feasibility_tolerance = 1e-8;
  int max_iterations = 200;
};

struct ConicSolution {
  SolveStatus status = SolveStatus::max_iterations;
  Eigen::MatrixXcd primal;        // X (PSD block; empty for pure LPs)
  Eigen::VectorXd primal_linear;  // nonnegative block (LP vars, interval slacks)
  /// Multipliers by row: equalities first, then (lower, upper) per interval.
  Eigen::VectorXd dual;
  double primal_value = 0;
  double dual_value = 0;  // certified lower bound on the optimum
  double gap = 0;         // |primal_value - dual_value|
  double primal_residual = 0;
  double dual_residual = 0;
  int iterations = 0;
  std::string message;
};

ConicSolution solve(const ConicProblem& problem, const SolveOptions& options = {});

struct LinearEquality {
  Eigen::VectorXd coefficients;
  double value = 0;
};

struct LinearInterval {
  Eigen::VectorXd coefficients;
  double lower = 0;
  double upper = 0;
};

/// Same engine restricted to the nonnegative orthant (variables >= 0).
ConicSolution solve_lp(const Eigen::VectorXd& costs,
                       const std::vector<LinearEquality>& equalities,
                       const std::vector<LinearInterval>& bounds = {},
                       const SolveOptions& options = {});

// ---------------------------------------------------------------------------
// Standard form and plain-text interchange (SDPA sparse format, see
// docs/formats.md). Interval constraints are lowered to equality rows with
// nonnegative slack variables before export.

struct StandardForm {
  int psd_dim = 0;  // Hermitian block size (0 = none)
  int lin_dim = 0;  // nonnegative scalar block size (0 = none)
  Eigen::MatrixXcd cost_psd;
  Eigen::VectorXd cost_lin;
  struct Row {
    Eigen::MatrixXcd psd;
    Eigen::VectorXd lin;
    double rhs = 0;
  };
  std::vector<Row> rows;

  // Bounds on the feasible set used to repair the dual certificate;
  // non-positive entries mean "unknown". Auto-detected when left unset.
  double psd_trace_bound = -1;
  Eigen::VectorXd lin_upper_bounds;
};

StandardForm to_standard_form(const ConicProblem& problem);
ConicSolution solve_standard(const StandardForm& form,
                             const SolveOptions& options = {});

void write_sdpa(const ConicProblem& problem, std::ostream& out);
std::string write_sdpa_string(const ConicProblem& problem);
StandardForm read_sdpa(std::istream& in);

}  // namespace symcert
