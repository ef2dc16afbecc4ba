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

#include <optional>
#include <string>
#include <vector>

#include "symcert/conic.hpp"
#include "symcert/marginal.hpp"
#include "symcert/states.hpp"

// Certified lower bounds on the fidelity between a target symmetric state
// and any state compatible with partial measurement data, via semidefinite
// programming over the symmetric subspace.

namespace symcert {

/// One measured collective-spin moment: <S_u^k> = value +- noise_halfwidth.
struct MeasurementRecord {
  Eigen::Vector3d direction{0, 0, 1};
  int order = 1;
  double value = 0;
  double noise_halfwidth = 0;
  std::string label;
};

struct SolverDiagnostics {
  SolveStatus status = SolveStatus::max_iterations;
  double gap = 0;
  int iterations = 0;
  double primal_residual = 0;
  double dual_residual = 0;
};

struct CertificationResult {
  double bound = 0;             // certified fidelity lower bound in [0, 1]
  double raw_dual_value = 0;    // before clamping
  std::vector<std::string> constraints_used;
  Eigen::VectorXd dual_certificate;
  SolverDiagnostics diagnostics;
  std::optional<double> rescaling;  // symmetric-overlap factor for PI states
  /// A rank > 1 target makes the certified quantity min <rho, rho_t>, which
  /// lower-bounds the Uhlmann fidelity by concavity.
  bool linear_fidelity_only = false;
};

/// Thrown when measurement data admits no symmetric N-party state.
struct InconsistentDataError : std::runtime_error {
  explicit InconsistentDataError(const std::string& what)
      : std::runtime_error(what) {}
  Eigen::VectorXd certificate;
};

/// Worst-case <rho, rho_t> over states whose full m-RDM equals the target's.
CertificationResult fidelity_from_full_rdm(const SymmetricState& target, int m,
                                           const SolveOptions& options = {});

/// Worst-case <rho, rho_t> over states consistent with the given collective
/// moments (interval constraints when noise_halfwidth > 0). Requires every
/// record's order <= m.
CertificationResult fidelity_from_data(
    const SymmetricState& target, int m,
    const std::vector<MeasurementRecord>& records,
    const SolveOptions& options = {});

struct AngleSearchOptions {
  int grid_phi = 32;    // azimuthal grid points on the half-sphere
  int grid_theta = 16;  // polar grid points
  double angle_tolerance = 1e-3;  // rad, local refinement stop
  int threads = 0;                // 0 = runtime default
  SolveOptions solver;
};

struct AngleSearchResult {
  double theta = 0;
  double phi = 0;
  double bound = 0;
  MeasurementRecord record;  // the optimal measurement, value from the target
  int failed_points = 0;     // grid solves that errored (recorded, skipped)
};

/// Max over measurement directions of the data bound with one added k-order
/// moment whose value is the target's own expectation: coarse half-sphere
/// grid followed by derivative-free (Nelder-Mead) refinement.
AngleSearchResult optimal_single_measurement(
    const SymmetricState& target, int m, int order,
    const std::vector<MeasurementRecord>& fixed,
    const AngleSearchOptions& options = {});

struct SelectionStep {
  MeasurementRecord record;
  double bound = 0;
  bool accepted = false;
};

struct SelectionResult {
  std::vector<MeasurementRecord> records;  // accepted, in acquisition order
  std::vector<double> bound_trace;         // bound after each accepted step
  std::vector<SelectionStep> steps;        // every candidate tried
  double final_bound = 0;
};

/// Greedy measurement selection: stay at the current moment order while it
/// pays more than improvement_tol, then escalate, up to max_order.
SelectionResult select_measurements(const SymmetricState& target, int m,
                                    int max_order,
                                    double improvement_tol = 1e-4,
                                    const AngleSearchOptions& options = {});

// ---------------------------------------------------------------------------
// Permutationally invariant states: bounding the weight on the maximal-spin
// block from one collective measurement (Schur-Weyl block decomposition).

enum class CollectiveObservable { first_moment, second_moment, total_spin_length };

struct SpinBlock {
  double spin = 0;          // S
  double multiplicity = 0;  // g_S = C(N, N/2-S) - C(N, N/2-S-1)
  double lower = 0;         // attainable expectation range in this block
  double upper = 0;
};

struct BlockDecomposition {
  int parties = 0;
  CollectiveObservable observable = CollectiveObservable::first_moment;
  std::vector<SpinBlock> blocks;  // maximal spin first
};

BlockDecomposition block_decomposition(int parties, CollectiveObservable kind,
                                       const Eigen::Vector3d& u = {0, 0, 1});

/// Worst-case weight of the S = N/2 block given a measured value s:
/// (s - H) / (top - H) clamped to [0, 1], H the best non-top block value.
/// Throws if s is outside the physically attainable range.
double symmetric_overlap_bound(const BlockDecomposition& decomposition,
                               double measured);

/// Same bound through an explicit linear program (per-block values at their
/// extremes); must agree with the closed form.
double symmetric_overlap_bound_lp(const BlockDecomposition& decomposition,
                                  double measured,
                                  const SolveOptions& options = {});

/// <tau, rho_t> = lambda * <rho, rho_t> for the symmetric part of a PI state.
double pi_rescale(double symmetric_bound, double lambda_bound);

}  // namespace symcert
