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
#include <optional>
#include <vector>

// Dicke-basis representation of the symmetric subspace of N qudits and the
// collective-spin operators acting on it.
//
// Basis convention (qubits): |D_N^k>, k = 0..N, where k counts excitations
// (spins down). k = 0 comes first, so S_z = diag(N/2 - k) has descending
// eigenvalues.

namespace symcert {

/// exp(lgamma)-based binomial coefficient; exact to double precision and
/// safe from integer overflow for N ~ 100.
double binomial(int n, int k);
double log_binomial(int n, int k);

/// Occupation numbers of m parties over d local levels (a partition index
/// into the symmetric basis). For d = 2 it is equivalent to the excitation
/// count k = counts[1].
struct OccupationVector {
  std::vector<int> counts;

  int parties() const;          // sum of counts
  int local_dimension() const;  // counts.size()
  int excitations() const;      // d == 2 only

  bool valid(int m) const;

  /// All occupation vectors of m parties over d levels, lexicographic order.
  static std::vector<OccupationVector> enumerate(int m, int d);
};

/// Dimension of the symmetric subspace: binomial(N + d - 1, d - 1).
/// Rejects N < 1 and d < 2; throws std::overflow_error if the count does not
/// fit an exact 64-bit integer.
long long dicke_dimension(int parties, int local_dimension);

/// Unit vector (sin t cos p, sin t sin p, cos t) from spherical angles.
Eigen::Vector3d direction_vector(double theta, double phi);

/// Hermitian observable on the symmetric subspace, with moment metadata.
struct SymmetricOperator {
  Eigen::MatrixXcd matrix;
  int parties = 0;
  int order = 1;
  std::optional<Eigen::Vector3d> direction;
};

/// Collective spin S_u = sum_i sigma_u^(i) / 2 in the spin-(N/2)
/// representation. Requires |u| = 1 (tolerance 1e-10) and qubits.
SymmetricOperator collective_spin(int parties, const Eigen::Vector3d& u);

/// S_u^k (matrix power). Rejects order < 1.
SymmetricOperator spin_moment(int parties, const Eigen::Vector3d& u, int order);

/// S_x^2 + S_y^2 + S_z^2; equals (N/2)(N/2+1) * I on the symmetric subspace.
SymmetricOperator total_spin_squared(int parties);

/// Rotation taking the z-axis to u, represented on the (N+1)-dimensional
/// symmetric subspace: exp(-i phi S_z) exp(-i theta S_y).
Eigen::MatrixXcd spin_rotation(int parties, const Eigen::Vector3d& u);

}  // namespace symcert
