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

#include "symcert/states.hpp"

// Exact partial-trace maps between symmetric subspaces. The m-party marginal
// of an N-party symmetric state is again supported on the symmetric subspace,
// so it is represented in the (m+1)-dimensional Dicke basis throughout.

namespace symcert {

/// Linear map from N-party to m-party symmetric density matrices. Entry
/// (a, a') of the marginal is sum_j w(a, a', j) * rho(a + j, a' + j) with
///
///   w = C(N-m, j) * sqrt( C(m,a) C(m,a') / ( C(N,a+j) C(N,a'+j) ) ).
struct MarginalMap {
  int global_parties = 0;    // N
  int marginal_parties = 0;  // m

  double weight(int a, int a_prime, int j) const;

  /// sigma = map(rho); preserves Hermiticity, trace, positivity.
  Eigen::MatrixXcd apply(const Eigen::MatrixXcd& rho) const;

  /// Adjoint: (N+1)-dim observable whose expectation on any global state
  /// equals the expectation of `obs` on that state's marginal.
  Eigen::MatrixXcd adjoint_apply(const Eigen::MatrixXcd& obs) const;

 private:
  friend const MarginalMap& marginal_map(int, int);
  Eigen::MatrixXd weights_;  // (a * (m+1) + a') x j table
};

/// Cached accessor (read-mostly table, single-writer initialization).
/// Requires 1 <= m <= N.
const MarginalMap& marginal_map(int global_parties, int marginal_parties);

/// m-party reduced density matrix of a symmetric state.
Eigen::MatrixXcd reduce(const SymmetricState& state, int marginal_parties);

/// Test oracle: embeds the state into the full 2^N space, traces out N - m
/// parties index-by-index, and projects onto the m-party symmetric basis.
/// Limited to N <= 8.
Eigen::MatrixXcd brute_force_reduce(const SymmetricState& state,
                                    int marginal_parties);

/// Isometry from the (n+1)-dim symmetric basis into the 2^n product space.
Eigen::MatrixXcd dicke_isometry(int parties);

/// m-party operator whose expectation on the m-RDM equals <S_u^k> on the
/// global N-party state. Requires k <= m.
Eigen::MatrixXcd embed_observable(int global_parties, int marginal_parties,
                                  const Eigen::Vector3d& u, int order);

}  // namespace symcert
