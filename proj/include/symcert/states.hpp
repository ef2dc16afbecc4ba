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
#include <cstdint>
#include <string>

#include "symcert/dicke.hpp"

namespace symcert {

/// Density matrix on the symmetric subspace of N qubits (dimension N+1).
struct SymmetricState {
  Eigen::MatrixXcd matrix;
  int parties = 0;
  std::string label;

  /// Throws std::invalid_argument unless Hermitian (1e-12), unit trace
  /// (1e-12) and PSD (min eigenvalue >= -1e-10).
  void validate() const;
};

/// Product state of N qubits polarized along the unit vector u.
SymmetricState coherent_spin_state(int parties, const Eigen::Vector3d& u);

/// One-axis-twisted state: exp(-i (mu/2) S_z^2) applied to the x-polarized
/// coherent state. mu = 2 chi t.
SymmetricState one_axis_twisted(int parties, double mu);

/// Projector onto |D_N^k>.
SymmetricState dicke_state(int parties, int excitations);

/// Ginibre-induced random state: G G^dag / Tr, G an (N+1) x rank matrix of
/// i.i.d. standard complex Gaussians from a seeded generator.
SymmetricState random_symmetric_state(int parties, int rank, std::uint64_t seed);

/// Deterministic per-trial seed derived from a master seed (splitmix64).
std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t index);

/// Tr[obs * rho], real part (observable assumed Hermitian).
double expectation(const SymmetricState& state, const Eigen::MatrixXcd& obs);

struct SqueezingResult {
  double xi2 = 0;             // N Var(S_theta) / <S_x>^2, minimized
  double theta_star = 0;      // minimizer, yz-plane angle from the z-axis
  Eigen::Vector3d direction;  // (0, sin theta*, cos theta*)
};

/// Wineland squeezing parameter, minimized in closed form over yz-plane
/// directions via the 2x2 covariance eigenproblem. Requires <S_x> != 0.
SqueezingResult wineland_xi2(const SymmetricState& state);

inline double to_decibel(double xi2) { return 10.0 * std::log10(xi2); }

/// Uhlmann fidelity Tr[sqrt(sqrt(r1) r2 sqrt(r1))]^2 via Hermitian
/// eigendecompositions.
double uhlmann_fidelity(const SymmetricState& rho1, const SymmetricState& rho2);

}  // namespace symcert
