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

#include <map>
#include <string>
#include <vector>

// Quantum-information bounds derived from a certified fidelity.

namespace symcert {

struct DerivedBound {
  enum class Kind { schmidt_rank, qfi, relative_entropy };
  Kind kind;
  double value = 0;   // rank / interval half-width / entropy bound
  double lower = 0;   // qfi interval only
  double upper = 0;
  std::map<std::string, double> inputs;  // provenance: fidelity + parameters
};

/// Smallest certified Schmidt rank: a fidelity above the sum of the r
/// largest coefficients rules out rank <= r. Coefficients must be sorted
/// decreasing and sum to 1 (tolerance 1e-9).
DerivedBound schmidt_number_witness(double fidelity,
                                    const std::vector<double>& schmidt_coefficients);

/// Interval for the quantum Fisher information of the certified state:
/// |F_Q(rho) - F_Q(target)| <= zeta sqrt(1-F) N^2 with zeta = 6 for a pure
/// target and 8 otherwise, intersected with [0, N^2].
DerivedBound qfi_bound(double fidelity, int parties, bool target_pure,
                       double qfi_target);

/// D(rho || sigma) >= Tr[rho log2 rho] - log2 F(rho, sigma); +infinity when
/// the fidelity is zero.
DerivedBound relative_entropy_bound(double fidelity, double rho_entropy_term);

}  // namespace symcert
