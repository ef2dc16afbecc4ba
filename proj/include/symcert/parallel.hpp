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

#include <cstddef>
#include <exception>
#include <utility>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

// Index-deterministic batch evaluation. Results are stored by index, so the
// output is independent of scheduling; the serial path is the reference the
// OpenMP path is tested against.

namespace symcert {

/// Serial reference: out[i] = fn(i).
template <class Fn>
auto serial_map(std::size_t count, Fn&& fn)
    -> std::vector<decltype(fn(std::size_t{0}))> {
  std::vector<decltype(fn(std::size_t{0}))> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(fn(i));
  return out;
}

/// OpenMP map over [0, count). threads = 0 picks the runtime default.
/// The first exception thrown by fn (lowest index) is rethrown after the
/// loop completes; remaining results are still computed.
template <class Fn>
auto parallel_map(std::size_t count, Fn&& fn, int threads = 0)
    -> std::vector<decltype(fn(std::size_t{0}))> {
  using Result = decltype(fn(std::size_t{0}));
  std::vector<Result> out(count);
  std::vector<std::exception_ptr> errors(count);

#ifdef _OPENMP
  const int requested = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(requested)
  for (long long i = 0; i < static_cast<long long>(count); ++i) {
    try {
      out[i] = fn(static_cast<std::size_t>(i));
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
#else
  (void)threads;
  for (std::size_t i = 0; i < count; ++i) {
    try {
      out[i] = fn(i);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
#endif

  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

}  // namespace symcert
