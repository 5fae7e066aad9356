// Copyright (c) 2026 The sslab authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0.txt
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SSLAB_UTIL_HPP
#define SSLAB_UTIL_HPP

#include <complex>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace sslab {

using Complex = std::complex<double>;

/// Deterministic pairwise (tree) summation. The reduction tree depends only on
/// the element count, so the result is bit-stable regardless of how the terms
/// were produced (serially or by a worker pool).
double pairwise_sum(const double* x, std::size_t n);
double pairwise_sum(const std::vector<double>& x);
Complex pairwise_sum(const Complex* x, std::size_t n);
Complex pairwise_sum(const std::vector<Complex>& x);

/// Number of workers used by parallel loops. Reads SSL_NUM_WORKERS once;
/// defaults to the hardware concurrency, at least 1.
int num_workers();

/// Runs fn(i) for i in [0, n). Work is split into fixed-size chunks whose
/// boundaries do not depend on the worker count, so any per-index outputs are
/// deterministic. fn must write only to disjoint per-index slots.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

/// FNV-1a 64-bit hash, used to fingerprint report inputs.
std::uint64_t fnv1a(const std::string& bytes);
std::uint64_t fnv1a(const void* data, std::size_t n, std::uint64_t seed = 1469598103934665603ull);

/// Shortest-width formatting with 17 significant digits (round-trip exact).
std::string format17(double x);

}  // namespace sslab

#endif  // SSLAB_UTIL_HPP
