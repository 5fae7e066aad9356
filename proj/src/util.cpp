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

#include "sslab/util.hpp"

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <thread>

namespace sslab {

namespace {

template <typename T>
T pairwise_impl(const T* x, std::size_t n) {
  if (n == 0) return T(0);
  if (n <= 8) {
    T s = x[0];
    for (std::size_t i = 1; i < n; ++i) s += x[i];
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_impl(x, half) + pairwise_impl(x + half, n - half);
}

}  // namespace

double pairwise_sum(const double* x, std::size_t n) { return pairwise_impl(x, n); }
double pairwise_sum(const std::vector<double>& x) { return pairwise_impl(x.data(), x.size()); }
Complex pairwise_sum(const Complex* x, std::size_t n) { return pairwise_impl(x, n); }
Complex pairwise_sum(const std::vector<Complex>& x) { return pairwise_impl(x.data(), x.size()); }

int num_workers() {
  static int cached = [] {
    if (const char* env = std::getenv("SSL_NUM_WORKERS")) {
      int v = std::atoi(env);
      if (v >= 1) return v;
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc > 0 ? static_cast<int>(hc) : 1;
  }();
  return cached;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
  const int workers = num_workers();
  if (workers <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  // Fixed chunking independent of worker count keeps outputs deterministic.
  const std::size_t chunk = 16;
  const std::size_t nchunks = (n + chunk - 1) / chunk;
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t c = next.fetch_add(1);
      if (c >= nchunks) break;
      const std::size_t lo = c * chunk;
      const std::size_t hi = std::min(lo + chunk, n);
      for (std::size_t i = lo; i < hi; ++i) fn(i);
    }
  };
  std::vector<std::thread> pool;
  const int nt = static_cast<int>(std::min<std::size_t>(workers, nchunks));
  pool.reserve(nt);
  for (int t = 0; t < nt; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
}

std::uint64_t fnv1a(const void* data, std::size_t n, std::uint64_t seed) {
  const auto* p = static_cast<const unsigned char*>(data);
  std::uint64_t h = seed;
  for (std::size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= 1099511628211ull;
  }
  return h;
}

std::uint64_t fnv1a(const std::string& bytes) { return fnv1a(bytes.data(), bytes.size()); }

std::string format17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

}  // namespace sslab
