// Copyright 2026 The weilqmc Authors
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
//
// Times the verification sweeps: naive reference vs the incremental kernel
// (single-threaded and with all available threads), plus the two point
// constructions. Results of both code paths are compared on every run.

#include <chrono>
#include <cstdio>
#include <functional>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "weilqmc/charsums.hpp"
#include "weilqmc/pointsets.hpp"

using namespace weilqmc;

namespace {

double time_ms(const std::function<void()>& fn) {
  const auto start = std::chrono::steady_clock::now();
  fn();
  const auto stop = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(stop - start).count();
}

void row(const char* name, double reference_ms, double kernel1_ms, double kernelN_ms) {
  std::printf("%-28s %12.1f %12.1f %12.1f %8.2fx %8.2fx\n", name, reference_ms, kernel1_ms,
              kernelN_ms, reference_ms / kernel1_ms, reference_ms / kernelN_ms);
}

}  // namespace

int main() {
  int threads = 1;
#ifdef _OPENMP
  threads = omp_get_max_threads();
#endif
  std::printf("threads available: %d\n\n", threads);
  std::printf("%-28s %12s %12s %12s %8s %8s\n", "sweep", "reference", "kernel(1)",
              "kernel(all)", "spd(1)", "spd(all)");

  {
    const PrimeModulus n(61);
    VerifyReport ref, k1, kn;
    const double t_ref = time_ms([&] { ref = verify_weil_prime_reference(n, 3); });
    const double t_k1 = time_ms([&] { k1 = verify_weil_prime(n, 3, {}, kDefaultVerifyBudget, 1); });
    const double t_kn = time_ms([&] { kn = verify_weil_prime(n, 3, {}, kDefaultVerifyBudget, 0); });
    if (ref.max_normalized != k1.max_normalized || ref.cases_checked != k1.cases_checked ||
        kn.max_normalized != k1.max_normalized) {
      std::fprintf(stderr, "kernel/reference mismatch in the prime sweep\n");
      return 1;
    }
    row("weil prime N=61 s=3", t_ref, t_k1, t_kn);
  }

  {
    const FieldParams f = FieldParams::find(2, 5, false);
    VerifyReport ref, k1, kn;
    const double t_ref = time_ms([&] { ref = verify_walsh_reference(f, 3); });
    const double t_k1 = time_ms([&] { k1 = verify_walsh(f, 3, {}, kDefaultVerifyBudget, 1); });
    const double t_kn = time_ms([&] { kn = verify_walsh(f, 3, {}, kDefaultVerifyBudget, 0); });
    if (ref.max_normalized != k1.max_normalized || ref.cases_checked != k1.cases_checked ||
        kn.max_normalized != k1.max_normalized) {
      std::fprintf(stderr, "kernel/reference mismatch in the digital sweep\n");
      return 1;
    }
    row("walsh b=2 m=5 s=3", t_ref, t_k1, t_kn);
  }

  {
    const PrimeModulus n(99991);
    PointSet naive, fast;
    const double t_naive = time_ms([&] { naive = gen_weil_pset(n, 8); });
    const double t_fast = time_ms([&] { fast = gen_weil_pset_fast(n, 8); });
    std::printf("\npoint construction N=99991 s=8: naive %.1f ms, fast %.1f ms\n", t_naive, t_fast);
    if (!same_point_multiset(naive, fast)) {
      std::fprintf(stderr, "fast/naive point sets differ\n");
      return 1;
    }
  }
  return 0;
}
