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

#ifndef WEILQMC_CHARSUMS_HPP
#define WEILQMC_CHARSUMS_HPP

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "weilqmc/finitefield.hpp"
#include "weilqmc/pointsets.hpp"

namespace weilqmc {

// Exact accumulator for a sum of d-th roots of unity: counts[t] holds the
// number of summands equal to e^{2 pi i t / d}. The complex value and its
// magnitude are derived from the counts only at output time, so bound
// verification stays in integer arithmetic for as long as possible.
struct RootOfUnityTally {
  std::uint64_t modulus = 1;
  std::vector<std::uint64_t> counts;

  explicit RootOfUnityTally(std::uint64_t d) : modulus(d), counts(d, 0) {}

  std::uint64_t total() const;
  void add(std::uint64_t index, std::uint64_t count = 1) { counts[index] += count; }
  void merge(const RootOfUnityTally& other);

  std::complex<double> value() const;
  double magnitude() const;

  // |sum|^2 as an exact integer where the cyclotomy allows it: always for
  // modulus 1, 2, 3, 4, and for prime modulus whenever the squared
  // magnitude is rational (detected through the count autocorrelation
  // being constant away from lag zero). Returns nullopt otherwise.
  std::optional<std::uint64_t> magnitude_sq_exact() const;
};

// Exact tally of sum_n e^{2 pi i (k . x_n)} over a point set with prime
// denominator N: the phase (k . residues_n) mod N is reduced in integer
// arithmetic before anything floating happens.
RootOfUnityTally exp_sum(const std::vector<std::int64_t>& k, const PointSet& p);

// Walsh function machinery for one fixed field, with the digit bijections
// mu = phi = base-b digit map and the trace character. Memoizes per-digit
// weight rows, hence not safe for concurrent use; create one instance per
// thread.
class WalshEvaluator {
 public:
  explicit WalshEvaluator(FieldParams f);

  const FieldParams& params() const { return f_; }

  // Tr(mu(kappa) * phi(xi)) mod b for kappa, xi in [0, b^m).
  std::uint32_t pair_index(std::uint64_t kappa, std::uint64_t xi) const;

  // Index of wal_k(num/den) for any rational in [0,1). Digits of x are
  // extracted by exact long division, using the terminating expansion at
  // b^m-adic rationals.
  std::uint32_t eval_index(std::uint64_t k, std::uint64_t num, std::uint64_t den) const;
  UnitRoot eval(std::uint64_t k, std::uint64_t num, std::uint64_t den) const;

  // w_i = Tr(mu(kappa) x^i) for i < m; pair_index(kappa, xi) is the base-b
  // digit dot product of xi with this row. Exposed for kernel tables.
  const std::vector<std::uint8_t>& weight_row(std::uint64_t kappa) const;

 private:
  FieldParams f_;
  mutable std::unordered_map<std::uint64_t, std::vector<std::uint8_t>> rows_;
};

// Normalized Weil bound for the digital construction: (s b/(b-1) - 1) sqrt(b^m)
// divided by b^m.
double walsh_weil_bound_normalized(std::uint32_t b, std::uint64_t card, std::size_t s);

// Exact tally of sum_n wal_l(z_n) over a Walsh point set generated with
// the same field parameters and bijections. For l not divisible by b^m
// the Weil bound is asserted on the exact counts (a violation would
// falsify the implementation, not the theorem).
RootOfUnityTally walsh_sum(const std::vector<std::uint64_t>& ell, const PointSet& r);

struct OrthonormalityReport {
  bool identity = false;
  std::uint64_t k_limit = 0;
  std::uint64_t grid = 0;       // L = b^{m a} >= k_limit
  std::uint64_t pairs_checked = 0;
};

// Verifies (1/L) sum_l wal_k(l/L) conj(wal_k'(l/L)) = delta_{k,k'} for all
// k, k' < k_limit, exactly via tallies.
OrthonormalityReport walsh_orthonormality_check(const FieldParams& f, std::uint64_t k_limit);

struct SampledMode {
  std::uint64_t count = 0;
  std::uint64_t seed = 0;
};

struct VerifyReport {
  double max_normalized = 0.0;
  double bound = 0.0;            // normalized: (s-1)/sqrt(N), or the digital analogue
  bool binding = true;           // bound below the trivial bound 1
  std::uint64_t cases_checked = 0;
  std::uint64_t violations = 0;
  bool exhaustive = true;
  std::optional<std::uint64_t> seed;
  std::string generator;         // RNG name for sampled runs
  std::string notes;
};

// Budget in character sums evaluated per verification run.
inline constexpr std::uint64_t kDefaultVerifyBudget = 100'000'000;

// Sweeps k over {0,...,N-1}^s \ {0} (or draws `count` random k) and checks
// |sum_n e^{2 pi i k.x_n}| <= (s-1) sqrt(N) on exact tallies with zero
// tolerance: near-boundary cases are resolved in integer arithmetic.
// Throws std::domain_error when an exhaustive sweep exceeds the budget.
VerifyReport verify_weil_prime(PrimeModulus n, std::size_t s,
                               std::optional<SampledMode> sampled = {},
                               std::uint64_t budget = kDefaultVerifyBudget,
                               int threads = 0);

// Straightforward single-threaded re-computation of the exhaustive sweep,
// kept as the reference the optimized kernel is tested against.
VerifyReport verify_weil_prime_reference(PrimeModulus n, std::size_t s);

// Digital analogue over all l in {0,...,b^m-1}^s with b^m not dividing l:
// |sum_n wal_l(z_n)| <= (s b/(b-1) - 1) sqrt(b^m), exact for b in {2,3}.
VerifyReport verify_walsh(const FieldParams& f, std::size_t s,
                          std::optional<SampledMode> sampled = {},
                          std::uint64_t budget = kDefaultVerifyBudget,
                          int threads = 0);

VerifyReport verify_walsh_reference(const FieldParams& f, std::size_t s);

}  // namespace weilqmc

#endif  // WEILQMC_CHARSUMS_HPP
