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

#ifndef WEILQMC_QUADRATURE_HPP
#define WEILQMC_QUADRATURE_HPP

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "weilqmc/integrands.hpp"
#include "weilqmc/pointsets.hpp"

namespace weilqmc {

struct BoundQuery {
  Space space = Space::K;
  std::uint64_t n = 2;     // point count: a prime for K/C, b^m for W
  std::size_t s = 1;
  double alpha = 1.0;
  double p = std::numeric_limits<double>::infinity();
  std::vector<std::uint32_t> exponents;  // optional, K/C: replaces s by j_s in the Weil term
  std::uint32_t base = 0;                // W only
};

// Worst-case error bound:
//   K/C: max((j_s - 1)/sqrt(N), s^{alpha/p} / N^alpha), j_s = s by default;
//   W:   max((b(s-1)+1)/((b-1) sqrt(N)), s^{alpha/p} / N^alpha);
// with s^{alpha/p} read as 1 for p = infinity. Requires 1 <= s < N.
double bound(const BoundQuery& query);

// Equal-weight rule: the arithmetic mean of the integrand over all rows,
// in row order, with compensated accumulation.
std::complex<double> qmc_apply(const SeriesSpec& spec, const PointSet& p);

struct ErrorReport {
  std::uint64_t n = 0;
  std::size_t s = 0;
  Space space = Space::K;
  std::string function_id;
  std::complex<double> qmc_value;
  std::complex<double> true_value;
  double abs_error = 0.0;
  double bound = 0.0;
  double norm_total = 0.0;
  double ratio = 0.0;      // abs_error / (bound * norm_total)
  bool certified = false;  // matched basis/point-family pairing with s < N
  double crosscheck_dev = 0.0;  // deviation from the coefficient-side error identity
};

// Integration error |integral - QMC|, the matched space bound and norm,
// and a cross-check of the error against the term-by-term identity
// sum_{k != 0} a_k (normalized character sum), evaluated on exact tallies
// where the pairing allows it. Unmatched pairings are permitted but
// reported as uncertified.
ErrorReport error(const SeriesSpec& spec, const PointSet& p);

struct AliasingReport {
  double direct = 0.0;      // |sum of coefficients at nonzero multiples of L|
  double grid = 0.0;        // |grid average minus the true integral|
  double deviation = 0.0;   // complex distance between the two computations
  double bound_value = 0.0; // s^{alpha/p} L^{-alpha} holder_upper
  std::uint64_t grid_points = 0;
};

// Dual computation of the aliasing sum for a fourier or walsh spec; for
// the walsh basis L must be divisible by b^m. Throws std::domain_error
// when the L^s grid exceeds the budget.
AliasingReport aliasing_check(const SeriesSpec& spec, std::uint64_t grid_size,
                              std::uint64_t budget = 100'000'000);

struct ComplexityResult {
  std::uint64_t n = 0;
  double bound_at_n = 0.0;
  bool capped = false;              // decided by the trivial bound e <= 1
  bool preconditions_hold = false;  // s < N at the returned N
};

// Smallest admissible point count (prime for K/C, power of `base` for W)
// whose bound does not exceed eps; an upper bound on the QMC information
// complexity. The worst-case error never exceeds the initial error 1, so
// the scan uses min(bound, 1); eps = 1 is therefore admissible for any s.
ComplexityResult info_complexity(double eps, std::size_t s, double alpha, double p, Space space,
                                 std::uint32_t base = 2);

}  // namespace weilqmc

#endif  // WEILQMC_QUADRATURE_HPP
