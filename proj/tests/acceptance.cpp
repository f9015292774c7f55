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
// Acceptance suite: every release-blocking property, one pass/fail line
// each, with its runtime budget enforced where one is stated.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "weilqmc/quadrature.hpp"

using namespace weilqmc;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

int failures = 0;

struct Criterion {
  const char* label;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  bool ok = true;
  std::string detail;

  explicit Criterion(const char* label_) : label(label_) {}

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    } else if (!cond) {
      ok = false;
    }
  }

  double elapsed_s() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }

  void finish(double limit_s = 0.0) {
    const double t = elapsed_s();
    if (limit_s > 0.0 && t > limit_s) {
      ok = false;
      if (detail.empty()) detail = "runtime " + std::to_string(t) + "s exceeds " +
                                   std::to_string(limit_s) + "s";
    }
    std::printf("[%s] %s (%.1fs)%s%s\n", ok ? "PASS" : "FAIL", label, t,
                detail.empty() ? "" : " -- ", detail.c_str());
    if (!ok) ++failures;
  }
};

std::vector<std::uint32_t> primes_up_to(std::uint32_t hi, std::uint32_t lo = 2) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t n = lo; n <= hi; ++n)
    if (is_prime(n)) out.push_back(n);
  return out;
}

double fit_slope(const std::vector<std::pair<double, double>>& logs) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [x, y] : logs) {
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double k = static_cast<double>(logs.size());
  return (k * sxy - sx * sy) / (k * sxx - sx * sx);
}

void criterion_1_weil_exhaustive() {
  Criterion c("1. prime Weil bound, exhaustive N <= 31, 2 <= s <= sqrt(N), zero tolerance");
  for (std::uint32_t n : primes_up_to(31)) {
    const auto smax = static_cast<std::size_t>(std::sqrt(static_cast<double>(n)));
    for (std::size_t s = 2; s <= smax; ++s) {
      const auto report = verify_weil_prime(PrimeModulus(n), s, {}, kDefaultVerifyBudget, 1);
      c.require(report.violations == 0, "violations at N=" + std::to_string(n) +
                                            " s=" + std::to_string(s));
      c.require(report.max_normalized <= report.bound,
                "max above bound at N=" + std::to_string(n) + " s=" + std::to_string(s));
      std::uint64_t expected = 1;
      for (std::size_t i = 0; i < s; ++i) expected *= n;
      c.require(report.cases_checked == expected - 1, "case count mismatch");
    }
  }
  c.finish(60.0);
}

void criterion_2_gauss_saturation() {
  Criterion c("2. Gauss-sum saturation at N=5, s=2: |sum| = sqrt(5) = bound");
  const PointSet p = gen_weil_pset(PrimeModulus(5), 2);
  const auto tally = exp_sum({0, 1}, p);
  const double mag = tally.magnitude();
  c.require(std::abs(mag - std::sqrt(5.0)) < 1e-10, "magnitude is not sqrt(5)");
  c.require(std::abs(mag - 1.0 * std::sqrt(5.0)) < 1e-10, "bound (s-1)sqrt(N) not attained");
  const auto sq = tally.magnitude_sq_exact();
  c.require(sq.has_value() && *sq == 5, "exact squared magnitude is not 5");
  c.finish();
}

void criterion_3_divisible_wave_vectors() {
  Criterion c("3. divisible wave vectors: 100 randomized N | k give sum = N exactly");
  std::mt19937_64 rng(2026);
  const auto primes = primes_up_to(199);
  for (int it = 0; it < 100; ++it) {
    const std::uint32_t n = primes[rng() % primes.size()];
    const std::size_t s = 1 + rng() % 6;
    if (s >= n) {
      continue;
    }
    const PointSet p = gen_weil_pset(PrimeModulus(n), s);
    std::vector<std::int64_t> k(s);
    for (auto& v : k)
      v = (static_cast<std::int64_t>(rng() % 9) - 4) * static_cast<std::int64_t>(n);
    const auto tally = exp_sum(k, p);
    c.require(tally.counts[0] == n && tally.total() == n,
              "sum != N at N=" + std::to_string(n));
  }
  c.finish();
}

void criterion_4_fast_equivalence() {
  Criterion c("4. fast/naive multiset equality: primes <= 199 (s <= 12), b=2 m <= 6 (s <= 8)");
  for (std::uint32_t n : primes_up_to(199)) {
    for (std::size_t s = 1; s <= 12 && s < n; ++s) {
      if (!same_point_multiset(gen_weil_pset(PrimeModulus(n), s),
                               gen_weil_pset_fast(PrimeModulus(n), s))) {
        c.require(false, "mismatch at N=" + std::to_string(n) + " s=" + std::to_string(s));
      }
    }
  }
  for (std::uint32_t m = 1; m <= 6; ++m) {
    const FieldParams f = FieldParams::find(2, m, true);
    for (std::size_t s = 1; s <= 8; ++s) {
      if (!same_point_multiset(gen_walsh_pset(f, s), gen_walsh_pset_fast(f, s))) {
        c.require(false, "digital mismatch at m=" + std::to_string(m) + " s=" + std::to_string(s));
      }
    }
  }
  c.finish(30.0);
}

void criterion_5_fourier_soundness() {
  Criterion c("5. worst-case bound soundness, fourier library over primes 11..499 (s < sqrt(N))");
  const auto library = fourier_test_library();
  c.require(library.size() >= 10, "library too small");
  std::uint64_t rows = 0;
  for (std::uint32_t n : primes_up_to(499, 11)) {
    const PrimeModulus prime(n);
    for (const auto& spec : library) {
      if (static_cast<double>(spec.dim) * static_cast<double>(spec.dim) >= n) continue;
      const PointSet p = gen_weil_pset(prime, spec.dim);
      const auto report = error(spec, p);
      ++rows;
      if (report.ratio > 1.0 + 1e-12)
        c.require(false, spec.id + " ratio " + std::to_string(report.ratio) + " at N=" +
                             std::to_string(n));
      if (report.crosscheck_dev > 1e-12)
        c.require(false, spec.id + " cross-check deviates at N=" + std::to_string(n));
    }
  }
  c.require(rows > 1000, "sweep unexpectedly small");
  c.finish(120.0);
}

void criterion_6_tent_transfer() {
  Criterion c("6. tent transfer: cosine error on Q equals composed error on P; norms equal");
  const auto library = cosine_test_library();
  c.require(library.size() >= 5, "library too small");
  for (const auto& g : library) {
    const auto f = compose_tent(g);
    const auto ng = norm(g, Space::C);
    const auto nf = norm(f, Space::K);
    c.require(ng.coeff_sum == nf.coeff_sum, g.id + ": coefficient norms differ");
    for (std::uint32_t n : primes_up_to(199)) {
      if (g.dim >= n) continue;
      const PointSet p = gen_weil_pset(PrimeModulus(n), g.dim);
      const PointSet q = tent_transform(p);
      const auto eg = error(g, q);
      const auto ef = error(f, p);
      if (std::abs(eg.abs_error - ef.abs_error) > 1e-12)
        c.require(false, g.id + ": transfer identity fails at N=" + std::to_string(n));
      if (eg.ratio > 1.0 + 1e-12)
        c.require(false, g.id + ": ratio exceeds 1 at N=" + std::to_string(n));
    }
  }
  c.finish();
}

void criterion_7_walsh_exhaustive() {
  Criterion c("7. digital Weil bound, exhaustive b in {2,3}, b^m <= 81, s <= 4");
  std::uint64_t nonbinding = 0;
  for (std::uint32_t b : {2u, 3u}) {
    std::uint64_t card = b;
    for (std::uint32_t m = 1; card <= 81; ++m, card *= b) {
      const FieldParams f = FieldParams::find(b, m, false);
      for (std::size_t s = 1; s <= 4; ++s) {
        const auto report = verify_walsh(f, s, {}, kDefaultVerifyBudget, 1);
        if (!report.binding) ++nonbinding;
        if (report.violations != 0)
          c.require(false, "violations at b=" + std::to_string(b) + " m=" + std::to_string(m) +
                               " s=" + std::to_string(s));
      }
    }
  }
  std::printf("    (non-binding cases logged: %llu)\n",
              static_cast<unsigned long long>(nonbinding));
  c.finish(120.0);
}

void criterion_8_walsh_soundness() {
  Criterion c("8. digital bound soundness, walsh specs over b=2, m in 4..11");
  for (std::uint32_t m = 4; m <= 11; ++m) {
    const FieldParams f = FieldParams::find(2, m, true);
    const auto library = walsh_test_library(f);
    c.require(library.size() >= 5, "library too small");
    for (const auto& spec : library) {
      const PointSet r = gen_walsh_pset(f, spec.dim);
      const auto report = error(spec, r);
      if (report.ratio > 1.0 + 1e-12)
        c.require(false, spec.id + " ratio " + std::to_string(report.ratio) + " at m=" +
                             std::to_string(m));
      if (report.crosscheck_dev > 1e-12)
        c.require(false, spec.id + " cross-check deviates at m=" + std::to_string(m));
    }
  }
  c.finish();
}

void criterion_9_aliasing() {
  Criterion c("9. aliasing: dual computation agrees and obeys the increment bound");
  std::vector<SeriesSpec> specs;
  {
    SeriesSpec s1;
    s1.basis = Basis::fourier;
    s1.dim = 1;
    s1.alpha = 1.0;
    s1.p = kInf;
    s1.terms = {{{4}, 1.0}, {{1}, 0.5}, {{0}, 1.0}};
    s1.id = "spike";
    specs.push_back(s1);
    specs.push_back(decaying_fourier_family(2, 1.0, 2.0, 8, 1.0, kInf));
    SeriesSpec s3;
    s3.basis = Basis::fourier;
    s3.dim = 3;
    s3.alpha = 0.5;
    s3.p = 2.0;
    s3.terms = {{{2, 4, 0}, 0.5}, {{8, 0, 0}, 0.25}, {{1, 1, 1}, 0.1}, {{0, 0, 0}, 1.0}};
    s3.id = "mix3";
    specs.push_back(s3);
    SeriesSpec s4;
    s4.basis = Basis::fourier;
    s4.dim = 2;
    s4.alpha = 1.0;
    s4.p = 1.0;
    s4.terms = {{{-4, 8}, 0.3}, {{16, 0}, 0.2}, {{2, 2}, 0.4}};
    s4.id = "neg2";
    specs.push_back(s4);
    const FieldParams f2 = FieldParams::find(2, 1, false);
    SeriesSpec w1;
    w1.basis = Basis::walsh;
    w1.field = f2;
    w1.dim = 2;
    w1.alpha = 1.0;
    w1.p = kInf;
    w1.terms = {{{2, 0}, 0.5}, {{4, 2}, 0.25}, {{1, 1}, 0.3}, {{0, 0}, 1.0}};
    w1.id = "wal1";
    specs.push_back(w1);
    const FieldParams f4 = FieldParams(2, 2, {1, 1, 1});
    SeriesSpec w2;
    w2.basis = Basis::walsh;
    w2.field = f4;
    w2.dim = 2;
    w2.alpha = 0.5;
    w2.p = kInf;
    w2.terms = {{{4, 0}, 0.5}, {{8, 4}, 0.25}, {{1, 2}, 0.3}};
    w2.id = "wal2";
    specs.push_back(w2);
  }
  c.require(specs.size() >= 5, "need at least five specs");
  for (const auto& spec : specs) {
    for (std::uint64_t grid : {2ull, 4ull, 8ull, 16ull}) {
      if (spec.basis == Basis::walsh && grid % spec.field->card() != 0) continue;
      const auto report = aliasing_check(spec, grid);
      if (report.deviation > 1e-12)
        c.require(false, spec.id + " deviation " + std::to_string(report.deviation) + " at L=" +
                             std::to_string(grid));
      if (report.direct > report.bound_value + 1e-12 || report.grid > report.bound_value + 1e-12)
        c.require(false, spec.id + " exceeds the bound at L=" + std::to_string(grid));
    }
  }
  c.finish();
}

void criterion_10_orthonormality() {
  Criterion c("10. Walsh orthonormality: exact Gram identity for b^m in {2,3,4,8,9,16}");
  const std::vector<std::pair<std::uint32_t, std::uint32_t>> fields{{2, 1}, {3, 1}, {2, 2},
                                                                    {2, 3}, {3, 2}, {2, 4}};
  for (const auto& [b, m] : fields) {
    const FieldParams f = FieldParams::find(b, m, false);
    std::uint64_t k = f.card();
    while (k * f.card() <= 256) k *= f.card();
    const auto report = walsh_orthonormality_check(f, k);
    c.require(report.identity, "Gram identity fails for b^m = " + std::to_string(f.card()));
    c.require(report.grid == k, "grid mismatch for b^m = " + std::to_string(f.card()));
  }
  c.finish();
}

void criterion_11_convergence_rate() {
  Criterion c("11. convergence rate: decaying family s=3, slope over primes 101..997 <= -0.45");
  const auto spec = decaying_fourier_family(3, 1.0, 2.0, 4, 1.0, kInf);
  std::vector<std::pair<double, double>> logs;
  for (std::uint32_t n : primes_up_to(997, 101)) {
    const auto report = error(spec, gen_weil_pset(PrimeModulus(n), 3));
    if (report.abs_error > 0.0)
      logs.emplace_back(std::log(static_cast<double>(n)), std::log(report.abs_error));
  }
  c.require(logs.size() > 100, "too few usable sweeps");
  const double slope = fit_slope(logs);
  std::printf("    (fitted slope: %.4f over %zu primes)\n", slope, logs.size());
  c.require(slope <= -0.45, "slope " + std::to_string(slope) + " too shallow");
  c.finish();
}

void criterion_12_projections_and_totient() {
  Criterion c("12. coprime exponents: full projections, (N-1)/j classes, totient bound to 10^4");
  for (std::uint32_t n : primes_up_to(199, 3)) {
    for (std::uint32_t j = 1; j < n; ++j) {
      const bool coprime = std::gcd(j, n - 1) == 1;
      const bool divides = (n - 1) % j == 0;
      if (!coprime && !divides) continue;
      std::set<std::uint64_t> values;
      for (std::uint64_t row = 1; row < n; ++row)
        values.insert(pow_mod(static_cast<std::int64_t>(row), j, n));
      if (coprime) {
        // nonzero values form all of {1,...,N-1}; with the zero row the
        // projection is all of Z_N
        if (values.size() != n - 1) c.require(false, "projection not full at N=" + std::to_string(n));
      } else if (divides) {
        if (values.size() != (n - 1) / j)
          c.require(false, "class count wrong at N=" + std::to_string(n) + " j=" + std::to_string(j));
      }
    }
  }
  constexpr double gamma = 0.57721566490153286;
  for (std::uint32_t n : primes_up_to(10000, 5)) {
    const double n1 = static_cast<double>(n - 1);
    const double ll = std::log(std::log(n1));
    const double rhs = n1 / (std::exp(gamma) * ll + 3.0 / ll);
    if (!(static_cast<double>(euler_totient(n - 1)) > rhs))
      c.require(false, "totient bound fails at N=" + std::to_string(n));
  }
  c.finish();
}

}  // namespace

int main() {
  std::printf("acceptance suite\n================\n");
  criterion_1_weil_exhaustive();
  criterion_2_gauss_saturation();
  criterion_3_divisible_wave_vectors();
  criterion_4_fast_equivalence();
  criterion_5_fourier_soundness();
  criterion_6_tent_transfer();
  criterion_7_walsh_exhaustive();
  criterion_8_walsh_soundness();
  criterion_9_aliasing();
  criterion_10_orthonormality();
  criterion_11_convergence_rate();
  criterion_12_projections_and_totient();
  std::printf("================\n%s (%d failed)\n", failures == 0 ? "ALL CRITERIA PASS" : "FAILURES",
              failures);
  return failures == 0 ? 0 : 1;
}
