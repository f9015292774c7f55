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

#include "weilqmc/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace weilqmc {
namespace {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;
using cdouble = std::complex<double>;

struct NeumaierSum {
  double sum = 0.0;
  double comp = 0.0;
  void add(double v) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v))
      comp += (sum - t) + v;
    else
      comp += (v - t) + sum;
    sum = t;
  }
  double value() const { return sum + comp; }
};

double holder_factor(std::size_t s, double alpha, double p) {
  return std::isinf(p) ? 1.0 : std::pow(static_cast<double>(s), alpha / p);
}

// Bound formula without the s < N precondition check, for reporting on
// uncertified pairings.
double bound_raw(Space space, u64 n, std::size_t s, double alpha, double p,
                 const std::vector<u32>& exponents, u32 base) {
  const double nn = static_cast<double>(n);
  double weil_term = 0.0;
  if (space == Space::W) {
    const double b = static_cast<double>(base);
    weil_term = (b * (static_cast<double>(s) - 1.0) + 1.0) / ((b - 1.0) * std::sqrt(nn));
  } else {
    const double degree =
        exponents.empty() ? static_cast<double>(s) : static_cast<double>(exponents.back());
    weil_term = (degree - 1.0) / std::sqrt(nn);
  }
  const double holder_term = holder_factor(s, alpha, p) / std::pow(nn, alpha);
  return std::max(weil_term, holder_term);
}

bool is_weil_family(PointFamily f) {
  return f == PointFamily::weil || f == PointFamily::weil_fast ||
         f == PointFamily::weil_exponents;
}

// Mean of one basis function over the rows, for cross-checks where no
// exact tally path applies.
cdouble term_mean(Basis basis, const SeriesTerm& term, const PointSet& p,
                  const std::optional<FieldParams>& field) {
  SeriesSpec single;
  single.basis = basis;
  single.dim = term.k.size();
  single.field = field;
  single.terms = {SeriesTerm{term.k, 1.0}};
  const NodeEvaluator ev(single, p);
  NeumaierSum re, im;
  const std::size_t rows = p.rows();
  for (std::size_t row = 0; row < rows; ++row) {
    const cdouble v = ev.row(row);
    re.add(v.real());
    im.add(v.imag());
  }
  const double inv = 1.0 / static_cast<double>(rows);
  return {re.value() * inv, im.value() * inv};
}

}  // namespace

double bound(const BoundQuery& query) {
  if (query.s == 0) throw std::invalid_argument("dimension s must be >= 1");
  if (query.n < 2) throw std::invalid_argument("point count must be >= 2");
  if (query.s >= query.n) throw std::invalid_argument("bound requires s < N");
  if (!(query.alpha > 0.0 && query.alpha <= 1.0))
    throw std::invalid_argument("alpha must lie in (0, 1]");
  if (!(query.p >= 1.0)) throw std::invalid_argument("p must lie in [1, infinity]");
  if (query.space == Space::W) {
    if (query.base < 2 || !is_prime(query.base))
      throw std::invalid_argument("W bound requires a prime base");
    u64 v = query.n;
    while (v % query.base == 0) v /= query.base;
    if (v != 1) throw std::invalid_argument("W bound requires N = b^m");
  } else if (!query.exponents.empty()) {
    if (query.exponents.size() != query.s)
      throw std::invalid_argument("exponent vector length must equal s");
    u32 prev = 0;
    for (u32 j : query.exponents) {
      if (j <= prev || j >= query.n)
        throw std::invalid_argument("exponents must be strictly increasing and below N");
      prev = j;
    }
  }
  return bound_raw(query.space, query.n, query.s, query.alpha, query.p, query.exponents,
                   query.base);
}

std::complex<double> qmc_apply(const SeriesSpec& spec, const PointSet& p) {
  spec.validate();
  if (spec.dim != p.dim) throw std::invalid_argument("point set dimension mismatch");
  const NodeEvaluator ev(spec, p);
  NeumaierSum re, im;
  const std::size_t rows = p.rows();
  for (std::size_t row = 0; row < rows; ++row) {
    const cdouble v = ev.row(row);
    re.add(v.real());
    im.add(v.imag());
  }
  const double inv = 1.0 / static_cast<double>(rows);
  return {re.value() * inv, im.value() * inv};
}

ErrorReport error(const SeriesSpec& spec, const PointSet& p) {
  spec.validate();
  if (spec.dim != p.dim) throw std::invalid_argument("point set dimension mismatch");
  ErrorReport report;
  report.n = p.denom;
  report.s = p.dim;
  report.space = space_for_basis(spec.basis);
  report.function_id = spec.id;
  report.qmc_value = qmc_apply(spec, p);
  report.true_value = true_integral(spec);
  report.abs_error = std::abs(report.qmc_value - report.true_value);

  const bool prime_denom = is_prime(p.denom);
  bool matched = false;
  u32 base = 0;
  switch (spec.basis) {
    case Basis::fourier:
      matched = is_weil_family(p.meta.family) && prime_denom;
      break;
    case Basis::cosine:
      matched = p.meta.family == PointFamily::tent && p.meta.parent &&
                is_weil_family(p.meta.parent->family) && prime_denom;
      break;
    case Basis::walsh:
      matched = (p.meta.family == PointFamily::walsh || p.meta.family == PointFamily::walsh_fast) &&
                p.meta.field && spec.field && *p.meta.field == *spec.field;
      base = spec.field->base();
      break;
  }
  report.certified = matched && p.dim < p.denom;

  // For the default exponents 1..s the generalized Weil term equals the
  // plain one, so the meta exponents can be used uniformly (tent sets
  // carry their parent's exponents).
  std::vector<u32> exponents;
  if (report.space != Space::W &&
      (is_weil_family(p.meta.family) || p.meta.family == PointFamily::tent))
    exponents = p.meta.exponents;
  report.bound = bound_raw(report.space, p.denom, p.dim, spec.alpha, spec.p, exponents, base);
  report.norm_total = norm(spec, report.space).total;

  // Coefficient-side identity: qmc - integral = sum_{k != 0} a_k S_k / N.
  cdouble side = 0.0;
  if (spec.basis == Basis::fourier && prime_denom) {
    for (const auto& term : spec.terms) {
      bool zero = true;
      for (i64 v : term.k)
        if (v != 0) zero = false;
      if (zero) continue;
      const RootOfUnityTally tally = exp_sum(term.k, p);
      side += term.coeff * tally.value() / static_cast<double>(p.denom);
    }
  } else if (spec.basis == Basis::cosine && p.meta.family == PointFamily::tent && p.meta.parent &&
             prime_denom) {
    const SeriesSpec composed = compose_tent(spec);
    const PointSet parent = tent_parent(p);
    for (const auto& term : composed.terms) {
      bool zero = true;
      for (i64 v : term.k)
        if (v != 0) zero = false;
      if (zero) continue;
      const RootOfUnityTally tally = exp_sum(term.k, parent);
      side += term.coeff * tally.value() / static_cast<double>(p.denom);
    }
  } else if (spec.basis == Basis::walsh && matched) {
    for (const auto& term : spec.terms) {
      bool zero = true;
      std::vector<u64> ell(term.k.size());
      for (std::size_t j = 0; j < term.k.size(); ++j) {
        ell[j] = static_cast<u64>(term.k[j]);
        if (ell[j] != 0) zero = false;
      }
      if (zero) continue;
      const RootOfUnityTally tally = walsh_sum(ell, p);
      side += term.coeff * tally.value() / static_cast<double>(p.denom);
    }
  } else {
    for (const auto& term : spec.terms) {
      bool zero = true;
      for (i64 v : term.k)
        if (v != 0) zero = false;
      if (zero) continue;
      side += term.coeff * term_mean(spec.basis, term, p, spec.field);
    }
  }
  report.crosscheck_dev = std::abs((report.qmc_value - report.true_value) - side);

  const double denom = report.bound * report.norm_total;
  report.ratio = denom > 0.0 ? report.abs_error / denom : (report.abs_error > 0.0 ? HUGE_VAL : 0.0);
  return report;
}

AliasingReport aliasing_check(const SeriesSpec& spec, u64 grid_size, u64 budget) {
  spec.validate();
  if (spec.basis == Basis::cosine)
    throw std::invalid_argument("aliasing_check applies to fourier or walsh specs");
  if (grid_size == 0) throw std::invalid_argument("grid size must be >= 1");
  if (spec.basis == Basis::walsh && grid_size % spec.field->card() != 0)
    throw std::invalid_argument("walsh aliasing requires b^m | L");

  u64 total = 1;
  for (std::size_t j = 0; j < spec.dim; ++j) {
    if (total > budget / grid_size) throw std::domain_error("L^s grid exceeds the budget");
    total *= grid_size;
  }

  // (a) coefficients surviving at nonzero multiples of L
  cdouble direct = 0.0;
  for (const auto& term : spec.terms) {
    bool zero = true, multiple = true;
    for (i64 v : term.k) {
      if (v != 0) zero = false;
      if (v % static_cast<i64>(grid_size) != 0) multiple = false;
    }
    if (!zero && multiple) direct += term.coeff;
  }

  // (b) grid average minus the true integral, on exact rational nodes
  NeumaierSum re, im;
  std::vector<u64> node(spec.dim, 0);
  std::optional<WalshEvaluator> ev;
  if (spec.basis == Basis::walsh) ev.emplace(*spec.field);
  for (u64 it = 0; it < total; ++it) {
    cdouble v = 0.0;
    if (spec.basis == Basis::fourier) {
      const i64 m = static_cast<i64>(grid_size);
      for (const auto& term : spec.terms) {
        u64 t = 0;
        for (std::size_t j = 0; j < spec.dim; ++j) {
          const u64 kr = static_cast<u64>(((term.k[j] % m) + m) % m);
          t = (t + kr * node[j]) % grid_size;
        }
        v += term.coeff *
             std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(t) / static_cast<double>(grid_size));
      }
    } else {
      for (const auto& term : spec.terms) {
        u32 idx = 0;
        for (std::size_t j = 0; j < spec.dim; ++j)
          idx += ev->eval_index(static_cast<u64>(term.k[j]), node[j], grid_size);
        v += term.coeff * UnitRoot{idx % spec.field->base(), spec.field->base()}.value();
      }
    }
    re.add(v.real());
    im.add(v.imag());
    std::size_t pos = 0;
    while (pos < spec.dim && ++node[pos] == grid_size) node[pos++] = 0;
  }
  const double inv = 1.0 / static_cast<double>(total);
  const cdouble grid_avg{re.value() * inv, im.value() * inv};
  const cdouble grid_diff = grid_avg - true_integral(spec);

  AliasingReport report;
  report.direct = std::abs(direct);
  report.grid = std::abs(grid_diff);
  report.deviation = std::abs(direct - grid_diff);
  report.bound_value = holder_factor(spec.dim, spec.alpha, spec.p) *
                       std::pow(static_cast<double>(grid_size), -spec.alpha) * holder_upper(spec);
  report.grid_points = total;
  return report;
}

ComplexityResult info_complexity(double eps, std::size_t s, double alpha, double p, Space space,
                                 u32 base) {
  if (!(eps > 0.0 && eps <= 1.0)) throw std::invalid_argument("eps must lie in (0, 1]");
  if (s == 0) throw std::invalid_argument("dimension s must be >= 1");
  if (!(alpha > 0.0 && alpha <= 1.0)) throw std::invalid_argument("alpha must lie in (0, 1]");
  if (!(p >= 1.0)) throw std::invalid_argument("p must lie in [1, infinity]");
  if (space == Space::W && (base < 2 || !is_prime(base)))
    throw std::invalid_argument("W complexity scan requires a prime base");

  const u64 first = space == Space::W ? base : 2;
  auto result_at = [&](u64 n) {
    ComplexityResult res;
    res.n = n;
    res.bound_at_n = s < n ? bound_raw(space, n, s, alpha, p, {}, base) : HUGE_VAL;
    res.capped = !(res.bound_at_n <= eps);
    res.preconditions_hold = s < n;
    return res;
  };
  // The error never exceeds the initial error 1 for any equal-weight rule,
  // so eps = 1 is met by the very first admissible point count.
  if (eps >= 1.0) return result_at(first);

  // Both bound terms are monotone in N, so the smallest admissible N sits
  // at an explicit threshold; back it off by a few ulps and walk forward.
  double weil_need;
  if (space == Space::W) {
    const double b = static_cast<double>(base);
    const double r = (b * (static_cast<double>(s) - 1.0) + 1.0) / ((b - 1.0) * eps);
    weil_need = r * r;
  } else {
    const double r = (static_cast<double>(s) - 1.0) / eps;
    weil_need = r * r;
  }
  const double holder_need = std::pow(holder_factor(s, alpha, p) / eps, 1.0 / alpha);
  const double threshold = std::max({weil_need, holder_need, static_cast<double>(first)});
  if (threshold > 9.2e18) throw std::domain_error("eps is too small: the point count overflows");
  u64 n = static_cast<u64>(std::ceil(threshold * (1.0 - 1e-12)));
  n = std::max<u64>(n, first);
  if (space == Space::W) {
    u64 pw = base;
    while (pw < n) pw *= base;
    n = pw;
  } else {
    while (!is_prime(n)) ++n;
  }
  while (!(s < n) || bound_raw(space, n, s, alpha, p, {}, base) > eps) {
    if (space == Space::W) {
      n *= base;
    } else {
      do {
        ++n;
      } while (!is_prime(n));
    }
  }
  return result_at(n);
}

}  // namespace weilqmc
