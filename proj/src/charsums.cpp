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

#include "weilqmc/charsums.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace weilqmc {
namespace {

using u8 = std::uint8_t;
using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;

}  // namespace

u64 RootOfUnityTally::total() const {
  u64 t = 0;
  for (u64 c : counts) t += c;
  return t;
}

void RootOfUnityTally::merge(const RootOfUnityTally& other) {
  if (other.modulus != modulus) throw std::invalid_argument("tally moduli differ");
  for (u64 t = 0; t < modulus; ++t) counts[t] += other.counts[t];
}

std::complex<double> RootOfUnityTally::value() const {
  double re = 0.0, im = 0.0;
  const double step = 2.0 * std::numbers::pi / static_cast<double>(modulus);
  for (u64 t = 0; t < modulus; ++t) {
    if (counts[t] == 0) continue;
    const double c = static_cast<double>(counts[t]);
    re += c * std::cos(step * static_cast<double>(t));
    im += c * std::sin(step * static_cast<double>(t));
  }
  return {re, im};
}

double RootOfUnityTally::magnitude() const { return std::abs(value()); }

std::optional<u64> RootOfUnityTally::magnitude_sq_exact() const {
  const auto& c = counts;
  switch (modulus) {
    case 1: return c[0] * c[0];
    case 2: {
      const u64 d = c[0] > c[1] ? c[0] - c[1] : c[1] - c[0];
      return d * d;
    }
    case 3:
      return c[0] * c[0] + c[1] * c[1] + c[2] * c[2] - c[0] * c[1] - c[1] * c[2] - c[2] * c[0];
    case 4: {
      const u64 dr = c[0] > c[2] ? c[0] - c[2] : c[2] - c[0];
      const u64 di = c[1] > c[3] ? c[1] - c[3] : c[3] - c[1];
      return dr * dr + di * di;
    }
    default:
      break;
  }
  if (!is_prime(modulus)) return std::nullopt;
  // For prime modulus, |sum|^2 = sum_e A_e zeta^e with the integer
  // autocorrelation A_e = sum_t c_t c_{t+e}. The only rational relation
  // among prime-order roots of unity is the all-ones one, so |sum|^2 is
  // rational exactly when A_1 = ... = A_{d-1}, and then equals A_0 - A_1.
  u64 a0 = 0;
  for (u64 t = 0; t < modulus; ++t) a0 += c[t] * c[t];
  u64 a1 = 0;
  bool first = true;
  for (u64 e = 1; e < modulus; ++e) {
    u64 ae = 0;
    for (u64 t = 0; t < modulus; ++t) ae += c[t] * c[(t + e) % modulus];
    if (first) {
      a1 = ae;
      first = false;
    } else if (ae != a1) {
      return std::nullopt;
    }
  }
  return a0 - a1;
}

RootOfUnityTally exp_sum(const std::vector<i64>& k, const PointSet& p) {
  if (k.size() != p.dim) throw std::invalid_argument("wave vector dimension mismatch");
  const u64 n = p.denom;
  if (!is_prime(n)) throw std::invalid_argument("exp_sum requires a prime denominator");
  std::vector<u64> kr(k.size());
  const i64 m = static_cast<i64>(n);
  for (std::size_t j = 0; j < k.size(); ++j) kr[j] = static_cast<u64>(((k[j] % m) + m) % m);
  RootOfUnityTally tally(n);
  const std::size_t rows = p.rows();
  for (std::size_t row = 0; row < rows; ++row) {
    u64 t = 0;
    const u32* r = &p.residues[row * p.dim];
    for (std::size_t j = 0; j < p.dim; ++j) t = (t + kr[j] * r[j]) % n;
    tally.counts[t] += 1;
  }
  return tally;
}

WalshEvaluator::WalshEvaluator(FieldParams f) : f_(std::move(f)) {}

const std::vector<u8>& WalshEvaluator::weight_row(u64 kappa) const {
  auto it = rows_.find(kappa);
  if (it != rows_.end()) return it->second;
  const u32 m = f_.degree();
  std::vector<u8> w(m);
  FieldPoly e = digit_bijection(kappa, f_);  // mu(kappa)
  FieldPoly x;
  x.c.assign(m, 0);
  if (m == 1)
    x.c[0] = static_cast<u8>((f_.base() - f_.modulus()[0] % f_.base()) % f_.base());
  else
    x.c[1] = 1;
  for (u32 i = 0; i < m; ++i) {
    w[i] = static_cast<u8>(trace(e, f_));
    if (i + 1 < m) e = poly_mul_mod(e, x, f_);
  }
  return rows_.emplace(kappa, std::move(w)).first->second;
}

u32 WalshEvaluator::pair_index(u64 kappa, u64 xi) const {
  const auto& w = weight_row(kappa);
  const u32 b = f_.base();
  u32 idx = 0;
  for (u32 i = 0; i < f_.degree() && xi != 0; ++i) {
    idx += static_cast<u32>(xi % b) * w[i] % b;
    xi /= b;
  }
  return idx % b;
}

u32 WalshEvaluator::eval_index(u64 k, u64 num, u64 den) const {
  if (den == 0 || num >= den) throw std::domain_error("walsh evaluation requires x in [0,1)");
  if (den > (1ull << 31)) throw std::domain_error("denominator too large");
  const u64 card = f_.card();
  u64 idx = 0;
  u64 r = num;
  while (k != 0) {
    const u64 kappa = k % card;
    k /= card;
    r *= card;
    const u64 xi = r / den;
    r %= den;
    if (kappa != 0 && xi != 0) idx += pair_index(kappa, xi);
  }
  return static_cast<u32>(idx % f_.base());
}

UnitRoot WalshEvaluator::eval(u64 k, u64 num, u64 den) const {
  return UnitRoot{eval_index(k, num, den), f_.base()};
}

double walsh_weil_bound_normalized(u32 b, u64 card, std::size_t s) {
  const double ratio = static_cast<double>(b) * (static_cast<double>(s) - 1.0) + 1.0;
  return ratio / ((static_cast<double>(b) - 1.0) * std::sqrt(static_cast<double>(card)));
}

RootOfUnityTally walsh_sum(const std::vector<u64>& ell, const PointSet& r) {
  if (r.meta.family != PointFamily::walsh && r.meta.family != PointFamily::walsh_fast)
    throw std::invalid_argument("walsh_sum requires a Walsh point set");
  if (!r.meta.field) throw std::invalid_argument("point set lacks field parameters");
  if (ell.size() != r.dim) throw std::invalid_argument("wave vector dimension mismatch");
  const FieldParams& f = *r.meta.field;
  const u64 card = f.card();
  const u32 b = f.base();
  WalshEvaluator ev(f);
  // Points have a single base-b^m digit, so only the lowest digit of each
  // component of ell pairs with anything.
  std::vector<u64> kappa(ell.size());
  bool divisible = true;
  for (std::size_t j = 0; j < ell.size(); ++j) {
    kappa[j] = ell[j] % card;
    if (kappa[j] != 0) divisible = false;
  }
  RootOfUnityTally tally(b);
  const std::size_t rows = r.rows();
  for (std::size_t row = 0; row < rows; ++row) {
    u32 idx = 0;
    for (std::size_t j = 0; j < ell.size(); ++j) {
      if (kappa[j] == 0) continue;
      idx += ev.pair_index(kappa[j], r.at(row, j));
    }
    tally.counts[idx % b] += 1;
  }
  if (!divisible) {
    // (b-1)^2 |S|^2 <= (s b - b + 1)^2 b^m, on exact counts when possible.
    const u64 bm1 = b - 1;
    const u64 num = static_cast<u64>(ell.size()) * b - b + 1;
    const u64 rhs = num * num * card;
    if (auto sq = tally.magnitude_sq_exact()) {
      const auto lhs = static_cast<unsigned __int128>(*sq) * bm1 * bm1;
      if (lhs > static_cast<unsigned __int128>(rhs))
        throw std::logic_error("walsh character sum exceeds the Weil bound (implementation error)");
    } else {
      const double lhs = std::norm(tally.value()) * static_cast<double>(bm1 * bm1);
      if (lhs > static_cast<double>(rhs) * (1.0 + 1e-9))
        throw std::logic_error("walsh character sum exceeds the Weil bound (implementation error)");
    }
  }
  return tally;
}

OrthonormalityReport walsh_orthonormality_check(const FieldParams& f, u64 k_limit) {
  if (k_limit == 0) throw std::invalid_argument("k_limit must be >= 1");
  if (k_limit > 4096) throw std::invalid_argument("k_limit too large for the exact Gram sweep");
  const u64 card = f.card();
  u64 grid = 1;
  u32 digits = 0;
  while (grid < k_limit) {
    grid *= card;
    ++digits;
  }
  if (digits == 0) {
    grid = card;
    digits = 1;
  }
  WalshEvaluator ev(f);
  // V[k][l] = index of wal_k(l/grid); the x digits of l/grid are the
  // base-b^m digits of l read most significant first.
  std::vector<std::vector<u8>> v(k_limit, std::vector<u8>(grid));
  for (u64 k = 0; k < k_limit; ++k) {
    std::vector<u64> kdig(digits, 0);
    u64 kk = k;
    for (u32 i = 0; i < digits; ++i) {
      kdig[i] = kk % card;
      kk /= card;
    }
    for (u64 l = 0; l < grid; ++l) {
      u64 rest = l;  // digits of l/grid, most significant first
      u32 idx = 0;
      for (u32 i = 0; i < digits; ++i) {
        rest *= card;
        const u64 xi = rest / grid;
        rest %= grid;
        if (kdig[i] != 0 && xi != 0) idx += ev.pair_index(kdig[i], xi);
      }
      v[k][l] = static_cast<u8>(idx % f.base());
    }
  }
  OrthonormalityReport report;
  report.k_limit = k_limit;
  report.grid = grid;
  report.identity = true;
  const u32 b = f.base();
  for (u64 k = 0; k < k_limit; ++k) {
    for (u64 kp = k; kp < k_limit; ++kp) {
      RootOfUnityTally tally(b);
      for (u64 l = 0; l < grid; ++l) {
        const u32 diff = (v[k][l] + b - v[kp][l]) % b;
        tally.counts[diff] += 1;
      }
      ++report.pairs_checked;
      if (k == kp) {
        if (tally.counts[0] != grid) report.identity = false;
      } else {
        // sum of prime-order roots vanishes exactly iff all counts agree
        bool flat = true;
        for (u32 t = 1; t < b; ++t)
          if (tally.counts[t] != tally.counts[0]) flat = false;
        if (!flat) report.identity = false;
      }
    }
  }
  return report;
}

}  // namespace weilqmc
