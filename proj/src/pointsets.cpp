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

#include "weilqmc/pointsets.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace weilqmc {
namespace {

using u32 = std::uint32_t;
using u64 = std::uint64_t;

void check_dim(std::size_t s) {
  if (s == 0) throw std::invalid_argument("dimension s must be >= 1");
}

std::string trivial_bound_warning(u64 weil_degree, u64 n) {
  if (weil_degree * weil_degree > n)
    return "degree " + std::to_string(weil_degree) + " exceeds sqrt(" + std::to_string(n) +
           "); the character-sum bound is trivial in this regime";
  return {};
}

void check_exponents(const std::vector<u32>& exponents, u64 n) {
  check_dim(exponents.size());
  u32 prev = 0;
  for (u32 j : exponents) {
    if (j <= prev) throw std::invalid_argument("exponents must be strictly increasing and >= 1");
    if (j >= n) throw std::invalid_argument("exponents must be below N");
    prev = j;
  }
}

}  // namespace

const char* family_name(PointFamily family) {
  switch (family) {
    case PointFamily::weil: return "weil";
    case PointFamily::weil_fast: return "weil-fast";
    case PointFamily::weil_exponents: return "weil-exp";
    case PointFamily::tent: return "tent";
    case PointFamily::walsh: return "walsh";
    case PointFamily::walsh_fast: return "walsh-fast";
  }
  return "?";
}

std::vector<u32> exponent_sequence(u32 b, std::size_t s) {
  if (!is_prime(b)) throw std::invalid_argument("base must be prime");
  check_dim(s);
  std::vector<u32> c(s);
  for (std::size_t j = 1; j <= s; ++j)
    c[j - 1] = static_cast<u32>(j + (j - 1) / (b - 1));
  return c;
}

PointSet gen_weil_pset(PrimeModulus n, std::size_t s) {
  check_dim(s);
  const u64 nn = n.value;
  if (s >= nn) throw std::invalid_argument("dimension s must be below N");
  PointSet p;
  p.denom = nn;
  p.dim = s;
  p.residues.reserve(nn * s);
  for (u64 row = 0; row < nn; ++row) {
    u64 pw = 1;
    for (std::size_t j = 0; j < s; ++j) {
      pw = pw * row % nn;
      p.residues.push_back(static_cast<u32>(pw));
    }
  }
  p.meta.family = PointFamily::weil;
  p.meta.exponents.resize(s);
  for (std::size_t j = 0; j < s; ++j) p.meta.exponents[j] = static_cast<u32>(j + 1);
  p.meta.warning = trivial_bound_warning(s, nn);
  return p;
}

PointSet gen_weil_pset_fast(PrimeModulus n, std::size_t s) {
  check_dim(s);
  const u64 nn = n.value;
  if (s >= nn) throw std::invalid_argument("dimension s must be below N");
  const u64 order = nn - 1;
  const u64 g = primitive_root(n);
  std::vector<u32> table(order);
  u64 pw = 1;
  for (u64 i = 0; i < order; ++i) {
    table[i] = static_cast<u32>(pw);
    pw = pw * g % nn;
  }
  PointSet p;
  p.denom = nn;
  p.dim = s;
  p.residues.assign(s, 0);  // the zero point
  p.residues.reserve(nn * s);
  for (u64 row = 0; row < order; ++row) {
    for (std::size_t j = 0; j < s; ++j)
      p.residues.push_back(table[(j + 1) * row % order]);
  }
  p.meta.family = PointFamily::weil_fast;
  p.meta.exponents.resize(s);
  for (std::size_t j = 0; j < s; ++j) p.meta.exponents[j] = static_cast<u32>(j + 1);
  p.meta.warning = trivial_bound_warning(s, nn);
  return p;
}

PointSet gen_weil_pset_exponents(PrimeModulus n, const std::vector<u32>& exponents) {
  const u64 nn = n.value;
  check_exponents(exponents, nn);
  PointSet p;
  p.denom = nn;
  p.dim = exponents.size();
  p.residues.reserve(nn * p.dim);
  for (u64 row = 0; row < nn; ++row) {
    for (u32 j : exponents)
      p.residues.push_back(static_cast<u32>(pow_mod(static_cast<std::int64_t>(row), j, nn)));
  }
  p.meta.family = PointFamily::weil_exponents;
  p.meta.exponents = exponents;
  p.meta.warning = trivial_bound_warning(exponents.back(), nn);
  return p;
}

PointSet tent_transform(const PointSet& p) {
  PointSet q = p;
  const u64 d = p.denom;
  for (auto& r : q.residues) {
    const u64 twice = 2ull * r;
    r = static_cast<u32>(twice < d ? twice : 2 * d - twice);
  }
  q.meta = PointSetMeta{};
  q.meta.family = PointFamily::tent;
  q.meta.parent = std::make_shared<PointSetMeta>(p.meta);
  q.meta.field = p.meta.field;
  q.meta.exponents = p.meta.exponents;
  q.meta.warning = p.meta.warning;
  return q;
}

PointSet gen_walsh_pset(const FieldParams& f, std::size_t s) {
  return gen_walsh_pset(f, exponent_sequence(f.base(), s));
}

PointSet gen_walsh_pset(const FieldParams& f, const std::vector<u32>& exponents) {
  check_dim(exponents.size());
  for (u32 e : exponents)
    if (e == 0) throw std::invalid_argument("exponents must be >= 1");
  PointSet p;
  p.denom = f.card();
  p.dim = exponents.size();
  p.residues.reserve(p.denom * p.dim);
  for (u64 n = 0; n < f.card(); ++n) {
    const FieldPoly q = digit_bijection(n, f);
    for (u32 e : exponents)
      p.residues.push_back(static_cast<u32>(nu_m_numerator(poly_pow_mod(q, e, f), f)));
  }
  p.meta.family = PointFamily::walsh;
  p.meta.field = f;
  p.meta.exponents = exponents;
  return p;
}

PointSet gen_walsh_pset_fast(const FieldParams& f, std::size_t s) {
  return gen_walsh_pset_fast(f, exponent_sequence(f.base(), s));
}

PointSet gen_walsh_pset_fast(const FieldParams& f, const std::vector<u32>& exponents) {
  check_dim(exponents.size());
  if (!f.primitive())
    throw std::domain_error("fast construction requires a primitive modulus polynomial");
  for (u32 e : exponents)
    if (e == 0) throw std::invalid_argument("exponents must be >= 1");
  const u64 order = f.card() - 1;
  // nu_m of the powers of x, which sweep all nonzero field elements.
  std::vector<u32> table(order);
  FieldPoly x;
  x.c.assign(f.degree(), 0);
  if (f.degree() == 1)
    x.c[0] = static_cast<std::uint8_t>((f.base() - f.modulus()[0] % f.base()) % f.base());
  else
    x.c[1] = 1;
  FieldPoly pw;
  pw.c.assign(f.degree(), 0);
  pw.c[0] = 1;
  for (u64 i = 0; i < order; ++i) {
    table[i] = static_cast<u32>(nu_m_numerator(pw, f));
    pw = poly_mul_mod(pw, x, f);
  }
  PointSet p;
  p.denom = f.card();
  p.dim = exponents.size();
  p.residues.assign(p.dim, 0);  // the zero point
  p.residues.reserve(p.denom * p.dim);
  for (u64 n = 0; n < order; ++n) {
    for (u32 e : exponents)
      p.residues.push_back(table[static_cast<u64>(e) * n % order]);
  }
  p.meta.family = PointFamily::walsh_fast;
  p.meta.field = f;
  p.meta.exponents = exponents;
  return p;
}

PointSet regenerate(u64 denom, std::size_t dim, const PointSetMeta& meta) {
  switch (meta.family) {
    case PointFamily::weil:
      return gen_weil_pset(PrimeModulus(static_cast<u32>(denom)), dim);
    case PointFamily::weil_fast:
      return gen_weil_pset_fast(PrimeModulus(static_cast<u32>(denom)), dim);
    case PointFamily::weil_exponents:
      return gen_weil_pset_exponents(PrimeModulus(static_cast<u32>(denom)), meta.exponents);
    case PointFamily::walsh:
      return gen_walsh_pset(*meta.field, meta.exponents);
    case PointFamily::walsh_fast:
      return gen_walsh_pset_fast(*meta.field, meta.exponents);
    case PointFamily::tent: {
      if (!meta.parent) throw std::invalid_argument("tent metadata lacks a parent record");
      return tent_transform(regenerate(denom, dim, *meta.parent));
    }
  }
  throw std::invalid_argument("unknown point family");
}

PointSet tent_parent(const PointSet& p) {
  if (p.meta.family != PointFamily::tent || !p.meta.parent)
    throw std::invalid_argument("tent_parent requires a tent-transformed set");
  return regenerate(p.denom, p.dim, *p.meta.parent);
}

bool same_point_multiset(const PointSet& a, const PointSet& b) {
  if (a.denom != b.denom || a.dim != b.dim || a.residues.size() != b.residues.size()) return false;
  const std::size_t rows = a.rows();
  std::vector<std::size_t> ia(rows), ib(rows);
  for (std::size_t i = 0; i < rows; ++i) ia[i] = ib[i] = i;
  auto row_less = [&](const PointSet& p) {
    return [&p](std::size_t x, std::size_t y) {
      const auto* rx = &p.residues[x * p.dim];
      const auto* ry = &p.residues[y * p.dim];
      return std::lexicographical_compare(rx, rx + p.dim, ry, ry + p.dim);
    };
  };
  std::sort(ia.begin(), ia.end(), row_less(a));
  std::sort(ib.begin(), ib.end(), row_less(b));
  for (std::size_t i = 0; i < rows; ++i) {
    const auto* ra = &a.residues[ia[i] * a.dim];
    const auto* rb = &b.residues[ib[i] * b.dim];
    if (!std::equal(ra, ra + a.dim, rb)) return false;
  }
  return true;
}

}  // namespace weilqmc
