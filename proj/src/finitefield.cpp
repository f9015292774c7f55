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

#include "weilqmc/finitefield.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "weilqmc/modarith.hpp"

namespace weilqmc {
namespace {

using u8 = std::uint8_t;
using u32 = std::uint32_t;
using u64 = std::uint64_t;

// Remainder of `a` modulo the monic polynomial `d` over Z_b. Vectors are
// constant-first with explicit leading coefficients.
std::vector<u8> poly_rem(std::vector<u8> a, const std::vector<u8>& d, u32 b) {
  const std::size_t degd = d.size() - 1;
  while (a.size() > degd) {
    const u8 lead = a.back();
    if (lead != 0) {
      const std::size_t shift = a.size() - 1 - degd;
      for (std::size_t i = 0; i <= degd; ++i) {
        const u32 sub = static_cast<u32>(d[i]) * lead % b;
        a[shift + i] = static_cast<u8>((a[shift + i] + b - sub) % b);
      }
    }
    a.pop_back();
  }
  return a;
}

void check_poly(const std::vector<u8>& p, u32 b) {
  if (b < 2) throw std::invalid_argument("base must be at least 2");
  if (p.size() < 2) throw std::invalid_argument("polynomial must have degree >= 1");
  if (p.back() != 1) throw std::invalid_argument("polynomial must be monic");
  for (u8 c : p)
    if (c >= b) throw std::invalid_argument("polynomial coefficient out of range");
}

void check_element(const FieldPoly& q, const FieldParams& f) {
  if (q.c.size() != f.degree()) throw std::invalid_argument("field element has wrong length");
  for (u8 c : q.c)
    if (c >= f.base()) throw std::invalid_argument("field element coefficient out of range");
}

// Raw residue arithmetic modulo a monic polynomial, independent of
// FieldParams so the construction-time checks cannot recurse.
std::vector<u8> raw_mul(const std::vector<u8>& u, const std::vector<u8>& v,
                        const std::vector<u8>& mod, u32 b) {
  const std::size_t m = mod.size() - 1;
  std::vector<u32> prod(2 * m - 1, 0);
  for (std::size_t i = 0; i < m; ++i) {
    if (u[i] == 0) continue;
    for (std::size_t j = 0; j < m; ++j) prod[i + j] = (prod[i + j] + u[i] * v[j]) % b;
  }
  for (std::size_t d = prod.size(); d-- > m;) {
    const u32 lead = prod[d];
    if (lead == 0) continue;
    prod[d] = 0;
    for (std::size_t i = 0; i < m; ++i)
      prod[d - m + i] = (prod[d - m + i] + (b - mod[i]) % b * lead) % b;
  }
  std::vector<u8> r(m);
  for (std::size_t i = 0; i < m; ++i) r[i] = static_cast<u8>(prod[i]);
  return r;
}

std::vector<u8> raw_pow(std::vector<u8> base, u64 e, const std::vector<u8>& mod, u32 b) {
  const std::size_t m = mod.size() - 1;
  std::vector<u8> result(m, 0);
  result[0] = 1;
  while (e != 0) {
    if (e & 1) result = raw_mul(result, base, mod, b);
    base = raw_mul(base, base, mod, b);
    e >>= 1;
  }
  return result;
}

std::vector<u8> raw_x_class(const std::vector<u8>& mod, u32 b) {
  const std::size_t m = mod.size() - 1;
  std::vector<u8> x(m, 0);
  if (m == 1)
    x[0] = static_cast<u8>((b - mod[0]) % b);
  else
    x[1] = 1;
  return x;
}

}  // namespace

FieldParams::FieldParams(u32 base, u32 degree, std::vector<u8> modulus)
    : base_(base), degree_(degree), modulus_(std::move(modulus)) {
  if (!is_prime(base_)) throw std::invalid_argument("field base must be prime");
  if (base_ > 255) throw std::invalid_argument("field base too large (max 251)");
  if (degree_ < 1) throw std::invalid_argument("extension degree must be >= 1");
  card_ = 1;
  for (u32 i = 0; i < degree_; ++i) {
    card_ *= base_;
    if (card_ > (1ull << 31)) throw std::invalid_argument("field size must be at most 2^31");
  }
  if (modulus_.size() != degree_ + 1)
    throw std::invalid_argument("modulus must have degree m with explicit leading coefficient");
  check_poly(modulus_, base_);
  if (!is_irreducible(modulus_, base_))
    throw std::invalid_argument("modulus polynomial is reducible");
  primitive_ = is_primitive(modulus_, base_);
}

FieldParams FieldParams::find(u32 base, u32 degree, bool primitive_required) {
  if (!is_prime(base)) throw std::invalid_argument("field base must be prime");
  if (degree < 1) throw std::invalid_argument("extension degree must be >= 1");
  u64 card = 1;
  for (u32 i = 0; i < degree; ++i) card *= base;
  for (u64 n = 0; n < card; ++n) {
    std::vector<u8> p(degree + 1, 0);
    u64 t = n;
    for (u32 i = 0; i < degree; ++i) {
      p[i] = static_cast<u8>(t % base);
      t /= base;
    }
    p[degree] = 1;
    if (!is_irreducible(p, base)) continue;
    if (primitive_required && !is_primitive(p, base)) continue;
    return FieldParams(base, degree, std::move(p));
  }
  throw std::logic_error("no suitable modulus found");  // unreachable
}

FieldParams FieldParams::parse(const std::string& text) {
  std::istringstream in(text);
  std::vector<u64> vals;
  std::string tok;
  while (std::getline(in, tok, ',')) vals.push_back(std::stoull(tok));
  if (vals.size() < 4) throw std::invalid_argument("field spec must be b,m,p0,...,pm");
  const u32 b = static_cast<u32>(vals[0]);
  const u32 m = static_cast<u32>(vals[1]);
  if (vals.size() != 2 + m + 1) throw std::invalid_argument("field spec has wrong coefficient count");
  std::vector<u8> p(m + 1);
  for (u32 i = 0; i <= m; ++i) p[i] = static_cast<u8>(vals[2 + i]);
  return FieldParams(b, m, std::move(p));
}

std::string FieldParams::serialize() const {
  std::ostringstream out;
  out << base_ << ',' << degree_;
  for (u8 c : modulus_) out << ',' << static_cast<u32>(c);
  return out.str();
}

std::complex<double> UnitRoot::value() const {
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(index) / static_cast<double>(order);
  return std::polar(1.0, angle);
}

FieldPoly poly_add(const FieldPoly& u, const FieldPoly& v, const FieldParams& f) {
  check_element(u, f);
  check_element(v, f);
  FieldPoly r = u;
  for (std::size_t i = 0; i < r.c.size(); ++i)
    r.c[i] = static_cast<u8>((r.c[i] + v.c[i]) % f.base());
  return r;
}

FieldPoly poly_mul_mod(const FieldPoly& u, const FieldPoly& v, const FieldParams& f) {
  check_element(u, f);
  check_element(v, f);
  const u32 b = f.base();
  const u32 m = f.degree();
  std::vector<u32> prod(2 * m - 1, 0);
  for (u32 i = 0; i < m; ++i) {
    if (u.c[i] == 0) continue;
    for (u32 j = 0; j < m; ++j) prod[i + j] = (prod[i + j] + u.c[i] * v.c[j]) % b;
  }
  // reduce by the monic modulus
  const auto& p = f.modulus();
  for (std::size_t d = prod.size(); d-- > m;) {
    const u32 lead = prod[d];
    if (lead == 0) continue;
    prod[d] = 0;
    for (u32 i = 0; i < m; ++i) {
      prod[d - m + i] = (prod[d - m + i] + (b - p[i] % b) * lead) % b;
    }
  }
  FieldPoly r;
  r.c.assign(m, 0);
  for (u32 i = 0; i < m; ++i) r.c[i] = static_cast<u8>(prod[i]);
  return r;
}

FieldPoly poly_pow_mod(const FieldPoly& u, u64 e, const FieldParams& f) {
  check_element(u, f);
  FieldPoly result;
  result.c.assign(f.degree(), 0);
  result.c[0] = 1;
  FieldPoly base = u;
  while (e != 0) {
    if (e & 1) result = poly_mul_mod(result, base, f);
    base = poly_mul_mod(base, base, f);
    e >>= 1;
  }
  return result;
}

bool is_irreducible(const std::vector<u8>& poly, u32 base) {
  check_poly(poly, base);
  const std::size_t deg = poly.size() - 1;
  if (deg == 1) return true;
  // Trial division by every monic polynomial of degree 1..deg/2.
  for (std::size_t d = 1; 2 * d <= deg; ++d) {
    u64 count = 1;
    for (std::size_t i = 0; i < d; ++i) count *= base;
    for (u64 n = 0; n < count; ++n) {
      std::vector<u8> div(d + 1, 0);
      u64 t = n;
      for (std::size_t i = 0; i < d; ++i) {
        div[i] = static_cast<u8>(t % base);
        t /= base;
      }
      div[d] = 1;
      auto rem = poly_rem(poly, div, base);
      bool zero = true;
      for (u8 c : rem)
        if (c != 0) zero = false;
      if (zero) return false;
    }
  }
  return true;
}

bool is_primitive(const std::vector<u8>& poly, u32 base) {
  check_poly(poly, base);
  if (!is_irreducible(poly, base)) throw std::invalid_argument("is_primitive requires an irreducible polynomial");
  const u32 m = static_cast<u32>(poly.size() - 1);
  const std::vector<u8> x = raw_x_class(poly, base);  // for m = 1 the class of x is -p_0
  bool x_zero = true;
  for (u8 c : x)
    if (c != 0) x_zero = false;
  if (x_zero) return false;
  u64 group = 1;
  for (u32 i = 0; i < m; ++i) group *= base;
  group -= 1;
  for (u64 q : distinct_prime_factors(group)) {
    const std::vector<u8> t = raw_pow(x, group / q, poly, base);
    bool is_one = t[0] == 1;
    for (std::size_t i = 1; i < t.size(); ++i)
      if (t[i] != 0) is_one = false;
    if (is_one) return false;
  }
  return true;
}

FieldPoly digit_bijection(u64 n, const FieldParams& f) {
  if (n >= f.card()) throw std::out_of_range("digit_bijection: n must be below b^m");
  FieldPoly q;
  q.c.assign(f.degree(), 0);
  for (u32 i = 0; i < f.degree(); ++i) {
    q.c[i] = static_cast<u8>(n % f.base());
    n /= f.base();
  }
  return q;
}

u64 digit_bijection_inv(const FieldPoly& q, const FieldParams& f) {
  check_element(q, f);
  u64 n = 0;
  for (u32 i = f.degree(); i-- > 0;) n = n * f.base() + q.c[i];
  return n;
}

u64 nu_m_numerator(const FieldPoly& q, const FieldParams& f) {
  check_element(q, f);
  u64 n = 0;
  for (u32 i = 0; i < f.degree(); ++i) n = n * f.base() + q.c[i];
  return n;
}

u32 trace(const FieldPoly& y, const FieldParams& f) {
  check_element(y, f);
  FieldPoly acc = y;
  FieldPoly term = y;
  for (u32 i = 1; i < f.degree(); ++i) {
    term = poly_pow_mod(term, f.base(), f);
    acc = poly_add(acc, term, f);
  }
  for (std::size_t i = 1; i < acc.c.size(); ++i) {
    if (acc.c[i] != 0) throw std::logic_error("trace did not land in the prime subfield");
  }
  return acc.c[0];
}

UnitRoot additive_character(const FieldPoly& a, const FieldPoly& z, const FieldParams& f) {
  return UnitRoot{trace(poly_mul_mod(a, z, f), f), f.base()};
}

}  // namespace weilqmc
