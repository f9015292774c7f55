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

#ifndef WEILQMC_FINITEFIELD_HPP
#define WEILQMC_FINITEFIELD_HPP

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace weilqmc {

// Element of F_{b^m} = Z_b[x]/(p): coefficient vector (q_0, ..., q_{m-1}),
// constant term first, every entry in [0, b).
struct FieldPoly {
  std::vector<std::uint8_t> c;

  bool is_zero() const {
    for (auto v : c)
      if (v != 0) return false;
    return true;
  }
  friend bool operator==(const FieldPoly&, const FieldPoly&) = default;
};

// F_{b^m} described by a prime base b, extension degree m >= 1 and a monic
// irreducible modulus p of degree m. Coefficients are stored constant term
// first, so modulus()[m] == 1. Immutable after construction and safe to
// share across threads.
class FieldParams {
 public:
  FieldParams(std::uint32_t base, std::uint32_t degree, std::vector<std::uint8_t> modulus);

  // Smallest suitable monic modulus of degree m, scanning coefficient
  // vectors in constant-first base-b counting order. Deterministic.
  static FieldParams find(std::uint32_t base, std::uint32_t degree, bool primitive_required);

  // Round-trips the "b,m,p0,p1,...,pm" form, e.g. "2,2,1,1,1" for x^2+x+1.
  static FieldParams parse(const std::string& text);
  std::string serialize() const;

  std::uint32_t base() const { return base_; }
  std::uint32_t degree() const { return degree_; }
  std::uint64_t card() const { return card_; }
  const std::vector<std::uint8_t>& modulus() const { return modulus_; }
  // True when x generates the full multiplicative group, i.e. the modulus
  // is a primitive polynomial (required by the fast point construction).
  bool primitive() const { return primitive_; }

  friend bool operator==(const FieldParams& a, const FieldParams& b) {
    return a.base_ == b.base_ && a.modulus_ == b.modulus_;
  }

 private:
  std::uint32_t base_ = 2;
  std::uint32_t degree_ = 1;
  std::uint64_t card_ = 2;
  std::vector<std::uint8_t> modulus_;
  bool primitive_ = false;
};

// One of the b-th roots of unity, e^{2 pi i index / order}, kept in index
// form so that sums of character values can be tallied exactly.
struct UnitRoot {
  std::uint32_t index = 0;
  std::uint32_t order = 1;
  std::complex<double> value() const;
};

FieldPoly poly_add(const FieldPoly& u, const FieldPoly& v, const FieldParams& f);
FieldPoly poly_mul_mod(const FieldPoly& u, const FieldPoly& v, const FieldParams& f);
FieldPoly poly_pow_mod(const FieldPoly& u, std::uint64_t e, const FieldParams& f);

// Irreducibility of a monic polynomial over Z_b (coefficients constant
// first, degree >= 1), decided by trial division against every monic
// polynomial of degree at most deg/2.
bool is_irreducible(const std::vector<std::uint8_t>& poly, std::uint32_t base);

// Whether x has multiplicative order b^deg - 1 modulo the given monic
// irreducible polynomial.
bool is_primitive(const std::vector<std::uint8_t>& poly, std::uint32_t base);

// The base-b digit bijection n <-> (zeta_0, zeta_1, ...), fixing 0.
FieldPoly digit_bijection(std::uint64_t n, const FieldParams& f);
std::uint64_t digit_bijection_inv(const FieldPoly& q, const FieldParams& f);

// nu_m(q) = q_0/b + q_1/b^2 + ... + q_{m-1}/b^m, returned as the exact
// numerator over b^m.
std::uint64_t nu_m_numerator(const FieldPoly& q, const FieldParams& f);

// Tr(y) = y + y^b + ... + y^{b^{m-1}}, an element of the prime subfield,
// returned as a residue mod b.
std::uint32_t trace(const FieldPoly& y, const FieldParams& f);

// psi(a z) for the canonical additive character psi(y) = e^{2 pi i Tr(y)/b}.
UnitRoot additive_character(const FieldPoly& a, const FieldPoly& z, const FieldParams& f);

}  // namespace weilqmc

#endif  // WEILQMC_FINITEFIELD_HPP
