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

#ifndef WEILQMC_POINTSETS_HPP
#define WEILQMC_POINTSETS_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "weilqmc/finitefield.hpp"
#include "weilqmc/modarith.hpp"

namespace weilqmc {

enum class PointFamily { weil, weil_fast, weil_exponents, tent, walsh, walsh_fast };

const char* family_name(PointFamily family);

struct PointSetMeta {
  PointFamily family = PointFamily::weil;
  // Immediate parent for tent-transformed sets, so the pre-image can be
  // regenerated deterministically.
  std::shared_ptr<const PointSetMeta> parent;
  std::optional<FieldParams> field;       // walsh families
  std::vector<std::uint32_t> exponents;   // per-coordinate exponents actually used
  std::string warning;                    // non-fatal notes, e.g. s > sqrt(N)
};

// Quadrature nodes with exact rational coordinates over a common
// denominator (a prime N, or b^m). Row n holds the s numerators of the
// n-th point; duplicate rows are meaningful (multiset semantics).
// Numerators lie in [0, denom); the single exception is the tent transform
// of a set with even denominator, where the midpoint maps to exactly 1
// (numerator == denom).
struct PointSet {
  std::uint64_t denom = 1;
  std::size_t dim = 0;
  std::vector<std::uint32_t> residues;  // row-major, rows() x dim
  PointSetMeta meta;

  std::size_t rows() const { return dim == 0 ? 0 : residues.size() / dim; }
  std::uint32_t at(std::size_t row, std::size_t j) const { return residues[row * dim + j]; }
};

// First s positive integers not divisible by b; the j-th entry c_j is the
// smallest admissible polynomial degree with c_j - floor(c_j/b) = j, and
// c_j <= j b/(b-1).
std::vector<std::uint32_t> exponent_sequence(std::uint32_t b, std::size_t s);

// Power-residue set: row n = (n mod N, n^2 mod N, ..., n^s mod N) over N.
PointSet gen_weil_pset(PrimeModulus n, std::size_t s);

// Same multiset built from one table of powers of a primitive root
// (order-N work instead of order-Ns); only the row order differs.
PointSet gen_weil_pset_fast(PrimeModulus n, std::size_t s);

// Generalized exponents: row n = (n^{j_1} mod N, ..., n^{j_s} mod N).
PointSet gen_weil_pset_exponents(PrimeModulus n, const std::vector<std::uint32_t>& exponents);

// Coordinate-wise tent transform t -> 1 - |2t - 1|, exact on rationals:
// numerator r maps to 2r when 2r < denom and to 2*denom - 2r otherwise.
PointSet tent_transform(const PointSet& p);

// Digital set over F_{b^m}: row n = (nu_m(n(x)^{c_1}), ..., nu_m(n(x)^{c_s}))
// over b^m, where n(x) is the digit polynomial of n. The default exponents
// are exponent_sequence(b, s); an explicit list can be supplied so that the
// elementary and fast constructions can be compared like for like.
PointSet gen_walsh_pset(const FieldParams& f, std::size_t s);
PointSet gen_walsh_pset(const FieldParams& f, const std::vector<std::uint32_t>& exponents);

// Fast variant using the powers of x for a primitive modulus; equals the
// elementary construction as a multiset under identical exponents.
PointSet gen_walsh_pset_fast(const FieldParams& f, std::size_t s);
PointSet gen_walsh_pset_fast(const FieldParams& f, const std::vector<std::uint32_t>& exponents);

// Rebuild a point set from its metadata (used for reproducibility checks
// and for recovering the pre-image of a tent-transformed set).
PointSet regenerate(std::uint64_t denom, std::size_t dim, const PointSetMeta& meta);
PointSet tent_parent(const PointSet& p);

bool same_point_multiset(const PointSet& a, const PointSet& b);

}  // namespace weilqmc

#endif  // WEILQMC_POINTSETS_HPP
