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

#ifndef WEILQMC_MODARITH_HPP
#define WEILQMC_MODARITH_HPP

#include <cstdint>
#include <vector>

namespace weilqmc {

// Deterministic primality test. Miller-Rabin with the first twelve primes
// as witnesses, which is known to decide primality for every n < 3.3e24
// and therefore for the whole uint64 range.
bool is_prime(std::uint64_t n) noexcept;

// Prime modulus for the power-residue point sets. Values are kept below
// 2^31 so that a product of two residues always fits in 64 bits.
struct PrimeModulus {
  std::uint32_t value;
  explicit PrimeModulus(std::uint32_t n);
};

// a^e mod n with O(log e) multiplications. Negative bases are reduced into
// [0, n) first. Throws std::invalid_argument for n = 0.
std::uint64_t pow_mod(std::int64_t a, std::uint64_t e, std::uint64_t n);

// Distinct prime factors of n, ascending (trial division; intended for
// inputs below 2^31, e.g. N-1 or b^m-1 at desk scale).
std::vector<std::uint64_t> distinct_prime_factors(std::uint64_t n);

// Count of a in [1, n] with gcd(a, n) = 1.
std::uint64_t euler_totient(std::uint64_t n);

// Smallest generator of the multiplicative group mod N. For N = 2 the
// group is trivial and 1 is returned.
std::uint32_t primitive_root(PrimeModulus n);

// Strictly increasing exponents j_1 < ... < j_s < N used by the
// generalized power-residue construction.
struct ExponentVector {
  std::vector<std::uint32_t> entries;
};

// The s smallest elements of J = {a in {1,...,N-2} : gcd(a, N-1) = 1}.
// Raising to such an exponent permutes Z_N, so every one-dimensional
// projection of the resulting point set is a full period.
// Throws std::domain_error when s > |J|.
ExponentVector coprime_exponents(PrimeModulus n, std::size_t s);

// |J| above; equals phi(N-1) for N >= 3 and 0 for N = 2.
std::uint64_t coprime_exponent_count(PrimeModulus n);

}  // namespace weilqmc

#endif  // WEILQMC_MODARITH_HPP
