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

#include "weilqmc/modarith.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

namespace weilqmc {
namespace {

using u64 = std::uint64_t;

u64 mul_mod(u64 a, u64 b, u64 n) {
  return static_cast<u64>(static_cast<unsigned __int128>(a) * b % n);
}

u64 pow_mod_u(u64 a, u64 e, u64 n) {
  u64 r = 1 % n;
  a %= n;
  while (e != 0) {
    if (e & 1) r = mul_mod(r, a, n);
    a = mul_mod(a, a, n);
    e >>= 1;
  }
  return r;
}

constexpr u64 kWitnesses[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

}  // namespace

bool is_prime(u64 n) noexcept {
  if (n < 2) return false;
  for (u64 p : kWitnesses) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int r = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++r;
  }
  for (u64 a : kWitnesses) {
    u64 x = pow_mod_u(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < r; ++i) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

PrimeModulus::PrimeModulus(std::uint32_t n) : value(n) {
  if (n >= (1u << 31))
    throw std::invalid_argument("modulus must be below 2^31");
  if (!is_prime(n))
    throw std::invalid_argument("N must be prime (got " + std::to_string(n) + ")");
}

u64 pow_mod(std::int64_t a, u64 e, u64 n) {
  if (n == 0) throw std::invalid_argument("pow_mod: modulus must be nonzero");
  std::int64_t m = static_cast<std::int64_t>(n);
  u64 base = static_cast<u64>(((a % m) + m) % m);
  return pow_mod_u(base, e, n);
}

std::vector<u64> distinct_prime_factors(u64 n) {
  std::vector<u64> out;
  for (u64 d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

u64 euler_totient(u64 n) {
  if (n == 0) throw std::invalid_argument("euler_totient: n must be positive");
  u64 result = n;
  for (u64 p : distinct_prime_factors(n)) result -= result / p;
  return result;
}

std::uint32_t primitive_root(PrimeModulus n) {
  const u64 nn = n.value;
  if (nn == 2) return 1;
  const u64 order = nn - 1;
  const auto factors = distinct_prime_factors(order);
  for (u64 g = 2; g < nn; ++g) {
    bool ok = true;
    for (u64 q : factors) {
      if (pow_mod_u(g, order / q, nn) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return static_cast<std::uint32_t>(g);
  }
  throw std::logic_error("primitive_root: no generator found");  // unreachable for prime N
}

ExponentVector coprime_exponents(PrimeModulus n, std::size_t s) {
  const u64 count = coprime_exponent_count(n);
  if (s > count)
    throw std::domain_error("insufficient coprime exponents: |J| = " + std::to_string(count) +
                            " < s = " + std::to_string(s));
  ExponentVector j;
  j.entries.reserve(s);
  for (std::uint32_t a = 1; a + 1 < n.value && j.entries.size() < s; ++a) {
    if (std::gcd<u64, u64>(a, n.value - 1) == 1) j.entries.push_back(a);
  }
  return j;
}

u64 coprime_exponent_count(PrimeModulus n) {
  if (n.value == 2) return 0;  // {1,...,N-2} is empty
  return euler_totient(n.value - 1);
}

}  // namespace weilqmc
