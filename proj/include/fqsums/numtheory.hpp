/*
   Copyright 2026 The fqsums Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef FQSUMS_NUMTHEORY_HPP
#define FQSUMS_NUMTHEORY_HPP

#include <cstdint>
#include <optional>
#include <vector>

namespace fqs::nt {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t addmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    // a, b < m < 2^63, so the sum cannot wrap
    std::uint64_t s = a + b;
    return s >= m ? s - m : s;
}

inline std::uint64_t submod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return a >= b ? a - b : a + m - b;
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);

/// Inverse of a modulo m; a must be a unit.
std::uint64_t invmod(std::uint64_t a, std::uint64_t m);

/// Deterministic Miller-Rabin, exact for all 64-bit inputs.
bool is_prime(std::uint64_t n);

/// Distinct prime divisors of n, ascending.
std::vector<std::uint64_t> prime_divisors(std::uint64_t n);

/// All positive divisors of n, ascending.
std::vector<std::uint64_t> divisors(std::uint64_t n);

/// b^e, or nullopt if the result does not fit below `limit`.
std::optional<std::uint64_t> checked_pow(std::uint64_t b, unsigned e,
                                         std::uint64_t limit = (std::uint64_t{1} << 63));

std::uint64_t gcd(std::uint64_t a, std::uint64_t b);

}  // namespace fqs::nt

#endif
