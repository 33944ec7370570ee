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

// Dense polynomial helpers over raw element codes of a Field. Used where a
// full Poly is not available yet (building the field itself) or would add
// needless tagging overhead.

#ifndef FQSUMS_SRC_DENSE_HPP
#define FQSUMS_SRC_DENSE_HPP

#include <cstdint>
#include <vector>

#include "fqsums/ffield.hpp"

namespace fqs::dense {

using Vec = std::vector<std::uint64_t>;

inline void trim(Vec& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline int deg(const Vec& a) { return static_cast<int>(a.size()) - 1; }

inline Vec sub(const Field& f, Vec a, const Vec& b) {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] = f.raw_sub(a[i], b[i]);
    trim(a);
    return a;
}

inline Vec mul(const Field& f, const Vec& a, const Vec& b) {
    if (a.empty() || b.empty()) return {};
    Vec out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = f.raw_add(out[i + j], f.raw_mul(a[i], b[j]));
    }
    trim(out);
    return out;
}

/// a mod m for nonzero m.
inline Vec rem(const Field& f, Vec a, const Vec& m) {
    trim(a);
    const int dm = deg(m);
    const std::uint64_t lead_inv = f.raw_inv(m.back());
    while (deg(a) >= dm) {
        const int shift = deg(a) - dm;
        const std::uint64_t c = f.raw_mul(a.back(), lead_inv);
        for (int j = 0; j <= dm; ++j) a[shift + j] = f.raw_sub(a[shift + j], f.raw_mul(c, m[j]));
        trim(a);
    }
    return a;
}

inline Vec gcd(const Field& f, Vec a, Vec b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Vec r = rem(f, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        const std::uint64_t li = f.raw_inv(a.back());
        for (auto& c : a) c = f.raw_mul(c, li);
    }
    return a;
}

inline Vec powmod(const Field& f, Vec base, std::uint64_t e, const Vec& m) {
    Vec result{1};
    base = rem(f, std::move(base), m);
    while (e) {
        if (e & 1) result = rem(f, mul(f, result, base), m);
        base = rem(f, mul(f, base, base), m);
        e >>= 1;
    }
    return result;
}

/// Ben-Or test: monic m of degree n over F (|F| = Q) is irreducible iff
/// gcd(m, x^{Q^i} - x) = 1 for 1 <= i <= n/2.
inline bool is_irreducible(const Field& f, const Vec& m) {
    const int n = deg(m);
    if (n <= 0) return false;
    if (n == 1) return true;
    const Vec x{0, 1};
    Vec h = x;
    for (int i = 1; i <= n / 2; ++i) {
        h = powmod(f, h, f.size(), m);
        Vec g = gcd(f, m, sub(f, h, x));
        if (deg(g) > 0) return false;
    }
    return true;
}

}  // namespace fqs::dense

#endif
