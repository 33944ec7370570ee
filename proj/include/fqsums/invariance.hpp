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

#ifndef FQSUMS_INVARIANCE_HPP
#define FQSUMS_INVARIANCE_HPP

#include <cstdint>
#include <vector>

#include "fqsums/charsum.hpp"
#include "fqsums/polyring.hpp"

namespace fqs {

/// g with f(x) = g(x^q - x), q = |k|. Throws NotInvariant when f is not
/// invariant under translation by k.
Poly decompose_translation(const Poly& f);

/// g with f(x) = g(x^{(q-1)/e}) for f over k or k_r.
Poly decompose_homothety(const Poly& f, std::uint64_t e);

struct ASStep {
    unsigned removed_degree;
    unsigned new_degree;
    /// coefficient of the substituted monomial a * b_d x^{d/p}
    FqElem new_coeff;
};

struct ASReduction {
    Poly reduced;
    /// Degree of `reduced`, or 0 when it is constant.
    unsigned d_prime = 0;
    FqElem twist;
    std::vector<ASStep> steps;
};

/// The a in k with psi(t^p) = psi(a t) for all t in k.
FqElem as_twist(const AdditiveChar& psi);

/// Lowers the leading degree while it is divisible by p, keeping
/// psi(Tr(f(x))) unchanged at every point of every k_r.
ASReduction as_reduce(const Poly& f, const AdditiveChar& psi);

struct PowerProfile {
    bool is_mth_power = false;
    /// Number of distinct roots in an algebraic closure.
    unsigned distinct_roots = 0;
};

/// Uses the square-free decomposition, so it needs no splitting field.
PowerProfile mth_power_test(const Poly& f, unsigned m);

/// The same answer by brute force: finds the smallest r <= 12 with
/// q^r <= cap over which f splits and reads multiplicities off its roots.
/// Throws FieldTooLarge when no such r exists.
PowerProfile split_root_profile(const Poly& f, unsigned m, std::uint64_t cap = std::uint64_t{1} << 24);

}  // namespace fqs

#endif
