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

#ifndef FQSUMS_LOCALDATA_HPP
#define FQSUMS_LOCALDATA_HPP

#include <cstddef>
#include <vector>

#include "fqsums/polyring.hpp"

namespace fqs {

/// Truncated series c_0 t^k + c_1 t^{k-1} + ... + c_{N-1} t^{k-N+1} +
/// O(t^{k-N}) in descending powers of t. Every operation returns the number
/// of terms it can guarantee; leading zeros are stripped so c_0 != 0 unless
/// nothing is known (N = 0).
class LaurentTail {
   public:
    LaurentTail(FieldPtr field, int top, std::vector<FqElem> coeffs);
    /// g as a series, keeping n terms from t^{deg g} down.
    static LaurentTail from_poly(const Poly& g, std::size_t n);
    static LaurentTail monomial(FieldPtr field, FqElem c, int exponent, std::size_t n);

    const Field& field() const noexcept { return *field_; }
    const FieldPtr& field_ptr() const noexcept { return field_; }
    int top() const noexcept { return top_; }
    std::size_t size() const noexcept { return c_.size(); }
    /// Lowest exponent whose coefficient is known.
    int low() const noexcept { return top_ - static_cast<int>(c_.size()) + 1; }
    const std::vector<FqElem>& coeffs() const noexcept { return c_; }
    FqElem lead() const;
    /// Coefficient of t^e; zero above top, PrecisionExhausted below low().
    FqElem at(int e) const;
    /// The terms with nonnegative exponent, as a polynomial.
    Poly nonnegative_part() const;

   private:
    void normalize();

    FieldPtr field_;
    int top_;
    std::vector<FqElem> c_;
};

LaurentTail operator+(const LaurentTail& a, const LaurentTail& b);
LaurentTail operator-(const LaurentTail& a, const LaurentTail& b);
LaurentTail operator*(const LaurentTail& a, const LaurentTail& b);
LaurentTail scale(const LaurentTail& a, FqElem c);
LaurentTail series_inverse(const LaurentTail& a);
LaurentTail series_pow(const LaurentTail& a, int n);
/// a(v(t)) for v with top exponent 1.
LaurentTail series_compose(const LaurentTail& a, const LaurentTail& v);
LaurentTail series_compose(const Poly& g, const LaurentTail& v);
/// y with y^n = a and leading coefficient `root` (root^n must equal the
/// leading coefficient of a, and n must be prime to p).
LaurentTail series_nth_root(const LaurentTail& a, unsigned n, FqElem root);
/// v with u(v(t)) = t, for u with top exponent 1.
LaurentTail series_reversion(const LaurentTail& u);

struct LocalData {
    FieldPtr field;
    FqElem s0;
    /// b_0 .. b_d
    std::vector<FqElem> h_coeffs;
    /// r_0, the leading coefficient of u.
    FqElem chosen_root;
    std::size_t branch = 0;
    std::size_t branch_count = 0;
    Poly h() const;
};

/// Solutions of z^{d-1} = -d a_d in k, ordered lexicographically by their
/// coefficient vectors.
std::vector<FqElem> local_branches(const Poly& g);

/// s_0 and the coefficients of h for g of degree d with p > d, using the
/// given root branch for the leading coefficient of u.
LocalData compute_local_data(const Poly& g, std::size_t precision = 0, std::size_t branch = 0);

}  // namespace fqs

#endif
