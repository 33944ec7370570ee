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

#ifndef FQSUMS_POLYRING_HPP
#define FQSUMS_POLYRING_HPP

#include <cstdint>
#include <initializer_list>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fqsums/ffield.hpp"

namespace fqs {

/// Dense univariate polynomial a_0 + a_1 x + ... + a_d x^d over a Field.
/// Trailing zero coefficients are always trimmed, so the zero polynomial
/// has no coefficients and degree -1.
class Poly {
   public:
    explicit Poly(FieldPtr field);
    Poly(FieldPtr field, std::vector<FqElem> coeffs);

    static Poly constant(FieldPtr field, FqElem c);
    static Poly monomial(FieldPtr field, FqElem c, unsigned n);
    static Poly x(FieldPtr field);
    /// Coefficients given as integers, reduced into the prime subfield.
    static Poly from_ints(FieldPtr field, std::initializer_list<std::int64_t> coeffs);
    static Poly from_codes(FieldPtr field, const std::vector<std::uint64_t>& codes);

    const Field& field() const noexcept { return *field_; }
    const FieldPtr& field_ptr() const noexcept { return field_; }
    int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const noexcept { return c_.empty(); }
    bool is_constant() const noexcept { return c_.size() <= 1; }
    const std::vector<FqElem>& coeffs() const noexcept { return c_; }
    /// a_i, or zero beyond the degree.
    FqElem coeff(std::size_t i) const noexcept;
    FqElem lead() const noexcept { return coeff(c_.empty() ? 0 : c_.size() - 1); }
    std::vector<std::uint64_t> codes() const;

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator-() const;
    Poly operator*(const Poly& o) const;
    Poly scale(FqElem c) const;
    Poly pow(unsigned n) const;
    Poly monic() const;
    Poly derivative() const;
    /// f(g(x)).
    Poly compose(const Poly& g) const;
    /// The same coefficients viewed in the extension `ext` of this field.
    Poly embed(const std::shared_ptr<const ExtCtx>& ext) const;

    friend bool operator==(const Poly& a, const Poly& b) noexcept {
        return a.field_ == b.field_ && a.c_ == b.c_;
    }

   private:
    void trim() noexcept;
    void require_same(const Poly& o) const;

    FieldPtr field_;
    std::vector<FqElem> c_;
};

/// Horner evaluation at x in the coefficient field.
FqElem eval(const Poly& f, FqElem x);
/// Evaluation at x in an extension of the coefficient field.
FqElem eval(const Poly& f, FqElem x, const ExtCtx& ext);
/// Horner on raw codes; codes of k are valid codes of its extensions.
std::uint64_t raw_eval(const Field& field, const std::vector<std::uint64_t>& coeffs, std::uint64_t x) noexcept;

std::pair<Poly, Poly> divrem(const Poly& f, const Poly& g);
/// Monic gcd (zero when both inputs are zero).
Poly gcd(const Poly& f, const Poly& g);
/// f / g, requiring g | f exactly.
Poly exact_div(const Poly& f, const Poly& g);

/// Resultant via the Euclidean remainder sequence.
FqElem resultant(const Poly& f, const Poly& g);
/// (-1)^{d(d-1)/2} Res(g, g') / a_d.
FqElem discriminant(const Poly& g);
/// g(x + c).
Poly shift(const Poly& g, FqElem c);
bool squarefree(const Poly& g);

/// Square-free decomposition g = lc * prod f_i^{m_i} with f_i monic,
/// square-free and pairwise coprime.
struct SquarefreeFactor {
    Poly factor;
    unsigned multiplicity;
};
std::vector<SquarefreeFactor> squarefree_decomposition(const Poly& g);

struct RootSet {
    std::vector<FqElem> roots;
    std::vector<unsigned> multiplicity;
    bool splits = false;
};
/// Exhaustive root search over `field`, which is either the coefficient
/// field or an ExtCtx built over it. Requires |field| <= kRootSearchLimit.
inline constexpr std::uint64_t kRootSearchLimit = 1000000;
RootSet roots_in(const Poly& g, const FieldPtr& field);

enum class Parity { Odd, Even, Neither };
Parity parity_check(const Poly& g);
std::string_view to_string(Parity p) noexcept;

/// Comma-separated coefficients a_0..a_d in the element text format.
std::string format_poly(const Poly& f);
Poly parse_poly(FieldPtr field, std::string_view text);

}  // namespace fqs

#endif
