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

#include "fqsums/localdata.hpp"

#include <algorithm>

#include "fqsums/error.hpp"

namespace fqs {

LaurentTail::LaurentTail(FieldPtr field, int top, std::vector<FqElem> coeffs)
    : field_(std::move(field)), top_(top), c_(std::move(coeffs)) {
    if (!field_) throw Error(ErrorCode::InvalidArgument, "series needs a field");
    for (const auto& c : c_) field_->check(c);
    normalize();
}

LaurentTail LaurentTail::from_poly(const Poly& g, std::size_t n) {
    if (g.is_zero()) return LaurentTail(g.field_ptr(), 0, std::vector<FqElem>(n, g.field().zero()));
    std::vector<FqElem> c(n, g.field().zero());
    for (std::size_t i = 0; i < n && i <= static_cast<std::size_t>(g.degree()); ++i) c[i] = g.coeff(g.degree() - i);
    return LaurentTail(g.field_ptr(), g.degree(), std::move(c));
}

LaurentTail LaurentTail::monomial(FieldPtr field, FqElem c, int exponent, std::size_t n) {
    std::vector<FqElem> v(n, field->zero());
    if (n) v[0] = c;
    return LaurentTail(std::move(field), exponent, std::move(v));
}

void LaurentTail::normalize() {
    std::size_t lead = 0;
    while (lead < c_.size() && c_[lead] == field_->zero()) ++lead;
    if (lead == 0) return;
    c_.erase(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(lead));
    top_ -= static_cast<int>(lead);
}

FqElem LaurentTail::lead() const {
    if (c_.empty()) throw Error(ErrorCode::PrecisionExhausted, "series has no known terms");
    return c_[0];
}

FqElem LaurentTail::at(int e) const {
    if (e > top_) return field_->zero();
    if (e < low()) throw Error(ErrorCode::PrecisionExhausted, "coefficient of t^" + std::to_string(e) + " is not known");
    return c_[static_cast<std::size_t>(top_ - e)];
}

Poly LaurentTail::nonnegative_part() const {
    if (low() > 0) throw Error(ErrorCode::PrecisionExhausted, "constant term is not known");
    std::vector<FqElem> v;
    for (int e = 0; e <= top_; ++e) v.push_back(at(e));
    return Poly(field_, std::move(v));
}

namespace {

void require_same(const LaurentTail& a, const LaurentTail& b) {
    if (a.field_ptr() != b.field_ptr()) throw Error(ErrorCode::CtxMismatch, "series over different fields");
}

template <class Op>
LaurentTail combine(const LaurentTail& a, const LaurentTail& b, Op op) {
    require_same(a, b);
    const Field& k = a.field();
    const int top = std::max(a.top(), b.top());
    const int low = std::max(a.low(), b.low());
    std::vector<FqElem> c;
    for (int e = top; e >= low; --e) {
        const FqElem x = e > a.top() ? k.zero() : a.at(e);
        const FqElem y = e > b.top() ? k.zero() : b.at(e);
        c.push_back(op(x, y));
    }
    return LaurentTail(a.field_ptr(), top, std::move(c));
}

}  // namespace

LaurentTail operator+(const LaurentTail& a, const LaurentTail& b) {
    return combine(a, b, [&](FqElem x, FqElem y) { return a.field().add(x, y); });
}

LaurentTail operator-(const LaurentTail& a, const LaurentTail& b) {
    return combine(a, b, [&](FqElem x, FqElem y) { return a.field().sub(x, y); });
}

LaurentTail operator*(const LaurentTail& a, const LaurentTail& b) {
    require_same(a, b);
    const Field& k = a.field();
    const std::size_t n = std::min(a.size(), b.size());
    std::vector<FqElem> c(n, k.zero());
    for (std::size_t i = 0; i < n; ++i) {
        if (a.coeffs()[i] == k.zero()) continue;
        for (std::size_t j = 0; i + j < n; ++j) c[i + j] = k.add(c[i + j], k.mul(a.coeffs()[i], b.coeffs()[j]));
    }
    return LaurentTail(a.field_ptr(), a.top() + b.top(), std::move(c));
}

LaurentTail scale(const LaurentTail& a, FqElem s) {
    std::vector<FqElem> c = a.coeffs();
    for (auto& x : c) x = a.field().mul(x, s);
    return LaurentTail(a.field_ptr(), a.top(), std::move(c));
}

LaurentTail series_inverse(const LaurentTail& a) {
    const Field& k = a.field();
    const FqElem inv0 = k.inv(a.lead());
    const std::size_t n = a.size();
    std::vector<FqElem> b(n, k.zero());
    b[0] = inv0;
    for (std::size_t m = 1; m < n; ++m) {
        FqElem acc = k.zero();
        for (std::size_t i = 1; i <= m; ++i) acc = k.add(acc, k.mul(a.coeffs()[i], b[m - i]));
        b[m] = k.neg(k.mul(inv0, acc));
    }
    return LaurentTail(a.field_ptr(), -a.top(), std::move(b));
}

LaurentTail series_pow(const LaurentTail& a, int n) {
    if (n < 0) return series_pow(series_inverse(a), -n);
    LaurentTail result = LaurentTail::monomial(a.field_ptr(), a.field().one(), 0, a.size());
    LaurentTail base = a;
    while (n) {
        if (n & 1) result = result * base;
        n >>= 1;
        if (n) base = base * base;
    }
    return result;
}

namespace {

void require_linear_top(const LaurentTail& v) {
    if (v.size() == 0 || v.top() != 1)
        throw Error(ErrorCode::InvalidArgument, "substituted series must have top exponent 1");
}

LaurentTail truncate(const LaurentTail& a, std::size_t n) {
    if (a.size() <= n) return a;
    std::vector<FqElem> c(a.coeffs().begin(), a.coeffs().begin() + static_cast<std::ptrdiff_t>(n));
    return LaurentTail(a.field_ptr(), a.top(), std::move(c));
}

}  // namespace

LaurentTail series_compose(const LaurentTail& a, const LaurentTail& v) {
    require_same(a, v);
    require_linear_top(v);
    const std::size_t n = std::min(a.size(), v.size());
    if (n == 0) return LaurentTail(a.field_ptr(), a.top(), {});
    const LaurentTail vinv = series_inverse(v);
    LaurentTail power = series_pow(v, a.top());
    LaurentTail acc = scale(power, a.coeffs()[0]);
    for (std::size_t i = 1; i < n; ++i) {
        power = power * vinv;
        acc = acc + scale(power, a.coeffs()[i]);
    }
    // a's own truncation limits the result to n terms below its top
    const int low = a.top() - static_cast<int>(n) + 1;
    const std::size_t keep = acc.top() >= low ? static_cast<std::size_t>(acc.top() - low + 1) : 0;
    return truncate(acc, keep);
}

LaurentTail series_compose(const Poly& g, const LaurentTail& v) {
    require_linear_top(v);
    if (g.field_ptr() != v.field_ptr()) throw Error(ErrorCode::CtxMismatch, "series over different fields");
    if (g.is_zero()) return LaurentTail::monomial(v.field_ptr(), v.field().zero(), 0, v.size());
    LaurentTail acc = LaurentTail::monomial(v.field_ptr(), g.coeff(0), 0, v.size());
    LaurentTail power = LaurentTail::monomial(v.field_ptr(), v.field().one(), 0, v.size());
    for (int i = 1; i <= g.degree(); ++i) {
        power = power * v;
        acc = acc + scale(power, g.coeff(static_cast<std::size_t>(i)));
    }
    return acc;
}

LaurentTail series_nth_root(const LaurentTail& a, unsigned n, FqElem root) {
    const Field& k = a.field();
    if (n == 0) throw Error(ErrorCode::InvalidArgument, "root index must be positive");
    if (n % k.characteristic() == 0) throw Error(ErrorCode::BadCharacteristic, "root index divisible by p");
    if (a.top() % static_cast<int>(n) != 0)
        throw Error(ErrorCode::InvalidArgument, "top exponent is not divisible by the root index");
    const FqElem c0 = a.lead();
    k.check(root);
    if (k.pow(root, n) != c0) throw Error(ErrorCode::NoRootInField, "root^n differs from the leading coefficient");

    // work with A = a / (c0 t^top) = 1 + A_1 z + ..., z = 1/t
    const std::size_t len = a.size();
    const FqElem inv0 = k.inv(c0);
    std::vector<FqElem> alpha(len);
    for (std::size_t i = 0; i < len; ++i) alpha[i] = k.mul(a.coeffs()[i], inv0);
    const FqElem inv_n = k.inv(k.from_int(static_cast<std::int64_t>(n % k.characteristic())));

    auto mul_trunc = [&](const std::vector<FqElem>& x, const std::vector<FqElem>& y, std::size_t m) {
        std::vector<FqElem> out(m, k.zero());
        for (std::size_t i = 0; i < m; ++i) {
            if (x[i] == k.zero()) continue;
            for (std::size_t j = 0; i + j < m; ++j) out[i + j] = k.add(out[i + j], k.mul(x[i], y[j]));
        }
        return out;
    };
    std::vector<FqElem> y(len, k.zero());
    y[0] = k.one();
    for (std::size_t i = 1; i < len; ++i) {
        // [z^i] of Y^n with y_i still zero; y_i enters Y^n linearly as n y_i
        std::vector<FqElem> power(i + 1, k.zero()), base(y.begin(), y.begin() + static_cast<std::ptrdiff_t>(i + 1));
        power[0] = k.one();
        for (unsigned e = n; e; e >>= 1) {
            if (e & 1) power = mul_trunc(power, base, i + 1);
            if (e > 1) base = mul_trunc(base, base, i + 1);
        }
        y[i] = k.mul(k.sub(alpha[i], power[i]), inv_n);
    }
    for (auto& c : y) c = k.mul(c, root);
    return LaurentTail(a.field_ptr(), a.top() / static_cast<int>(n), std::move(y));
}

LaurentTail series_reversion(const LaurentTail& u) {
    require_linear_top(u);
    const Field& k = u.field();
    const std::size_t n = u.size();
    const FqElem inv0 = k.inv(u.lead());
    const LaurentTail t = LaurentTail::monomial(u.field_ptr(), k.one(), 1, n);
    LaurentTail v = LaurentTail::monomial(u.field_ptr(), inv0, 1, n);
    // each step fixes at least one more coefficient
    for (std::size_t iter = 0; iter <= n + 1; ++iter) {
        const LaurentTail residual = t - series_compose(u, v);
        if (residual.size() == 0) return v;
        v = truncate(v + scale(residual, inv0), n);
    }
    throw Error(ErrorCode::PrecisionExhausted, "reversion did not converge");
}

Poly LocalData::h() const { return Poly(field, h_coeffs); }

std::vector<FqElem> local_branches(const Poly& g) {
    const Field& k = g.field();
    const int d = g.degree();
    if (d < 2) throw Error(ErrorCode::HypothesisFailed, "local data needs degree at least 2");
    // z^{d-1} + d a_d
    const FqElem target = k.neg(k.mul(k.from_int(d), g.lead()));
    Poly eq = Poly::monomial(g.field_ptr(), k.one(), static_cast<unsigned>(d - 1)) - Poly::constant(g.field_ptr(), target);
    auto found = roots_in(eq, g.field_ptr());
    std::vector<FqElem> roots = found.roots;
    std::sort(roots.begin(), roots.end(), [&](FqElem x, FqElem y) { return k.digits(x) < k.digits(y); });
    return roots;
}

LocalData compute_local_data(const Poly& g, std::size_t precision, std::size_t branch) {
    const Field& k = g.field();
    const int d = g.degree();
    if (d < 2) throw Error(ErrorCode::HypothesisFailed, "local data needs degree at least 2");
    if (k.characteristic() <= static_cast<std::uint64_t>(d))
        throw Error(ErrorCode::HypothesisFailed, "local data needs p > d");
    const std::size_t n = precision ? precision : static_cast<std::size_t>(d) + 6;
    if (n < static_cast<std::size_t>(d) + 1)
        throw Error(ErrorCode::PrecisionExhausted, "precision must reach the constant term of h");
    const auto branches = local_branches(g);
    if (branches.empty()) throw Error(ErrorCode::HypothesisFailed, "-d a_d has no (d-1)-th root in k");
    if (branch >= branches.size()) throw Error(ErrorCode::InvalidArgument, "branch index out of range");
    const FqElem r0 = branches[branch];

    const LaurentTail minus_dg = LaurentTail::from_poly(-g.derivative(), n);
    const LaurentTail u = series_nth_root(minus_dg, static_cast<unsigned>(d - 1), r0);
    const LaurentTail v = series_reversion(u);
    const LaurentTail big_h =
        series_compose(g, v) + v * LaurentTail::monomial(g.field_ptr(), k.one(), d - 1, n);
    const Poly h = big_h.nonnegative_part();

    LocalData out;
    out.field = g.field_ptr();
    out.s0 = v.lead();
    out.chosen_root = r0;
    out.branch = branch;
    out.branch_count = branches.size();
    for (int i = 0; i <= d; ++i) out.h_coeffs.push_back(h.coeff(static_cast<std::size_t>(i)));
    return out;
}

}  // namespace fqs
