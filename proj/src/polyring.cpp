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

#include "fqsums/polyring.hpp"

#include "fqsums/error.hpp"

namespace fqs {

Poly::Poly(FieldPtr field) : field_(std::move(field)) {
    if (!field_) throw Error(ErrorCode::InvalidArgument, "polynomial needs a field");
}

Poly::Poly(FieldPtr field, std::vector<FqElem> coeffs) : field_(std::move(field)), c_(std::move(coeffs)) {
    if (!field_) throw Error(ErrorCode::InvalidArgument, "polynomial needs a field");
    for (const auto& c : c_) field_->check(c);
    trim();
}

Poly Poly::constant(FieldPtr field, FqElem c) { return Poly(std::move(field), {c}); }

Poly Poly::monomial(FieldPtr field, FqElem c, unsigned n) {
    std::vector<FqElem> v(n + 1, field->zero());
    v[n] = c;
    return Poly(std::move(field), std::move(v));
}

Poly Poly::x(FieldPtr field) { return monomial(field, field->one(), 1); }

Poly Poly::from_ints(FieldPtr field, std::initializer_list<std::int64_t> coeffs) {
    std::vector<FqElem> v;
    for (auto c : coeffs) v.push_back(field->from_int(c));
    return Poly(std::move(field), std::move(v));
}

Poly Poly::from_codes(FieldPtr field, const std::vector<std::uint64_t>& codes) {
    std::vector<FqElem> v;
    for (auto c : codes) v.push_back(field->element(c));
    return Poly(std::move(field), std::move(v));
}

void Poly::trim() noexcept {
    while (!c_.empty() && c_.back().code == 0) c_.pop_back();
}

void Poly::require_same(const Poly& o) const {
    if (field_ != o.field_) throw Error(ErrorCode::CtxMismatch, "polynomials over different fields");
}

FqElem Poly::coeff(std::size_t i) const noexcept { return i < c_.size() ? c_[i] : field_->zero(); }

std::vector<std::uint64_t> Poly::codes() const {
    std::vector<std::uint64_t> v(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) v[i] = c_[i].code;
    return v;
}

Poly Poly::operator+(const Poly& o) const {
    require_same(o);
    std::vector<FqElem> v(std::max(c_.size(), o.c_.size()), field_->zero());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = field_->add(coeff(i), o.coeff(i));
    return Poly(field_, std::move(v));
}

Poly Poly::operator-(const Poly& o) const {
    require_same(o);
    std::vector<FqElem> v(std::max(c_.size(), o.c_.size()), field_->zero());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = field_->sub(coeff(i), o.coeff(i));
    return Poly(field_, std::move(v));
}

Poly Poly::operator-() const { return Poly(field_) - *this; }

Poly Poly::operator*(const Poly& o) const {
    require_same(o);
    if (is_zero() || o.is_zero()) return Poly(field_);
    const Field& f = *field_;
    std::vector<std::uint64_t> out(c_.size() + o.c_.size() - 1, 0);
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (!c_[i].code) continue;
        for (std::size_t j = 0; j < o.c_.size(); ++j)
            out[i + j] = f.raw_add(out[i + j], f.raw_mul(c_[i].code, o.c_[j].code));
    }
    return from_codes(field_, out);
}

Poly Poly::scale(FqElem c) const {
    std::vector<FqElem> v(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) v[i] = field_->mul(c_[i], c);
    return Poly(field_, std::move(v));
}

Poly Poly::pow(unsigned n) const {
    Poly result = constant(field_, field_->one()), base = *this;
    while (n) {
        if (n & 1) result = result * base;
        n >>= 1;
        if (n) base = base * base;
    }
    return result;
}

Poly Poly::monic() const {
    if (is_zero()) return *this;
    return scale(field_->inv(lead()));
}

Poly Poly::derivative() const {
    std::vector<FqElem> v;
    for (std::size_t i = 1; i < c_.size(); ++i)
        v.push_back(field_->mul(field_->from_int(static_cast<std::int64_t>(i % field_->characteristic())), c_[i]));
    return Poly(field_, std::move(v));
}

Poly Poly::compose(const Poly& g) const {
    require_same(g);
    Poly result(field_);
    for (std::size_t i = c_.size(); i-- > 0;) result = result * g + constant(field_, c_[i]);
    return result;
}

Poly Poly::embed(const std::shared_ptr<const ExtCtx>& ext) const {
    if (!ext || static_cast<const Field*>(&ext->base()) != field_.get())
        throw Error(ErrorCode::CtxMismatch, "extension is not built over the coefficient field");
    std::vector<FqElem> v(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) v[i] = ext->embed(c_[i]);
    return Poly(ext, std::move(v));
}

std::uint64_t raw_eval(const Field& field, const std::vector<std::uint64_t>& coeffs, std::uint64_t x) noexcept {
    std::uint64_t acc = 0;
    for (std::size_t i = coeffs.size(); i-- > 0;) acc = field.raw_add(field.raw_mul(acc, x), coeffs[i]);
    return acc;
}

FqElem eval(const Poly& f, FqElem x) {
    f.field().check(x);
    return {raw_eval(f.field(), f.codes(), x.code), f.field().id()};
}

FqElem eval(const Poly& f, FqElem x, const ExtCtx& ext) {
    if (static_cast<const Field*>(&ext.base()) != &f.field())
        throw Error(ErrorCode::CtxMismatch, "extension is not built over the coefficient field");
    ext.check(x);
    return {raw_eval(ext, f.codes(), x.code), ext.id()};
}

std::pair<Poly, Poly> divrem(const Poly& f, const Poly& g) {
    if (g.is_zero()) throw Error(ErrorCode::DivByZeroPoly, "division by the zero polynomial");
    if (f.field_ptr() != g.field_ptr()) throw Error(ErrorCode::CtxMismatch, "polynomials over different fields");
    const Field& k = f.field();
    auto r = f.codes();
    const auto b = g.codes();
    const int db = g.degree();
    const std::uint64_t li = k.raw_inv(b.back());
    std::vector<std::uint64_t> q(f.degree() >= db ? f.degree() - db + 1 : 0, 0);
    for (int i = f.degree(); i >= db; --i) {
        const std::uint64_t c = k.raw_mul(r[i], li);
        q[i - db] = c;
        if (!c) continue;
        for (int j = 0; j <= db; ++j) r[i - db + j] = k.raw_sub(r[i - db + j], k.raw_mul(c, b[j]));
    }
    r.resize(std::min<std::size_t>(r.size(), static_cast<std::size_t>(db)));
    return {Poly::from_codes(f.field_ptr(), q), Poly::from_codes(f.field_ptr(), r)};
}

Poly gcd(const Poly& f, const Poly& g) {
    Poly a = f, b = g;
    while (!b.is_zero()) {
        Poly r = divrem(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

Poly exact_div(const Poly& f, const Poly& g) {
    auto [q, r] = divrem(f, g);
    if (!r.is_zero()) throw Error(ErrorCode::InvalidArgument, "division is not exact");
    return q;
}

FqElem resultant(const Poly& f, const Poly& g) {
    if (f.is_zero() || g.is_zero()) throw Error(ErrorCode::ZeroPoly, "resultant with the zero polynomial");
    if (f.field_ptr() != g.field_ptr()) throw Error(ErrorCode::CtxMismatch, "polynomials over different fields");
    const Field& k = f.field();
    Poly a = f, b = g;
    FqElem res = k.one();
    for (;;) {
        const int m = a.degree(), n = b.degree();
        if (n == 0) return k.mul(res, k.pow(b.lead(), static_cast<std::uint64_t>(m)));
        if (m == 0) return k.mul(res, k.pow(a.lead(), static_cast<std::uint64_t>(n)));
        Poly r = divrem(a, b).second;
        if (r.is_zero()) return k.zero();
        const int d = r.degree();
        // Res(a, b) = (-1)^{mn} Res(b, a) and Res(b, a) = lc(b)^{m-d} Res(b, a mod b)
        FqElem factor = k.pow(b.lead(), static_cast<std::uint64_t>(m - d));
        if ((m & 1) && (n & 1)) factor = k.neg(factor);
        res = k.mul(res, factor);
        a = std::move(b);
        b = std::move(r);
    }
}

FqElem discriminant(const Poly& g) {
    const int d = g.degree();
    if (d < 1) throw Error(ErrorCode::InvalidArgument, "discriminant needs degree at least 1");
    const Field& k = g.field();
    if (static_cast<std::uint64_t>(d) % k.characteristic() == 0)
        throw Error(ErrorCode::DegenerateDerivative, "characteristic divides the degree");
    if (d == 1) return k.one();
    FqElem r = k.div(resultant(g, g.derivative()), g.lead());
    const long long pairs = static_cast<long long>(d) * (d - 1) / 2;
    return pairs % 2 ? k.neg(r) : r;
}

Poly shift(const Poly& g, FqElem c) {
    g.field().check(c);
    const FieldPtr& k = g.field_ptr();
    return g.compose(Poly(k, {c, k->one()}));
}

bool squarefree(const Poly& g) {
    if (g.is_zero()) throw Error(ErrorCode::ZeroPoly, "square-free test of the zero polynomial");
    if (g.degree() == 0) return true;
    Poly dg = g.derivative();
    if (dg.is_zero()) return false;
    return gcd(g, dg).degree() == 0;
}

namespace {

// h(x) = sum c_{pj} x^{pj} with all exponents divisible by p: returns the
// polynomial whose p-th power is h.
Poly pth_root_poly(const Poly& h) {
    const Field& k = h.field();
    const std::uint64_t p = k.characteristic();
    const std::uint64_t e = k.size() / p;
    std::vector<FqElem> v;
    for (std::size_t i = 0; i < h.coeffs().size(); i += p) v.push_back(k.pow(h.coeffs()[i], e));
    return Poly(h.field_ptr(), std::move(v));
}

void sff(const Poly& f, unsigned scale, std::vector<SquarefreeFactor>& out) {
    if (f.degree() <= 0) return;
    const Poly one = Poly::constant(f.field_ptr(), f.field().one());
    Poly c = gcd(f, f.derivative());
    Poly w = exact_div(f, c);
    unsigned i = 1;
    while (w.degree() > 0) {
        Poly y = gcd(w, c);
        Poly fac = exact_div(w, y);
        if (fac.degree() > 0) out.push_back({fac.monic(), i * scale});
        w = y;
        c = exact_div(c, y);
        ++i;
    }
    if (c.degree() > 0) sff(pth_root_poly(c.monic()), scale * static_cast<unsigned>(f.field().characteristic()), out);
}

}  // namespace

std::vector<SquarefreeFactor> squarefree_decomposition(const Poly& g) {
    if (g.is_zero()) throw Error(ErrorCode::ZeroPoly, "square-free decomposition of the zero polynomial");
    std::vector<SquarefreeFactor> out;
    sff(g.monic(), 1, out);
    return out;
}

RootSet roots_in(const Poly& g, const FieldPtr& field) {
    if (g.is_zero()) throw Error(ErrorCode::ZeroPoly, "roots of the zero polynomial");
    Poly h = g;
    if (field != g.field_ptr()) {
        auto ext = std::dynamic_pointer_cast<const ExtCtx>(field);
        if (!ext) throw Error(ErrorCode::CtxMismatch, "root field is not an extension of the coefficient field");
        h = g.embed(ext);
    }
    if (field->size() > kRootSearchLimit) throw Error(ErrorCode::FieldTooLarge, "root search limited to 10^6 elements");
    RootSet out;
    const auto codes = h.codes();
    unsigned total = 0;
    for (FqElem x : enumerate(*field)) {
        if (raw_eval(*field, codes, x.code) != 0) continue;
        const Poly lin(field, {field->neg(x), field->one()});
        unsigned mult = 0;
        Poly rest = h;
        for (;;) {
            auto [q, r] = divrem(rest, lin);
            if (!r.is_zero()) break;
            rest = std::move(q);
            ++mult;
        }
        out.roots.push_back(x);
        out.multiplicity.push_back(mult);
        total += mult;
    }
    out.splits = total == static_cast<unsigned>(g.degree());
    return out;
}

Parity parity_check(const Poly& g) {
    bool even_zero = true, odd_zero = true;
    for (std::size_t i = 0; i < g.coeffs().size(); ++i) {
        if (g.coeffs()[i].code == 0) continue;
        (i % 2 ? odd_zero : even_zero) = false;
    }
    if (even_zero) return Parity::Odd;
    if (odd_zero) return Parity::Even;
    return Parity::Neither;
}

std::string_view to_string(Parity p) noexcept {
    switch (p) {
        case Parity::Odd: return "Odd";
        case Parity::Even: return "Even";
        case Parity::Neither: return "Neither";
    }
    return "?";
}

std::string format_poly(const Poly& f) {
    if (f.is_zero()) return "0";
    std::string out;
    for (std::size_t i = 0; i < f.coeffs().size(); ++i) {
        if (i) out += ',';
        out += f.field().format(f.coeffs()[i]);
    }
    return out;
}

Poly parse_poly(FieldPtr field, std::string_view text) {
    std::vector<FqElem> v;
    std::size_t start = 0;
    for (;;) {
        const std::size_t comma = text.find(',', start);
        std::string_view item = text.substr(start, comma == std::string_view::npos ? text.npos : comma - start);
        if (item.find_first_not_of(" \t\r\n") == std::string_view::npos)
            throw Error(ErrorCode::ParseError, "empty coefficient in '" + std::string(text) + "'");
        v.push_back(field->parse(item));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return Poly(std::move(field), std::move(v));
}

}  // namespace fqs
