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

#include "fqsums/ffield.hpp"

#include <atomic>
#include <cctype>
#include <charconv>

#include "dense.hpp"
#include "fqsums/error.hpp"
#include "fqsums/numtheory.hpp"

namespace fqs {

namespace {

std::atomic<std::uint32_t> next_field_id{1};

void skip_ws(std::string_view& t) {
    while (!t.empty() && std::isspace(static_cast<unsigned char>(t.front()))) t.remove_prefix(1);
}

std::int64_t parse_int(std::string_view& t) {
    skip_ws(t);
    bool negative = false;
    if (!t.empty() && (t.front() == '-' || t.front() == '+')) {
        negative = t.front() == '-';
        t.remove_prefix(1);
    }
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc{} || ptr == t.data()) throw Error(ErrorCode::ParseError, "expected an integer");
    if (v > static_cast<std::uint64_t>(INT64_MAX)) throw Error(ErrorCode::ParseError, "integer out of range");
    t.remove_prefix(static_cast<std::size_t>(ptr - t.data()));
    return negative ? -static_cast<std::int64_t>(v) : static_cast<std::int64_t>(v);
}

std::vector<std::uint64_t> decode(std::uint64_t code, std::uint64_t radix, unsigned n) {
    std::vector<std::uint64_t> d(n, 0);
    for (unsigned i = 0; i < n && code; ++i) {
        d[i] = code % radix;
        code /= radix;
    }
    return d;
}

std::uint64_t encode(const std::uint64_t* d, std::uint64_t radix, unsigned n) {
    std::uint64_t code = 0;
    for (unsigned i = n; i-- > 0;) code = code * radix + d[i];
    return code;
}

// order of x is n iff x^n = 1 and x^{n/l} != 1 for each prime l | n
bool is_generator(const Field& f, std::uint64_t x, const std::vector<std::uint64_t>& primes) {
    const std::uint64_t n = f.size() - 1;
    for (std::uint64_t l : primes)
        if (f.raw_pow(x, n / l) == 1) return false;
    return true;
}

std::uint64_t find_generator(const Field& f, std::uint64_t seed) {
    if (f.size() == 2) return 1;
    const auto primes = nt::prime_divisors(f.size() - 1);
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    std::uniform_int_distribution<std::uint64_t> dist(1, f.size() - 1);
    for (;;) {
        const std::uint64_t x = dist(rng);
        if (is_generator(f, x, primes)) return x;
    }
}

}  // namespace

// ---------------------------------------------------------------- Field

Field::Field(std::uint64_t p, std::uint64_t radix, unsigned degree, std::uint64_t size)
    : id_(next_field_id.fetch_add(1)), p_(p), radix_(radix), degree_(degree), size_(size) {}

void Field::check(FqElem x) const {
    if (x.field != id_) throw Error(ErrorCode::CtxMismatch, "element belongs to another field");
    if (x.code >= size_) throw Error(ErrorCode::InvalidArgument, "element code out of range");
}

FqElem Field::element(std::uint64_t code) const {
    if (code >= size_) throw Error(ErrorCode::InvalidArgument, "element code out of range");
    return {code, id_};
}

std::uint64_t Field::raw_from_int(std::int64_t value) const noexcept {
    const auto p = static_cast<std::int64_t>(p_);
    std::int64_t r = value % p;
    if (r < 0) r += p;
    return static_cast<std::uint64_t>(r);
}

FqElem Field::from_int(std::int64_t value) const { return {raw_from_int(value), id_}; }

FqElem Field::from_digits(std::span<const std::uint64_t> digits) const {
    if (digits.size() > degree_) throw Error(ErrorCode::InvalidArgument, "too many digits");
    for (auto d : digits)
        if (d >= radix_) throw Error(ErrorCode::InvalidArgument, "digit out of range");
    return {encode(digits.data(), radix_, static_cast<unsigned>(digits.size())), id_};
}

std::vector<std::uint64_t> Field::digits(FqElem x) const {
    check(x);
    return decode(x.code, radix_, degree_);
}

FqElem Field::add(FqElem a, FqElem b) const {
    check(a);
    check(b);
    return {raw_add(a.code, b.code), id_};
}

FqElem Field::sub(FqElem a, FqElem b) const {
    check(a);
    check(b);
    return {raw_sub(a.code, b.code), id_};
}

FqElem Field::neg(FqElem a) const {
    check(a);
    return {raw_neg(a.code), id_};
}

FqElem Field::mul(FqElem a, FqElem b) const {
    check(a);
    check(b);
    return {raw_mul(a.code, b.code), id_};
}

FqElem Field::inv(FqElem a) const {
    check(a);
    return {raw_inv(a.code), id_};
}

FqElem Field::div(FqElem a, FqElem b) const {
    check(a);
    check(b);
    return {raw_mul(a.code, raw_inv(b.code)), id_};
}

FqElem Field::pow(FqElem a, std::uint64_t e) const {
    check(a);
    return {raw_pow(a.code, e), id_};
}

FqElem Field::pow_signed(FqElem a, std::int64_t e) const {
    check(a);
    if (e >= 0) return {raw_pow(a.code, static_cast<std::uint64_t>(e)), id_};
    const std::uint64_t ai = raw_inv(a.code);
    // -e may not fit for INT64_MIN; reduce through the group order first
    const std::uint64_t order = size_ - 1;
    const std::uint64_t ue = static_cast<std::uint64_t>(-(e + 1)) % order + 1;
    return {raw_pow(ai, ue), id_};
}

std::uint64_t Field::raw_inv(std::uint64_t a) const {
    if (a == 0) throw Error(ErrorCode::ZeroElement, "inverse of zero");
    return raw_pow(a, size_ - 2);
}

std::uint64_t Field::raw_pow(std::uint64_t a, std::uint64_t e) const noexcept {
    std::uint64_t result = 1;
    while (e) {
        if (e & 1) result = raw_mul(result, a);
        e >>= 1;
        if (e) a = raw_mul(a, a);
    }
    return result;
}

std::string Field::format(FqElem x) const {
    check(x);
    return format_code(x.code);
}

FqElem Field::parse(std::string_view text) const {
    std::string_view t = text;
    const std::uint64_t code = parse_code(t);
    skip_ws(t);
    if (!t.empty()) throw Error(ErrorCode::ParseError, "trailing input in element '" + std::string(text) + "'");
    return {code, id_};
}

// ------------------------------------------------------------- FieldCtx

FieldCtx::FieldCtx(std::uint64_t p, unsigned s, std::vector<std::uint64_t> modulus)
    : Field(p, p, s, *nt::checked_pow(p, s)), modulus_(std::move(modulus)) {
    fast_mul_ = s == 1 && p < (std::uint64_t{1} << 32);
}

void FieldCtx::finish(std::uint64_t seed) {
    generator_ = find_generator(*this, seed);
    if (degree_ > 1 && size_ <= kTableLimit) {
        build_tables();
        use_tables_ = true;
    }
    trace_form_.assign(degree_, 0);
    for (unsigned j = 0; j < degree_; ++j) {
        // Tr(X^j) = sum of (X^j)^{p^i}; it lies in F_p, so only digit 0 survives
        std::uint64_t x = *nt::checked_pow(p_, j);
        std::uint64_t acc = 0;
        for (unsigned i = 0; i < degree_; ++i) {
            acc = raw_add(acc, x);
            x = raw_pow(x, p_);
        }
        trace_form_[j] = acc;
    }
}

void FieldCtx::build_tables() const {
    std::call_once(tables_once_, [this] {
        const std::uint64_t n = size_ - 1;
        std::vector<std::uint32_t> lg(size_, 0), ex(2 * n, 0);
        std::uint64_t x = 1;
        for (std::uint64_t i = 0; i < n; ++i) {
            ex[i] = ex[i + n] = static_cast<std::uint32_t>(x);
            lg[x] = static_cast<std::uint32_t>(i);
            x = degree_ == 1 ? nt::mulmod(x, generator_, p_) : poly_mul(x, generator_);
        }
        log_ = std::move(lg);
        exp_ = std::move(ex);
    });
}

std::uint64_t FieldCtx::poly_mul(std::uint64_t a, std::uint64_t b) const noexcept {
    const unsigned s = degree_;
    std::uint64_t da[64], db[64], prod[128] = {};
    for (unsigned i = 0; i < s; ++i) {
        da[i] = a % p_;
        a /= p_;
        db[i] = b % p_;
        b /= p_;
    }
    for (unsigned i = 0; i < s; ++i) {
        if (!da[i]) continue;
        for (unsigned j = 0; j < s; ++j) prod[i + j] = nt::addmod(prod[i + j], nt::mulmod(da[i], db[j], p_), p_);
    }
    for (unsigned i = 2 * s - 1; i-- > s;) {
        const std::uint64_t c = prod[i];
        if (!c) continue;
        for (unsigned j = 0; j < s; ++j)
            prod[i - s + j] = nt::submod(prod[i - s + j], nt::mulmod(c, modulus_[j], p_), p_);
    }
    return encode(prod, p_, s);
}

std::uint64_t FieldCtx::raw_add(std::uint64_t a, std::uint64_t b) const noexcept {
    if (degree_ == 1) return nt::addmod(a, b, p_);
    if (p_ == 2) return a ^ b;
    std::uint64_t out = 0, place = 1;
    while (a || b) {
        out += nt::addmod(a % p_, b % p_, p_) * place;
        a /= p_;
        b /= p_;
        place *= p_;
    }
    return out;
}

std::uint64_t FieldCtx::raw_sub(std::uint64_t a, std::uint64_t b) const noexcept {
    if (degree_ == 1) return nt::submod(a, b, p_);
    if (p_ == 2) return a ^ b;
    std::uint64_t out = 0, place = 1;
    while (a || b) {
        out += nt::submod(a % p_, b % p_, p_) * place;
        a /= p_;
        b /= p_;
        place *= p_;
    }
    return out;
}

std::uint64_t FieldCtx::raw_neg(std::uint64_t a) const noexcept { return raw_sub(0, a); }

std::uint64_t FieldCtx::raw_mul(std::uint64_t a, std::uint64_t b) const noexcept {
    if (degree_ == 1) return fast_mul_ ? a * b % p_ : nt::mulmod(a, b, p_);
    if (use_tables_) {
        if (a == 0 || b == 0) return 0;
        return exp_[log_[a] + log_[b]];
    }
    return poly_mul(a, b);
}

std::uint64_t FieldCtx::raw_inv(std::uint64_t a) const {
    if (a == 0) throw Error(ErrorCode::ZeroElement, "inverse of zero");
    if (degree_ == 1) return nt::invmod(a, p_);
    if (use_tables_) return exp_[(size_ - 1 - log_[a]) % (size_ - 1)];
    return raw_pow(a, size_ - 2);
}

std::uint64_t FieldCtx::dlog(FqElem x) const {
    check(x);
    if (x.code == 0) throw Error(ErrorCode::ZeroElement, "discrete log of zero");
    if (size_ > kTableLimit) throw Error(ErrorCode::FieldTooLarge, "discrete log tables need q <= 2^22");
    build_tables();
    return log_[x.code];
}

std::uint64_t FieldCtx::raw_trace_to_prime(std::uint64_t x) const noexcept {
    if (degree_ == 1) return x;
    std::uint64_t acc = 0;
    for (unsigned j = 0; j < degree_ && x; ++j) {
        acc = nt::addmod(acc, nt::mulmod(x % p_, trace_form_[j], p_), p_);
        x /= p_;
    }
    return acc;
}

std::uint64_t FieldCtx::trace_to_prime(FqElem x) const {
    check(x);
    return raw_trace_to_prime(x.code);
}

FqElem FieldCtx::pth_root(FqElem x) const {
    check(x);
    // Frobenius has order s, so its inverse is x -> x^{p^{s-1}}
    std::uint64_t y = x.code;
    for (unsigned i = 1; i < degree_; ++i) y = raw_pow(y, p_);
    return {y, id_};
}

std::string FieldCtx::format_code(std::uint64_t code) const {
    if (degree_ == 1) return std::to_string(code);
    const auto d = decode(code, p_, degree_);
    std::string out = "[";
    for (unsigned i = 0; i < degree_; ++i) {
        if (i) out += ' ';
        out += std::to_string(d[i]);
    }
    return out + "]";
}

std::uint64_t FieldCtx::parse_code(std::string_view& t) const {
    skip_ws(t);
    if (t.empty() || t.front() != '[') return raw_from_int(parse_int(t));
    t.remove_prefix(1);
    std::vector<std::uint64_t> d;
    for (;;) {
        skip_ws(t);
        if (t.empty()) throw Error(ErrorCode::ParseError, "unterminated '['");
        if (t.front() == ']') {
            t.remove_prefix(1);
            break;
        }
        if (d.size() == degree_) throw Error(ErrorCode::ParseError, "too many digits in element");
        d.push_back(raw_from_int(parse_int(t)));
    }
    return encode(d.data(), p_, static_cast<unsigned>(d.size()));
}

std::shared_ptr<const FieldCtx> make_field(std::uint64_t p, unsigned s, std::uint64_t seed) {
    if (!nt::is_prime(p)) throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
    if (s == 0) throw Error(ErrorCode::InvalidArgument, "field degree must be positive");
    if (s > 63 || !nt::checked_pow(p, s))
        throw Error(ErrorCode::Overflow, "p^s must stay below 2^63");
    if (s == 1) {
        auto ctx = std::make_shared<FieldCtx>(p, 1, std::vector<std::uint64_t>{});
        ctx->finish(seed);
        return ctx;
    }
    const auto prime = make_field(p, 1, seed);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::uint64_t> dist(0, p - 1);
    dense::Vec m(s + 1, 0);
    m[s] = 1;
    do {
        for (unsigned i = 0; i < s; ++i) m[i] = dist(rng);
    } while (m[0] == 0 || !dense::is_irreducible(*prime, m));
    auto ctx = std::make_shared<FieldCtx>(p, s, m);
    ctx->finish(seed);
    return ctx;
}

// --------------------------------------------------------------- ExtCtx

ExtCtx::ExtCtx(std::shared_ptr<const FieldCtx> base, unsigned r, std::vector<std::uint64_t> modulus)
    : Field(base->p(), base->q(), r, *nt::checked_pow(base->q(), r)),
      base_(std::move(base)),
      modulus_(std::move(modulus)) {}

void ExtCtx::finish(std::uint64_t seed) {
    const std::uint64_t q = base_->q();
    const unsigned r = degree_;
    norm_exponent_ = (size_ - 1) / (q - 1);
    generator_ = r == 1 ? base_->generator().code : find_generator(*this, seed);
    frobenius_rows_.assign(std::size_t{r} * r, 0);
    trace_form_.assign(r, 0);
    for (unsigned j = 0; j < r; ++j) {
        const std::uint64_t yj = *nt::checked_pow(q, j);
        const auto row = decode(raw_pow(yj, q), q, r);
        std::copy(row.begin(), row.end(), frobenius_rows_.begin() + std::size_t{j} * r);
    }
    for (unsigned j = 0; j < r; ++j) {
        std::uint64_t x = *nt::checked_pow(q, j);
        std::uint64_t acc = 0;
        for (unsigned i = 0; i < r; ++i) {
            acc = raw_add(acc, x);
            x = raw_frobenius(x);
        }
        trace_form_[j] = acc;  // lies in k
    }
}

FqElem ExtCtx::embed(FqElem a) const {
    base_->check(a);
    return {a.code, id_};
}

FqElem ExtCtx::project(FqElem x) const {
    check(x);
    if (x.code >= base_->size()) throw Error(ErrorCode::InvalidArgument, "element is not in the base field");
    return {x.code, base_->id()};
}

std::uint64_t ExtCtx::raw_frobenius(std::uint64_t x) const noexcept {
    const unsigned r = degree_;
    if (r == 1) return x;
    const std::uint64_t q = radix_;
    const FieldCtx& k = *base_;
    std::uint64_t out[64] = {};
    for (unsigned j = 0; j < r && x; ++j) {
        const std::uint64_t c = x % q;
        x /= q;
        if (!c) continue;
        const std::uint64_t* row = &frobenius_rows_[std::size_t{j} * r];
        for (unsigned i = 0; i < r; ++i)
            if (row[i]) out[i] = k.raw_add(out[i], k.raw_mul(c, row[i]));
    }
    return encode(out, q, r);
}

FqElem ExtCtx::frobenius(FqElem x) const {
    check(x);
    return {raw_frobenius(x.code), id_};
}

std::uint64_t ExtCtx::raw_trace(std::uint64_t x) const noexcept {
    const std::uint64_t q = radix_;
    const FieldCtx& k = *base_;
    std::uint64_t acc = 0;
    for (unsigned j = 0; j < degree_ && x; ++j) {
        const std::uint64_t c = x % q;
        x /= q;
        if (c) acc = k.raw_add(acc, k.raw_mul(c, trace_form_[j]));
    }
    return acc;
}

std::uint64_t ExtCtx::raw_norm(std::uint64_t x) const noexcept {
    if (degree_ > 8) return raw_pow(x, norm_exponent_);
    std::uint64_t acc = x, y = x;
    for (unsigned i = 1; i < degree_; ++i) {
        y = raw_frobenius(y);
        acc = raw_mul(acc, y);
    }
    return acc;
}

std::uint64_t ExtCtx::raw_add(std::uint64_t a, std::uint64_t b) const noexcept {
    const FieldCtx& k = *base_;
    if (degree_ == 1) return k.raw_add(a, b);
    const std::uint64_t q = radix_;
    if (k.p() == 2 && (q & (q - 1)) == 0) return a ^ b;
    std::uint64_t out = 0, place = 1;
    while (a || b) {
        out += k.raw_add(a % q, b % q) * place;
        a /= q;
        b /= q;
        place *= q;
    }
    return out;
}

std::uint64_t ExtCtx::raw_sub(std::uint64_t a, std::uint64_t b) const noexcept {
    const FieldCtx& k = *base_;
    if (degree_ == 1) return k.raw_sub(a, b);
    const std::uint64_t q = radix_;
    if (k.p() == 2) return a ^ b;
    std::uint64_t out = 0, place = 1;
    while (a || b) {
        out += k.raw_sub(a % q, b % q) * place;
        a /= q;
        b /= q;
        place *= q;
    }
    return out;
}

std::uint64_t ExtCtx::raw_neg(std::uint64_t a) const noexcept { return raw_sub(0, a); }

std::uint64_t ExtCtx::raw_mul(std::uint64_t a, std::uint64_t b) const noexcept {
    const FieldCtx& k = *base_;
    const unsigned r = degree_;
    if (r == 1) return k.raw_mul(a, b);
    const std::uint64_t q = radix_;
    std::uint64_t da[64], db[64], prod[128] = {};
    for (unsigned i = 0; i < r; ++i) {
        da[i] = a % q;
        a /= q;
        db[i] = b % q;
        b /= q;
    }
    for (unsigned i = 0; i < r; ++i) {
        if (!da[i]) continue;
        for (unsigned j = 0; j < r; ++j)
            if (db[j]) prod[i + j] = k.raw_add(prod[i + j], k.raw_mul(da[i], db[j]));
    }
    for (unsigned i = 2 * r - 1; i-- > r;) {
        const std::uint64_t c = prod[i];
        if (!c) continue;
        for (unsigned j = 0; j < r; ++j)
            if (modulus_[j]) prod[i - r + j] = k.raw_sub(prod[i - r + j], k.raw_mul(c, modulus_[j]));
    }
    return encode(prod, q, r);
}

std::string ExtCtx::format_code(std::uint64_t code) const {
    const auto d = decode(code, radix_, degree_);
    std::string out = "[";
    for (unsigned i = 0; i < degree_; ++i) {
        if (i) out += ' ';
        out += base_->format_code(d[i]);
    }
    return out + "]";
}

std::uint64_t ExtCtx::parse_code(std::string_view& t) const {
    skip_ws(t);
    if (t.empty() || t.front() != '[') return base_->parse_code(t);
    t.remove_prefix(1);
    std::vector<std::uint64_t> d;
    for (;;) {
        skip_ws(t);
        if (t.empty()) throw Error(ErrorCode::ParseError, "unterminated '['");
        if (t.front() == ']') {
            t.remove_prefix(1);
            break;
        }
        if (d.size() == degree_) throw Error(ErrorCode::ParseError, "too many digits in element");
        d.push_back(base_->parse_code(t));
    }
    return encode(d.data(), radix_, static_cast<unsigned>(d.size()));
}

std::shared_ptr<const ExtCtx> make_extension(std::shared_ptr<const FieldCtx> base, unsigned r, std::uint64_t seed) {
    if (!base) throw Error(ErrorCode::InvalidArgument, "null base field");
    if (r == 0) throw Error(ErrorCode::InvalidArgument, "extension degree must be positive");
    if (r > 63 || !nt::checked_pow(base->q(), r))
        throw Error(ErrorCode::Overflow, "q^r must stay below 2^63");
    dense::Vec m(r + 1, 0);
    m[r] = 1;
    if (r > 1) {
        std::mt19937_64 rng(seed ^ (std::uint64_t{r} << 32));
        std::uniform_int_distribution<std::uint64_t> dist(0, base->q() - 1);
        do {
            for (unsigned i = 0; i < r; ++i) m[i] = dist(rng);
        } while (m[0] == 0 || !dense::is_irreducible(*base, m));
    }
    auto ext = std::make_shared<ExtCtx>(std::move(base), r, m);
    ext->finish(seed);
    return ext;
}

// ----------------------------------------------------------- free helpers

FqElem trace(FqElem x, const ExtCtx& ext) {
    ext.check(x);
    return {ext.raw_trace(x.code), ext.base().id()};
}

FqElem norm(FqElem x, const ExtCtx& ext) {
    ext.check(x);
    return {ext.raw_norm(x.code), ext.base().id()};
}

std::uint64_t dlog(FqElem x, const FieldCtx& ctx) { return ctx.dlog(x); }

ElementRange enumerate(const Field& field, Partition part) {
    if (part.total == 0 || part.index >= part.total)
        throw Error(ErrorCode::InvalidArgument, "partition index out of range");
    const unsigned __int128 n = field.size();
    const auto lo = static_cast<std::uint64_t>(n * part.index / part.total);
    const auto hi = static_cast<std::uint64_t>(n * (part.index + 1) / part.total);
    return {lo, hi, field.id()};
}

}  // namespace fqs
