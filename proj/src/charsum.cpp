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

#include "fqsums/charsum.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numbers>
#include <random>
#include <thread>

#include "fqsums/error.hpp"
#include "fqsums/numtheory.hpp"

namespace fqs {

namespace {

CharValue unit_root(std::uint64_t a, std::uint64_t n) {
    // reduce the angle in long double to keep table entries accurate for large n
    const long double angle = 2.0L * std::numbers::pi_v<long double> * static_cast<long double>(a) / n;
    return {static_cast<double>(std::cos(angle)), static_cast<double>(std::sin(angle))};
}

void require_base(const FieldCtx& k, const ExtCtx& ext) {
    if (&ext.base() != &k) throw Error(ErrorCode::CtxMismatch, "character field is not the base of the extension");
}

// Coefficient codes of f as elements of ext; f lives over k or over ext.
std::vector<std::uint64_t> codes_in(const Poly& f, const ExtCtx& ext) {
    if (&f.field() != static_cast<const Field*>(&ext) && &f.field() != static_cast<const Field*>(&ext.base()))
        throw Error(ErrorCode::CtxMismatch, "polynomial is neither over k nor over k_r");
    return f.codes();
}

void require_cap(const ExtCtx& ext, const SumOptions& opt) {
    if (ext.size() > opt.cap)
        throw Error(ErrorCode::FieldTooLarge, "q^r = " + std::to_string(ext.size()) + " exceeds the enumeration cap " +
                                                  std::to_string(opt.cap));
}

std::uint64_t require_mu(const ExtCtx& ext, FqElem mu) {
    ext.base().check(mu);
    if (mu.code == 0) throw Error(ErrorCode::ZeroMu, "norm fibers are taken over mu != 0");
    return mu.code;
}

template <class Term>
std::vector<CharValue> bucket_sums(const ExtCtx& ext, unsigned workers, Term term) {
    const std::uint64_t n = ext.size(), q = ext.q();
    const std::uint64_t blocks = (n + detail::kBlock - 1) / detail::kBlock;
    if (blocks * q > (std::uint64_t{1} << 26))
        throw Error(ErrorCode::FieldTooLarge, "too many fibers for a single scan");
    std::vector<detail::Compensated> acc(blocks * q);
    detail::for_each_block(n, workers, [&](std::uint64_t b, std::uint64_t lo, std::uint64_t hi) {
        detail::Compensated* row = &acc[b * q];
        for (std::uint64_t x = lo; x < hi; ++x) {
            if (x == 0) continue;
            const std::uint64_t mu = ext.raw_norm(x);
            row[mu].add(term(x));
        }
    });
    std::vector<CharValue> out(q), column(blocks);
    for (std::uint64_t mu = 1; mu < q; ++mu) {
        for (std::uint64_t b = 0; b < blocks; ++b) column[b] = acc[b * q + mu].value();
        out[mu] = detail::pairwise(column.data(), column.size());
    }
    return out;
}

}  // namespace

// ------------------------------------------------------------ characters

AdditiveChar::AdditiveChar(std::shared_ptr<const FieldCtx> k, FqElem b) : k_(std::move(k)) {
    if (!k_) throw Error(ErrorCode::InvalidArgument, "null field");
    k_->check(b);
    b_ = b.code;
    const std::uint64_t p = k_->p();
    if (p <= (std::uint64_t{1} << 20)) {
        roots_.resize(p);
        for (std::uint64_t a = 0; a < p; ++a) roots_[a] = unit_root(a, p);
    }
}

AdditiveChar AdditiveChar::canonical(std::shared_ptr<const FieldCtx> k) {
    const FqElem one = k->one();
    return AdditiveChar(std::move(k), one);
}

CharValue AdditiveChar::prime_root(std::uint64_t a) const noexcept {
    return roots_.empty() ? unit_root(a, k_->p()) : roots_[a];
}

CharValue AdditiveChar::operator()(FqElem t) const {
    k_->check(t);
    return raw(t.code);
}

MultChar::MultChar(std::shared_ptr<const FieldCtx> k, std::uint64_t j) : k_(std::move(k)) {
    if (!k_) throw Error(ErrorCode::InvalidArgument, "null field");
    if (k_->q() > FieldCtx::kTableLimit)
        throw Error(ErrorCode::FieldTooLarge, "multiplicative characters need q <= 2^22");
    const std::uint64_t n = k_->q() - 1;
    j_ = j % n;
    const std::uint64_t g = nt::gcd(j_, n);
    m_ = n / g;
    step_ = (j_ / g) % m_;
    roots_.resize(m_);
    for (std::uint64_t t = 0; t < m_; ++t) roots_[t] = unit_root(t, m_);
    k_->dlog(k_->one());  // build the table once, before any concurrent use
}

MultChar MultChar::of_order(std::shared_ptr<const FieldCtx> k, std::uint64_t m) {
    const std::uint64_t n = k->q() - 1;
    if (m == 0 || n % m != 0)
        throw Error(ErrorCode::InvalidArgument, "character order " + std::to_string(m) + " does not divide q - 1");
    return MultChar(std::move(k), n / m);
}

MultChar MultChar::quadratic(std::shared_ptr<const FieldCtx> k) {
    if (k->p() == 2) throw Error(ErrorCode::BadCharacteristic, "no quadratic character in characteristic 2");
    return of_order(std::move(k), 2);
}

MultChar MultChar::power(std::int64_t n) const {
    const auto order = static_cast<std::int64_t>(k_->q() - 1);
    std::int64_t e = n % order;
    if (e < 0) e += order;
    return MultChar(k_, static_cast<std::uint64_t>(static_cast<unsigned __int128>(j_) * e % order));
}

CharValue MultChar::raw(std::uint64_t x) const {
    if (x == 0) return 0.0;
    const std::uint64_t l = k_->dlog({x, k_->id()});
    return roots_[l * step_ % m_];
}

CharValue MultChar::operator()(FqElem x) const {
    k_->check(x);
    return raw(x.code);
}

CharValue gauss_sum(const MultChar& chi, const AdditiveChar& psi) {
    if (&chi.field() != &psi.field()) throw Error(ErrorCode::CtxMismatch, "characters over different fields");
    detail::Compensated acc;
    for (FqElem t : enumerate(chi.field())) acc.add(chi.raw(t.code) * psi.raw(t.code));
    return -acc.value();
}

// ------------------------------------------------------------------ sums

CharValue sum_additive(const Poly& f, const AdditiveChar& psi, const ExtCtx& ext, const SumOptions& opt) {
    require_base(psi.field(), ext);
    require_cap(ext, opt);
    const auto c = codes_in(f, ext);
    return detail::tree_sum(ext.size(), opt.workers,
                            [&](std::uint64_t x) { return psi.raw(ext.raw_trace(raw_eval(ext, c, x))); });
}

CharValue sum_multiplicative(const Poly& f, const MultChar& chi, const ExtCtx& ext, const SumOptions& opt) {
    require_base(chi.field(), ext);
    require_cap(ext, opt);
    const auto c = codes_in(f, ext);
    return detail::tree_sum(ext.size(), opt.workers,
                            [&](std::uint64_t x) { return chi.raw(ext.raw_norm(raw_eval(ext, c, x))); });
}

CharValue fiber_sum_additive(const Poly& g, const AdditiveChar& psi, const ExtCtx& ext, FqElem mu,
                             const SumOptions& opt) {
    require_base(psi.field(), ext);
    const std::uint64_t m = require_mu(ext, mu);
    require_cap(ext, opt);
    const auto c = codes_in(g, ext);
    return detail::tree_sum(ext.size(), opt.workers, [&](std::uint64_t x) -> CharValue {
        if (ext.raw_norm(x) != m) return 0.0;
        return psi.raw(ext.raw_trace(raw_eval(ext, c, x)));
    });
}

CharValue fiber_sum_multiplicative(const Poly& g, const MultChar& chi, const ExtCtx& ext, FqElem mu,
                                   const SumOptions& opt) {
    require_base(chi.field(), ext);
    const std::uint64_t m = require_mu(ext, mu);
    require_cap(ext, opt);
    const auto c = codes_in(g, ext);
    return detail::tree_sum(ext.size(), opt.workers, [&](std::uint64_t x) -> CharValue {
        if (ext.raw_norm(x) != m) return 0.0;
        return chi.raw(ext.raw_norm(raw_eval(ext, c, x)));
    });
}

std::vector<CharValue> fiber_sums_additive(const Poly& g, const AdditiveChar& psi, const ExtCtx& ext,
                                           const SumOptions& opt) {
    require_base(psi.field(), ext);
    require_cap(ext, opt);
    const auto c = codes_in(g, ext);
    return bucket_sums(ext, opt.workers, [&](std::uint64_t x) { return psi.raw(ext.raw_trace(raw_eval(ext, c, x))); });
}

std::vector<CharValue> fiber_sums_multiplicative(const Poly& g, const MultChar& chi, const ExtCtx& ext,
                                                 const SumOptions& opt) {
    require_base(chi.field(), ext);
    require_cap(ext, opt);
    const auto c = codes_in(g, ext);
    return bucket_sums(ext, opt.workers, [&](std::uint64_t x) { return chi.raw(ext.raw_norm(raw_eval(ext, c, x))); });
}

Poly homothety_lift(const Poly& g, std::uint64_t e, std::uint64_t q) {
    if (e == 0 || (q - 1) % e != 0) throw Error(ErrorCode::InvalidArgument, "e must divide q - 1");
    const std::uint64_t step = (q - 1) / e;
    const Field& k = g.field();
    std::vector<FqElem> v(g.is_zero() ? 0 : g.degree() * step + 1, k.zero());
    for (std::size_t i = 0; i < g.coeffs().size(); ++i) v[i * step] = g.coeffs()[i];
    return Poly(g.field_ptr(), std::move(v));
}

namespace {

template <class Full, class Fibers, class Zero>
Reassembly reassemble(const Poly& g, std::uint64_t e, const ExtCtx& ext, Full full, Fibers fibers, Zero at_zero) {
    const std::uint64_t q = ext.q();
    const Poly f = homothety_lift(g, e, q);
    Reassembly out;
    out.direct = full(f);
    const std::vector<CharValue> fib = fibers(g);
    const FieldCtx& k = ext.base();
    std::vector<CharValue> selected;
    for (std::uint64_t mu = 1; mu < q; ++mu)
        if (k.raw_pow(mu, e) == 1) selected.push_back(fib[mu]);
    const CharValue fiber_total = detail::pairwise(selected.data(), selected.size());
    out.reassembled = at_zero(f) + static_cast<double>((q - 1) / e) * fiber_total;
    return out;
}

}  // namespace

Reassembly reassembly_additive(const Poly& g, std::uint64_t e, const AdditiveChar& psi, const ExtCtx& ext,
                               const SumOptions& opt) {
    return reassemble(
        g, e, ext, [&](const Poly& f) { return sum_additive(f, psi, ext, opt); },
        [&](const Poly& h) { return fiber_sums_additive(h, psi, ext, opt); },
        [&](const Poly& f) { return psi.raw(ext.raw_trace(f.coeff(0).code)); });
}

Reassembly reassembly_multiplicative(const Poly& g, std::uint64_t e, const MultChar& chi, const ExtCtx& ext,
                                     const SumOptions& opt) {
    return reassemble(
        g, e, ext, [&](const Poly& f) { return sum_multiplicative(f, chi, ext, opt); },
        [&](const Poly& h) { return fiber_sums_multiplicative(h, chi, ext, opt); },
        [&](const Poly& f) { return chi.raw(ext.raw_norm(f.coeff(0).code)); });
}

CharValue double_sum_check(const Poly& g, const AdditiveChar& psi, const ExtCtx& ext, const SumOptions& opt) {
    require_base(psi.field(), ext);
    const std::uint64_t q = ext.q(), n = ext.size();
    const auto total = nt::checked_pow(q, ext.r() + 1);
    if (!total || *total > (std::uint64_t{1} << 26))
        throw Error(ErrorCode::FieldTooLarge, "double sum limited to q^{r+1} <= 2^26");
    const auto c = codes_in(g, ext);
    return detail::tree_sum(*total, opt.workers, [&](std::uint64_t i) {
        const std::uint64_t u = i / n, t = i % n;
        const std::uint64_t y = ext.raw_add(raw_eval(ext, c, t), ext.raw_mul(u, t));
        return psi.raw(ext.raw_trace(y));
    });
}

bool weil_descent_check(const Poly& g, const ExtCtx& ext, const std::vector<FqElem>& basis, unsigned trials,
                        std::uint64_t seed) {
    const unsigned r = ext.r();
    const FieldCtx& k = ext.base();
    if (basis.size() != r) throw Error(ErrorCode::NotABasis, "basis must have r elements");
    for (auto a : basis) ext.check(a);
    // rank of the digit matrix over k
    std::vector<std::vector<FqElem>> rows;
    for (auto a : basis) {
        std::vector<FqElem> row;
        for (auto d : ext.digits(a)) row.push_back(k.element(d));
        rows.push_back(std::move(row));
    }
    for (unsigned col = 0; col < r; ++col) {
        unsigned piv = col;
        while (piv < r && rows[piv][col] == k.zero()) ++piv;
        if (piv == r) throw Error(ErrorCode::NotABasis, "elements are linearly dependent over k");
        std::swap(rows[piv], rows[col]);
        const FqElem inv = k.inv(rows[col][col]);
        for (unsigned i = col + 1; i < r; ++i) {
            const FqElem f = k.mul(rows[i][col], inv);
            for (unsigned j = col; j < r; ++j) rows[i][j] = k.sub(rows[i][j], k.mul(f, rows[col][j]));
        }
    }

    // sigma_j = x -> x^{q^j}
    std::vector<std::vector<std::uint64_t>> conj(r, std::vector<std::uint64_t>(r));
    std::vector<std::vector<std::uint64_t>> gsigma(r);
    const auto gc = codes_in(g, ext);
    for (unsigned i = 0; i < r; ++i) {
        std::uint64_t a = basis[i].code;
        for (unsigned j = 0; j < r; ++j) {
            conj[i][j] = a;
            a = ext.raw_frobenius(a);
        }
    }
    for (unsigned j = 0; j < r; ++j) {
        gsigma[j] = gc;
        for (unsigned t = 0; t < j; ++t)
            for (auto& c : gsigma[j]) c = ext.raw_frobenius(c);
    }

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::uint64_t> dist(0, k.q() - 1);
    for (unsigned trial = 0; trial < trials; ++trial) {
        std::vector<std::uint64_t> x(r);
        for (auto& xi : x) xi = dist(rng);
        std::uint64_t point = 0;
        for (unsigned i = 0; i < r; ++i) point = ext.raw_add(point, ext.raw_mul(basis[i].code, x[i]));
        std::uint64_t form = 1, twisted = 0;
        for (unsigned j = 0; j < r; ++j) {
            std::uint64_t lin = 0;
            for (unsigned i = 0; i < r; ++i) lin = ext.raw_add(lin, ext.raw_mul(conj[i][j], x[i]));
            form = ext.raw_mul(form, lin);
            twisted = ext.raw_add(twisted, raw_eval(ext, gsigma[j], lin));
        }
        if (form != ext.raw_pow(point, (ext.size() - 1) / (k.q() - 1))) return false;
        if (twisted != ext.raw_trace(raw_eval(ext, gc, point))) return false;
    }
    return true;
}

// ------------------------------------------------------------- reduction

namespace detail {

void for_each_block(std::uint64_t n, unsigned workers,
                    const std::function<void(std::uint64_t, std::uint64_t, std::uint64_t)>& fn) {
    const std::uint64_t blocks = (n + kBlock - 1) / kBlock;
    if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, std::max<std::uint64_t>(blocks, 1)));
    auto run_block = [&](std::uint64_t b) { fn(b, b * kBlock, std::min(n, (b + 1) * kBlock)); };
    if (workers <= 1) {
        for (std::uint64_t b = 0; b < blocks; ++b) run_block(b);
        return;
    }
    std::atomic<std::uint64_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        try {
            for (std::uint64_t b; (b = next.fetch_add(1)) < blocks;) run_block(b);
        } catch (...) {
            std::lock_guard lock(error_mutex);
            if (!error) error = std::current_exception();
            next.store(blocks);
        }
    };
    std::vector<std::thread> pool;
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

CharValue pairwise(const CharValue* v, std::size_t n) noexcept {
    if (n == 0) return 0.0;
    if (n == 1) return v[0];
    const std::size_t half = n / 2;
    return pairwise(v, half) + pairwise(v + half, n - half);
}

}  // namespace detail

}  // namespace fqs
