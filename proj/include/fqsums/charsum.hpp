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

#ifndef FQSUMS_CHARSUM_HPP
#define FQSUMS_CHARSUM_HPP

#include <complex>
#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "fqsums/ffield.hpp"
#include "fqsums/polyring.hpp"

namespace fqs {

using CharValue = std::complex<double>;

/// psi_b(t) = exp(2 pi i Tr_{k/F_p}(b t) / p) on k.
class AdditiveChar {
   public:
    AdditiveChar(std::shared_ptr<const FieldCtx> k, FqElem b);
    static AdditiveChar canonical(std::shared_ptr<const FieldCtx> k);

    const FieldCtx& field() const noexcept { return *k_; }
    const std::shared_ptr<const FieldCtx>& field_ptr() const noexcept { return k_; }
    FqElem b() const noexcept { return {b_, k_->id()}; }
    bool is_trivial() const noexcept { return b_ == 0; }

    CharValue operator()(FqElem t) const;
    CharValue raw(std::uint64_t t) const noexcept { return prime_root(k_->raw_trace_to_prime(k_->raw_mul(b_, t))); }
    /// exp(2 pi i a / p).
    CharValue prime_root(std::uint64_t a) const noexcept;

   private:
    std::shared_ptr<const FieldCtx> k_;
    std::uint64_t b_;
    std::vector<CharValue> roots_;
};

/// chi_j(generator^i) = exp(2 pi i i j / (q - 1)), extended by chi(0) = 0.
/// Values come from the discrete-log table, so q <= FieldCtx::kTableLimit.
class MultChar {
   public:
    MultChar(std::shared_ptr<const FieldCtx> k, std::uint64_t j);
    /// chi_{(q-1)/m}, a character of exact order m.
    static MultChar of_order(std::shared_ptr<const FieldCtx> k, std::uint64_t m);
    static MultChar quadratic(std::shared_ptr<const FieldCtx> k);

    const FieldCtx& field() const noexcept { return *k_; }
    const std::shared_ptr<const FieldCtx>& field_ptr() const noexcept { return k_; }
    std::uint64_t index() const noexcept { return j_; }
    std::uint64_t order() const noexcept { return m_; }
    bool is_trivial() const noexcept { return m_ == 1; }
    MultChar power(std::int64_t n) const;

    CharValue operator()(FqElem x) const;
    CharValue raw(std::uint64_t x) const;

   private:
    std::shared_ptr<const FieldCtx> k_;
    std::uint64_t j_, m_, step_;
    std::vector<CharValue> roots_;
};

struct SumOptions {
    /// 0 means one worker per hardware thread.
    unsigned workers = 1;
    std::uint64_t cap = std::uint64_t{1} << 24;
};

/// -sum_{t in k} chi(t) psi(t).
CharValue gauss_sum(const MultChar& chi, const AdditiveChar& psi);

/// sum_{x in k_r} psi(Tr(f(x))); f has coefficients in k or in k_r.
CharValue sum_additive(const Poly& f, const AdditiveChar& psi, const ExtCtx& ext, const SumOptions& opt = {});
/// sum_{x in k_r} chi(N(f(x))).
CharValue sum_multiplicative(const Poly& f, const MultChar& chi, const ExtCtx& ext, const SumOptions& opt = {});

/// Sum of psi(Tr(g(x))) over the norm fiber N(x) = mu.
CharValue fiber_sum_additive(const Poly& g, const AdditiveChar& psi, const ExtCtx& ext, FqElem mu,
                             const SumOptions& opt = {});
CharValue fiber_sum_multiplicative(const Poly& g, const MultChar& chi, const ExtCtx& ext, FqElem mu,
                                   const SumOptions& opt = {});
/// All fibers in one scan; entry c is the fiber over the element of k with
/// code c (entry 0 is unused).
std::vector<CharValue> fiber_sums_additive(const Poly& g, const AdditiveChar& psi, const ExtCtx& ext,
                                           const SumOptions& opt = {});
std::vector<CharValue> fiber_sums_multiplicative(const Poly& g, const MultChar& chi, const ExtCtx& ext,
                                                 const SumOptions& opt = {});

/// f(x) = g(x^{(q-1)/e}) for e | q - 1.
Poly homothety_lift(const Poly& g, std::uint64_t e, std::uint64_t q);

/// Both sides of the fiber decomposition of a homothety invariant sum:
/// the direct full sum and the f(0) term plus (q-1)/e times the fibers over
/// mu^e = 1.
struct Reassembly {
    CharValue direct;
    CharValue reassembled;
};
Reassembly reassembly_additive(const Poly& g, std::uint64_t e, const AdditiveChar& psi, const ExtCtx& ext,
                               const SumOptions& opt = {});
Reassembly reassembly_multiplicative(const Poly& g, std::uint64_t e, const MultChar& chi, const ExtCtx& ext,
                                     const SumOptions& opt = {});

/// sum_{u in k} sum_{t in k_r} psi(Tr(g(t) + u t)). Limited to
/// q^{r+1} <= 2^26 terms.
CharValue double_sum_check(const Poly& g, const AdditiveChar& psi, const ExtCtx& ext, const SumOptions& opt = {});

/// Pointwise check, on random points of k^r, that the norm form of
/// `basis` reproduces N(sum a_i x_i) and that sum over sigma of
/// g^sigma(sum sigma(a_i) x_i) reproduces Tr(g(sum a_i x_i)).
bool weil_descent_check(const Poly& g, const ExtCtx& ext, const std::vector<FqElem>& basis, unsigned trials,
                        std::uint64_t seed = 1);

namespace detail {

inline constexpr std::uint64_t kBlock = 4096;

/// Runs fn(block, lo, hi) over the fixed blocks of [0, n), spread over
/// `workers` threads. Exceptions are rethrown in the caller.
void for_each_block(std::uint64_t n, unsigned workers,
                    const std::function<void(std::uint64_t, std::uint64_t, std::uint64_t)>& fn);

/// Fixed-shape pairwise reduction.
CharValue pairwise(const CharValue* v, std::size_t n) noexcept;

struct Compensated {
    double re = 0, im = 0, cre = 0, cim = 0;
    void add(CharValue z) noexcept {
        step(re, cre, z.real());
        step(im, cim, z.imag());
    }
    CharValue value() const noexcept { return {re + cre, im + cim}; }

   private:
    static void step(double& s, double& c, double x) noexcept {
        const double t = s + x;
        c += (std::abs(s) >= std::abs(x)) ? (s - t) + x : (x - t) + s;
        s = t;
    }
};

/// Deterministic sum of term(i), i in [0, n): compensated within fixed
/// blocks, pairwise across blocks. Independent of the worker count.
template <class Term>
CharValue tree_sum(std::uint64_t n, unsigned workers, Term term) {
    const std::uint64_t blocks = (n + kBlock - 1) / kBlock;
    std::vector<CharValue> partial(blocks);
    for_each_block(n, workers, [&](std::uint64_t b, std::uint64_t lo, std::uint64_t hi) {
        Compensated acc;
        for (std::uint64_t i = lo; i < hi; ++i) acc.add(term(i));
        partial[b] = acc.value();
    });
    return pairwise(partial.data(), partial.size());
}

}  // namespace detail

}  // namespace fqs

#endif
