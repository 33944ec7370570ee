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

#include "fqsums/invariance.hpp"

#include "fqsums/error.hpp"
#include "fqsums/numtheory.hpp"

namespace fqs {

Poly decompose_translation(const Poly& f) {
    const FieldPtr& k = f.field_ptr();
    const std::uint64_t q = f.field().ground().q();
    if (q > (std::uint64_t{1} << 20)) throw Error(ErrorCode::FieldTooLarge, "x^q - x is too large to divide by");
    const Poly t = Poly::monomial(k, k->one(), static_cast<unsigned>(q)) - Poly::x(k);
    std::vector<FqElem> g;
    Poly rest = f;
    while (!rest.is_constant()) {
        auto [quot, rem] = divrem(rest, t);
        if (!rem.is_constant())
            throw Error(ErrorCode::NotInvariant, "remainder modulo x^q - x is not constant");
        g.push_back(rem.coeff(0));
        rest = std::move(quot);
    }
    g.push_back(rest.coeff(0));
    return Poly(k, std::move(g));
}

Poly decompose_homothety(const Poly& f, std::uint64_t e) {
    const std::uint64_t q = f.field().ground().q();
    if (e == 0 || (q - 1) % e != 0) throw Error(ErrorCode::InvalidArgument, "e must divide q - 1");
    const std::uint64_t step = (q - 1) / e;
    std::vector<FqElem> g;
    for (std::size_t i = 0; i < f.coeffs().size(); ++i) {
        if (i % step == 0)
            g.push_back(f.coeffs()[i]);
        else if (f.coeffs()[i] != f.field().zero())
            throw Error(ErrorCode::NotInvariant,
                        "exponent " + std::to_string(i) + " is not divisible by " + std::to_string(step));
    }
    return Poly(f.field_ptr(), std::move(g));
}

FqElem as_twist(const AdditiveChar& psi) {
    if (psi.is_trivial()) throw Error(ErrorCode::InvalidArgument, "the twist needs a nontrivial character");
    const FieldCtx& k = psi.field();
    const std::uint64_t b = psi.b().code;
    // both sides are F_p-linear in t, so the F_p-basis X^j decides
    std::vector<std::uint64_t> basis;
    for (unsigned j = 0; j < k.s(); ++j) basis.push_back(*nt::checked_pow(k.p(), j));
    for (FqElem a : enumerate(k)) {
        bool ok = true;
        for (std::uint64_t t : basis) {
            const std::uint64_t lhs = k.raw_trace_to_prime(k.raw_mul(b, k.raw_pow(t, k.p())));
            const std::uint64_t rhs = k.raw_trace_to_prime(k.raw_mul(b, k.raw_mul(a.code, t)));
            if (lhs != rhs) {
                ok = false;
                break;
            }
        }
        if (ok) return a;
    }
    throw Error(ErrorCode::InvalidArgument, "no twist found");  // unreachable for nontrivial psi
}

ASReduction as_reduce(const Poly& f, const AdditiveChar& psi) {
    if (&f.field() != static_cast<const Field*>(&psi.field()))
        throw Error(ErrorCode::CtxMismatch, "polynomial and character over different fields");
    const FieldCtx& k = psi.field();
    const std::uint64_t p = k.p();
    ASReduction out{f, 0, as_twist(psi), {}};
    std::vector<FqElem> c = f.coeffs();
    while (!c.empty() && c.size() > 1 && (c.size() - 1) % p == 0) {
        const std::size_t d = c.size() - 1, e = d / p;
        const FqElem bd = k.pth_root(c[d]);
        const FqElem add = k.mul(out.twist, bd);
        c[d] = k.zero();
        c[e] = k.add(c[e], add);
        out.steps.push_back({static_cast<unsigned>(d), static_cast<unsigned>(e), add});
        while (!c.empty() && c.back() == k.zero()) c.pop_back();
    }
    out.reduced = Poly(f.field_ptr(), std::move(c));
    out.d_prime = out.reduced.degree() > 0 ? static_cast<unsigned>(out.reduced.degree()) : 0;
    return out;
}

PowerProfile mth_power_test(const Poly& f, unsigned m) {
    if (m == 0) throw Error(ErrorCode::InvalidArgument, "m must be positive");
    PowerProfile out{true, 0};
    for (const auto& part : squarefree_decomposition(f)) {
        out.distinct_roots += static_cast<unsigned>(part.factor.degree());
        if (part.multiplicity % m != 0) out.is_mth_power = false;
    }
    return out;
}

PowerProfile split_root_profile(const Poly& f, unsigned m, std::uint64_t cap) {
    if (f.is_zero()) throw Error(ErrorCode::ZeroPoly, "profile of the zero polynomial");
    if (m == 0) throw Error(ErrorCode::InvalidArgument, "m must be positive");
    if (f.degree() == 0) return {true, 0};
    auto k = std::dynamic_pointer_cast<const FieldCtx>(f.field_ptr());
    if (!k) throw Error(ErrorCode::InvalidArgument, "polynomial must be over the base field");
    for (unsigned r = 1; r <= 12; ++r) {
        const auto size = nt::checked_pow(k->q(), r);
        if (!size || *size > cap) break;
        auto ext = make_extension(k, r);
        const Poly h = f.embed(ext);
        const auto codes = h.codes();
        PowerProfile out{true, 0};
        unsigned total = 0;
        for (FqElem x : enumerate(*ext)) {
            if (raw_eval(*ext, codes, x.code) != 0) continue;
            const Poly lin(ext, {ext->neg(x), ext->one()});
            Poly rest = h;
            unsigned mult = 0;
            for (;;) {
                auto [q, rem] = divrem(rest, lin);
                if (!rem.is_zero()) break;
                rest = std::move(q);
                ++mult;
            }
            ++out.distinct_roots;
            total += mult;
            if (mult % m != 0) out.is_mth_power = false;
        }
        if (total == static_cast<unsigned>(f.degree())) return out;
    }
    throw Error(ErrorCode::FieldTooLarge, "no splitting field within the enumeration cap");
}

}  // namespace fqs
