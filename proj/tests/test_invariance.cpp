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

#include <random>

#include "doctest.h"
#include "fqsums/error.hpp"
#include "fqsums/invariance.hpp"

using namespace fqs;

namespace {

ErrorCode code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an Error");
    return ErrorCode::InvalidArgument;
}

Poly random_poly(const FieldPtr& k, int deg, std::mt19937_64& rng) {
    std::vector<FqElem> c;
    for (int i = 0; i < deg; ++i) c.push_back(k->random(rng));
    c.push_back(k->random_nonzero(rng));
    return Poly(k, c);
}

Poly artin_schreier(const FieldPtr& k) {
    return Poly::monomial(k, k->one(), static_cast<unsigned>(k->size())) - Poly::x(k);
}

bool translation_invariant_brute(const Poly& f) {
    for (FqElem a : enumerate(f.field()))
        if (shift(f, a) != f) return false;
    return true;
}

// f(lambda^e x) = f(x) for every lambda, compared coefficientwise
bool homothety_invariant_brute(const Poly& f, std::uint64_t e) {
    const Field& k = f.field();
    const FieldCtx& base = k.ground();
    for (FqElem lam : enumerate(base)) {
        if (lam == base.zero()) continue;
        FqElem c = base.pow(lam, e);
        FqElem ck = k.id() == base.id() ? c : FqElem{c.code, k.id()};
        FqElem power = k.one();
        for (const auto& a : f.coeffs()) {
            if (k.mul(a, power) != a) return false;
            power = k.mul(power, ck);
        }
    }
    return true;
}

}  // namespace

TEST_CASE("decompose_translation") {
    FieldPtr f5 = make_field(5, 1);
    const Poly t = artin_schreier(f5);
    Poly f = t * t + Poly::from_ints(f5, {3});
    CHECK(decompose_translation(f) == Poly::from_ints(f5, {3, 0, 1}));
    CHECK(decompose_translation(Poly::from_ints(f5, {4})) == Poly::from_ints(f5, {4}));
    CHECK(code_of([&] { decompose_translation(Poly::x(f5)); }) == ErrorCode::NotInvariant);

    std::mt19937_64 rng(1);
    for (FieldPtr k : {FieldPtr(make_field(3, 1)), FieldPtr(make_field(2, 2)), FieldPtr(make_field(7, 1)),
                       FieldPtr(make_field(3, 2)), FieldPtr(make_field(7, 2))}) {
        const Poly tk = artin_schreier(k);
        const int q = static_cast<int>(k->size());
        int invariant = 0;
        for (int i = 0; i < 40; ++i) {
            Poly g = random_poly(k, static_cast<int>(rng() % 4), rng);
            Poly h = g.compose(tk);
            CHECK(decompose_translation(h) == g);
            // perturb half of the cases below degree 3q
            if (i % 2) h = h + random_poly(k, static_cast<int>(rng() % (3 * q)), rng);
            bool ok = true;
            bool roundtrip = true;
            try {
                roundtrip = decompose_translation(h).compose(tk) == h;
            } catch (const Error& e) {
                CHECK(e.code() == ErrorCode::NotInvariant);
                ok = false;
            }
            CHECK(roundtrip);
            CHECK(ok == translation_invariant_brute(h));
            invariant += ok;
        }
        CHECK(invariant >= 20);
    }
}

TEST_CASE("decompose_homothety") {
    FieldPtr f13 = make_field(13, 1);
    CHECK(decompose_homothety(Poly::from_ints(f13, {1, 0, 0, 0, 2, 0, 0, 0, 1}), 3) == Poly::from_ints(f13, {1, 2, 1}));
    CHECK(decompose_homothety(Poly::from_ints(f13, {5}), 3) == Poly::from_ints(f13, {5}));
    CHECK(code_of([&] { decompose_homothety(Poly::from_ints(f13, {0, 0, 0, 0, 0, 1}), 3); }) == ErrorCode::NotInvariant);
    CHECK(code_of([&] { decompose_homothety(Poly::from_ints(f13, {1}), 5); }) == ErrorCode::InvalidArgument);

    std::mt19937_64 rng(2);
    auto k2 = make_extension(make_field(13, 1), 2);
    for (std::uint64_t e : {1ull, 2ull, 3ull, 4ull, 6ull, 12ull}) {
        for (int i = 0; i < 10; ++i) {
            FieldPtr field = i % 2 ? FieldPtr(k2) : f13;
            Poly g = random_poly(field, static_cast<int>(rng() % 3), rng);
            Poly f = homothety_lift(g, e, 13);
            CHECK(decompose_homothety(f, e) == g);
            CHECK(homothety_invariant_brute(f, e));
            Poly h = f + Poly::monomial(field, field->one(), 1 + static_cast<unsigned>(rng() % 20));
            bool ok = true;
            try {
                decompose_homothety(h, e);
            } catch (const Error&) {
                ok = false;
            }
            CHECK(ok == homothety_invariant_brute(h, e));
        }
    }
}

TEST_CASE("Artin-Schreier twist") {
    for (auto [p, s] : {std::pair{5u, 1u}, {2u, 3u}, {3u, 2u}, {7u, 2u}}) {
        auto k = make_field(p, s);
        std::mt19937_64 rng(p * 10 + s);
        for (int i = 0; i < 4; ++i) {
            AdditiveChar psi(k, k->random_nonzero(rng));
            FqElem a = as_twist(psi);
            for (FqElem t : enumerate(*k)) CHECK(std::abs(psi(k->pow(t, p)) - psi(k->mul(a, t))) < 1e-12);
        }
        CHECK(as_twist(AdditiveChar::canonical(k)) == k->one());
    }
}

TEST_CASE("as_reduce examples") {
    for (unsigned p : {3u, 5u, 7u}) {
        FieldPtr k = make_field(p, 1);
        AdditiveChar psi = AdditiveChar::canonical(std::dynamic_pointer_cast<const FieldCtx>(k));
        Poly xp = Poly::monomial(k, k->one(), p);
        auto r1 = as_reduce(xp, psi);
        CHECK(r1.reduced == Poly::x(k));
        CHECK(r1.d_prime == 1);
        auto r2 = as_reduce(xp + Poly::x(k), psi);
        CHECK(r2.reduced == Poly::from_ints(k, {0, 2}));
        CHECK(r2.d_prime == 1);
        auto r3 = as_reduce(xp - Poly::x(k), psi);
        CHECK(r3.reduced.is_zero());
        CHECK(r3.d_prime == 0);
        for (unsigned r : {1u, 2u}) {
            auto ext = make_extension(std::dynamic_pointer_cast<const FieldCtx>(k), r);
            const double qr = static_cast<double>(ext->size());
            CHECK(std::abs(sum_additive(xp + Poly::x(k), psi, *ext) - sum_additive(r2.reduced, psi, *ext)) < 1e-6);
            CHECK(std::abs(sum_additive(xp - Poly::x(k), psi, *ext) - qr) < 1e-6 * qr);
        }
    }
}

TEST_CASE("as_reduce preserves sums") {
    std::mt19937_64 rng(3);
    for (unsigned p : {3u, 5u, 7u}) {
        auto k = make_field(p, 1);
        for (int i = 0; i < 6; ++i) {
            AdditiveChar psi(k, k->random_nonzero(rng));
            Poly f = random_poly(k, 1 + static_cast<int>(rng() % (3 * p)), rng);
            if (i % 2) f = f + Poly::monomial(k, k->one(), p * (1 + static_cast<unsigned>(rng() % 3)));
            auto red = as_reduce(f, psi);
            CHECK((red.d_prime == 0 || red.d_prime % p != 0));
            for (unsigned r : {1u, 2u, 3u}) {
                auto ext = make_extension(k, r);
                const double tol = 1e-6 * std::sqrt(static_cast<double>(ext->size()));
                CHECK(std::abs(sum_additive(f, psi, *ext) - sum_additive(red.reduced, psi, *ext)) <= tol);
            }
        }
    }
    auto k9 = make_field(3, 2);
    AdditiveChar psi(k9, k9->element(5));
    Poly f = Poly::monomial(k9, k9->element(7), 9) + Poly::from_ints(k9, {1, 1});
    auto red = as_reduce(f, psi);
    CHECK(red.d_prime == 1);
    auto ext = make_extension(k9, 2);
    CHECK(std::abs(sum_additive(f, psi, *ext) - sum_additive(red.reduced, psi, *ext)) < 1e-6);
}

TEST_CASE("reduced degree of translation invariant polynomials") {
    std::mt19937_64 rng(4);
    for (auto [p, s] : {std::pair{3u, 1u}, {5u, 1u}, {7u, 1u}, {3u, 2u}, {2u, 2u}}) {
        auto k = make_field(p, s);
        const std::uint64_t q = k->q();
        const Poly t = artin_schreier(k);
        for (int i = 0; i < 10; ++i) {
            int d = 2 + static_cast<int>(rng() % 4);
            if (d % static_cast<int>(p) == 0) ++d;
            Poly g = random_poly(k, d, rng);
            AdditiveChar psi(k, k->random_nonzero(rng));
            CHECK(as_reduce(g.compose(t), psi).d_prime == q * (d - 1) + 1);
        }
    }
}

TEST_CASE("mth_power_test") {
    FieldPtr f7 = make_field(7, 1);
    Poly x2p1 = Poly::from_ints(f7, {1, 0, 1});
    auto a = mth_power_test(x2p1 * x2p1, 2);
    CHECK(a.is_mth_power);
    CHECK(a.distinct_roots == 2);
    auto b = mth_power_test(x2p1, 2);
    CHECK(!b.is_mth_power);
    CHECK(b.distinct_roots == 2);
    auto c = mth_power_test(Poly::from_ints(f7, {3}), 5);
    CHECK(c.is_mth_power);
    CHECK(c.distinct_roots == 0);
    auto d = split_root_profile(x2p1, 2);
    CHECK(!d.is_mth_power);
    CHECK(d.distinct_roots == 2);
    // x^7 - 2 is a 7th power (of x - 2^{1/7}) with a single root
    auto e = mth_power_test(Poly::from_ints(f7, {-2, 0, 0, 0, 0, 0, 0, 1}), 7);
    CHECK(e.is_mth_power);
    CHECK(e.distinct_roots == 1);

    std::mt19937_64 rng(5);
    for (auto [p, s] : {std::pair{3u, 1u}, {5u, 1u}, {2u, 2u}}) {
        auto k = make_field(p, s);
        for (int i = 0; i < 30; ++i) {
            Poly u = random_poly(k, 1 + static_cast<int>(rng() % 2), rng);
            Poly v = random_poly(k, 1, rng);
            const unsigned m = 2 + static_cast<unsigned>(rng() % 2);
            Poly f = i % 3 ? u * v.pow(m) : u.pow(m).scale(k->random_nonzero(rng));
            auto fast = mth_power_test(f, m);
            auto slow = split_root_profile(f, m);
            CHECK(fast.is_mth_power == slow.is_mth_power);
            CHECK(fast.distinct_roots == slow.distinct_roots);
        }
    }
}
