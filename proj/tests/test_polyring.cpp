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

#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "fqsums/error.hpp"
#include "fqsums/polyring.hpp"
#include "oracles.hpp"

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

std::set<std::uint64_t> root_codes(const RootSet& rs) {
    std::set<std::uint64_t> out;
    for (auto r : rs.roots) out.insert(r.code);
    return out;
}

}  // namespace

TEST_CASE("eval") {
    FieldPtr f13 = make_field(13, 1);
    CHECK(eval(Poly::from_ints(f13, {1, 0, 1}), f13->zero()) == f13->one());
    CHECK(eval(Poly::from_ints(f13, {-1, 0, 0, 1}), f13->from_int(3)) == f13->zero());

    auto k = make_field(5, 1);
    auto k2 = make_extension(k, 2);
    Poly f = Poly::from_ints(k, {2, 1, 3});
    std::mt19937_64 rng(1);
    for (int i = 0; i < 100; ++i) {
        FqElem x = k2->random(rng);
        FqElem direct = k2->add(k2->embed(k->from_int(2)),
                                k2->add(x, k2->mul(k2->embed(k->from_int(3)), k2->mul(x, x))));
        CHECK(eval(f, x, *k2) == direct);
        CHECK(eval(f.embed(k2), x) == direct);
    }
    FqElem a = k->from_int(4);
    CHECK(eval(f, k2->embed(a), *k2) == k2->embed(eval(f, a)));
    CHECK(code_of([&] { eval(f, k2->one()); }) == ErrorCode::CtxMismatch);
}

TEST_CASE("divrem") {
    FieldPtr f5 = make_field(5, 1);
    Poly x = Poly::x(f5);
    auto [q1, r1] = divrem(x * x, x);
    CHECK(q1 == x);
    CHECK(r1.is_zero());
    Poly f = Poly::from_ints(f5, {2, -1, 0, 0, 0, 1});
    Poly one = Poly::from_ints(f5, {1});
    CHECK(divrem(f, one).first == f);
    auto [q2, r2] = divrem(f, Poly::from_ints(f5, {0, -1, 0, 0, 0, 1}));
    CHECK(q2 == one);
    CHECK(r2 == Poly::from_ints(f5, {2}));
    CHECK(code_of([&] { divrem(f, Poly(f5)); }) == ErrorCode::DivByZeroPoly);

    std::mt19937_64 rng(2);
    FieldPtr k = make_field(3, 2);
    for (int i = 0; i < 200; ++i) {
        Poly a = random_poly(k, static_cast<int>(rng() % 9), rng);
        Poly b = random_poly(k, static_cast<int>(rng() % 5), rng);
        auto [q, r] = divrem(a, b);
        CHECK(b * q + r == a);
        CHECK(r.degree() < b.degree());
    }
}

TEST_CASE("resultant basics") {
    FieldPtr f7 = make_field(7, 1);
    std::mt19937_64 rng(3);
    for (int i = 0; i < 50; ++i) {
        FqElem a = f7->random(rng);
        Poly g = random_poly(f7, 1 + static_cast<int>(rng() % 5), rng);
        CHECK(resultant(Poly(f7, {f7->neg(a), f7->one()}), g) == eval(g, a));
        FqElem c = f7->random_nonzero(rng);
        CHECK(resultant(g, Poly::constant(f7, c)) == f7->pow(c, g.degree()));
    }
    Poly f = Poly::from_ints(f7, {1, 0, 1}), g = Poly::from_ints(f7, {0, 1, 1});
    CHECK(resultant(f, g) == oracle::sylvester_resultant(*f7, f.coeffs(), g.coeffs()));
    CHECK(code_of([&] { resultant(f, Poly(f7)); }) == ErrorCode::ZeroPoly);
}

TEST_CASE("resultant against Sylvester determinants") {
    std::mt19937_64 rng(4);
    for (FieldPtr k : {FieldPtr(make_field(7, 1)), FieldPtr(make_field(3, 2)), FieldPtr(make_field(2, 3)),
                       FieldPtr(make_extension(make_field(5, 1), 2))}) {
        for (int i = 0; i < 500; ++i) {
            Poly f = random_poly(k, static_cast<int>(rng() % 6), rng);
            Poly g = random_poly(k, static_cast<int>(rng() % 6), rng);
            FqElem r = resultant(f, g);
            CHECK(r == oracle::sylvester_resultant(*k, f.coeffs(), g.coeffs()));
            FqElem rs = resultant(g, f);
            CHECK(r == ((f.degree() * g.degree()) % 2 ? k->neg(rs) : rs));
        }
        for (int i = 0; i < 100; ++i) {
            Poly f = random_poly(k, 1 + static_cast<int>(rng() % 4), rng);
            Poly g = random_poly(k, static_cast<int>(rng() % 4), rng);
            Poly h = random_poly(k, static_cast<int>(rng() % 4), rng);
            CHECK(resultant(f, g * h) == k->mul(resultant(f, g), resultant(f, h)));
        }
    }
}

TEST_CASE("discriminant") {
    FieldPtr f13 = make_field(13, 1);
    std::mt19937_64 rng(5);
    for (int i = 0; i < 50; ++i) {
        FqElem b = f13->random(rng), c = f13->random(rng);
        Poly g(f13, {c, b, f13->one()});
        CHECK(discriminant(g) == f13->sub(f13->mul(b, b), f13->mul(f13->from_int(4), c)));
        // x^3 + px + q
        FqElem p = f13->random(rng), q = f13->random(rng);
        Poly cub(f13, {q, p, f13->zero(), f13->one()});
        FqElem expect = f13->sub(f13->mul(f13->from_int(-4), f13->pow(p, 3)), f13->mul(f13->from_int(27), f13->mul(q, q)));
        CHECK(discriminant(cub) == expect);
    }
    CHECK(discriminant(Poly::from_ints(f13, {-1, 0, 0, 1})) == f13->from_int(12));
    CHECK(discriminant(Poly::from_ints(f13, {1, -2, 1})) == f13->zero());
    FieldPtr f3 = make_field(3, 1);
    CHECK(code_of([&] { discriminant(Poly::from_ints(f3, {1, 0, 0, 1})); }) == ErrorCode::DegenerateDerivative);

    for (FieldPtr k : {FieldPtr(make_field(5, 1)), FieldPtr(make_field(2, 2)), FieldPtr(make_field(7, 1))}) {
        int zero = 0;
        for (int i = 0; i < 500; ++i) {
            int d = 2 + static_cast<int>(rng() % 4);
            if (d % static_cast<int>(k->characteristic()) == 0) ++d;
            Poly g = random_poly(k, d, rng);
            // bias toward repeated roots
            if (i % 3 == 0) {
                Poly l = random_poly(k, 1, rng);
                g = l * l * random_poly(k, d - 2, rng);
            }
            const bool z = discriminant(g) == k->zero();
            zero += z;
            CHECK(z == !squarefree(g));
        }
        CHECK(zero > 0);
    }
}

TEST_CASE("shift") {
    FieldPtr f7 = make_field(7, 1);
    Poly x2 = Poly::from_ints(f7, {0, 0, 1});
    CHECK(shift(x2, f7->one()) == Poly::from_ints(f7, {1, 2, 1}));
    CHECK(shift(x2, f7->zero()) == x2);
    std::mt19937_64 rng(6);
    FieldPtr k = make_field(5, 2);
    for (int i = 0; i < 100; ++i) {
        Poly g = random_poly(k, 1 + static_cast<int>(rng() % 6), rng);
        FqElem c1 = k->random(rng), c2 = k->random(rng);
        CHECK(shift(shift(g, c1), k->neg(c1)) == g);
        CHECK(shift(g, k->add(c1, c2)) == shift(shift(g, c2), c1));
        const int d = g.degree();
        CHECK(shift(g, c1).coeff(d - 1) ==
              k->add(g.coeff(d - 1), k->mul(k->mul(k->from_int(d), g.lead()), c1)));
    }
}

TEST_CASE("squarefree") {
    FieldPtr f7 = make_field(7, 1);
    CHECK(squarefree(Poly::from_ints(f7, {1, 0, 1})));
    CHECK(!squarefree(Poly::from_ints(f7, {1, -2, 1})));
    CHECK(!squarefree(Poly::from_ints(f7, {-3, 0, 0, 0, 0, 0, 0, 1})));
}

TEST_CASE("squarefree decomposition") {
    std::mt19937_64 rng(7);
    for (FieldPtr k : {FieldPtr(make_field(3, 1)), FieldPtr(make_field(2, 2)), FieldPtr(make_field(5, 1))}) {
        const unsigned p = static_cast<unsigned>(k->characteristic());
        for (int i = 0; i < 100; ++i) {
            Poly a = random_poly(k, 1 + static_cast<int>(rng() % 3), rng).monic();
            Poly b = random_poly(k, 1 + static_cast<int>(rng() % 2), rng).monic();
            Poly g = (a * b.pow(2)).pow(1 + static_cast<unsigned>(rng() % (p + 1)));
            auto parts = squarefree_decomposition(g);
            Poly rebuilt = Poly::constant(k, k->one());
            for (std::size_t j = 0; j < parts.size(); ++j) {
                CHECK(squarefree(parts[j].factor));
                for (std::size_t l = 0; l < j; ++l) CHECK(gcd(parts[j].factor, parts[l].factor).degree() == 0);
                rebuilt = rebuilt * parts[j].factor.pow(parts[j].multiplicity);
            }
            CHECK(rebuilt == g.monic());
        }
    }
}

TEST_CASE("roots_in") {
    FieldPtr f13 = make_field(13, 1);
    auto rs = roots_in(Poly::from_ints(f13, {-1, 0, 0, 1}), f13);
    CHECK(root_codes(rs) == std::set<std::uint64_t>{1, 3, 9});
    CHECK(rs.splits);

    FieldPtr f7 = make_field(7, 1);
    auto none = roots_in(Poly::from_ints(f7, {1, 0, 1}), f7);
    CHECK(none.roots.empty());
    CHECK(!none.splits);

    auto sq = roots_in(Poly::from_ints(f7, {0, 0, 1}), f7);
    REQUIRE(sq.roots.size() == 1);
    CHECK(sq.roots[0] == f7->zero());
    CHECK(sq.multiplicity[0] == 2);
    CHECK(sq.splits);

    auto f49 = make_extension(make_field(7, 1), 2);
    auto k7 = f49->base_ptr();
    auto ext_roots = roots_in(Poly::from_ints(k7, {1, 0, 1}), f49);
    CHECK(ext_roots.roots.size() == 2);
    CHECK(ext_roots.splits);

    auto big = make_field(1000003, 1);
    CHECK(code_of([&] { roots_in(Poly::from_ints(big, {0, 1}), big); }) == ErrorCode::FieldTooLarge);
}

TEST_CASE("parity_check") {
    FieldPtr f7 = make_field(7, 1);
    CHECK(parity_check(Poly::from_ints(f7, {0, 1, 0, 1})) == Parity::Odd);
    CHECK(parity_check(Poly::from_ints(f7, {1, 0, 3, 0, 1})) == Parity::Even);
    CHECK(parity_check(Poly::from_ints(f7, {-1, 0, 0, 1})) == Parity::Neither);
}

TEST_CASE("poly text format") {
    FieldPtr f7 = make_field(7, 1);
    CHECK(format_poly(Poly::from_ints(f7, {-1, 0, 0, 1})) == "6,0,0,1");
    CHECK(parse_poly(f7, "6, 0,0 ,1") == Poly::from_ints(f7, {-1, 0, 0, 1}));
    FieldPtr k = make_field(3, 2);
    std::mt19937_64 rng(8);
    for (int i = 0; i < 20; ++i) {
        Poly g = random_poly(k, 4, rng);
        CHECK(parse_poly(k, format_poly(g)) == g);
    }
    CHECK(code_of([&] { parse_poly(f7, "1,,2"); }) == ErrorCode::ParseError);
}
