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
#include "fqsums/ffield.hpp"
#include "fqsums/numtheory.hpp"
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

// Sum of conjugates x^{q^i} through plain powering.
FqElem conjugate_sum(const ExtCtx& ext, FqElem x) {
    FqElem acc = ext.zero(), y = x;
    for (unsigned i = 0; i < ext.r(); ++i) {
        acc = ext.add(acc, y);
        y = ext.pow(y, ext.q());
    }
    return acc;
}

FqElem conjugate_product(const ExtCtx& ext, FqElem x) {
    FqElem acc = ext.one(), y = x;
    for (unsigned i = 0; i < ext.r(); ++i) {
        acc = ext.mul(acc, y);
        y = ext.pow(y, ext.q());
    }
    return acc;
}

std::uint64_t order_of(const Field& f, FqElem x) {
    std::uint64_t n = 1;
    FqElem y = x;
    while (y != f.one()) {
        y = f.mul(y, x);
        ++n;
    }
    return n;
}

}  // namespace

TEST_CASE("numtheory helpers") {
    CHECK(nt::is_prime(2));
    CHECK(nt::is_prime(1000000007));
    CHECK(!nt::is_prime(1));
    CHECK(!nt::is_prime(561));
    CHECK(nt::is_prime(2305843009213693951ULL));
    CHECK(nt::prime_divisors(360) == std::vector<std::uint64_t>{2, 3, 5});
    CHECK(nt::prime_divisors(1000000007ULL * 998244353ULL) == std::vector<std::uint64_t>{998244353, 1000000007});
    CHECK(nt::divisors(12) == std::vector<std::uint64_t>{1, 2, 3, 4, 6, 12});
    CHECK(nt::invmod(3, 7) == 5);
    CHECK(!nt::checked_pow(2, 63).has_value());
    CHECK(*nt::checked_pow(3, 4) == 81);
}

TEST_CASE("make_field") {
    auto f5 = make_field(5, 1, 17);
    CHECK(f5->q() == 5);
    CHECK(f5->modulus().empty());

    auto f16 = make_field(2, 4, 1);
    CHECK(f16->q() == 16);
    REQUIRE(f16->modulus().size() == 5);
    CHECK(f16->modulus().back() == 1);
    oracle::IntPoly m(f16->modulus().begin(), f16->modulus().end());
    CHECK(oracle::irreducible_by_trial_division(m, 2));

    CHECK(code_of([] { make_field(4, 1); }) == ErrorCode::NotPrime);
    CHECK(code_of([] { make_field(2, 63); }) == ErrorCode::Overflow);
    CHECK(code_of([] { make_field(1000003, 4); }) == ErrorCode::Overflow);

    // same seed, same field
    CHECK(make_field(3, 5, 9)->modulus() == make_field(3, 5, 9)->modulus());
}

TEST_CASE("moduli are irreducible and generators primitive") {
    for (auto [p, s] : {std::pair{2u, 3u}, {2u, 7u}, {3u, 2u}, {3u, 4u}, {5u, 3u}, {7u, 2u}, {13u, 2u}}) {
        for (std::uint64_t seed = 1; seed <= 3; ++seed) {
            auto k = make_field(p, s, seed);
            oracle::IntPoly m(k->modulus().begin(), k->modulus().end());
            CHECK(oracle::irreducible_by_trial_division(m, p));
            CHECK(order_of(*k, k->generator()) == k->q() - 1);
        }
    }
    auto k = make_field(7, 1, 3);
    CHECK(order_of(*k, k->generator()) == 6);
}

TEST_CASE("arithmetic against schoolbook reduction") {
    std::mt19937_64 rng(5);
    // table-backed, polynomial-backed, and characteristic-2 paths
    for (auto [p, s] : {std::pair{3u, 3u}, {2u, 8u}, {5u, 2u}, {3u, 15u}, {2u, 30u}}) {
        auto k = make_field(p, s, 2);
        oracle::IntPoly m(k->modulus().begin(), k->modulus().end());
        for (int i = 0; i < 300; ++i) {
            FqElem a = k->random(rng), b = k->random(rng);
            auto da = k->digits(a), db = k->digits(b);
            oracle::IntPoly ia(da.begin(), da.end()), ib(db.begin(), db.end());
            auto prod = oracle::mul_mod(ia, ib, m, p);
            std::vector<std::uint64_t> up(prod.begin(), prod.end());
            CHECK(k->mul(a, b) == k->from_digits(up));
            CHECK(k->sub(k->add(a, b), b) == a);
            CHECK(k->add(a, k->neg(a)) == k->zero());
            if (b != k->zero()) CHECK(k->mul(k->div(a, b), b) == a);
        }
    }
}

TEST_CASE("element checks") {
    auto k = make_field(7, 1);
    auto l = make_field(7, 1);
    CHECK(code_of([&] { k->add(k->one(), l->one()); }) == ErrorCode::CtxMismatch);
    CHECK(code_of([&] { k->inv(k->zero()); }) == ErrorCode::ZeroElement);
    CHECK(k->from_int(-1) == k->element(6));
    CHECK(k->pow_signed(k->element(3), -1) == k->element(5));
}

TEST_CASE("trace") {
    std::mt19937_64 rng(11);
    auto k = make_field(5, 1);
    auto k2 = make_extension(k, 2);
    FqElem g = k2->generator_r();
    CHECK(trace(g, *k2) == k2->project(k2->add(g, k2->pow(g, 5))));

    for (auto [p, s, r] : {std::tuple{5u, 1u, 2u}, {2u, 2u, 3u}, {3u, 2u, 2u}, {7u, 1u, 3u}, {2u, 1u, 5u}}) {
        auto base = make_field(p, s, 3);
        auto ext = make_extension(base, r, 4);
        for (int i = 0; i < 1000; ++i) {
            FqElem x = ext->random(rng), y = ext->random(rng);
            FqElem tx = trace(x, *ext);
            CHECK(ext->embed(tx) == conjugate_sum(*ext, x));
            CHECK(trace(ext->add(x, y), *ext) == base->add(tx, trace(y, *ext)));
            CHECK(trace(ext->frobenius(x), *ext) == tx);
            CHECK(ext->frobenius(x) == ext->pow(x, ext->q()));
        }
        FqElem a = base->random(rng);
        CHECK(trace(ext->embed(a), *ext) == base->mul(base->from_int(r), a));
    }
    CHECK(code_of([&] { trace(k->one(), *k2); }) == ErrorCode::CtxMismatch);
}

TEST_CASE("norm") {
    std::mt19937_64 rng(12);
    for (auto [p, s, r] : {std::tuple{5u, 1u, 2u}, {2u, 2u, 3u}, {3u, 2u, 2u}, {7u, 1u, 3u}, {2u, 1u, 10u}}) {
        auto base = make_field(p, s, 5);
        auto ext = make_extension(base, r, 6);
        for (int i = 0; i < 1000; ++i) {
            FqElem x = ext->random(rng), y = ext->random(rng);
            FqElem nx = norm(x, *ext);
            CHECK(ext->embed(nx) == conjugate_product(*ext, x));
            CHECK(ext->embed(nx) == ext->pow(x, (ext->size() - 1) / (base->q() - 1)));
            CHECK(norm(ext->mul(x, y), *ext) == base->mul(nx, norm(y, *ext)));
            CHECK(norm(ext->frobenius(x), *ext) == nx);
        }
        FqElem a = base->random(rng);
        CHECK(norm(ext->embed(a), *ext) == base->pow(a, r));
        CHECK(norm(ext->zero(), *ext) == base->zero());
        FqElem ng = norm(ext->generator_r(), *ext);
        CHECK(order_of(*base, ng) == base->q() - 1);
        CHECK(order_of(*ext, ext->generator_r()) == ext->size() - 1);
    }
}

TEST_CASE("embedding is a ring homomorphism") {
    std::mt19937_64 rng(13);
    auto k = make_field(3, 2);
    auto k3 = make_extension(k, 3);
    CHECK(k3->embed(k->zero()) == k3->zero());
    CHECK(k3->embed(k->one()) == k3->one());
    for (int i = 0; i < 500; ++i) {
        FqElem a = k->random(rng), b = k->random(rng);
        CHECK(k3->embed(k->add(a, b)) == k3->add(k3->embed(a), k3->embed(b)));
        CHECK(k3->embed(k->mul(a, b)) == k3->mul(k3->embed(a), k3->embed(b)));
    }
}

TEST_CASE("counting identity for x^q - x") {
    for (auto [p, s, r] : {std::tuple{3u, 1u, 2u}, {2u, 2u, 3u}, {5u, 1u, 3u}, {7u, 1u, 2u}}) {
        auto k = make_field(p, s);
        auto ext = make_extension(k, r);
        std::vector<std::uint64_t> count(ext->size(), 0);
        for (FqElem x : enumerate(*ext)) ++count[ext->sub(ext->pow(x, k->q()), x).code];
        for (FqElem t : enumerate(*ext)) {
            const std::uint64_t expected = trace(t, *ext) == k->zero() ? k->q() : 0;
            CHECK(count[t.code] == expected);
        }
    }
}

TEST_CASE("enumerate") {
    auto f5 = make_field(5, 1);
    std::set<std::uint64_t> seen;
    for (FqElem x : enumerate(*f5)) seen.insert(x.code);
    CHECK(seen.size() == 5);

    auto f49 = make_extension(make_field(7, 1), 2);
    std::vector<FqElem> all(enumerate(*f49).begin(), enumerate(*f49).end());
    std::vector<FqElem> joined;
    for (std::uint64_t i = 0; i < 4; ++i)
        for (FqElem x : enumerate(*f49, {i, 4})) joined.push_back(x);
    CHECK(joined == all);
    CHECK(std::set<FqElem>(joined.begin(), joined.end()).size() == 49);

    std::vector<FqElem> halves;
    for (std::uint64_t i = 0; i < 2; ++i)
        for (FqElem x : enumerate(*f49, {i, 2})) halves.push_back(x);
    CHECK(halves == all);
    // more parts than elements still partitions
    std::uint64_t total = 0;
    for (std::uint64_t i = 0; i < 60; ++i) total += enumerate(*f49, {i, 60}).size();
    CHECK(total == 49);
    CHECK(code_of([&] { enumerate(*f5, {2, 2}); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("dlog") {
    auto f7 = make_field(7, 1);
    const FqElem g = f7->generator();
    CHECK(f7->dlog(f7->one()) == 0);
    CHECK(f7->dlog(g) == 1);
    for (std::uint64_t c = 1; c < 7; ++c) {
        FqElem x = f7->element(c);
        CHECK(f7->pow(g, f7->dlog(x)) == x);
    }
    if (g == f7->element(3)) CHECK(f7->dlog(f7->element(2)) == 2);

    auto f81 = make_field(3, 4);
    for (FqElem x : enumerate(*f81))
        if (x != f81->zero()) CHECK(f81->pow(f81->generator(), dlog(x, *f81)) == x);
    CHECK(code_of([&] { f7->dlog(f7->zero()); }) == ErrorCode::ZeroElement);
    auto big = make_field(4194319, 1);
    CHECK(code_of([&] { big->dlog(big->one()); }) == ErrorCode::FieldTooLarge);
}

TEST_CASE("format and parse") {
    auto f7 = make_field(7, 1);
    CHECK(f7->format(f7->element(3)) == "3");
    CHECK(f7->parse("-1") == f7->element(6));
    auto k = make_field(3, 2);
    auto k2 = make_extension(k, 2);
    std::mt19937_64 rng(3);
    for (int i = 0; i < 50; ++i) {
        FqElem x = k->random(rng), y = k2->random(rng);
        CHECK(k->parse(k->format(x)) == x);
        CHECK(k2->parse(k2->format(y)) == y);
    }
    CHECK(k->format(k->from_digits(std::vector<std::uint64_t>{1, 2})) == "[1 2]");
    CHECK(k2->parse("2") == k2->embed(k->from_int(2)));
    CHECK(k2->parse("[[0 1]]") == k2->embed(k->parse("[0 1]")));
    CHECK(code_of([&] { k->parse("[1 2 0]"); }) == ErrorCode::ParseError);
    CHECK(code_of([&] { k->parse("1 x"); }) == ErrorCode::ParseError);
}
