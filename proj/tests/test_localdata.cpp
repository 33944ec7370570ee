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
#include "fqsums/localdata.hpp"

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

// known coefficients of a and b agree on their common window
bool agree(const LaurentTail& a, const LaurentTail& b) {
    const int lo = std::max(a.low(), b.low());
    const int hi = std::max(a.top(), b.top());
    for (int e = hi; e >= lo; --e)
        if (a.at(e) != b.at(e)) return false;
    return true;
}

Poly random_poly_with(const FieldPtr& k, int d, bool top_gap, std::mt19937_64& rng) {
    std::vector<FqElem> c;
    for (int i = 0; i < d; ++i) c.push_back(k->random(rng));
    c.push_back(k->random_nonzero(rng));
    if (top_gap) c[d - 1] = k->zero();
    return Poly(k, c);
}

}  // namespace

TEST_CASE("series arithmetic") {
    FieldPtr f7 = make_field(7, 1);
    const FqElem c = f7->from_int(3);
    auto ct = LaurentTail::monomial(f7, c, 1, 8);
    auto v = series_reversion(ct);
    CHECK(v.top() == 1);
    CHECK(v.lead() == f7->inv(c));
    CHECK(v.at(0) == f7->zero());

    auto t2 = LaurentTail::monomial(f7, f7->one(), 2, 8);
    auto r = series_nth_root(t2, 2, f7->one());
    CHECK(agree(r, LaurentTail::monomial(f7, f7->one(), 1, 8)));

    std::mt19937_64 rng(1);
    FieldPtr k = make_field(11, 1);
    for (int i = 0; i < 30; ++i) {
        std::vector<FqElem> cs{k->random_nonzero(rng)};
        for (int j = 1; j < 10; ++j) cs.push_back(k->random(rng));
        LaurentTail a(k, 1, cs);
        auto inv = series_inverse(a);
        CHECK(agree(a * inv, LaurentTail::monomial(k, k->one(), 0, 10)));
        auto w = series_reversion(a);
        CHECK(agree(series_compose(a, w), LaurentTail::monomial(k, k->one(), 1, 10)));
        CHECK(agree(series_compose(w, a), LaurentTail::monomial(k, k->one(), 1, 10)));
        LaurentTail sq = a * a;
        auto root = series_nth_root(sq, 2, a.lead());
        CHECK(agree(root, a));
        CHECK(agree(series_pow(a, 3), a * a * a));
        CHECK(agree(series_pow(a, -2), inv * inv));
    }
    CHECK(code_of([&] { series_nth_root(LaurentTail::monomial(f7, f7->one(), 7, 5), 7, f7->one()); }) ==
          ErrorCode::BadCharacteristic);
    // 3 is not a square mod 7
    CHECK(code_of([&] { series_nth_root(LaurentTail::monomial(f7, f7->from_int(3), 2, 5), 2, f7->from_int(2)); }) ==
          ErrorCode::NoRootInField);
    CHECK(code_of([&] { LaurentTail::monomial(f7, f7->one(), 1, 3).at(-5); }) == ErrorCode::PrecisionExhausted);
}

TEST_CASE("local data of x^2 over F_7") {
    FieldPtr f7 = make_field(7, 1);
    Poly g = Poly::from_ints(f7, {0, 0, 1});
    auto ld = compute_local_data(g);
    // u = -2t, v = 3t, h = -t^2 / 4
    CHECK(ld.chosen_root == f7->from_int(-2));
    CHECK(ld.s0 == f7->from_int(3));
    REQUIRE(ld.h_coeffs.size() == 3);
    CHECK(ld.h_coeffs[0] == f7->zero());
    CHECK(ld.h_coeffs[1] == f7->zero());
    CHECK(ld.h_coeffs[2] == f7->from_int(5));
    CHECK(ld.branch_count == 1);
}

TEST_CASE("local data identities") {
    std::mt19937_64 rng(2);
    for (auto [p, s] : {std::pair{11u, 1u}, {13u, 1u}, {7u, 1u}, {5u, 2u}, {7u, 2u}}) {
        FieldPtr k = make_field(p, s);
        int done = 0;
        for (int i = 0; i < 200 && done < 25; ++i) {
            const int d = 2 + static_cast<int>(rng() % std::min<unsigned>(4, p - 2));
            if (static_cast<unsigned>(d) >= p) continue;
            Poly g = random_poly_with(k, d, i % 2 == 0, rng);
            if (local_branches(g).empty()) {
                CHECK(code_of([&] { compute_local_data(g); }) == ErrorCode::HypothesisFailed);
                continue;
            }
            ++done;
            const FqElem dad = k->mul(k->from_int(d), g.lead());
            for (std::size_t b = 0; b < local_branches(g).size(); ++b) {
                auto ld = compute_local_data(g, 0, b);
                CHECK(k->mul(k->pow(ld.s0, d - 1), dad) == k->from_int(-1));
                CHECK(k->mul(ld.h_coeffs[d - 1], dad) == k->neg(g.coeff(d - 1)));
                auto wide = compute_local_data(g, d + 10, b);
                CHECK(wide.h_coeffs == ld.h_coeffs);
                CHECK(compute_local_data(g, d + 2, b).h_coeffs == ld.h_coeffs);

                // the defining equations hold to working precision
                const std::size_t n = d + 6;
                auto u = series_nth_root(LaurentTail::from_poly(-g.derivative(), n), d - 1, ld.chosen_root);
                CHECK(agree(series_pow(u, d - 1), LaurentTail::from_poly(-g.derivative(), n)));
                auto v = series_reversion(u);
                CHECK(agree(series_compose(v, u), LaurentTail::monomial(k, k->one(), 1, n)));
                CHECK(v.lead() == ld.s0);
            }
            // another branch r0 -> zeta r0 rescales h by t -> t / zeta
            auto branches = local_branches(g);
            if (branches.size() > 1) {
                auto h0 = compute_local_data(g, 0, 0).h_coeffs;
                auto h1 = compute_local_data(g, 0, 1).h_coeffs;
                const FqElem zinv = k->div(branches[0], branches[1]);
                for (int j = 0; j <= d; ++j) CHECK(h1[j] == k->mul(h0[j], k->pow(zinv, j)));
            }
        }
        CHECK(done > 0);
    }
}

TEST_CASE("local data preconditions") {
    FieldPtr f5 = make_field(5, 1);
    CHECK(code_of([&] { compute_local_data(Poly::from_ints(f5, {1, 0, 0, 0, 0, 1})); }) == ErrorCode::HypothesisFailed);
    CHECK(code_of([&] { compute_local_data(Poly::from_ints(f5, {1, 1})); }) == ErrorCode::HypothesisFailed);
    FieldPtr f11 = make_field(11, 1);
    Poly g = Poly::from_ints(f11, {1, 2, 0, 1});
    if (!local_branches(g).empty())
        CHECK(code_of([&] { compute_local_data(g, 3); }) == ErrorCode::PrecisionExhausted);
}
