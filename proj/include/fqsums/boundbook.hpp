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

#ifndef FQSUMS_BOUNDBOOK_HPP
#define FQSUMS_BOUNDBOOK_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "fqsums/charsum.hpp"
#include "fqsums/invariance.hpp"
#include "fqsums/localdata.hpp"
#include "fqsums/polyring.hpp"

namespace fqs {

enum class BoundKind {
    WeilAdd,
    WeilMult,
    TransAdd,
    TransAddExc,
    TransAddSp,
    TransAddSpExc,
    TransMult,
    TransMultExc,
    HomAdd,
    HomMult,
};

std::string_view to_string(BoundKind kind) noexcept;
BoundKind parse_bound_kind(std::string_view text);
/// Exceptional additive cells carry a strict inequality.
bool is_strict(BoundKind kind) noexcept;

/// Nonnegative rational in lowest terms.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    double value() const noexcept { return static_cast<double>(num) / static_cast<double>(den); }
    friend bool operator==(const Rational&, const Rational&) = default;
};

/// C(n, k), zero for k < 0 or k > n.
std::int64_t binomial(std::int64_t n, std::int64_t k);

double weil_additive(unsigned d_prime, std::uint64_t q, unsigned r);
/// Throws MthPower when the profile says f is an m-th power.
double weil_multiplicative(const PowerProfile& profile, std::uint64_t q, unsigned r);
double weil_multiplicative(unsigned distinct_roots, std::uint64_t q, unsigned r);

/// Constant of the additive translation-invariant estimate.
Rational c_add(unsigned d, unsigned r);
/// Constant of the multiplicative translation-invariant estimate.
std::int64_t c_mult(unsigned d, unsigned r);

/// r d^{r-1} (q-1) q^{(r-1)/2}, the bound on the sum over k_r^*.
double homothety_bound(unsigned d, std::uint64_t q, unsigned r);
/// r d^{r-1} q^{(r-1)/2}, the bound on a single norm fiber.
double homothety_fiber_bound(unsigned d, std::uint64_t q, unsigned r);

/// g_1 = g, g_{n+1}(x) = Res_t(g_n(t), g(x - t)). Computed by evaluation at
/// deg g_n + 1 points of a large enough extension and interpolation; g must
/// live over a ground field and deg(g)^n may not exceed 2^16.
Poly g_sequence(const Poly& g, unsigned n);

/// c and delta with g(x + c) + delta odd, if they exist.
struct OddShift {
    FqElem c;
    FqElem delta;
};
std::optional<OddShift> odd_after_shift(const Poly& g);

/// Whether z^n = c has n distinct solutions in k (c nonzero).
bool has_all_nth_roots(const FieldCtx& k, FqElem c, std::uint64_t n);

/// Main term of the exceptional cell a_{d-1} = 0, r = d - 1 without an odd
/// shift. Index 0 carries the sign (-1)^{d-1}, index 1 the sign (-1)^d.
std::array<CharValue, 2> main_term_add_sl(const Poly& g, const LocalData& local, const AdditiveChar& psi,
                                          unsigned r);
/// (-1)^r psi(-beta)^r q^{r/2+1}, for r even.
CharValue main_term_add_sp(FqElem beta, const AdditiveChar& psi, unsigned r);
/// (-1)^d q beta with beta = chi((-1)^{d(d-1)/2} a_d^{-(d-2)} disc g) g(chi,psi)^d.
/// Throws RootsNotInBaseField when g does not split in k.
CharValue main_term_mult(const Poly& g, const MultChar& chi, const AdditiveChar& psi, unsigned r);

struct Hypothesis {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct BoundReport {
    BoundKind kind = BoundKind::WeilAdd;
    double bound = 0;
    std::optional<double> fiber_bound;
    std::optional<CharValue> main_term;
    /// Second sign candidate for the SL exceptional cell.
    std::optional<CharValue> alt_main_term;
    /// Known size of a main term whose value is not computable in k.
    std::optional<double> main_magnitude;
    std::vector<Hypothesis> hypotheses;
    bool applicable = false;
    bool strict = false;
    std::string note;

    void add(std::string name, bool pass, std::string detail = {});
    void finish();
};

void to_json(nlohmann::json& j, const BoundReport& report);

/// Sum over k_r of psi(Tr f(x)) for f over k.
BoundReport report_weil_additive(const Poly& f, const AdditiveChar& psi, unsigned r);
/// Sum over k_r of chi(N f(x)) for f over k.
BoundReport report_weil_multiplicative(const Poly& f, const MultChar& chi, unsigned r);
/// f = g(x^q - x); `branch` selects the root used for the local data.
BoundReport report_translation_additive(const Poly& g, const AdditiveChar& psi, unsigned r,
                                        std::size_t branch = 0);
BoundReport report_translation_multiplicative(const Poly& g, const MultChar& chi, const AdditiveChar& psi,
                                              unsigned r);
/// f = g(x^{(q-1)/e}) with g over k_r; bounds the sum over k_r^*.
BoundReport report_homothety_additive(const Poly& g, const AdditiveChar& psi, std::uint64_t e, unsigned r);
BoundReport report_homothety_multiplicative(const Poly& g, const MultChar& chi, std::uint64_t e, unsigned r);

}  // namespace fqs

#endif
