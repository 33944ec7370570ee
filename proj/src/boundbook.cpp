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

#include "fqsums/boundbook.hpp"

#include <cmath>
#include <numeric>

#include "fqsums/error.hpp"
#include "fqsums/invariance.hpp"
#include "fqsums/numtheory.hpp"

namespace fqs {

namespace {

double qpow(std::uint64_t q, double x) { return std::pow(static_cast<double>(q), x); }

std::shared_ptr<const FieldCtx> ground_of(const Poly& g) {
    auto k = std::dynamic_pointer_cast<const FieldCtx>(g.field_ptr());
    if (!k) throw Error(ErrorCode::InvalidArgument, "polynomial must be over the base field");
    return k;
}

void require_over(const Poly& g, const Field& k) {
    if (&g.field() != &k) throw Error(ErrorCode::CtxMismatch, "polynomial and character over different fields");
}

CharValue ipow(CharValue z, unsigned n) {
    CharValue out = 1.0;
    for (unsigned i = 0; i < n; ++i) out *= z;
    return out;
}

std::string num(std::int64_t v) { return std::to_string(v); }

FqElem top_gap(const Poly& g) { return g.coeff(static_cast<std::size_t>(g.degree() - 1)); }

}  // namespace

std::string_view to_string(BoundKind kind) noexcept {
    switch (kind) {
        case BoundKind::WeilAdd: return "WeilAdd";
        case BoundKind::WeilMult: return "WeilMult";
        case BoundKind::TransAdd: return "TransAdd";
        case BoundKind::TransAddExc: return "TransAddExc";
        case BoundKind::TransAddSp: return "TransAddSp";
        case BoundKind::TransAddSpExc: return "TransAddSpExc";
        case BoundKind::TransMult: return "TransMult";
        case BoundKind::TransMultExc: return "TransMultExc";
        case BoundKind::HomAdd: return "HomAdd";
        case BoundKind::HomMult: return "HomMult";
    }
    return "?";
}

BoundKind parse_bound_kind(std::string_view text) {
    for (int i = 0; i <= static_cast<int>(BoundKind::HomMult); ++i)
        if (to_string(static_cast<BoundKind>(i)) == text) return static_cast<BoundKind>(i);
    throw Error(ErrorCode::ParseError, "unknown bound kind '" + std::string(text) + "'");
}

bool is_strict(BoundKind kind) noexcept {
    return kind == BoundKind::TransAddExc || kind == BoundKind::TransAddSpExc;
}

std::int64_t binomial(std::int64_t n, std::int64_t k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    unsigned __int128 out = 1;
    for (std::int64_t i = 1; i <= k; ++i) {
        out = out * static_cast<unsigned __int128>(n - k + i) / static_cast<unsigned __int128>(i);
        if (out > static_cast<unsigned __int128>(INT64_MAX)) throw Error(ErrorCode::Overflow, "binomial overflow");
    }
    return static_cast<std::int64_t>(out);
}

double weil_additive(unsigned d_prime, std::uint64_t q, unsigned r) {
    if (d_prime == 0)
        throw Error(ErrorCode::DegenerateReduction, "reduced degree 0: the sum is q^r psi(c) exactly");
    return (d_prime - 1.0) * qpow(q, r / 2.0);
}

double weil_multiplicative(const PowerProfile& profile, std::uint64_t q, unsigned r) {
    if (profile.is_mth_power) throw Error(ErrorCode::MthPower, "polynomial is an m-th power");
    return weil_multiplicative(profile.distinct_roots, q, r);
}

double weil_multiplicative(unsigned distinct_roots, std::uint64_t q, unsigned r) {
    if (distinct_roots == 0) throw Error(ErrorCode::MthPower, "constant polynomial");
    return (distinct_roots - 1.0) * qpow(q, r / 2.0);
}

Rational c_add(unsigned d, unsigned r) {
    if (d < 2 || r < 1) throw Error(ErrorCode::InvalidArgument, "c_add needs d >= 2 and r >= 1");
    const std::int64_t D = d, R = r;
    std::int64_t total = 0;
    for (std::int64_t i = 0; i <= D - 1; ++i)
        total += std::abs(i - 1) * binomial(D - 2 + R - i, R - i) * binomial(D - 1, i);
    const std::int64_t g = std::gcd(total, D - 1);
    return {total / g, (D - 1) / g};
}

std::int64_t c_mult(unsigned d, unsigned r) {
    if (d < 1 || r < 1) throw Error(ErrorCode::InvalidArgument, "c_mult needs d >= 1 and r >= 1");
    const std::int64_t D = d, R = r;
    std::int64_t total = 0;
    for (std::int64_t i = 0; i <= R; ++i)
        total += std::abs(i - 1) * (binomial(D - 1 + R - i, R - i) * binomial(D, i) -
                                    binomial(D - 2 + R - i, R - i) * binomial(D - 1, i));
    return total;
}

double homothety_bound(unsigned d, std::uint64_t q, unsigned r) {
    return homothety_fiber_bound(d, q, r) * static_cast<double>(q - 1);
}

double homothety_fiber_bound(unsigned d, std::uint64_t q, unsigned r) {
    if (r < 1) throw Error(ErrorCode::InvalidArgument, "r must be positive");
    return r * std::pow(static_cast<double>(d), r - 1.0) * qpow(q, (r - 1) / 2.0);
}

// ------------------------------------------------------------ g_sequence

Poly g_sequence(const Poly& g, unsigned n) {
    if (n < 1) throw Error(ErrorCode::InvalidArgument, "g_sequence index must be positive");
    auto k = ground_of(g);
    const int d = g.degree();
    if (d < 1) throw Error(ErrorCode::InvalidArgument, "g_sequence needs a nonconstant polynomial");
    const auto final_degree = nt::checked_pow(static_cast<std::uint64_t>(d), n, std::uint64_t{1} << 16);
    if (!final_degree) throw Error(ErrorCode::FieldTooLarge, "deg(g)^n exceeds 2^16");

    Poly cur = g;
    for (unsigned step = 2; step <= n; ++step) {
        const std::uint64_t points = static_cast<std::uint64_t>(cur.degree()) * d + 1;
        unsigned t = 1;
        while (*nt::checked_pow(k->q(), t) < points) ++t;
        FieldPtr F = k;
        std::shared_ptr<const ExtCtx> ext;
        if (t > 1) {
            ext = make_extension(k, t);
            F = ext;
        }
        const Poly curF = ext ? cur.embed(ext) : cur;
        const Poly gF = ext ? g.embed(ext) : g;

        // values at x = element(i), then Newton divided differences
        std::vector<FqElem> xs(points), c(points);
        for (std::uint64_t i = 0; i < points; ++i) {
            xs[i] = F->element(i);
            const Poly shifted = gF.compose(Poly(F, {xs[i], F->from_int(-1)}));
            c[i] = resultant(curF, shifted);
        }
        for (std::uint64_t j = 1; j < points; ++j)
            for (std::uint64_t i = points - 1; i >= j; --i)
                c[i] = F->div(F->sub(c[i], c[i - 1]), F->sub(xs[i], xs[i - j]));
        std::vector<FqElem> acc{c[points - 1]};
        for (std::uint64_t i = points - 1; i-- > 0;) {
            // acc = acc * (x - xs[i]) + c[i]
            std::vector<FqElem> next(acc.size() + 1, F->zero());
            for (std::size_t m = 0; m < acc.size(); ++m) {
                next[m + 1] = F->add(next[m + 1], acc[m]);
                next[m] = F->sub(next[m], F->mul(acc[m], xs[i]));
            }
            next[0] = F->add(next[0], c[i]);
            acc = std::move(next);
        }
        if (ext)
            for (auto& a : acc) a = ext->project(a);
        cur = Poly(k, std::move(acc));
    }
    return cur;
}

// ------------------------------------------------------------ gates

std::optional<OddShift> odd_after_shift(const Poly& g) {
    auto k = ground_of(g);
    const int d = g.degree();
    if (d < 1 || d % 2 == 0) return std::nullopt;
    auto attempt = [&](FqElem c) -> std::optional<OddShift> {
        const Poly h = shift(g, c);
        for (int i = 2; i <= d; i += 2)
            if (h.coeff(static_cast<std::size_t>(i)) != k->zero()) return std::nullopt;
        return OddShift{c, k->neg(h.coeff(0))};
    };
    const FqElem dad = k->mul(k->from_int(d), g.lead());
    if (dad != k->zero()) return attempt(k->neg(k->div(top_gap(g), dad)));
    if (k->q() > (std::uint64_t{1} << 20)) throw Error(ErrorCode::FieldTooLarge, "odd-shift search field too large");
    for (FqElem c : enumerate(*k))
        if (auto s = attempt(c)) return s;
    return std::nullopt;
}

bool has_all_nth_roots(const FieldCtx& k, FqElem c, std::uint64_t n) {
    if (n == 0 || c == k.zero()) return false;
    const std::uint64_t order = k.q() - 1;
    return order % n == 0 && k.pow(c, order / n) == k.one();
}

// ------------------------------------------------------------ main terms

std::array<CharValue, 2> main_term_add_sl(const Poly& g, const LocalData& local, const AdditiveChar& psi,
                                          unsigned r) {
    const FieldCtx& k = psi.field();
    require_over(g, k);
    const int d = g.degree();
    if (d < 2 || top_gap(g) != k.zero() || static_cast<int>(r) != d - 1)
        throw Error(ErrorCode::NotExceptionalCell, "needs a_{d-1} = 0 and r = d - 1");
    const MultChar rho = MultChar::quadratic(psi.field_ptr());
    const CharValue gauss = gauss_sum(rho, psi);
    const FqElem arg = k.div(k.mul(k.from_int(static_cast<std::int64_t>(d) * (d - 1)), g.lead()), k.from_int(2));
    const CharValue inner = psi(local.h_coeffs.at(0)) * rho(arg) * gauss;
    const CharValue value =
        static_cast<double>(k.q()) * ipow(rho(k.from_int(-1)), static_cast<unsigned>(d)) * ipow(inner, d - 1);
    const double sign = (d - 1) % 2 ? -1.0 : 1.0;
    return {sign * value, -sign * value};
}

CharValue main_term_add_sp(FqElem beta, const AdditiveChar& psi, unsigned r) {
    if (r == 0 || r % 2) throw Error(ErrorCode::NotExceptionalCell, "symplectic main term needs r even");
    const FieldCtx& k = psi.field();
    return ipow(psi(k.neg(beta)), r) * qpow(k.q(), r / 2.0 + 1);
}

CharValue main_term_mult(const Poly& g, const MultChar& chi, const AdditiveChar& psi, unsigned r) {
    const FieldCtx& k = chi.field();
    require_over(g, k);
    const int d = g.degree();
    if (d < 1 || static_cast<int>(r) != d || !chi.power(d).is_trivial() || (d >= 1 && top_gap(g) != k.zero()))
        throw Error(ErrorCode::NotExceptionalCell, "needs r = d, chi^d trivial and a_{d-1} = 0");
    if (!roots_in(g, chi.field_ptr()).splits)
        throw Error(ErrorCode::RootsNotInBaseField, "g does not split in k; only |beta| = q^{d/2} is known");
    FqElem arg = k.mul(k.pow_signed(g.lead(), -(static_cast<std::int64_t>(d) - 2)), discriminant(g));
    if ((static_cast<std::int64_t>(d) * (d - 1) / 2) % 2) arg = k.neg(arg);
    const CharValue beta = chi(arg) * ipow(gauss_sum(chi, psi), static_cast<unsigned>(d));
    return (d % 2 ? -1.0 : 1.0) * static_cast<double>(k.q()) * beta;
}

// ------------------------------------------------------------ reports

void BoundReport::add(std::string name, bool pass, std::string detail) {
    hypotheses.push_back({std::move(name), pass, std::move(detail)});
}

void BoundReport::finish() {
    applicable = true;
    for (const auto& h : hypotheses) applicable = applicable && h.pass;
    strict = is_strict(kind);
}

void to_json(nlohmann::json& j, const BoundReport& report) {
    j = nlohmann::json::object();
    j["kind"] = to_string(report.kind);
    j["bound"] = report.bound;
    if (report.fiber_bound) j["fiber_bound"] = *report.fiber_bound;
    if (report.main_term) {
        j["main_re"] = report.main_term->real();
        j["main_im"] = report.main_term->imag();
    } else {
        j["main_re"] = nullptr;
        j["main_im"] = nullptr;
    }
    if (report.alt_main_term) {
        j["alt_main_re"] = report.alt_main_term->real();
        j["alt_main_im"] = report.alt_main_term->imag();
    }
    if (report.main_magnitude) j["main_magnitude"] = *report.main_magnitude;
    auto& hyps = j["hypotheses"] = nlohmann::json::array();
    for (const auto& h : report.hypotheses) hyps.push_back({{"name", h.name}, {"pass", h.pass}, {"detail", h.detail}});
    j["applicable"] = report.applicable;
    j["strict"] = report.strict;
    if (!report.note.empty()) j["note"] = report.note;
}

BoundReport report_weil_additive(const Poly& f, const AdditiveChar& psi, unsigned r) {
    const FieldCtx& k = psi.field();
    require_over(f, k);
    BoundReport rep;
    rep.kind = BoundKind::WeilAdd;
    rep.add("psi nontrivial", !psi.is_trivial());
    if (!psi.is_trivial()) {
        const ASReduction red = as_reduce(f, psi);
        if (red.d_prime == 0) {
            const FqElem c = red.reduced.coeff(0);
            rep.main_term = qpow(k.q(), r) * psi(k.mul(k.from_int(r), c));
            rep.bound = 0;
            rep.note = "reduced degree 0: exact value q^r psi(r c)";
        } else {
            rep.bound = weil_additive(red.d_prime, k.q(), r);
        }
        rep.add("reduced degree d' = " + num(red.d_prime), true);
    }
    rep.finish();
    return rep;
}

BoundReport report_weil_multiplicative(const Poly& f, const MultChar& chi, unsigned r) {
    const FieldCtx& k = chi.field();
    require_over(f, k);
    BoundReport rep;
    rep.kind = BoundKind::WeilMult;
    rep.add("chi nontrivial", !chi.is_trivial());
    const PowerProfile prof = mth_power_test(f, static_cast<unsigned>(chi.order()));
    rep.add("f not an m-th power", !prof.is_mth_power, "distinct roots e = " + num(prof.distinct_roots));
    if (!prof.is_mth_power) rep.bound = weil_multiplicative(prof, k.q(), r);
    rep.finish();
    return rep;
}

BoundReport report_translation_additive(const Poly& g, const AdditiveChar& psi, unsigned r, std::size_t branch) {
    const FieldCtx& k = psi.field();
    require_over(g, k);
    const std::uint64_t p = k.p(), q = k.q();
    const int d = g.degree();
    BoundReport rep;
    rep.add("psi nontrivial", !psi.is_trivial());
    rep.add("p > d", d >= 0 && p > static_cast<std::uint64_t>(d), "p = " + num(p) + ", d = " + num(d));
    rep.add("d >= 3", d >= 3);
    rep.add("p > 2d-1 (monodromy not finite)", d >= 0 && p > static_cast<std::uint64_t>(2 * d - 1));
    if (d < 2) {
        rep.kind = BoundKind::TransAdd;
        rep.finish();
        return rep;
    }
    rep.bound = c_add(static_cast<unsigned>(d), r).value() * qpow(q, (r + 1) / 2.0);
    const bool gap = top_gap(g) == k.zero();
    const auto odd = odd_after_shift(g);
    if (!odd) {
        rep.add("no c, delta with g(x+c)+delta odd", true);
        rep.kind = gap && static_cast<int>(r) == d - 1 ? BoundKind::TransAddExc : BoundKind::TransAdd;
        if (rep.kind == BoundKind::TransAddExc) {
            const FqElem target = k.neg(k.mul(k.from_int(d), g.lead()));
            const bool roots = has_all_nth_roots(k, target, 2 * (static_cast<std::uint64_t>(d) - 1));
            rep.add("k contains all 2(d-1)-th roots of -d a_d", roots, "-d a_d = " + k.format(target));
            if (roots && p > static_cast<std::uint64_t>(d)) {
                const LocalData local = compute_local_data(g, 0, branch);
                const auto cands = main_term_add_sl(g, local, psi, r);
                rep.main_term = cands[0];
                rep.alt_main_term = cands[1];
                rep.note = "branch " + num(static_cast<std::int64_t>(local.branch)) + " of " +
                           num(static_cast<std::int64_t>(local.branch_count));
            }
        }
    } else {
        rep.add("g(x+c)+delta odd", true, "c = " + k.format(odd->c) + ", delta = " + k.format(odd->delta));
        const bool exc = gap && static_cast<int>(r) <= d - 1 && r % 2 == 0;
        rep.kind = exc ? BoundKind::TransAddSpExc : BoundKind::TransAddSp;
        if (exc) rep.main_term = main_term_add_sp(odd->delta, psi, r);
    }
    rep.finish();
    return rep;
}

BoundReport report_translation_multiplicative(const Poly& g, const MultChar& chi, const AdditiveChar& psi,
                                              unsigned r) {
    const FieldCtx& k = chi.field();
    require_over(g, k);
    const std::uint64_t p = k.p(), q = k.q(), m = chi.order();
    const int d = g.degree();
    BoundReport rep;
    rep.add("chi nontrivial", !chi.is_trivial());
    rep.add("d >= 1", d >= 1);
    if (d < 1) {
        rep.kind = BoundKind::TransMult;
        rep.finish();
        return rep;
    }
    rep.add("g square-free", squarefree(g));
    rep.add("d prime to p", d % p != 0);
    rep.bound = static_cast<double>(c_mult(static_cast<unsigned>(d), r)) * qpow(q, (r + 1) / 2.0);

    bool route_a = r % m != 0;
    std::string detail_a = route_a ? "m does not divide r" : "m divides r";
    if (!route_a) {
        try {
            const FqElem at0 = eval(g_sequence(g, r), k.zero());
            route_a = at0 != k.zero();
            detail_a += ", g_r(0) = " + k.format(at0);
        } catch (const Error& e) {
            detail_a += ", g_r(0) not computed: " + std::string(e.what());
        }
    }
    bool route_b = p > static_cast<std::uint64_t>(2 * d + 1);
    std::string detail_b = route_b ? "p > 2d+1" : "p <= 2d+1";
    if (route_b) {
        const FqElem c = k.neg(k.div(top_gap(g), k.mul(k.from_int(d), g.lead())));
        const Parity par = parity_check(shift(g, c));
        const Parity bad = d % 2 ? Parity::Odd : Parity::Even;
        route_b = par != bad;
        detail_b += ", h is " + std::string(to_string(par));
    }
    const bool exc = static_cast<int>(r) == d && chi.power(d).is_trivial() && top_gap(g) == k.zero();
    rep.kind = exc ? BoundKind::TransMultExc : BoundKind::TransMult;
    if (exc) {
        rep.add("p > 2d+1 and h not odd/even", route_b, detail_b);
        rep.note = "gate m | r or g_r(0): " + detail_a;
        try {
            rep.main_term = main_term_mult(g, chi, psi, r);
        } catch (const Error& e) {
            if (e.code() != ErrorCode::RootsNotInBaseField) throw;
            rep.main_magnitude = qpow(q, d / 2.0 + 1);
            rep.note += "; roots not in k, magnitude only";
        }
    } else {
        rep.add("m does not divide r or g_r(0) != 0, or p > 2d+1 and h not odd/even", route_a || route_b,
                detail_a + "; " + detail_b);
    }
    rep.finish();
    return rep;
}

namespace {

const ExtCtx& ext_of(const Poly& g, const Field& k, unsigned r) {
    const auto* ext = dynamic_cast<const ExtCtx*>(&g.field());
    if (!ext || &ext->base() != &k || ext->r() != r)
        throw Error(ErrorCode::CtxMismatch, "g must be over the degree-r extension of the character's field");
    return *ext;
}

}  // namespace

BoundReport report_homothety_additive(const Poly& g, const AdditiveChar& psi, std::uint64_t e, unsigned r) {
    const FieldCtx& k = psi.field();
    ext_of(g, k, r);
    const int d = g.degree();
    BoundReport rep;
    rep.kind = BoundKind::HomAdd;
    rep.add("psi nontrivial", !psi.is_trivial());
    rep.add("e divides q-1", e != 0 && (k.q() - 1) % e == 0);
    rep.add("d >= 1", d >= 1);
    rep.add("d prime to p", d >= 1 && d % k.p() != 0);
    if (d >= 1) {
        rep.bound = homothety_bound(static_cast<unsigned>(d), k.q(), r);
        rep.fiber_bound = homothety_fiber_bound(static_cast<unsigned>(d), k.q(), r);
    }
    rep.finish();
    return rep;
}

BoundReport report_homothety_multiplicative(const Poly& g, const MultChar& chi, std::uint64_t e, unsigned r) {
    const FieldCtx& k = chi.field();
    const ExtCtx& ext = ext_of(g, k, r);
    BoundReport rep;
    rep.kind = BoundKind::HomMult;
    rep.add("chi nontrivial", !chi.is_trivial());
    rep.add("e divides q-1", e != 0 && (k.q() - 1) % e == 0);
    if (g.is_zero()) {
        rep.add("g nonzero", false);
        rep.finish();
        return rep;
    }
    std::size_t a = 0;
    while (g.coeff(a) == ext.zero()) ++a;
    const Poly g0(g.field_ptr(), std::vector<FqElem>(g.coeffs().begin() + static_cast<std::ptrdiff_t>(a),
                                                     g.coeffs().end()));
    const int d0 = g0.degree();
    rep.add("deg g0 >= 1", d0 >= 1, "g = x^" + num(static_cast<std::int64_t>(a)) + " g0");
    rep.add("g0 square-free", squarefree(g0));
    rep.add("deg g0 prime to p", d0 >= 1 && d0 % k.p() != 0);
    rep.add("chi^d nontrivial", !chi.power(d0).is_trivial(), "d = deg g0 = " + num(d0));
    if (d0 >= 1) {
        rep.bound = homothety_bound(static_cast<unsigned>(d0), k.q(), r);
        rep.fiber_bound = homothety_fiber_bound(static_cast<unsigned>(d0), k.q(), r);
    }
    rep.finish();
    return rep;
}

}  // namespace fqs
