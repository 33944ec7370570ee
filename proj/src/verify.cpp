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

#include "fqsums/verify.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "fqsums/error.hpp"
#include "fqsums/invariance.hpp"
#include "fqsums/localdata.hpp"
#include "fqsums/numtheory.hpp"

namespace fqs::verify {

using nlohmann::json;

namespace {

[[noreturn]] void invalid(std::string_view field, std::string_view what) {
    throw Error(ErrorCode::ConfigInvalid, "field '" + std::string(field) + "': " + std::string(what));
}

std::uint64_t get_uint(const json& v, std::string_view field) {
    if (!v.is_number_integer() || v.get<std::int64_t>() < 0) invalid(field, "expected a nonnegative integer");
    return v.get<std::uint64_t>();
}

std::vector<std::uint64_t> get_uint_list(const json& v, std::string_view field) {
    std::vector<std::uint64_t> out;
    if (v.is_array()) {
        if (v.empty()) invalid(field, "empty list");
        for (const auto& x : v) out.push_back(get_uint(x, field));
    } else {
        out.push_back(get_uint(v, field));
    }
    return out;
}

Range get_range(const json& v, std::string_view field) {
    if (v.is_array()) {
        if (v.size() != 2) invalid(field, "expected N or [lo, hi]");
        const auto lo = get_uint(v[0], field), hi = get_uint(v[1], field);
        if (lo > hi) invalid(field, "lo > hi");
        return {static_cast<unsigned>(lo), static_cast<unsigned>(hi)};
    }
    const auto n = get_uint(v, field);
    return {static_cast<unsigned>(n), static_cast<unsigned>(n)};
}

const std::set<std::string>& constraint_names() {
    static const std::set<std::string> names{"a_dm1_zero", "roots_sum_zero", "squarefree", "splits",
                                             "odd",        "g0_nonzero",     "monic"};
    return names;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string flag(std::optional<bool> b) { return b ? (*b ? "1" : "0") : ""; }

double qpow(std::uint64_t q, double x) { return std::pow(static_cast<double>(q), x); }

const std::map<std::string, Family, std::less<>>& family_names() {
    static const std::map<std::string, Family, std::less<>> names{
        {"weil_add", Family::WeilAdd},   {"weil_mult", Family::WeilMult}, {"trans_add", Family::TransAdd},
        {"trans_mult", Family::TransMult}, {"hom_add", Family::HomAdd},   {"hom_mult", Family::HomMult}};
    return names;
}

}  // namespace

std::string_view to_string(Family family) noexcept {
    for (const auto& [name, f] : family_names())
        if (f == family) return name;
    return "?";
}

// ------------------------------------------------------------ config

ExperimentConfig parse_config(const json& j) {
    if (!j.is_object()) invalid("<root>", "expected an object");
    static const std::set<std::string> known{"version", "kind", "p",      "s",    "r",    "d",      "psi_b",
                                             "chi_order", "e",  "source", "trials", "cap", "seed", "workers"};
    for (const auto& [key, _] : j.items())
        if (!known.count(key)) invalid(key, "unknown field");
    if (!j.contains("version")) invalid("version", "missing");
    if (get_uint(j["version"], "version") != 1) invalid("version", "only version 1 is supported");

    ExperimentConfig c;
    if (!j.contains("kind") || !j["kind"].is_string()) invalid("kind", "missing or not a string");
    const auto it = family_names().find(j["kind"].get<std::string>());
    if (it == family_names().end()) invalid("kind", "unknown kind '" + j["kind"].get<std::string>() + "'");
    c.family = it->second;

    if (!j.contains("p")) invalid("p", "missing");
    c.primes = get_uint_list(j["p"], "p");
    if (j.contains("s")) c.s = static_cast<unsigned>(get_uint(j["s"], "s"));
    if (!j.contains("r")) invalid("r", "missing");
    c.r = get_range(j["r"], "r");
    if (j.contains("d")) c.d = get_range(j["d"], "d");
    if (j.contains("psi_b")) c.psi_b = get_uint(j["psi_b"], "psi_b");
    if (j.contains("chi_order")) c.chi_orders = get_uint_list(j["chi_order"], "chi_order");
    if (j.contains("e")) c.e_values = get_uint_list(j["e"], "e");
    if (j.contains("trials")) c.trials = static_cast<unsigned>(get_uint(j["trials"], "trials"));
    if (j.contains("cap")) c.cap = get_uint(j["cap"], "cap");
    if (j.contains("seed")) c.seed = get_uint(j["seed"], "seed");
    if (j.contains("workers")) c.workers = static_cast<unsigned>(get_uint(j["workers"], "workers"));

    if (!j.contains("source")) invalid("source", "missing");
    const json sources = j["source"].is_array() ? j["source"] : json::array({j["source"]});
    if (sources.empty()) invalid("source", "empty list");
    for (const auto& s : sources) {
        if (!s.is_object()) invalid("source", "expected an object");
        PolySource src;
        for (const auto& [key, _] : s.items())
            if (key != "explicit" && key != "random" && key != "d") invalid("source." + key, "unknown field");
        if (s.contains("explicit") == s.contains("random")) invalid("source", "exactly one of explicit/random");
        if (s.contains("explicit")) {
            if (!s["explicit"].is_string() || s["explicit"].get<std::string>().empty())
                invalid("source.explicit", "expected a coefficient string");
            src.coeffs = s["explicit"].get<std::string>();
            if (s.contains("d")) invalid("source.d", "only random sources take a degree");
        } else {
            if (!s["random"].is_array()) invalid("source.random", "expected a list of constraints");
            for (const auto& name : s["random"]) {
                if (!name.is_string()) invalid("source.random", "constraint names are strings");
                src.constraints.push_back(name.get<std::string>());
            }
            if (s.contains("d")) src.d = get_range(s["d"], "source.d");
        }
        c.sources.push_back(std::move(src));
    }
    validate(c);
    return c;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::ConfigInvalid, "cannot open config '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw Error(ErrorCode::ConfigInvalid, "config '" + path + "' is not valid JSON: " + e.what());
    }
    return parse_config(j);
}

void validate(const ExperimentConfig& c) {
    if (c.primes.empty()) invalid("p", "no primes");
    for (auto p : c.primes)
        if (!nt::is_prime(p)) invalid("p", std::to_string(p) + " is not prime");
    if (c.s < 1) invalid("s", "must be at least 1");
    for (auto p : c.primes) {
        const auto q = nt::checked_pow(p, c.s, std::uint64_t{1} << 32);
        if (!q) invalid("s", "p^s too large");
        if (c.psi_b >= *q) invalid("psi_b", "not an element code of F_q");
    }
    if (c.r.lo < 1) invalid("r", "must be at least 1");
    if (c.cap < 1 || c.cap > kMaxCap) invalid("cap", "must lie in [1, 2^26]");
    if (c.trials < 1) invalid("trials", "must be at least 1");
    const bool mult = c.family == Family::WeilMult || c.family == Family::TransMult || c.family == Family::HomMult;
    const bool hom = c.family == Family::HomAdd || c.family == Family::HomMult;
    if (mult && c.chi_orders.empty()) invalid("chi_order", "required for multiplicative kinds");
    if (!mult && !c.chi_orders.empty()) invalid("chi_order", "only multiplicative kinds take a character order");
    for (auto m : c.chi_orders)
        if (m < 2) invalid("chi_order", "order must be at least 2");
    if (hom && c.e_values.empty()) invalid("e", "required for homothety kinds");
    if (!hom && !c.e_values.empty()) invalid("e", "only homothety kinds take e");
    for (auto e : c.e_values)
        if (e < 1) invalid("e", "must be at least 1");
    if (c.sources.empty()) invalid("source", "missing");
    for (const auto& src : c.sources) {
        if (!src.is_random()) continue;
        if (!c.seed) invalid("seed", "required for random sources");
        if (!src.d && !c.d) invalid("d", "required for random sources");
        if ((src.d ? src.d->lo : c.d->lo) < 1) invalid("d", "must be at least 1");
        for (const auto& name : src.constraints)
            if (!constraint_names().count(name)) invalid("source.random", "unknown constraint '" + name + "'");
    }
}

// ------------------------------------------------------------ generation

Constraints parse_constraints(std::string_view list) {
    Constraints c;
    std::vector<std::string> names;
    std::string cur;
    std::istringstream in{std::string(list)};
    while (std::getline(in, cur, ',')) {
        while (!cur.empty() && cur.front() == ' ') cur.erase(cur.begin());
        while (!cur.empty() && cur.back() == ' ') cur.pop_back();
        if (cur.empty()) continue;
        if (cur.rfind("d=", 0) == 0) {
            try {
                c.d = static_cast<unsigned>(std::stoul(cur.substr(2)));
            } catch (const std::exception&) {
                throw Error(ErrorCode::ParseError, "bad degree '" + cur + "'");
            }
        } else {
            names.push_back(cur);
        }
    }
    const unsigned d = c.d;
    c = to_constraints(names, d);
    return c;
}

Constraints to_constraints(const std::vector<std::string>& names, unsigned d) {
    Constraints c;
    c.d = d;
    for (const auto& n : names) {
        if (n == "a_dm1_zero" || n == "roots_sum_zero") c.a_dm1_zero = true;
        else if (n == "squarefree") c.squarefree = true;
        else if (n == "splits") c.splits = true;
        else if (n == "odd") c.odd = true;
        else if (n == "g0_nonzero") c.g0_nonzero = true;
        else if (n == "monic") c.monic = true;
        else throw Error(ErrorCode::ParseError, "unknown constraint '" + n + "'");
    }
    return c;
}

bool satisfies(const Poly& g, const Constraints& c) {
    const Field& k = g.field();
    if (g.degree() != static_cast<int>(c.d)) return false;
    if (c.monic && g.lead() != k.one()) return false;
    if (c.a_dm1_zero && c.d >= 1 && g.coeff(c.d - 1) != k.zero()) return false;
    if (c.g0_nonzero && g.coeff(0) == k.zero()) return false;
    if (c.odd && parity_check(g) != Parity::Odd) return false;
    if (c.squarefree && !squarefree(g)) return false;
    if (c.splits && !roots_in(g, g.field_ptr()).splits) return false;
    return true;
}

Poly gen_poly(const FieldPtr& field, const Constraints& c, std::mt19937_64& rng) {
    if (c.d < 1) throw Error(ErrorCode::InvalidArgument, "generated polynomials need degree at least 1");
    const Field& k = *field;
    for (unsigned attempt = 0; attempt < kGenRetries; ++attempt) {
        const FqElem lead = c.monic ? k.one() : k.random_nonzero(rng);
        Poly g(field);
        if (c.splits) {
            g = Poly::constant(field, lead);
            FqElem sum = k.zero();
            for (unsigned i = 0; i < c.d; ++i) {
                FqElem root = k.random(rng);
                if (c.a_dm1_zero && i + 1 == c.d) root = k.neg(sum);
                sum = k.add(sum, root);
                g = g * Poly(field, {k.neg(root), k.one()});
            }
        } else {
            std::vector<FqElem> coeffs(c.d + 1);
            for (unsigned i = 0; i < c.d; ++i) coeffs[i] = k.random(rng);
            coeffs[c.d] = lead;
            if (c.a_dm1_zero) coeffs[c.d - 1] = k.zero();
            if (c.odd)
                for (unsigned i = 0; i <= c.d; i += 2) coeffs[i] = k.zero();
            g = Poly(field, std::move(coeffs));
        }
        if (satisfies(g, c)) return g;
    }
    throw Error(ErrorCode::Unsatisfiable, "no polynomial met the constraints after " + std::to_string(kGenRetries) +
                                              " attempts");
}

Poly gen_poly(const FieldPtr& field, const Constraints& c, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return gen_poly(field, c, rng);
}

// ------------------------------------------------------------ rows

double tolerance(std::uint64_t q, unsigned r) { return 1e-6 * std::sqrt(qpow(q, r)); }

void recompute_flags(ResultRow& row) {
    const double tol = tolerance(row.q, row.r);
    row.pass_weil = row.weil ? std::optional<bool>(row.sum_abs <= *row.weil + tol) : std::nullopt;
    row.pass_improved = is_strict(parse_bound_kind(row.kind)) ? row.residual < row.improved + tol
                                                              : row.residual <= row.improved + tol;
    row.pass_fiber = row.fiber_max && row.fiber_bound ? std::optional<bool>(*row.fiber_max <= *row.fiber_bound + tol)
                                                      : std::nullopt;
}

bool row_passes(const ResultRow& row) {
    return !row.applicable || (row.pass_improved && row.pass_weil.value_or(true) && row.pass_fiber.value_or(true));
}

bool all_pass(const std::vector<ResultRow>& rows) {
    for (const auto& r : rows)
        if (!row_passes(r)) return false;
    return true;
}

namespace {

struct Cell {
    std::shared_ptr<const FieldCtx> k;
    std::shared_ptr<const ExtCtx> ext;
    unsigned r;
    SumOptions opt;
};

using Clock = std::chrono::steady_clock;

ResultRow base_row(const Cell& cell, const Poly& g, const BoundReport& rep) {
    ResultRow row;
    row.kind = std::string(to_string(rep.kind));
    row.p = cell.k->p();
    row.s = cell.k->s();
    row.q = cell.k->q();
    row.r = cell.r;
    row.d = g.degree();
    row.poly = format_poly(g);
    row.improved = rep.bound;
    row.main = rep.main_term;
    row.applicable = rep.applicable;
    row.note = rep.note;
    row.report = rep;
    return row;
}

void finish_row(ResultRow& row, CharValue sum, Clock::time_point start) {
    row.sum = sum;
    row.sum_abs = std::abs(sum);
    if (row.main) row.residual = std::abs(sum - *row.main);
    else if (row.report.contains("main_magnitude"))
        row.residual = std::abs(row.sum_abs - row.report["main_magnitude"].get<double>());
    else row.residual = row.sum_abs;
    recompute_flags(row);
    row.seconds = std::chrono::duration<double>(Clock::now() - start).count();
}

Poly artin_schreier_lift(const Poly& g, std::uint64_t q) {
    const auto& k = g.field_ptr();
    return g.compose(Poly::monomial(k, k->one(), static_cast<unsigned>(q)) - Poly::x(k));
}

std::optional<double> homothety_weil(int d, std::uint64_t p, std::uint64_t q, std::uint64_t e, unsigned r) {
    if (d < 1 || d % p == 0) return std::nullopt;
    return (static_cast<double>(d) * static_cast<double>((q - 1) / e) - 1) * qpow(q, r / 2.0);
}

double fiber_max(const std::vector<CharValue>& fibers) {
    double m = 0;
    for (std::size_t mu = 1; mu < fibers.size(); ++mu) m = std::max(m, std::abs(fibers[mu]));
    return m;
}

void rows_weil_add(const Cell& c, const Poly& f, const AdditiveChar& psi, std::vector<ResultRow>& out) {
    const auto start = Clock::now();
    const BoundReport rep = report_weil_additive(f, psi, c.r);
    ResultRow row = base_row(c, f, rep);
    if (!rep.main_term && rep.applicable) row.weil = rep.bound;
    finish_row(row, sum_additive(f, psi, *c.ext, c.opt), start);
    out.push_back(std::move(row));
}

void rows_weil_mult(const Cell& c, const Poly& f, const MultChar& chi, std::vector<ResultRow>& out) {
    const auto start = Clock::now();
    const BoundReport rep = report_weil_multiplicative(f, chi, c.r);
    ResultRow row = base_row(c, f, rep);
    row.m = chi.order();
    if (rep.applicable) row.weil = rep.bound;
    finish_row(row, sum_multiplicative(f, chi, *c.ext, c.opt), start);
    out.push_back(std::move(row));
}

void rows_trans_add(const Cell& c, const Poly& g, const AdditiveChar& psi, std::vector<ResultRow>& out) {
    const auto start = Clock::now();
    const Poly f = artin_schreier_lift(g, c.k->q());
    const CharValue sum = sum_additive(f, psi, *c.ext, c.opt);
    std::optional<double> weil;
    if (!psi.is_trivial()) {
        const unsigned dp = as_reduce(f, psi).d_prime;
        if (dp >= 1) weil = weil_additive(dp, c.k->q(), c.r);
    }
    BoundReport first = report_translation_additive(g, psi, c.r, 0);
    std::size_t branches = 1;
    if (first.kind == BoundKind::TransAddExc && first.main_term) branches = local_branches(g).size();
    for (std::size_t b = 0; b < branches; ++b) {
        const BoundReport rep = b == 0 ? first : report_translation_additive(g, psi, c.r, b);
        ResultRow row = base_row(c, g, rep);
        row.weil = weil;
        if (rep.main_term && rep.alt_main_term) {
            const double lim = rep.bound + tolerance(c.k->q(), c.r);
            const bool display = std::abs(sum - *rep.main_term) < lim;
            if (!display && std::abs(sum - *rep.alt_main_term) < lim) {
                row.main = rep.alt_main_term;
                row.note += "; sign (-1)^d";
            } else {
                row.note += "; sign (-1)^(d-1)";
            }
        }
        finish_row(row, sum, start);
        out.push_back(std::move(row));
    }
}

void rows_trans_mult(const Cell& c, const Poly& g, const MultChar& chi, const AdditiveChar& psi,
                     std::vector<ResultRow>& out) {
    const auto start = Clock::now();
    const Poly f = artin_schreier_lift(g, c.k->q());
    const BoundReport rep = report_translation_multiplicative(g, chi, psi, c.r);
    ResultRow row = base_row(c, g, rep);
    row.m = chi.order();
    if (!f.is_constant()) {
        const PowerProfile prof = mth_power_test(f, static_cast<unsigned>(chi.order()));
        if (!prof.is_mth_power) row.weil = weil_multiplicative(prof, c.k->q(), c.r);
    }
    finish_row(row, sum_multiplicative(f, chi, *c.ext, c.opt), start);
    out.push_back(std::move(row));
}

void rows_hom_add(const Cell& c, const Poly& g, std::uint64_t e, const AdditiveChar& psi,
                  std::vector<ResultRow>& out) {
    const auto start = Clock::now();
    const std::uint64_t q = c.k->q();
    const Poly f = homothety_lift(g, e, q);
    const BoundReport rep = report_homothety_additive(g, psi, e, c.r);
    ResultRow row = base_row(c, g, rep);
    row.e = e;
    row.main = psi(trace(g.coeff(0), *c.ext));
    row.weil = homothety_weil(g.degree(), c.k->p(), q, e, c.r);
    row.fiber_max = fiber_max(fiber_sums_additive(g, psi, *c.ext, c.opt));
    row.fiber_bound = rep.fiber_bound;
    row.note = "main is the x = 0 term";
    finish_row(row, sum_additive(f, psi, *c.ext, c.opt), start);
    out.push_back(std::move(row));
}

void rows_hom_mult(const Cell& c, const Poly& g, std::uint64_t e, const MultChar& chi, std::vector<ResultRow>& out) {
    const auto start = Clock::now();
    const std::uint64_t q = c.k->q();
    const Poly f = homothety_lift(g, e, q);
    const BoundReport rep = report_homothety_multiplicative(g, chi, e, c.r);
    ResultRow row = base_row(c, g, rep);
    row.e = e;
    row.m = chi.order();
    row.main = chi(norm(g.coeff(0), *c.ext));
    if (!mth_power_test(g, static_cast<unsigned>(chi.order())).is_mth_power)
        row.weil = homothety_weil(g.degree(), c.k->p(), q, e, c.r);
    row.fiber_max = fiber_max(fiber_sums_multiplicative(g, chi, *c.ext, c.opt));
    row.fiber_bound = rep.fiber_bound;
    row.note = "main is the x = 0 term";
    finish_row(row, sum_multiplicative(f, chi, *c.ext, c.opt), start);
    out.push_back(std::move(row));
}

std::vector<Poly> polys_for(const ExperimentConfig& cfg, const FieldPtr& field, std::mt19937_64& rng) {
    std::vector<Poly> out;
    for (const auto& src : cfg.sources) {
        if (!src.is_random()) {
            out.push_back(parse_poly(field, src.coeffs));
            continue;
        }
        const Range d = src.d ? *src.d : *cfg.d;
        for (unsigned deg = d.lo; deg <= d.hi; ++deg)
            for (unsigned t = 0; t < cfg.trials; ++t)
                out.push_back(gen_poly(field, to_constraints(src.constraints, deg), rng));
    }
    return out;
}

}  // namespace

std::vector<ResultRow> run(const ExperimentConfig& cfg) {
    validate(cfg);
    std::mt19937_64 rng(cfg.seed.value_or(0));
    std::vector<ResultRow> rows;
    const bool hom = cfg.family == Family::HomAdd || cfg.family == Family::HomMult;
    for (auto p : cfg.primes) {
        auto k = make_field(p, cfg.s);
        const std::uint64_t q = k->q();
        const AdditiveChar psi(k, k->element(cfg.psi_b));
        std::vector<MultChar> chars;
        for (auto m : cfg.chi_orders)
            if ((q - 1) % m == 0) chars.push_back(MultChar::of_order(k, m));
        std::vector<Cell> cells;
        for (unsigned r = cfg.r.lo; r <= cfg.r.hi; ++r) {
            const auto size = nt::checked_pow(q, r);
            if (!size || *size > cfg.cap) continue;
            cells.push_back({k, make_extension(k, r), r, SumOptions{cfg.workers, cfg.cap}});
        }
        if (!hom) {
            for (const Poly& g : polys_for(cfg, k, rng))
                for (const Cell& c : cells) {
                    switch (cfg.family) {
                        case Family::WeilAdd: rows_weil_add(c, g, psi, rows); break;
                        case Family::TransAdd: rows_trans_add(c, g, psi, rows); break;
                        case Family::WeilMult:
                            for (const auto& chi : chars) rows_weil_mult(c, g, chi, rows);
                            break;
                        case Family::TransMult:
                            for (const auto& chi : chars) rows_trans_mult(c, g, chi, psi, rows);
                            break;
                        default: break;
                    }
                }
        } else {
            for (const Cell& c : cells)
                for (const Poly& g : polys_for(cfg, c.ext, rng))
                    for (auto e : cfg.e_values) {
                        if ((q - 1) % e != 0) continue;
                        if (cfg.family == Family::HomAdd) rows_hom_add(c, g, e, psi, rows);
                        else
                            for (const auto& chi : chars) rows_hom_mult(c, g, e, chi, rows);
                    }
        }
    }
    return rows;
}

// ------------------------------------------------------------ output

namespace {

const char* kHeader =
    "kind,p,s,q,r,d,m,poly,S_re,S_im,S_abs,weil,improved,main_re,main_im,residual,pass_weil,pass_improved,"
    "applicable,seconds";

std::string quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cur += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            out.push_back(std::move(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(std::move(cur));
    return out;
}

std::optional<double> opt_double(const std::string& s) {
    if (s.empty()) return std::nullopt;
    return std::stod(s);
}

}  // namespace

void write_csv(std::ostream& out, const std::vector<ResultRow>& rows, bool with_time) {
    out << kHeader << '\n';
    for (const auto& r : rows) {
        out << r.kind << ',' << r.p << ',' << r.s << ',' << r.q << ',' << r.r << ',' << r.d << ','
            << (r.m ? std::to_string(r.m) : "") << ',' << quote(r.poly) << ',' << fmt(r.sum.real()) << ','
            << fmt(r.sum.imag()) << ',' << fmt(r.sum_abs) << ',' << (r.weil ? fmt(*r.weil) : "") << ','
            << fmt(r.improved) << ',' << (r.main ? fmt(r.main->real()) : "") << ','
            << (r.main ? fmt(r.main->imag()) : "") << ',' << fmt(r.residual) << ',' << flag(r.pass_weil) << ','
            << flag(r.pass_improved) << ',' << flag(r.applicable) << ',';
        if (with_time) {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.6f", r.seconds);
            out << buf;
        }
        out << '\n';
    }
}

std::vector<ResultRow> read_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != kHeader) throw Error(ErrorCode::ParseError, "unexpected CSV header");
    std::vector<ResultRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto f = split_csv(line);
        if (f.size() != 20) throw Error(ErrorCode::ParseError, "CSV row with " + std::to_string(f.size()) + " fields");
        try {
            ResultRow r;
            r.kind = f[0];
            r.p = std::stoull(f[1]);
            r.s = static_cast<unsigned>(std::stoul(f[2]));
            r.q = std::stoull(f[3]);
            r.r = static_cast<unsigned>(std::stoul(f[4]));
            r.d = std::stoi(f[5]);
            r.m = f[6].empty() ? 0 : std::stoull(f[6]);
            r.poly = f[7];
            r.sum = {std::stod(f[8]), std::stod(f[9])};
            r.sum_abs = std::stod(f[10]);
            r.weil = opt_double(f[11]);
            r.improved = std::stod(f[12]);
            if (!f[13].empty()) r.main = CharValue(std::stod(f[13]), std::stod(f[14]));
            r.residual = std::stod(f[15]);
            r.applicable = f[18] == "1";
            r.seconds = f[19].empty() ? 0 : std::stod(f[19]);
            recompute_flags(r);
            rows.push_back(std::move(r));
        } catch (const std::invalid_argument&) {
            throw Error(ErrorCode::ParseError, "malformed number in CSV row");
        }
    }
    return rows;
}

json rows_to_json(const std::vector<ResultRow>& rows) {
    json out = json::array();
    for (const auto& r : rows) {
        json j;
        j["kind"] = r.kind;
        j["p"] = r.p;
        j["s"] = r.s;
        j["q"] = r.q;
        j["r"] = r.r;
        j["d"] = r.d;
        j["m"] = r.m ? json(r.m) : json(nullptr);
        j["e"] = r.e ? json(r.e) : json(nullptr);
        j["poly"] = r.poly;
        j["S_re"] = r.sum.real();
        j["S_im"] = r.sum.imag();
        j["S_abs"] = r.sum_abs;
        j["weil"] = r.weil ? json(*r.weil) : json(nullptr);
        j["improved"] = r.improved;
        j["main_re"] = r.main ? json(r.main->real()) : json(nullptr);
        j["main_im"] = r.main ? json(r.main->imag()) : json(nullptr);
        j["residual"] = r.residual;
        j["fiber_max"] = r.fiber_max ? json(*r.fiber_max) : json(nullptr);
        j["fiber_bound"] = r.fiber_bound ? json(*r.fiber_bound) : json(nullptr);
        j["pass_weil"] = r.pass_weil ? json(*r.pass_weil) : json(nullptr);
        j["pass_improved"] = r.pass_improved;
        j["pass_fiber"] = r.pass_fiber ? json(*r.pass_fiber) : json(nullptr);
        j["applicable"] = r.applicable;
        j["seconds"] = r.seconds;
        j["note"] = r.note;
        j["report"] = r.report;
        out.push_back(std::move(j));
    }
    return out;
}

std::vector<ResultRow> rows_from_json(const json& j) {
    if (!j.is_array()) throw Error(ErrorCode::ParseError, "expected an array of rows");
    std::vector<ResultRow> rows;
    auto opt = [](const json& v) { return v.is_null() ? std::optional<double>() : std::optional<double>(v.get<double>()); };
    try {
        for (const auto& x : j) {
            ResultRow r;
            r.kind = x.at("kind").get<std::string>();
            r.p = x.at("p").get<std::uint64_t>();
            r.s = x.at("s").get<unsigned>();
            r.q = x.at("q").get<std::uint64_t>();
            r.r = x.at("r").get<unsigned>();
            r.d = x.at("d").get<int>();
            r.m = x.at("m").is_null() ? 0 : x.at("m").get<std::uint64_t>();
            r.e = x.at("e").is_null() ? 0 : x.at("e").get<std::uint64_t>();
            r.poly = x.at("poly").get<std::string>();
            r.sum = {x.at("S_re").get<double>(), x.at("S_im").get<double>()};
            r.sum_abs = x.at("S_abs").get<double>();
            r.weil = opt(x.at("weil"));
            r.improved = x.at("improved").get<double>();
            if (!x.at("main_re").is_null()) r.main = CharValue(x["main_re"].get<double>(), x["main_im"].get<double>());
            r.residual = x.at("residual").get<double>();
            r.fiber_max = opt(x.at("fiber_max"));
            r.fiber_bound = opt(x.at("fiber_bound"));
            r.applicable = x.at("applicable").get<bool>();
            r.seconds = x.at("seconds").get<double>();
            r.note = x.at("note").get<std::string>();
            r.report = x.at("report");
            recompute_flags(r);
            rows.push_back(std::move(r));
        }
    } catch (const json::exception& e) {
        throw Error(ErrorCode::ParseError, std::string("malformed row: ") + e.what());
    }
    return rows;
}

// ------------------------------------------------------------ identities

namespace {

std::vector<std::uint64_t> primes_upto(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t p = 2; p <= n; ++p)
        if (nt::is_prime(p)) out.push_back(p);
    return out;
}

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

IdentityResult gauss_identity() {
    double worst = 0, worst_quad = 0;
    unsigned count = 0;
    for (auto p : primes_upto(100)) {
        auto k = make_field(p, 1);
        const auto psi = AdditiveChar::canonical(k);
        const double q = static_cast<double>(k->q());
        for (std::uint64_t j = 1; j + 1 < k->q(); ++j) {
            const CharValue g = gauss_sum(MultChar(k, j), psi);
            worst = std::max(worst, std::abs(std::norm(g) / q - 1));
            ++count;
        }
        if (p > 2) {
            const auto rho = MultChar::quadratic(k);
            const CharValue g = gauss_sum(rho, psi);
            worst_quad = std::max(worst_quad, std::abs(g * g - rho(k->from_int(-1)) * q) / q);
        }
    }
    return {"gauss", worst <= 1e-9 && worst_quad <= 1e-9,
            std::to_string(count) + " characters, max | |g|^2/q - 1 | = " + sci(worst) +
                ", max quadratic |g^2 - rho(-1) q|/q = " + sci(worst_quad)};
}

IdentityResult counting_identity() {
    unsigned combos = 0, bad = 0;
    for (auto p : primes_upto(100)) {
        for (unsigned s = 1; *nt::checked_pow(p, s) <= 10000; ++s) {
            auto k = make_field(p, s);
            const std::uint64_t q = k->q();
            for (unsigned r = 1;; ++r) {
                const auto n = nt::checked_pow(q, r);
                if (!n || *n > 10000) break;
                auto ext = make_extension(k, r);
                std::vector<std::uint64_t> hist(*n, 0);
                for (std::uint64_t x = 0; x < *n; ++x) ++hist[ext->raw_sub(ext->raw_pow(x, q), x)];
                for (std::uint64_t t = 0; t < *n; ++t)
                    if (hist[t] != (ext->raw_trace(t) == 0 ? q : 0)) ++bad;
                ++combos;
            }
        }
    }
    return {"counting", bad == 0,
            std::to_string(combos) + " (p, s, r) triples with q^r <= 10^4, " + std::to_string(bad) + " mismatches"};
}

IdentityResult double_sum_identity(const IdentityOptions& opt) {
    std::mt19937_64 rng(opt.seed);
    double worst = 0;
    bool ok = true;
    unsigned count = 0;
    const SumOptions so{opt.workers, opt.cap};
    for (std::uint64_t p : {5, 7}) {
        auto k = make_field(p, 1);
        const auto psi = AdditiveChar::canonical(k);
        for (int i = 0; i < 50; ++i) {
            const unsigned d = 1 + static_cast<unsigned>(rng() % 5);
            const Poly g = gen_poly(k, Constraints{d}, rng);
            const Poly f = artin_schreier_lift(g, k->q());
            for (unsigned r : {1u, 2u}) {
                auto ext = make_extension(k, r);
                const double err = std::abs(sum_additive(f, psi, *ext, so) - double_sum_check(g, psi, *ext, so));
                worst = std::max(worst, err / std::sqrt(qpow(k->q(), r)));
                ok = ok && err <= tolerance(k->q(), r);
                ++count;
            }
        }
    }
    return {"double-sum", ok, std::to_string(count) + " comparisons, max error / sqrt(q^r) = " + sci(worst)};
}

IdentityResult remark_identity(const IdentityOptions& opt) {
    bool ok = true;
    std::string detail;
    for (std::uint64_t p : {3, 5, 7, 11, 13}) {
        auto k = make_field(p, 1);
        auto ext = make_extension(k, 2);
        const auto rho = MultChar::quadratic(k);
        const Poly g = Poly::from_ints(ext, {1, 0, 1});
        const CharValue v = fiber_sum_multiplicative(g, rho, *ext, k->one(), SumOptions{opt.workers, opt.cap});
        const double q = static_cast<double>(k->q());
        const bool real = std::abs(v.imag()) <= 1e-6;
        const bool exact = std::abs(v.real() - (q + 1)) <= 1e-6 || std::abs(v.real() - (q - 1)) <= 1e-6;
        ok = ok && real && exact && v.real() >= q - 1 - 1e-6;
        detail += (detail.empty() ? "" : ", ") + std::string("q=") + std::to_string(k->q()) + ": " + sci(v.real());
    }
    return {"remark", ok, detail};
}

IdentityResult local_data_identity(const IdentityOptions& opt) {
    std::mt19937_64 rng(opt.seed);
    const std::vector<std::uint64_t> primes{7, 11, 13, 17, 19, 23, 29, 31, 37};
    unsigned accepted = 0, bad = 0, attempts = 0;
    while (accepted < 100 && attempts < 100000) {
        ++attempts;
        auto k = make_field(primes[rng() % primes.size()], 1);
        const unsigned dmax = static_cast<unsigned>(std::min<std::uint64_t>(k->p() - 1, 7));
        const unsigned d = 2 + static_cast<unsigned>(rng() % (dmax - 1));
        const Poly g = gen_poly(k, Constraints{d}, rng);
        const FqElem dad = k->mul(k->from_int(d), g.lead());
        if (!has_all_nth_roots(*k, k->neg(dad), 2 * (d - 1))) continue;
        ++accepted;
        for (std::size_t b = 0; b < local_branches(g).size(); ++b) {
            const LocalData ld = compute_local_data(g, d + 6, b);
            const LocalData wide = compute_local_data(g, d + 10, b);
            if (k->mul(k->pow(ld.s0, d - 1), dad) != k->from_int(-1)) ++bad;
            if (k->mul(ld.h_coeffs[d - 1], dad) != k->neg(g.coeff(d - 1))) ++bad;
            if (ld.h_coeffs != wide.h_coeffs) ++bad;
        }
    }
    return {"local-data", accepted == 100 && bad == 0,
            std::to_string(accepted) + " polynomials, " + std::to_string(bad) + " failed identities"};
}

IdentityResult reassembly_identity(const IdentityOptions& opt) {
    std::mt19937_64 rng(opt.seed);
    auto k = make_field(13, 1);
    auto ext = make_extension(k, 2);
    const auto psi = AdditiveChar::canonical(k);
    const SumOptions so{opt.workers, opt.cap};
    double worst = 0;
    unsigned count = 0;
    for (std::uint64_t e : {2, 3, 4}) {
        const auto chi = MultChar::of_order(k, e == 4 ? 4 : 3);
        for (int i = 0; i < 10; ++i) {
            const Poly g = gen_poly(ext, Constraints{1 + static_cast<unsigned>(rng() % 3)}, rng);
            for (const Reassembly& ra :
                 {reassembly_additive(g, e, psi, *ext, so), reassembly_multiplicative(g, e, chi, *ext, so)}) {
                worst = std::max(worst, std::abs(ra.direct - ra.reassembled));
                ++count;
            }
        }
    }
    return {"reassembly", worst <= tolerance(13, 2),
            std::to_string(count) + " decompositions, max |direct - reassembled| = " + sci(worst)};
}

IdentityResult weil_descent_identity(const IdentityOptions& opt) {
    bool ok = true;
    unsigned count = 0;
    std::mt19937_64 rng(opt.seed);
    for (auto [p, r] : {std::pair{5u, 2u}, {7u, 3u}, {13u, 2u}, {3u, 4u}}) {
        auto k = make_field(p, 1);
        auto ext = make_extension(k, r);
        std::vector<FqElem> basis;
        for (unsigned i = 0; i < r; ++i) basis.push_back(ext->element(*nt::checked_pow(k->q(), i)));
        for (int i = 0; i < 5; ++i) {
            const Poly g = gen_poly(ext, Constraints{1 + static_cast<unsigned>(rng() % 3)}, rng);
            ok = ok && weil_descent_check(g, *ext, basis, 20, opt.seed + i);
            ++count;
        }
    }
    return {"weil-descent", ok, std::to_string(count) + " polynomials, 20 points each"};
}

}  // namespace

std::vector<std::string> identity_kinds() {
    return {"gauss", "counting", "double-sum", "remark", "local-data", "reassembly", "weil-descent"};
}

IdentityResult check_identity(std::string_view kind, const IdentityOptions& opt) {
    if (kind == "gauss") return gauss_identity();
    if (kind == "counting") return counting_identity();
    if (kind == "double-sum") return double_sum_identity(opt);
    if (kind == "remark") return remark_identity(opt);
    if (kind == "local-data") return local_data_identity(opt);
    if (kind == "reassembly") return reassembly_identity(opt);
    if (kind == "weil-descent") return weil_descent_identity(opt);
    throw Error(ErrorCode::InvalidArgument, "unknown identity '" + std::string(kind) + "'");
}

}  // namespace fqs::verify
