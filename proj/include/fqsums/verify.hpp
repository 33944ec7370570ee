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

#ifndef FQSUMS_VERIFY_HPP
#define FQSUMS_VERIFY_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "fqsums/boundbook.hpp"

namespace fqs::verify {

inline constexpr std::uint64_t kMaxCap = std::uint64_t{1} << 26;
inline constexpr unsigned kGenRetries = 10000;

enum class Family { WeilAdd, WeilMult, TransAdd, TransMult, HomAdd, HomMult };

std::string_view to_string(Family family) noexcept;

struct Range {
    unsigned lo = 1;
    unsigned hi = 1;
};

struct PolySource {
    /// Comma-separated coefficients a_0,...,a_d; empty for random sources.
    std::string coeffs;
    std::vector<std::string> constraints;
    std::optional<Range> d;

    bool is_random() const noexcept { return coeffs.empty(); }
};

struct ExperimentConfig {
    Family family = Family::WeilAdd;
    std::vector<std::uint64_t> primes;
    unsigned s = 1;
    Range r;
    std::optional<Range> d;
    std::uint64_t psi_b = 1;
    std::vector<std::uint64_t> chi_orders;
    std::vector<std::uint64_t> e_values;
    std::vector<PolySource> sources;
    unsigned trials = 1;
    std::uint64_t cap = std::uint64_t{1} << 22;
    std::optional<std::uint64_t> seed;
    unsigned workers = 1;
};

/// Validates a version-1 config; throws ConfigInvalid naming the field.
ExperimentConfig parse_config(const nlohmann::json& j);
ExperimentConfig load_config(const std::string& path);
void validate(const ExperimentConfig& config);

struct Constraints {
    unsigned d = 0;
    bool a_dm1_zero = false;
    bool squarefree = false;
    bool splits = false;
    bool odd = false;
    bool g0_nonzero = false;
    bool monic = false;
};

/// Flags by name (a_dm1_zero, roots_sum_zero, squarefree, splits, odd,
/// g0_nonzero, monic) plus an optional "d=N" token.
Constraints parse_constraints(std::string_view list);
Constraints to_constraints(const std::vector<std::string>& names, unsigned d);
bool satisfies(const Poly& g, const Constraints& c);
/// Throws Unsatisfiable after kGenRetries attempts.
Poly gen_poly(const FieldPtr& field, const Constraints& c, std::mt19937_64& rng);
Poly gen_poly(const FieldPtr& field, const Constraints& c, std::uint64_t seed);

struct ResultRow {
    std::string kind;
    std::uint64_t p = 0;
    unsigned s = 1;
    std::uint64_t q = 0;
    unsigned r = 1;
    int d = 0;
    std::uint64_t m = 0;
    std::uint64_t e = 0;
    std::string poly;
    CharValue sum;
    double sum_abs = 0;
    std::optional<double> weil;
    double improved = 0;
    std::optional<CharValue> main;
    double residual = 0;
    std::optional<bool> pass_weil;
    bool pass_improved = false;
    bool applicable = false;
    double seconds = 0;
    std::optional<double> fiber_max;
    std::optional<double> fiber_bound;
    std::optional<bool> pass_fiber;
    std::string note;
    nlohmann::json report;
};

double tolerance(std::uint64_t q, unsigned r);
/// Recomputes pass flags from the stored numbers.
void recompute_flags(ResultRow& row);
bool row_passes(const ResultRow& row);
bool all_pass(const std::vector<ResultRow>& rows);

std::vector<ResultRow> run(const ExperimentConfig& config);

void write_csv(std::ostream& out, const std::vector<ResultRow>& rows, bool with_time = true);
std::vector<ResultRow> read_csv(std::istream& in);
nlohmann::json rows_to_json(const std::vector<ResultRow>& rows);
std::vector<ResultRow> rows_from_json(const nlohmann::json& j);

struct IdentityOptions {
    std::uint64_t seed = 1;
    unsigned workers = 1;
    std::uint64_t cap = std::uint64_t{1} << 22;
};

struct IdentityResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

/// gauss, counting, double-sum, remark, local-data, reassembly, weil-descent.
IdentityResult check_identity(std::string_view kind, const IdentityOptions& opt = {});
std::vector<std::string> identity_kinds();

}  // namespace fqs::verify

#endif
