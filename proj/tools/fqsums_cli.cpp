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

#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "fqsums/error.hpp"
#include "fqsums/verify.hpp"

using namespace fqs;

namespace {

bool ends_with(const std::string& s, std::string_view suffix) {
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

int cmd_run(const std::string& path, std::optional<std::uint64_t> seed, std::optional<unsigned> workers,
            std::optional<std::uint64_t> cap, const std::string& out_path, bool no_time) {
    verify::ExperimentConfig cfg = verify::load_config(path);
    if (seed) cfg.seed = *seed;
    if (workers) cfg.workers = *workers;
    if (cap) cfg.cap = *cap;
    verify::validate(cfg);
    const auto rows = verify::run(cfg);

    if (out_path.empty()) {
        verify::write_csv(std::cout, rows, !no_time);
    } else {
        std::ofstream out(out_path);
        if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write '" + out_path + "'");
        if (ends_with(out_path, ".json")) {
            auto j = verify::rows_to_json(rows);
            if (no_time)
                for (auto& r : j) r["seconds"] = 0;
            out << j.dump(2) << '\n';
        } else {
            verify::write_csv(out, rows, !no_time);
        }
    }

    std::size_t applicable = 0, failed = 0;
    for (const auto& r : rows) {
        applicable += r.applicable;
        failed += !verify::row_passes(r);
    }
    std::cerr << rows.size() << " rows, " << applicable << " applicable, " << failed << " failed\n";
    return failed == 0 ? 0 : 1;
}

int cmd_identity(const std::string& kind, std::uint64_t seed, unsigned workers) {
    const auto kinds = kind == "all" ? verify::identity_kinds() : std::vector<std::string>{kind};
    bool ok = true;
    for (const auto& k : kinds) {
        const auto res = verify::check_identity(k, {seed, workers, verify::kMaxCap});
        std::cout << (res.pass ? "PASS " : "FAIL ") << res.name << ": " << res.detail << '\n';
        ok = ok && res.pass;
    }
    return ok ? 0 : 1;
}

int cmd_gen(const std::string& constraints, std::uint64_t p, unsigned s, std::uint64_t seed, unsigned count) {
    const auto c = verify::parse_constraints(constraints);
    auto k = make_field(p, s);
    std::mt19937_64 rng(seed);
    for (unsigned i = 0; i < count; ++i) std::cout << format_poly(verify::gen_poly(k, c, rng)) << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fqsums: brute-force character sums checked against their bounds"};
    app.require_subcommand(1);

    std::string config, out_path;
    std::optional<std::uint64_t> seed, cap;
    std::optional<unsigned> workers;
    bool no_time = false;
    auto* run = app.add_subcommand("run", "Run an experiment config and emit result rows");
    run->add_option("config", config, "Config file (JSON, version 1)")->required();
    run->add_option("--seed", seed, "Override the config seed");
    run->add_option("--workers", workers, "Override the worker count");
    run->add_option("--cap", cap, "Override the enumeration cap (at most 2^26)");
    run->add_option("--out", out_path, "Write rows to a .csv or .json file instead of stdout");
    run->add_flag("--no-time", no_time, "Leave the wall-time column empty");

    std::string kind;
    std::uint64_t id_seed = 1;
    unsigned id_workers = 1;
    auto* ident = app.add_subcommand("check-identity", "Check an algebraic identity exhaustively");
    ident->add_option("kind", kind, "gauss, counting, double-sum, remark, local-data, reassembly, weil-descent or all")
        ->required();
    ident->add_option("--seed", id_seed, "Seed for randomized identities");
    ident->add_option("--workers", id_workers, "Worker count");

    std::string constraints;
    std::uint64_t gen_p = 7, gen_seed = 1;
    unsigned gen_s = 1, gen_count = 1;
    auto* gen = app.add_subcommand("gen", "Generate random polynomials meeting constraints");
    gen->add_option("constraints", constraints, "e.g. d=3,a_dm1_zero,odd")->required();
    gen->add_option("--p", gen_p, "Characteristic");
    gen->add_option("--s", gen_s, "Base field degree");
    gen->add_option("--seed", gen_seed, "Seed");
    gen->add_option("--count", gen_count, "Number of polynomials");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) return cmd_run(config, seed, workers, cap, out_path, no_time);
        if (*ident) return cmd_identity(kind, id_seed, id_workers);
        if (*gen) return cmd_gen(constraints, gen_p, gen_s, gen_seed, gen_count);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
