// Copyright 2026 The diracsim Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "diracsim/diracsim.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;

struct Overrides {
    std::optional<std::string> out;
    std::optional<std::string> model;
    std::optional<std::uint64_t> seed;
    std::optional<unsigned> threads;
};

int report_error(const char *stage, ds_status s)
{
    std::cerr << "diracsim: " << stage << ": " << ds_status_name(s) << ": " << ds_last_error()
              << "\n";
    return s == DS_CONFIG || s == DS_IO || s == DS_INVALID_ARGUMENT ? kExitConfig : kExitNumeric;
}

std::optional<unsigned> env_threads(bool &bad)
{
    const char *v = std::getenv("DIRACSIM_THREADS");
    if (!v || !*v)
        return std::nullopt;
    char *end = nullptr;
    const unsigned long n = std::strtoul(v, &end, 10);
    if (*end != '\0' || n < 1 || n > 4096) {
        bad = true;
        return std::nullopt;
    }
    return static_cast<unsigned>(n);
}

// Flag, then environment, then config file.
int load(const std::string &path, const Overrides &o, ds_config **cfg)
{
    ds_status s = ds_config_load(path.c_str(), cfg);
    if (s != DS_OK)
        return report_error("config", s);

    bool bad_env = false;
    const char *env_out = std::getenv("DIRACSIM_OUT_DIR");
    const auto threads = o.threads ? o.threads : env_threads(bad_env);
    if (bad_env && !o.threads) {
        std::cerr << "diracsim: config: DIRACSIM_THREADS must be a positive integer\n";
        return kExitConfig;
    }
    if (o.out)
        s = ds_config_set_output_dir(*cfg, o.out->c_str());
    else if (env_out && *env_out)
        s = ds_config_set_output_dir(*cfg, env_out);
    if (s == DS_OK && threads)
        s = ds_config_set_threads(*cfg, *threads);
    if (s == DS_OK && o.model)
        s = ds_config_set_model(*cfg, o.model->c_str());
    if (s == DS_OK && o.seed)
        s = ds_config_set_seed(*cfg, *o.seed);
    if (s == DS_OK)
        s = ds_config_validate(*cfg);
    if (s != DS_OK)
        return report_error("config", s);
    return kExitOk;
}

int print_result(ds_run_result *r)
{
    std::cout << "status: " << ds_result_status(r) << "\n";
    std::cout << "manifest: " << ds_result_manifest_path(r) << "\n";
    for (std::size_t i = 0; i < ds_result_metric_count(r); ++i) {
        const char *name = nullptr;
        double value = 0.0;
        if (ds_result_metric(r, i, &name, &value) == DS_OK)
            std::printf("  %-28s %.10g\n", name, value);
    }
    for (std::size_t i = 0; i < ds_result_warning_count(r); ++i)
        std::cerr << "warning: " << ds_result_warning(r, i) << "\n";
    for (std::size_t i = 0; i < ds_result_failure_count(r); ++i)
        std::cerr << "failure: " << ds_result_failure(r, i) << "\n";
    const int code = ds_result_exit_code(r);
    ds_result_free(r);
    return code;
}

int execute(const std::string &path, const Overrides &o, bool compare)
{
    ds_config *cfg = nullptr;
    if (const int rc = load(path, o, &cfg); rc != kExitOk) {
        ds_config_free(cfg);
        return rc;
    }
    std::cout << "scenario: " << ds_config_scenario(cfg) << "  model: " << ds_config_model(cfg)
              << "  param_hash: " << ds_config_param_hash(cfg) << "\n";
    ds_run_result *r = nullptr;
    const ds_status s = compare ? ds_compare(cfg, &r) : ds_run(cfg, &r);
    ds_config_free(cfg);
    if (s != DS_OK)
        return report_error(compare ? "compare" : "run", s);
    return print_result(r);
}

int validate(const std::string &path, const Overrides &o)
{
    ds_config *cfg = nullptr;
    const int rc = load(path, o, &cfg);
    if (rc == kExitOk)
        std::cout << "valid: scenario=" << ds_config_scenario(cfg)
                  << " model=" << ds_config_model(cfg)
                  << " output_dir=" << ds_config_output_dir(cfg)
                  << " param_hash=" << ds_config_param_hash(cfg) << "\n";
    ds_config_free(cfg);
    return rc;
}

void add_overrides(CLI::App *cmd, Overrides &o, bool with_model)
{
    cmd->add_option("--out", o.out, "Output directory (overrides DIRACSIM_OUT_DIR)");
    cmd->add_option("--threads", o.threads, "Worker threads (overrides DIRACSIM_THREADS)")
        ->check(CLI::Range(1u, 4096u));
    cmd->add_option("--seed", o.seed, "Random seed");
    if (with_model)
        cmd->add_option("--model", o.model,
                        "continuum | effective_circuit | full_circuit | tomography_pipeline");
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Dirac-equation quantum simulation with a driven superconducting circuit"};
    app.set_version_flag("--version", std::string(ds_version()));
    app.require_subcommand(1);

    std::string config;
    Overrides run_o, validate_o, compare_o;

    auto *run = app.add_subcommand("run", "Run the scenario described by a YAML config");
    run->add_option("config", config, "Scenario config")->required();
    add_overrides(run, run_o, true);

    auto *val = app.add_subcommand("validate", "Check a config without running it");
    val->add_option("config", config, "Scenario config")->required();
    add_overrides(val, validate_o, true);

    auto *cmp = app.add_subcommand("compare", "Compare the full and effective circuit models");
    cmp->add_option("config", config, "Scenario config")->required();
    add_overrides(cmp, compare_o, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitConfig;
    }

    if (*run)
        return execute(config, run_o, false);
    if (*val)
        return validate(config, validate_o);
    return execute(config, compare_o, true);
}
