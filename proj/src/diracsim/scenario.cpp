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

#include "diracsim/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <random>
#include <set>
#include <sstream>

#include <json.hpp>
#include <yaml-cpp/yaml.h>

#include "diracsim/error.hpp"
#include "diracsim/fock.hpp"
#include "diracsim/io.hpp"
#include "diracsim/parallel.hpp"
#include "diracsim/tomography.hpp"

#ifndef DIRACSIM_VERSION
#define DIRACSIM_VERSION "0.0.0"
#endif

namespace diracsim::scenario {

using circuit::Qubit;
using circuit::QubitResonatorState;
using nlohmann::json;

std::string version() { return DIRACSIM_VERSION; }

const char *to_string(ScenarioId id)
{
    switch (id) {
    case ScenarioId::zitterbewegung:
        return "zitterbewegung";
    case ScenarioId::positive_branch:
        return "positive_branch";
    case ScenarioId::klein:
        return "klein";
    case ScenarioId::compare:
        return "compare";
    }
    return "?";
}

const char *to_string(Model m)
{
    switch (m) {
    case Model::continuum:
        return "continuum";
    case Model::effective_circuit:
        return "effective_circuit";
    case Model::full_circuit:
        return "full_circuit";
    case Model::tomography_pipeline:
        return "tomography_pipeline";
    }
    return "?";
}

ScenarioId scenario_from_string(const std::string &s)
{
    for (auto id : {ScenarioId::zitterbewegung, ScenarioId::positive_branch, ScenarioId::klein,
                    ScenarioId::compare})
        if (s == to_string(id))
            return id;
    fail(ErrorCode::Config, "scenario: unknown scenario '" + s + "'");
}

Model model_from_string(const std::string &s)
{
    for (auto m : {Model::continuum, Model::effective_circuit, Model::full_circuit,
                   Model::tomography_pipeline})
        if (s == to_string(m))
            return m;
    fail(ErrorCode::Config, "model: unknown model '" + s + "'");
}

namespace {

[[noreturn]] void config_error(const std::string &field, const std::string &what)
{
    fail(ErrorCode::Config, field + ": " + what);
}

void check(bool cond, const std::string &field, const std::string &what)
{
    if (!cond)
        config_error(field, what);
}

} // namespace

dirac::DiracParams ScenarioConfig::continuum_params() const
{
    if (continuum)
        return *continuum;
    return circuit::effective_params(circuit).dirac();
}

double ScenarioConfig::t_end() const
{
    if (scenario == ScenarioId::compare)
        return times.empty() ? 0.0 : times.back();
    return times.empty() ? 0.0 : *std::max_element(times.begin(), times.end());
}

void ScenarioConfig::validate() const
{
    check(threads >= 1, "threads", "must be at least 1");
    check(!output_dir.empty(), "output_dir", "must not be empty");
    check(!times.empty(), "times", "need at least one sample time");
    for (std::size_t k = 0; k < times.size(); ++k) {
        check(std::isfinite(times[k]) && times[k] >= 0.0, "times", "must be finite and non-negative");
        check(k == 0 || times[k] > times[k - 1], "times", "must be strictly increasing");
    }
    check(std::isfinite(trace_step) && trace_step > 0.0, "trace_step", "must be positive");
    try {
        grid.validate();
    } catch (const Error &e) {
        config_error("grid", e.what());
    }
    check(std::isfinite(frame.t_f) && frame.t_f > 0.0, "frame.t_f", "must be positive");

    const bool circuit_model = model != Model::continuum;
    switch (scenario) {
    case ScenarioId::positive_branch:
        check(model == Model::continuum, "model", "positive_branch runs on the continuum model only");
        check(positive.c > 0.0, "positive_branch.c", "must be positive");
        check(positive.m >= 0.0, "positive_branch.m", "must be non-negative");
        check(positive.delta_p > 0.0, "positive_branch.delta_p", "must be positive");
        check(std::isfinite(positive.p0), "positive_branch.p0", "must be finite");
        check(positive.trace_step > 0.0, "positive_branch.trace_step", "must be positive");
        for (double d : positive.delta_p_sweep)
            check(d > 0.0, "positive_branch.delta_p_sweep", "entries must be positive");
        return;
    case ScenarioId::klein:
        check(model == Model::effective_circuit || model == Model::full_circuit, "model",
              "klein needs effective_circuit or full_circuit");
        check(circuit.eps_2 == 0.0, "circuit.eps_2", "must be 0 for the massless klein scenario");
        break;
    case ScenarioId::compare:
        check(compare.validity_warning > 0.0, "compare.validity_warning", "must be positive");
        if (compare.optimize_phases) {
            check(!compare.phi_grid.empty(), "compare.phi_grid", "must not be empty");
            check(!compare.delta_grid.empty(), "compare.delta_grid", "must not be empty");
        }
        break;
    case ScenarioId::zitterbewegung:
        break;
    }

    try {
        circuit.validate();
    } catch (const Error &e) {
        config_error("circuit", e.what());
    }
    check(n_max >= 2 && n_max <= 200, "circuit.n_max", "must lie in [2, 200]");
    check(n_points >= 64, "continuum.n_points", "must be at least 64");
    if (continuum) {
        check(continuum->c > 0.0, "continuum.c", "must be positive");
        check(continuum->m >= 0.0, "continuum.m", "must be non-negative");
    } else if (model == Model::continuum) {
        check(circuit::effective_params(circuit).c_star > 0.0, "continuum",
              "circuit mapping gives c = 0; set continuum.c and continuum.m");
    }
    check(std::isfinite(p0), "initial.p0", "must be finite");
    if (circuit_model || scenario == ScenarioId::compare)
        check(0.5 * p0 * p0 < static_cast<double>(n_max) / 4.0, "initial.p0",
              "coherent amplitude too large for circuit.n_max");
    const double axis = std::hypot(rotation.axis[0], rotation.axis[1], rotation.axis[2]);
    check(axis > 0.0, "initial.rotation.axis", "must be non-zero");
    check(std::isfinite(rotation.angle), "initial.rotation.angle", "must be finite");
    check(integrator.rel_tol >= 1e-13 && integrator.rel_tol <= 1e-3, "integrator.rel_tol",
          "must lie in [1e-13, 1e-3]");
    check(integrator.min_step > 0.0, "integrator.min_step", "must be positive");
    if (model == Model::tomography_pipeline && tomography.rabi_fit) {
        check(tomography.lambda_2 > 0.0, "tomography.lambda_2", "must be positive");
        check(tomography.T1_p > 0.0, "tomography.T1_p", "must be positive");
        check(tomography.noise_sigma >= 0.0, "tomography.noise_sigma", "must be non-negative");
        check(tomography.fit_n_max >= 1, "tomography.fit_n_max", "must be at least 1");
        check(tomography.tau_step > 0.0 && tomography.tau_end > tomography.tau_step,
              "tomography.tau_step", "need 0 < tau_step < tau_end");
        check(tomography.tau_end / tomography.tau_step + 1.0 >= 2.0 * (tomography.fit_n_max + 1),
              "tomography.tau_end", "too few Rabi samples for fit_n_max");
    }
}

std::string ScenarioConfig::canonical() const
{
    std::ostringstream os;
    auto num = [&](const char *k, double v) { os << k << '=' << io::format_double(v) << '\n'; };
    auto list = [&](const char *k, const RVector &v) {
        os << k << '=';
        for (std::size_t i = 0; i < v.size(); ++i)
            os << (i ? "," : "") << io::format_double(v[i]);
        os << '\n';
    };
    os << "scenario=" << to_string(scenario) << "\nmodel=" << to_string(model) << "\nseed=" << seed
       << '\n';
    const auto &c = circuit;
    num("omega_0", c.omega_0);
    num("omega_r", c.omega_r);
    num("lambda", c.lambda);
    num("eps_1", c.eps_1);
    num("nu_1", c.nu_1);
    num("phi_1", c.phi_1);
    num("eps_2", c.eps_2);
    num("nu_2", c.nu_2);
    num("phi_2", c.phi_2);
    num("Omega", c.Omega);
    num("theta", c.theta);
    num("delta", c.delta);
    num("eps_drive", c.eps_drive);
    num("drive_detuning", c.drive_detuning);
    num("n_max", static_cast<double>(n_max));
    num("rel_tol", integrator.rel_tol);
    num("min_step", integrator.min_step);
    if (continuum) {
        num("continuum.c", continuum->c);
        num("continuum.m", continuum->m);
    }
    num("n_points", static_cast<double>(n_points));
    num("p0", p0);
    list("axis", RVector(rotation.axis.begin(), rotation.axis.end()));
    num("angle", rotation.angle);
    list("times", times);
    num("trace_step", trace_step);
    list("grid", {grid.x_min, grid.x_max, static_cast<double>(grid.n_x), grid.p_min, grid.p_max,
                  static_cast<double>(grid.n_p)});
    list("frame", {frame.e.theta_0, frame.g.theta_0, frame.e.theta_k, frame.g.theta_k, frame.t_f});
    list("positive", {positive.c, positive.m, positive.p0, positive.delta_p, positive.trace_step});
    list("positive.sweep", positive.delta_p_sweep);
    list("tomography", {tomography.rabi_fit ? 1.0 : 0.0, tomography.noise_sigma,
                        static_cast<double>(tomography.fit_n_max), tomography.tau_step,
                        tomography.tau_end, tomography.lambda_2, tomography.T1_p});
    num("compare.optimize", compare.optimize_phases ? 1.0 : 0.0);
    list("compare.phi", compare.phi_grid);
    list("compare.delta", compare.delta_grid);
    num("compare.validity_warning", compare.validity_warning);
    return os.str();
}

std::string ScenarioConfig::param_hash() const { return io::fnv1a_hex(canonical()); }

ScenarioConfig default_config(ScenarioId id)
{
    ScenarioConfig cfg;
    cfg.scenario = id;
    cfg.circuit = circuit::CircuitParams::zitterbewegung_device();
    cfg.tomography.lambda_2 = mhz_to_rad_per_ns(20.92);
    for (int i = 0; i < 8; ++i)
        cfg.compare.phi_grid.push_back(2.0 * kPi * i / 8.0);
    for (int d = -2; d <= 2; ++d)
        cfg.compare.delta_grid.push_back(mhz_to_rad_per_ns(d));
    cfg.frame.e = {0.260, 1.510};
    cfg.frame.g = {0.045, 1.217};
    cfg.frame.t_f = 330.0;
    switch (id) {
    case ScenarioId::zitterbewegung:
        cfg.output_dir = "out/zitterbewegung";
        break;
    case ScenarioId::positive_branch:
        cfg.model = Model::continuum;
        cfg.output_dir = "out/positive_branch";
        cfg.times = {0.0, 2.0, 4.0};
        cfg.grid = {-6.0, 6.0, 121, -4.0, 6.0, 121};
        break;
    case ScenarioId::klein:
        cfg.output_dir = "out/klein";
        cfg.circuit = circuit::CircuitParams::klein_device();
        cfg.p0 = 0.0;
        cfg.rotation = {{0.0, 1.0, 0.0}, 0.0};
        cfg.times = {0.0, 76.0, 140.0, 216.0, 288.0};
        cfg.frame.e = {0.0, 1.402};
        cfg.frame.g = {0.0, 1.162};
        cfg.frame.t_f = 280.0;
        break;
    case ScenarioId::compare:
        cfg.output_dir = "out/compare";
        cfg.times = {0.0, 330.0};
        cfg.p0 = 0.0;
        break;
    }
    return cfg;
}

namespace {

// YAML access with field paths in every error.

void allow_keys(const YAML::Node &n, const std::string &path, std::initializer_list<const char *> keys)
{
    if (!n.IsMap())
        config_error(path.empty() ? "config" : path, "expected a mapping");
    for (const auto &kv : n) {
        const auto key = kv.first.as<std::string>();
        bool known = false;
        for (const char *k : keys)
            known = known || key == k;
        if (!known)
            config_error(path.empty() ? key : path + "." + key, "unknown field");
    }
}

std::string join(const std::string &path, const char *key)
{
    return path.empty() ? std::string(key) : path + "." + key;
}

double as_number(const YAML::Node &n, const std::string &field)
{
    if (!n.IsScalar())
        config_error(field, "expected a number");
    try {
        const double v = io::parse_double(n.Scalar());
        if (!std::isfinite(v))
            config_error(field, "must be finite");
        return v;
    } catch (const Error &) {
        config_error(field, "expected a number, got '" + n.Scalar() + "'");
    }
}

double as_frequency(const YAML::Node &n, const std::string &field)
{
    if (!n.IsScalar())
        config_error(field, "expected a frequency such as '20 MHz'");
    std::istringstream is(n.Scalar());
    std::string value, unit, extra;
    is >> value >> unit >> extra;
    if (unit.empty())
        config_error(field, "frequency needs a unit (MHz or rad_per_ns)");
    if (!extra.empty())
        config_error(field, "unexpected text after the unit");
    double v = 0.0;
    try {
        v = io::parse_double(value);
    } catch (const Error &) {
        config_error(field, "cannot parse '" + value + "'");
    }
    if (unit == "MHz")
        return mhz_to_rad_per_ns(v);
    if (unit == "rad_per_ns")
        return v;
    config_error(field, "unknown unit '" + unit + "' (use MHz or rad_per_ns)");
}

bool as_bool(const YAML::Node &n, const std::string &field)
{
    try {
        return n.as<bool>();
    } catch (const YAML::Exception &) {
        config_error(field, "expected true or false");
    }
}

std::size_t as_count(const YAML::Node &n, const std::string &field)
{
    const double v = as_number(n, field);
    if (v < 0.0 || v != std::floor(v) || v > 1e9)
        config_error(field, "expected a non-negative integer");
    return static_cast<std::size_t>(v);
}

RVector as_list(const YAML::Node &n, const std::string &field, bool frequency = false)
{
    if (!n.IsSequence())
        config_error(field, "expected a list");
    RVector out;
    for (std::size_t i = 0; i < n.size(); ++i) {
        const std::string f = field + "[" + std::to_string(i) + "]";
        out.push_back(frequency ? as_frequency(n[i], f) : as_number(n[i], f));
    }
    return out;
}

template <typename F>
void opt(const YAML::Node &n, const char *key, F &&apply)
{
    if (const YAML::Node v = n[key])
        apply(v);
}

void read_circuit(const YAML::Node &n, ScenarioConfig &cfg)
{
    const std::string path = "circuit";
    allow_keys(n, path,
               {"omega_0", "omega_r", "lambda", "eps_1", "nu_1", "phi_1", "eps_2", "nu_2", "phi_2",
                "Omega", "theta", "delta", "eps_drive", "drive_detuning", "n_max"});
    auto &c = cfg.circuit;
    struct FreqField {
        const char *key;
        double *dst;
    };
    for (auto f : {FreqField{"omega_0", &c.omega_0}, FreqField{"omega_r", &c.omega_r},
                   FreqField{"lambda", &c.lambda}, FreqField{"eps_1", &c.eps_1},
                   FreqField{"nu_1", &c.nu_1}, FreqField{"eps_2", &c.eps_2},
                   FreqField{"nu_2", &c.nu_2}, FreqField{"Omega", &c.Omega},
                   FreqField{"delta", &c.delta}, FreqField{"eps_drive", &c.eps_drive},
                   FreqField{"drive_detuning", &c.drive_detuning}})
        opt(n, f.key, [&](const YAML::Node &v) { *f.dst = as_frequency(v, join(path, f.key)); });
    opt(n, "phi_1", [&](const YAML::Node &v) { c.phi_1 = as_number(v, "circuit.phi_1"); });
    opt(n, "phi_2", [&](const YAML::Node &v) { c.phi_2 = as_number(v, "circuit.phi_2"); });
    opt(n, "theta", [&](const YAML::Node &v) { c.theta = as_number(v, "circuit.theta"); });
    opt(n, "n_max", [&](const YAML::Node &v) { cfg.n_max = as_count(v, "circuit.n_max"); });
}

} // namespace

ScenarioConfig parse_config(const std::string &yaml_text)
{
    YAML::Node root;
    try {
        root = YAML::Load(yaml_text);
    } catch (const YAML::Exception &e) {
        fail(ErrorCode::Config, std::string("config: YAML syntax error: ") + e.what());
    }
    if (!root || root.IsNull())
        fail(ErrorCode::Config, "config: empty document");
    allow_keys(root, "",
               {"scenario", "model", "seed", "output_dir", "threads", "circuit", "integrator",
                "continuum", "initial", "times", "trace_step", "grid", "frame", "positive_branch",
                "tomography", "compare"});
    if (!root["scenario"])
        fail(ErrorCode::Config, "scenario: missing");
    ScenarioConfig cfg = default_config(scenario_from_string(root["scenario"].as<std::string>()));

    opt(root, "model", [&](const YAML::Node &v) { cfg.model = model_from_string(v.as<std::string>()); });
    opt(root, "seed", [&](const YAML::Node &v) { cfg.seed = as_count(v, "seed"); });
    opt(root, "output_dir", [&](const YAML::Node &v) { cfg.output_dir = v.as<std::string>(); });
    opt(root, "threads", [&](const YAML::Node &v) {
        cfg.threads = static_cast<unsigned>(as_count(v, "threads"));
    });
    opt(root, "circuit", [&](const YAML::Node &v) { read_circuit(v, cfg); });
    opt(root, "integrator", [&](const YAML::Node &v) {
        allow_keys(v, "integrator", {"rel_tol", "min_step", "initial_step"});
        opt(v, "rel_tol", [&](const YAML::Node &x) { cfg.integrator.rel_tol = as_number(x, "integrator.rel_tol"); });
        opt(v, "min_step", [&](const YAML::Node &x) { cfg.integrator.min_step = as_number(x, "integrator.min_step"); });
        opt(v, "initial_step", [&](const YAML::Node &x) {
            cfg.integrator.initial_step = as_number(x, "integrator.initial_step");
        });
    });
    opt(root, "continuum", [&](const YAML::Node &v) {
        allow_keys(v, "continuum", {"c", "m", "n_points"});
        if (v["c"] || v["m"]) {
            if (!v["c"] || !v["m"])
                config_error("continuum", "c and m must be given together");
            cfg.continuum = dirac::DiracParams{as_number(v["c"], "continuum.c"), as_number(v["m"], "continuum.m")};
        }
        opt(v, "n_points", [&](const YAML::Node &x) { cfg.n_points = as_count(x, "continuum.n_points"); });
    });
    opt(root, "initial", [&](const YAML::Node &v) {
        allow_keys(v, "initial", {"p0", "rotation"});
        opt(v, "p0", [&](const YAML::Node &x) { cfg.p0 = as_number(x, "initial.p0"); });
        opt(v, "rotation", [&](const YAML::Node &r) {
            allow_keys(r, "initial.rotation", {"axis", "angle"});
            opt(r, "axis", [&](const YAML::Node &a) {
                const RVector ax = as_list(a, "initial.rotation.axis");
                if (ax.size() != 3)
                    config_error("initial.rotation.axis", "expected three components");
                cfg.rotation.axis = {ax[0], ax[1], ax[2]};
            });
            opt(r, "angle", [&](const YAML::Node &a) { cfg.rotation.angle = as_number(a, "initial.rotation.angle"); });
        });
    });
    opt(root, "times", [&](const YAML::Node &v) { cfg.times = as_list(v, "times"); });
    opt(root, "trace_step", [&](const YAML::Node &v) { cfg.trace_step = as_number(v, "trace_step"); });
    opt(root, "grid", [&](const YAML::Node &v) {
        allow_keys(v, "grid", {"x_min", "x_max", "n_x", "p_min", "p_max", "n_p"});
        auto &g = cfg.grid;
        opt(v, "x_min", [&](const YAML::Node &x) { g.x_min = as_number(x, "grid.x_min"); });
        opt(v, "x_max", [&](const YAML::Node &x) { g.x_max = as_number(x, "grid.x_max"); });
        opt(v, "p_min", [&](const YAML::Node &x) { g.p_min = as_number(x, "grid.p_min"); });
        opt(v, "p_max", [&](const YAML::Node &x) { g.p_max = as_number(x, "grid.p_max"); });
        opt(v, "n_x", [&](const YAML::Node &x) { g.n_x = as_count(x, "grid.n_x"); });
        opt(v, "n_p", [&](const YAML::Node &x) { g.n_p = as_count(x, "grid.n_p"); });
    });
    opt(root, "frame", [&](const YAML::Node &v) {
        allow_keys(v, "frame", {"theta_e0", "theta_g0", "theta_e", "theta_g", "t_f"});
        opt(v, "theta_e0", [&](const YAML::Node &x) { cfg.frame.e.theta_0 = as_number(x, "frame.theta_e0"); });
        opt(v, "theta_g0", [&](const YAML::Node &x) { cfg.frame.g.theta_0 = as_number(x, "frame.theta_g0"); });
        opt(v, "theta_e", [&](const YAML::Node &x) { cfg.frame.e.theta_k = as_number(x, "frame.theta_e"); });
        opt(v, "theta_g", [&](const YAML::Node &x) { cfg.frame.g.theta_k = as_number(x, "frame.theta_g"); });
        opt(v, "t_f", [&](const YAML::Node &x) { cfg.frame.t_f = as_number(x, "frame.t_f"); });
    });
    opt(root, "positive_branch", [&](const YAML::Node &v) {
        allow_keys(v, "positive_branch", {"c", "m", "p0", "delta_p", "delta_p_sweep", "trace_step"});
        auto &pb = cfg.positive;
        opt(v, "c", [&](const YAML::Node &x) { pb.c = as_number(x, "positive_branch.c"); });
        opt(v, "m", [&](const YAML::Node &x) { pb.m = as_number(x, "positive_branch.m"); });
        opt(v, "p0", [&](const YAML::Node &x) { pb.p0 = as_number(x, "positive_branch.p0"); });
        opt(v, "delta_p", [&](const YAML::Node &x) { pb.delta_p = as_number(x, "positive_branch.delta_p"); });
        opt(v, "delta_p_sweep", [&](const YAML::Node &x) {
            pb.delta_p_sweep = as_list(x, "positive_branch.delta_p_sweep");
        });
        opt(v, "trace_step", [&](const YAML::Node &x) { pb.trace_step = as_number(x, "positive_branch.trace_step"); });
    });
    opt(root, "tomography", [&](const YAML::Node &v) {
        allow_keys(v, "tomography",
                   {"rabi_fit", "noise_sigma", "fit_n_max", "tau_step", "tau_end", "lambda_2", "T1_p"});
        auto &t = cfg.tomography;
        opt(v, "rabi_fit", [&](const YAML::Node &x) { t.rabi_fit = as_bool(x, "tomography.rabi_fit"); });
        opt(v, "noise_sigma", [&](const YAML::Node &x) { t.noise_sigma = as_number(x, "tomography.noise_sigma"); });
        opt(v, "fit_n_max", [&](const YAML::Node &x) { t.fit_n_max = as_count(x, "tomography.fit_n_max"); });
        opt(v, "tau_step", [&](const YAML::Node &x) { t.tau_step = as_number(x, "tomography.tau_step"); });
        opt(v, "tau_end", [&](const YAML::Node &x) { t.tau_end = as_number(x, "tomography.tau_end"); });
        opt(v, "lambda_2", [&](const YAML::Node &x) { t.lambda_2 = as_frequency(x, "tomography.lambda_2"); });
        opt(v, "T1_p", [&](const YAML::Node &x) { t.T1_p = as_number(x, "tomography.T1_p"); });
    });
    opt(root, "compare", [&](const YAML::Node &v) {
        allow_keys(v, "compare", {"optimize_phases", "phi_grid", "delta_grid", "validity_warning"});
        auto &c = cfg.compare;
        opt(v, "optimize_phases", [&](const YAML::Node &x) { c.optimize_phases = as_bool(x, "compare.optimize_phases"); });
        opt(v, "phi_grid", [&](const YAML::Node &x) { c.phi_grid = as_list(x, "compare.phi_grid"); });
        opt(v, "delta_grid", [&](const YAML::Node &x) { c.delta_grid = as_list(x, "compare.delta_grid", true); });
        opt(v, "validity_warning", [&](const YAML::Node &x) {
            c.validity_warning = as_number(x, "compare.validity_warning");
        });
    });
    cfg.validate();
    return cfg;
}

ScenarioConfig load_config(const std::string &path)
{
    std::string text;
    try {
        text = io::read_file(path);
    } catch (const Error &e) {
        fail(ErrorCode::Config, std::string("config: ") + e.what());
    }
    return parse_config(text);
}

double RunResult::metric(const std::string &name) const
{
    for (const auto &m : metrics)
        if (m.name == name)
            return m.value;
    fail(ErrorCode::InvalidArgument, "RunResult: no metric named " + name);
}

RVector trace_times(const ScenarioConfig &cfg)
{
    RVector t;
    const double end = cfg.t_end();
    for (std::size_t k = 0;; ++k) {
        const double v = static_cast<double>(k) * cfg.trace_step;
        if (v > end + 1e-9)
            break;
        t.push_back(v);
    }
    t.insert(t.end(), cfg.times.begin(), cfg.times.end());
    std::sort(t.begin(), t.end());
    RVector out;
    for (double v : t)
        if (out.empty() || v - out.back() > 1e-9)
            out.push_back(v);
    return out;
}

dirac::SpinorState continuum_initial(const ScenarioConfig &cfg)
{
    const double dp = 1.0 / std::sqrt(2.0);
    const auto grid = dirac::MomentumGrid::for_packet(cfg.p0, dp, cfg.n_points);
    const Mat2 r = cfg.rotation.matrix();
    return dirac::gaussian_product_state(grid, cfg.p0, dp, 0.0, r * dirac::ket_g());
}

QubitResonatorState circuit_initial(const ScenarioConfig &cfg)
{
    return circuit::prepare_initial(cfg.p0, cfg.rotation, cfg.n_max);
}

std::vector<QubitResonatorState> circuit_states(const ScenarioConfig &cfg, Model model,
                                                const RVector &times)
{
    const auto initial = circuit_initial(cfg);
    const auto &p = cfg.circuit;
    if (model == Model::full_circuit) {
        const auto traj =
            circuit::integrate(initial, circuit::FullModel(p, cfg.n_max), 0.0, times.back(), times,
                               cfg.integrator);
        std::vector<QubitResonatorState> out;
        const double rate = circuit::frame_rate(p);
        for (std::size_t k = 0; k < times.size(); ++k)
            out.push_back(circuit::to_effective_frame(traj.states[k], rate, p.theta, times[k]));
        return out;
    }
    const CMatrix h = circuit::effective_hamiltonian(circuit::effective_params(p), p.theta,
                                                     p.eps_drive, cfg.n_max);
    return circuit::evolve_static(initial, h, times).states;
}

Traces continuum_traces(const ScenarioConfig &cfg, const RVector &times)
{
    const auto params = cfg.continuum_params();
    const auto initial = continuum_initial(cfg);
    Traces tr;
    tr.times = times;
    tr.mean_x.resize(times.size());
    tr.mean_p.resize(times.size());
    tr.entropy.resize(times.size());
    tr.excited.resize(times.size());
    parallel_for(times.size(), [&](std::size_t k) {
        const auto s = dirac::evolve(initial, times[k], params);
        tr.mean_x[k] = dirac::mean_position_numeric(s).value;
        tr.mean_p[k] = dirac::mean_momentum(s);
        const auto rho = dirac::reduced_pseudospin(s);
        tr.entropy[k] = dirac::entanglement_entropy(rho);
        tr.excited[k] = rho.rho(0, 0).real();
    });
    return tr;
}

Traces circuit_traces(const std::vector<QubitResonatorState> &states, const RVector &times)
{
    Traces tr;
    tr.times = times;
    for (const auto &s : states) {
        tr.mean_x.push_back(s.mean_x());
        tr.mean_p.push_back(s.mean_p());
        tr.entropy.push_back(s.entropy());
        tr.excited.push_back(s.population(Qubit::e));
    }
    return tr;
}

namespace {

const FrameBranch &branch(const ScenarioConfig &cfg, Qubit q)
{
    return q == Qubit::e ? cfg.frame.e : cfg.frame.g;
}

wigner::WignerGrid rabi_fit_wigner(const ScenarioConfig &cfg, const QubitResonatorState &state,
                                   Qubit outcome, double t)
{
    const auto &tc = cfg.tomography;
    const auto &g = cfg.grid;
    const FrameBranch &fb = branch(cfg, outcome);
    const CColumn psi = state.field_component(outcome);
    const double pop = psi.squaredNorm();
    if (pop <= 1e-12)
        fail(ErrorCode::ZeroPopulation, "tomography: outcome has zero population");
    const CColumn rotated =
        circuit::frame_correction(CColumn(psi / std::sqrt(pop)), fb.theta_0, fb.theta_k, t, cfg.frame.t_f);
    tomography::RabiModel model;
    model.lambda_2 = tc.lambda_2;
    model.T1_p = tc.T1_p;
    RVector taus;
    for (std::size_t k = 0; static_cast<double>(k) * tc.tau_step <= tc.tau_end + 1e-9; ++k)
        taus.push_back(static_cast<double>(k) * tc.tau_step);
    RVector values(g.size());
    parallel_for(g.size(), [&](std::size_t idx) {
        const std::size_t i = idx / g.n_p, j = idx % g.n_p;
        auto d = fock::displaced_distribution(rotated, tomography::gamma_at(g.x(i), g.p(j)));
        d.probs.resize(tc.fit_n_max + 1);
        auto trace = tomography::simulate_rabi(tomography::PhotonDistribution::from(d.probs), model, taus);
        if (tc.noise_sigma > 0.0) {
            std::seed_seq seq{static_cast<std::uint32_t>(cfg.seed), static_cast<std::uint32_t>(cfg.seed >> 32),
                              static_cast<std::uint32_t>(outcome), static_cast<std::uint32_t>(std::lround(t * 1000.0)),
                              static_cast<std::uint32_t>(idx)};
            std::mt19937_64 rng(seq);
            std::normal_distribution<double> noise(0.0, tc.noise_sigma);
            for (double &v : trace.values)
                v += noise(rng);
        }
        values[idx] = tomography::wigner_point(tomography::fit_photon_distribution(trace, tc.fit_n_max).dist);
    });
    return wigner::WignerGrid(g, std::move(values), 1.0);
}

} // namespace

wigner::WignerGrid circuit_conditional_wigner(const ScenarioConfig &cfg, Model model,
                                              const QubitResonatorState &state, Qubit outcome, double t)
{
    wigner::WignerGrid w;
    if (model == Model::tomography_pipeline) {
        if (cfg.tomography.rabi_fit) {
            w = rabi_fit_wigner(cfg, state, outcome, t);
        } else {
            const FrameBranch &fb = branch(cfg, outcome);
            w = tomography::tomography_wigner(state, outcome,
                                              {fb.theta_0, fb.theta_k, t, cfg.frame.t_f}, cfg.grid);
        }
    } else {
        w = wigner::wigner_from_fock_density(state.conditional_field(outcome), cfg.grid);
    }
    w.provenance.scenario = to_string(cfg.scenario);
    w.provenance.model = to_string(model);
    w.provenance.outcome = outcome == Qubit::e ? "e" : "g";
    w.provenance.time = t;
    return w;
}

std::size_t count_modes(const RVector &density)
{
    if (density.size() < 3)
        return density.empty() ? 0 : 1;
    const double top = *std::max_element(density.begin(), density.end());
    if (!(top > 0.0))
        return 0;
    std::vector<std::size_t> peaks;
    for (std::size_t k = 1; k + 1 < density.size(); ++k)
        if (density[k] >= 0.1 * top && density[k] > density[k - 1] && density[k] >= density[k + 1])
            peaks.push_back(k);
    // Merge neighbours that are not separated by a dip below 90% of the smaller peak.
    std::size_t modes = peaks.empty() ? 0 : 1;
    for (std::size_t a = 0; a + 1 < peaks.size(); ++a) {
        const std::size_t l = peaks[a], r = peaks[a + 1];
        const double dip = *std::min_element(density.begin() + static_cast<long>(l),
                                             density.begin() + static_cast<long>(r) + 1);
        if (dip < 0.9 * std::min(density[l], density[r]))
            ++modes;
    }
    return modes;
}

CompareReport compare_models(const ScenarioConfig &cfg)
{
    CompareReport rep;
    RVector times;
    for (std::size_t k = 0;; ++k) {
        const double v = static_cast<double>(k) * cfg.trace_step;
        if (v > cfg.t_end() + 1e-9)
            break;
        times.push_back(v);
    }
    rep.times = times;
    auto p = cfg.circuit;
    rep.validity = circuit::effective_params(p).validity;
    const auto warn = [&](const char *name, double v) {
        if (v > cfg.compare.validity_warning) {
            std::ostringstream os;
            os << "validity ratio " << name << " = " << v << " exceeds " << cfg.compare.validity_warning;
            rep.warnings.push_back(os.str());
        }
    };
    warn("lambda/nu_1", rep.validity.coupling_over_nu1);
    warn("K/nu_1", rep.validity.carrier_over_nu1);
    warn("sideband/2K", rep.validity.sideband_over_2k);

    if (cfg.compare.optimize_phases) {
        const auto x0 = circuit::prepare_initial(0.0, {{0.0, 1.0, 0.0}, kPi / 2.0}, cfg.n_max);
        const RVector ref = circuit::effective_model_excited_population(p, x0, times, cfg.integrator);
        circuit::PhaseSearchGrids grids{cfg.compare.phi_grid, cfg.compare.phi_grid, cfg.compare.delta_grid};
        rep.phases = circuit::optimize_phases(p, ref, times, x0, grids, cfg.integrator);
        rep.optimized = true;
        p.phi_1 = rep.phases.phi_1;
        p.phi_2 = rep.phases.phi_2;
        p.delta = rep.phases.delta;
    } else {
        rep.phases = {p.phi_1, p.phi_2, p.delta, 0.0};
    }
    ScenarioConfig run = cfg;
    run.circuit = p;
    rep.full = circuit_traces(circuit_states(run, Model::full_circuit, times), times);
    rep.effective = circuit_traces(circuit_states(run, Model::effective_circuit, times), times);
    for (std::size_t k = 0; k < times.size(); ++k) {
        rep.max_dpe = std::max(rep.max_dpe, std::abs(rep.full.excited[k] - rep.effective.excited[k]));
        rep.max_dx = std::max(rep.max_dx, std::abs(rep.full.mean_x[k] - rep.effective.mean_x[k]));
        rep.max_ds = std::max(rep.max_ds, std::abs(rep.full.entropy[k] - rep.effective.entropy[k]));
    }
    return rep;
}

namespace {

std::string time_tag(double t) { return "t" + io::format_double(t); }

class Emitter {
public:
    explicit Emitter(const ScenarioConfig &cfg, Model model)
        : cfg_(cfg),
          header_{{"scenario", to_string(cfg.scenario)},
                  {"model", to_string(model)},
                  {"param_hash", cfg.param_hash()},
                  {"version", version()},
                  {"seed", std::to_string(cfg.seed)}},
          prefix_(std::string(to_string(cfg.scenario)) + "_")
    {
        result_.manifest_path = (std::filesystem::path(cfg.output_dir) / "manifest.json").string();
    }

    void table(const std::string &name, const io::Table &t)
    {
        std::ostringstream os;
        io::write_table_csv(os, t, header_);
        write(name + ".csv", os.str());
    }

    void wigner(const std::string &name, const wigner::WignerGrid &w)
    {
        const io::Header extra{header_[2], header_[3], header_[4]};
        std::ostringstream os;
        io::write_wigner_csv(os, w, extra);
        write(name + ".csv", os.str());
        write(name + ".json", io::wigner_to_json(w, extra));
    }

    void json_doc(const std::string &name, const json &j)
    {
        json doc = j;
        doc["provenance"] = provenance();
        write(name + ".json", doc.dump(1) + "\n");
    }

    void metric(const std::string &name, double v) { result_.metrics.push_back({name, v}); }
    void warning(const std::string &w) { result_.warnings.push_back(w); }

    void snapshot_failure(double t, const Error &e)
    {
        std::ostringstream os;
        os << "snapshot t=" << io::format_double(t) << ": " << error_code_name(e.code()) << ": "
           << e.what();
        result_.failures.push_back(os.str());
    }

    void numeric_failure(const Error &e)
    {
        result_.failures.push_back(std::string(error_code_name(e.code())) + ": " + e.what());
        fatal_ = true;
    }

    RunResult finish()
    {
        if (fatal_) {
            result_.status = "failed";
            result_.exit_code = 3;
        } else if (!result_.failures.empty()) {
            result_.status = "partial";
            result_.exit_code = 4;
        }
        json m;
        m["provenance"] = provenance();
        m["status"] = result_.status;
        m["exit_code"] = result_.exit_code;
        m["files"] = result_.files;
        json metrics = json::object();
        for (const auto &x : result_.metrics)
            metrics[x.name] = x.value;
        m["metrics"] = metrics;
        m["warnings"] = result_.warnings;
        m["failures"] = result_.failures;
        io::write_file(result_.manifest_path, m.dump(1) + "\n");
        return result_;
    }

    const std::string &prefix() const { return prefix_; }

private:
    json provenance() const
    {
        json p;
        for (const auto &[k, v] : header_)
            p[k] = v;
        return p;
    }

    void write(const std::string &name, const std::string &content)
    {
        const std::string file = prefix_ + name;
        io::write_file((std::filesystem::path(cfg_.output_dir) / file).string(), content);
        result_.files.push_back(file);
    }

    const ScenarioConfig &cfg_;
    io::Header header_;
    std::string prefix_;
    RunResult result_;
    bool fatal_ = false;
};

std::size_t index_of(const RVector &times, double t)
{
    for (std::size_t k = 0; k < times.size(); ++k)
        if (std::abs(times[k] - t) <= 1e-9)
            return k;
    fail(ErrorCode::Internal, "sample time missing from the trace grid");
}

void emit_marginal(Emitter &em, const std::string &name, const wigner::WignerGrid &w)
{
    RVector xs(w.grid().n_x);
    for (std::size_t i = 0; i < xs.size(); ++i)
        xs[i] = w.grid().x(i);
    em.table(name, {{"x", "P"}, {xs, wigner::marginal_x(w)}});
}

wigner::WignerGrid normalized(wigner::WignerGrid w)
{
    const auto prov = w.provenance;
    wigner::WignerGrid out = wigner::scaled(w, 1.0 / w.weight());
    out.provenance = prov;
    return out;
}

struct Snapshot {
    std::optional<wigner::WignerGrid> w_e, w_g;
    wigner::WignerGrid all;
    double p_e = 0.0;
};

void emit_snapshot(Emitter &em, const Snapshot &s, double t)
{
    const std::string tag = time_tag(t);
    if (s.w_g) {
        em.wigner("W_g_" + tag, *s.w_g);
        em.metric("min_W_g_" + tag, wigner::moments(*s.w_g).min_value);
    }
    if (s.w_e) {
        em.wigner("W_e_" + tag, *s.w_e);
        em.metric("min_W_e_" + tag, wigner::moments(*s.w_e).min_value);
    }
    em.wigner("W_all_" + tag, s.all);
    em.metric("min_W_all_" + tag, wigner::moments(s.all).min_value);
    emit_marginal(em, "marginal_" + tag, s.all);
    em.metric("modes_" + tag, static_cast<double>(count_modes(wigner::marginal_x(s.all))));
}

Snapshot continuum_snapshot(const ScenarioConfig &cfg, const dirac::SpinorState &state, double t)
{
    Snapshot s;
    const double pe = std::max(0.0, dirac::reduced_pseudospin(state).rho(0, 0).real());
    s.p_e = pe;
    auto tag = [&](wigner::WignerGrid w, const char *outcome) {
        w.provenance = {to_string(cfg.scenario), "continuum", outcome, t};
        return w;
    };
    if (pe > 1e-12)
        s.w_e = tag(normalized(wigner::conditional_wigner(state, dirac::ket_e(), cfg.grid)), "e");
    if (1.0 - pe > 1e-12)
        s.w_g = tag(normalized(wigner::conditional_wigner(state, dirac::ket_g(), cfg.grid)), "g");
    s.all = tag(wigner::unconditional_wigner(state, wigner::ProjectionBasis::computational(), cfg.grid), "all");
    return s;
}

Snapshot circuit_snapshot(const ScenarioConfig &cfg, Model model, const QubitResonatorState &state, double t)
{
    Snapshot s;
    s.p_e = state.population(Qubit::e);
    const double pg = state.population(Qubit::g);
    if (s.p_e > 1e-12)
        s.w_e = circuit_conditional_wigner(cfg, model, state, Qubit::e, t);
    if (pg > 1e-12)
        s.w_g = circuit_conditional_wigner(cfg, model, state, Qubit::g, t);
    if (s.w_e && s.w_g) {
        s.all = wigner::combine_conditional(*s.w_e, *s.w_g, s.p_e / (s.p_e + pg), pg / (s.p_e + pg));
    } else {
        s.all = s.w_e ? *s.w_e : *s.w_g;
        s.all.provenance.outcome = "all";
    }
    return s;
}

double correlation(const RVector &x, const RVector &y)
{
    const double n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        mx += x[k] / n;
        my += y[k] / n;
    }
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        sxy += (x[k] - mx) * (y[k] - my);
        sxx += (x[k] - mx) * (x[k] - mx);
        syy += (y[k] - my) * (y[k] - my);
    }
    return sxy / std::sqrt(sxx * syy);
}

double slope(const RVector &x, const RVector &y)
{
    const double n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        mx += x[k] / n;
        my += y[k] / n;
    }
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        sxy += (x[k] - mx) * (y[k] - my);
        sxx += (x[k] - mx) * (x[k] - mx);
    }
    return sxy / sxx;
}

void emit_traces(Emitter &em, const Traces &tr, bool with_excited)
{
    io::Table t{{"t", "mean_x", "mean_p", "entropy"}, {tr.times, tr.mean_x, tr.mean_p, tr.entropy}};
    if (with_excited) {
        t.names.push_back("P_e");
        t.columns.push_back(tr.excited);
    }
    em.table("trace", t);
    em.metric("mean_x_final", tr.mean_x.back());
    em.metric("entropy_final", tr.entropy.back());
}

} // namespace

RunResult run_zitterbewegung(const ScenarioConfig &cfg)
{
    cfg.validate();
    require(cfg.scenario == ScenarioId::zitterbewegung, "run_zitterbewegung: wrong scenario");
    set_thread_count(cfg.threads);
    Emitter em(cfg, cfg.model);
    const RVector times = trace_times(cfg);
    if (cfg.model == Model::continuum) {
        try {
            emit_traces(em, continuum_traces(cfg, times), true);
        } catch (const Error &e) {
            em.numeric_failure(e);
            return em.finish();
        }
        const auto initial = continuum_initial(cfg);
        const auto params = cfg.continuum_params();
        for (double t : cfg.times) {
            try {
                emit_snapshot(em, continuum_snapshot(cfg, dirac::evolve(initial, t, params), t), t);
            } catch (const Error &e) {
                em.snapshot_failure(t, e);
            }
        }
        return em.finish();
    }
    std::vector<QubitResonatorState> states;
    try {
        states = circuit_states(cfg, cfg.model, times);
        emit_traces(em, circuit_traces(states, times), true);
    } catch (const Error &e) {
        em.numeric_failure(e);
        return em.finish();
    }
    for (double t : cfg.times) {
        try {
            emit_snapshot(em, circuit_snapshot(cfg, cfg.model, states[index_of(times, t)], t), t);
        } catch (const Error &e) {
            em.snapshot_failure(t, e);
        }
    }
    return em.finish();
}

RunResult run_positive_branch(const ScenarioConfig &cfg)
{
    cfg.validate();
    require(cfg.scenario == ScenarioId::positive_branch, "run_positive_branch: wrong scenario");
    set_thread_count(cfg.threads);
    Emitter em(cfg, Model::continuum);
    const auto &pb = cfg.positive;
    const dirac::DiracParams params{pb.c, pb.m};
    const auto zero = [](double) { return 0.0; };
    try {
        RVector sweep_s(pb.delta_p_sweep.size());
        parallel_for(sweep_s.size(), [&](std::size_t k) {
            const double d = pb.delta_p_sweep[k];
            const auto grid = dirac::MomentumGrid::for_packet(pb.p0, d, cfg.n_points);
            sweep_s[k] = dirac::entanglement_entropy(dirac::reduced_pseudospin(
                dirac::positive_branch_state(pb.p0, d, zero, grid, params)));
        });
        em.table("entropy_sweep", {{"delta_p", "entropy"}, {pb.delta_p_sweep, sweep_s}});

        const auto grid = dirac::MomentumGrid::for_packet(pb.p0, pb.delta_p, cfg.n_points);
        const auto initial = dirac::positive_branch_state(pb.p0, pb.delta_p, zero, grid, params);
        RVector times;
        const double end = cfg.t_end();
        for (std::size_t k = 0; static_cast<double>(k) * pb.trace_step <= end + 1e-9; ++k)
            times.push_back(static_cast<double>(k) * pb.trace_step);
        Traces tr;
        tr.times = times;
        tr.mean_x.resize(times.size());
        tr.mean_p.resize(times.size());
        tr.entropy.resize(times.size());
        parallel_for(times.size(), [&](std::size_t k) {
            const auto s = dirac::evolve(initial, times[k], params);
            tr.mean_x[k] = dirac::mean_position_numeric(s).value;
            tr.mean_p[k] = dirac::mean_momentum(s);
            tr.entropy[k] = dirac::entanglement_entropy(dirac::reduced_pseudospin(s));
        });
        emit_traces(em, tr, false);
        double spread = 0.0;
        for (double s : tr.entropy)
            spread = std::max(spread, std::abs(s - tr.entropy.front()));
        em.metric("entropy_spread", spread);
        em.metric("mean_x_correlation", correlation(times, tr.mean_x));

        for (double t : cfg.times) {
            try {
                emit_snapshot(em, continuum_snapshot(cfg, dirac::evolve(initial, t, params), t), t);
            } catch (const Error &e) {
                em.snapshot_failure(t, e);
            }
        }
    } catch (const Error &e) {
        em.numeric_failure(e);
    }
    return em.finish();
}

RunResult run_klein(const ScenarioConfig &cfg)
{
    cfg.validate();
    require(cfg.scenario == ScenarioId::klein, "run_klein: wrong scenario");
    set_thread_count(cfg.threads);
    Emitter em(cfg, cfg.model);
    const RVector times = trace_times(cfg);
    std::vector<QubitResonatorState> states;
    try {
        states = circuit_states(cfg, cfg.model, times);
        emit_traces(em, circuit_traces(states, times), true);
    } catch (const Error &e) {
        em.numeric_failure(e);
        return em.finish();
    }
    const double p_start = states.front().mean_p();
    const double force = std::sqrt(2.0) * cfg.circuit.eps_drive;
    io::Table packets{{"t", "x_pos", "p_pos", "w_pos", "distinct_pos", "x_neg", "p_neg", "w_neg",
                       "distinct_neg"},
                      std::vector<RVector>(9)};
    RVector dt, xp, xn;
    for (double t : cfg.times) {
        try {
            const auto &state = states[index_of(times, t)];
            Snapshot s = circuit_snapshot(cfg, cfg.model, state, t);
            s.all = wigner::wigner_from_fock_density(state.reduced_field(), cfg.grid);
            s.all.provenance = {to_string(cfg.scenario), to_string(cfg.model), "all", t};
            emit_snapshot(em, s, t);
            const auto d = wigner::discriminate_wavepackets(s.all);
            const double row[9] = {t, d.pos.mean_x, d.pos.mean_p, d.pos.weight, d.pos.distinct ? 1.0 : 0.0,
                                   d.neg.mean_x, d.neg.mean_p, d.neg.weight, d.neg.distinct ? 1.0 : 0.0};
            for (int c = 0; c < 9; ++c)
                packets.columns[static_cast<std::size_t>(c)].push_back(row[c]);
            if (d.both_distinct() && t > 0.0) {
                const std::string tag = time_tag(t);
                if (force > 0.0) {
                    em.metric("drag_ratio_pos_" + tag, (p_start - d.pos.mean_p) / (force * t));
                    em.metric("drag_ratio_neg_" + tag, (p_start - d.neg.mean_p) / (force * t));
                }
                dt.push_back(t);
                xp.push_back(d.pos.mean_x);
                xn.push_back(d.neg.mean_x);
            }
        } catch (const Error &e) {
            em.snapshot_failure(t, e);
        }
    }
    em.table("packets", packets);
    if (dt.size() >= 2) {
        em.metric("x_slope_pos", slope(dt, xp));
        em.metric("x_slope_neg", slope(dt, xn));
    } else {
        em.warning("fewer than two snapshots with distinct packets; no x slopes");
    }
    return em.finish();
}

RunResult compare_full_vs_effective(const ScenarioConfig &cfg)
{
    cfg.validate();
    set_thread_count(cfg.threads);
    ScenarioConfig c = cfg;
    c.scenario = ScenarioId::compare;
    Emitter em(c, Model::full_circuit);
    try {
        const auto rep = compare_models(c);
        em.table("trace", {{"t", "P_e_full", "P_e_effective", "mean_x_full", "mean_x_effective",
                            "entropy_full", "entropy_effective"},
                           {rep.times, rep.full.excited, rep.effective.excited, rep.full.mean_x,
                            rep.effective.mean_x, rep.full.entropy, rep.effective.entropy}});
        for (const auto &w : rep.warnings)
            em.warning(w);
        em.metric("max_abs_dP_e", rep.max_dpe);
        em.metric("max_abs_dx", rep.max_dx);
        em.metric("max_abs_dS", rep.max_ds);
        em.metric("phi_1", rep.phases.phi_1);
        em.metric("phi_2", rep.phases.phi_2);
        em.metric("delta", rep.phases.delta);
        em.metric("lambda_over_nu1", rep.validity.coupling_over_nu1);
        em.metric("K_over_nu1", rep.validity.carrier_over_nu1);
        em.metric("sideband_over_2K", rep.validity.sideband_over_2k);
        json report{{"max_abs_dP_e", rep.max_dpe},
                    {"max_abs_dx", rep.max_dx},
                    {"max_abs_dS", rep.max_ds},
                    {"phase_search", {{"enabled", rep.optimized},
                                      {"phi_1", rep.phases.phi_1},
                                      {"phi_2", rep.phases.phi_2},
                                      {"delta_rad_per_ns", rep.phases.delta},
                                      {"residual", rep.phases.residual}}},
                    {"validity", {{"lambda_over_nu1", rep.validity.coupling_over_nu1},
                                  {"K_over_nu1", rep.validity.carrier_over_nu1},
                                  {"sideband_over_2K", rep.validity.sideband_over_2k}}},
                    {"warnings", rep.warnings}};
        em.json_doc("report", report);
    } catch (const Error &e) {
        em.numeric_failure(e);
    }
    return em.finish();
}

RunResult run(const ScenarioConfig &cfg)
{
    switch (cfg.scenario) {
    case ScenarioId::zitterbewegung:
        return run_zitterbewegung(cfg);
    case ScenarioId::positive_branch:
        return run_positive_branch(cfg);
    case ScenarioId::klein:
        return run_klein(cfg);
    case ScenarioId::compare:
        return compare_full_vs_effective(cfg);
    }
    fail(ErrorCode::Internal, "run: unknown scenario");
}

} // namespace diracsim::scenario
