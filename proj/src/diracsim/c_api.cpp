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

#include "diracsim/diracsim.h"

#include <cmath>
#include <cstring>
#include <limits>
#include <new>
#include <sstream>
#include <string>

#include "diracsim/circuit.hpp"
#include "diracsim/dirac.hpp"
#include "diracsim/error.hpp"
#include "diracsim/io.hpp"
#include "diracsim/parallel.hpp"
#include "diracsim/scenario.hpp"
#include "diracsim/tomography.hpp"
#include "diracsim/wigner.hpp"

using namespace diracsim;

struct ds_spinor {
    dirac::SpinorState state;
};

struct ds_wigner {
    wigner::WignerGrid grid;
};

struct ds_circuit_state {
    circuit::QubitResonatorState state;
};

struct ds_config {
    scenario::ScenarioConfig cfg;
    mutable std::string scenario_name, model_name, hash;
};

struct ds_run_result {
    scenario::RunResult result;
};

namespace {

thread_local std::string g_last_error;

ds_status fail_with(ds_status s, const std::string &msg)
{
    g_last_error = msg;
    return s;
}

template <class F>
ds_status guarded(F &&f)
{
    try {
        g_last_error.clear();
        f();
        return DS_OK;
    } catch (const Error &e) {
        return fail_with(static_cast<ds_status>(e.code()), e.what());
    } catch (const std::bad_alloc &) {
        return fail_with(DS_INTERNAL, "out of memory");
    } catch (const std::exception &e) {
        return fail_with(DS_INTERNAL, e.what());
    } catch (...) {
        return fail_with(DS_INTERNAL, "unknown exception");
    }
}

void need(const void *p, const char *what)
{
    if (!p)
        fail(ErrorCode::InvalidArgument, std::string(what) + " is null");
}

cplx to_cplx(ds_complex z) { return {z.re, z.im}; }

wigner::PhaseSpaceGrid to_grid(const ds_grid_spec *g)
{
    need(g, "grid");
    wigner::PhaseSpaceGrid out{g->x_min, g->x_max, g->n_x, g->p_min, g->p_max, g->n_p};
    out.validate();
    return out;
}

circuit::CircuitParams to_params(const ds_circuit_params *p)
{
    need(p, "params");
    circuit::CircuitParams c;
    c.omega_0 = p->omega_0;
    c.omega_r = p->omega_r;
    c.lambda = p->lambda;
    c.eps_1 = p->eps_1;
    c.nu_1 = p->nu_1;
    c.phi_1 = p->phi_1;
    c.eps_2 = p->eps_2;
    c.nu_2 = p->nu_2;
    c.phi_2 = p->phi_2;
    c.Omega = p->Omega;
    c.theta = p->theta;
    c.delta = p->delta;
    c.eps_drive = p->eps_drive;
    c.drive_detuning = p->drive_detuning;
    c.validate();
    return c;
}

circuit::QubitResonatorState to_initial(const ds_initial_state *s, std::size_t n_max)
{
    need(s, "initial");
    const circuit::QubitRotation rot{{s->axis[0], s->axis[1], s->axis[2]}, s->angle};
    return circuit::prepare_initial(s->p0, rot, n_max);
}

std::vector<circuit::QubitResonatorState> evolve_circuit(const circuit::CircuitParams &p,
                                                         ds_model model,
                                                         const circuit::QubitResonatorState &init,
                                                         const RVector &times, double rel_tol)
{
    if (model == DS_MODEL_FULL) {
        circuit::IntegratorOptions opts;
        if (rel_tol > 0.0)
            opts.rel_tol = rel_tol;
        const auto traj = circuit::integrate(init, circuit::FullModel(p, init.n_max()), 0.0,
                                             times.back(), times, opts);
        std::vector<circuit::QubitResonatorState> out;
        const double rate = circuit::frame_rate(p);
        for (std::size_t k = 0; k < times.size(); ++k)
            out.push_back(circuit::to_effective_frame(traj.states[k], rate, p.theta, times[k]));
        return out;
    }
    require(model == DS_MODEL_EFFECTIVE, "model must be DS_MODEL_EFFECTIVE or DS_MODEL_FULL");
    const CMatrix h = circuit::effective_hamiltonian(circuit::effective_params(p), p.theta,
                                                     p.eps_drive, init.n_max());
    return circuit::evolve_static(init, h, times).states;
}

tomography::RabiModel to_rabi(const ds_rabi_model *m)
{
    need(m, "model");
    tomography::RabiModel r;
    r.lambda_2 = m->lambda_2;
    r.T1_p = m->T1_p > 0.0 ? m->T1_p : std::numeric_limits<double>::infinity();
    r.l = m->l;
    r.P_g0 = m->P_g0;
    r.validate();
    return r;
}

circuit::Qubit to_qubit(ds_outcome o)
{
    require(o == DS_OUTCOME_E || o == DS_OUTCOME_G, "outcome must be DS_OUTCOME_E or DS_OUTCOME_G");
    return o == DS_OUTCOME_E ? circuit::Qubit::e : circuit::Qubit::g;
}

} // namespace

extern "C" {

const char *ds_version(void)
{
    static const std::string v = scenario::version();
    return v.c_str();
}

const char *ds_status_name(ds_status status)
{
    switch (status) {
    case DS_OK:
        return "ok";
    case DS_BUFFER_TOO_SMALL:
        return "buffer_too_small";
    default:
        if (status >= DS_INVALID_ARGUMENT && status <= DS_INTERNAL)
            return error_code_name(static_cast<ErrorCode>(status));
        return "unknown";
    }
}

const char *ds_last_error(void) { return g_last_error.c_str(); }

ds_status ds_set_threads(unsigned threads)
{
    return guarded([&] {
        require(threads >= 1, "threads must be at least 1");
        set_thread_count(threads);
    });
}

/* ---- spinors ---- */

ds_status ds_spinor_gaussian(double p0, double delta_p, double x0, ds_complex up, ds_complex down,
                             size_t n_points, ds_spinor **out)
{
    return guarded([&] {
        need(out, "out");
        require(delta_p > 0.0, "delta_p must be positive");
        Vec2 s(to_cplx(up), to_cplx(down));
        require(s.norm() > 0.0, "spinor must be nonzero");
        s.normalize();
        const auto grid = dirac::MomentumGrid::for_packet(p0, delta_p, n_points);
        *out = new ds_spinor{dirac::gaussian_product_state(grid, p0, delta_p, x0, s)};
    });
}

ds_status ds_spinor_positive_branch(double p0, double delta_p, ds_dirac_params params,
                                    size_t n_points, ds_spinor **out)
{
    return guarded([&] {
        need(out, "out");
        const dirac::DiracParams dp{params.c, params.m};
        dp.validate();
        require(delta_p > 0.0, "delta_p must be positive");
        const auto grid = dirac::MomentumGrid::for_packet(p0, delta_p, n_points);
        *out = new ds_spinor{dirac::positive_branch_state(
            p0, delta_p, [](double) { return 0.0; }, grid, dp)};
    });
}

ds_status ds_spinor_evolve(const ds_spinor *state, double t, ds_dirac_params params,
                           ds_spinor **out)
{
    return guarded([&] {
        need(state, "state");
        need(out, "out");
        const dirac::DiracParams dp{params.c, params.m};
        dp.validate();
        *out = new ds_spinor{dirac::evolve(state->state, t, dp)};
    });
}

ds_status ds_spinor_size(const ds_spinor *state, size_t *n_points)
{
    return guarded([&] {
        need(state, "state");
        need(n_points, "n_points");
        *n_points = state->state.size();
    });
}

ds_status ds_spinor_momenta(const ds_spinor *state, double *p, size_t n)
{
    return guarded([&] {
        need(state, "state");
        need(p, "p");
        require(n >= state->state.size(), "buffer smaller than the grid");
        for (std::size_t k = 0; k < state->state.size(); ++k)
            p[k] = state->state.grid()[k];
    });
}

ds_status ds_spinor_components(const ds_spinor *state, ds_complex *up, ds_complex *down, size_t n)
{
    return guarded([&] {
        need(state, "state");
        need(up, "up");
        need(down, "down");
        require(n >= state->state.size(), "buffer smaller than the grid");
        for (std::size_t k = 0; k < state->state.size(); ++k) {
            up[k] = {state->state.up()[k].real(), state->state.up()[k].imag()};
            down[k] = {state->state.down()[k].real(), state->state.down()[k].imag()};
        }
    });
}

ds_status ds_spinor_mean_position(const ds_spinor *state, double *mean_x)
{
    return guarded([&] {
        need(state, "state");
        need(mean_x, "mean_x");
        *mean_x = dirac::mean_position_numeric(state->state).value;
    });
}

ds_status ds_spinor_mean_position_analytic(const ds_spinor *initial, double t,
                                           ds_dirac_params params, double *mean_x)
{
    return guarded([&] {
        need(initial, "initial");
        need(mean_x, "mean_x");
        const dirac::DiracParams dp{params.c, params.m};
        dp.validate();
        *mean_x = dirac::mean_position_analytic(initial->state, t, dp);
    });
}

ds_status ds_spinor_entropy(const ds_spinor *state, double *bits)
{
    return guarded([&] {
        need(state, "state");
        need(bits, "bits");
        *bits = dirac::entanglement_entropy(dirac::reduced_pseudospin(state->state));
    });
}

void ds_spinor_free(ds_spinor *state) { delete state; }

/* ---- Wigner ---- */

ds_status ds_wigner_conditional(const ds_spinor *state, ds_complex b_e, ds_complex b_g,
                                const ds_grid_spec *grid, ds_wigner **out)
{
    return guarded([&] {
        need(state, "state");
        need(out, "out");
        const Vec2 b(to_cplx(b_e), to_cplx(b_g));
        *out = new ds_wigner{wigner::conditional_wigner(state->state, b, to_grid(grid))};
    });
}

ds_status ds_wigner_unconditional(const ds_spinor *state, const ds_grid_spec *grid, ds_wigner **out)
{
    return guarded([&] {
        need(state, "state");
        need(out, "out");
        *out = new ds_wigner{wigner::unconditional_wigner(
            state->state, wigner::ProjectionBasis::computational(), to_grid(grid))};
    });
}

ds_status ds_wigner_info(const ds_wigner *w, ds_grid_spec *grid, double *weight)
{
    return guarded([&] {
        need(w, "w");
        const auto &g = w->grid.grid();
        if (grid)
            *grid = {g.x_min, g.x_max, g.n_x, g.p_min, g.p_max, g.n_p};
        if (weight)
            *weight = w->grid.weight();
    });
}

ds_status ds_wigner_values(const ds_wigner *w, double *buf, size_t n)
{
    if (!w || !buf)
        return fail_with(DS_INVALID_ARGUMENT, "w and buf must be non-null");
    const auto &v = w->grid.values();
    if (n < v.size())
        return fail_with(DS_BUFFER_TOO_SMALL, "buffer holds " + std::to_string(n) + " of " +
                                                  std::to_string(v.size()) + " values");
    std::memcpy(buf, v.data(), v.size() * sizeof(double));
    return DS_OK;
}

ds_status ds_wigner_moments(const ds_wigner *w, double *mean_x, double *mean_p, double *min_value,
                            double *negative_volume)
{
    return guarded([&] {
        need(w, "w");
        const auto m = wigner::moments(w->grid);
        if (mean_x)
            *mean_x = m.mean_x;
        if (mean_p)
            *mean_p = m.mean_p;
        if (min_value)
            *min_value = m.min_value;
        if (negative_volume)
            *negative_volume = m.negative_volume;
    });
}

ds_status ds_wigner_write_csv(const ds_wigner *w, const char *path)
{
    return guarded([&] {
        need(w, "w");
        need(path, "path");
        std::ostringstream os;
        io::write_wigner_csv(os, w->grid);
        io::write_file(path, os.str());
    });
}

ds_status ds_wigner_write_json(const ds_wigner *w, const char *path)
{
    return guarded([&] {
        need(w, "w");
        need(path, "path");
        io::write_file(path, io::wigner_to_json(w->grid));
    });
}

void ds_wigner_free(ds_wigner *w) { delete w; }

/* ---- circuit ---- */

double ds_mhz_to_rad_per_ns(double mhz) { return mhz_to_rad_per_ns(mhz); }

ds_status ds_circuit_default_params(int klein, ds_circuit_params *out)
{
    return guarded([&] {
        need(out, "out");
        const auto c = klein ? circuit::CircuitParams::klein_device()
                             : circuit::CircuitParams::zitterbewegung_device();
        *out = {c.omega_0, c.omega_r, c.lambda, c.eps_1, c.nu_1,  c.phi_1,     c.eps_2,
                c.nu_2,    c.phi_2,   c.Omega,  c.theta, c.delta, c.eps_drive, c.drive_detuning};
    });
}

ds_status ds_circuit_effective_params(const ds_circuit_params *params, ds_effective_params *out)
{
    return guarded([&] {
        need(out, "out");
        const auto e = circuit::effective_params(to_params(params));
        *out = {e.mu,
                e.K,
                e.eta,
                e.omega,
                e.c_star,
                e.m_star,
                e.validity.coupling_over_nu1,
                e.validity.carrier_over_nu1,
                e.validity.sideband_over_2k};
    });
}

ds_status ds_circuit_evolve(const ds_circuit_params *params, ds_model model, size_t n_max,
                            const ds_initial_state *initial, double t, double rel_tol,
                            ds_circuit_state **out)
{
    return guarded([&] {
        need(out, "out");
        require(t >= 0.0, "t must be non-negative");
        const auto p = to_params(params);
        const auto states = evolve_circuit(p, model, to_initial(initial, n_max), {t}, rel_tol);
        *out = new ds_circuit_state{states.back()};
    });
}

ds_status ds_circuit_excited_population(const ds_circuit_params *params, ds_model model,
                                        size_t n_max, const ds_initial_state *initial,
                                        const double *times, size_t n, double *out)
{
    return guarded([&] {
        need(times, "times");
        need(out, "out");
        require(n >= 1, "need at least one sample time");
        const RVector ts(times, times + n);
        for (std::size_t k = 0; k < n; ++k)
            require(ts[k] >= 0.0 && (k == 0 || ts[k] >= ts[k - 1]),
                    "times must be sorted and non-negative");
        const auto states = evolve_circuit(to_params(params), model, to_initial(initial, n_max), ts, 0.0);
        for (std::size_t k = 0; k < n; ++k)
            out[k] = states[k].population(circuit::Qubit::e);
    });
}

ds_status ds_circuit_state_observables(const ds_circuit_state *state, double *mean_x,
                                       double *mean_p, double *entropy, double *excited)
{
    return guarded([&] {
        need(state, "state");
        if (mean_x)
            *mean_x = state->state.mean_x();
        if (mean_p)
            *mean_p = state->state.mean_p();
        if (entropy)
            *entropy = state->state.entropy();
        if (excited)
            *excited = state->state.population(circuit::Qubit::e);
    });
}

ds_status ds_circuit_state_wigner(const ds_circuit_state *state, ds_outcome outcome,
                                  const ds_grid_spec *grid, ds_wigner **out)
{
    return guarded([&] {
        need(state, "state");
        need(out, "out");
        const auto g = to_grid(grid);
        const CMatrix rho = state->state.conditional_field(to_qubit(outcome));
        *out = new ds_wigner{wigner::wigner_from_fock_density(rho, g)};
    });
}

void ds_circuit_state_free(ds_circuit_state *state) { delete state; }

/* ---- tomography ---- */

ds_status ds_tomo_simulate_rabi(const double *probs, size_t n_probs, const ds_rabi_model *model,
                                const double *taus, size_t n_taus, double *values)
{
    return guarded([&] {
        need(probs, "probs");
        need(taus, "taus");
        need(values, "values");
        require(n_probs >= 1, "probs must be non-empty");
        const auto dist = tomography::PhotonDistribution::from(RVector(probs, probs + n_probs));
        const auto trace = tomography::simulate_rabi(dist, to_rabi(model), RVector(taus, taus + n_taus));
        std::copy(trace.values.begin(), trace.values.end(), values);
    });
}

ds_status ds_tomo_fit(const double *taus, const double *values, size_t n_taus,
                      const ds_rabi_model *model, size_t n_max, int fit_P_g0, double *probs,
                      double *P_g0, double *residual)
{
    return guarded([&] {
        need(taus, "taus");
        need(values, "values");
        need(probs, "probs");
        tomography::RabiTrace trace{RVector(taus, taus + n_taus), RVector(values, values + n_taus),
                                    to_rabi(model)};
        const auto fit = tomography::fit_photon_distribution(trace, n_max, {fit_P_g0 != 0});
        std::copy(fit.dist.probs.begin(), fit.dist.probs.end(), probs);
        if (P_g0)
            *P_g0 = fit.P_g0;
        if (residual)
            *residual = fit.residual;
    });
}

ds_status ds_tomo_wigner_point(const double *probs, size_t n_probs, double *value)
{
    return guarded([&] {
        need(probs, "probs");
        need(value, "value");
        require(n_probs >= 1, "probs must be non-empty");
        *value = tomography::wigner_point(
            tomography::PhotonDistribution::from(RVector(probs, probs + n_probs)));
    });
}

ds_status ds_tomo_apply_calibration(const double measured[4], const double fidelities[4],
                                    double raw[4], double clamped[4])
{
    return guarded([&] {
        need(measured, "measured");
        need(fidelities, "fidelities");
        const tomography::ReadoutCalibration cal{{fidelities[0], fidelities[1]},
                                                 {fidelities[2], fidelities[3]}};
        const Eigen::Vector4d m(measured[0], measured[1], measured[2], measured[3]);
        const auto r = tomography::apply_calibration(m, cal);
        for (int k = 0; k < 4; ++k) {
            if (raw)
                raw[k] = r.raw[k];
            if (clamped)
                clamped[k] = r.clamped[k];
        }
    });
}

ds_status ds_tomo_conditional_distribution(const ds_circuit_state *state, ds_outcome outcome,
                                           ds_complex gamma, double *probs, size_t capacity,
                                           size_t *length, double *population)
{
    tomography::ConditionalDistribution cd;
    const ds_status s = guarded([&] {
        need(state, "state");
        need(length, "length");
        cd = tomography::conditional_distribution(state->state, to_qubit(outcome), to_cplx(gamma));
    });
    if (s != DS_OK)
        return s;
    *length = cd.dist.probs.size();
    if (population)
        *population = cd.population;
    if (!probs || capacity < cd.dist.probs.size())
        return fail_with(DS_BUFFER_TOO_SMALL, "distribution needs " +
                                                  std::to_string(cd.dist.probs.size()) + " entries");
    std::copy(cd.dist.probs.begin(), cd.dist.probs.end(), probs);
    return DS_OK;
}

/* ---- scenarios ---- */

ds_status ds_config_load(const char *path, ds_config **out)
{
    return guarded([&] {
        need(path, "path");
        need(out, "out");
        *out = new ds_config{scenario::load_config(path), {}, {}, {}};
    });
}

ds_status ds_config_parse(const char *yaml_text, ds_config **out)
{
    return guarded([&] {
        need(yaml_text, "yaml_text");
        need(out, "out");
        *out = new ds_config{scenario::parse_config(yaml_text), {}, {}, {}};
    });
}

ds_status ds_config_default(const char *name, ds_config **out)
{
    return guarded([&] {
        need(name, "scenario");
        need(out, "out");
        *out = new ds_config{scenario::default_config(scenario::scenario_from_string(name)), {}, {}, {}};
    });
}

ds_status ds_config_validate(const ds_config *cfg)
{
    return guarded([&] {
        need(cfg, "cfg");
        cfg->cfg.validate();
    });
}

ds_status ds_config_set_model(ds_config *cfg, const char *model)
{
    return guarded([&] {
        need(cfg, "cfg");
        need(model, "model");
        cfg->cfg.model = scenario::model_from_string(model);
    });
}

ds_status ds_config_set_output_dir(ds_config *cfg, const char *dir)
{
    return guarded([&] {
        need(cfg, "cfg");
        need(dir, "dir");
        if (!*dir)
            fail(ErrorCode::Config, "output_dir: must be non-empty");
        cfg->cfg.output_dir = dir;
    });
}

ds_status ds_config_set_seed(ds_config *cfg, uint64_t seed)
{
    return guarded([&] {
        need(cfg, "cfg");
        cfg->cfg.seed = seed;
    });
}

ds_status ds_config_set_threads(ds_config *cfg, unsigned threads)
{
    return guarded([&] {
        need(cfg, "cfg");
        if (threads < 1)
            fail(ErrorCode::Config, "threads: must be at least 1");
        cfg->cfg.threads = threads;
    });
}

const char *ds_config_scenario(const ds_config *cfg)
{
    if (!cfg)
        return "";
    cfg->scenario_name = scenario::to_string(cfg->cfg.scenario);
    return cfg->scenario_name.c_str();
}

const char *ds_config_model(const ds_config *cfg)
{
    if (!cfg)
        return "";
    cfg->model_name = scenario::to_string(cfg->cfg.model);
    return cfg->model_name.c_str();
}

const char *ds_config_output_dir(const ds_config *cfg) { return cfg ? cfg->cfg.output_dir.c_str() : ""; }

const char *ds_config_param_hash(const ds_config *cfg)
{
    if (!cfg)
        return "";
    cfg->hash = cfg->cfg.param_hash();
    return cfg->hash.c_str();
}

void ds_config_free(ds_config *cfg) { delete cfg; }

ds_status ds_run(const ds_config *cfg, ds_run_result **out)
{
    return guarded([&] {
        need(cfg, "cfg");
        need(out, "out");
        *out = new ds_run_result{scenario::run(cfg->cfg)};
    });
}

ds_status ds_compare(const ds_config *cfg, ds_run_result **out)
{
    return guarded([&] {
        need(cfg, "cfg");
        need(out, "out");
        *out = new ds_run_result{scenario::compare_full_vs_effective(cfg->cfg)};
    });
}

int ds_result_exit_code(const ds_run_result *r) { return r ? r->result.exit_code : -1; }

const char *ds_result_status(const ds_run_result *r) { return r ? r->result.status.c_str() : ""; }

const char *ds_result_manifest_path(const ds_run_result *r)
{
    return r ? r->result.manifest_path.c_str() : "";
}

size_t ds_result_file_count(const ds_run_result *r) { return r ? r->result.files.size() : 0; }

const char *ds_result_file(const ds_run_result *r, size_t i)
{
    return r && i < r->result.files.size() ? r->result.files[i].c_str() : nullptr;
}

size_t ds_result_metric_count(const ds_run_result *r) { return r ? r->result.metrics.size() : 0; }

ds_status ds_result_metric(const ds_run_result *r, size_t i, const char **name, double *value)
{
    if (!r || i >= r->result.metrics.size())
        return fail_with(DS_INVALID_ARGUMENT, "metric index out of range");
    if (name)
        *name = r->result.metrics[i].name.c_str();
    if (value)
        *value = r->result.metrics[i].value;
    return DS_OK;
}

size_t ds_result_warning_count(const ds_run_result *r) { return r ? r->result.warnings.size() : 0; }

const char *ds_result_warning(const ds_run_result *r, size_t i)
{
    return r && i < r->result.warnings.size() ? r->result.warnings[i].c_str() : nullptr;
}

size_t ds_result_failure_count(const ds_run_result *r) { return r ? r->result.failures.size() : 0; }

const char *ds_result_failure(const ds_run_result *r, size_t i)
{
    return r && i < r->result.failures.size() ? r->result.failures[i].c_str() : nullptr;
}

void ds_result_free(ds_run_result *r) { delete r; }

} // extern "C"
