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

// Exercises the public C interface only; links against the shared library.

#include <cmath>
#include <complex>
#include <filesystem>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "diracsim/diracsim.h"

namespace fs = std::filesystem;

namespace {

constexpr double kPi = 3.14159265358979323846;

ds_initial_state zb_initial() { return {2.0, {0.0, 1.0, 0.0}, kPi / 2.0}; }

} // namespace

TEST(CApi, VersionAndStatusNames)
{
    EXPECT_FALSE(std::string(ds_version()).empty());
    EXPECT_STREQ(ds_status_name(DS_OK), "ok");
    EXPECT_STREQ(ds_status_name(DS_CONFIG), "Config");
    EXPECT_STREQ(ds_status_name(DS_BUFFER_TOO_SMALL), "buffer_too_small");
    EXPECT_EQ(ds_set_threads(0), DS_INVALID_ARGUMENT);
    EXPECT_EQ(ds_set_threads(1), DS_OK);
}

TEST(CApi, NullArgumentsAreRejected)
{
    EXPECT_EQ(ds_spinor_gaussian(0.0, 1.0, 0.0, {1, 0}, {0, 0}, 256, nullptr), DS_INVALID_ARGUMENT);
    EXPECT_NE(std::string(ds_last_error()).find("out"), std::string::npos);
    double v = 0.0;
    EXPECT_EQ(ds_spinor_entropy(nullptr, &v), DS_INVALID_ARGUMENT);
    EXPECT_EQ(ds_config_load(nullptr, nullptr), DS_INVALID_ARGUMENT);
    ds_spinor_free(nullptr);
    ds_result_free(nullptr);
}

TEST(CApi, SpinorEvolutionAndZitterbewegung)
{
    const double s = 1.0 / std::sqrt(2.0);
    ds_spinor *psi = nullptr;
    ASSERT_EQ(ds_spinor_gaussian(2.0, s, 0.0, {s, 0.0}, {s, 0.0}, 2048, &psi), DS_OK);
    size_t n = 0;
    ASSERT_EQ(ds_spinor_size(psi, &n), DS_OK);
    EXPECT_EQ(n, 2048u);

    const ds_dirac_params params{1.0, 0.5};
    ds_spinor *later = nullptr;
    ASSERT_EQ(ds_spinor_evolve(psi, 3.0, params, &later), DS_OK);
    double num = 0.0, ana = 0.0, ent = 0.0;
    ASSERT_EQ(ds_spinor_mean_position(later, &num), DS_OK);
    ASSERT_EQ(ds_spinor_mean_position_analytic(psi, 3.0, params, &ana), DS_OK);
    EXPECT_NEAR(num, ana, 1e-6);
    ASSERT_EQ(ds_spinor_entropy(later, &ent), DS_OK);
    EXPECT_GT(ent, 0.0);
    EXPECT_LE(ent, 1.0);

    std::vector<ds_complex> up(n), down(n);
    std::vector<double> p(n);
    ASSERT_EQ(ds_spinor_components(later, up.data(), down.data(), n), DS_OK);
    ASSERT_EQ(ds_spinor_momenta(later, p.data(), n), DS_OK);
    double norm = 0.0;
    for (size_t k = 0; k < n; ++k)
        norm += up[k].re * up[k].re + up[k].im * up[k].im + down[k].re * down[k].re +
                down[k].im * down[k].im;
    EXPECT_NEAR(norm * (p[1] - p[0]), 1.0, 1e-6);
    EXPECT_EQ(ds_spinor_components(later, up.data(), down.data(), n - 1), DS_INVALID_ARGUMENT);

    ds_spinor_free(later);
    ds_spinor_free(psi);
}

TEST(CApi, WignerOfGroundBranch)
{
    ds_spinor *psi = nullptr;
    ASSERT_EQ(ds_spinor_gaussian(0.0, 1.0 / std::sqrt(2.0), 0.0, {0, 0}, {1, 0}, 2048, &psi), DS_OK);
    const ds_grid_spec grid{-3.0, 3.0, 31, -3.0, 3.0, 31};
    ds_wigner *w = nullptr;
    ASSERT_EQ(ds_wigner_conditional(psi, {0, 0}, {1, 0}, &grid, &w), DS_OK);
    ds_grid_spec back{};
    double weight = 0.0;
    ASSERT_EQ(ds_wigner_info(w, &back, &weight), DS_OK);
    EXPECT_EQ(back.n_x, 31u);
    EXPECT_NEAR(weight, 1.0, 1e-9);

    std::vector<double> vals(31 * 31);
    ASSERT_EQ(ds_wigner_values(w, vals.data(), vals.size()), DS_OK);
    // Vacuum: W(0, 0) = 1/pi, up to the O(dp^2) interpolation error at dp ~ 0.01.
    EXPECT_NEAR(vals[15 * 31 + 15], 1.0 / kPi, 1e-5);
    EXPECT_EQ(ds_wigner_values(w, vals.data(), 10), DS_BUFFER_TOO_SMALL);

    double mx = 1.0, mp = 1.0, mn = 0.0, neg = 1.0;
    ASSERT_EQ(ds_wigner_moments(w, &mx, &mp, &mn, &neg), DS_OK);
    EXPECT_NEAR(mx, 0.0, 1e-9);
    EXPECT_NEAR(mp, 0.0, 1e-9);

    const fs::path dir = fs::temp_directory_path() / "diracsim_capi_wigner";
    fs::remove_all(dir);
    EXPECT_EQ(ds_wigner_write_csv(w, (dir / "w.csv").c_str()), DS_OK);
    EXPECT_EQ(ds_wigner_write_json(w, (dir / "w.json").c_str()), DS_OK);
    EXPECT_TRUE(fs::exists(dir / "w.csv"));
    EXPECT_TRUE(fs::exists(dir / "w.json"));
    fs::remove_all(dir);

    ds_wigner *bad = nullptr;
    const ds_grid_spec empty{0.0, 0.0, 1, 0.0, 1.0, 2};
    EXPECT_EQ(ds_wigner_conditional(psi, {0, 0}, {1, 0}, &empty, &bad), DS_INVALID_ARGUMENT);
    EXPECT_EQ(bad, nullptr);

    ds_wigner_free(w);
    ds_spinor_free(psi);
}

TEST(CApi, CircuitParameters)
{
    ds_circuit_params p{};
    ASSERT_EQ(ds_circuit_default_params(0, &p), DS_OK);
    EXPECT_NEAR(p.lambda, ds_mhz_to_rad_per_ns(19.91), 1e-15);
    ds_effective_params e{};
    ASSERT_EQ(ds_circuit_effective_params(&p, &e), DS_OK);
    EXPECT_NEAR(e.c_star, std::sqrt(2.0) * e.eta, 1e-15);
    EXPECT_NEAR(e.omega, p.eps_2 / 4.0, 1e-15);
    EXPECT_NEAR(e.m_star, e.omega / (e.c_star * e.c_star), 1e-9);

    ds_circuit_params k{};
    ASSERT_EQ(ds_circuit_default_params(1, &k), DS_OK);
    EXPECT_EQ(k.eps_2, 0.0);
    EXPECT_GT(k.eps_drive, 0.0);

    p.nu_1 = 0.0;
    EXPECT_EQ(ds_circuit_effective_params(&p, &e), DS_INVALID_ARGUMENT);
}

TEST(CApi, CircuitEvolutionAndObservables)
{
    ds_circuit_params p{};
    ASSERT_EQ(ds_circuit_default_params(0, &p), DS_OK);
    const auto init = zb_initial();
    ds_circuit_state *st = nullptr;
    ASSERT_EQ(ds_circuit_evolve(&p, DS_MODEL_EFFECTIVE, 30, &init, 330.0, 0.0, &st), DS_OK);
    double x = 0.0, mp = 0.0, s = 0.0, pe = 0.0;
    ASSERT_EQ(ds_circuit_state_observables(st, &x, &mp, &s, &pe), DS_OK);
    EXPECT_GT(s, 0.9);
    EXPECT_GE(pe, 0.0);
    EXPECT_LE(pe, 1.0);

    const ds_grid_spec grid{-4.5, 4.5, 21, -4.5, 4.5, 21};
    ds_wigner *w = nullptr;
    ASSERT_EQ(ds_circuit_state_wigner(st, DS_OUTCOME_G, &grid, &w), DS_OK);
    double weight = 0.0;
    ASSERT_EQ(ds_wigner_info(w, nullptr, &weight), DS_OK);
    EXPECT_NEAR(weight, 1.0, 1e-9);
    ds_wigner_free(w);

    const double times[] = {0.0, 50.0, 100.0};
    double pe_t[3] = {};
    ASSERT_EQ(ds_circuit_excited_population(&p, DS_MODEL_EFFECTIVE, 30, &init, times, 3, pe_t), DS_OK);
    EXPECT_NEAR(pe_t[0], 0.5, 1e-12);
    const double unsorted[] = {10.0, 5.0};
    EXPECT_EQ(ds_circuit_excited_population(&p, DS_MODEL_EFFECTIVE, 30, &init, unsorted, 2, pe_t),
              DS_INVALID_ARGUMENT);

    ds_circuit_state *small = nullptr;
    EXPECT_EQ(ds_circuit_evolve(&p, DS_MODEL_EFFECTIVE, 1, &init, 0.0, 0.0, &small), DS_INVALID_ARGUMENT);
    EXPECT_EQ(ds_circuit_evolve(&p, DS_MODEL_EFFECTIVE, 9, &init, 0.0, 0.0, &small), DS_TRUNCATION);
    EXPECT_NE(std::string(ds_last_error()).find("n_max = 9"), std::string::npos);
    EXPECT_EQ(small, nullptr);
    ds_circuit_state_free(st);
}

TEST(CApi, TomographyRoundTrip)
{
    const double probs[] = {0.2, 0.5, 0.3};
    const ds_rabi_model model{ds_mhz_to_rad_per_ns(20.92), 12900.0, 1.0, 1.0};
    std::vector<double> taus, values(101);
    for (int k = 0; k <= 100; ++k)
        taus.push_back(2.0 * k);
    ASSERT_EQ(ds_tomo_simulate_rabi(probs, 3, &model, taus.data(), taus.size(), values.data()), DS_OK);
    std::vector<double> fit(6);
    double pg0 = 0.0, resid = 1.0;
    ASSERT_EQ(ds_tomo_fit(taus.data(), values.data(), taus.size(), &model, 5, 0, fit.data(), &pg0, &resid),
              DS_OK);
    for (int n = 0; n < 6; ++n)
        EXPECT_NEAR(fit[n], n < 3 ? probs[n] : 0.0, 1e-6);
    EXPECT_EQ(pg0, 1.0);

    double w = 0.0;
    ASSERT_EQ(ds_tomo_wigner_point(probs, 3, &w), DS_OK);
    EXPECT_NEAR(w, 2.0 / kPi * (0.2 - 0.5 + 0.3), 1e-15);

    const double bad[] = {0.5, -0.2};
    EXPECT_EQ(ds_tomo_wigner_point(bad, 2, &w), DS_INVALID_ARGUMENT);
    EXPECT_EQ(ds_tomo_fit(taus.data(), values.data(), 4, &model, 5, 0, fit.data(), nullptr, nullptr),
              DS_INVALID_ARGUMENT);
}

TEST(CApi, Calibration)
{
    const double fid[] = {0.983, 0.937, 0.990, 0.920};
    const double truth[] = {0.4, 0.1, 0.3, 0.2};
    // F = F_1 (x) F_2 with F_j = [[Fg, 1 - Fe], [1 - Fg, Fe]].
    const double f1[2][2] = {{fid[0], 1 - fid[1]}, {1 - fid[0], fid[1]}};
    const double f2[2][2] = {{fid[2], 1 - fid[3]}, {1 - fid[2], fid[3]}};
    double measured[4] = {};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            measured[i] += f1[i / 2][j / 2] * f2[i % 2][j % 2] * truth[j];
    double raw[4], clamped[4];
    ASSERT_EQ(ds_tomo_apply_calibration(measured, fid, raw, clamped), DS_OK);
    for (int k = 0; k < 4; ++k) {
        EXPECT_NEAR(raw[k], truth[k], 1e-12);
        EXPECT_NEAR(clamped[k], truth[k], 1e-12);
    }
    const double singular[] = {0.5, 0.5, 0.99, 0.92};
    EXPECT_NE(ds_tomo_apply_calibration(measured, singular, raw, clamped), DS_OK);
}

TEST(CApi, ConditionalDistributionBuffer)
{
    ds_circuit_params p{};
    ASSERT_EQ(ds_circuit_default_params(0, &p), DS_OK);
    const auto init = zb_initial();
    ds_circuit_state *st = nullptr;
    ASSERT_EQ(ds_circuit_evolve(&p, DS_MODEL_EFFECTIVE, 20, &init, 0.0, 0.0, &st), DS_OK);
    size_t len = 0;
    double pop = 0.0;
    const ds_complex alpha{0.0, std::sqrt(2.0)};
    EXPECT_EQ(ds_tomo_conditional_distribution(st, DS_OUTCOME_G, alpha, nullptr, 0, &len, &pop),
              DS_BUFFER_TOO_SMALL);
    ASSERT_GT(len, 0u);
    EXPECT_NEAR(pop, 0.5, 1e-9);
    std::vector<double> probs(len);
    ASSERT_EQ(ds_tomo_conditional_distribution(st, DS_OUTCOME_G, alpha, probs.data(), len, &len, &pop),
              DS_OK);
    // D(-alpha) |alpha> = |0>.
    EXPECT_NEAR(probs[0], 1.0, 1e-6);
    ds_circuit_state_free(st);
}

TEST(CApi, ConfigHandling)
{
    ds_config *cfg = nullptr;
    EXPECT_EQ(ds_config_parse("scenario: nowhere\n", &cfg), DS_CONFIG);
    EXPECT_NE(std::string(ds_last_error()).find("scenario"), std::string::npos);
    EXPECT_EQ(ds_config_parse("scenario: klein\ncircuit: {lambda: 20}\n", &cfg), DS_CONFIG);
    EXPECT_NE(std::string(ds_last_error()).find("circuit.lambda"), std::string::npos);
    EXPECT_EQ(ds_config_load("/nonexistent/cfg.yaml", &cfg), DS_CONFIG);

    ASSERT_EQ(ds_config_parse("scenario: klein\ncircuit: {lambda: 19.91 MHz}\n", &cfg), DS_OK);
    EXPECT_STREQ(ds_config_scenario(cfg), "klein");
    EXPECT_STREQ(ds_config_model(cfg), "effective_circuit");
    const std::string h0 = ds_config_param_hash(cfg);
    EXPECT_EQ(ds_config_set_output_dir(cfg, "/tmp/elsewhere"), DS_OK);
    EXPECT_EQ(ds_config_set_threads(cfg, 3), DS_OK);
    EXPECT_EQ(h0, ds_config_param_hash(cfg));
    EXPECT_EQ(ds_config_set_seed(cfg, 99), DS_OK);
    EXPECT_NE(h0, ds_config_param_hash(cfg));
    EXPECT_EQ(ds_config_set_model(cfg, "full_circuit"), DS_OK);
    EXPECT_STREQ(ds_config_model(cfg), "full_circuit");
    EXPECT_EQ(ds_config_set_model(cfg, "quantum"), DS_CONFIG);
    EXPECT_EQ(ds_config_set_threads(cfg, 0), DS_CONFIG);
    EXPECT_EQ(ds_config_set_output_dir(cfg, ""), DS_CONFIG);
    EXPECT_EQ(ds_config_validate(cfg), DS_OK);
    ds_config_free(cfg);

    ASSERT_EQ(ds_config_default("compare", &cfg), DS_OK);
    EXPECT_STREQ(ds_config_scenario(cfg), "compare");
    ds_config_free(cfg);
}

TEST(CApi, RunProducesManifestAndMetrics)
{
    const fs::path dir = fs::temp_directory_path() / "diracsim_capi_run";
    fs::remove_all(dir);
    ds_config *cfg = nullptr;
    ASSERT_EQ(ds_config_default("positive_branch", &cfg), DS_OK);
    ASSERT_EQ(ds_config_set_output_dir(cfg, dir.c_str()), DS_OK);
    ds_run_result *r = nullptr;
    ASSERT_EQ(ds_run(cfg, &r), DS_OK) << ds_last_error();
    EXPECT_EQ(ds_result_exit_code(r), 0);
    EXPECT_STREQ(ds_result_status(r), "ok");
    EXPECT_TRUE(fs::exists(ds_result_manifest_path(r)));
    ASSERT_GT(ds_result_file_count(r), 0u);
    EXPECT_TRUE(fs::exists(dir / ds_result_file(r, 0)));
    EXPECT_EQ(ds_result_file(r, ds_result_file_count(r)), nullptr);

    bool saw_spread = false;
    for (size_t i = 0; i < ds_result_metric_count(r); ++i) {
        const char *name = nullptr;
        double v = 0.0;
        ASSERT_EQ(ds_result_metric(r, i, &name, &v), DS_OK);
        if (std::string(name) == "entropy_spread") {
            saw_spread = true;
            EXPECT_LT(v, 1e-9);
        }
    }
    EXPECT_TRUE(saw_spread);
    EXPECT_EQ(ds_result_metric(r, ds_result_metric_count(r), nullptr, nullptr), DS_INVALID_ARGUMENT);
    EXPECT_EQ(ds_result_warning(r, ds_result_warning_count(r)), nullptr);
    EXPECT_EQ(ds_result_failure_count(r), 0u);
    ds_result_free(r);
    ds_config_free(cfg);
    fs::remove_all(dir);
}
