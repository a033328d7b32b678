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

// Acceptance checks 1-10. Prints one PASS/FAIL line per criterion (with the measured
// numbers and wall time) and exits nonzero if any fails.

#include <algorithm>
#include <chrono>
#include <cstdarg>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "diracsim/circuit.hpp"
#include "diracsim/dirac.hpp"
#include "diracsim/fock.hpp"
#include "diracsim/scenario.hpp"
#include "diracsim/tomography.hpp"
#include "diracsim/wigner.hpp"
#include "oracles.hpp"

using namespace diracsim;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char *f, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char *f, ...)
{
    char buf[512];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

double max_abs(const RVector &a, const RVector &b)
{
    double m = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k)
        m = std::max(m, std::abs(a[k] - b[k]));
    return m;
}

fs::path scratch(const std::string &name)
{
    const fs::path p = fs::temp_directory_path() / ("diracsim_acceptance_" + name);
    fs::remove_all(p);
    return p;
}

// 1. evolve vs per-point diagonalization.
Outcome dirac_oracle()
{
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> up(-10.0, 10.0), um(0.05, 3.0), uc(0.1, 3.0),
        ut(0.0, 50.0), uz(-1.0, 1.0);
    double worst = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        const double p = up(rng), m = um(rng), c = uc(rng), t = ut(rng);
        const dirac::MomentumGrid grid(p, p + 1.0, 2);
        CVector a{cplx(uz(rng), uz(rng)), cplx(uz(rng), uz(rng))};
        CVector b{cplx(uz(rng), uz(rng)), cplx(uz(rng), uz(rng))};
        const dirac::SpinorState s(grid, a, b);
        const auto out = dirac::evolve(s, t, {c, m});
        for (std::size_t k = 0; k < 2; ++k) {
            const Vec2 ref = oracle::propagator_by_diagonalization(grid[k], t, c, m) * s.spinor(k);
            worst = std::max(worst, (out.spinor(k) - ref).cwiseAbs().maxCoeff());
        }
    }
    return {worst < 1e-10, fmt("max component error %.3g over 1000 samples", worst)};
}

// 2. closed-form vs numerical mean position with the mapped circuit values.
Outcome zb_consistency()
{
    const double eta = mhz_to_rad_per_ns(0.78), omega = mhz_to_rad_per_ns(2.2);
    const double c = std::sqrt(2.0) * eta;
    const dirac::DiracParams params{c, omega / (c * c)};
    const double dp = 1.0 / std::sqrt(2.0);
    const auto grid = dirac::MomentumGrid::for_packet(2.0, dp, 4096);
    const auto s0 = dirac::gaussian_product_state(grid, 2.0, dp, 0.0, dirac::ket_x());
    double worst = 0.0, span = 0.0;
    for (int k = 0; k < 20; ++k) {
        const double t = 330.0 * k / 19.0;
        const double num = dirac::mean_position_numeric(dirac::evolve(s0, t, params)).value;
        const double ana = dirac::mean_position_analytic(s0, t, params);
        worst = std::max(worst, std::abs(num - ana));
        span = std::max(span, std::abs(ana));
    }
    return {worst < 1e-5, fmt("max |dx| %.3g at 20 times (max |<x>| %.4f)", worst, span)};
}

// 3. effective Fock simulation vs continuum.
Outcome circuit_vs_continuum()
{
    auto cfg = scenario::default_config(scenario::ScenarioId::zitterbewegung);
    cfg.n_max = 30;
    const RVector times = scenario::trace_times(cfg);
    const auto cont = scenario::continuum_traces(cfg, times);
    const auto circ = scenario::circuit_traces(
        scenario::circuit_states(cfg, scenario::Model::effective_circuit, times), times);
    double xmax = 0.0;
    for (double v : cont.mean_x)
        xmax = std::max(xmax, std::abs(v));
    const double dx = max_abs(cont.mean_x, circ.mean_x);
    const double ds = max_abs(cont.entropy, circ.entropy);
    const double s_end = circ.entropy.back();
    return {dx <= 0.03 * xmax && ds < 0.02 && s_end > 0.9,
            fmt("max|dx| %.3g (%.2f%% of max|x| %.4f), max|dS| %.3g, S(%g) = %.4f", dx,
                100.0 * dx / xmax, xmax, ds, times.back(), s_end)};
}

// 4. full vs effective Hamiltonian, P_e protocol on |X>|0> with phase calibration.
Outcome full_vs_effective()
{
    auto cfg = scenario::default_config(scenario::ScenarioId::compare);
    const auto rep = scenario::compare_models(cfg);
    std::printf("    info: calibrated phases phi_1 = %.4f, phi_2 = %.4f, delta = %.4f MHz\n",
                rep.phases.phi_1, rep.phases.phi_2, rad_per_ns_to_mhz(rep.phases.delta));

    auto zb = cfg;
    zb.p0 = 2.0;
    zb.compare.optimize_phases = false;
    zb.circuit.phi_1 = rep.phases.phi_1;
    zb.circuit.phi_2 = rep.phases.phi_2;
    zb.circuit.delta = rep.phases.delta;
    const auto on_zb = scenario::compare_models(zb);
    std::printf("    info: same phases on |X>|i sqrt2>: max|dP_e| %.4f, max|dx| %.4f, max|dS| %.4f\n",
                on_zb.max_dpe, on_zb.max_dx, on_zb.max_ds);

    return {rep.max_dpe < 0.1, fmt("max|dP_e| %.4f over %g ns (|X>|0>, %zu sample times)",
                                   rep.max_dpe, rep.times.back(), rep.times.size())};
}

// 5. negativity of the conditional WFs and bimodality at 330 ns.
Outcome negativity()
{
    const auto cfg = scenario::default_config(scenario::ScenarioId::zitterbewegung);
    const double t = 330.0;
    const auto st = scenario::circuit_states(cfg, scenario::Model::effective_circuit, {0.0, t}).back();
    const auto model = scenario::Model::effective_circuit;
    const auto wg = scenario::circuit_conditional_wigner(cfg, model, st, circuit::Qubit::g, t);
    const auto we = scenario::circuit_conditional_wigner(cfg, model, st, circuit::Qubit::e, t);
    const double pe = st.population(circuit::Qubit::e), pg = st.population(circuit::Qubit::g);
    const auto wall = wigner::combine_conditional(we, wg, pe / (pe + pg), pg / (pe + pg));
    const double ming = wigner::moments(wg).min_value, mine = wigner::moments(we).min_value;
    const std::size_t modes = scenario::count_modes(wigner::marginal_x(wall));
    return {ming < 0.0 && mine < 0.0 && modes >= 2,
            fmt("min W_g %.4f, min W_e %.4f, P(x) maxima %zu", ming, mine, modes)};
}

// 6. positive-branch invariants.
Outcome positive_branch()
{
    const auto cfg = scenario::default_config(scenario::ScenarioId::positive_branch);
    const auto &pb = cfg.positive;
    const dirac::DiracParams params{pb.c, pb.m};
    const auto grid = dirac::MomentumGrid::for_packet(pb.p0, pb.delta_p, cfg.n_points);
    const auto s0 = dirac::positive_branch_state(pb.p0, pb.delta_p, [](double) { return 0.0; },
                                                 grid, params);
    const double S0 = dirac::entanglement_entropy(dirac::reduced_pseudospin(s0));
    double spread = 0.0;
    RVector ts, xs;
    for (int k = 0; k <= 40; ++k) {
        const double t = 0.1 * k;
        const auto s = dirac::evolve(s0, t, params);
        spread = std::max(spread, std::abs(dirac::entanglement_entropy(dirac::reduced_pseudospin(s)) - S0));
        ts.push_back(t);
        xs.push_back(dirac::mean_position_numeric(s).value);
    }
    const double n = static_cast<double>(ts.size());
    double mt = 0.0, mx = 0.0;
    for (std::size_t k = 0; k < ts.size(); ++k) {
        mt += ts[k] / n;
        mx += xs[k] / n;
    }
    double stt = 0.0, sxx = 0.0, stx = 0.0;
    for (std::size_t k = 0; k < ts.size(); ++k) {
        stt += (ts[k] - mt) * (ts[k] - mt);
        sxx += (xs[k] - mx) * (xs[k] - mx);
        stx += (ts[k] - mt) * (xs[k] - mx);
    }
    const double r = stx / std::sqrt(stt * sxx);
    const auto w = wigner::unconditional_wigner(dirac::evolve(s0, 4.0, params),
                                                wigner::ProjectionBasis::computational(), cfg.grid);
    const double wmin = wigner::moments(w).min_value;
    return {spread < 1e-9 && r > 0.9999 && wmin < 0.0,
            fmt("|S(t)-S(0)| %.3g, <x>(t) correlation %.8f, min W(t=4) %.4f", spread, r, wmin)};
}

// 7. Klein drag and packet separation.
Outcome klein()
{
    auto cfg = scenario::default_config(scenario::ScenarioId::klein);
    cfg.output_dir = scratch("klein").string();
    const auto res = scenario::run_klein(cfg);
    double worst = 0.0;
    for (double t : cfg.times) {
        if (t <= 0.0)
            continue;
        for (const char *side : {"pos", "neg"}) {
            std::ostringstream name;
            name << "drag_ratio_" << side << "_t" << t;
            worst = std::max(worst, std::abs(res.metric(name.str()) - 1.0));
        }
    }
    const double sp = res.metric("x_slope_pos"), sn = res.metric("x_slope_neg");
    fs::remove_all(cfg.output_dir);
    return {res.exit_code == 0 && worst < 0.03 && sp * sn < 0.0,
            fmt("max |drag/(sqrt2 eps t) - 1| %.3g, x slopes %+.5f / %+.5f", worst, sp, sn)};
}

// 8. tomography round trips.
Outcome tomography_round_trips()
{
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::uniform_int_distribution<int> support(1, 10);
    std::normal_distribution<double> noise(0.0, 0.01);
    const tomography::RabiModel model{mhz_to_rad_per_ns(20.92), 12900.0, 1.0, 1.0};
    RVector taus;
    for (int k = 0; k <= 100; ++k)
        taus.push_back(2.0 * k);
    auto random_dist = [&] {
        RVector p(11, 0.0);
        const int s = support(rng);
        double tot = 0.0;
        for (int n = 0; n < s; ++n)
            tot += p[n] = u(rng);
        for (double &v : p)
            v /= tot;
        return tomography::PhotonDistribution::from(p);
    };
    auto linf = [](const RVector &a, const RVector &b) { return max_abs(a, b); };

    double clean = 0.0, noisy = 0.0;
    for (int draw = 0; draw < 100; ++draw) {
        const auto d = random_dist();
        auto trace = tomography::simulate_rabi(d, model, taus);
        clean = std::max(clean, linf(tomography::fit_photon_distribution(trace, 10).dist.probs, d.probs));
        for (double &v : trace.values)
            v += noise(rng);
        noisy = std::max(noisy, linf(tomography::fit_photon_distribution(trace, 10).dist.probs, d.probs));
    }

    const cplx alpha(0.0, std::sqrt(2.0));
    const CColumn psi = fock::coherent(alpha, 40);
    const wigner::PhaseSpaceGrid grid;
    double wdev = 0.0;
    for (std::size_t i = 0; i < grid.n_x; ++i)
        for (std::size_t j = 0; j < grid.n_p; ++j) {
            const auto dd = fock::displaced_distribution(psi, tomography::gamma_at(grid.x(i), grid.p(j)));
            const double w = tomography::wigner_point(tomography::PhotonDistribution::from(dd.probs));
            wdev = std::max(wdev, std::abs(w - oracle::gaussian_wigner(grid.x(i), grid.p(j), 0.0, 2.0)));
        }

    const auto cal = tomography::ReadoutCalibration::device();
    double cdev = 0.0;
    for (int k = 0; k < 100; ++k) {
        Eigen::Vector4d p(u(rng), u(rng), u(rng), u(rng));
        p /= p.sum();
        cdev = std::max(cdev, (tomography::apply_calibration(cal.matrix() * p, cal).raw - p).cwiseAbs().maxCoeff());
    }

    const CMatrix rho = fock::outer(fock::coherent(alpha, 16));
    const auto samples =
        tomography::synthesize_samples(rho, tomography::gamma_lattice(2.5, 9), 40);
    const auto rec = tomography::reconstruct_density(samples, 15);
    const double fid = fock::fidelity(rec.rho, rho);

    const bool pass = clean < 1e-6 && noisy < 0.05 && wdev < 1e-6 && cdev < 1e-12 && fid > 0.99;
    return {pass, fmt("fit Linf %.3g clean / %.3g noisy (100 draws), parity WF %.3g, "
                      "calibration %.3g, reconstruction fidelity %.5f",
                      clean, noisy, wdev, cdev, fid)};
}

// 9. tomography-route conditional WF vs the direct transform of the same state.
Outcome cross_path()
{
    const auto cfg = scenario::default_config(scenario::ScenarioId::zitterbewegung);
    const double t = 330.0;
    const auto st = scenario::circuit_states(cfg, scenario::Model::effective_circuit, {0.0, t}).back();
    const dirac::MomentumGrid mgrid(-12.0, 12.0, 4097);
    double worst = 0.0;
    for (auto q : {circuit::Qubit::g, circuit::Qubit::e}) {
        const auto &br = q == circuit::Qubit::g ? cfg.frame.g : cfg.frame.e;
        const auto tomo = tomography::tomography_wigner(
            st, q, {br.theta_0, br.theta_k, t, cfg.frame.t_f}, cfg.grid);
        const CColumn amps = circuit::frame_correction(CColumn(st.field_component(q)), br.theta_0,
                                                       br.theta_k, t, cfg.frame.t_f);
        const CVector phi = fock::to_momentum(amps, mgrid);
        const CVector zero(phi.size(), 0.0);
        const dirac::SpinorState spinor =
            q == circuit::Qubit::e ? dirac::SpinorState(mgrid, phi, zero) : dirac::SpinorState(mgrid, zero, phi);
        const Vec2 b = q == circuit::Qubit::e ? dirac::ket_e() : dirac::ket_g();
        const auto direct = wigner::conditional_wigner(spinor, b, cfg.grid);
        const double pop = st.population(q);
        for (std::size_t k = 0; k < direct.values().size(); ++k)
            worst = std::max(worst, std::abs(direct.values()[k] / pop - tomo.values()[k]));
    }
    return {worst < 2e-3, fmt("max pointwise |dW| %.3g over both branches at %g ns", worst, t)};
}

std::vector<std::pair<std::string, std::string>> csv_files(const fs::path &dir)
{
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto &e : fs::directory_iterator(dir))
        if (e.path().extension() == ".csv") {
            std::ifstream in(e.path(), std::ios::binary);
            out.emplace_back(e.path().filename().string(),
                             std::string(std::istreambuf_iterator<char>(in), {}));
        }
    std::sort(out.begin(), out.end());
    return out;
}

// 10. byte-identical CSV output for a seeded, noisy run.
Outcome determinism()
{
    auto cfg = scenario::default_config(scenario::ScenarioId::zitterbewegung);
    cfg.model = scenario::Model::tomography_pipeline;
    cfg.tomography.rabi_fit = true;
    cfg.tomography.noise_sigma = 0.01;
    cfg.seed = 1234;
    cfg.times = {0.0, 178.0, 330.0};
    cfg.grid.n_x = cfg.grid.n_p = 25;
    std::vector<std::pair<std::string, std::string>> runs[2];
    for (int k = 0; k < 2; ++k) {
        cfg.output_dir = scratch("det" + std::to_string(k)).string();
        const auto res = scenario::run(cfg);
        if (res.exit_code != 0)
            return {false, "run exited with " + std::to_string(res.exit_code)};
        runs[k] = csv_files(cfg.output_dir);
        fs::remove_all(cfg.output_dir);
    }
    const bool same = !runs[0].empty() && runs[0] == runs[1];
    std::size_t bytes = 0;
    for (const auto &f : runs[0])
        bytes += f.second.size();
    return {same, fmt("%zu CSV files, %zu bytes, %s", runs[0].size(), bytes,
                      same ? "identical" : "differ")};
}

struct Criterion {
    int id;
    const char *name;
    double budget_s;  // <= 0: no runtime bound
    std::function<Outcome()> check;
};

} // namespace

int main()
{
    const std::vector<Criterion> criteria{
        {1, "Dirac evolution oracle", 1.0, dirac_oracle},
        {2, "ZB analytic vs numeric position", 10.0, zb_consistency},
        {3, "circuit vs continuum", 60.0, circuit_vs_continuum},
        {4, "full vs effective Hamiltonian", 300.0, full_vs_effective},
        {5, "interference negativity", 0.0, negativity},
        {6, "positive-branch properties", 60.0, positive_branch},
        {7, "Klein tunneling", 60.0, klein},
        {8, "tomography round trips", 300.0, tomography_round_trips},
        {9, "cross-path Wigner agreement", 300.0, cross_path},
        {10, "determinism", 0.0, determinism},
    };
    int failed = 0;
    for (const auto &c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.check();
        } catch (const std::exception &e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool in_time = c.budget_s <= 0.0 || secs < c.budget_s;
        const bool pass = o.pass && in_time;
        failed += pass ? 0 : 1;
        std::printf("%s [%d] %s: %s; %.2f s", pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), secs);
        if (c.budget_s > 0.0)
            std::printf(" (limit %g s)", c.budget_s);
        std::printf("\n");
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
