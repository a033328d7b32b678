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

#include "diracsim/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <tuple>

#include <boost/numeric/odeint.hpp>

#include "diracsim/error.hpp"
#include "diracsim/fock.hpp"
#include "diracsim/parallel.hpp"

namespace diracsim::circuit {

double bessel_j(int n, double x)
{
    if (n < 0)
        return (n % 2 ? -1.0 : 1.0) * bessel_j(-n, x);
    if (x < 0.0)
        return (n % 2 ? -1.0 : 1.0) * bessel_j(n, -x);
    if (x == 0.0)
        return n == 0 ? 1.0 : 0.0;

    const int scale = std::max(n, static_cast<int>(std::ceil(x)));
    int start = scale + 20 + static_cast<int>(std::sqrt(40.0 * scale));
    start += start % 2;

    double next = 0.0, cur = 1e-30, wanted = 0.0, norm = 0.0;
    for (int k = start; k > 0; --k) {
        const double prev = 2.0 * k / x * cur - next;
        next = cur;
        cur = prev;
        if (k - 1 == n)
            wanted = cur;
        if ((k - 1) % 2 == 0 && k - 1 > 0)
            norm += 2.0 * cur;
        if (std::abs(cur) > 1e250) {
            cur *= 1e-250;
            next *= 1e-250;
            wanted *= 1e-250;
            norm *= 1e-250;
        }
    }
    norm += cur;
    return wanted / norm;
}

double CircuitParams::resonance_mismatch() const { return std::abs(omega_r - omega_0 - 2.0 * nu_1); }

void CircuitParams::validate() const
{
    const double fields[] = {omega_0, omega_r, lambda, eps_1, nu_1, phi_1, eps_2, nu_2,
                             phi_2, Omega, theta, delta, eps_drive, drive_detuning};
    for (double f : fields)
        require(std::isfinite(f), "CircuitParams: all fields must be finite");
    require(nu_1 > 0.0, "CircuitParams: nu_1 must be positive");
    require(std::isfinite(mu()), "CircuitParams: eps_1 / nu_1 must be finite");
}

CircuitParams CircuitParams::zitterbewegung_device()
{
    CircuitParams p;
    p.omega_0 = mhz_to_rad_per_ns(5260.0);
    p.omega_r = mhz_to_rad_per_ns(5583.5);
    p.lambda = mhz_to_rad_per_ns(19.91);
    p.eps_1 = mhz_to_rad_per_ns(130.0);
    p.nu_1 = mhz_to_rad_per_ns(160.0);
    p.eps_2 = mhz_to_rad_per_ns(8.8);
    p.nu_2 = mhz_to_rad_per_ns(33.4);
    p.Omega = mhz_to_rad_per_ns(20.03);
    p.theta = kPi / 2.0;
    return p;
}

CircuitParams CircuitParams::klein_device()
{
    CircuitParams p = zitterbewegung_device();
    p.eps_2 = 0.0;
    p.eps_drive = mhz_to_rad_per_ns(0.39);
    return p;
}

EffectiveParams effective_params(const CircuitParams &p)
{
    p.validate();
    EffectiveParams ep;
    ep.mu = p.mu();
    ep.K = p.Omega * bessel_j(0, ep.mu);
    ep.eta = p.lambda * bessel_j(2, ep.mu) / 2.0;
    ep.omega = p.eps_2 / 4.0;
    ep.c_star = std::sqrt(2.0) * ep.eta;
    ep.m_star = ep.c_star != 0.0 ? ep.omega / (ep.c_star * ep.c_star) : 0.0;
    const double two_k = 2.0 * std::abs(ep.K);
    ep.validity.coupling_over_nu1 = std::abs(p.lambda) / p.nu_1;
    ep.validity.carrier_over_nu1 = std::abs(ep.K) / p.nu_1;
    const double side = std::max(std::abs(ep.eta), std::abs(p.eps_2) / 2.0);
    ep.validity.sideband_over_2k =
        two_k > 0.0 ? side / two_k : (side > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
    return ep;
}

QubitResonatorState::QubitResonatorState(std::size_t n_max)
    : n_max_(n_max), amps_(CColumn::Zero(static_cast<Eigen::Index>(2 * (n_max + 1))))
{
}

QubitResonatorState::QubitResonatorState(CColumn amplitudes, std::size_t n_max)
    : n_max_(n_max), amps_(std::move(amplitudes))
{
    require(static_cast<std::size_t>(amps_.size()) == 2 * (n_max + 1),
            "QubitResonatorState: amplitude length must be 2 (n_max + 1)");
}

CColumn QubitResonatorState::field_component(Qubit q) const
{
    const auto d = static_cast<Eigen::Index>(field_dim());
    return amps_.segment(static_cast<Eigen::Index>(q) * d, d);
}

double QubitResonatorState::population(Qubit q) const { return field_component(q).squaredNorm(); }

double QubitResonatorState::tail_population() const
{
    return std::norm(amps_[static_cast<Eigen::Index>(index(Qubit::e, n_max_))]) +
           std::norm(amps_[static_cast<Eigen::Index>(index(Qubit::g, n_max_))]);
}

Mat2 QubitResonatorState::reduced_qubit() const
{
    const CColumn e = field_component(Qubit::e);
    const CColumn g = field_component(Qubit::g);
    Mat2 rho;
    rho(0, 0) = e.squaredNorm();
    rho(1, 1) = g.squaredNorm();
    rho(0, 1) = g.dot(e);
    rho(1, 0) = std::conj(rho(0, 1));
    return rho;
}

CMatrix QubitResonatorState::reduced_field() const
{
    const CColumn e = field_component(Qubit::e);
    const CColumn g = field_component(Qubit::g);
    return e * e.adjoint() + g * g.adjoint();
}

CMatrix QubitResonatorState::conditional_field(Qubit q) const
{
    const CColumn f = field_component(q);
    const double pop = f.squaredNorm();
    if (pop <= 1e-12)
        fail(ErrorCode::ZeroPopulation, "conditional_field: qubit outcome has zero population");
    return f * f.adjoint() / pop;
}

double QubitResonatorState::mean_x() const { return fock::mean_x(reduced_field()); }

double QubitResonatorState::mean_p() const { return fock::mean_p(reduced_field()); }

double QubitResonatorState::entropy() const
{
    return dirac::entanglement_entropy(dirac::PseudospinDensity{reduced_qubit()});
}

Mat2 QubitRotation::matrix() const
{
    const double len = std::sqrt(axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]);
    if (angle == 0.0)
        return Mat2::Identity();
    require(len > 0.0, "QubitRotation: axis must be nonzero");
    const double nx = axis[0] / len, ny = axis[1] / len, nz = axis[2] / len;
    const double c = std::cos(angle / 2.0), s = std::sin(angle / 2.0);
    // Gate basis (g, e): c I - i s (nx X + ny Y + nz Z), reordered to (e, g).
    Mat2 gate;
    gate << cplx(c, -s * nz), cplx(-s * ny, -s * nx), cplx(s * ny, -s * nx), cplx(c, s * nz);
    Mat2 out;
    out << gate(1, 1), gate(1, 0), gate(0, 1), gate(0, 0);
    return out;
}

QubitResonatorState prepare_initial(double p0_displacement, const QubitRotation &rotation,
                                    std::size_t n_max)
{
    require(n_max >= 1, "prepare_initial: n_max must be at least 1");
    const cplx alpha(0.0, p0_displacement / std::sqrt(2.0));
    require(std::norm(alpha) < static_cast<double>(n_max) / 4.0,
            "prepare_initial: |alpha|^2 must be below n_max / 4");
    CColumn field = fock::coherent(alpha, n_max + 1);
    const double top = std::norm(field[static_cast<Eigen::Index>(n_max)]);
    if (top >= 1e-4) {
        std::ostringstream msg;
        msg << "prepare_initial: coherent state puts " << top << " at n_max = " << n_max;
        fail(ErrorCode::Truncation, msg.str());
    }
    field.normalize();
    const Vec2 qubit = rotation.matrix() * dirac::ket_g();
    QubitResonatorState s(n_max);
    const auto d = static_cast<Eigen::Index>(n_max + 1);
    s.amplitudes().segment(0, d) = qubit(0) * field;
    s.amplitudes().segment(d, d) = qubit(1) * field;
    return s;
}

FullModel::FullModel(CircuitParams params, std::size_t n_max)
    : params_(params), n_max_(n_max), sqrt_n_(n_max + 2)
{
    params_.validate();
    require(n_max >= 1, "FullModel: n_max must be at least 1");
    for (std::size_t n = 0; n < sqrt_n_.size(); ++n)
        sqrt_n_[n] = std::sqrt(static_cast<double>(n));
}

FullModel::Coefficients FullModel::coefficients(double t) const
{
    const auto &p = params_;
    const cplx mod = std::polar(1.0, -p.mu() * std::sin(p.nu_1 * t + p.phi_1));
    Coefficients c;
    c.ee = p.eps_2 * std::cos(p.nu_2 * t + p.phi_2) + p.delta;
    c.lower_a = -p.lambda * std::polar(1.0, 2.0 * p.nu_1 * t) * mod;
    c.lower = p.Omega * std::polar(1.0, p.theta) * mod;
    c.drive = p.eps_drive * std::polar(1.0, p.drive_detuning * t);
    return c;
}

namespace {

CMatrix kron(const CMatrix &a, const CMatrix &b)
{
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

// |g><e| in (e, g) ordering.
Mat2 lowering()
{
    Mat2 m = Mat2::Zero();
    m(1, 0) = 1.0;
    return m;
}

} // namespace

CMatrix FullModel::hamiltonian(double t) const
{
    const Coefficients c = coefficients(t);
    const std::size_t d = n_max_ + 1;
    const CMatrix a = fock::annihilation(d);
    const CMatrix id = CMatrix::Identity(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    Mat2 ee = Mat2::Zero();
    ee(0, 0) = c.ee;
    const CMatrix low = lowering();
    CMatrix h = kron(ee, id);
    const CMatrix off = kron(low, c.lower_a * a.adjoint() + c.lower * id);
    h += off + off.adjoint();
    const CMatrix drive = kron(Mat2::Identity(), c.drive * a);
    h += drive + drive.adjoint();
    return h;
}

void FullModel::derivative(double t, Eigen::Ref<const CColumn> psi, Eigen::Ref<CColumn> out) const
{
    const Coefficients c = coefficients(t);
    const std::size_t d = n_max_ + 1;
    const cplx *e = psi.data();
    const cplx *g = psi.data() + d;
    cplx *he = out.data();
    cplx *hg = out.data() + d;
    const cplx la = c.lower_a, la_c = std::conj(c.lower_a);
    const cplx l = c.lower, l_c = std::conj(c.lower);
    const cplx dr = c.drive, dr_c = std::conj(c.drive);
    for (std::size_t n = 0; n < d; ++n) {
        cplx se = c.ee * e[n] + l_c * g[n];
        cplx sg = l * e[n];
        if (n + 1 < d) {
            const double up = sqrt_n_[n + 1];
            se += la_c * up * g[n + 1] + dr * up * e[n + 1];
            sg += dr * up * g[n + 1];
        }
        if (n > 0) {
            const double dn = sqrt_n_[n];
            sg += la * dn * e[n - 1] + dr_c * dn * g[n - 1];
            se += dr_c * dn * e[n - 1];
        }
        he[n] = cplx(se.imag(), -se.real());
        hg[n] = cplx(sg.imag(), -sg.real());
    }
}

CMatrix effective_hamiltonian(const EffectiveParams &ep, double theta, double eps_drive,
                              std::size_t n_max)
{
    require(n_max >= 1, "effective_hamiltonian: n_max must be at least 1");
    const std::size_t d = n_max + 1;
    const CMatrix a = fock::annihilation(d);
    const CMatrix id = CMatrix::Identity(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    Mat2 sigma_theta = Mat2::Zero();
    sigma_theta(1, 0) = std::polar(1.0, theta);
    sigma_theta(0, 1) = std::polar(1.0, -theta);
    Mat2 sigma_z = Mat2::Zero();
    sigma_z(0, 0) = 1.0;
    sigma_z(1, 1) = -1.0;
    const CMatrix coupling = -ep.eta * std::polar(1.0, -theta) * kron(sigma_theta, a.adjoint());
    CMatrix h = coupling + coupling.adjoint();
    h += ep.omega * kron(sigma_z, id);
    if (eps_drive != 0.0)
        h += std::sqrt(2.0) * eps_drive * kron(Mat2::Identity(), fock::x_quadrature(d));
    return h;
}

double frame_rate(const CircuitParams &p)
{
    return p.nu_2 > 0.0 ? p.nu_2 / 2.0 : effective_params(p).K;
}

QubitResonatorState to_effective_frame(const QubitResonatorState &state, double rate, double theta,
                                       double t)
{
    const double c = std::cos(rate * t), s = std::sin(rate * t);
    const CColumn e = state.field_component(Qubit::e);
    const CColumn g = state.field_component(Qubit::g);
    QubitResonatorState out(state.n_max());
    const auto d = static_cast<Eigen::Index>(state.field_dim());
    out.amplitudes().segment(0, d) = c * e + kI * s * std::polar(1.0, -theta) * g;
    out.amplitudes().segment(d, d) = c * g + kI * s * std::polar(1.0, theta) * e;
    return out;
}

namespace {

using OdeState = std::vector<cplx>;

void check_samples(const std::vector<double> &samples, double t0, double t1)
{
    require(std::isfinite(t0) && std::isfinite(t1) && t1 >= t0, "integrate: invalid time span");
    for (std::size_t k = 0; k < samples.size(); ++k) {
        require(samples[k] >= t0 - 1e-12 && samples[k] <= t1 + 1e-12,
                "integrate: sample times must lie inside the time span");
        require(k == 0 || samples[k] >= samples[k - 1], "integrate: sample times must be sorted");
    }
}

void record(Trajectory &traj, double t, QubitResonatorState s, bool check_tail)
{
    traj.max_norm_drift = std::max(traj.max_norm_drift, std::abs(s.norm() - 1.0));
    const double tail = s.tail_population();
    traj.max_tail_population = std::max(traj.max_tail_population, tail);
    if (check_tail && tail >= 1e-4)
        traj.truncation_warning = true;
    traj.times.push_back(t);
    traj.states.push_back(std::move(s));
}

} // namespace

Trajectory integrate(const QubitResonatorState &state0, const Derivative &rhs, double t0, double t1,
                     const std::vector<double> &sample_times, const IntegratorOptions &opts)
{
    namespace ode = boost::numeric::odeint;
    require(opts.rel_tol >= 1e-12 && opts.rel_tol <= 1e-4, "integrate: rel_tol must be in [1e-12, 1e-4]");
    check_samples(sample_times, t0, t1);
    const std::size_t n = state0.size();
    const std::size_t n_max = state0.n_max();

    Trajectory traj;
    auto emit = [&](double t, const OdeState &x) {
        CColumn amps = Eigen::Map<const CColumn>(x.data(), static_cast<Eigen::Index>(n));
        record(traj, t, QubitResonatorState(std::move(amps), n_max), opts.check_tail);
    };

    auto system = [&](const OdeState &x, OdeState &dxdt, double t) {
        rhs(t, Eigen::Map<const CColumn>(x.data(), static_cast<Eigen::Index>(n)),
            Eigen::Map<CColumn>(dxdt.data(), static_cast<Eigen::Index>(n)));
    };

    OdeState x(state0.amplitudes().data(), state0.amplitudes().data() + n);
    std::size_t next = 0;
    while (next < sample_times.size() && sample_times[next] <= t0) {
        emit(sample_times[next], x);
        ++next;
    }
    if (next == sample_times.size() || t1 <= t0)
        return traj;

    using Stepper = ode::runge_kutta_dopri5<OdeState>;
    auto stepper = ode::make_dense_output(opts.rel_tol * 1e-2, opts.rel_tol, Stepper());
    stepper.initialize(x, t0, std::min(opts.initial_step, t1 - t0));
    OdeState sample(n);
    while (next < sample_times.size()) {
        const double before = stepper.current_time();
        try {
            stepper.do_step(system);
        } catch (const ode::step_adjustment_error &ex) {
            fail(ErrorCode::StepFailure, std::string("integrate: ") + ex.what());
        }
        ++traj.steps;
        const double after = stepper.current_time();
        if (after - before < opts.min_step && after < sample_times.back()) {
            std::ostringstream msg;
            msg << "integrate: step " << after - before << " ns below the minimum " << opts.min_step
                << " ns at t = " << before;
            fail(ErrorCode::StepFailure, msg.str());
        }
        while (next < sample_times.size() && sample_times[next] <= after) {
            stepper.calc_state(sample_times[next], sample);
            emit(sample_times[next], sample);
            ++next;
        }
    }
    return traj;
}

Trajectory integrate(const QubitResonatorState &state0, const CMatrix &hamiltonian, double t0,
                     double t1, const std::vector<double> &sample_times, const IntegratorOptions &opts)
{
    require(static_cast<std::size_t>(hamiltonian.rows()) == state0.size() &&
                hamiltonian.rows() == hamiltonian.cols(),
            "integrate: Hamiltonian dimension does not match the state");
    const CMatrix gen = -kI * hamiltonian;
    Derivative rhs = [&gen](double, Eigen::Ref<const CColumn> psi, Eigen::Ref<CColumn> out) {
        out.noalias() = gen * psi;
    };
    return integrate(state0, rhs, t0, t1, sample_times, opts);
}

Trajectory integrate(const QubitResonatorState &state0, const FullModel &model, double t0, double t1,
                     const std::vector<double> &sample_times, const IntegratorOptions &opts)
{
    require(model.dim() == state0.size(), "integrate: model dimension does not match the state");
    Derivative rhs = [&model](double t, Eigen::Ref<const CColumn> psi, Eigen::Ref<CColumn> out) {
        model.derivative(t, psi, out);
    };
    return integrate(state0, rhs, t0, t1, sample_times, opts);
}

Trajectory evolve_static(const QubitResonatorState &state0, const CMatrix &hamiltonian,
                         const std::vector<double> &sample_times)
{
    require(static_cast<std::size_t>(hamiltonian.rows()) == state0.size() &&
                hamiltonian.rows() == hamiltonian.cols(),
            "evolve_static: Hamiltonian dimension does not match the state");
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(hamiltonian);
    const CMatrix &v = solver.eigenvectors();
    const Eigen::VectorXd &w = solver.eigenvalues();
    const CColumn c0 = v.adjoint() * state0.amplitudes();
    Trajectory traj;
    for (double t : sample_times) {
        CColumn ct(c0.size());
        for (Eigen::Index k = 0; k < c0.size(); ++k)
            ct[k] = c0[k] * std::polar(1.0, -w[k] * t);
        record(traj, t, QubitResonatorState(v * ct, state0.n_max()), true);
    }
    return traj;
}

CMatrix frame_correction(const CMatrix &rho, double theta_0, double theta_k, double t, double t_f)
{
    require(t_f > 0.0, "frame_correction: t_f must be positive");
    require(rho.rows() == rho.cols(), "frame_correction: rho must be square");
    const double angle = theta_0 + theta_k * t / t_f;
    CMatrix out(rho.rows(), rho.cols());
    for (Eigen::Index m = 0; m < rho.rows(); ++m)
        for (Eigen::Index n = 0; n < rho.cols(); ++n)
            out(m, n) = rho(m, n) * std::polar(1.0, -angle * static_cast<double>(m - n));
    return out;
}

CColumn frame_correction(const CColumn &psi, double theta_0, double theta_k, double t, double t_f)
{
    require(t_f > 0.0, "frame_correction: t_f must be positive");
    const double angle = theta_0 + theta_k * t / t_f;
    CColumn out(psi.size());
    for (Eigen::Index n = 0; n < psi.size(); ++n)
        out[n] = psi[n] * std::polar(1.0, -angle * static_cast<double>(n));
    return out;
}

RVector full_model_excited_population(const CircuitParams &p, const QubitResonatorState &initial,
                                      const std::vector<double> &times, const IntegratorOptions &opts)
{
    require(!times.empty(), "full_model_excited_population: no sample times");
    const FullModel model(p, initial.n_max());
    const Trajectory traj = integrate(initial, model, 0.0, times.back(), times, opts);
    const double rate = frame_rate(p);
    RVector out(times.size());
    for (std::size_t k = 0; k < times.size(); ++k)
        out[k] = to_effective_frame(traj.states[k], rate, p.theta, traj.times[k]).population(Qubit::e);
    return out;
}

RVector effective_model_excited_population(const CircuitParams &p,
                                           const QubitResonatorState &initial,
                                           const std::vector<double> &times,
                                           const IntegratorOptions &)
{
    const EffectiveParams ep = effective_params(p);
    const CMatrix h = effective_hamiltonian(ep, p.theta, p.eps_drive, initial.n_max());
    const Trajectory traj = evolve_static(initial, h, times);
    RVector out(times.size());
    for (std::size_t k = 0; k < times.size(); ++k)
        out[k] = traj.states[k].population(Qubit::e);
    return out;
}

PhaseSearchResult optimize_phases(const CircuitParams &p, const RVector &reference,
                                  const std::vector<double> &times,
                                  const QubitResonatorState &initial, const PhaseSearchGrids &grids,
                                  const IntegratorOptions &opts)
{
    require(!grids.phi_1.empty() && !grids.phi_2.empty() && !grids.delta.empty(),
            "optimize_phases: search grids must be nonempty");
    require(reference.size() == times.size(), "optimize_phases: reference and times differ in length");
    const std::size_t n1 = grids.phi_1.size(), n2 = grids.phi_2.size(), n3 = grids.delta.size();
    const std::size_t total = n1 * n2 * n3;
    RVector residual(total);
    parallel_for(total, [&](std::size_t idx) {
        CircuitParams q = p;
        q.phi_1 = grids.phi_1[idx / (n2 * n3)];
        q.phi_2 = grids.phi_2[(idx / n3) % n2];
        q.delta = grids.delta[idx % n3];
        const RVector trace = full_model_excited_population(q, initial, times, opts);
        double s = 0.0;
        for (std::size_t k = 0; k < trace.size(); ++k)
            s += (trace[k] - reference[k]) * (trace[k] - reference[k]);
        residual[idx] = std::sqrt(s);
    });

    PhaseSearchResult best;
    bool have = false;
    for (std::size_t idx = 0; idx < total; ++idx) {
        const PhaseSearchResult cand{grids.phi_1[idx / (n2 * n3)], grids.phi_2[(idx / n3) % n2],
                                     grids.delta[idx % n3], residual[idx]};
        const bool better =
            !have || cand.residual < best.residual ||
            (cand.residual == best.residual &&
             std::tie(cand.phi_1, cand.phi_2, cand.delta) < std::tie(best.phi_1, best.phi_2, best.delta));
        if (better) {
            best = cand;
            have = true;
        }
    }
    return best;
}

} // namespace diracsim::circuit
