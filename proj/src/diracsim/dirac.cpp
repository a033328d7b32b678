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

#include "diracsim/dirac.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "diracsim/error.hpp"

namespace diracsim::dirac {

void DiracParams::validate() const
{
    require(std::isfinite(c) && c > 0.0, "DiracParams: c must be positive");
    require(std::isfinite(m) && m >= 0.0, "DiracParams: m must be non-negative");
}

MomentumGrid::MomentumGrid(double p_min, double p_max, std::size_t n_points)
    : p_min_(p_min), p_max_(p_max), n_(n_points), dp_(0.0)
{
    require(std::isfinite(p_min) && std::isfinite(p_max) && p_min < p_max,
            "MomentumGrid: need p_min < p_max");
    require(n_points >= 2, "MomentumGrid: need at least two points");
    dp_ = (p_max - p_min) / static_cast<double>(n_points - 1);
}

MomentumGrid MomentumGrid::for_packet(double p0, double delta_p, std::size_t n_points)
{
    require(delta_p > 0.0, "MomentumGrid: delta_p must be positive");
    return MomentumGrid(std::min(p0 - 8.0 * delta_p, -10.0), std::max(p0 + 8.0 * delta_p, 10.0),
                        n_points);
}

double energy(double p, const DiracParams &params)
{
    return std::hypot(p * params.c, params.rest_energy());
}

double mixing_angle(double p, const DiracParams &params)
{
    if (params.m == 0.0) {
        if (p == 0.0)
            return 0.0;
        return p > 0.0 ? kPi / 4.0 : -kPi / 4.0;
    }
    return 0.5 * std::atan2(p, params.mc());
}

Mat2 hamiltonian(double p, const DiracParams &params)
{
    const double cp = params.c * p;
    const double mc2 = params.rest_energy();
    Mat2 h;
    // c sigma_y p + m c^2 sigma_z, sigma_y = [[0, -i], [i, 0]]
    h << mc2, -kI * cp, kI * cp, -mc2;
    return h;
}

Mat2 propagator(double p, double t, const DiracParams &params)
{
    const double e = energy(p, params);
    if (e == 0.0)
        return Mat2::Identity();
    const double phase = e * t;
    return std::cos(phase) * Mat2::Identity() - kI * (std::sin(phase) / e) * hamiltonian(p, params);
}

Eigensystem eigensystem(double p, const DiracParams &params)
{
    Eigensystem es;
    es.energy = energy(p, params);
    es.angle = mixing_angle(p, params);
    const double c = std::cos(es.angle);
    const double s = std::sin(es.angle);
    es.v_plus = Vec2(c, kI * s);
    es.v_minus = Vec2(kI * s, c);
    return es;
}

Vec2 ket_e() { return Vec2(1.0, 0.0); }
Vec2 ket_g() { return Vec2(0.0, 1.0); }
Vec2 ket_x() { return Vec2(1.0, 1.0) / std::sqrt(2.0); }
Vec2 ket_minus_x() { return Vec2(1.0, -1.0) / std::sqrt(2.0); }

double gaussian_amplitude(double p, double p0, double delta_p)
{
    const double d = p - p0;
    return std::exp(-d * d / (4.0 * delta_p * delta_p)) /
           std::sqrt(delta_p * std::sqrt(2.0 * kPi));
}

SpinorState::SpinorState(MomentumGrid grid, CVector up, CVector down)
    : grid_(grid), up_(std::move(up)), down_(std::move(down))
{
    require(up_.size() == grid_.size() && down_.size() == grid_.size(),
            "SpinorState: component length does not match the grid");
}

SpinorState SpinorState::product(const MomentumGrid &grid, const std::function<cplx(double)> &xi,
                                 const Vec2 &spinor)
{
    CVector up(grid.size()), down(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const cplx a = xi(grid[k]);
        up[k] = a * spinor(0);
        down[k] = a * spinor(1);
    }
    return SpinorState(grid, std::move(up), std::move(down));
}

double SpinorState::norm_squared() const
{
    RVector dens(size());
    for (std::size_t k = 0; k < size(); ++k)
        dens[k] = std::norm(up_[k]) + std::norm(down_[k]);
    return trapezoid(dens, grid_.dp());
}

SpinorState &SpinorState::normalize()
{
    const double n2 = norm_squared();
    if (!(n2 > 0.0))
        fail(ErrorCode::InvalidArgument, "SpinorState: cannot normalize a zero state");
    const double s = 1.0 / std::sqrt(n2);
    for (std::size_t k = 0; k < size(); ++k) {
        up_[k] *= s;
        down_[k] *= s;
    }
    return *this;
}

CVector SpinorState::project(const Vec2 &b) const
{
    CVector out(size());
    const cplx b0 = std::conj(b(0));
    const cplx b1 = std::conj(b(1));
    for (std::size_t k = 0; k < size(); ++k)
        out[k] = b0 * up_[k] + b1 * down_[k];
    return out;
}

SpinorState gaussian_product_state(const MomentumGrid &grid, double p0, double delta_p, double x0,
                                   const Vec2 &spinor)
{
    require(delta_p > 0.0, "gaussian_product_state: delta_p must be positive");
    auto xi = [&](double p) { return gaussian_amplitude(p, p0, delta_p) * std::exp(-kI * p * x0); };
    return SpinorState::product(grid, xi, spinor.normalized()).normalize();
}

SpinorState evolve(const SpinorState &state, double t, const DiracParams &params)
{
    params.validate();
    SpinorState out = state;
    const auto &grid = state.grid();
    for (std::size_t k = 0; k < grid.size(); ++k)
        out.set_spinor(k, propagator(grid[k], t, params) * state.spinor(k));
    return out;
}

SpinorState positive_branch_state(double p0, double delta_p, const PhaseProfile &theta,
                                  const MomentumGrid &grid, const DiracParams &params)
{
    params.validate();
    require(delta_p > 0.0, "positive_branch_state: delta_p must be positive");
    const double scale = std::sqrt(2.0) * delta_p;
    const double outside = 0.5 * std::erfc((p0 - grid.p_min()) / scale) +
                           0.5 * std::erfc((grid.p_max() - p0) / scale);
    if (outside > 1e-6) {
        std::ostringstream msg;
        msg << "positive_branch_state: Gaussian mass " << outside << " lies outside ["
            << grid.p_min() << ", " << grid.p_max() << "]";
        fail(ErrorCode::GridTooNarrow, msg.str());
    }
    SpinorState out(grid, CVector(grid.size()), CVector(grid.size()));
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const double p = grid[k];
        const cplx a = std::exp(kI * theta(p)) * gaussian_amplitude(p, p0, delta_p);
        out.set_spinor(k, a * eigensystem(p, params).v_plus);
    }
    return out.normalize();
}

namespace {

// i * Int f^* df/dp dp for a sampled complex function: fourth-order central differences
// inside, second order next to the ends, one-sided at the ends.
cplx position_integrand_sum(std::span<const cplx> f, double dp)
{
    const std::size_t n = f.size();
    CVector integrand(n);
    for (std::size_t k = 0; k < n; ++k) {
        cplx deriv;
        if (k == 0)
            deriv = (f[1] - f[0]) / dp;
        else if (k + 1 == n)
            deriv = (f[n - 1] - f[n - 2]) / dp;
        else if (k < 2 || k + 2 >= n)
            deriv = (f[k + 1] - f[k - 1]) / (2.0 * dp);
        else
            deriv = (f[k - 2] - 8.0 * f[k - 1] + 8.0 * f[k + 1] - f[k + 2]) / (12.0 * dp);
        integrand[k] = kI * std::conj(f[k]) * deriv;
    }
    return trapezoid(integrand, dp);
}

void check_edges(const SpinorState &state, const char *who)
{
    const std::size_t last = state.size() - 1;
    const double edge = std::max({std::abs(state.up()[0]), std::abs(state.down()[0]),
                                  std::abs(state.up()[last]), std::abs(state.down()[last])});
    if (edge > 1e-6) {
        std::ostringstream msg;
        msg << who << ": boundary amplitude " << edge << " exceeds 1e-6";
        fail(ErrorCode::EdgeLeakage, msg.str());
    }
}

} // namespace

double mean_position_analytic(const SpinorState &initial, double t, const DiracParams &params)
{
    params.validate();
    const auto &grid = initial.grid();
    double scale = 0.0;
    for (std::size_t k = 0; k < initial.size(); ++k)
        scale = std::max(scale, std::abs(initial.up()[k]));
    for (std::size_t k = 0; k < initial.size(); ++k) {
        if (std::abs(initial.up()[k] - initial.down()[k]) > 1e-10 * std::max(scale, 1.0))
            fail(ErrorCode::NotProductState,
                 "mean_position_analytic: initial spinor is not |X> at every momentum");
    }

    // xi_p = sqrt(2) * up component for a xi_p (x) |X> state.
    CVector xi(initial.size());
    RVector zb(initial.size());
    for (std::size_t k = 0; k < initial.size(); ++k) {
        xi[k] = std::sqrt(2.0) * initial.up()[k];
        const double p = grid[k];
        const double mc = params.mc();
        const double xp = (params.m == 0.0) ? 0.0 : 0.5 * mc / (mc * mc + p * p);
        zb[k] = std::norm(xi[k]) * xp * (1.0 - std::cos(2.0 * energy(p, params) * t));
    }
    const double x0 = position_integrand_sum(xi, grid.dp()).real();
    const double v0 = mean_velocity(initial, params);
    return x0 + v0 * t + trapezoid(zb, grid.dp());
}

PositionEstimate mean_position_numeric(const SpinorState &state)
{
    check_edges(state, "mean_position_numeric");
    const double dp = state.grid().dp();
    const cplx total =
        position_integrand_sum(state.up(), dp) + position_integrand_sum(state.down(), dp);
    return {total.real(), total.imag()};
}

double mean_momentum(const SpinorState &state)
{
    RVector f(state.size());
    for (std::size_t k = 0; k < state.size(); ++k)
        f[k] = state.grid()[k] * (std::norm(state.up()[k]) + std::norm(state.down()[k]));
    return trapezoid(f, state.grid().dp());
}

double mean_velocity(const SpinorState &state, const DiracParams &params)
{
    // <sigma_y> = 2 Im(conj(up) down)
    RVector f(state.size());
    for (std::size_t k = 0; k < state.size(); ++k)
        f[k] = 2.0 * std::imag(std::conj(state.up()[k]) * state.down()[k]);
    return params.c * trapezoid(f, state.grid().dp());
}

double mean_energy(const SpinorState &state, const DiracParams &params)
{
    RVector f(state.size());
    for (std::size_t k = 0; k < state.size(); ++k) {
        const Vec2 s = state.spinor(k);
        f[k] = s.dot(hamiltonian(state.grid()[k], params) * s).real();
    }
    return trapezoid(f, state.grid().dp());
}

bool PseudospinDensity::valid(double tol) const
{
    if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > tol)
        return false;
    if (std::abs(trace() - 1.0) > tol)
        return false;
    Eigen::SelfAdjointEigenSolver<Mat2> es(rho);
    return es.eigenvalues().minCoeff() >= -tol && es.eigenvalues().maxCoeff() <= 1.0 + tol;
}

PseudospinDensity reduced_pseudospin(const SpinorState &state)
{
    const std::size_t n = state.size();
    RVector ee(n), gg(n);
    CVector eg(n);
    for (std::size_t k = 0; k < n; ++k) {
        ee[k] = std::norm(state.up()[k]);
        gg[k] = std::norm(state.down()[k]);
        eg[k] = state.up()[k] * std::conj(state.down()[k]);
    }
    const double dp = state.grid().dp();
    const cplx off = trapezoid(eg, dp);
    PseudospinDensity out;
    out.rho << trapezoid(ee, dp), off, std::conj(off), trapezoid(gg, dp);
    return out;
}

double entanglement_entropy(const PseudospinDensity &rho)
{
    const double a = rho.rho(0, 0).real();
    const double d = rho.rho(1, 1).real();
    const double b = std::abs(0.5 * (rho.rho(0, 1) + std::conj(rho.rho(1, 0))));
    const double tr = a + d;
    const double disc = std::sqrt((a - d) * (a - d) + 4.0 * b * b);
    double s = 0.0;
    for (double lambda : {0.5 * (tr + disc), 0.5 * (tr - disc)}) {
        lambda = std::clamp(lambda, 0.0, 1.0);
        if (lambda > 0.0)
            s -= lambda * std::log2(lambda);
    }
    return s;
}

} // namespace diracsim::dirac
