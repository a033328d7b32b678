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

#include "diracsim/wigner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "diracsim/error.hpp"
#include "diracsim/fock.hpp"
#include "diracsim/parallel.hpp"

namespace diracsim::wigner {

void PhaseSpaceGrid::validate() const
{
    require(n_x >= 2 && n_p >= 2, "PhaseSpaceGrid: need at least two points per axis");
    require(std::isfinite(x_min) && std::isfinite(x_max) && x_min < x_max,
            "PhaseSpaceGrid: x axis must be increasing");
    require(std::isfinite(p_min) && std::isfinite(p_max) && p_min < p_max,
            "PhaseSpaceGrid: p axis must be increasing");
}

WignerGrid::WignerGrid(PhaseSpaceGrid grid, RVector values, double weight)
    : grid_(grid), values_(std::move(values)), weight_(weight)
{
    grid_.validate();
    require(values_.size() == grid_.size(), "WignerGrid: value count does not match the grid");
}

double WignerGrid::integral() const
{
    double s = 0.0;
    for (double v : values_)
        s += v;
    return s * grid_.dx() * grid_.dp();
}

ProjectionBasis ProjectionBasis::computational() { return {dirac::ket_e(), dirac::ket_g()}; }

ProjectionBasis ProjectionBasis::x_basis() { return {dirac::ket_x(), dirac::ket_minus_x()}; }

void ProjectionBasis::validate() const
{
    require(std::abs(plus.norm() - 1.0) <= 1e-12 && std::abs(minus.norm() - 1.0) <= 1e-12,
            "ProjectionBasis: vectors must be unit norm");
    require(std::abs(plus.dot(minus)) <= 1e-12, "ProjectionBasis: vectors must be orthogonal");
}

WignerGrid wigner_from_momentum(const CVector &phi, const dirac::MomentumGrid &mgrid,
                                const PhaseSpaceGrid &grid)
{
    grid.validate();
    require(phi.size() == mgrid.size(), "wigner_from_momentum: length does not match the grid");
    const std::size_t n = mgrid.size();
    const double h = mgrid.dp();

    const double edge = std::max(std::abs(phi.front()), std::abs(phi.back()));
    if (edge > 1e-6) {
        std::ostringstream msg;
        msg << "conditional_wigner: projected amplitude " << edge << " at the momentum-grid edge";
        fail(ErrorCode::EdgeLeakage, msg.str());
    }

    RVector dens(n);
    for (std::size_t k = 0; k < n; ++k)
        dens[k] = std::norm(phi[k]);
    const double weight = trapezoid(dens, h);

    // Support of phi, used to skip lags that only see zeros.
    const double cutoff = 1e-15 * std::sqrt(*std::max_element(dens.begin(), dens.end()) + 1e-300);
    std::size_t lo = 0, hi = n - 1;
    while (lo < hi && std::abs(phi[lo]) <= cutoff)
        ++lo;
    while (hi > lo && std::abs(phi[hi]) <= cutoff)
        --hi;
    const double support_lo = mgrid[lo];
    const double support_hi = mgrid[hi];

    const std::size_t max_lag = (n - 1) / 2;
    auto interp = [&](double p) -> cplx {
        const double s = (p - mgrid.p_min()) / h;
        if (s < 0.0 || s > static_cast<double>(n - 1))
            return 0.0;
        const std::size_t i0 = std::min(static_cast<std::size_t>(s), n - 2);
        const double f = s - static_cast<double>(i0);
        return (1.0 - f) * phi[i0] + f * phi[i0 + 1];
    };

    // e^{-2 i v_k x_i} tables, v_k = k h.
    std::vector<CVector> phase(grid.n_x, CVector(max_lag + 1));
    for (std::size_t i = 0; i < grid.n_x; ++i)
        for (std::size_t k = 0; k <= max_lag; ++k)
            phase[i][k] = std::polar(1.0, -2.0 * static_cast<double>(k) * h * grid.x(i));

    RVector values(grid.size(), 0.0);
    parallel_for(grid.n_p, [&](std::size_t j) {
        const double p = grid.p(j);
        // Lags beyond this bound put one of p +- v outside the support.
        const double reach = std::min(std::abs(p - support_lo), std::abs(support_hi - p));
        if (p < support_lo || p > support_hi)
            return;
        const std::size_t lags =
            std::min<std::size_t>(max_lag, static_cast<std::size_t>(reach / h) + 2);
        CVector g(lags + 1);
        for (std::size_t k = 0; k <= lags; ++k) {
            const double v = static_cast<double>(k) * h;
            g[k] = std::conj(interp(p + v)) * interp(p - v);
        }
        for (std::size_t i = 0; i < grid.n_x; ++i) {
            double s = g[0].real();
            const CVector &ph = phase[i];
            for (std::size_t k = 1; k <= lags; ++k)
                s += 2.0 * (g[k] * ph[k]).real();
            values[i * grid.n_p + j] = s * h / kPi;
        }
    });
    return WignerGrid(grid, std::move(values), weight);
}

WignerGrid conditional_wigner(const dirac::SpinorState &state, const Vec2 &b,
                              const PhaseSpaceGrid &grid)
{
    require(std::abs(b.norm() - 1.0) <= 1e-12, "conditional_wigner: basis vector must be unit norm");
    return wigner_from_momentum(state.project(b), state.grid(), grid);
}

WignerGrid add(const WignerGrid &a, const WignerGrid &b)
{
    if (!(a.grid() == b.grid()))
        fail(ErrorCode::GridMismatch, "WignerGrid: phase-space grids differ");
    RVector v(a.values().size());
    for (std::size_t k = 0; k < v.size(); ++k)
        v[k] = a.values()[k] + b.values()[k];
    return WignerGrid(a.grid(), std::move(v), a.weight() + b.weight());
}

WignerGrid scaled(const WignerGrid &w, double factor)
{
    RVector v(w.values());
    for (double &x : v)
        x *= factor;
    WignerGrid out(w.grid(), std::move(v), w.weight() * factor);
    out.provenance = w.provenance;
    return out;
}

WignerGrid unconditional_wigner(const dirac::SpinorState &state, const ProjectionBasis &basis,
                                const PhaseSpaceGrid &grid)
{
    basis.validate();
    WignerGrid out = add(conditional_wigner(state, basis.plus, grid),
                         conditional_wigner(state, basis.minus, grid));
    return WignerGrid(out.grid(), out.values(), 1.0);
}

WignerGrid wigner_from_fock_density(const CMatrix &rho, const PhaseSpaceGrid &grid)
{
    grid.validate();
    require(rho.rows() == rho.cols() && rho.rows() >= 1, "wigner_from_fock_density: rho must be square");
    require((rho - rho.adjoint()).cwiseAbs().maxCoeff() <= 1e-8,
            "wigner_from_fock_density: rho must be Hermitian");
    const double tr = rho.trace().real();
    require(std::abs(tr - 1.0) <= 1e-6, "wigner_from_fock_density: rho must have unit trace");
    const Eigen::Index top = rho.rows() - 1;
    if (rho.rows() > 1 && rho(top, top).real() >= 1e-4) {
        std::ostringstream msg;
        msg << "wigner_from_fock_density: population " << rho(top, top).real()
            << " at the Fock cutoff n = " << top;
        fail(ErrorCode::Truncation, msg.str());
    }
    RVector values(grid.size());
    parallel_for(grid.n_x, [&](std::size_t i) {
        for (std::size_t j = 0; j < grid.n_p; ++j) {
            const cplx gamma = cplx(grid.x(i), grid.p(j)) / std::sqrt(2.0);
            values[i * grid.n_p + j] = fock::displaced_parity_wigner(rho, gamma);
        }
    });
    return WignerGrid(grid, std::move(values), tr);
}

RVector marginal_x(const WignerGrid &w)
{
    const auto &g = w.grid();
    RVector out(g.n_x, 0.0);
    for (std::size_t i = 0; i < g.n_x; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < g.n_p; ++j)
            s += w.at(i, j);
        out[i] = s * g.dp();
    }
    return out;
}

Moments moments(const WignerGrid &w)
{
    if (w.weight() < 1e-12)
        fail(ErrorCode::ZeroWeight, "moments: Wigner function has zero weight");
    const auto &g = w.grid();
    const double cell = g.dx() * g.dp();
    Moments m{0.0, 0.0, std::numeric_limits<double>::infinity(), 0.0};
    for (std::size_t i = 0; i < g.n_x; ++i) {
        for (std::size_t j = 0; j < g.n_p; ++j) {
            const double v = w.at(i, j);
            m.mean_x += g.x(i) * v;
            m.mean_p += g.p(j) * v;
            m.min_value = std::min(m.min_value, v);
            if (v < 0.0)
                m.negative_volume -= v;
        }
    }
    m.mean_x *= cell / w.weight();
    m.mean_p *= cell / w.weight();
    m.negative_volume *= cell;
    return m;
}

Discrimination discriminate_wavepackets(const WignerGrid &w, double threshold)
{
    const auto &g = w.grid();
    const double cell = g.dx() * g.dp();
    const double on_axis = 1e-9 * g.dx();
    double sum_w[2] = {0.0, 0.0}, sum_x[2] = {0.0, 0.0}, sum_p[2] = {0.0, 0.0};
    for (std::size_t i = 0; i < g.n_x; ++i) {
        const double x = g.x(i);
        double share[2];
        if (std::abs(x) <= on_axis) {
            share[0] = share[1] = 0.5;
        } else {
            share[0] = x > 0.0 ? 1.0 : 0.0;
            share[1] = 1.0 - share[0];
        }
        for (std::size_t j = 0; j < g.n_p; ++j) {
            const double v = w.at(i, j) * cell;
            for (int s = 0; s < 2; ++s) {
                sum_w[s] += share[s] * v;
                sum_x[s] += share[s] * x * v;
                sum_p[s] += share[s] * g.p(j) * v;
            }
        }
    }
    Discrimination out;
    PacketMoments *sides[2] = {&out.pos, &out.neg};
    for (int s = 0; s < 2; ++s) {
        PacketMoments &pm = *sides[s];
        pm.weight = sum_w[s];
        pm.distinct = sum_w[s] >= threshold * w.weight();
        if (std::abs(sum_w[s]) > 1e-300) {
            pm.mean_x = sum_x[s] / sum_w[s];
            pm.mean_p = sum_p[s] / sum_w[s];
        }
    }
    return out;
}

WignerGrid combine_conditional(const WignerGrid &w_e, const WignerGrid &w_g, double p_e, double p_g)
{
    if (!(w_e.grid() == w_g.grid()))
        fail(ErrorCode::GridMismatch, "combine_conditional: phase-space grids differ");
    require(p_e >= 0.0 && p_g >= 0.0 && std::abs(p_e + p_g - 1.0) <= 1e-6,
            "combine_conditional: populations must be non-negative and sum to 1");
    RVector v(w_e.values().size());
    for (std::size_t k = 0; k < v.size(); ++k)
        v[k] = p_e * w_e.values()[k] + p_g * w_g.values()[k];
    WignerGrid out(w_e.grid(), std::move(v), 1.0);
    out.provenance = w_e.provenance;
    out.provenance.outcome = "all";
    return out;
}

} // namespace diracsim::wigner
