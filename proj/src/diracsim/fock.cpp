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

#include "diracsim/fock.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "diracsim/error.hpp"

namespace diracsim::fock {

CMatrix annihilation(std::size_t dim)
{
    CMatrix a = CMatrix::Zero(dim, dim);
    for (std::size_t n = 1; n < dim; ++n)
        a(n - 1, n) = std::sqrt(static_cast<double>(n));
    return a;
}

CMatrix number(std::size_t dim)
{
    CMatrix n = CMatrix::Zero(dim, dim);
    for (std::size_t k = 0; k < dim; ++k)
        n(k, k) = static_cast<double>(k);
    return n;
}

CMatrix x_quadrature(std::size_t dim)
{
    const CMatrix a = annihilation(dim);
    return (a.adjoint() + a) / std::sqrt(2.0);
}

CMatrix p_quadrature(std::size_t dim)
{
    const CMatrix a = annihilation(dim);
    return kI * (a.adjoint() - a) / std::sqrt(2.0);
}

namespace {

// Element of <m|D|n> along one diagonal. lead is the smaller of (m, n), offset |m - n|.
// Returns sqrt(lead!/(lead+offset)!) r^offset e^{-r^2/2} L_lead^{(offset)}(r^2) for all
// lead = 0..count-1.
void diagonal_magnitudes(double r, std::size_t offset, std::size_t count, const RVector &log_fact,
                         RVector &out)
{
    out.assign(count, 0.0);
    const double x = r * r;
    const double k = static_cast<double>(offset);
    const double log_r = std::log(r);
    double l_prev = 0.0;
    double l_cur = 1.0;
    for (std::size_t j = 0; j < count; ++j) {
        if (j == 1) {
            l_prev = l_cur;
            l_cur = 1.0 + k - x;
        } else if (j > 1) {
            const double jj = static_cast<double>(j - 1);
            const double l_next = ((2.0 * jj + 1.0 + k - x) * l_cur - (jj + k) * l_prev) / (jj + 1.0);
            l_prev = l_cur;
            l_cur = l_next;
        }
        if (l_cur == 0.0) {
            out[j] = 0.0;
            continue;
        }
        const double log_pref =
            0.5 * (log_fact[j] - log_fact[j + offset]) + k * log_r - 0.5 * x;
        const double mag = std::exp(log_pref + std::log(std::abs(l_cur)));
        out[j] = l_cur < 0.0 ? -mag : mag;
    }
}

} // namespace

CMatrix displacement_block(cplx beta, std::size_t rows, std::size_t cols)
{
    CMatrix d = CMatrix::Zero(rows, cols);
    const double r = std::abs(beta);
    if (r == 0.0) {
        for (std::size_t k = 0; k < std::min(rows, cols); ++k)
            d(k, k) = 1.0;
        return d;
    }
    const double phase = std::arg(beta);
    const std::size_t top = rows + cols + 1;
    RVector log_fact(top);
    for (std::size_t k = 0; k < top; ++k)
        log_fact[k] = std::lgamma(static_cast<double>(k) + 1.0);

    RVector mags;
    // m >= n: sqrt(n!/m!) beta^{m-n} e^{-|beta|^2/2} L_n^{(m-n)}(|beta|^2)
    for (std::size_t off = 0; off < rows; ++off) {
        const std::size_t count = std::min(cols, rows - off);
        diagonal_magnitudes(r, off, count, log_fact, mags);
        const cplx ph = std::polar(1.0, static_cast<double>(off) * phase);
        for (std::size_t n = 0; n < count; ++n)
            d(n + off, n) = mags[n] * ph;
    }
    // m < n: sqrt(m!/n!) (-beta^*)^{n-m} e^{-|beta|^2/2} L_m^{(n-m)}(|beta|^2)
    for (std::size_t off = 1; off < cols; ++off) {
        const std::size_t count = std::min(rows, cols - off);
        diagonal_magnitudes(r, off, count, log_fact, mags);
        const double sign = (off % 2 == 0) ? 1.0 : -1.0;
        const cplx ph = sign * std::polar(1.0, -static_cast<double>(off) * phase);
        for (std::size_t m = 0; m < count; ++m)
            d(m, m + off) = mags[m] * ph;
    }
    return d;
}

CColumn coherent(cplx alpha, std::size_t dim)
{
    CColumn v(dim);
    cplx term = std::exp(-0.5 * std::norm(alpha));
    for (std::size_t n = 0; n < dim; ++n) {
        if (n > 0)
            term *= alpha / std::sqrt(static_cast<double>(n));
        v(n) = term;
    }
    return v;
}

double mean_x(const CMatrix &rho)
{
    return (rho * x_quadrature(rho.rows())).trace().real();
}

double mean_p(const CMatrix &rho)
{
    return (rho * p_quadrature(rho.rows())).trace().real();
}

double displaced_parity_wigner(const CMatrix &rho, cplx gamma)
{
    const std::size_t n = rho.rows();
    const CMatrix d = displacement_block(2.0 * gamma, n, n);
    cplx s = 0.0;
    for (std::size_t col = 0; col < n; ++col) {
        const double parity = (col % 2 == 0) ? 1.0 : -1.0;
        cplx acc = 0.0;
        for (std::size_t row = 0; row < n; ++row)
            acc += rho(col, row) * d(row, col);
        s += parity * acc;
    }
    return s.real() / kPi;
}

namespace {

template <typename Probs>
DisplacedDistribution grow_until_captured(std::size_t base_dim, double target, double tail_tol,
                                          std::size_t max_dim, Probs &&probs_for)
{
    std::size_t dim = base_dim + 8;
    while (true) {
        DisplacedDistribution out;
        out.probs = probs_for(dim);
        out.captured = 0.0;
        for (double p : out.probs)
            out.captured += p;
        if (target - out.captured <= tail_tol * std::max(target, 1e-300))
            return out;
        if (dim + 8 > max_dim) {
            std::ostringstream msg;
            msg << "displaced_distribution: " << target - out.captured
                << " of the population lies above " << dim << " photons";
            fail(ErrorCode::PadInsufficient, msg.str());
        }
        dim += 8;
    }
}

} // namespace

DisplacedDistribution displaced_distribution(const CMatrix &rho, cplx gamma, double tail_tol,
                                             std::size_t max_dim)
{
    const std::size_t n0 = rho.rows();
    const double target = rho.trace().real();
    return grow_until_captured(n0, target, tail_tol, max_dim, [&](std::size_t dim) {
        const CMatrix d = displacement_block(-gamma, dim, n0);
        const CMatrix dr = d * rho;
        RVector probs(dim);
        for (std::size_t n = 0; n < dim; ++n)
            probs[n] = std::max(0.0, dr.row(n).dot(d.row(n)).real());
        return probs;
    });
}

DisplacedDistribution displaced_distribution(const CColumn &psi, cplx gamma, double tail_tol,
                                             std::size_t max_dim)
{
    const std::size_t n0 = psi.size();
    const double target = psi.squaredNorm();
    return grow_until_captured(n0, target, tail_tol, max_dim, [&](std::size_t dim) {
        const CColumn c = displacement_block(-gamma, dim, n0) * psi;
        RVector probs(dim);
        for (std::size_t n = 0; n < dim; ++n)
            probs[n] = std::norm(c(n));
        return probs;
    });
}

RVector hermite_functions(double x, std::size_t count)
{
    RVector h(count, 0.0);
    if (count == 0)
        return h;
    h[0] = std::pow(kPi, -0.25) * std::exp(-0.5 * x * x);
    if (count > 1)
        h[1] = std::sqrt(2.0) * x * h[0];
    for (std::size_t n = 1; n + 1 < count; ++n) {
        const double nn = static_cast<double>(n);
        h[n + 1] = std::sqrt(2.0 / (nn + 1.0)) * x * h[n] - std::sqrt(nn / (nn + 1.0)) * h[n - 1];
    }
    return h;
}

namespace {

cplx minus_i_pow(std::size_t n)
{
    switch (n % 4) {
    case 0: return 1.0;
    case 1: return -kI;
    case 2: return -1.0;
    default: return kI;
    }
}

} // namespace

CVector to_momentum(const CColumn &amps, const dirac::MomentumGrid &grid)
{
    const std::size_t dim = amps.size();
    CVector out(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const RVector h = hermite_functions(grid[k], dim);
        cplx s = 0.0;
        for (std::size_t n = 0; n < dim; ++n)
            s += amps(n) * minus_i_pow(n) * h[n];
        out[k] = s;
    }
    return out;
}

CColumn from_momentum(const CVector &psi, const dirac::MomentumGrid &grid, std::size_t dim)
{
    require(psi.size() == grid.size(), "from_momentum: length does not match the grid");
    std::vector<CVector> integrands(dim, CVector(grid.size()));
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const RVector h = hermite_functions(grid[k], dim);
        for (std::size_t n = 0; n < dim; ++n)
            integrands[n][k] = std::conj(minus_i_pow(n)) * h[n] * psi[k];
    }
    CColumn out(dim);
    for (std::size_t n = 0; n < dim; ++n)
        out(n) = trapezoid(integrands[n], grid.dp());
    return out;
}

CMatrix outer(const CColumn &psi)
{
    return psi * psi.adjoint();
}

namespace {

CMatrix psd_sqrt(const CMatrix &m)
{
    Eigen::SelfAdjointEigenSolver<CMatrix> es(m);
    const double floor = 1e-13 * std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
    Eigen::VectorXd lam = es.eigenvalues();
    for (Eigen::Index k = 0; k < lam.size(); ++k)
        lam(k) = lam(k) > floor ? std::sqrt(lam(k)) : 0.0;
    return es.eigenvectors() * lam.asDiagonal() * es.eigenvectors().adjoint();
}

} // namespace

double fidelity(const CMatrix &rho, const CMatrix &sigma)
{
    require(rho.rows() == sigma.rows() && rho.cols() == sigma.cols(),
            "fidelity: dimension mismatch");
    const CMatrix s = psd_sqrt(rho);
    const CMatrix inner = s * sigma * s;
    Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (inner + inner.adjoint()));
    const double floor = 1e-13 * std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
    double tr = 0.0;
    for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k)
        if (es.eigenvalues()(k) > floor)
            tr += std::sqrt(es.eigenvalues()(k));
    return tr * tr;
}

} // namespace diracsim::fock
