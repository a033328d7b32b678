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

#pragma once

// Independent reference implementations used only by the tests. None of these call into
// the library's numerics.

#include <cmath>
#include <complex>
#include <functional>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

namespace oracle {

using cplx = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;
using CMatrix = Eigen::MatrixXcd;

inline constexpr double pi = 3.14159265358979323846;

inline Mat2 pauli_y()
{
    Mat2 m;
    m << 0.0, cplx(0.0, -1.0), cplx(0.0, 1.0), 0.0;
    return m;
}

inline Mat2 pauli_z()
{
    Mat2 m;
    m << 1.0, 0.0, 0.0, -1.0;
    return m;
}

inline Mat2 dirac_matrix(double p, double c, double m) { return c * p * pauli_y() + m * c * c * pauli_z(); }

inline Mat2 propagator_by_diagonalization(double p, double t, double c, double m)
{
    Eigen::SelfAdjointEigenSolver<Mat2> es(dirac_matrix(p, c, m));
    Mat2 phase = Mat2::Zero();
    for (int k = 0; k < 2; ++k)
        phase(k, k) = std::exp(cplx(0.0, -es.eigenvalues()(k) * t));
    return es.eigenvectors() * phase * es.eigenvectors().adjoint();
}

// Entropy of Int dp |xi_p|^2 |phi_+><phi_+| by composite Simpson on a wide fine grid,
// phi_+ from the 2x2 eigensolver.
inline double positive_branch_entropy(double p0, double dp, double m, double c)
{
    const int n = 40000;
    const double lo = p0 - 14.0 * dp, hi = p0 + 14.0 * dp;
    const double h = (hi - lo) / n;
    Mat2 rho = Mat2::Zero();
    for (int k = 0; k <= n; ++k) {
        const double p = lo + k * h;
        const double w = (k == 0 || k == n) ? 1.0 : (k % 2 ? 4.0 : 2.0);
        const double dens = std::exp(-(p - p0) * (p - p0) / (2.0 * dp * dp)) / (dp * std::sqrt(2.0 * pi));
        Eigen::SelfAdjointEigenSolver<Mat2> es(dirac_matrix(p, c, m));
        const Eigen::Vector2cd v = es.eigenvectors().col(1);
        rho += w * dens * (v * v.adjoint());
    }
    rho *= h / 3.0;
    Eigen::SelfAdjointEigenSolver<Mat2> es(rho);
    double s = 0.0;
    for (int k = 0; k < 2; ++k) {
        const double l = es.eigenvalues()(k);
        if (l > 0.0)
            s -= l * std::log2(l);
    }
    return s;
}

// (1/pi) Int dv phi*(p+v) phi(p-v) e^{-2ivx} by a dense midpoint sum over [-vmax, vmax].
inline double wigner_brute_force(const std::function<cplx(double)> &phi, double x, double p,
                                 double vmax = 12.0, int n = 48000)
{
    const double h = 2.0 * vmax / n;
    cplx s = 0.0;
    for (int k = 0; k < n; ++k) {
        const double v = -vmax + (k + 0.5) * h;
        s += std::conj(phi(p + v)) * phi(p - v) * std::exp(cplx(0.0, -2.0 * v * x));
    }
    return (s * h).real() / pi;
}

inline CMatrix ladder(int dim)
{
    CMatrix a = CMatrix::Zero(dim, dim);
    for (int n = 1; n < dim; ++n)
        a(n - 1, n) = std::sqrt(static_cast<double>(n));
    return a;
}

inline CMatrix kron(const CMatrix &a, const CMatrix &b)
{
    CMatrix out = CMatrix::Zero(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            for (int k = 0; k < b.rows(); ++k)
                for (int l = 0; l < b.cols(); ++l)
                    out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    return out;
}

// D(beta) by dense matrix exponential in a padded space, cropped to dim x dim.
inline CMatrix displacement_expm(cplx beta, int dim, int pad = 80)
{
    const CMatrix a = ladder(dim + pad);
    const CMatrix gen = beta * a.adjoint() - std::conj(beta) * a;
    const CMatrix d = gen.exp();
    return d.topLeftCorner(dim, dim);
}

inline double gaussian_wigner(double x, double p, double x0, double p0)
{
    return std::exp(-(x - x0) * (x - x0) - (p - p0) * (p - p0)) / pi;
}

inline double fock1_wigner(double x, double p)
{
    const double r2 = x * x + p * p;
    return (2.0 * r2 - 1.0) * std::exp(-r2) / pi;
}

} // namespace oracle
