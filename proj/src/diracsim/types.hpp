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

#include <complex>
#include <numbers>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace diracsim {

using cplx = std::complex<double>;
using CVector = std::vector<cplx>;
using RVector = std::vector<double>;

using Mat2 = Eigen::Matrix2cd;
using Vec2 = Eigen::Vector2cd;
using CMatrix = Eigen::MatrixXcd;
using CColumn = Eigen::VectorXcd;

inline constexpr double kPi = std::numbers::pi;
inline constexpr cplx kI{0.0, 1.0};

// Frequencies in the circuit model are angular, rad/ns.
inline constexpr double mhz_to_rad_per_ns(double mhz) { return 2.0 * kPi * mhz * 1e-3; }
inline constexpr double rad_per_ns_to_mhz(double w) { return w / (2.0 * kPi * 1e-3); }

// Trapezoidal rule on a uniform grid.
inline double trapezoid(std::span<const double> f, double h)
{
    if (f.size() < 2)
        return 0.0;
    double s = 0.5 * (f.front() + f.back());
    for (std::size_t k = 1; k + 1 < f.size(); ++k)
        s += f[k];
    return s * h;
}

inline cplx trapezoid(std::span<const cplx> f, double h)
{
    if (f.size() < 2)
        return 0.0;
    cplx s = 0.5 * (f.front() + f.back());
    for (std::size_t k = 1; k + 1 < f.size(); ++k)
        s += f[k];
    return s * h;
}

} // namespace diracsim
