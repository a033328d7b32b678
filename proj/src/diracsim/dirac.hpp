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

#include <cstddef>
#include <functional>

#include "diracsim/types.hpp"

// Exact continuum dynamics of the 1+1D Dirac Hamiltonian H = c sigma_y p + m c^2 sigma_z
// in the momentum representation. Pseudospin component 0 is |e>, component 1 is |g>.
namespace diracsim::dirac {

struct DiracParams {
    double c = 1.0;
    double m = 1.0;

    double mc() const { return m * c; }
    double rest_energy() const { return m * c * c; }
    void validate() const;
};

/// Uniform momentum lattice, values[k] = p_min + k * dp.
class MomentumGrid {
public:
    MomentumGrid(double p_min, double p_max, std::size_t n_points);

    /// Grid spanning p0 +- 8 delta_p, widened to at least [-10, 10].
    static MomentumGrid for_packet(double p0, double delta_p, std::size_t n_points = 4096);

    double p_min() const { return p_min_; }
    double p_max() const { return p_max_; }
    std::size_t size() const { return n_; }
    double dp() const { return dp_; }
    double operator[](std::size_t k) const { return p_min_ + static_cast<double>(k) * dp_; }

    bool operator==(const MomentumGrid &) const = default;

private:
    double p_min_;
    double p_max_;
    std::size_t n_;
    double dp_;
};

struct Eigensystem {
    double energy;  // E_p >= 0
    double angle;   // phi_p, tan(2 phi_p) = p / (m c)
    Vec2 v_plus;    // (cos phi_p, i sin phi_p)
    Vec2 v_minus;   // (i sin phi_p, cos phi_p)
};

double energy(double p, const DiracParams &params);
double mixing_angle(double p, const DiracParams &params);
Mat2 hamiltonian(double p, const DiracParams &params);
/// exp(-i H(p) t), closed form.
Mat2 propagator(double p, double t, const DiracParams &params);
Eigensystem eigensystem(double p, const DiracParams &params);

Vec2 ket_e();
Vec2 ket_g();
Vec2 ket_x();        // (1, 1)/sqrt(2)
Vec2 ket_minus_x();  // (1, -1)/sqrt(2)

/// Normalized Gaussian momentum amplitude with |xi_p|^2 of standard deviation delta_p.
double gaussian_amplitude(double p, double p0, double delta_p);

class SpinorState {
public:
    SpinorState(MomentumGrid grid, CVector up, CVector down);

    /// xi(p) (x) spinor sampled on the grid (not renormalized).
    static SpinorState product(const MomentumGrid &grid, const std::function<cplx(double)> &xi,
                               const Vec2 &spinor);

    const MomentumGrid &grid() const { return grid_; }
    const CVector &up() const { return up_; }
    const CVector &down() const { return down_; }
    std::size_t size() const { return up_.size(); }
    Vec2 spinor(std::size_t k) const { return Vec2(up_[k], down_[k]); }
    void set_spinor(std::size_t k, const Vec2 &s)
    {
        up_[k] = s(0);
        down_[k] = s(1);
    }

    double norm_squared() const;
    SpinorState &normalize();
    /// Component of the state along the pseudospin vector b, <b|spinor(p)>.
    CVector project(const Vec2 &b) const;

private:
    MomentumGrid grid_;
    CVector up_;
    CVector down_;
};

/// Gaussian packet xi_p e^{-i p x0} (x) spinor, normalized on the grid.
SpinorState gaussian_product_state(const MomentumGrid &grid, double p0, double delta_p, double x0,
                                   const Vec2 &spinor);

SpinorState evolve(const SpinorState &state, double t, const DiracParams &params);

using PhaseProfile = std::function<double(double)>;

/// e^{i theta(p)} xi_p |phi_+(p)>, renormalized on the grid. Throws GridTooNarrow when
/// more than 1e-6 of the Gaussian mass lies outside the grid.
SpinorState positive_branch_state(double p0, double delta_p, const PhaseProfile &theta,
                                  const MomentumGrid &grid, const DiracParams &params);

/// Closed-form mean position for an initial xi_p (x) |X> state:
/// <x(0)> + <v(0)> t + Int dp |xi_p|^2 x_p (1 - cos 2 E_p t), x_p = d phi_p / dp.
/// Throws NotProductState if the spinor is not |X> at every momentum.
double mean_position_analytic(const SpinorState &initial, double t, const DiracParams &params);

struct PositionEstimate {
    double value;
    double imag_residue;
};

/// <x> with x = i d/dp by central differences. Throws EdgeLeakage if the state does not
/// vanish at the grid edges.
PositionEstimate mean_position_numeric(const SpinorState &state);

double mean_momentum(const SpinorState &state);
/// c <sigma_y>, the expectation of the velocity operator dH/dp.
double mean_velocity(const SpinorState &state, const DiracParams &params);
double mean_energy(const SpinorState &state, const DiracParams &params);

struct PseudospinDensity {
    Mat2 rho;

    double trace() const { return rho.trace().real(); }
    double purity() const { return (rho * rho).trace().real(); }
    /// Hermiticity, trace and eigenvalue bounds at the given tolerance.
    bool valid(double tol = 1e-10) const;
};

PseudospinDensity reduced_pseudospin(const SpinorState &state);

/// Von Neumann entropy in bits; eigenvalues are clamped to [0, 1].
double entanglement_entropy(const PseudospinDensity &rho);

} // namespace diracsim::dirac
