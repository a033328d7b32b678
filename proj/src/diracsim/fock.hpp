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

#include "diracsim/dirac.hpp"
#include "diracsim/types.hpp"

// Truncated single-mode Fock space helpers. Quadratures follow x = (a^dag + a)/sqrt(2),
// p = i (a^dag - a)/sqrt(2).
namespace diracsim::fock {

CMatrix annihilation(std::size_t dim);
CMatrix number(std::size_t dim);
CMatrix x_quadrature(std::size_t dim);
CMatrix p_quadrature(std::size_t dim);

/// Exact matrix elements <m|D(beta)|n> for m < rows, n < cols, from the associated
/// Laguerre closed form (no truncation of the underlying operator).
CMatrix displacement_block(cplx beta, std::size_t rows, std::size_t cols);

/// Coherent state |alpha> truncated to dim levels (not renormalized).
CColumn coherent(cplx alpha, std::size_t dim);

/// Mean of x and p for a density matrix.
double mean_x(const CMatrix &rho);
double mean_p(const CMatrix &rho);

/// W at gamma = (x + ip)/sqrt(2) via the displaced-parity identity
/// W = (1/pi) Tr[rho D(2 gamma) Pi]; this is the infinite alternating photon-number sum.
double displaced_parity_wigner(const CMatrix &rho, cplx gamma);

struct DisplacedDistribution {
    RVector probs;       // <n|D(-gamma) rho D(gamma)|n>, n < probs.size()
    double captured;     // sum of probs
};

/// Photon-number distribution of D(-gamma) rho D(gamma). The output length grows in steps
/// of 8 levels until the captured mass is within tail_tol of tr(rho); throws
/// PadInsufficient if max_dim is reached first.
DisplacedDistribution displaced_distribution(const CMatrix &rho, cplx gamma,
                                             double tail_tol = 1e-10, std::size_t max_dim = 600);
/// Same for a pure (possibly unnormalized) vector.
DisplacedDistribution displaced_distribution(const CColumn &psi, cplx gamma,
                                             double tail_tol = 1e-10, std::size_t max_dim = 600);

/// Position-space harmonic oscillator eigenfunctions psi_0..psi_{count-1} at x.
RVector hermite_functions(double x, std::size_t count);

/// <p|psi> on the momentum grid for Fock amplitudes; <p|n> = (-i)^n psi_n(p).
CVector to_momentum(const CColumn &amps, const dirac::MomentumGrid &grid);
/// Inverse map by quadrature, c_n = Int dp conj(<p|n>) psi(p).
CColumn from_momentum(const CVector &psi, const dirac::MomentumGrid &grid, std::size_t dim);

/// Density matrix of a pure vector.
CMatrix outer(const CColumn &psi);

/// Uhlmann fidelity (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2.
double fidelity(const CMatrix &rho, const CMatrix &sigma);

} // namespace diracsim::fock
