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
#include <string>

#include "diracsim/dirac.hpp"
#include "diracsim/types.hpp"

namespace diracsim::wigner {

struct PhaseSpaceGrid {
    double x_min = -4.5;
    double x_max = 4.5;
    std::size_t n_x = 121;
    double p_min = -4.5;
    double p_max = 4.5;
    std::size_t n_p = 121;

    double dx() const { return (x_max - x_min) / static_cast<double>(n_x - 1); }
    double dp() const { return (p_max - p_min) / static_cast<double>(n_p - 1); }
    double x(std::size_t i) const
    {
        return i + 1 == n_x ? x_max : x_min + static_cast<double>(i) * dx();
    }
    double p(std::size_t j) const
    {
        return j + 1 == n_p ? p_max : p_min + static_cast<double>(j) * dp();
    }
    std::size_t size() const { return n_x * n_p; }
    void validate() const;

    bool operator==(const PhaseSpaceGrid &) const = default;
};

struct Provenance {
    std::string scenario;
    std::string model;
    std::string outcome;  // "g", "e" or "all"
    double time = 0.0;
};

/// Quasiprobability values on a PhaseSpaceGrid, stored x-major: values[i * n_p + j].
class WignerGrid {
public:
    WignerGrid() = default;
    WignerGrid(PhaseSpaceGrid grid, RVector values, double weight);

    const PhaseSpaceGrid &grid() const { return grid_; }
    const RVector &values() const { return values_; }
    double weight() const { return weight_; }
    double at(std::size_t i, std::size_t j) const { return values_[i * grid_.n_p + j]; }
    double integral() const;

    Provenance provenance;

private:
    PhaseSpaceGrid grid_;
    RVector values_;
    double weight_ = 1.0;
};

struct ProjectionBasis {
    Vec2 plus;
    Vec2 minus;

    static ProjectionBasis computational();  // {|e>, |g>}
    static ProjectionBasis x_basis();        // {|X>, |-X>}
    void validate() const;
};

/// W_b(x, p) = (1/pi) Int dv phi_b^*(p+v) phi_b(p-v) e^{-2ivx} with phi_b = <b|spinor(p)>.
/// The v sum runs on a symmetric lattice with the state's momentum spacing; phi_b is linearly
/// interpolated and zero outside the momentum grid.
WignerGrid conditional_wigner(const dirac::SpinorState &state, const Vec2 &b,
                              const PhaseSpaceGrid &grid);

WignerGrid unconditional_wigner(const dirac::SpinorState &state, const ProjectionBasis &basis,
                                const PhaseSpaceGrid &grid);

/// Same transform for a scalar momentum wavefunction; weight is Int |phi|^2 dp.
WignerGrid wigner_from_momentum(const CVector &phi, const dirac::MomentumGrid &mgrid,
                                const PhaseSpaceGrid &grid);

/// Displaced-parity Wigner function of a Fock-space density matrix. Throws Truncation
/// when the top level carries 1e-4 or more of the population.
WignerGrid wigner_from_fock_density(const CMatrix &rho, const PhaseSpaceGrid &grid);

/// P(x) = Sum_p W dp.
RVector marginal_x(const WignerGrid &w);

struct Moments {
    double mean_x;
    double mean_p;
    double min_value;
    double negative_volume;
};

Moments moments(const WignerGrid &w);

struct PacketMoments {
    double mean_x = 0.0;
    double mean_p = 0.0;
    double weight = 0.0;
    bool distinct = false;
};

struct Discrimination {
    PacketMoments pos;  // x > 0
    PacketMoments neg;  // x < 0
    bool both_distinct() const { return pos.distinct && neg.distinct; }
};

/// Half-plane moments split at x = 0, each normalized by its own half-plane integral.
/// A side whose integral is below threshold * weight is flagged as not distinct.
Discrimination discriminate_wavepackets(const WignerGrid &w, double threshold = 0.05);

/// p_e * w_e + p_g * w_g for population-normalized conditional WFs.
WignerGrid combine_conditional(const WignerGrid &w_e, const WignerGrid &w_g, double p_e,
                               double p_g);

/// Pointwise sum a + b (weights add).
WignerGrid add(const WignerGrid &a, const WignerGrid &b);
/// Scales values and weight.
WignerGrid scaled(const WignerGrid &w, double factor);

} // namespace diracsim::wigner
