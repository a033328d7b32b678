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

#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "diracsim/circuit.hpp"
#include "diracsim/error.hpp"
#include "diracsim/types.hpp"
#include "diracsim/wigner.hpp"

namespace diracsim::tomography {

struct PhotonDistribution {
    RVector probs;

    /// Clamps entries in [-1e-9, 0) to zero; rejects anything more negative or a total
    /// above 1 + 1e-6.
    static PhotonDistribution from(RVector probs);
    static PhotonDistribution poisson(double mean, std::size_t n_max);
    static PhotonDistribution fock(std::size_t n, std::size_t n_max);

    std::size_t n_max() const { return probs.size() - 1; }
    double total() const;
    void validate() const;
};

struct RabiModel {
    double lambda_2 = 0.0;  // probe coupling, rad/ns
    double T1_p = std::numeric_limits<double>::infinity();  // ns
    double l = 1.0;
    double P_g0 = 1.0;

    double kappa(std::size_t n) const;
    void validate() const;
};

struct RabiTrace {
    RVector taus;
    RVector values;
    RabiModel model;

    void validate() const;
};

/// P_e(tau) = (1 - P_g0 Sum_n P_n e^{-kappa_n tau} cos(2 sqrt(n) lambda_2 tau)) / 2.
RabiTrace simulate_rabi(const PhotonDistribution &dist, const RabiModel &model,
                        const RVector &taus);

struct FitOptions {
    bool fit_P_g0 = false;
};

struct PhotonFit {
    PhotonDistribution dist;
    double P_g0 = 1.0;
    double residual = 0.0;   // 2-norm of the P_e misfit
    double condition = 0.0;  // Gram-matrix condition number
};

/// Nonnegative least squares on the decaying-cosine basis with Sum P_n <= 1.
PhotonFit fit_photon_distribution(const RabiTrace &trace, std::size_t n_max,
                                  const FitOptions &opts = {});

/// Lawson-Hanson active-set solver for min |Ax - b| subject to x >= 0.
Eigen::VectorXd nnls(const Eigen::MatrixXd &A, const Eigen::VectorXd &b);

/// (1/pi) Sum (-1)^n P_n.
double wigner_point(const PhotonDistribution &dist);

struct QubitFidelity {
    double F_g = 1.0;
    double F_e = 1.0;
};

/// F = F_1 (x) F_2 over outcomes ordered (gg, ge, eg, ee).
struct ReadoutCalibration {
    QubitFidelity q1;
    QubitFidelity q2;

    static ReadoutCalibration device();
    void validate() const;
    Eigen::Matrix4d matrix() const;
};

struct CalibratedPopulations {
    Eigen::Vector4d raw;
    Eigen::Vector4d clamped;
};

CalibratedPopulations apply_calibration(const Eigen::Vector4d &measured,
                                        const ReadoutCalibration &cal);

struct ConditionalDistribution {
    PhotonDistribution dist;
    double population = 0.0;
};

/// <n,k|D(-gamma) rho D(gamma)|k,n> / P_k. The distribution length grows past the state
/// cutoff until the displaced population is captured to 1e-10.
ConditionalDistribution conditional_distribution(const circuit::QubitResonatorState &joint,
                                                 circuit::Qubit outcome, cplx gamma);
/// Joint density in the QubitResonatorState index order.
ConditionalDistribution conditional_distribution(const CMatrix &joint, std::size_t n_max,
                                                 circuit::Qubit outcome, cplx gamma);
/// Unconditional field distribution (reduced field density).
PhotonDistribution field_distribution(const circuit::QubitResonatorState &joint, cplx gamma);

inline cplx gamma_at(double x, double p) { return cplx(x, p) / std::sqrt(2.0); }

struct FrameAngles {
    double theta_0 = 0.0;
    double theta_k = 0.0;
    double t = 0.0;
    double t_f = 1.0;
};

/// Conditional WF by the measurement route: frame correction on the outcome branch, then
/// wigner_point of the displaced distribution at every grid point. Population-normalized.
wigner::WignerGrid tomography_wigner(const circuit::QubitResonatorState &joint,
                                     circuit::Qubit outcome, const FrameAngles &frame,
                                     const wigner::PhaseSpaceGrid &grid);

struct DisplacedSample {
    cplx gamma;
    PhotonDistribution dist;
    double P_e = 0.0;
    double P_g = 1.0;
};

struct DisplacedSampleSet {
    std::vector<DisplacedSample> samples;

    void validate() const;
};

/// gamma = (x + i p) / sqrt(2) on an n x n lattice over [-extent, extent]^2 shifted by center.
std::vector<cplx> gamma_lattice(double extent, std::size_t n, cplx center = 0.0);

/// Noiseless samples of a field density; each distribution keeps `levels` entries.
DisplacedSampleSet synthesize_samples(const CMatrix &rho, const std::vector<cplx> &gammas,
                                      std::size_t levels);

struct ReconstructOptions {
    std::size_t max_iters = 5000;
    double tolerance = 1e-8;  // gradient-mapping norm
};

struct Reconstruction {
    CMatrix rho;
    std::size_t iterations = 0;
    double objective = 0.0;
    double gradient_norm = 0.0;
    bool converged = false;
};

class NotConvergedError : public Error {
public:
    NotConvergedError(const std::string &what, Reconstruction best)
        : Error(ErrorCode::NotConverged, what), best_(std::move(best))
    {
    }
    const Reconstruction &best() const { return best_; }

private:
    Reconstruction best_;
};

/// Least-squares fit of a density matrix to displaced photon distributions under rho >= 0,
/// tr rho = 1, by accelerated projected gradient. Throws NotConvergedError carrying the best
/// iterate.
Reconstruction reconstruct_density(const DisplacedSampleSet &samples, std::size_t n_max,
                                   const ReconstructOptions &opts = {});

/// Projection of a Hermitian matrix onto unit-trace positive semidefinite matrices.
CMatrix project_density(const CMatrix &h);

} // namespace diracsim::tomography
