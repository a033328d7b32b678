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
#include <cstddef>
#include <functional>
#include <vector>

#include "diracsim/dirac.hpp"
#include "diracsim/types.hpp"

// Driven, parametrically modulated qubit coupled to one resonator mode, truncated at n_max
// photons. State index = qubit * (n_max + 1) + n with qubit 0 = |e>, 1 = |g>.
// Angular frequencies are rad/ns, times ns.
namespace diracsim::circuit {

/// J_n(x) by normalized downward (Miller) recurrence.
double bessel_j(int n, double x);

struct CircuitParams {
    double omega_0 = 0.0;  // qubit mean frequency (only enters the resonance diagnostic)
    double omega_r = 0.0;  // resonator frequency
    double lambda = 0.0;   // qubit-resonator coupling
    double eps_1 = 0.0, nu_1 = 1.0, phi_1 = 0.0;
    double eps_2 = 0.0, nu_2 = 0.0, phi_2 = 0.0;
    double Omega = 0.0, theta = kPi / 2.0;
    double delta = 0.0;      // static qubit detuning correction
    double eps_drive = 0.0;  // resonator drive amplitude (linear potential)
    double drive_detuning = 0.0;  // resonator drive offset from omega_r, full model only

    double mu() const { return eps_1 / nu_1; }
    /// |omega_r - omega_0 - 2 nu_1|; zero when the second-sideband resonance holds.
    double resonance_mismatch() const;
    void validate() const;

    /// Device and drive values of the Zitterbewegung run (2 pi x MHz).
    static CircuitParams zitterbewegung_device();
    /// Same device, eps_2 = 0 and eps_drive = 2 pi x 0.39 MHz.
    static CircuitParams klein_device();
};

struct ValidityRatios {
    double coupling_over_nu1;   // lambda / nu_1
    double carrier_over_nu1;    // K / nu_1
    double sideband_over_2k;    // max(eta, eps_2 / 2) / (2 K)
};

struct EffectiveParams {
    double mu = 0.0;
    double K = 0.0;      // Omega J_0(mu)
    double eta = 0.0;    // lambda J_2(mu) / 2
    double omega = 0.0;  // eps_2 / 4
    double c_star = 0.0;  // sqrt(2) eta
    double m_star = 0.0;  // omega / c_star^2 (0 when c_star = 0)
    ValidityRatios validity{};

    dirac::DiracParams dirac() const { return {c_star, m_star}; }
};

EffectiveParams effective_params(const CircuitParams &p);

enum class Qubit : int { e = 0, g = 1 };

class QubitResonatorState {
public:
    explicit QubitResonatorState(std::size_t n_max);
    QubitResonatorState(CColumn amplitudes, std::size_t n_max);

    std::size_t n_max() const { return n_max_; }
    std::size_t field_dim() const { return n_max_ + 1; }
    std::size_t size() const { return 2 * field_dim(); }
    std::size_t index(Qubit q, std::size_t n) const
    {
        return static_cast<std::size_t>(q) * field_dim() + n;
    }

    const CColumn &amplitudes() const { return amps_; }
    CColumn &amplitudes() { return amps_; }

    /// <q|psi>, unnormalized field amplitudes.
    CColumn field_component(Qubit q) const;
    double population(Qubit q) const;
    double norm() const { return amps_.norm(); }
    /// Population of the top Fock level summed over the qubit.
    double tail_population() const;

    Mat2 reduced_qubit() const;
    CMatrix reduced_field() const;
    /// Field density conditioned on q, normalized by its population. Throws ZeroPopulation.
    CMatrix conditional_field(Qubit q) const;

    double mean_x() const;
    double mean_p() const;
    double entropy() const;

private:
    std::size_t n_max_;
    CColumn amps_;
};

/// Qubit rotation exp(-i angle/2 n.sigma) in the gate convention where |g> is the +z pole,
/// so a pi/2 rotation about y takes |g> to |X>.
struct QubitRotation {
    std::array<double, 3> axis{0.0, 1.0, 0.0};
    double angle = 0.0;

    Mat2 matrix() const;  // in (e, g) ordering
};

/// |R g> (x) D(i p0/sqrt(2))|0>. Throws Truncation when the top Fock level carries 1e-4
/// or more of the coherent state.
QubitResonatorState prepare_initial(double p0_displacement, const QubitRotation &rotation,
                                    std::size_t n_max);

/// Time-dependent interaction-picture Hamiltonian of the modulated circuit.
class FullModel {
public:
    FullModel(CircuitParams params, std::size_t n_max);

    const CircuitParams &params() const { return params_; }
    std::size_t dim() const { return 2 * (n_max_ + 1); }

    /// Dense H'_I(t).
    CMatrix hamiltonian(double t) const;
    /// out = -i H'_I(t) psi without assembling the matrix.
    void derivative(double t, Eigen::Ref<const CColumn> psi, Eigen::Ref<CColumn> out) const;

private:
    struct Coefficients {
        double ee;      // coefficient of |e><e|
        cplx lower_a;   // coefficient of a^dag |g><e|
        cplx lower;     // coefficient of |g><e|
        cplx drive;     // coefficient of a (h.c. on a^dag)
    };
    Coefficients coefficients(double t) const;

    CircuitParams params_;
    std::size_t n_max_;
    RVector sqrt_n_;
};

/// Static effective Hamiltonian -eta e^{-i theta} a^dag sigma_theta + h.c. + omega sigma_z
/// + sqrt(2) eps_drive x.
CMatrix effective_hamiltonian(const EffectiveParams &ep, double theta, double eps_drive,
                              std::size_t n_max);

/// Rate of the qubit frame that maps the full model onto the effective one: nu_2 / 2 when
/// the second modulation frequency is set, K otherwise.
double frame_rate(const CircuitParams &p);

/// Rotates a full-model interaction-picture state into the effective frame,
/// exp(i rate sigma_theta t).
QubitResonatorState to_effective_frame(const QubitResonatorState &state, double rate, double theta,
                                       double t);

using Derivative = std::function<void(double, Eigen::Ref<const CColumn>, Eigen::Ref<CColumn>)>;

struct IntegratorOptions {
    double rel_tol = 1e-9;
    double min_step = 1e-4;
    double initial_step = 0.1;
    bool check_tail = true;
};

struct Trajectory {
    std::vector<double> times;
    std::vector<QubitResonatorState> states;
    double max_norm_drift = 0.0;
    double max_tail_population = 0.0;
    bool truncation_warning = false;
    std::size_t steps = 0;
};

/// Adaptive Dormand-Prince 5(4) propagation with dense output at sample_times, which must be
/// sorted and inside [t0, t1]. Throws StepFailure when the step controller drops below
/// min_step.
Trajectory integrate(const QubitResonatorState &state0, const Derivative &rhs, double t0, double t1,
                     const std::vector<double> &sample_times, const IntegratorOptions &opts = {});

/// Convenience overloads for a static matrix and for the full model.
Trajectory integrate(const QubitResonatorState &state0, const CMatrix &hamiltonian, double t0,
                     double t1, const std::vector<double> &sample_times,
                     const IntegratorOptions &opts = {});
Trajectory integrate(const QubitResonatorState &state0, const FullModel &model, double t0,
                     double t1, const std::vector<double> &sample_times,
                     const IntegratorOptions &opts = {});

/// Exact propagation under a static Hermitian matrix by eigendecomposition.
Trajectory evolve_static(const QubitResonatorState &state0, const CMatrix &hamiltonian,
                         const std::vector<double> &sample_times);

/// U rho U^dag with U = exp[-i (theta_0 + theta_k t / t_f) a^dag a].
CMatrix frame_correction(const CMatrix &rho, double theta_0, double theta_k, double t, double t_f);
CColumn frame_correction(const CColumn &psi, double theta_0, double theta_k, double t, double t_f);

struct PhaseSearchGrids {
    RVector phi_1;
    RVector phi_2;
    RVector delta;
};

struct PhaseSearchResult {
    double phi_1 = 0.0;
    double phi_2 = 0.0;
    double delta = 0.0;
    double residual = 0.0;
};

/// P_e(t) of the full model evaluated in the effective frame at the sample times.
RVector full_model_excited_population(const CircuitParams &p, const QubitResonatorState &initial,
                                      const std::vector<double> &times,
                                      const IntegratorOptions &opts = {});
/// P_e(t) of the effective model.
RVector effective_model_excited_population(const CircuitParams &p,
                                           const QubitResonatorState &initial,
                                           const std::vector<double> &times,
                                           const IntegratorOptions &opts = {});

/// Exhaustive search over (phi_1, phi_2, delta) minimizing the 2-norm between the full-model
/// P_e trace and the reference; ties resolve to the lexicographically smallest triple.
PhaseSearchResult optimize_phases(const CircuitParams &p, const RVector &reference,
                                  const std::vector<double> &times,
                                  const QubitResonatorState &initial,
                                  const PhaseSearchGrids &grids,
                                  const IntegratorOptions &opts = {});

} // namespace diracsim::circuit
