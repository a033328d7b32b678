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

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "diracsim/circuit.hpp"
#include "diracsim/dirac.hpp"
#include "diracsim/wigner.hpp"

namespace diracsim::scenario {

enum class ScenarioId { zitterbewegung, positive_branch, klein, compare };
enum class Model { continuum, effective_circuit, full_circuit, tomography_pipeline };

const char *to_string(ScenarioId id);
const char *to_string(Model m);
ScenarioId scenario_from_string(const std::string &s);
Model model_from_string(const std::string &s);

struct FrameBranch {
    double theta_0 = 0.0;
    double theta_k = 0.0;
};

struct FrameConfig {
    FrameBranch g;
    FrameBranch e;
    double t_f = 330.0;
};

struct PositiveBranchConfig {
    double c = 1.0;
    double m = 1.0;
    double p0 = 1.0;
    double delta_p = 1.0;
    RVector delta_p_sweep{0.1, 0.25, 0.5, 0.75, 1.0, 1.5, 2.0, 3.0};
    double trace_step = 0.1;
};

struct TomographyConfig {
    bool rabi_fit = false;
    double noise_sigma = 0.0;
    std::size_t fit_n_max = 20;
    double tau_step = 2.0;
    double tau_end = 200.0;
    double lambda_2 = 0.0;  // rad/ns
    double T1_p = 12900.0;
};

struct CompareConfig {
    bool optimize_phases = true;
    RVector phi_grid;    // radians
    RVector delta_grid;  // rad/ns
    double validity_warning = 0.25;
};

struct ScenarioConfig {
    ScenarioId scenario = ScenarioId::zitterbewegung;
    Model model = Model::effective_circuit;
    std::uint64_t seed = 0;
    std::string output_dir = "out";
    unsigned threads = 1;

    circuit::CircuitParams circuit;
    std::size_t n_max = 30;
    circuit::IntegratorOptions integrator;

    /// Explicit continuum parameters; when absent they follow from the circuit mapping.
    std::optional<dirac::DiracParams> continuum;
    std::size_t n_points = 4096;

    double p0 = 2.0;
    circuit::QubitRotation rotation{{0.0, 1.0, 0.0}, kPi / 2.0};

    RVector times{0.0, 90.0, 178.0, 240.0, 330.0};
    double trace_step = 2.0;
    wigner::PhaseSpaceGrid grid;
    FrameConfig frame;

    PositiveBranchConfig positive;
    TomographyConfig tomography;
    CompareConfig compare;

    /// Throws Error(Config) naming the offending field.
    void validate() const;
    /// Stable text form of every resolved setting; hashed into provenance headers.
    std::string canonical() const;
    std::string param_hash() const;

    dirac::DiracParams continuum_params() const;
    double t_end() const;
};

/// Default settings for each scenario.
ScenarioConfig default_config(ScenarioId id);
/// YAML text on top of default_config(scenario). Frequencies need a unit suffix.
ScenarioConfig parse_config(const std::string &yaml_text);
ScenarioConfig load_config(const std::string &path);

struct Metric {
    std::string name;
    double value;
};

struct RunResult {
    std::string status = "ok";  // ok | partial | failed
    int exit_code = 0;
    std::vector<std::string> files;  // relative to output_dir
    std::vector<Metric> metrics;
    std::vector<std::string> warnings;
    std::vector<std::string> failures;
    std::string manifest_path;

    double metric(const std::string &name) const;
};

RunResult run(const ScenarioConfig &cfg);
RunResult run_zitterbewegung(const ScenarioConfig &cfg);
RunResult run_positive_branch(const ScenarioConfig &cfg);
RunResult run_klein(const ScenarioConfig &cfg);
RunResult compare_full_vs_effective(const ScenarioConfig &cfg);

std::string version();

// Building blocks shared by the runners and the acceptance checks.

struct Traces {
    RVector times;
    RVector mean_x;
    RVector mean_p;
    RVector entropy;
    RVector excited;  // P_e, circuit models only
};

/// Sample times 0, step, ... up to t_end plus the snapshot times, sorted and unique.
RVector trace_times(const ScenarioConfig &cfg);

dirac::SpinorState continuum_initial(const ScenarioConfig &cfg);
circuit::QubitResonatorState circuit_initial(const ScenarioConfig &cfg);

/// Circuit states in the effective frame at the given times.
std::vector<circuit::QubitResonatorState> circuit_states(const ScenarioConfig &cfg, Model model,
                                                         const RVector &times);
Traces continuum_traces(const ScenarioConfig &cfg, const RVector &times);
Traces circuit_traces(const std::vector<circuit::QubitResonatorState> &states, const RVector &times);

/// Conditional WF of a circuit state by the chosen model path (Fock parity or tomography),
/// population-normalized.
wigner::WignerGrid circuit_conditional_wigner(const ScenarioConfig &cfg, Model model,
                                              const circuit::QubitResonatorState &state,
                                              circuit::Qubit outcome, double t);

/// Number of separated maxima of a sampled density, ignoring peaks below 10% of the largest.
std::size_t count_modes(const RVector &density);

struct CompareReport {
    RVector times;
    Traces full;
    Traces effective;
    circuit::PhaseSearchResult phases;
    bool optimized = false;
    double max_dpe = 0.0;
    double max_dx = 0.0;
    double max_ds = 0.0;
    circuit::ValidityRatios validity{};
    std::vector<std::string> warnings;
};

CompareReport compare_models(const ScenarioConfig &cfg);

} // namespace diracsim::scenario
