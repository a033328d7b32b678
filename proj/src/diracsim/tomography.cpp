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

#include "diracsim/tomography.hpp"

#include <algorithm>
#include <sstream>

#include "diracsim/fock.hpp"
#include "diracsim/parallel.hpp"

namespace diracsim::tomography {

PhotonDistribution PhotonDistribution::from(RVector probs)
{
    PhotonDistribution d{std::move(probs)};
    for (double &p : d.probs)
        if (p < 0.0 && p >= -1e-9)
            p = 0.0;
    d.validate();
    return d;
}

PhotonDistribution PhotonDistribution::poisson(double mean, std::size_t n_max)
{
    require(mean >= 0.0, "PhotonDistribution::poisson: mean must be non-negative");
    RVector p(n_max + 1);
    for (std::size_t n = 0; n <= n_max; ++n)
        p[n] = std::exp(-mean + static_cast<double>(n) * std::log(std::max(mean, 1e-300)) -
                        std::lgamma(static_cast<double>(n) + 1.0));
    if (mean == 0.0) {
        std::fill(p.begin(), p.end(), 0.0);
        p[0] = 1.0;
    }
    return from(std::move(p));
}

PhotonDistribution PhotonDistribution::fock(std::size_t n, std::size_t n_max)
{
    require(n <= n_max, "PhotonDistribution::fock: level above the cutoff");
    RVector p(n_max + 1, 0.0);
    p[n] = 1.0;
    return {std::move(p)};
}

double PhotonDistribution::total() const
{
    double s = 0.0;
    for (double p : probs)
        s += p;
    return s;
}

void PhotonDistribution::validate() const
{
    require(!probs.empty(), "PhotonDistribution: empty");
    for (double p : probs)
        require(std::isfinite(p) && p >= 0.0, "PhotonDistribution: negative or non-finite entry");
    require(total() <= 1.0 + 1e-6, "PhotonDistribution: total exceeds 1");
}

double RabiModel::kappa(std::size_t n) const
{
    if (n == 0 || std::isinf(T1_p))
        return 0.0;
    return std::pow(static_cast<double>(n), l) / T1_p;
}

void RabiModel::validate() const
{
    require(std::isfinite(lambda_2) && lambda_2 > 0.0, "RabiModel: lambda_2 must be positive");
    require(T1_p > 0.0, "RabiModel: T1_p must be positive");
    require(std::isfinite(l) && l > 0.0, "RabiModel: decay exponent must be positive");
    require(P_g0 >= 0.0 && P_g0 <= 1.0, "RabiModel: P_g0 must lie in [0, 1]");
}

void RabiTrace::validate() const
{
    model.validate();
    require(taus.size() == values.size(), "RabiTrace: taus and values differ in length");
    for (std::size_t k = 1; k < taus.size(); ++k)
        require(taus[k] > taus[k - 1], "RabiTrace: taus must be strictly increasing");
    for (double v : values)
        require(std::isfinite(v), "RabiTrace: non-finite value");
}

namespace {

double basis_value(const RabiModel &m, std::size_t n, double tau)
{
    return std::exp(-m.kappa(n) * tau) *
           std::cos(2.0 * std::sqrt(static_cast<double>(n)) * m.lambda_2 * tau);
}

} // namespace

RabiTrace simulate_rabi(const PhotonDistribution &dist, const RabiModel &model, const RVector &taus)
{
    dist.validate();
    model.validate();
    RabiTrace out{taus, RVector(taus.size()), model};
    for (std::size_t i = 0; i < taus.size(); ++i) {
        double s = 0.0;
        for (std::size_t n = 0; n < dist.probs.size(); ++n)
            s += dist.probs[n] * basis_value(model, n, taus[i]);
        out.values[i] = 0.5 * (1.0 - model.P_g0 * s);
    }
    out.validate();
    return out;
}

Eigen::VectorXd nnls(const Eigen::MatrixXd &A, const Eigen::VectorXd &b)
{
    const Eigen::Index m = A.rows(), n = A.cols();
    require(b.size() == m, "nnls: dimension mismatch");
    const double tol = 10.0 * std::numeric_limits<double>::epsilon() *
                       A.cwiseAbs().colwise().sum().maxCoeff() * static_cast<double>(std::max(m, n));
    Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
    std::vector<bool> passive(n, false), blocked(n, false);
    Eigen::VectorXd w = A.transpose() * (b - A * x);

    auto solve_passive = [&]() {
        std::vector<Eigen::Index> idx;
        for (Eigen::Index k = 0; k < n; ++k)
            if (passive[k])
                idx.push_back(k);
        Eigen::MatrixXd ap(m, static_cast<Eigen::Index>(idx.size()));
        for (std::size_t c = 0; c < idx.size(); ++c)
            ap.col(static_cast<Eigen::Index>(c)) = A.col(idx[c]);
        const Eigen::VectorXd zp = ap.colPivHouseholderQr().solve(b);
        Eigen::VectorXd z = Eigen::VectorXd::Zero(n);
        for (std::size_t c = 0; c < idx.size(); ++c)
            z[idx[c]] = zp[static_cast<Eigen::Index>(c)];
        return z;
    };

    for (Eigen::Index outer = 0; outer < 3 * n + 10; ++outer) {
        Eigen::Index j = -1;
        double best = tol;
        for (Eigen::Index k = 0; k < n; ++k)
            if (!passive[k] && !blocked[k] && w[k] > best) {
                best = w[k];
                j = k;
            }
        if (j < 0)
            break;
        passive[j] = true;
        Eigen::VectorXd z = solve_passive();
        if (z[j] <= 0.0) {
            passive[j] = false;
            blocked[j] = true;
            continue;
        }
        for (int inner = 0; inner < 3 * n + 10; ++inner) {
            bool feasible = true;
            double alpha = std::numeric_limits<double>::infinity();
            for (Eigen::Index k = 0; k < n; ++k)
                if (passive[k] && z[k] <= 0.0) {
                    feasible = false;
                    alpha = std::min(alpha, x[k] / (x[k] - z[k]));
                }
            if (feasible)
                break;
            x += alpha * (z - x);
            for (Eigen::Index k = 0; k < n; ++k)
                if (passive[k] && x[k] <= tol) {
                    passive[k] = false;
                    x[k] = 0.0;
                }
            z = solve_passive();
        }
        x = z;
        std::fill(blocked.begin(), blocked.end(), false);
        w = A.transpose() * (b - A * x);
    }
    return x;
}

PhotonFit fit_photon_distribution(const RabiTrace &trace, std::size_t n_max, const FitOptions &opts)
{
    trace.validate();
    const std::size_t rows = trace.taus.size();
    if (rows < 2 * (n_max + 1)) {
        std::ostringstream msg;
        msg << "fit_photon_distribution: " << rows << " samples for n_max = " << n_max
            << ", need at least " << 2 * (n_max + 1);
        fail(ErrorCode::InvalidArgument, msg.str());
    }
    const auto cols = static_cast<Eigen::Index>(n_max + 1);
    Eigen::MatrixXd A(static_cast<Eigen::Index>(rows), cols);
    Eigen::VectorXd b(static_cast<Eigen::Index>(rows));
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t n = 0; n <= n_max; ++n)
            A(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(n)) =
                basis_value(trace.model, n, trace.taus[i]);
        b[static_cast<Eigen::Index>(i)] = 1.0 - 2.0 * trace.values[i];
    }

    const Eigen::VectorXd sv = Eigen::JacobiSVD<Eigen::MatrixXd>(A).singularValues();
    const double smin = sv[sv.size() - 1];
    const double condition = smin > 0.0 ? (sv[0] / smin) * (sv[0] / smin)
                                        : std::numeric_limits<double>::infinity();
    if (!(condition <= 1e12)) {
        std::ostringstream msg;
        msg << "fit_photon_distribution: Gram condition number " << condition << " at n_max = "
            << n_max;
        fail(ErrorCode::IllConditioned, msg.str());
    }

    const double scale = opts.fit_P_g0 ? 1.0 : trace.model.P_g0;
    require(scale > 0.0, "fit_photon_distribution: P_g0 must be positive");

    // Slack column s >= 0 with Sum P_n + s = 1 carried by a heavily weighted extra row.
    const double weight = 1e4 * std::max(1.0, A.norm());
    Eigen::MatrixXd Aa = Eigen::MatrixXd::Zero(A.rows() + 1, cols + 1);
    Aa.topLeftCorner(A.rows(), cols) = scale * A;
    Aa.row(A.rows()).setConstant(weight);
    Eigen::VectorXd ba(A.rows() + 1);
    ba.head(A.rows()) = b;
    ba[A.rows()] = weight;
    const Eigen::VectorXd sol = nnls(Aa, ba);

    Eigen::VectorXd q = sol.head(cols);
    PhotonFit fit;
    fit.condition = condition;
    fit.P_g0 = trace.model.P_g0;
    if (opts.fit_P_g0) {
        const double total = q.sum();
        fit.P_g0 = std::clamp(total, 0.95, 1.0);
        q /= fit.P_g0;
        if (q.sum() > 1.0)
            q /= q.sum();
    }
    RVector probs(q.data(), q.data() + q.size());
    fit.dist = PhotonDistribution::from(std::move(probs));
    fit.residual = 0.5 * (fit.P_g0 * (A * q) - b).norm();
    return fit;
}

double wigner_point(const PhotonDistribution &dist)
{
    double s = 0.0;
    for (std::size_t n = 0; n < dist.probs.size(); ++n)
        s += (n % 2 ? -1.0 : 1.0) * dist.probs[n];
    return s / kPi;
}

ReadoutCalibration ReadoutCalibration::device() { return {{0.983, 0.937}, {0.990, 0.920}}; }

void ReadoutCalibration::validate() const
{
    for (const auto &q : {q1, q2})
        require(q.F_g > 0.5 && q.F_g <= 1.0 && q.F_e > 0.5 && q.F_e <= 1.0,
                "ReadoutCalibration: fidelities must lie in (0.5, 1]");
}

Eigen::Matrix4d ReadoutCalibration::matrix() const
{
    auto single = [](const QubitFidelity &q) {
        Eigen::Matrix2d f;
        f << q.F_g, 1.0 - q.F_e, 1.0 - q.F_g, q.F_e;
        return f;
    };
    const Eigen::Matrix2d a = single(q1), b = single(q2);
    Eigen::Matrix4d f;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            f.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
    return f;
}

CalibratedPopulations apply_calibration(const Eigen::Vector4d &measured, const ReadoutCalibration &cal)
{
    cal.validate();
    require((measured.array() >= 0.0).all() && std::abs(measured.sum() - 1.0) <= 1e-6,
            "apply_calibration: measured populations must be non-negative and sum to 1");
    const Eigen::Matrix4d f = cal.matrix();
    const Eigen::FullPivLU<Eigen::Matrix4d> lu(f);
    if (!lu.isInvertible() || std::abs(f.determinant()) < 1e-12)
        fail(ErrorCode::Singular, "apply_calibration: calibration matrix is singular");
    CalibratedPopulations out;
    out.raw = lu.solve(measured);
    out.clamped = out.raw.cwiseMax(0.0);
    out.clamped /= out.clamped.sum();
    return out;
}

namespace {

void require_population(double pop, circuit::Qubit outcome)
{
    if (pop <= 1e-12) {
        std::ostringstream msg;
        msg << "conditional_distribution: outcome " << (outcome == circuit::Qubit::e ? 'e' : 'g')
            << " has population " << pop;
        fail(ErrorCode::ZeroPopulation, msg.str());
    }
}

} // namespace

ConditionalDistribution conditional_distribution(const circuit::QubitResonatorState &joint,
                                                 circuit::Qubit outcome, cplx gamma)
{
    const CColumn psi = joint.field_component(outcome);
    const double pop = psi.squaredNorm();
    require_population(pop, outcome);
    auto d = fock::displaced_distribution(CColumn(psi / std::sqrt(pop)), gamma);
    return {PhotonDistribution::from(std::move(d.probs)), pop};
}

ConditionalDistribution conditional_distribution(const CMatrix &joint, std::size_t n_max,
                                                 circuit::Qubit outcome, cplx gamma)
{
    const auto d = static_cast<Eigen::Index>(n_max + 1);
    require(joint.rows() == 2 * d && joint.cols() == 2 * d,
            "conditional_distribution: density size does not match n_max");
    const Eigen::Index off = static_cast<Eigen::Index>(outcome) * d;
    const CMatrix block = joint.block(off, off, d, d);
    const double pop = block.trace().real();
    require_population(pop, outcome);
    auto dist = fock::displaced_distribution(CMatrix(block / pop), gamma);
    return {PhotonDistribution::from(std::move(dist.probs)), pop};
}

PhotonDistribution field_distribution(const circuit::QubitResonatorState &joint, cplx gamma)
{
    auto d = fock::displaced_distribution(joint.reduced_field(), gamma);
    return PhotonDistribution::from(std::move(d.probs));
}

wigner::WignerGrid tomography_wigner(const circuit::QubitResonatorState &joint,
                                     circuit::Qubit outcome, const FrameAngles &frame,
                                     const wigner::PhaseSpaceGrid &grid)
{
    grid.validate();
    const CColumn psi = joint.field_component(outcome);
    const double pop = psi.squaredNorm();
    require_population(pop, outcome);
    const CColumn rotated = circuit::frame_correction(CColumn(psi / std::sqrt(pop)), frame.theta_0,
                                                      frame.theta_k, frame.t, frame.t_f);
    RVector values(grid.size());
    parallel_for(grid.n_x, [&](std::size_t i) {
        for (std::size_t j = 0; j < grid.n_p; ++j) {
            auto d = fock::displaced_distribution(rotated, gamma_at(grid.x(i), grid.p(j)));
            values[i * grid.n_p + j] = wigner_point(PhotonDistribution{std::move(d.probs)});
        }
    });
    wigner::WignerGrid w(grid, std::move(values), 1.0);
    w.provenance.model = "tomography_pipeline";
    w.provenance.outcome = outcome == circuit::Qubit::e ? "e" : "g";
    w.provenance.time = frame.t;
    return w;
}

void DisplacedSampleSet::validate() const
{
    require(!samples.empty(), "DisplacedSampleSet: no samples");
    for (const auto &s : samples) {
        s.dist.validate();
        require(std::isfinite(s.gamma.real()) && std::isfinite(s.gamma.imag()),
                "DisplacedSampleSet: non-finite displacement");
        require(s.P_e >= 0.0 && s.P_g >= 0.0 && std::abs(s.P_e + s.P_g - 1.0) <= 1e-6,
                "DisplacedSampleSet: populations must sum to 1");
    }
}

std::vector<cplx> gamma_lattice(double extent, std::size_t n, cplx center)
{
    require(extent > 0.0 && n >= 2, "gamma_lattice: need a positive extent and n >= 2");
    std::vector<cplx> out;
    out.reserve(n * n);
    const double h = 2.0 * extent / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            out.push_back(center + gamma_at(-extent + static_cast<double>(i) * h,
                                            -extent + static_cast<double>(j) * h));
    return out;
}

DisplacedSampleSet synthesize_samples(const CMatrix &rho, const std::vector<cplx> &gammas,
                                      std::size_t levels)
{
    require(rho.rows() == rho.cols() && rho.rows() >= 1, "synthesize_samples: rho must be square");
    require(levels >= 1, "synthesize_samples: need at least one level");
    DisplacedSampleSet out;
    out.samples.resize(gammas.size());
    parallel_for(gammas.size(), [&](std::size_t k) {
        const CMatrix d =
            fock::displacement_block(-gammas[k], levels, static_cast<std::size_t>(rho.cols()));
        const CMatrix dr = d * rho;
        RVector probs(levels);
        for (std::size_t n = 0; n < levels; ++n) {
            const auto r = static_cast<Eigen::Index>(n);
            probs[n] = std::max(0.0, dr.row(r).dot(d.row(r)).real());
        }
        out.samples[k] = {gammas[k], PhotonDistribution::from(std::move(probs)), 0.0, 1.0};
    });
    return out;
}

CMatrix project_density(const CMatrix &h)
{
    const Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (h + h.adjoint()));
    const Eigen::VectorXd lam = es.eigenvalues();
    const Eigen::Index n = lam.size();
    // Euclidean projection of the spectrum onto the probability simplex.
    std::vector<double> u(lam.data(), lam.data() + n);
    std::sort(u.begin(), u.end(), std::greater<>());
    double cum = 0.0, shift = 0.0;
    for (Eigen::Index k = 0; k < n; ++k) {
        cum += u[static_cast<std::size_t>(k)];
        const double t = (cum - 1.0) / static_cast<double>(k + 1);
        if (u[static_cast<std::size_t>(k)] - t > 0.0)
            shift = t;
    }
    const Eigen::VectorXd mu = (lam.array() - shift).cwiseMax(0.0);
    CMatrix rho = es.eigenvectors() * mu.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
    return 0.5 * (rho + rho.adjoint());
}

namespace {

struct DensityProblem {
    std::vector<CMatrix> d;  // D(-gamma_j) blocks, levels x dim
    std::vector<Eigen::VectorXd> target;

    Eigen::VectorXd apply(std::size_t j, const CMatrix &rho) const
    {
        const CMatrix dr = d[j] * rho;
        Eigen::VectorXd m(d[j].rows());
        for (Eigen::Index n = 0; n < m.size(); ++n)
            m[n] = dr.row(n).dot(d[j].row(n)).real();
        return m;
    }

    CMatrix adjoint(std::size_t j, const Eigen::VectorXd &r) const
    {
        return d[j].adjoint() * r.cast<cplx>().asDiagonal() * d[j];
    }

    // Returns the objective and fills the gradient.
    double evaluate(const CMatrix &rho, CMatrix *grad) const
    {
        double f = 0.0;
        if (grad)
            grad->setZero(rho.rows(), rho.cols());
        for (std::size_t j = 0; j < d.size(); ++j) {
            const Eigen::VectorXd r = apply(j, rho) - target[j];
            f += r.squaredNorm();
            if (grad)
                *grad += 2.0 * adjoint(j, r);
        }
        if (grad)
            *grad = 0.5 * (*grad + grad->adjoint());
        return f;
    }

    double lipschitz(Eigen::Index dim) const
    {
        CMatrix x = CMatrix::Identity(dim, dim) / std::sqrt(static_cast<double>(dim));
        double lam = 0.0;
        for (int it = 0; it < 60; ++it) {
            CMatrix y = CMatrix::Zero(dim, dim);
            for (std::size_t j = 0; j < d.size(); ++j)
                y += adjoint(j, apply(j, x));
            lam = y.norm();
            if (lam == 0.0)
                break;
            x = y / lam;
        }
        return 2.0 * lam * 1.05;
    }
};

} // namespace

Reconstruction reconstruct_density(const DisplacedSampleSet &samples, std::size_t n_max,
                                   const ReconstructOptions &opts)
{
    samples.validate();
    const std::size_t dim = n_max + 1;
    std::size_t data = 0;
    for (const auto &s : samples.samples)
        data += s.dist.probs.size();
    if (data < dim * dim) {
        std::ostringstream msg;
        msg << "reconstruct_density: " << data << " data points for " << dim * dim << " unknowns";
        fail(ErrorCode::InvalidArgument, msg.str());
    }

    DensityProblem prob;
    for (const auto &s : samples.samples) {
        prob.d.push_back(fock::displacement_block(-s.gamma, s.dist.probs.size(), dim));
        prob.target.emplace_back(Eigen::Map<const Eigen::VectorXd>(
            s.dist.probs.data(), static_cast<Eigen::Index>(s.dist.probs.size())));
    }
    const auto n = static_cast<Eigen::Index>(dim);
    const double L = prob.lipschitz(n);

    CMatrix x = CMatrix::Identity(n, n) / static_cast<double>(dim);
    CMatrix y = x, grad(n, n);
    double t = 1.0;
    double fx = prob.evaluate(x, nullptr);
    Reconstruction best{x, 0, fx, std::numeric_limits<double>::infinity(), false};

    for (std::size_t it = 1; it <= opts.max_iters; ++it) {
        prob.evaluate(y, &grad);
        const CMatrix next = project_density(y - grad / L);
        const double gm = L * (y - next).norm();
        const double fn = prob.evaluate(next, nullptr);
        if (fn <= best.objective) {
            best.rho = next;
            best.objective = fn;
        }
        best.iterations = it;
        best.gradient_norm = gm;
        if (gm < opts.tolerance) {
            best.rho = next;
            best.objective = fn;
            best.gradient_norm = gm;
            best.converged = true;
            return best;
        }
        if (fn > fx) {
            // Restart the momentum when the objective goes up.
            t = 1.0;
            y = x;
            continue;
        }
        const double tn = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
        y = next + ((t - 1.0) / tn) * (next - x);
        x = next;
        fx = fn;
        t = tn;
    }
    std::ostringstream msg;
    msg << "reconstruct_density: gradient-mapping norm " << best.gradient_norm << " after "
        << opts.max_iters << " iterations";
    throw NotConvergedError(msg.str(), best);
}

} // namespace diracsim::tomography
