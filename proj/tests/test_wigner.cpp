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

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "diracsim/error.hpp"
#include "diracsim/fock.hpp"
#include "diracsim/parallel.hpp"
#include "diracsim/wigner.hpp"
#include "oracles.hpp"

using namespace diracsim;
using namespace diracsim::wigner;
using dirac::DiracParams;
using dirac::MomentumGrid;

namespace {

double max_abs(const WignerGrid &w)
{
    double m = 0.0;
    for (double v : w.values())
        m = std::max(m, std::abs(v));
    return m;
}

dirac::SpinorState positive_branch(double t, const MomentumGrid &grid)
{
    const DiracParams params{1.0, 1.0};
    return dirac::evolve(
        dirac::positive_branch_state(1.0, 1.0, [](double) { return 0.0; }, grid, params), t, params);
}

} // namespace

TEST(ConditionalWigner, ProductStateProjections)
{
    const double dp = 1.0 / std::sqrt(2.0);
    const auto grid = MomentumGrid::for_packet(2.0, dp);
    const auto s = dirac::gaussian_product_state(grid, 2.0, dp, 0.0, dirac::ket_x());
    const PhaseSpaceGrid ps;
    const auto plus = conditional_wigner(s, dirac::ket_x(), ps);
    const auto minus = conditional_wigner(s, dirac::ket_minus_x(), ps);
    EXPECT_NEAR(plus.weight(), 1.0, 1e-10);
    EXPECT_NEAR(minus.weight(), 0.0, 1e-20);
    EXPECT_LT(max_abs(minus), 1e-15);
    const auto m = moments(plus);
    EXPECT_GT(m.min_value, -1e-9);
    EXPECT_NEAR(m.mean_p, 2.0, 1e-3);
    EXPECT_NEAR(m.mean_x, 0.0, 1e-9);
    double err = 0.0;
    for (std::size_t i = 0; i < ps.n_x; ++i)
        for (std::size_t j = 0; j < ps.n_p; ++j)
            err = std::max(err, std::abs(plus.at(i, j) - oracle::gaussian_wigner(ps.x(i), ps.p(j), 0.0, 2.0)));
    EXPECT_LT(err, 1e-5);
}

TEST(ConditionalWigner, GeneralPacketWidth)
{
    const double dp = 0.4, x0 = -0.8, p0 = 0.5;
    const auto grid = MomentumGrid::for_packet(p0, dp);
    const auto s = dirac::gaussian_product_state(grid, p0, dp, x0, dirac::ket_g());
    const PhaseSpaceGrid ps;
    const auto w = unconditional_wigner(s, ProjectionBasis::computational(), ps);
    double err = 0.0;
    for (std::size_t i = 0; i < ps.n_x; ++i)
        for (std::size_t j = 0; j < ps.n_p; ++j) {
            const double x = ps.x(i) - x0, p = ps.p(j) - p0;
            const double ref = std::exp(-2.0 * dp * dp * x * x - p * p / (2.0 * dp * dp)) / kPi;
            err = std::max(err, std::abs(w.at(i, j) - ref));
        }
    EXPECT_LT(err, 1e-4);
}

TEST(ConditionalWigner, MatchesBruteForceQuadrature)
{
    const DiracParams params{1.0, 1.0};
    const MomentumGrid grid(-9.0, 11.0, 4096);
    const double t = 2.0;
    const auto s = positive_branch(t, grid);
    const double norm = std::sqrt(s.norm_squared());
    const Vec2 b = dirac::ket_g();
    // Analytic projected amplitude; the grid renormalization is a constant factor.
    const double scale = 1.0 / std::sqrt([&] {
        RVector d(grid.size());
        for (std::size_t k = 0; k < grid.size(); ++k)
            d[k] = std::pow(dirac::gaussian_amplitude(grid[k], 1.0, 1.0), 2);
        return trapezoid(d, grid.dp());
    }()) / norm;
    auto phi = [&](double p) -> cplx {
        const auto es = dirac::eigensystem(p, params);
        return scale * std::exp(-kI * es.energy * t) * dirac::gaussian_amplitude(p, 1.0, 1.0) *
               b.dot(es.v_plus);
    };
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> ux(-3.0, 3.0), up(-2.0, 4.0);
    double err = 0.0;
    for (int k = 0; k < 10; ++k) {
        const double x = ux(rng), p = up(rng);
        PhaseSpaceGrid one{x, x + 1.0, 2, p, p + 1.0, 2};
        const double got = conditional_wigner(s, b, one).at(0, 0);
        err = std::max(err, std::abs(got - oracle::wigner_brute_force(phi, x, p)));
    }
    EXPECT_LT(err, 1e-6);
}

TEST(ConditionalWigner, EdgeLeakage)
{
    const MomentumGrid grid(-1.0, 1.0, 256);
    const auto s = dirac::gaussian_product_state(grid, 0.0, 1.0, 0.0, dirac::ket_x());
    try {
        conditional_wigner(s, dirac::ket_x(), PhaseSpaceGrid{});
        FAIL() << "expected EdgeLeakage";
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::EdgeLeakage);
    }
}

TEST(UnconditionalWigner, BasisIndependentAndNormalized)
{
    const MomentumGrid grid(-9.0, 11.0, 4096);
    const auto s = positive_branch(4.0, grid);
    const PhaseSpaceGrid ps{-6.0, 6.0, 121, -4.0, 6.0, 101};
    const auto a = unconditional_wigner(s, ProjectionBasis::computational(), ps);
    const auto b = unconditional_wigner(s, ProjectionBasis::x_basis(), ps);
    double diff = 0.0;
    for (std::size_t k = 0; k < a.values().size(); ++k)
        diff = std::max(diff, std::abs(a.values()[k] - b.values()[k]));
    EXPECT_LT(diff, 1e-9);
    EXPECT_NEAR(a.integral(), 1.0, 5e-3);
    EXPECT_LE(max_abs(a), 1.0 / kPi + 1e-6);
    const auto we = conditional_wigner(s, dirac::ket_e(), ps);
    const auto wg = conditional_wigner(s, dirac::ket_g(), ps);
    const auto sum = add(we, wg);
    for (std::size_t k = 0; k < a.values().size(); ++k)
        ASSERT_NEAR(sum.values()[k], a.values()[k], 1e-12);
    EXPECT_NEAR(we.weight() + wg.weight(), 1.0, 1e-10);
}

TEST(UnconditionalWigner, PositiveBranchInterference)
{
    const MomentumGrid grid(-9.0, 11.0, 4096);
    const PhaseSpaceGrid ps{-6.0, 6.0, 121, -4.0, 6.0, 101};
    for (double t : {2.0, 4.0}) {
        const auto s = positive_branch(t, grid);
        EXPECT_LT(moments(conditional_wigner(s, dirac::ket_g(), ps)).min_value, 0.0) << t;
        EXPECT_LT(moments(conditional_wigner(s, dirac::ket_e(), ps)).min_value, 0.0) << t;
    }
    const auto w = unconditional_wigner(positive_branch(4.0, grid), ProjectionBasis::computational(), ps);
    EXPECT_LT(moments(w).min_value, 0.0);
}

TEST(UnconditionalWigner, ParallelMatchesSerial)
{
    const MomentumGrid grid(-9.0, 11.0, 2048);
    const auto s = positive_branch(2.0, grid);
    const PhaseSpaceGrid ps{-4.0, 4.0, 41, -3.0, 5.0, 37};
    set_thread_count(1);
    const auto a = unconditional_wigner(s, ProjectionBasis::computational(), ps);
    set_thread_count(4);
    const auto b = unconditional_wigner(s, ProjectionBasis::computational(), ps);
    set_thread_count(1);
    EXPECT_EQ(a.values(), b.values());
}

TEST(FockWigner, VacuumCoherentFockOne)
{
    const PhaseSpaceGrid ps;
    CMatrix vac = CMatrix::Zero(6, 6);
    vac(0, 0) = 1.0;
    const auto wv = wigner_from_fock_density(vac, ps);
    const auto mv = moments(wv);
    EXPECT_NEAR(mv.mean_x, 0.0, 1e-9);
    EXPECT_NEAR(mv.mean_p, 0.0, 1e-9);
    EXPECT_GE(mv.min_value, 0.0);
    EXPECT_EQ(mv.negative_volume, 0.0);

    const auto wc = wigner_from_fock_density(fock::outer(fock::coherent(cplx(0.0, std::sqrt(2.0)), 31)), ps);
    const auto mc = moments(wc);
    EXPECT_NEAR(mc.mean_x, 0.0, 1e-6);
    EXPECT_NEAR(mc.mean_p, 2.0, 1e-3);
    EXPECT_GT(mc.min_value, -1e-9);

    CMatrix one = CMatrix::Zero(6, 6);
    one(1, 1) = 1.0;
    const PhaseSpaceGrid fine{-4.5, 4.5, 241, -4.5, 4.5, 241};
    const auto m1 = moments(wigner_from_fock_density(one, fine));
    EXPECT_NEAR(m1.min_value, -1.0 / kPi, 1e-12);
    EXPECT_GT(m1.negative_volume, 0.1);
    EXPECT_NEAR(m1.negative_volume, 2.0 * std::exp(-0.5) - 1.0, 2e-3);
}

TEST(FockWigner, RejectsTruncatedState)
{
    CMatrix rho = CMatrix::Zero(4, 4);
    rho(0, 0) = 0.5;
    rho(3, 3) = 0.5;
    try {
        wigner_from_fock_density(rho, PhaseSpaceGrid{});
        FAIL() << "expected Truncation";
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::Truncation);
    }
}

TEST(FockWigner, AgreesWithMomentumPath)
{
    const CColumn psi = fock::coherent(cplx(0.4, 1.2), 40);
    const MomentumGrid grid(-10.0, 12.0, 4096);
    const CVector phi = fock::to_momentum(psi, grid);
    const PhaseSpaceGrid ps{-4.0, 4.0, 41, -3.0, 5.0, 41};
    const auto a = wigner_from_momentum(phi, grid, ps);
    const auto b = wigner_from_fock_density(fock::outer(psi), ps);
    double diff = 0.0;
    for (std::size_t k = 0; k < a.values().size(); ++k)
        diff = std::max(diff, std::abs(a.values()[k] - b.values()[k]));
    EXPECT_LT(diff, 1e-4);
    EXPECT_NEAR(moments(b).mean_x, fock::mean_x(fock::outer(psi)), 1e-4);
    EXPECT_NEAR(moments(b).mean_p, fock::mean_p(fock::outer(psi)), 1e-4);
}

TEST(Marginal, IntegratesToWeight)
{
    const double dp = 1.0 / std::sqrt(2.0);
    const auto grid = MomentumGrid::for_packet(2.0, dp);
    const auto s = dirac::gaussian_product_state(grid, 2.0, dp, 0.5, Vec2(0.6, 0.8));
    const PhaseSpaceGrid ps{-5.0, 5.0, 101, -3.0, 7.0, 101};
    const auto we = conditional_wigner(s, dirac::ket_e(), ps);
    const RVector px = marginal_x(we);
    EXPECT_NEAR(trapezoid(px, ps.dx()), we.weight(), 2e-3);
    EXPECT_NEAR(we.weight(), 0.36, 1e-10);
    double num = 0.0;
    for (std::size_t i = 0; i < px.size(); ++i)
        num += ps.x(i) * px[i] * ps.dx();
    EXPECT_NEAR(num / we.weight(), 0.5, 1e-3);
}

TEST(Moments, ZeroWeight)
{
    const WignerGrid w(PhaseSpaceGrid{}, RVector(PhaseSpaceGrid{}.size(), 0.0), 0.0);
    try {
        moments(w);
        FAIL() << "expected ZeroWeight";
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::ZeroWeight);
    }
}

TEST(Discriminate, SymmetricCat)
{
    const PhaseSpaceGrid ps{-7.0, 7.0, 141, -4.0, 6.0, 101};
    RVector v(ps.size());
    for (std::size_t i = 0; i < ps.n_x; ++i)
        for (std::size_t j = 0; j < ps.n_p; ++j)
            v[i * ps.n_p + j] = 0.5 * (oracle::gaussian_wigner(ps.x(i), ps.p(j), 3.0, 1.0) +
                                       oracle::gaussian_wigner(ps.x(i), ps.p(j), -3.0, 1.0));
    const auto d = discriminate_wavepackets(WignerGrid(ps, v, 1.0));
    EXPECT_TRUE(d.both_distinct());
    // Each half plane also holds the far tail of the other packet.
    EXPECT_NEAR(d.pos.mean_x, 3.0, 1e-4);
    EXPECT_NEAR(d.neg.mean_x, -3.0, 1e-4);
    EXPECT_NEAR(d.pos.mean_p, 1.0, 1e-6);
    EXPECT_NEAR(d.neg.mean_p, 1.0, 1e-6);
    EXPECT_NEAR(d.pos.weight, 0.5, 1e-6);
    EXPECT_NEAR(d.neg.weight, 0.5, 1e-6);
}

TEST(Discriminate, OneSidedPacketIsIndistinct)
{
    const PhaseSpaceGrid ps{-7.0, 7.0, 141, -4.0, 6.0, 101};
    RVector v(ps.size());
    for (std::size_t i = 0; i < ps.n_x; ++i)
        for (std::size_t j = 0; j < ps.n_p; ++j)
            v[i * ps.n_p + j] = oracle::gaussian_wigner(ps.x(i), ps.p(j), 3.0, 1.0);
    const auto d = discriminate_wavepackets(WignerGrid(ps, v, 1.0));
    EXPECT_TRUE(d.pos.distinct);
    EXPECT_FALSE(d.neg.distinct);
    EXPECT_FALSE(d.both_distinct());
}

TEST(Combine, WeightsAndMismatch)
{
    const PhaseSpaceGrid ps{-3.0, 3.0, 31, -3.0, 3.0, 31};
    RVector a(ps.size()), b(ps.size());
    for (std::size_t i = 0; i < ps.n_x; ++i)
        for (std::size_t j = 0; j < ps.n_p; ++j) {
            a[i * ps.n_p + j] = oracle::gaussian_wigner(ps.x(i), ps.p(j), 1.0, 0.0);
            b[i * ps.n_p + j] = oracle::gaussian_wigner(ps.x(i), ps.p(j), -1.0, 0.0);
        }
    const WignerGrid we(ps, a, 1.0), wg(ps, b, 1.0);
    EXPECT_EQ(combine_conditional(we, wg, 0.0, 1.0).values(), wg.values());
    const auto same = combine_conditional(we, we, 0.5, 0.5);
    for (std::size_t k = 0; k < a.size(); ++k)
        EXPECT_NEAR(same.values()[k], a[k], 1e-15);
    EXPECT_EQ(same.weight(), 1.0);
    const WignerGrid other(PhaseSpaceGrid{-3.0, 3.0, 31, -3.0, 3.0, 21}, RVector(31 * 21, 0.0), 1.0);
    try {
        combine_conditional(we, other, 0.5, 0.5);
        FAIL() << "expected GridMismatch";
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::GridMismatch);
    }
    EXPECT_THROW(combine_conditional(we, wg, 0.5, 0.6), Error);
}
