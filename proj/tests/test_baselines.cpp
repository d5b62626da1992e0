// SPDX-License-Identifier: Apache-2.0
//
// satnull: hybrid MIMO precoding with LEO satellite interference nulling
// Copyright (C) 2026 The satnull authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------


#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace satnull;

namespace
{

ChannelSet random_channels(std::mt19937_64 &rng, Index nt, Index nue, Index nr, Index nsat)
{
    ChannelSet ch;
    for (Index u = 0; u < nue; ++u)
    {
        ch.ue_channels.push_back(oracle::random_cn(rng, nr, nt));
        ch.ue_noise_power.push_back(0.1);
    }
    ch.sat_matrix = oracle::random_phases(rng, nsat, nt);
    ch.sat_pathloss.assign(static_cast<size_t>(nsat), 1.0);
    ch.sat_noise_power.assign(static_cast<size_t>(nsat), 1.0);
    return ch;
}

double cross_talk(const ChannelSet &ch, const CMatrix &F, const CombinerSet &c)
{
    double worst = 0.0;
    for (Index u = 0; u < ch.n_ue(); ++u)
        for (Index j = 0; j < ch.n_ue(); ++j)
            if (j != u)
                worst = std::max(worst, std::abs(oracle::stream_gain(ch.ue_channels[size_t(u)], c[u], F, j)));
    return worst;
}

} // namespace

TEST(FdBd, OrthogonalUsersGetMatchedBeams)
{
    ChannelSet ch;
    CMatrix H1 = CMatrix::Zero(1, 4), H2 = CMatrix::Zero(1, 4);
    H1(0, 0) = 2.0;
    H1(0, 1) = 1.0;
    H2(0, 2) = 1.0;
    H2(0, 3) = -1.0;
    ch.ue_channels = {H1, H2};
    ch.ue_noise_power = {1.0, 1.0};
    ch.sat_matrix = CMatrix(0, 4);
    const auto r = fd_bd(ch, 2.0, false);
    EXPECT_NEAR(std::abs(r.f.col(0).normalized().dot(H1.row(0).adjoint().normalized())), 1.0, 1e-12);
    EXPECT_NEAR(std::abs(r.f.col(1).normalized().dot(H2.row(0).adjoint().normalized())), 1.0, 1e-12);
    EXPECT_LE(cross_talk(ch, r.f, r.combiners), 1e-9);
    EXPECT_NEAR(r.f.squaredNorm(), 2.0, 1e-12);
    EXPECT_NEAR(r.f.col(0).squaredNorm(), 1.0, 1e-12);
}

TEST(FdBd, SatelliteNulling)
{
    std::mt19937_64 rng(17);
    for (int k = 0; k < 20; ++k)
    {
        const auto ch = random_channels(rng, 16, 3, 2, 2);
        const auto r = fd_bd(ch, 1.0, true);
        EXPECT_LE((ch.sat_matrix * r.f).norm(), 1e-9 * ch.sat_matrix.norm() * r.f.norm());
        EXPECT_LE((ch.sat_matrix * r.f).squaredNorm(), 1e-16);
        EXPECT_LE(cross_talk(ch, r.f, r.combiners), 1e-9);
    }
}

TEST(FdBd, MatchesProjectorOracle)
{
    std::mt19937_64 rng(23);
    for (int k = 0; k < 10; ++k)
    {
        const auto ch = random_channels(rng, 8, 2, 2, 2);
        const auto r = fd_bd(ch, 1.0, true);
        CMatrix F(8, 2);
        for (Index u = 0; u < 2; ++u)
            F.col(u) = oracle::bd_column(ch.ue_channels, u, ch.sat_matrix) * std::sqrt(0.5);
        const auto comb = update_combiners(ch, F);
        for (Index u = 0; u < 2; ++u)
            EXPECT_NEAR(std::log2(1 + sinr(ch, r.f, r.combiners, u)), std::log2(1 + oracle::sinr(ch, F, comb, u)),
                        1e-8);
    }
}

TEST(FdBd, InfeasibleNamesUe)
{
    std::mt19937_64 rng(1);
    const auto ch = random_channels(rng, 4, 2, 2, 2); // 2 + 2 rows leave no room in 4 dims
    try
    {
        fd_bd(ch, 1.0, true);
        FAIL();
    }
    catch (const infeasible_error &e)
    {
        EXPECT_NE(std::string(e.what()).find("UE 0"), std::string::npos);
    }
}

TEST(Hf, ConstraintsAndReconstruction)
{
    std::mt19937_64 rng(31);
    for (int k = 0; k < 20; ++k)
    {
        const auto ch = random_channels(rng, 16, 2, 2, 2);
        for (Index nrf : {2, 4, 8, 16})
        {
            const auto r = hf(ch, 1.0, nrf, k % 2 == 0);
            EXPECT_LE(r.precoder.max_modulus_error(), 1e-12);
            EXPECT_NEAR(r.precoder.power(), 1.0, 1e-10);
            // F_BB is a scaled least-squares fit of the full-digital precoder,
            // so its columns are parallel to the normal-equation solution.
            const auto full = fd_bd(ch, 1.0, k % 2 == 0);
            const CMatrix &A = r.precoder.f_rf;
            const CMatrix ls = (A.adjoint() * A).ldlt().solve(A.adjoint() * full.f);
            const cdouble ip = (ls.adjoint() * r.precoder.f_bb).trace();
            EXPECT_NEAR(std::abs(ip), ls.norm() * r.precoder.f_bb.norm(), 1e-8 * ls.norm() * r.precoder.f_bb.norm());
            // Shape error after rescaling must beat random-phase analog beams fitted the same way.
            auto fit_error = [&](const CMatrix &f_rf) {
                const CMatrix f = f_rf * (f_rf.adjoint() * f_rf).ldlt().solve(f_rf.adjoint() * full.f);
                return (f / f.norm() - full.f / full.f.norm()).norm();
            };
            const double mine = fit_error(A);
            for (int j = 0; j < 20; ++j)
                EXPECT_LE(mine, fit_error(oracle::random_phases(rng, 16, nrf)) + 1e-12) << "nrf " << nrf;
        }
    }
}

TEST(Hf, SingleUserFullRfIsScaledUnitary)
{
    std::mt19937_64 rng(3);
    const auto ch = random_channels(rng, 8, 1, 2, 0);
    const auto r = hf(ch, 1.0, 8, false);
    const CMatrix G = r.precoder.f_rf.adjoint() * r.precoder.f_rf;
    EXPECT_LT((G - 8.0 * CMatrix::Identity(8, 8)).norm(), 1e-10);
    const auto full = fd_bd(ch, 1.0, false);
    EXPECT_LT((r.precoder.effective() - full.f).norm(), 1e-10);
}

TEST(Hf, RejectsBadRfCount)
{
    std::mt19937_64 rng(3);
    const auto ch = random_channels(rng, 8, 2, 2, 0);
    EXPECT_THROW(hf(ch, 1.0, 0, false), validation_error);
    EXPECT_THROW(hf(ch, 1.0, 9, false), validation_error);
}

TEST(DftBd, MatchedBeamSelected)
{
    const auto g = ArrayGeometry::ura(4, 4);
    const CMatrix D = dft_codebook(g);
    EXPECT_LT((D.cwiseAbs().array() - 1.0).abs().maxCoeff(), 1e-12);
    EXPECT_LT((D.adjoint() * D - 16.0 * CMatrix::Identity(16, 16)).norm(), 1e-9);

    ChannelSet ch;
    ch.ue_channels = {3.0 * D.col(5).adjoint(), 0.5 * D.col(11).adjoint()};
    ch.ue_noise_power = {1.0, 1.0};
    ch.sat_matrix = CMatrix(0, 16);
    const auto r = dft_bd(ch, g, 1.0, 2);
    ASSERT_EQ(r.beams.size(), 2u);
    EXPECT_EQ(r.beams[0], 5);
    EXPECT_EQ(r.beams[1], 11);
    EXPECT_LE(cross_talk(ch, r.precoder.effective(), r.combiners), 1e-9);
}

TEST(DftBd, TiesGoToLowestIndex)
{
    const auto g = ArrayGeometry::ura(2, 2);
    const CMatrix D = dft_codebook(g);
    ChannelSet ch;
    ch.ue_channels = {(D.col(1) + D.col(3)).adjoint()};
    ch.ue_noise_power = {1.0};
    ch.sat_matrix = CMatrix(0, 4);
    for (int rep = 0; rep < 3; ++rep)
        EXPECT_EQ(dft_bd(ch, g, 1.0, 1).beams.front(), 1);
}

TEST(DftBd, ResidualCrossTalkAndConstraints)
{
    std::mt19937_64 rng(41);
    const auto g = ArrayGeometry::ura(4, 4);
    for (int k = 0; k < 20; ++k)
    {
        const auto ch = random_channels(rng, 16, 2, 2, 2);
        const auto r = dft_bd(ch, g, 1.0, 8);
        EXPECT_LE(cross_talk(ch, r.precoder.effective(), r.combiners), 1e-9);
        EXPECT_LE(r.precoder.max_modulus_error(), 1e-12);
        EXPECT_NEAR(r.precoder.power(), 1.0, 1e-10);
        std::vector<Index> b = r.beams;
        std::sort(b.begin(), b.end());
        EXPECT_EQ(std::unique(b.begin(), b.end()), b.end());
        const auto again = dft_bd(ch, g, 1.0, 8);
        EXPECT_EQ(again.beams, r.beams);
        EXPECT_EQ(again.precoder.f_bb, r.precoder.f_bb);
    }
}

TEST(DftBd, Errors)
{
    std::mt19937_64 rng(1);
    const auto ch = random_channels(rng, 16, 3, 2, 0);
    EXPECT_THROW(dft_bd(ch, ArrayGeometry::ura(4, 4), 1.0, 2), config_error);
    EXPECT_THROW(dft_bd(ch, ArrayGeometry::ura(2, 4), 1.0, 4), dimension_error);
}

TEST(RunBaseline, TagsRoundTrip)
{
    for (auto k : {BaselineKind::FD_BD, BaselineKind::HF, BaselineKind::DFT_BD, BaselineKind::GRAD_NO_NULL,
                   BaselineKind::HF_NO_NULL})
        EXPECT_EQ(parse_baseline(to_string(k)), k);
    EXPECT_EQ(to_string(BaselineKind::GRAD_NO_NULL), "grad-no-null");
    EXPECT_FALSE(parse_baseline("proposed").has_value());
}

TEST(RunBaseline, GradNoNullMatchesDirectCall)
{
    const Scenario sc;
    const auto tc = generate_trial_channels(sc, 3);
    const BaselineConfig cfg = baseline_config(sc);
    const auto r = run_baseline(BaselineKind::GRAD_NO_NULL, tc.channels, cfg);
    OptimizerConfig oc = cfg.optimizer;
    oc.lambda_sat = 0.0;
    const auto direct = bcd_optimize(tc.channels, oc, hf(tc.channels, oc.p_t, cfg.n_rf, false).precoder);
    EXPECT_EQ(r.cost_trace, direct.cost_trace);
}

TEST(RunBaseline, AllKindsOnDefaultScenario)
{
    const Scenario sc;
    const auto tc = generate_trial_channels(sc, 0);
    const BaselineConfig cfg = baseline_config(sc);
    const double fd = interference_power(tc.channels.sat_matrix,
                                         run_baseline(BaselineKind::FD_BD, tc.channels, cfg).f);
    const double nn = interference_power(tc.channels.sat_matrix,
                                         run_baseline(BaselineKind::HF_NO_NULL, tc.channels, cfg).f);
    EXPECT_LT(fd, 1e-16);
    EXPECT_GT(nn, fd);
    for (auto k : {BaselineKind::HF, BaselineKind::DFT_BD, BaselineKind::GRAD_NO_NULL})
    {
        const auto r = run_baseline(k, tc.channels, cfg);
        ASSERT_TRUE(r.hybrid.has_value());
        EXPECT_LE(r.hybrid->max_modulus_error(), 1e-9);
        EXPECT_NEAR(r.hybrid->power(), sc.p_t_watts, 1e-6);
    }
}
