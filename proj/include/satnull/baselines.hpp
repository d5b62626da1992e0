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


#ifndef SATNULL_BASELINES_HPP
#define SATNULL_BASELINES_HPP

#include "channel.hpp"
#include "precoder.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace satnull
{

enum class BaselineKind
{
    FD_BD,
    HF,
    DFT_BD,
    GRAD_NO_NULL,
    HF_NO_NULL
};

inline std::string_view to_string(BaselineKind k)
{
    switch (k)
    {
    case BaselineKind::FD_BD: return "fd-bd";
    case BaselineKind::HF: return "hf";
    case BaselineKind::DFT_BD: return "dft-bd";
    case BaselineKind::GRAD_NO_NULL: return "grad-no-null";
    case BaselineKind::HF_NO_NULL: return "hf-no-null";
    }
    return "?";
}

inline std::optional<BaselineKind> parse_baseline(std::string_view tag)
{
    for (auto k : {BaselineKind::FD_BD, BaselineKind::HF, BaselineKind::DFT_BD, BaselineKind::GRAD_NO_NULL,
                   BaselineKind::HF_NO_NULL})
        if (to_string(k) == tag)
            return k;
    return std::nullopt;
}

struct DigitalResult
{
    CMatrix f; // N_T x U
    CombinerSet combiners;
};

struct HybridResult
{
    HybridPrecoder precoder;
    CombinerSet combiners;
    std::vector<Index> beams; // DFT+BD only: selected codebook columns
};

namespace detail
{

// Vertically stacks the channels of every UE except `skip`, plus the
// satellite rows when requested.
inline CMatrix stack_others(const std::vector<CMatrix> &chans, Index skip, const CMatrix *sat_rows)
{
    Index rows = 0;
    Index cols = chans.front().cols();
    for (size_t j = 0; j < chans.size(); ++j)
        if (static_cast<Index>(j) != skip)
            rows += chans[j].rows();
    if (sat_rows)
        rows += sat_rows->rows();
    CMatrix S(rows, cols);
    Index r = 0;
    for (size_t j = 0; j < chans.size(); ++j)
        if (static_cast<Index>(j) != skip)
        {
            S.middleRows(r, chans[j].rows()) = chans[j];
            r += chans[j].rows();
        }
    if (sat_rows && sat_rows->rows() > 0)
        S.middleRows(r, sat_rows->rows()) = *sat_rows;
    return S;
}

// Block diagonalization over arbitrary effective channels: column u is the
// dominant direction of chans[u] restricted to the null space of the other
// channels (and the extra rows, if given). Columns have unit norm.
inline CMatrix block_diagonalize(const std::vector<CMatrix> &chans, const CMatrix *extra_rows)
{
    const Index U = static_cast<Index>(chans.size());
    const Index n = chans.front().cols();
    CMatrix B(n, U);
    for (Index u = 0; u < U; ++u)
    {
        const CMatrix V = null_space(stack_others(chans, u, extra_rows));
        if (V.cols() == 0)
            throw infeasible_error("block diagonalization: empty null space for UE " + std::to_string(u));
        const CMatrix Hv = chans[static_cast<size_t>(u)] * V;
        const EigPair top = hermitian_eig_max(Hv.adjoint() * Hv);
        B.col(u) = V * top.vector;
    }
    return B;
}

} // namespace detail

// Fully digital block diagonalization with equal power per UE. With
// include_satellites the satellite rows join every UE's nulling stack.
inline DigitalResult fd_bd(const ChannelSet &ch, double p_t, bool include_satellites)
{
    ch.validate();
    if (!(p_t > 0.0))
        throw validation_error("fd_bd: p_t must be positive");
    const CMatrix *sat = include_satellites && ch.n_sat() > 0 ? &ch.sat_matrix : nullptr;
    DigitalResult res;
    res.f = detail::block_diagonalize(ch.ue_channels, sat);
    res.f *= std::sqrt(p_t / static_cast<double>(ch.n_ue()));
    res.combiners = update_combiners(ch, res.f);
    return res;
}

// Hybrid factorization of the FD-BD precoder. The first rank(F_full)
// analog beams are the unit-modulus projections of the dominant left
// singular vectors of F_full. Remaining RF chains take columns k >= 1 of
// the N_T-point DFT matrix, modulated entrywise by the first analog beam,
// so they stay orthogonal to it; with one UE and n_rf = N_T this makes
// F_RF a scaled unitary matrix. Candidates are ranked by captured power
// of F_full, divided by their satellite gain when nulling. F_BB is the
// least-squares fit of F_full, followed by power normalization.
inline HybridResult hf(const ChannelSet &ch, double p_t, Index n_rf, bool include_satellites)
{
    if (n_rf < 1 || n_rf > ch.n_tx())
        throw validation_error("hf: n_rf must lie in [1, N_T]");
    const DigitalResult full = fd_bd(ch, p_t, include_satellites);

    Eigen::JacobiSVD<CMatrix> svd(full.f, Eigen::ComputeThinU);
    const RVector &sv = svd.singularValues();
    Index rank = 0;
    for (Index i = 0; i < sv.size(); ++i)
        if (sv(i) > default_rank_tol(full.f) * sv(0))
            ++rank;
    const Index lead = std::min(rank, n_rf);

    const Index nt = ch.n_tx();
    CMatrix basis(nt, n_rf);
    for (Index c = 0; c < lead; ++c)
    {
        basis.col(c) = svd.matrixU().col(c);
        fix_phase(basis.col(c));
    }
    const CMatrix first = project_unit_modulus(basis.leftCols(1));
    CMatrix cand(nt, nt - 1);
    for (Index k = 1; k < nt; ++k)
        for (Index m = 0; m < nt; ++m)
            cand(m, k - 1) = first(m, 0) * std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(m * k % nt) /
                                                               static_cast<double>(nt));
    std::vector<Index> order(static_cast<size_t>(nt - 1));
    for (Index k = 0; k < nt - 1; ++k)
        order[static_cast<size_t>(k)] = k;
    // Rank by fit to F_full per unit of satellite leakage.
    const RVector fit = (full.f.adjoint() * cand).colwise().squaredNorm().transpose();
    RVector score = fit;
    if (include_satellites && ch.n_sat() > 0)
    {
        const RVector leak = (ch.sat_matrix * cand).colwise().squaredNorm().transpose();
        for (Index k = 0; k < nt - 1; ++k)
            score(k) = leak(k) > 0.0 ? fit(k) / leak(k) : std::numeric_limits<double>::infinity();
    }
    std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) { return score(a) > score(b); });
    for (Index c = lead; c < n_rf; ++c)
        basis.col(c) = cand.col(order[static_cast<size_t>(c - lead)]);

    HybridResult res;
    res.precoder.f_rf = project_unit_modulus(basis);
    res.precoder.f_bb = least_squares(res.precoder.f_rf, full.f);
    res.precoder = normalize_power(std::move(res.precoder), p_t);
    res.combiners = update_combiners(ch, res.precoder.effective());
    return res;
}

// Unnormalized DFT codebook over the transmit array; column p*cols + q of
// a planar array has entry exp(j 2 pi (m p / rows + n q / cols)) at element
// (m, n). Every column is unit-modulus.
inline CMatrix dft_codebook(const ArrayGeometry &geom)
{
    geom.validate();
    const Index R = geom.rows;
    const Index C = geom.cols;
    CMatrix D(R * C, R * C);
    for (Index p = 0; p < R; ++p)
        for (Index q = 0; q < C; ++q)
            for (Index m = 0; m < R; ++m)
                for (Index n = 0; n < C; ++n)
                {
                    const double ph = 2.0 * std::numbers::pi *
                                      (static_cast<double>((m * p) % R) / static_cast<double>(R) +
                                       static_cast<double>((n * q) % C) / static_cast<double>(C));
                    D(m * C + n, p * C + q) = std::polar(1.0, ph);
                }
    return D;
}

// DFT beam selection followed by block diagonalization in the reduced
// beam space. UEs pick their strongest unused beam in index order; spare RF
// chains take the unused beams with the largest aggregate gain. Ties go to
// the lowest index.
inline HybridResult dft_bd(const ChannelSet &ch, const ArrayGeometry &tx_array, double p_t, Index n_rf)
{
    ch.validate();
    const Index U = ch.n_ue();
    if (tx_array.size() != ch.n_tx())
        throw dimension_error("dft_bd: array geometry does not match N_T");
    if (n_rf < U)
        throw validation_error("dft_bd: n_rf must be at least the number of UEs");
    if (n_rf > ch.n_tx())
        throw validation_error("dft_bd: n_rf must not exceed N_T");
    if (!(p_t > 0.0))
        throw validation_error("dft_bd: p_t must be positive");

    const CMatrix D = dft_codebook(tx_array);
    const Index nb = D.cols();
    Eigen::MatrixXd gain(U, nb);
    for (Index u = 0; u < U; ++u)
        gain.row(u) = (ch.ue_channels[static_cast<size_t>(u)] * D).colwise().squaredNorm();

    std::vector<bool> used(static_cast<size_t>(nb), false);
    auto pick = [&](const Eigen::RowVectorXd &g) {
        Index best = -1;
        for (Index c = 0; c < nb; ++c)
        {
            if (used[static_cast<size_t>(c)])
                continue;
            if (best < 0 || g(c) > g(best) * (1.0 + 1e-12))
                best = c;
        }
        used[static_cast<size_t>(best)] = true;
        return best;
    };

    HybridResult res;
    for (Index u = 0; u < U; ++u)
        res.beams.push_back(pick(gain.row(u)));
    const Eigen::RowVectorXd total = gain.colwise().sum();
    while (static_cast<Index>(res.beams.size()) < n_rf)
        res.beams.push_back(pick(total));

    CMatrix f_rf(ch.n_tx(), n_rf);
    for (Index k = 0; k < n_rf; ++k)
        f_rf.col(k) = D.col(res.beams[static_cast<size_t>(k)]);

    std::vector<CMatrix> eff;
    eff.reserve(static_cast<size_t>(U));
    for (const auto &H : ch.ue_channels)
        eff.push_back(H * f_rf);
    CMatrix f_bb = detail::block_diagonalize(eff, nullptr);
    for (Index u = 0; u < U; ++u)
        f_bb.col(u) *= std::sqrt(p_t / static_cast<double>(U)) / (f_rf * f_bb.col(u)).norm();

    res.precoder = normalize_power(HybridPrecoder{std::move(f_rf), std::move(f_bb)}, p_t);
    res.combiners = update_combiners(ch, res.precoder.effective());
    return res;
}

struct BaselineConfig
{
    ArrayGeometry tx_array = ArrayGeometry::ura(8, 8);
    Index n_rf = 8;
    OptimizerConfig optimizer; // p_t is taken from here
};

struct BaselineResult
{
    CMatrix f; // effective N_T x U precoder
    std::optional<HybridPrecoder> hybrid;
    CombinerSet combiners;
    std::vector<Index> beams;
    std::optional<double> initial_cost;
    std::vector<double> cost_trace;
};

inline BaselineResult from_hybrid(HybridResult &&h)
{
    BaselineResult r;
    r.f = h.precoder.effective();
    r.hybrid = std::move(h.precoder);
    r.combiners = std::move(h.combiners);
    r.beams = std::move(h.beams);
    return r;
}

inline BaselineResult run_baseline(BaselineKind kind, const ChannelSet &ch, const BaselineConfig &cfg)
{
    const double p_t = cfg.optimizer.p_t;
    switch (kind)
    {
    case BaselineKind::FD_BD:
    {
        DigitalResult d = fd_bd(ch, p_t, true);
        BaselineResult r;
        r.f = std::move(d.f);
        r.combiners = std::move(d.combiners);
        return r;
    }
    case BaselineKind::HF: return from_hybrid(hf(ch, p_t, cfg.n_rf, true));
    case BaselineKind::HF_NO_NULL: return from_hybrid(hf(ch, p_t, cfg.n_rf, false));
    case BaselineKind::DFT_BD: return from_hybrid(dft_bd(ch, cfg.tx_array, p_t, cfg.n_rf));
    case BaselineKind::GRAD_NO_NULL:
    {
        OptimizerConfig opt = cfg.optimizer;
        opt.lambda_sat = 0.0;
        const HybridResult init = hf(ch, p_t, cfg.n_rf, false);
        BcdResult b = bcd_optimize(ch, opt, init.precoder);
        BaselineResult r;
        r.f = b.precoder.effective();
        r.hybrid = std::move(b.precoder);
        r.combiners = std::move(b.combiners);
        r.initial_cost = b.initial_cost;
        r.cost_trace = std::move(b.cost_trace);
        return r;
    }
    }
    throw validation_error("run_baseline: unknown baseline kind");
}

} // namespace satnull

#endif
