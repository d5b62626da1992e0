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


#ifndef SATNULL_PRECODER_HPP
#define SATNULL_PRECODER_HPP

#include "channel.hpp"
#include "types.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace satnull
{

struct OptimizerConfig
{
    double lambda_sat = 10.0;
    double step_size = 1e-4;
    int iter_bb = 5;
    int iter_rf = 5;
    int outer_iters = 20;
    double p_t = 1.0; // W

    void validate() const
    {
        if (!(lambda_sat >= 0.0) || !std::isfinite(lambda_sat))
            throw validation_error("OptimizerConfig: lambda_sat must be finite and >= 0");
        if (!(step_size > 0.0) || !std::isfinite(step_size))
            throw validation_error("OptimizerConfig: step_size must be positive");
        if (iter_bb < 1 || iter_rf < 1 || outer_iters < 1)
            throw validation_error("OptimizerConfig: iteration counts must be at least 1");
        if (!(p_t > 0.0) || !std::isfinite(p_t))
            throw validation_error("OptimizerConfig: p_t must be positive");
    }
};

// Per-UE quantities shared by the cost and both gradients.
//
// With m = H_u^* w_u, the rank-one matrix M_u = H_u^* w_u w_u^* H_u equals
// m m^*, so it is never formed. gains(j) = w_u^* H_u F e_j.
struct UeTerms
{
    CVector m;
    CVector gains;
    double num = 0.0; // |gains(u)|^2
    double den = 0.0; // sigma_u^2 + sum_{j != u} |gains(j)|^2
};

struct GradientWorkspace
{
    CMatrix f;     // F_RF F_BB
    CMatrix sat_f; // H_sat F
    std::vector<UeTerms> ue;
};

namespace detail
{

inline void check_problem(const ChannelSet &ch, const HybridPrecoder &prec, const CombinerSet &comb)
{
    if (prec.f_rf.rows() != ch.n_tx())
        throw dimension_error("F_RF must have N_T rows, got " + shape_str(prec.f_rf));
    if (prec.f_bb.rows() != prec.f_rf.cols())
        throw dimension_error("F_BB rows must equal N_RF, got " + shape_str(prec.f_bb));
    if (prec.f_bb.cols() != ch.n_ue())
        throw dimension_error("F_BB must have one column per UE, got " + shape_str(prec.f_bb));
    if (comb.size() != ch.n_ue())
        throw dimension_error("one combiner per UE required");
    for (Index u = 0; u < ch.n_ue(); ++u)
        if (comb[u].size() != ch.ue_channels[static_cast<size_t>(u)].rows())
            throw dimension_error("combiner " + std::to_string(u) + " length must equal N_R");
}

} // namespace detail

inline GradientWorkspace make_workspace(const ChannelSet &ch, const HybridPrecoder &prec, const CombinerSet &comb)
{
    detail::check_problem(ch, prec, comb);
    GradientWorkspace ws;
    ws.f = prec.effective();
    ws.sat_f = ch.n_sat() > 0 ? CMatrix(ch.sat_matrix * ws.f) : CMatrix(0, ws.f.cols());
    const Index U = ch.n_ue();
    ws.ue.resize(static_cast<size_t>(U));
    for (Index u = 0; u < U; ++u)
    {
        auto &t = ws.ue[static_cast<size_t>(u)];
        const CMatrix &H = ch.ue_channels[static_cast<size_t>(u)];
        t.m = H.adjoint() * comb[u];
        t.gains = ws.f.transpose() * t.m.conjugate(); // (m^* F)^T
        t.num = std::norm(t.gains(u));
        t.den = ch.ue_noise_power[static_cast<size_t>(u)];
        for (Index j = 0; j < U; ++j)
            if (j != u)
                t.den += std::norm(t.gains(j));
    }
    return ws;
}

// -sum_u ln(1 + SINR_u) + lambda_sat * ||H_sat F_RF F_BB||_F^2
inline double cost(const ChannelSet &ch, const HybridPrecoder &prec, const CombinerSet &comb,
                   const OptimizerConfig &cfg)
{
    const GradientWorkspace ws = make_workspace(ch, prec, comb);
    double rate = 0.0;
    for (const auto &t : ws.ue)
        rate += std::log1p(t.num / t.den);
    return -rate + cfg.lambda_sat * ws.sat_f.squaredNorm();
}

// Gradients use the real-coordinate convention
//   G = dC/dRe(Z) + j dC/dIm(Z) = 2 dC/dconj(Z),
// so that Z - alpha G is a descent step and G matches central differences
// taken separately along the real and imaginary part of each entry.
//
// Rate part, with S_u = num_u + den_u and a_uj = w_u^* H_u F_RF F_BB e_j:
//   UE u's own stream contributes -2/S_u * a_uu,
//   each interfering stream j != u contributes 2 num_u/(den_u S_u) * a_uj.

inline CMatrix grad_f_bb(const ChannelSet &ch, const HybridPrecoder &prec, const CombinerSet &comb,
                         const OptimizerConfig &cfg, const GradientWorkspace &ws)
{
    const Index U = ch.n_ue();
    CMatrix G = CMatrix::Zero(prec.f_bb.rows(), U);
    if (cfg.lambda_sat != 0.0 && ch.n_sat() > 0)
        G.noalias() += (2.0 * cfg.lambda_sat) * (prec.f_rf.adjoint() * (ch.sat_matrix.adjoint() * ws.sat_f));

    for (Index u = 0; u < U; ++u)
    {
        const auto &t = ws.ue[static_cast<size_t>(u)];
        const double s = t.den + t.num;
        const double c_sig = 2.0 / s;
        const double c_int = 2.0 * t.num / (t.den * s);
        const CVector g = prec.f_rf.adjoint() * t.m; // F_RF^* M_u F_RF b = g (g^* b)
        for (Index j = 0; j < U; ++j)
        {
            const double c = j == u ? -c_sig : c_int;
            G.col(j) += (c * t.gains(j)) * g;
        }
    }
    return G;
}

inline CMatrix grad_f_bb(const ChannelSet &ch, const HybridPrecoder &prec, const CombinerSet &comb,
                         const OptimizerConfig &cfg)
{
    return grad_f_bb(ch, prec, comb, cfg, make_workspace(ch, prec, comb));
}

inline CMatrix grad_f_rf(const ChannelSet &ch, const HybridPrecoder &prec, const CombinerSet &comb,
                         const OptimizerConfig &cfg, const GradientWorkspace &ws)
{
    const Index U = ch.n_ue();
    CMatrix G = CMatrix::Zero(prec.f_rf.rows(), prec.f_rf.cols());
    if (cfg.lambda_sat != 0.0 && ch.n_sat() > 0)
        G.noalias() += (2.0 * cfg.lambda_sat) * (ch.sat_matrix.adjoint() * (ws.sat_f * prec.f_bb.adjoint()));

    for (Index u = 0; u < U; ++u)
    {
        const auto &t = ws.ue[static_cast<size_t>(u)];
        const double s = t.den + t.num;
        const double c_sig = 2.0 / s;
        const double c_int = 2.0 * t.num / (t.den * s);
        // sum_j c_j a_uj b_j^*, then one outer product with m.
        Eigen::RowVectorXcd row = Eigen::RowVectorXcd::Zero(prec.f_rf.cols());
        for (Index j = 0; j < U; ++j)
        {
            const double c = j == u ? -c_sig : c_int;
            row += (c * t.gains(j)) * prec.f_bb.col(j).adjoint();
        }
        G.noalias() += t.m * row;
    }
    return G;
}

inline CMatrix grad_f_rf(const ChannelSet &ch, const HybridPrecoder &prec, const CombinerSet &comb,
                         const OptimizerConfig &cfg)
{
    return grad_f_rf(ch, prec, comb, cfg, make_workspace(ch, prec, comb));
}

// Entrywise exp(j angle(z)); zero entries map to 1.
inline CMatrix project_unit_modulus(const CMatrix &f_rf)
{
    return f_rf.unaryExpr([](const cdouble &z) { return z == cdouble(0.0, 0.0) ? cdouble(1.0, 0.0) : std::polar(1.0, std::arg(z)); });
}

// Rescales F_BB so that ||F_RF F_BB||_F^2 = p_t.
inline HybridPrecoder normalize_power(HybridPrecoder prec, double p_t)
{
    if (!(p_t > 0.0))
        throw validation_error("normalize_power: p_t must be positive");
    const double n = prec.effective().norm();
    if (!(n > 0.0) || !std::isfinite(n))
        throw degenerate_input_error("normalize_power: F_RF F_BB is zero or non-finite");
    prec.f_bb *= std::sqrt(p_t) / n;
    return prec;
}

// Top generalized eigenvector of (R_sig, R_yy) for UE u, where F is the
// effective N_T x U precoder. Solved by whitening with the Cholesky factor
// of R_yy so the Hermitian eigensolver applies.
inline CVector update_combiner(const CMatrix &H_u, const CMatrix &F, Index ue_index, double sigma2_u)
{
    if (!(sigma2_u > 0.0))
        throw validation_error("update_combiner: noise power must be positive");
    if (H_u.cols() != F.rows())
        throw dimension_error("update_combiner: H_u is " + detail::shape_str(H_u) + ", F is " + detail::shape_str(F));
    if (ue_index < 0 || ue_index >= F.cols())
        throw dimension_error("update_combiner: UE index out of range");

    const CMatrix HF = H_u * F; // N_R x U
    const Index nr = H_u.rows();
    CMatrix r_yy = sigma2_u * CMatrix::Identity(nr, nr);
    for (Index j = 0; j < F.cols(); ++j)
        if (j != ue_index)
            r_yy.noalias() += HF.col(j) * HF.col(j).adjoint();
    const CMatrix r_sig = HF.col(ue_index) * HF.col(ue_index).adjoint();

    Eigen::LLT<CMatrix> llt(r_yy);
    if (llt.info() != Eigen::Success)
        throw numerical_error("update_combiner: interference covariance is not positive definite");
    const auto L = llt.matrixL();
    // L^{-1} R_sig L^{-*}
    CMatrix tmp = L.solve(r_sig);
    CMatrix white = L.solve(tmp.adjoint());
    white = 0.5 * (white + white.adjoint()).eval();
    if (!white.allFinite())
        throw numerical_error("update_combiner: covariance overflow for UE " + std::to_string(ue_index));

    const EigPair top = hermitian_eig_max(white);
    CVector w = llt.matrixU().solve(top.vector);
    w.normalize();
    fix_phase(w);
    return w;
}

inline CombinerSet update_combiners(const ChannelSet &ch, const CMatrix &F)
{
    CombinerSet comb;
    for (Index u = 0; u < ch.n_ue(); ++u)
        comb.combiners.push_back(
            update_combiner(ch.ue_channels[static_cast<size_t>(u)], F, u, ch.ue_noise_power[static_cast<size_t>(u)]));
    return comb;
}

struct BcdResult
{
    HybridPrecoder precoder;
    CombinerSet combiners;
    double initial_cost = 0.0;
    std::vector<double> cost_trace; // one entry per outer iteration
};

inline constexpr double modulus_tol = 1e-9;
inline constexpr double power_rel_tol = 1e-6;

// Alternating projected-gradient optimization of the hybrid precoder.
//
// Each outer iteration takes iter_bb digital steps (each followed by power
// normalization), then iter_rf analog steps (each followed by unit-modulus
// projection), then refreshes all combiners. The power is normalized once
// more before the last combiner refresh so the returned precoder meets the
// power constraint.
inline BcdResult bcd_optimize(const ChannelSet &ch, const OptimizerConfig &cfg, const HybridPrecoder &init)
{
    cfg.validate();
    ch.validate();
    if (init.max_modulus_error() > modulus_tol)
        throw validation_error("bcd_optimize: initial F_RF violates the unit-modulus constraint");
    if (std::abs(init.power() - cfg.p_t) > power_rel_tol * cfg.p_t)
        throw validation_error("bcd_optimize: initial precoder violates the power constraint");

    BcdResult res;
    res.precoder = init;
    HybridPrecoder &prec = res.precoder;
    res.combiners = update_combiners(ch, prec.effective());
    res.initial_cost = cost(ch, prec, res.combiners, cfg);
    res.cost_trace.reserve(static_cast<size_t>(cfg.outer_iters));

    auto diverged = [](int t, const char *what) {
        return divergence_error(std::string("bcd_optimize: non-finite ") + what + " at outer iteration " +
                                    std::to_string(t + 1),
                                t + 1);
    };
    for (int t = 0; t < cfg.outer_iters; ++t)
    {
        for (int n = 0; n < cfg.iter_bb; ++n)
        {
            const GradientWorkspace ws = make_workspace(ch, prec, res.combiners);
            prec.f_bb -= cfg.step_size * grad_f_bb(ch, prec, res.combiners, cfg, ws);
            if (!prec.f_bb.allFinite())
                throw diverged(t, "F_BB");
            prec = normalize_power(std::move(prec), cfg.p_t);
        }
        for (int m = 0; m < cfg.iter_rf; ++m)
        {
            const GradientWorkspace ws = make_workspace(ch, prec, res.combiners);
            const CMatrix step = prec.f_rf - cfg.step_size * grad_f_rf(ch, prec, res.combiners, cfg, ws);
            if (!step.allFinite())
                throw diverged(t, "F_RF");
            prec.f_rf = project_unit_modulus(step);
        }
        if (t + 1 == cfg.outer_iters)
            prec = normalize_power(std::move(prec), cfg.p_t);
        res.combiners = update_combiners(ch, prec.effective());

        const double c = cost(ch, prec, res.combiners, cfg);
        if (!std::isfinite(c))
            throw diverged(t, "cost");
        res.cost_trace.push_back(c);
    }
    return res;
}

} // namespace satnull

#endif
