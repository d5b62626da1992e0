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


#ifndef SATNULL_GRADCHECK_HPP
#define SATNULL_GRADCHECK_HPP

#include "precoder.hpp"

#include <cmath>
#include <cstdint>
#include <numbers>
#include <algorithm>
#include <random>
#include <vector>

namespace satnull
{

// Central-difference gradient of a real function of a complex matrix, in
// the real-coordinate convention dC/dRe + j dC/dIm.
template <class Fn>
CMatrix central_difference(Fn &&fn, const CMatrix &Z, double step = 1e-6)
{
    CMatrix G(Z.rows(), Z.cols());
    CMatrix probe = Z;
    for (Index c = 0; c < Z.cols(); ++c)
        for (Index r = 0; r < Z.rows(); ++r)
        {
            const cdouble z0 = Z(r, c);
            probe(r, c) = z0 + cdouble(step, 0.0);
            const double fp = fn(probe);
            probe(r, c) = z0 - cdouble(step, 0.0);
            const double fm = fn(probe);
            probe(r, c) = z0 + cdouble(0.0, step);
            const double gp = fn(probe);
            probe(r, c) = z0 - cdouble(0.0, step);
            const double gm = fn(probe);
            probe(r, c) = z0;
            G(r, c) = cdouble((fp - fm) / (2.0 * step), (gp - gm) / (2.0 * step));
        }
    return G;
}

struct ProblemInstance
{
    ChannelSet channels;
    HybridPrecoder precoder;
    CombinerSet combiners;
    OptimizerConfig config;
};

// Unit-scale random instance: CN(0,1) channels, unit noise, random-phase
// F_RF, CN(0,1) F_BB normalized to p_t, random unit combiners, and n_sat
// random steering-vector rows in H_sat.
inline ProblemInstance random_instance(std::mt19937_64 &rng, Index n_t, Index n_rf, Index n_ue, Index n_r,
                                       Index n_sat, double lambda_sat, double p_t = 1.0)
{
    std::normal_distribution<double> g(0.0, std::sqrt(0.5));
    std::uniform_real_distribution<double> ph(-std::numbers::pi, std::numbers::pi);
    auto cn = [&](Index r, Index c) {
        CMatrix M(r, c);
        for (Index j = 0; j < c; ++j)
            for (Index i = 0; i < r; ++i)
            {
                const double re = g(rng);
                const double im = g(rng);
                M(i, j) = cdouble(re, im);
            }
        return M;
    };

    ProblemInstance p;
    for (Index u = 0; u < n_ue; ++u)
    {
        p.channels.ue_channels.push_back(cn(n_r, n_t));
        p.channels.ue_noise_power.push_back(1.0);
    }
    p.channels.sat_matrix.resize(n_sat, n_t);
    for (Index i = 0; i < n_sat; ++i)
    {
        for (Index k = 0; k < n_t; ++k)
            p.channels.sat_matrix(i, k) = std::polar(1.0, ph(rng));
        p.channels.sat_pathloss.push_back(1.0);
        p.channels.sat_noise_power.push_back(1.0);
    }
    p.precoder.f_rf.resize(n_t, n_rf);
    for (Index c = 0; c < n_rf; ++c)
        for (Index r = 0; r < n_t; ++r)
            p.precoder.f_rf(r, c) = std::polar(1.0, ph(rng));
    p.precoder.f_bb = cn(n_rf, n_ue);
    p.precoder = normalize_power(std::move(p.precoder), p_t);
    for (Index u = 0; u < n_ue; ++u)
    {
        CVector w = cn(n_r, 1).col(0);
        p.combiners.combiners.push_back(w.normalized());
    }
    p.config.lambda_sat = lambda_sat;
    p.config.p_t = p_t;
    return p;
}

struct GradCheck
{
    double rel_err_f_bb = 0.0;
    double rel_err_f_rf = 0.0;
};

inline double relative_l2(const CMatrix &a, const CMatrix &ref)
{
    const double d = ref.norm();
    return (a - ref).norm() / (d > 0.0 ? d : 1.0);
}

// Compares grad_f_bb / grad_f_rf with central differences of cost().
inline GradCheck check_gradients(const ProblemInstance &p, double step = 1e-6)
{
    const auto &ch = p.channels;
    const auto &comb = p.combiners;
    const auto &cfg = p.config;
    const CMatrix fd_bb = central_difference(
        [&](const CMatrix &Z) { return cost(ch, HybridPrecoder{p.precoder.f_rf, Z}, comb, cfg); }, p.precoder.f_bb,
        step);
    const CMatrix fd_rf = central_difference(
        [&](const CMatrix &Z) { return cost(ch, HybridPrecoder{Z, p.precoder.f_bb}, comb, cfg); }, p.precoder.f_rf,
        step);
    return {relative_l2(grad_f_bb(ch, p.precoder, comb, cfg), fd_bb),
            relative_l2(grad_f_rf(ch, p.precoder, comb, cfg), fd_rf)};
}

struct GradCheckRow
{
    Index n_t = 0, n_rf = 0, n_ue = 0;
    double lambda_sat = 0.0;
    GradCheck result;
};

// Randomized suite over N_T in {4, 8, 16}, N_RF in {2, 4, 8} (capped at
// N_T), U in {1, 2, 3} (capped at N_RF), lambda in {0, 10}; N_R = 2 and
// two satellites throughout.
inline std::vector<GradCheckRow> gradcheck_suite(std::uint64_t seed, int count, double step = 1e-6)
{
    if (count < 1)
        throw config_error("gradcheck_suite: count must be at least 1");
    std::mt19937_64 rng(seed);
    static constexpr Index nts[] = {4, 8, 16};
    static constexpr Index nrfs[] = {2, 4, 8};
    static constexpr Index nues[] = {1, 2, 3};
    static constexpr double lambdas[] = {0.0, 10.0};
    std::uniform_int_distribution<int> pick3(0, 2), pick2(0, 1);
    std::vector<GradCheckRow> rows;
    for (int k = 0; k < count; ++k)
    {
        GradCheckRow row;
        row.n_t = nts[pick3(rng)];
        row.n_rf = std::min(nrfs[pick3(rng)], row.n_t);
        row.n_ue = std::min(nues[pick3(rng)], row.n_rf);
        row.lambda_sat = lambdas[pick2(rng)];
        const ProblemInstance p = random_instance(rng, row.n_t, row.n_rf, row.n_ue, 2, 2, row.lambda_sat);
        row.result = check_gradients(p, step);
        rows.push_back(row);
    }
    return rows;
}

} // namespace satnull

#endif
