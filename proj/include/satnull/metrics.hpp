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


#ifndef SATNULL_METRICS_HPP
#define SATNULL_METRICS_HPP

#include "channel.hpp"
#include "types.hpp"

#include <cmath>
#include <concepts>
#include <limits>
#include <ranges>
#include <vector>

namespace satnull
{

// How the INR numerator is scaled. `literal` multiplies the beam gain by
// P_t on top of the power-normalized precoder; `unit` does not.
enum class InrPowerFactor
{
    literal,
    unit
};

struct LinkMetrics
{
    std::vector<double> per_ue_sinr;
    double sum_rate_bits = 0.0;
    std::vector<double> per_sat_inr_db;
    double interference_power = 0.0;
};

// Interference below this fraction of ||h_i|| * ||F||_F is treated as an
// exact null and reported as -infinity.
inline constexpr double exact_null_rel_tol = 1e-12;

inline constexpr double inr_null_sentinel = -std::numeric_limits<double>::infinity();

namespace detail
{

inline void check_link_dims(const ChannelSet &ch, const CMatrix &F, const CombinerSet &comb, Index u)
{
    if (u < 0 || u >= ch.n_ue())
        throw dimension_error("UE index out of range");
    if (F.rows() != ch.n_tx() || F.cols() != ch.n_ue())
        throw dimension_error("precoder must be N_T x U, got " + shape_str(F));
    if (comb.size() != ch.n_ue())
        throw dimension_error("one combiner per UE required");
    const CMatrix &H = ch.ue_channels[static_cast<size_t>(u)];
    if (comb[u].size() != H.rows())
        throw dimension_error("combiner length must equal N_R");
}

} // namespace detail

// |w_u^* H_u F e_u|^2 / (sigma_u^2 + sum_{j != u} |w_u^* H_u F e_j|^2)
inline double sinr(const ChannelSet &ch, const CMatrix &F, const CombinerSet &comb, Index u)
{
    detail::check_link_dims(ch, F, comb, u);
    const auto su = static_cast<size_t>(u);
    const Eigen::RowVectorXcd gains = comb[u].adjoint() * ch.ue_channels[su] * F;
    double interf = 0.0;
    for (Index j = 0; j < gains.size(); ++j)
        if (j != u)
            interf += std::norm(gains(j));
    return std::norm(gains(u)) / (ch.ue_noise_power[su] + interf);
}

inline double sum_rate(const ChannelSet &ch, const CMatrix &F, const CombinerSet &comb)
{
    double r = 0.0;
    for (Index u = 0; u < ch.n_ue(); ++u)
        r += std::log2(1.0 + sinr(ch, F, comb, u));
    return r;
}

// ||H_sat F||_F^2
inline double interference_power(const CMatrix &sat_matrix, const CMatrix &F)
{
    if (sat_matrix.cols() != F.rows() && sat_matrix.rows() > 0)
        throw dimension_error("interference_power: H_sat is " + detail::shape_str(sat_matrix) + ", F is " +
                              detail::shape_str(F));
    if (sat_matrix.rows() == 0)
        return 0.0;
    return (sat_matrix * F).squaredNorm();
}

// 10 log10(p * ||h_i^* F||^2 / (L_i sigma_i^2)), where p = p_t for the
// literal factor and 1 otherwise. ||h_i^* F||^2 sums over all UE streams.
inline double inr_db(const CVector &h_i, const CMatrix &F, double p_t, double pathloss, double sigma2,
                     InrPowerFactor factor = InrPowerFactor::literal)
{
    if (h_i.size() != F.rows())
        throw dimension_error("inr_db: steering vector length must equal N_T");
    if (!(pathloss > 0.0) || !(sigma2 > 0.0))
        throw validation_error("inr_db: pathloss and noise power must be positive");
    if (!(p_t > 0.0))
        throw validation_error("inr_db: transmit power must be positive");
    const double gain = (h_i.adjoint() * F).squaredNorm();
    const double floor = exact_null_rel_tol * h_i.norm() * F.norm();
    if (gain <= floor * floor)
        return inr_null_sentinel;
    const double p = factor == InrPowerFactor::literal ? p_t : 1.0;
    return 10.0 * std::log10(p * gain / (pathloss * sigma2));
}

inline LinkMetrics evaluate_link(const ChannelSet &ch, const CMatrix &F, const CombinerSet &comb, double p_t,
                                 InrPowerFactor factor = InrPowerFactor::literal)
{
    LinkMetrics m;
    for (Index u = 0; u < ch.n_ue(); ++u)
    {
        const double s = sinr(ch, F, comb, u);
        m.per_ue_sinr.push_back(s);
        m.sum_rate_bits += std::log2(1.0 + s);
    }
    for (Index i = 0; i < ch.n_sat(); ++i)
        m.per_sat_inr_db.push_back(inr_db(ch.sat_channel(i), F, p_t, ch.sat_pathloss[static_cast<size_t>(i)],
                                          ch.sat_noise_power[static_cast<size_t>(i)], factor));
    m.interference_power = interference_power(ch.sat_matrix, F);
    return m;
}

template <class R>
concept InrRecordRange = std::ranges::input_range<R> && requires(std::ranges::range_reference_t<R> rec) {
    { rec.per_sat_inr_db } -> std::convertible_to<const std::vector<double> &>;
};

// Fraction of (trial, satellite) pairs whose INR exceeds threshold_db.
// NaN entries (failed trials) contribute nothing.
template <InrRecordRange R>
double protection_violation_rate(const R &trials, double threshold_db)
{
    std::size_t pairs = 0;
    std::size_t above = 0;
    for (const auto &rec : trials)
        for (double v : rec.per_sat_inr_db)
        {
            if (std::isnan(v))
                continue;
            ++pairs;
            if (v > threshold_db)
                ++above;
        }
    if (pairs == 0)
        throw validation_error("protection_violation_rate: no INR samples");
    return static_cast<double>(above) / static_cast<double>(pairs);
}

} // namespace satnull

#endif
