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

#ifndef SATNULL_CHANNEL_HPP
#define SATNULL_CHANNEL_HPP

#include "numerics.hpp"

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

namespace satnull
{

inline constexpr double speed_of_light = 299792458.0;  // m/s
inline constexpr double boltzmann = 1.380649e-23;      // J/K
inline constexpr double reference_temperature = 290.0; // K

enum class ArrayKind
{
    URA,
    ULA
};

// Planar arrays lie in the y-z plane with elements indexed row-major:
// element (m, n) sits at flat index m * cols + n. Linear arrays use
// rows = element count and cols = 1. Spacing is in wavelengths.
struct ArrayGeometry
{
    ArrayKind kind = ArrayKind::ULA;
    Index rows = 1;
    Index cols = 1;
    double spacing = 0.5;

    static ArrayGeometry ura(Index rows, Index cols, double spacing = 0.5)
    {
        return {ArrayKind::URA, rows, cols, spacing};
    }
    static ArrayGeometry ula(Index elements, double spacing = 0.5)
    {
        return {ArrayKind::ULA, elements, 1, spacing};
    }

    Index size() const { return rows * cols; }

    void validate() const
    {
        if (rows < 1 || cols < 1)
            throw validation_error("ArrayGeometry: element count must be at least 1");
        if (kind == ArrayKind::ULA && cols != 1)
            throw validation_error("ArrayGeometry: ULA must have a single column");
        if (!(spacing > 0.0) || !std::isfinite(spacing))
            throw validation_error("ArrayGeometry: spacing must be positive");
    }
};

// One propagation path. gain carries the pathloss.
struct PathParams
{
    cdouble gain{1.0, 0.0};
    double aod_azimuth = 0.0;   // departure at the BS array
    double aod_elevation = 0.0; // departure at the BS array
    double aoa_azimuth = 0.0;   // arrival at the UE linear array
};

struct SatelliteGeometry
{
    double azimuth = 0.0;          // rad
    double elevation = 0.5 * std::numbers::pi; // rad, in (0, pi/2]
    double slant_range = 100e3;    // m
    double atmospheric_loss = 0.0; // dB

    void validate() const
    {
        if (!(elevation > 0.0) || elevation > 0.5 * std::numbers::pi + 1e-12)
            throw validation_error("SatelliteGeometry: elevation must lie in (0, pi/2]");
        if (!(slant_range > 0.0))
            throw validation_error("SatelliteGeometry: slant range must be positive");
        if (!(atmospheric_loss >= 0.0))
            throw validation_error("SatelliteGeometry: atmospheric loss must be nonnegative");
    }
};

// All channel state for one problem instance.
//
// sat_matrix row i holds h_i^* (conjugate transpose of the satellite
// steering vector), so sat_matrix * F gives the per-satellite beam gains.
struct ChannelSet
{
    std::vector<CMatrix> ue_channels; // each N_R x N_T
    CMatrix sat_matrix;               // N x N_T
    std::vector<double> sat_pathloss; // linear, L_i
    std::vector<double> sat_noise_power;
    std::vector<double> ue_noise_power;

    Index n_ue() const { return static_cast<Index>(ue_channels.size()); }
    Index n_sat() const { return sat_matrix.rows(); }
    Index n_tx() const { return ue_channels.empty() ? sat_matrix.cols() : ue_channels.front().cols(); }

    // Column vector h_i.
    CVector sat_channel(Index i) const { return sat_matrix.row(i).adjoint(); }

    void validate() const
    {
        if (ue_channels.empty())
            throw validation_error("ChannelSet: at least one UE channel required");
        const Index nt = ue_channels.front().cols();
        for (const auto &H : ue_channels)
        {
            if (H.cols() != nt || H.rows() < 1)
                throw dimension_error("ChannelSet: UE channels must share N_T columns");
            if (!H.allFinite())
                throw validation_error("ChannelSet: non-finite UE channel entries");
        }
        if (sat_matrix.cols() != nt && sat_matrix.rows() > 0)
            throw dimension_error("ChannelSet: satellite matrix must have N_T columns");
        const auto n = static_cast<size_t>(sat_matrix.rows());
        if (sat_pathloss.size() != n || sat_noise_power.size() != n)
            throw dimension_error("ChannelSet: per-satellite pathloss/noise lists must have N entries");
        if (ue_noise_power.size() != ue_channels.size())
            throw dimension_error("ChannelSet: ue_noise_power must have U entries");
        for (double s : ue_noise_power)
            if (!(s > 0.0))
                throw validation_error("ChannelSet: UE noise power must be positive");
        for (size_t i = 0; i < n; ++i)
            if (!(sat_pathloss[i] > 0.0) || !(sat_noise_power[i] > 0.0))
                throw validation_error("ChannelSet: satellite pathloss and noise must be positive");
    }
};

inline CVector steering_vector(const ArrayGeometry &geom, double azimuth, double elevation)
{
    geom.validate();
    const double k = 2.0 * std::numbers::pi * geom.spacing;
    CVector a(geom.size());
    if (geom.kind == ArrayKind::ULA)
    {
        const double s = std::sin(azimuth);
        for (Index m = 0; m < geom.rows; ++m)
            a(m) = std::polar(1.0, k * static_cast<double>(m) * s);
        return a;
    }
    const double u = std::sin(elevation) * std::cos(azimuth);
    const double v = std::sin(elevation) * std::sin(azimuth);
    for (Index m = 0; m < geom.rows; ++m)
        for (Index n = 0; n < geom.cols; ++n)
            a(m * geom.cols + n) = std::polar(1.0, k * (static_cast<double>(m) * u + static_cast<double>(n) * v));
    return a;
}

// Narrowband geometric channel: sum over paths of gain * a_R(aoa) a_T(aod)^*.
inline CMatrix generate_ue_channel(const ArrayGeometry &geom_tx, const ArrayGeometry &geom_rx,
                                   const std::vector<PathParams> &paths)
{
    if (paths.empty())
        throw validation_error("generate_ue_channel: path list is empty");
    geom_tx.validate();
    geom_rx.validate();
    CMatrix H = CMatrix::Zero(geom_rx.size(), geom_tx.size());
    for (const auto &p : paths)
    {
        const CVector ar = steering_vector(geom_rx, p.aoa_azimuth, 0.0);
        const CVector at = steering_vector(geom_tx, p.aod_azimuth, p.aod_elevation);
        H.noalias() += p.gain * ar * at.adjoint();
    }
    return H;
}

// Random paths with i.i.d. CN(0, 10^(-pathloss_db/10) / count) gains and
// uniform angles. Draws consume rng in a fixed order.
inline std::vector<PathParams> generate_random_paths(std::mt19937_64 &rng, int count, double pathloss_db)
{
    if (count < 1)
        throw validation_error("generate_random_paths: count must be at least 1");
    const double var = std::pow(10.0, -pathloss_db / 10.0) / count;
    std::normal_distribution<double> gauss(0.0, std::sqrt(0.5 * var));
    std::uniform_real_distribution<double> az(-std::numbers::pi, std::numbers::pi);
    std::uniform_real_distribution<double> el(-0.5 * std::numbers::pi, 0.5 * std::numbers::pi);

    std::vector<PathParams> paths(static_cast<size_t>(count));
    for (auto &p : paths)
    {
        const double re = gauss(rng);
        const double im = gauss(rng);
        p.gain = {re, im};
        p.aod_azimuth = az(rng);
        p.aod_elevation = el(rng);
        p.aoa_azimuth = az(rng);
    }
    return paths;
}

inline std::vector<PathParams> generate_random_paths(std::uint64_t seed, int count, double pathloss_db)
{
    std::mt19937_64 rng(seed);
    return generate_random_paths(rng, count, pathloss_db);
}

// LOS steering vector toward the satellite; pathloss is kept separate.
inline CVector satellite_channel(const ArrayGeometry &geom_tx, const SatelliteGeometry &sat)
{
    sat.validate();
    return steering_vector(geom_tx, sat.azimuth, sat.elevation);
}

// Free-space loss plus atmospheric attenuation, in dB.
inline double satellite_pathloss_db(const SatelliteGeometry &sat, double carrier_hz)
{
    if (!(carrier_hz > 0.0))
        throw validation_error("satellite_pathloss: carrier frequency must be positive");
    sat.validate();
    const double fspl = 20.0 * std::log10(4.0 * std::numbers::pi * sat.slant_range * carrier_hz / speed_of_light);
    return fspl + sat.atmospheric_loss;
}

// Same loss as a linear factor L_i.
inline double satellite_pathloss(const SatelliteGeometry &sat, double carrier_hz)
{
    return std::pow(10.0, satellite_pathloss_db(sat, carrier_hz) / 10.0);
}

// k * T0 * B * NF, in watts.
inline double thermal_noise_power(double bandwidth_hz, double noise_figure_db)
{
    if (!(bandwidth_hz > 0.0))
        throw validation_error("thermal_noise_power: bandwidth must be positive");
    return boltzmann * reference_temperature * bandwidth_hz * std::pow(10.0, noise_figure_db / 10.0);
}

inline double watts_to_dbm(double w)
{
    return 10.0 * std::log10(w) + 30.0;
}

// Stacks h_i^* rows for the given satellites.
inline CMatrix stack_satellite_channels(const ArrayGeometry &geom_tx, const std::vector<SatelliteGeometry> &sats)
{
    CMatrix S(static_cast<Index>(sats.size()), geom_tx.size());
    for (size_t i = 0; i < sats.size(); ++i)
        S.row(static_cast<Index>(i)) = satellite_channel(geom_tx, sats[i]).adjoint();
    return S;
}

} // namespace satnull

#endif
