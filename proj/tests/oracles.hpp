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

// Reference implementations used only by the tests. They deliberately avoid
// the library's code paths: plain loops, explicit formulas, power iteration.

#ifndef SATNULL_TESTS_ORACLES_HPP
#define SATNULL_TESTS_ORACLES_HPP

#include <satnull/satnull.hpp>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

namespace oracle
{

using satnull::cdouble;
using satnull::CMatrix;
using satnull::CVector;
using satnull::Index;

inline CMatrix random_cn(std::mt19937_64 &rng, Index r, Index c, double var = 1.0)
{
    std::normal_distribution<double> g(0.0, std::sqrt(0.5 * var));
    CMatrix M(r, c);
    for (Index i = 0; i < r; ++i)
        for (Index j = 0; j < c; ++j)
        {
            const double re = g(rng);
            const double im = g(rng);
            M(i, j) = {re, im};
        }
    return M;
}

inline CMatrix random_hermitian(std::mt19937_64 &rng, Index n)
{
    const CMatrix A = random_cn(rng, n, n);
    return A + A.adjoint();
}

inline CVector random_unit(std::mt19937_64 &rng, Index n)
{
    return random_cn(rng, n, 1).col(0).normalized();
}

inline CMatrix random_phases(std::mt19937_64 &rng, Index r, Index c)
{
    std::uniform_real_distribution<double> ph(-std::numbers::pi, std::numbers::pi);
    CMatrix M(r, c);
    for (Index i = 0; i < r; ++i)
        for (Index j = 0; j < c; ++j)
            M(i, j) = std::polar(1.0, ph(rng));
    return M;
}

// Element-by-element steering vector straight from the closed form.
inline CVector steering(const satnull::ArrayGeometry &g, double az, double el)
{
    CVector a(g.rows * g.cols);
    const double twopi_d = 2.0 * std::numbers::pi * g.spacing;
    for (Index m = 0; m < g.rows; ++m)
        for (Index n = 0; n < g.cols; ++n)
        {
            double phase;
            if (g.kind == satnull::ArrayKind::ULA)
                phase = twopi_d * static_cast<double>(m) * std::sin(az);
            else
                phase = twopi_d * (static_cast<double>(m) * std::sin(el) * std::cos(az) +
                                   static_cast<double>(n) * std::sin(el) * std::sin(az));
            a(m * g.cols + n) = {std::cos(phase), std::sin(phase)};
        }
    return a;
}

// Triple loop over paths, receive and transmit elements.
inline CMatrix channel(const satnull::ArrayGeometry &tx, const satnull::ArrayGeometry &rx,
                       const std::vector<satnull::PathParams> &paths)
{
    CMatrix H = CMatrix::Zero(rx.rows * rx.cols, tx.rows * tx.cols);
    for (const auto &p : paths)
    {
        const CVector ar = steering(rx, p.aoa_azimuth, 0.0);
        const CVector at = steering(tx, p.aod_azimuth, p.aod_elevation);
        for (Index r = 0; r < H.rows(); ++r)
            for (Index t = 0; t < H.cols(); ++t)
                H(r, t) += p.gain * ar(r) * std::conj(at(t));
    }
    return H;
}

// w^* H F e_j by explicit summation.
inline cdouble stream_gain(const CMatrix &H, const CVector &w, const CMatrix &F, Index j)
{
    cdouble acc = 0.0;
    for (Index r = 0; r < H.rows(); ++r)
        for (Index t = 0; t < H.cols(); ++t)
            acc += std::conj(w(r)) * H(r, t) * F(t, j);
    return acc;
}

inline double sinr(const satnull::ChannelSet &ch, const CMatrix &F, const satnull::CombinerSet &comb, Index u)
{
    const auto &H = ch.ue_channels[static_cast<size_t>(u)];
    double interf = 0.0;
    for (Index j = 0; j < F.cols(); ++j)
        if (j != u)
            interf += std::norm(stream_gain(H, comb[u], F, j));
    return std::norm(stream_gain(H, comb[u], F, u)) / (ch.ue_noise_power[static_cast<size_t>(u)] + interf);
}

// Natural-log sum rate.
inline double sum_rate_nats(const satnull::ChannelSet &ch, const CMatrix &F, const satnull::CombinerSet &comb)
{
    double r = 0.0;
    for (Index u = 0; u < ch.n_ue(); ++u)
        r += std::log(1.0 + oracle::sinr(ch, F, comb, u));
    return r;
}

// Trace form tr(F^* S^* S F) by loops.
inline double penalty(const CMatrix &S, const CMatrix &F)
{
    double acc = 0.0;
    for (Index i = 0; i < S.rows(); ++i)
        for (Index j = 0; j < F.cols(); ++j)
        {
            cdouble g = 0.0;
            for (Index t = 0; t < S.cols(); ++t)
                g += S(i, t) * F(t, j);
            acc += std::norm(g);
        }
    return acc;
}

inline double cost(const satnull::ChannelSet &ch, const CMatrix &f_rf, const CMatrix &f_bb,
                   const satnull::CombinerSet &comb, double lambda)
{
    const CMatrix F = f_rf * f_bb;
    return -sum_rate_nats(ch, F, comb) + lambda * penalty(ch.sat_matrix, F);
}

// Forward/backward differences on each real and imaginary coordinate; the
// result is dC/dRe + j dC/dIm.
template <class Fn>
CMatrix numeric_gradient(Fn &&fn, CMatrix Z, double h)
{
    CMatrix G(Z.rows(), Z.cols());
    for (Index i = 0; i < Z.rows(); ++i)
        for (Index j = 0; j < Z.cols(); ++j)
        {
            const cdouble z = Z(i, j);
            Z(i, j) = z + h;
            const double rp = fn(Z);
            Z(i, j) = z - h;
            const double rm = fn(Z);
            Z(i, j) = z + cdouble(0.0, h);
            const double ip = fn(Z);
            Z(i, j) = z - cdouble(0.0, h);
            const double im = fn(Z);
            Z(i, j) = z;
            G(i, j) = {(rp - rm) / (2.0 * h), (ip - im) / (2.0 * h)};
        }
    return G;
}

// Dominant eigenvector of a Hermitian PSD matrix by power iteration.
inline CVector power_iteration(const CMatrix &A, int iters = 2000)
{
    CVector v = CVector::Ones(A.rows()).normalized();
    for (int k = 0; k < iters; ++k)
    {
        CVector nv = A * v;
        const double n = nv.norm();
        if (n == 0.0)
            return v;
        v = nv / n;
    }
    return v;
}

// Generalized Rayleigh quotient w^* R_sig w / w^* R_yy w, i.e. the SINR of
// UE u when it uses combiner w.
inline double rayleigh(const CMatrix &H, const CMatrix &F, Index u, double sigma2, const CVector &w)
{
    double sig = std::norm(stream_gain(H, w, F, u));
    double den = sigma2 * w.squaredNorm();
    for (Index j = 0; j < F.cols(); ++j)
        if (j != u)
            den += std::norm(stream_gain(H, w, F, j));
    return sig / den;
}

// Block-diagonalization column for UE u built from the orthogonal projector
// I - A^*(A A^*)^{-1} A; assumes the stacked interferer matrix A has full
// row rank.
inline CVector bd_column(const std::vector<CMatrix> &chans, Index u, const CMatrix &sat)
{
    const Index nt = chans.front().cols();
    Index rows = sat.rows();
    for (size_t j = 0; j < chans.size(); ++j)
        if (static_cast<Index>(j) != u)
            rows += chans[j].rows();
    CMatrix A(rows, nt);
    Index r = 0;
    for (size_t j = 0; j < chans.size(); ++j)
        if (static_cast<Index>(j) != u)
        {
            A.middleRows(r, chans[j].rows()) = chans[j];
            r += chans[j].rows();
        }
    if (sat.rows() > 0)
        A.bottomRows(sat.rows()) = sat;
    CMatrix P = CMatrix::Identity(nt, nt);
    if (rows > 0)
        P -= A.adjoint() * (A * A.adjoint()).inverse() * A;
    const CMatrix HP = chans[static_cast<size_t>(u)] * P;
    return (P * power_iteration(HP.adjoint() * HP)).normalized();
}

} // namespace oracle

#endif
