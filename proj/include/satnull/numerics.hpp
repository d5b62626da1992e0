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

#ifndef SATNULL_NUMERICS_HPP
#define SATNULL_NUMERICS_HPP

#include "errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

namespace satnull
{

using cdouble = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;
using Index = Eigen::Index;

struct EigPair
{
    double value;
    CVector vector;
};

namespace detail
{

inline std::string shape_str(const CMatrix &A)
{
    return std::to_string(A.rows()) + "x" + std::to_string(A.cols());
}

} // namespace detail

inline bool all_finite(const CMatrix &A)
{
    return A.allFinite();
}

// Rotates v so that its largest-magnitude entry is real and nonnegative.
// Entries within a relative 1e-12 of the maximum count as ties; the lowest
// index wins.
inline void fix_phase(Eigen::Ref<CVector> v)
{
    if (v.size() == 0)
        return;
    const double peak = v.cwiseAbs().maxCoeff();
    if (peak == 0.0)
        return;
    Index pick = 0;
    for (Index i = 0; i < v.size(); ++i)
        if (std::abs(v(i)) >= peak * (1.0 - 1e-12))
        {
            pick = i;
            break;
        }
    const cdouble rot = std::conj(v(pick)) / std::abs(v(pick));
    v *= rot;
    v(pick) = cdouble(v(pick).real(), 0.0);
}

// Largest eigenvalue of a Hermitian matrix and a unit eigenvector.
//
// Both the Hermitian check and the eigenvalue tie test are relative to the
// matrix scale.
//
// Repeated top eigenvalues are resolved by projecting the standard basis
// vectors e_0, e_1, ... onto the top eigenspace and keeping the first
// projection that does not vanish, so the identity yields e_0.
inline EigPair hermitian_eig_max(const CMatrix &A)
{
    if (A.rows() != A.cols() || A.rows() == 0)
        throw dimension_error("hermitian_eig_max: expected non-empty square matrix, got " + detail::shape_str(A));
    if (!A.allFinite())
        throw validation_error("hermitian_eig_max: non-finite entries");

    const double scale = A.cwiseAbs().maxCoeff();
    const double dev = (A - A.adjoint()).cwiseAbs().maxCoeff();
    if (dev > 1e-10 * scale)
        throw validation_error("hermitian_eig_max: matrix is not Hermitian (deviation " + std::to_string(dev) + ")");

    const CMatrix H = 0.5 * (A + A.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> es(H);
    if (es.info() != Eigen::Success)
        throw numerical_error("hermitian_eig_max: eigensolver did not converge");

    const RVector &ev = es.eigenvalues(); // ascending
    const Index n = ev.size();
    const double top = ev(n - 1);
    const double gap_tol = 1e-10 * std::max(std::abs(top), std::abs(ev(0)));

    Index first = n - 1;
    while (first > 0 && top - ev(first - 1) <= gap_tol)
        --first;

    CVector v;
    if (first == n - 1)
        v = es.eigenvectors().col(n - 1);
    else
    {
        const CMatrix Q = es.eigenvectors().rightCols(n - first);
        for (Index k = 0; k < n; ++k)
        {
            // Q Q^H e_k
            CVector p = Q * Q.row(k).adjoint();
            if (p.norm() > 1e-6)
            {
                v = p;
                break;
            }
        }
    }
    v.normalize();
    fix_phase(v);
    return {top, v};
}

// Default relative rank tolerance used by null_space.
inline double default_rank_tol(const CMatrix &A)
{
    return 1e-12 * static_cast<double>(std::max<Index>({A.rows(), A.cols(), 1}));
}

// Orthonormal basis of the right null space of A.
//
// Singular values at or below tol * sigma_max count as zero. Each basis
// column carries the fix_phase convention. A zero or 0-row matrix returns
// the identity; a full-column-rank matrix returns a cols x 0 matrix.
inline CMatrix null_space(const CMatrix &A, double tol)
{
    if (!(tol > 0.0))
        throw validation_error("null_space: tolerance must be positive");
    const Index n = A.cols();
    if (A.rows() == 0)
        return CMatrix::Identity(n, n);
    if (!A.allFinite())
        throw validation_error("null_space: non-finite entries");

    Eigen::JacobiSVD<CMatrix> svd(A, Eigen::ComputeFullV);
    const RVector &sv = svd.singularValues();
    const double smax = sv.size() > 0 ? sv(0) : 0.0;
    Index rank = 0;
    if (smax > 0.0)
        for (Index i = 0; i < sv.size(); ++i)
            if (sv(i) > tol * smax)
                ++rank;

    CMatrix N = svd.matrixV().rightCols(n - rank);
    for (Index c = 0; c < N.cols(); ++c)
        fix_phase(N.col(c));
    return N;
}

inline CMatrix null_space(const CMatrix &A)
{
    return null_space(A, default_rank_tol(A));
}

// Minimum-Frobenius-norm minimizer of ||A X - B||_F.
inline CMatrix least_squares(const CMatrix &A, const CMatrix &B)
{
    if (A.rows() != B.rows())
        throw dimension_error("least_squares: row mismatch " + detail::shape_str(A) + " vs " + detail::shape_str(B));
    if (!A.allFinite() || !B.allFinite())
        throw validation_error("least_squares: non-finite entries");
    if (A.cols() == 0)
        return CMatrix(0, B.cols());
    Eigen::CompleteOrthogonalDecomposition<CMatrix> cod(A);
    return cod.solve(B);
}

} // namespace satnull

#endif
