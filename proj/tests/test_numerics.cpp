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
using namespace std::complex_literals;

TEST(HermitianEigMax, DiagonalCase)
{
    CMatrix A(2, 2);
    A << 2.0, 0.0, 0.0, 1.0;
    const EigPair e = hermitian_eig_max(A);
    EXPECT_NEAR(e.value, 2.0, 1e-14);
    EXPECT_NEAR(std::abs(e.vector(0) - 1.0), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(e.vector(1)), 0.0, 1e-14);
}

TEST(HermitianEigMax, IdentityTieBreakPicksFirstBasisVector)
{
    const EigPair e = hermitian_eig_max(CMatrix::Identity(3, 3));
    EXPECT_NEAR(e.value, 1.0, 1e-14);
    CVector e0 = CVector::Zero(3);
    e0(0) = 1.0;
    EXPECT_LT((e.vector - e0).norm(), 1e-12);
}

TEST(HermitianEigMax, TwoByTwoComplex)
{
    CMatrix A(2, 2);
    A << 1.0, 1i, -1i, 1.0;
    const EigPair e = hermitian_eig_max(A);
    EXPECT_NEAR(e.value, 2.0, 1e-12);
    // Eigenvectors of the value 2 are multiples of [1, -j]; the phase rule
    // makes the first entry (tie, lowest index) real and positive.
    CVector ref(2);
    ref << 1.0 / std::sqrt(2.0), -1i / std::sqrt(2.0);
    EXPECT_LT((e.vector - ref).norm(), 1e-12);
}

TEST(HermitianEigMax, Errors)
{
    EXPECT_THROW(hermitian_eig_max(CMatrix::Zero(2, 3)), dimension_error);
    CMatrix A(2, 2);
    A << 1.0, 1.0, 0.0, 1.0;
    EXPECT_THROW(hermitian_eig_max(A), validation_error);
}

TEST(HermitianEigMax, RandomResidual)
{
    std::mt19937_64 rng(11);
    for (Index n : {1, 2, 5, 9, 16})
        for (int k = 0; k < 10; ++k)
        {
            const CMatrix A = oracle::random_hermitian(rng, n);
            const EigPair e = hermitian_eig_max(A);
            EXPECT_NEAR(e.vector.norm(), 1.0, 1e-12);
            EXPECT_LE((A * e.vector - e.value * e.vector).norm(), 1e-8 * A.norm());
            // Nothing larger than the reported value.
            Eigen::SelfAdjointEigenSolver<CMatrix> es(A);
            EXPECT_NEAR(e.value, es.eigenvalues().maxCoeff(), 1e-10 * A.norm());
        }
}

TEST(HermitianEigMax, ScaleInvariantTieHandling)
{
    // Tiny but well-separated eigenvalues must not be treated as ties.
    CMatrix A(2, 2);
    A << 1e-14, 0.0, 0.0, 3e-14;
    const EigPair e = hermitian_eig_max(A);
    EXPECT_NEAR(std::abs(e.vector(1)), 1.0, 1e-12);
}

TEST(HermitianEigMax, PhaseConvention)
{
    std::mt19937_64 rng(5);
    const CMatrix A = oracle::random_hermitian(rng, 6);
    const CVector v = hermitian_eig_max(A).vector;
    Index k = 0;
    v.cwiseAbs().maxCoeff(&k);
    EXPECT_GE(v(k).real(), 0.0);
    EXPECT_EQ(v(k).imag(), 0.0);
}

TEST(NullSpace, CoordinateCase)
{
    CMatrix A(1, 2);
    A << 1.0, 0.0;
    const CMatrix N = null_space(A);
    ASSERT_EQ(N.cols(), 1);
    EXPECT_NEAR(std::abs(N(0, 0)), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(N(1, 0)), 1.0, 1e-14);
}

TEST(NullSpace, FullRankIsEmpty)
{
    const CMatrix N = null_space(CMatrix::Identity(2, 2));
    EXPECT_EQ(N.rows(), 2);
    EXPECT_EQ(N.cols(), 0);
}

TEST(NullSpace, Symmetric)
{
    CMatrix A(1, 2);
    A << 1.0, 1.0;
    const CMatrix N = null_space(A);
    ASSERT_EQ(N.cols(), 1);
    EXPECT_NEAR(std::abs(N(0, 0) + N(1, 0)), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(N(0, 0)), 1.0 / std::sqrt(2.0), 1e-14);
}

TEST(NullSpace, ZeroRowsGivesIdentity)
{
    const CMatrix N = null_space(CMatrix(0, 3));
    EXPECT_TRUE(N.isApprox(CMatrix::Identity(3, 3)));
}

TEST(NullSpace, RejectsNonPositiveTolerance)
{
    EXPECT_THROW(null_space(CMatrix::Identity(2, 2), 0.0), validation_error);
}

TEST(NullSpace, RankDeficientProducts)
{
    std::mt19937_64 rng(3);
    for (int k = 0; k < 30; ++k)
    {
        const Index r = 1 + k % 4;
        const CMatrix A = oracle::random_cn(rng, 7, r) * oracle::random_cn(rng, r, 10);
        const CMatrix N = null_space(A);
        EXPECT_EQ(N.cols(), 10 - r);
        EXPECT_LE((A * N).norm(), 1e-8 * A.norm());
        EXPECT_LT((N.adjoint() * N - CMatrix::Identity(N.cols(), N.cols())).cwiseAbs().maxCoeff(), 1e-10);
    }
}

TEST(LeastSquares, Examples)
{
    std::mt19937_64 rng(2);
    const CMatrix B = oracle::random_cn(rng, 3, 2);
    EXPECT_LT((least_squares(CMatrix::Identity(3, 3), B) - B).norm(), 1e-14);

    const CMatrix twoI = 2.0 * CMatrix::Identity(2, 2);
    EXPECT_LT((least_squares(twoI, CMatrix::Identity(2, 2)) - 0.5 * CMatrix::Identity(2, 2)).norm(), 1e-14);

    CMatrix A(2, 1), b(2, 1);
    A << 1.0, 1.0;
    b << 1.0, 3.0;
    EXPECT_NEAR(std::abs(least_squares(A, b)(0, 0) - 2.0), 0.0, 1e-14);
}

TEST(LeastSquares, DimensionMismatch)
{
    EXPECT_THROW(least_squares(CMatrix::Identity(3, 3), CMatrix::Zero(2, 1)), dimension_error);
}

TEST(LeastSquares, ResidualOrthogonalAndMinimumNorm)
{
    std::mt19937_64 rng(9);
    for (int k = 0; k < 20; ++k)
    {
        const CMatrix A = oracle::random_cn(rng, 8, 5);
        const CMatrix B = oracle::random_cn(rng, 8, 3);
        const CMatrix X = least_squares(A, B);
        EXPECT_LE((A.adjoint() * (A * X - B)).norm(), 1e-8 * A.norm() * B.norm());
    }
    // Rank-deficient: the minimum-norm solution lies in the row space.
    const CMatrix A = oracle::random_cn(rng, 6, 2) * oracle::random_cn(rng, 2, 5);
    const CMatrix B = oracle::random_cn(rng, 6, 1);
    const CMatrix X = least_squares(A, B);
    EXPECT_LE((null_space(A).adjoint() * X).norm(), 1e-8 * X.norm());
}

TEST(FixPhase, LargestEntryRealNonnegative)
{
    CVector v(3);
    v << 0.1, -2.0i, 0.5;
    fix_phase(v);
    EXPECT_NEAR(v(1).real(), 2.0, 1e-15);
    EXPECT_EQ(v(1).imag(), 0.0);
    CVector z = CVector::Zero(2);
    fix_phase(z);
    EXPECT_EQ(z.norm(), 0.0);
}
