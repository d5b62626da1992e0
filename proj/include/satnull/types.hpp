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


#ifndef SATNULL_TYPES_HPP
#define SATNULL_TYPES_HPP

#include "numerics.hpp"

#include <vector>

namespace satnull
{

// F = f_rf * f_bb. Column u of f_bb is the digital precoder for UE u.
struct HybridPrecoder
{
    CMatrix f_rf; // N_T x N_RF, unit-modulus entries
    CMatrix f_bb; // N_RF x U

    CMatrix effective() const { return f_rf * f_bb; }

    Index n_tx() const { return f_rf.rows(); }
    Index n_rf() const { return f_rf.cols(); }
    Index n_ue() const { return f_bb.cols(); }

    double max_modulus_error() const
    {
        return f_rf.size() == 0 ? 0.0 : (f_rf.cwiseAbs().array() - 1.0).abs().maxCoeff();
    }

    double power() const { return effective().squaredNorm(); }
};

// One unit-norm receive combiner per UE.
struct CombinerSet
{
    std::vector<CVector> combiners;

    Index size() const { return static_cast<Index>(combiners.size()); }
    const CVector &operator[](Index u) const { return combiners[static_cast<size_t>(u)]; }
    CVector &operator[](Index u) { return combiners[static_cast<size_t>(u)]; }
};

} // namespace satnull

#endif
