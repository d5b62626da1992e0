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


#ifndef SATNULL_SATNULL_HPP
#define SATNULL_SATNULL_HPP

#include "baselines.hpp"
#include "campaign.hpp"
#include "channel.hpp"
#include "errors.hpp"
#include "gradcheck.hpp"
#include "metrics.hpp"
#include "numerics.hpp"
#include "precoder.hpp"
#include "scenario.hpp"
#include "types.hpp"

#endif
