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

#ifndef SATNULL_ERRORS_HPP
#define SATNULL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace satnull
{

// Two families: bad input/configuration (CLI exit code 1) and numerical
// failure on otherwise valid input (CLI exit code 2).

class config_error : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

class dimension_error : public config_error
{
public:
    using config_error::config_error;
};

class validation_error : public config_error
{
public:
    using config_error::config_error;
};

class numerical_error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// Input is well-formed but sits on a singular point (e.g. zero precoder).
class degenerate_input_error : public numerical_error
{
public:
    using numerical_error::numerical_error;
};

class infeasible_error : public numerical_error
{
public:
    using numerical_error::numerical_error;
};

class divergence_error : public numerical_error
{
public:
    divergence_error(const std::string &what, int iteration)
        : numerical_error(what), iteration_(iteration) {}

    int iteration() const noexcept { return iteration_; }

private:
    int iteration_;
};

} // namespace satnull

#endif
