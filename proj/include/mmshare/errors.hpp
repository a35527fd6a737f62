// SPDX-License-Identifier: Apache-2.0
//
// mmshare - coverage analysis of mmWave networks with shared infrastructure and spectrum
// Copyright (C) 2026 The mmshare authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace mmshare
{
    // Invalid user configuration (bad flags, malformed config file, inconsistent scenario).
    class config_error : public std::invalid_argument
    {
    public:
        using std::invalid_argument::invalid_argument;
    };

    // Malformed or unusable input data (deployment CSV rows, empty networks).
    class data_error : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    // Quadrature that does not converge, root brackets that do not straddle, redraw budgets exhausted.
    class numerical_error : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    // The analytic engine only handles Rayleigh fading; other fading models must be simulated.
    class unsupported_fading : public config_error
    {
    public:
        using config_error::config_error;
    };
}
