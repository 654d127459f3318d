// SPDX-License-Identifier: Apache-2.0
//
// ris-sim: reduced-subspace channel estimation for reconfigurable intelligent surfaces
// Copyright (C) 2026 The ris-sim Authors
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
#ifndef RIS_CLI_HPP
#define RIS_CLI_HPP

#include <iostream>

namespace ris
{
    inline constexpr const char *tool_name = "ris_sim";
    inline constexpr const char *tool_version = "1.0.0";

    // Exit codes: 0 success, 1 runtime failure, 2 configuration or usage error
    int parse_and_run(int argc, const char *const *argv, std::ostream &out = std::cout,
                      std::ostream &err = std::cerr);
}

#endif
