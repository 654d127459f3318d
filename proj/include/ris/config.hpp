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
#ifndef RIS_CONFIG_HPP
#define RIS_CONFIG_HPP

#include "ris/experiments.hpp"

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace ris
{
    // Raised for unreadable files, malformed documents, unknown keys and invalid values.
    // key() names the offending entry ("experiment.trials") or the file path.
    class ConfigError : public std::runtime_error
    {
    public:
        ConfigError(std::string key, const std::string &what);
        const std::string &key() const { return key_; }

    private:
        std::string key_;
    };

    // Sections: ris, bs, budget, user, deployment, channel, experiment, eigen, dof.
    // Ranges are two-element arrays [lo, hi].
    nlohmann::json config_to_json(const ScenarioConfig &config);
    // Absent keys keep their defaults; unknown keys are rejected; the result is validated
    ScenarioConfig config_from_json(const nlohmann::json &doc);

    // Overrides are "key=value" with key either "section.name" or a bare name that is
    // unique across sections; value is parsed as JSON, falling back to a plain string.
    void apply_override(nlohmann::json &doc, const std::string &assignment);

    // Missing path => defaults. A result sidecar (with a "config" member) is accepted too.
    ScenarioConfig load_config(const std::filesystem::path &path, const std::vector<std::string> &overrides = {});
    ScenarioConfig load_config(const std::vector<std::string> &overrides);

    // 16 hex digits of FNV-1a over the canonical JSON dump (worker count excluded)
    std::string config_digest(const ScenarioConfig &config);
}

#endif
