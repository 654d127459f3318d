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
#include "ris/config.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>

namespace ris
{
    using nlohmann::json;

    ConfigError::ConfigError(std::string key, const std::string &what)
        : std::runtime_error(key.empty() ? what : key + ": " + what), key_(std::move(key))
    {
    }

    namespace
    {
        json range_json(const Range &r) { return json::array({r.lo, r.hi}); }

        const std::map<std::string, std::vector<std::string>> &schema()
        {
            static const std::map<std::string, std::vector<std::string>> s{
                {"ris", {"m_h", "m_v", "d_h", "d_v"}},
                {"bs", {"n", "d"}},
                {"budget", {"carrier_hz", "noise_dbm", "bandwidth_hz"}},
                {"user", {"azimuth", "elevation", "distance_m"}},
                {"deployment", {"phi_bs", "phi_aod", "theta_aod", "d_br_m"}},
                {"channel", {"n_nlos"}},
                {"experiment",
                 {"trials", "rho_dbm", "master_seed", "data_power_dbm", "pilot_noise", "workers", "alt_max_iter",
                  "alt_tol"}},
                {"eigen", {"m_h", "m_v", "spacings", "azimuth", "elevation", "n_samples"}},
                {"dof", {"sizes", "spacings"}},
            };
            return s;
        }

        // Reads doc[section][name] into out when present
        class Reader
        {
        public:
            explicit Reader(const json &doc) : doc_(doc) {}

            template <typename T> void get(const std::string &section, const std::string &name, T &out) const
            {
                const json *v = find(section, name);
                if (!v)
                    return;
                try
                {
                    out = v->get<T>();
                }
                catch (const json::exception &e)
                {
                    throw ConfigError(section + "." + name, std::string("wrong type (") + e.what() + ")");
                }
            }

            void range(const std::string &section, const std::string &name, Range &out) const
            {
                const json *v = find(section, name);
                if (!v)
                    return;
                if (!v->is_array() || v->size() != 2 || !(*v)[0].is_number() || !(*v)[1].is_number())
                    throw ConfigError(section + "." + name, "expected a two-element numeric array [lo, hi]");
                out = Range{(*v)[0].get<double>(), (*v)[1].get<double>()};
            }

        private:
            const json *find(const std::string &section, const std::string &name) const
            {
                auto s = doc_.find(section);
                if (s == doc_.end())
                    return nullptr;
                auto v = s->find(name);
                return v == s->end() ? nullptr : &*v;
            }
            const json &doc_;
        };

        void check_keys(const json &doc)
        {
            if (!doc.is_object())
                throw ConfigError("", "configuration must be a JSON object");
            for (const auto &[section, body] : doc.items())
            {
                auto s = schema().find(section);
                if (s == schema().end())
                    throw ConfigError(section, "unknown section");
                if (!body.is_object())
                    throw ConfigError(section, "section must be a JSON object");
                for (const auto &[name, value] : body.items())
                {
                    (void)value;
                    if (std::find(s->second.begin(), s->second.end(), name) == s->second.end())
                        throw ConfigError(section + "." + name, "unknown key");
                }
            }
        }

        // Maps a validation message to the config key it concerns
        std::string key_from_message(const std::string &msg)
        {
            static const std::map<std::string, std::string> owners{
                {"ArrayGeometry", "ris"}, {"UlaGeometry", "bs"}, {"LinkBudget", "budget"}, {"AnglePair", "deployment"}};
            const auto colon = msg.find(':');
            if (colon == std::string::npos)
                return "";
            const std::string head = msg.substr(0, colon);
            auto it = owners.find(head);
            return it == owners.end() ? head : it->second;
        }

        std::uint64_t fnv1a(const std::string &s)
        {
            std::uint64_t h = 0xcbf29ce484222325ULL;
            for (unsigned char c : s)
            {
                h ^= c;
                h *= 0x100000001b3ULL;
            }
            return h;
        }
    }

    json config_to_json(const ScenarioConfig &c)
    {
        json j;
        j["ris"] = {{"m_h", c.ris.m_h}, {"m_v", c.ris.m_v}, {"d_h", c.ris.d_h}, {"d_v", c.ris.d_v}};
        j["bs"] = {{"n", c.bs.n}, {"d", c.bs.d}};
        j["budget"] = {{"carrier_hz", c.budget.carrier_hz},
                       {"noise_dbm", c.budget.noise_dbm},
                       {"bandwidth_hz", c.budget.bandwidth_hz}};
        j["user"] = {{"azimuth", range_json(c.user.azimuth)},
                     {"elevation", range_json(c.user.elevation)},
                     {"distance_m", range_json(c.user.distance_m)}};
        j["deployment"] = {{"phi_bs", c.deployment.phi_bs},
                           {"phi_aod", c.deployment.phi_aod},
                           {"theta_aod", c.deployment.theta_aod},
                           {"d_br_m", c.deployment.d_br_m}};
        j["channel"] = {{"n_nlos", c.n_nlos}};
        j["experiment"] = {{"trials", c.trials},
                           {"rho_dbm", c.rho_dbm},
                           {"master_seed", c.master_seed},
                           {"data_power_dbm", c.data_power_dbm},
                           {"pilot_noise", c.pilot_noise},
                           {"workers", c.workers},
                           {"alt_max_iter", c.alt_max_iter},
                           {"alt_tol", c.alt_tol}};
        j["eigen"] = {{"m_h", c.eigen.m_h},
                      {"m_v", c.eigen.m_v},
                      {"spacings", c.eigen.spacings},
                      {"azimuth", range_json(c.eigen.azimuth)},
                      {"elevation", range_json(c.eigen.elevation)},
                      {"n_samples", c.eigen.n_samples}};
        j["dof"] = {{"sizes", c.dof.sizes}, {"spacings", c.dof.spacings}};
        return j;
    }

    ScenarioConfig config_from_json(const json &doc)
    {
        check_keys(doc);
        const Reader r(doc);
        ScenarioConfig c;
        r.get("ris", "m_h", c.ris.m_h);
        r.get("ris", "m_v", c.ris.m_v);
        r.get("ris", "d_h", c.ris.d_h);
        r.get("ris", "d_v", c.ris.d_v);
        r.get("bs", "n", c.bs.n);
        r.get("bs", "d", c.bs.d);
        r.get("budget", "carrier_hz", c.budget.carrier_hz);
        r.get("budget", "noise_dbm", c.budget.noise_dbm);
        r.get("budget", "bandwidth_hz", c.budget.bandwidth_hz);
        r.range("user", "azimuth", c.user.azimuth);
        r.range("user", "elevation", c.user.elevation);
        r.range("user", "distance_m", c.user.distance_m);
        r.get("deployment", "phi_bs", c.deployment.phi_bs);
        r.get("deployment", "phi_aod", c.deployment.phi_aod);
        r.get("deployment", "theta_aod", c.deployment.theta_aod);
        r.get("deployment", "d_br_m", c.deployment.d_br_m);
        r.get("channel", "n_nlos", c.n_nlos);
        r.get("experiment", "trials", c.trials);
        r.get("experiment", "rho_dbm", c.rho_dbm);
        r.get("experiment", "master_seed", c.master_seed);
        r.get("experiment", "data_power_dbm", c.data_power_dbm);
        r.get("experiment", "pilot_noise", c.pilot_noise);
        r.get("experiment", "workers", c.workers);
        r.get("experiment", "alt_max_iter", c.alt_max_iter);
        r.get("experiment", "alt_tol", c.alt_tol);
        r.get("eigen", "m_h", c.eigen.m_h);
        r.get("eigen", "m_v", c.eigen.m_v);
        r.get("eigen", "spacings", c.eigen.spacings);
        r.range("eigen", "azimuth", c.eigen.azimuth);
        r.range("eigen", "elevation", c.eigen.elevation);
        r.get("eigen", "n_samples", c.eigen.n_samples);
        r.get("dof", "sizes", c.dof.sizes);
        r.get("dof", "spacings", c.dof.spacings);
        try
        {
            c.validate();
        }
        catch (const std::invalid_argument &e)
        {
            const std::string msg = e.what();
            const std::string key = key_from_message(msg);
            const auto colon = msg.find(':');
            const std::string rest = colon == std::string::npos ? msg : msg.substr(msg.find_first_not_of(' ', colon + 1));
            throw ConfigError(key, rest);
        }
        return c;
    }

    void apply_override(json &doc, const std::string &assignment)
    {
        const auto eq = assignment.find('=');
        if (eq == std::string::npos || eq == 0)
            throw ConfigError(assignment, "override must have the form key=value");
        const std::string key = assignment.substr(0, eq);
        const std::string text = assignment.substr(eq + 1);

        std::string section, name;
        const auto dot = key.find('.');
        if (dot != std::string::npos)
        {
            section = key.substr(0, dot);
            name = key.substr(dot + 1);
            auto s = schema().find(section);
            if (s == schema().end() || std::find(s->second.begin(), s->second.end(), name) == s->second.end())
                throw ConfigError(key, "unknown key");
        }
        else
        {
            for (const auto &[sec, names] : schema())
                if (std::find(names.begin(), names.end(), key) != names.end())
                {
                    if (!section.empty())
                        throw ConfigError(key, "ambiguous key; qualify it as " + section + "." + key + " or " +
                                                   sec + "." + key);
                    section = sec;
                }
            if (section.empty())
                throw ConfigError(key, "unknown key");
            name = key;
        }

        json value = json::parse(text, nullptr, false);
        if (value.is_discarded())
            value = text;
        if (!doc.is_object())
            doc = json::object();
        doc[section][name] = std::move(value);
    }

    namespace
    {
        ScenarioConfig resolve(json doc, const std::vector<std::string> &overrides)
        {
            for (const auto &o : overrides)
                apply_override(doc, o);
            return config_from_json(doc);
        }
    }

    ScenarioConfig load_config(const std::filesystem::path &path, const std::vector<std::string> &overrides)
    {
        std::ifstream in(path);
        if (!in)
            throw ConfigError(path.string(), "cannot open configuration file");
        json doc = json::parse(in, nullptr, false);
        if (doc.is_discarded())
            throw ConfigError(path.string(), "malformed JSON");
        if (doc.is_object() && doc.contains("config") && doc.contains("tool"))
            doc = doc["config"];
        return resolve(std::move(doc), overrides);
    }

    ScenarioConfig load_config(const std::vector<std::string> &overrides)
    {
        return resolve(json::object(), overrides);
    }

    std::string config_digest(const ScenarioConfig &config)
    {
        // worker count never changes results
        json j = config_to_json(config);
        j["experiment"].erase("workers");
        char buf[17];
        std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(j.dump())));
        return buf;
    }
}
