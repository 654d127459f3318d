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
#include "ris/cli.hpp"
#include "ris/config.hpp"
#include "ris/experiments.hpp"

#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

namespace ris
{
    namespace
    {
        namespace fs = std::filesystem;
        using nlohmann::json;

        struct Common
        {
            std::string config_path;
            std::vector<std::string> overrides;
            std::string out_dir = ".";
            std::optional<std::uint64_t> seed;
            std::optional<unsigned> threads;
        };

        struct BasisFlags
        {
            std::optional<int> m_h, m_v;
            std::optional<double> d, d_h, d_v;
        };

        struct TrialFlags
        {
            std::optional<double> rho_dbm;
            std::uint64_t index = 0;
        };

        void add_common(CLI::App *sub, Common &c)
        {
            sub->add_option("--config", c.config_path, "JSON configuration file");
            sub->add_option("--set", c.overrides, "Override as key=value (repeatable)");
            sub->add_option("--out", c.out_dir, "Output directory");
            sub->add_option("--seed", c.seed, "Master seed");
            sub->add_option("--threads", c.threads, "Worker threads (0: all cores)");
        }

        template <typename T> std::string assign(const std::string &key, const T &v)
        {
            return key + "=" + json(v).dump();
        }

        ScenarioConfig resolve_config(const Common &c, const std::string &sub, const BasisFlags &b)
        {
            std::vector<std::string> ov = c.overrides;
            if (c.seed)
                ov.push_back(assign("experiment.master_seed", *c.seed));
            if (c.threads)
                ov.push_back(assign("experiment.workers", *c.threads));
            if (sub == "basis")
            {
                if (b.m_h)
                    ov.push_back(assign("ris.m_h", *b.m_h));
                if (b.m_v)
                    ov.push_back(assign("ris.m_v", *b.m_v));
                if (b.d)
                {
                    ov.push_back(assign("ris.d_h", *b.d));
                    ov.push_back(assign("ris.d_v", *b.d));
                }
                if (b.d_h)
                    ov.push_back(assign("ris.d_h", *b.d_h));
                if (b.d_v)
                    ov.push_back(assign("ris.d_v", *b.d_v));
            }
            return c.config_path.empty() ? load_config(ov) : load_config(c.config_path, ov);
        }

        void write_text(const fs::path &path, const std::string &text)
        {
            std::ofstream f(path, std::ios::binary | std::ios::trunc);
            if (!f)
                throw std::runtime_error("cannot write " + path.string());
            f << text;
            f.close();
            if (!f)
                throw std::runtime_error("write failed for " + path.string());
        }

        void emit(const fs::path &dir, const std::string &name, const std::string &csv, const std::string &sub,
                  const ScenarioConfig &config, std::ostream &out)
        {
            std::error_code ec;
            fs::create_directories(dir, ec);
            if (ec)
                throw std::runtime_error("cannot create output directory " + dir.string() + ": " + ec.message());
            json meta;
            meta["tool"] = tool_name;
            meta["version"] = tool_version;
            meta["subcommand"] = sub;
            meta["master_seed"] = config.master_seed;
            meta["config"] = config_to_json(config);
            meta["config_digest"] = config_digest(config);
            write_text(dir / (name + ".csv"), csv);
            write_text(dir / (name + ".meta.json"), meta.dump(2) + "\n");
            out << "wrote " << (dir / (name + ".csv")).string() << "\n";
        }

        void run(const std::string &sub, const ScenarioConfig &config, const TrialFlags &tf, const fs::path &dir,
                 std::ostream &out)
        {
            if (sub == "basis")
            {
                const auto basis = generate_basis(config.ris);
                emit(dir, "basis", basis_csv(basis), sub, config, out);
            }
            else if (sub == "dof-table")
            {
                emit(dir, "dof_table", dof_csv(run_dof_table(config.dof.sizes, config.dof.spacings)), sub, config,
                     out);
            }
            else if (sub == "eigen")
            {
                emit(dir, "eigen", eigen_csv(run_eigen_spectrum(config.eigen, config.master_seed, config.workers)),
                     sub, config, out);
            }
            else if (sub == "nmse-sweep")
            {
                emit(dir, "nmse_sweep", sweep_csv(run_nmse_sweep(config)), sub, config, out);
            }
            else if (sub == "snr-sweep")
            {
                emit(dir, "snr_sweep", sweep_csv(run_snr_sweep(config)), sub, config, out);
            }
            else if (sub == "trial")
            {
                const double rho = tf.rho_dbm.value_or(config.rho_dbm.front());
                const auto rec = run_trial(config, rho, tf.index);
                emit(dir, "trial", trial_csv({rec}), sub, config, out);
            }
        }
    }

    int parse_and_run(int argc, const char *const *argv, std::ostream &out, std::ostream &err)
    {
        CLI::App app{"RIS channel subspace simulator", tool_name};
        app.set_version_flag("--version", tool_version);
        app.require_subcommand(1);

        Common common;
        BasisFlags bf;
        TrialFlags tf;

        auto *basis = app.add_subcommand("basis", "Orthogonal steering basis as an angle table");
        add_common(basis, common);
        basis->add_option("--m-h", bf.m_h, "Horizontal element count");
        basis->add_option("--m-v", bf.m_v, "Vertical element count");
        basis->add_option("--d", bf.d, "Element spacing in wavelengths (both axes)");
        basis->add_option("--d-h", bf.d_h, "Horizontal spacing in wavelengths");
        basis->add_option("--d-v", bf.d_v, "Vertical spacing in wavelengths");

        add_common(app.add_subcommand("dof-table", "Subspace dimension over array sizes and spacings"), common);
        add_common(app.add_subcommand("eigen", "Sampled correlation eigenvalue spectrum"), common);
        add_common(app.add_subcommand("nmse-sweep", "NMSE versus pilot power"), common);
        add_common(app.add_subcommand("snr-sweep", "Data SNR versus pilot power"), common);
        auto *trial = app.add_subcommand("trial", "Single Monte Carlo trial");
        add_common(trial, common);
        trial->add_option("--rho-dbm", tf.rho_dbm, "Pilot power in dBm (default: first grid point)");
        trial->add_option("--index", tf.index, "Trial index");

        try
        {
            app.parse(argc, argv);
        }
        catch (const CLI::Success &e)
        {
            return app.exit(e, out, err);
        }
        catch (const CLI::ParseError &e)
        {
            app.exit(e, out, err);
            return 2;
        }

        const std::string sub = app.get_subcommands().front()->get_name();
        ScenarioConfig config;
        try
        {
            config = resolve_config(common, sub, bf);
        }
        catch (const ConfigError &e)
        {
            err << "config error [" << e.key() << "]: " << e.what() << "\n";
            return 2;
        }

        try
        {
            run(sub, config, tf, common.out_dir, out);
        }
        catch (const std::exception &e)
        {
            err << "error: " << e.what() << "\n";
            return 1;
        }
        return 0;
    }
}
