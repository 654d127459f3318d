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
#include "ris/experiments.hpp"
#include "ris/config.hpp"
#include "ris/parallel.hpp"
#include "ris/risconfig.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace ris
{
    namespace
    {
        // Child stream purposes within a trial
        enum Stream : std::uint64_t
        {
            stream_channel = 0,
            stream_rsls_noise = 1,
            stream_ls_noise = 2,
        };

        void require_range(const Range &r, const char *name, double min_allowed, double max_allowed)
        {
            if (!(r.lo <= r.hi))
                throw std::invalid_argument(std::string(name) + ": empty range");
            if (!(r.lo >= min_allowed) || !(r.hi <= max_allowed))
                throw std::invalid_argument(std::string(name) + ": range outside the admissible interval");
        }

        struct TrialChannel
        {
            UeChannel ue;
            CascadedChannel V;
        };

        TrialChannel draw_channel(const Scenario &s, std::uint64_t trial)
        {
            const auto &c = s.config();
            auto rng = Rng::derive(c.master_seed, {trial, stream_channel});
            const UserPosition user = sample_user(c, rng);
            CoverageSector sector{c.user.azimuth, c.user.elevation};
            TrialChannel out;
            out.ue = ue_channel(c.ris, c.budget, user, c.n_nlos, rng, sector);
            out.V = cascaded(s.bs_ris(), out.ue);
            return out;
        }

        TrialRecord evaluate(const Scenario &s, const TrialChannel &ch, double rho_dbm, std::uint64_t trial)
        {
            const auto &c = s.config();
            const auto &H = s.bs_ris();
            const double rho = dbm_to_mw(rho_dbm);
            const double pilot_sigma2 = c.pilot_noise ? s.noise_mw() : 0.0;
            const double data_rho = dbm_to_mw(c.data_power_dbm);
            const double data_sigma2 = s.noise_mw();
            const int M = c.ris.elements();

            TrialRecord r;
            r.trial = trial;
            r.rho_dbm = rho_dbm;

            // reduced-subspace LS with the deployment-known combiner w = u1
            const auto rs_plan = rsls_pilot_plan(s.basis_ptr(), s.phi_tx(), rho);
            auto rs_rng = Rng::derive(c.master_seed, {trial, stream_rsls_noise});
            const auto rs_rx = simulate_pilots(ch.V, rs_plan, H.u1, pilot_sigma2, rs_rng);
            const CVector v_hat = rsls_estimate(rs_rx, rs_plan);
            const CMatrix V_rsls = assemble_cascaded(H.u1, v_hat);

            // conventional LS over M pilots
            const auto ls_plan = ls_pilot_plan(M, rho);
            auto ls_rng = Rng::derive(c.master_seed, {trial, stream_ls_noise});
            const auto ls_rx = simulate_pilots(ch.V, ls_plan, std::nullopt, pilot_sigma2, ls_rng);
            const CMatrix V_ls = ls_estimate(ls_rx, ls_plan);

            r.nmse_rsls = squared_error_ratio(ch.V.matrix, V_rsls);
            r.nmse_ls = squared_error_ratio(ch.V.matrix, V_ls);

            const auto perfect = los_closed_form(H.u1, H.v1, ch.ue.vector);
            r.snr_perfect = snr(ch.V.matrix, perfect.phi, perfect.w, data_rho, data_sigma2);
            r.snr_rsls = snr(ch.V.matrix, config_from_estimate(v_hat), H.u1, data_rho, data_sigma2);

            // LS estimate treated as perfect CSI
            const auto alt = alt_optimize(V_ls, leading_left_singular_vector(V_ls), c.alt_max_iter, c.alt_tol);
            r.snr_ls = snr(ch.V.matrix, alt.config.phi, alt.config.w, data_rho, data_sigma2);
            return r;
        }
    }

    // ---------------------------------------------------------------- config

    void ScenarioConfig::validate() const
    {
        ris.validate();
        bs.validate();
        budget.validate();
        const double half = 0.5 * pi;
        require_range(user.azimuth, "user.azimuth", -half, half);
        require_range(user.elevation, "user.elevation", -half, half);
        require_range(user.distance_m, "user.distance_m", 0.0, 1e9);
        if (!(user.distance_m.lo > 0.0))
            throw std::invalid_argument("user.distance_m: distances must be positive");
        AnglePair{deployment.phi_aod, deployment.theta_aod}.validate();
        if (!(std::abs(deployment.phi_bs) <= half))
            throw std::invalid_argument("deployment.phi_bs: outside [-pi/2, pi/2]");
        if (!(deployment.d_br_m > 0.0))
            throw std::invalid_argument("deployment.d_br_m: distance must be positive");
        if (n_nlos < 0)
            throw std::invalid_argument("channel.n_nlos: must be nonnegative");
        if (trials < 1)
            throw std::invalid_argument("experiment.trials: must be at least 1");
        if (rho_dbm.empty())
            throw std::invalid_argument("experiment.rho_dbm: grid must not be empty");
        if (alt_max_iter < 1)
            throw std::invalid_argument("experiment.alt_max_iter: must be at least 1");
        if (!(alt_tol >= 0.0))
            throw std::invalid_argument("experiment.alt_tol: must be nonnegative");
        if (eigen.m_h < 1 || eigen.m_v < 1)
            throw std::invalid_argument("eigen: element counts must be positive");
        if (eigen.n_samples < 1)
            throw std::invalid_argument("eigen.n_samples: must be positive");
        for (double d : eigen.spacings)
            if (!(d > 0.0 && d <= 1.0))
                throw std::invalid_argument("eigen.spacings: spacings must lie in (0, 1]");
        require_range(eigen.azimuth, "eigen.azimuth", -half, half);
        require_range(eigen.elevation, "eigen.elevation", -half, half);
        for (int m : dof.sizes)
            if (m < 1)
                throw std::invalid_argument("dof.sizes: sizes must be positive");
        for (double d : dof.spacings)
            if (!(d > 0.0 && d <= 1.0))
                throw std::invalid_argument("dof.spacings: spacings must lie in (0, 1]");
    }

    Scenario::Scenario(ScenarioConfig config) : config_(std::move(config))
    {
        config_.validate();
        basis_ = std::make_shared<const BasisSet>(generate_basis(config_.ris));
        const auto &d = config_.deployment;
        bs_ris_ = bs_ris_los(config_.bs, config_.ris, d.phi_bs, d.phi_aod, d.theta_aod,
                             los_gain(config_.budget, d.d_br_m));
        phi_tx_ = bs_ris_.v1 * std::sqrt(static_cast<double>(config_.ris.elements()));
    }

    // ---------------------------------------------------------------- trials

    UserPosition sample_user(const ScenarioConfig &config, Rng &rng)
    {
        UserPosition u;
        u.azimuth = rng.uniform(config.user.azimuth);
        u.elevation = rng.uniform(config.user.elevation);
        u.distance_m = rng.uniform(config.user.distance_m);
        return u;
    }

    double squared_error_ratio(const CMatrix &V, const CMatrix &V_hat)
    {
        if (V.rows() != V_hat.rows() || V.cols() != V_hat.cols())
            throw std::invalid_argument("squared_error_ratio: dimension mismatch");
        const double ref = V.squaredNorm();
        if (!(ref > 0.0))
            throw std::invalid_argument("squared_error_ratio: reference channel has zero norm");
        return (V - V_hat).squaredNorm() / ref;
    }

    double nmse(const std::vector<CMatrix> &truth, const std::vector<CMatrix> &estimate)
    {
        if (truth.size() != estimate.size() || truth.empty())
            throw std::invalid_argument("nmse: need equally many (nonzero) truth and estimate matrices");
        Accumulator acc;
        for (std::size_t i = 0; i < truth.size(); ++i)
            acc.add(squared_error_ratio(truth[i], estimate[i]));
        return acc.mean();
    }

    TrialRecord run_trial(const Scenario &scenario, double rho_dbm, std::uint64_t trial_index)
    {
        return evaluate(scenario, draw_channel(scenario, trial_index), rho_dbm, trial_index);
    }

    TrialRecord run_trial(const ScenarioConfig &config, double rho_dbm, std::uint64_t trial_index)
    {
        return run_trial(Scenario(config), rho_dbm, trial_index);
    }

    std::vector<TrialRecord> run_trial_grid(const Scenario &scenario, std::uint64_t trial_index)
    {
        const auto ch = draw_channel(scenario, trial_index);
        std::vector<TrialRecord> out;
        out.reserve(scenario.config().rho_dbm.size());
        for (double rho : scenario.config().rho_dbm)
            out.push_back(evaluate(scenario, ch, rho, trial_index));
        return out;
    }

    std::vector<std::vector<TrialRecord>> run_all_trials(const Scenario &scenario)
    {
        const auto &c = scenario.config();
        std::vector<std::vector<TrialRecord>> records(static_cast<std::size_t>(c.trials));
        parallel_for(records.size(), resolve_workers(c.workers),
                     [&](std::size_t t) { records[t] = run_trial_grid(scenario, t); });
        return records;
    }

    // ---------------------------------------------------------------- sweeps

    std::vector<double> SweepResult::series(const std::string &method, const std::string &metric) const
    {
        std::vector<double> out;
        for (const auto &r : rows)
            if (r.method == method && r.metric == metric)
                out.push_back(r.mean);
        return out;
    }

    namespace
    {
        template <typename Pick>
        void summarize(const ScenarioConfig &config, const std::vector<std::vector<TrialRecord>> &records,
                       const std::vector<std::string> &methods, const std::string &metric, Pick pick,
                       SweepResult &out)
        {
            for (std::size_t k = 0; k < config.rho_dbm.size(); ++k)
                for (const auto &method : methods)
                {
                    Accumulator acc;
                    for (const auto &trial : records)
                        acc.add(pick(trial.at(k), method));
                    out.rows.push_back({config.rho_dbm[k], method, metric, acc.mean(), acc.stddev(), acc.count()});
                }
        }
    }

    SweepResult summarize_nmse(const ScenarioConfig &config, const std::vector<std::vector<TrialRecord>> &records)
    {
        SweepResult out;
        out.master_seed = config.master_seed;
        out.config_digest = config_digest(config);
        summarize(config, records, {"rsls", "ls"}, "nmse",
                  [](const TrialRecord &r, const std::string &m) { return m == "rsls" ? r.nmse_rsls : r.nmse_ls; },
                  out);
        return out;
    }

    SweepResult summarize_snr(const ScenarioConfig &config, const std::vector<std::vector<TrialRecord>> &records)
    {
        SweepResult out;
        out.master_seed = config.master_seed;
        out.config_digest = config_digest(config);
        auto pick = [](const TrialRecord &r, const std::string &m)
        { return m == "perfect" ? r.snr_perfect : (m == "rsls" ? r.snr_rsls : r.snr_ls); };
        for (std::size_t k = 0; k < config.rho_dbm.size(); ++k)
            for (const std::string method : {"perfect", "rsls", "ls"})
            {
                Accumulator lin, db;
                for (const auto &trial : records)
                {
                    const double x = pick(trial.at(k), method);
                    lin.add(x);
                    db.add(linear_to_db(x));
                }
                const double rho = config.rho_dbm[k];
                out.rows.push_back({rho, method, "snr", lin.mean(), lin.stddev(), lin.count()});
                // average SNR in dB; spread of the per-trial dB values
                out.rows.push_back({rho, method, "snr_db", linear_to_db(lin.mean()), db.stddev(), db.count()});
            }
        return out;
    }

    SweepResult run_nmse_sweep(const ScenarioConfig &config)
    {
        const Scenario s(config);
        return summarize_nmse(s.config(), run_all_trials(s));
    }

    SweepResult run_snr_sweep(const ScenarioConfig &config)
    {
        const Scenario s(config);
        return summarize_snr(s.config(), run_all_trials(s));
    }

    std::vector<DofRow> run_dof_table(const std::vector<int> &sizes, const std::vector<double> &spacings)
    {
        std::vector<DofRow> rows;
        for (int m : sizes)
            for (double d : spacings)
            {
                const ArrayGeometry g{m, m, d, d};
                const auto basis = generate_basis(g);
                const double M = g.elements();
                rows.push_back({m, d, basis.eta(), basis.eta() / M, dof_approx(g) / M});
            }
        return rows;
    }

    std::vector<EigenVariant> run_eigen_spectrum(const EigenConfig &config, std::uint64_t seed, unsigned workers)
    {
        std::vector<EigenVariant> out;
        for (double d : config.spacings)
        {
            const ArrayGeometry g{config.m_h, config.m_v, d, d};
            EigenVariant v;
            v.spacing = d;
            v.eta = generate_basis(g).eta();
            v.spectrum = correlation_spectrum(g, config.azimuth, config.elevation, config.n_samples, seed, workers);
            v.captured = v.spectrum.captured_fraction(static_cast<std::size_t>(v.eta));
            out.push_back(std::move(v));
        }
        return out;
    }

    // ---------------------------------------------------------------- accumulation

    void Accumulator::add_to(double &sum, double &comp, double x)
    {
        const double t = sum + x;
        if (std::abs(sum) >= std::abs(x))
            comp += (sum - t) + x;
        else
            comp += (x - t) + sum;
        sum = t;
    }

    void Accumulator::add(double x)
    {
        ++n_;
        add_to(sum_, comp_, x);
        add_to(sq_, sq_comp_, x * x);
    }

    double Accumulator::mean() const
    {
        return n_ ? (sum_ + comp_) / n_ : 0.0;
    }

    double Accumulator::stddev() const
    {
        if (n_ == 0)
            return 0.0;
        const double m = mean();
        const double var = (sq_ + sq_comp_) / n_ - m * m;
        return var > 0.0 ? std::sqrt(var) : 0.0;
    }

    // ---------------------------------------------------------------- CSV

    std::string format_double(double x)
    {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", x);
        return buf;
    }

    std::string sweep_csv(const SweepResult &r)
    {
        std::ostringstream os;
        os << "rho_dbm,method,metric,mean,std,trials\n";
        for (const auto &row : r.rows)
            os << format_double(row.rho_dbm) << ',' << row.method << ',' << row.metric << ','
               << format_double(row.mean) << ',' << format_double(row.std) << ',' << row.trials << '\n';
        return os.str();
    }

    std::string dof_csv(const std::vector<DofRow> &rows)
    {
        std::ostringstream os;
        os << "m,d,eta,eta_over_m,dof_approx_over_m\n";
        for (const auto &r : rows)
            os << r.m << ',' << format_double(r.d) << ',' << r.eta << ',' << format_double(r.eta_over_m) << ','
               << format_double(r.dof_over_m) << '\n';
        return os.str();
    }

    std::string eigen_csv(const std::vector<EigenVariant> &variants)
    {
        std::ostringstream os;
        os << "spacing,index,eigenvalue,eta\n";
        for (const auto &v : variants)
            for (std::size_t i = 0; i < v.spectrum.eigenvalues.size(); ++i)
                os << format_double(v.spacing) << ',' << (i + 1) << ',' << format_double(v.spectrum.eigenvalues[i])
                   << ',' << v.eta << '\n';
        return os.str();
    }

    std::string trial_csv(const std::vector<TrialRecord> &records)
    {
        std::ostringstream os;
        os << "trial,rho_dbm,nmse_rsls,nmse_ls,snr_perfect,snr_rsls,snr_ls\n";
        for (const auto &r : records)
            os << r.trial << ',' << format_double(r.rho_dbm) << ',' << format_double(r.nmse_rsls) << ','
               << format_double(r.nmse_ls) << ',' << format_double(r.snr_perfect) << ','
               << format_double(r.snr_rsls) << ',' << format_double(r.snr_ls) << '\n';
        return os.str();
    }

    std::string basis_csv(const BasisSet &basis)
    {
        std::ostringstream os;
        os << "index,azimuth_rad,elevation_rad,k,l\n";
        int idx = 1;
        for (const auto &e : basis.entries())
            os << idx++ << ',' << format_double(e.angle.azimuth) << ',' << format_double(e.angle.elevation) << ','
               << e.k << ',' << e.l << '\n';
        return os.str();
    }
}
