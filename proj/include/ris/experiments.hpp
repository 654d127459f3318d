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
#ifndef RIS_EXPERIMENTS_HPP
#define RIS_EXPERIMENTS_HPP

#include "ris/channel.hpp"
#include "ris/estimator.hpp"
#include "ris/subspace.hpp"

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace ris
{
    struct DeploymentConfig
    {
        double phi_bs = 0.0;
        double phi_aod = pi / 6.0;
        double theta_aod = 0.0;
        double d_br_m = 10.0;
    };

    struct UserRegion
    {
        Range azimuth{-pi / 3.0, pi / 3.0};
        Range elevation{-pi / 2.0, 0.0};
        Range distance_m{30.0, 50.0};
    };

    struct EigenConfig
    {
        int m_h = 32;
        int m_v = 32;
        std::vector<double> spacings{0.25, 0.125};
        Range azimuth{-pi / 3.0, pi / 3.0};
        Range elevation{-pi / 2.0, pi / 2.0};
        std::int64_t n_samples = 20000;
    };

    struct DofConfig
    {
        std::vector<int> sizes{8, 16, 32, 64, 128};
        std::vector<double> spacings{0.125, 0.25, 0.5};
    };

    // Defaults reproduce the full-scale scenario (128 x 128 RIS, 128 BS antennas,
    // 500 trials). configs/desk.json holds the 32 x 32 / N = 32 / 100-trial profile.
    struct ScenarioConfig
    {
        ArrayGeometry ris{128, 128, 0.25, 0.25};
        UlaGeometry bs{128, 0.5};
        LinkBudget budget;
        UserRegion user;
        DeploymentConfig deployment;
        int n_nlos = 3;

        int trials = 500;
        std::vector<double> rho_dbm{-10, -5, 0, 5, 10, 15, 20, 25, 30, 35, 40};
        std::uint64_t master_seed = 20230611;
        double data_power_dbm = 20.0; // transmit power for the data-phase SNR
        bool pilot_noise = true;      // false switches off pilot-phase noise
        unsigned workers = 0;         // 0: hardware concurrency (capped by RIS_SIM_THREADS)
        int alt_max_iter = 50;
        double alt_tol = 1e-8;

        EigenConfig eigen;
        DofConfig dof;

        void validate() const; // throws std::invalid_argument
    };

    // Everything that stays fixed across trials: the basis, the deployed BS-RIS link
    // and the combiner/precoder known from the deployment geometry.
    class Scenario
    {
    public:
        explicit Scenario(ScenarioConfig config);

        const ScenarioConfig &config() const { return config_; }
        const BasisSet &basis() const { return *basis_; }
        std::shared_ptr<const BasisSet> basis_ptr() const { return basis_; }
        const BsRisChannel &bs_ris() const { return bs_ris_; }
        const CVector &phi_tx() const { return phi_tx_; } // sqrt(M) v1
        double noise_mw() const { return config_.budget.noise_mw(); }

    private:
        ScenarioConfig config_;
        std::shared_ptr<const BasisSet> basis_;
        BsRisChannel bs_ris_;
        CVector phi_tx_;
    };

    UserPosition sample_user(const ScenarioConfig &config, Rng &rng);

    // ||V - V_hat||_F^2 / ||V||_F^2; throws std::invalid_argument when ||V||_F = 0
    double squared_error_ratio(const CMatrix &V, const CMatrix &V_hat);
    // Mean of squared_error_ratio over the pairs
    double nmse(const std::vector<CMatrix> &truth, const std::vector<CMatrix> &estimate);

    struct TrialRecord
    {
        std::uint64_t trial = 0;
        double rho_dbm = 0.0;
        double nmse_rsls = 0.0;
        double nmse_ls = 0.0;
        double snr_perfect = 0.0; // linear
        double snr_rsls = 0.0;
        double snr_ls = 0.0;
    };

    // One full pipeline run; a pure function of (config, rho_dbm, trial_index). The
    // user, channel and pilot noise streams depend only on (master_seed, trial_index),
    // so every pilot power of a trial sees the same realizations.
    TrialRecord run_trial(const ScenarioConfig &config, double rho_dbm, std::uint64_t trial_index);
    TrialRecord run_trial(const Scenario &scenario, double rho_dbm, std::uint64_t trial_index);

    // All grid points of one trial; element k equals run_trial(scenario, rho_dbm[k], trial_index)
    std::vector<TrialRecord> run_trial_grid(const Scenario &scenario, std::uint64_t trial_index);

    struct SweepRow
    {
        double rho_dbm = 0.0;
        std::string method;
        std::string metric;
        double mean = 0.0;
        double std = 0.0;
        int trials = 0;
    };

    struct SweepResult
    {
        std::vector<SweepRow> rows;
        std::uint64_t master_seed = 0;
        std::string config_digest;

        // Mean of (method, metric) in grid order
        std::vector<double> series(const std::string &method, const std::string &metric) const;
    };

    // Runs every trial on the grid (parallel over trials) and returns all records in
    // trial-major order.
    std::vector<std::vector<TrialRecord>> run_all_trials(const Scenario &scenario);

    SweepResult run_nmse_sweep(const ScenarioConfig &config);
    SweepResult run_snr_sweep(const ScenarioConfig &config);
    // Aggregation of precomputed records; used by both sweeps. NMSE rows carry metric
    // "nmse" for methods rsls and ls. SNR rows carry "snr" (linear mean and std) and
    // "snr_db" (the linear mean in dB, std over per-trial dB values) for methods
    // perfect, rsls and ls.
    SweepResult summarize_nmse(const ScenarioConfig &config, const std::vector<std::vector<TrialRecord>> &records);
    SweepResult summarize_snr(const ScenarioConfig &config, const std::vector<std::vector<TrialRecord>> &records);

    struct DofRow
    {
        int m = 0; // square array side, M = m * m
        double d = 0.0;
        int eta = 0;
        double eta_over_m = 0.0;
        double dof_over_m = 0.0;
    };

    std::vector<DofRow> run_dof_table(const std::vector<int> &sizes, const std::vector<double> &spacings);

    struct EigenVariant
    {
        double spacing = 0.0;
        int eta = 0;
        EigenSpectrum spectrum;
        double captured = 0.0; // mass share of the top-eta eigenvalues
    };

    std::vector<EigenVariant> run_eigen_spectrum(const EigenConfig &config, std::uint64_t seed, unsigned workers = 0);

    // Running mean and standard deviation with Neumaier-compensated sums
    class Accumulator
    {
    public:
        void add(double x);
        int count() const { return n_; }
        double mean() const;
        double stddev() const; // population
    private:
        static void add_to(double &sum, double &comp, double x);
        int n_ = 0;
        double sum_ = 0.0, comp_ = 0.0;
        double sq_ = 0.0, sq_comp_ = 0.0;
    };

    // CSV helpers with 17 significant digits
    std::string format_double(double x);
    std::string sweep_csv(const SweepResult &r);
    std::string dof_csv(const std::vector<DofRow> &rows);
    std::string eigen_csv(const std::vector<EigenVariant> &variants);
    std::string trial_csv(const std::vector<TrialRecord> &records);
    std::string basis_csv(const BasisSet &basis);
}

#endif
