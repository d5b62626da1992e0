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

// Command-line front end. Exit codes: 0 success, 1 configuration error,
// 2 numerical failure.

#include <satnull/satnull.hpp>

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace
{

constexpr int exit_ok = 0;
constexpr int exit_config = 1;
constexpr int exit_numerical = 2;

struct CommonOptions
{
    std::string scenario;
    std::string methods;
    std::optional<std::uint64_t> seed;
    std::optional<int> trials;
    std::string out = "-";
    std::string inr_power_factor;
    unsigned threads = 1;
};

void add_common(CLI::App *cmd, CommonOptions &o, bool with_methods)
{
    cmd->add_option("--scenario", o.scenario, "Scenario JSON file (defaults apply when omitted)");
    if (with_methods)
        cmd->add_option("--methods", o.methods, "Comma-separated method tags (default: all)");
    cmd->add_option("--seed", o.seed, "Master RNG seed (overrides the scenario)");
    cmd->add_option("--trials", o.trials, "Number of Monte-Carlo trials (overrides the scenario)");
    cmd->add_option("--out", o.out, "Output CSV path, '-' for stdout");
    cmd->add_option("--inr-power-factor", o.inr_power_factor, "INR power factor: literal or unit")
        ->check(CLI::IsMember({"literal", "unit"}));
    cmd->add_option("--threads", o.threads, "Worker threads")->check(CLI::PositiveNumber);
}

satnull::Scenario build_scenario(const CommonOptions &o)
{
    satnull::Scenario sc = o.scenario.empty() ? satnull::Scenario{} : satnull::load_scenario(o.scenario);
    if (o.seed)
        sc.rng_seed = *o.seed;
    if (o.trials)
        sc.trial_count = *o.trials;
    if (!o.inr_power_factor.empty())
        sc.inr_power_factor = satnull::parse_inr_power_factor(o.inr_power_factor);
    sc.validate();
    return sc;
}

std::vector<satnull::Method> build_methods(const CommonOptions &o)
{
    if (o.methods.empty())
        return {std::begin(satnull::all_methods), std::end(satnull::all_methods)};
    return satnull::parse_method_list(o.methods);
}

std::vector<double> parse_list(const std::string &text, const char *what)
{
    std::vector<double> v;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
    {
        try
        {
            size_t used = 0;
            v.push_back(std::stod(item, &used));
            if (used != item.size())
                throw std::invalid_argument(item);
        }
        catch (const std::exception &)
        {
            throw satnull::config_error(std::string("invalid ") + what + " entry '" + item + "'");
        }
    }
    if (v.empty())
        throw satnull::config_error(std::string("empty ") + what + " list");
    return v;
}

void write_output(const std::string &path, const std::string &text)
{
    if (path == "-")
    {
        std::cout << text;
        std::cout.flush();
        return;
    }
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f)
        throw satnull::config_error("cannot open output file '" + path + "'");
    f << text;
    if (!f)
        throw satnull::config_error("failed writing '" + path + "'");
}

int report_failures(const std::vector<satnull::TrialRecord> &records)
{
    size_t failed = 0;
    for (const auto &r : records)
        if (!r.ok)
        {
            if (failed < 5)
                std::cerr << "trial " << r.trial_index << " " << r.method << ": " << r.error << "\n";
            ++failed;
        }
    if (failed == 0)
        return exit_ok;
    std::cerr << failed << " of " << records.size() << " method runs failed\n";
    return exit_numerical;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Hybrid precoding with LEO satellite interference nulling"};
    app.require_subcommand(1);

    CommonOptions campaign_opts;
    std::string cdf;
    bool timing = false;
    auto *campaign = app.add_subcommand("campaign", "Monte-Carlo campaign over all requested methods");
    add_common(campaign, campaign_opts, true);
    campaign->add_option("--cdf", cdf, "Emit a CDF of 'inr' or 'sum-rate' instead of per-trial records")
        ->check(CLI::IsMember({"inr", "sum-rate"}));
    campaign->add_flag("--timing", timing, "Record wall-clock time per run (output is then not reproducible)");

    CommonOptions power_opts;
    std::string powers = "0.01,0.2575,0.505,0.7525,1";
    auto *power = app.add_subcommand("power-sweep", "Mean rate and INR versus transmit power");
    add_common(power, power_opts, true);
    power->add_option("--powers", powers, "Comma-separated transmit powers in watts");

    CommonOptions lambda_opts;
    std::string lambdas = "0,1,10,100";
    std::string lambda_powers;
    auto *lambda = app.add_subcommand("lambda-sweep", "Proposed method versus penalty weight");
    add_common(lambda, lambda_opts, false);
    lambda->add_option("--lambdas", lambdas, "Comma-separated penalty weights");
    lambda->add_option("--powers", lambda_powers, "Comma-separated transmit powers (default: scenario power)");

    std::uint64_t grad_seed = 1;
    int grad_count = 20;
    double grad_tol = 1e-5;
    std::string grad_out = "-";
    auto *grad = app.add_subcommand("gradcheck", "Compare analytic gradients with central differences");
    grad->add_option("--seed", grad_seed, "RNG seed");
    grad->add_option("--trials", grad_count, "Number of random instances")->check(CLI::PositiveNumber);
    grad->add_option("--tol", grad_tol, "Relative L2 tolerance")->check(CLI::PositiveNumber);
    grad->add_option("--out", grad_out, "Output CSV path, '-' for stdout");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp &e)
    {
        return app.exit(e);
    }
    catch (const CLI::ParseError &e)
    {
        app.exit(e);
        return exit_config;
    }

    try
    {
        if (campaign->parsed())
        {
            const satnull::Scenario sc = build_scenario(campaign_opts);
            const auto methods = build_methods(campaign_opts);
            satnull::CampaignOptions co;
            co.threads = campaign_opts.threads;
            const auto records = satnull::run_campaign(sc, methods, co);
            if (cdf.empty())
                write_output(campaign_opts.out, satnull::records_csv(records, sc.n_sat(), timing));
            else
                write_output(campaign_opts.out,
                             satnull::emit_cdf(records, cdf == "inr" ? satnull::CdfMetric::inr
                                                                      : satnull::CdfMetric::sum_rate));
            return report_failures(records);
        }
        if (power->parsed())
        {
            const satnull::Scenario sc = build_scenario(power_opts);
            satnull::CampaignOptions co;
            co.threads = power_opts.threads;
            const auto rows = satnull::power_sweep(sc, parse_list(powers, "power"), build_methods(power_opts), co);
            write_output(power_opts.out, satnull::power_sweep_csv(rows));
            return exit_ok;
        }
        if (lambda->parsed())
        {
            const satnull::Scenario sc = build_scenario(lambda_opts);
            satnull::CampaignOptions co;
            co.threads = lambda_opts.threads;
            const std::vector<double> pw =
                lambda_powers.empty() ? std::vector<double>{sc.p_t_watts} : parse_list(lambda_powers, "power");
            const auto rows = satnull::lambda_sweep(sc, parse_list(lambdas, "lambda"), pw, co);
            write_output(lambda_opts.out, satnull::lambda_sweep_csv(rows));
            return exit_ok;
        }
        if (grad->parsed())
        {
            const auto rows = satnull::gradcheck_suite(grad_seed, grad_count);
            std::string csv = "instance,n_t,n_rf,n_ue,lambda_sat,rel_err_f_bb,rel_err_f_rf,pass\n";
            bool all = true;
            for (size_t k = 0; k < rows.size(); ++k)
            {
                const auto &r = rows[k];
                const bool ok = r.result.rel_err_f_bb <= grad_tol && r.result.rel_err_f_rf <= grad_tol;
                all = all && ok;
                csv += std::to_string(k) + "," + std::to_string(r.n_t) + "," + std::to_string(r.n_rf) + "," +
                       std::to_string(r.n_ue) + "," + satnull::format_number(r.lambda_sat) + "," +
                       satnull::format_number(r.result.rel_err_f_bb) + "," +
                       satnull::format_number(r.result.rel_err_f_rf) + "," + (ok ? "1" : "0") + "\n";
            }
            write_output(grad_out, csv);
            return all ? exit_ok : exit_numerical;
        }
    }
    catch (const satnull::config_error &e)
    {
        std::cerr << "configuration error: " << e.what() << "\n";
        return exit_config;
    }
    catch (const satnull::numerical_error &e)
    {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return exit_numerical;
    }
    catch (const std::exception &e)
    {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return exit_numerical;
    }
    return exit_ok;
}
