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


#ifndef SATNULL_CAMPAIGN_HPP
#define SATNULL_CAMPAIGN_HPP

#include "baselines.hpp"
#include "metrics.hpp"
#include "scenario.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <limits>
#include <map>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

namespace satnull
{

enum class Method
{
    proposed,
    fd_bd,
    hf,
    dft_bd,
    grad_no_null,
    hf_no_null
};

inline constexpr Method all_methods[] = {Method::proposed,     Method::fd_bd,     Method::hf, Method::dft_bd,
                                         Method::grad_no_null, Method::hf_no_null};

inline std::string_view to_string(Method m)
{
    switch (m)
    {
    case Method::proposed: return "proposed";
    case Method::fd_bd: return "fd-bd";
    case Method::hf: return "hf";
    case Method::dft_bd: return "dft-bd";
    case Method::grad_no_null: return "grad-no-null";
    case Method::hf_no_null: return "hf-no-null";
    }
    return "?";
}

inline Method parse_method(std::string_view tag)
{
    for (Method m : all_methods)
        if (to_string(m) == tag)
            return m;
    throw config_error("unknown method '" + std::string(tag) + "'");
}

inline std::vector<Method> parse_method_list(std::string_view list)
{
    if (list.empty())
        throw config_error("method list is empty");
    std::vector<Method> out;
    size_t pos = 0;
    while (pos <= list.size())
    {
        const size_t comma = list.find(',', pos);
        const std::string_view tok = list.substr(pos, comma == std::string_view::npos ? list.npos : comma - pos);
        if (tok.empty())
            throw config_error("method list has an empty entry");
        out.push_back(parse_method(tok));
        if (comma == std::string_view::npos)
            break;
        pos = comma + 1;
    }
    return out;
}

// ---------- channel generation ----------

// Counter-based per-trial seed (splitmix64 finalizer over master seed and
// trial index), so any trial can be regenerated independently.
inline std::uint64_t trial_seed(std::uint64_t master, std::uint64_t trial)
{
    std::uint64_t z = master + 0x9E3779B97F4A7C15ull * (trial + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

struct TrialChannels
{
    ChannelSet channels;
    std::vector<SatelliteGeometry> satellites;
};

inline TrialChannels generate_trial_channels(const Scenario &sc, std::uint64_t trial)
{
    std::mt19937_64 rng(trial_seed(sc.rng_seed, trial));
    TrialChannels out;
    ChannelSet &ch = out.channels;

    const double ue_noise = thermal_noise_power(sc.bandwidth_hz, sc.ue_noise_figure_db);
    std::uniform_real_distribution<double> pl(sc.ue_pathloss_min_db, sc.ue_pathloss_max_db);
    for (Index u = 0; u < sc.n_ue; ++u)
    {
        const double loss = sc.ue_pathloss_min_db == sc.ue_pathloss_max_db ? sc.ue_pathloss_min_db : pl(rng);
        const auto paths = generate_random_paths(rng, sc.paths_per_ue, loss);
        ch.ue_channels.push_back(generate_ue_channel(sc.bs_array, sc.ue_array, paths));
        ch.ue_noise_power.push_back(ue_noise);
    }

    if (sc.satellites.mode == SatelliteMode::fixed)
        out.satellites = sc.satellites.fixed;
    else
    {
        std::uniform_real_distribution<double> az(-std::numbers::pi, std::numbers::pi);
        std::uniform_real_distribution<double> el(sc.satellites.min_elevation_deg * detail::deg,
                                                  sc.satellites.max_elevation_deg * detail::deg);
        for (int i = 0; i < sc.satellites.count; ++i)
        {
            SatelliteGeometry g;
            g.azimuth = az(rng);
            g.elevation = el(rng);
            g.slant_range = slant_range_m(g.elevation, sc.satellites.altitude_m);
            g.atmospheric_loss = sc.satellites.atmospheric_loss_db;
            out.satellites.push_back(g);
        }
    }

    const double sat_noise = thermal_noise_power(sc.bandwidth_hz, sc.sat_noise_figure_db);
    ch.sat_matrix = stack_satellite_channels(sc.bs_array, out.satellites);
    for (const auto &g : out.satellites)
    {
        ch.sat_pathloss.push_back(satellite_pathloss(g, sc.carrier_hz));
        ch.sat_noise_power.push_back(sat_noise);
    }
    ch.validate();
    return out;
}

// FNV-1a over the raw bytes of every matrix and list in the set.
inline std::uint64_t digest(const ChannelSet &ch)
{
    std::uint64_t h = 0xcbf29ce484222325ull;
    auto feed = [&h](const void *p, size_t n) {
        const auto *b = static_cast<const unsigned char *>(p);
        for (size_t i = 0; i < n; ++i)
        {
            h ^= b[i];
            h *= 0x100000001b3ull;
        }
    };
    for (const auto &H : ch.ue_channels)
        feed(H.data(), sizeof(cdouble) * static_cast<size_t>(H.size()));
    feed(ch.sat_matrix.data(), sizeof(cdouble) * static_cast<size_t>(ch.sat_matrix.size()));
    for (const auto *v : {&ch.sat_pathloss, &ch.sat_noise_power, &ch.ue_noise_power})
        feed(v->data(), sizeof(double) * v->size());
    return h;
}

// ---------- method dispatch ----------

inline BaselineConfig baseline_config(const Scenario &sc)
{
    return {sc.bs_array, sc.n_rf, sc.optimizer_config()};
}

// Proposed method: nulling-aware gradient optimization started from HF.
inline BcdResult run_proposed(const ChannelSet &ch, const Scenario &sc)
{
    const OptimizerConfig cfg = sc.optimizer_config();
    const HybridResult init = hf(ch, cfg.p_t, sc.n_rf, true);
    return bcd_optimize(ch, cfg, init.precoder);
}

inline BaselineResult run_method(Method m, const ChannelSet &ch, const Scenario &sc)
{
    switch (m)
    {
    case Method::proposed:
    {
        BcdResult b = run_proposed(ch, sc);
        BaselineResult r;
        r.f = b.precoder.effective();
        r.hybrid = std::move(b.precoder);
        r.combiners = std::move(b.combiners);
        r.initial_cost = b.initial_cost;
        r.cost_trace = std::move(b.cost_trace);
        return r;
    }
    case Method::fd_bd: return run_baseline(BaselineKind::FD_BD, ch, baseline_config(sc));
    case Method::hf: return run_baseline(BaselineKind::HF, ch, baseline_config(sc));
    case Method::dft_bd: return run_baseline(BaselineKind::DFT_BD, ch, baseline_config(sc));
    case Method::grad_no_null: return run_baseline(BaselineKind::GRAD_NO_NULL, ch, baseline_config(sc));
    case Method::hf_no_null: return run_baseline(BaselineKind::HF_NO_NULL, ch, baseline_config(sc));
    }
    throw config_error("run_method: unknown method");
}

// ---------- campaigns ----------

struct TrialRecord
{
    Index trial_index = 0;
    std::string method;
    bool ok = true;
    std::string error;
    double sum_rate_bits = std::numeric_limits<double>::quiet_NaN();
    std::vector<double> per_sat_inr_db; // NaN entries on failure
    double interference_power = std::numeric_limits<double>::quiet_NaN();
    double final_cost = std::numeric_limits<double>::quiet_NaN();
    double wall_time_ms = 0.0;
};

using ChannelObserver = std::function<void(Index trial, Method method, const ChannelSet &channels)>;

struct CampaignOptions
{
    unsigned threads = 1;
    ChannelObserver observer; // called before each method; must be thread-safe when threads > 1
};

// final_cost is the optimizer's own last cost for iterative methods and the
// scenario cost (scenario lambda_sat) of the returned precoder otherwise.
inline TrialRecord evaluate_method(Method m, Index trial, const ChannelSet &ch, const Scenario &sc)
{
    TrialRecord rec;
    rec.trial_index = trial;
    rec.method = std::string(to_string(m));
    const auto t0 = std::chrono::steady_clock::now();
    try
    {
        const BaselineResult r = run_method(m, ch, sc);
        const LinkMetrics lm = evaluate_link(ch, r.f, r.combiners, sc.p_t_watts, sc.inr_power_factor);
        rec.sum_rate_bits = lm.sum_rate_bits;
        rec.per_sat_inr_db = lm.per_sat_inr_db;
        rec.interference_power = lm.interference_power;
        if (!r.cost_trace.empty())
            rec.final_cost = r.cost_trace.back();
        else
        {
            const HybridPrecoder as_hybrid =
                r.hybrid ? *r.hybrid : HybridPrecoder{CMatrix::Identity(ch.n_tx(), ch.n_tx()), r.f};
            rec.final_cost = cost(ch, as_hybrid, r.combiners, sc.optimizer_config());
        }
    }
    catch (const std::exception &e)
    {
        rec.ok = false;
        rec.error = e.what();
        rec.per_sat_inr_db.assign(static_cast<size_t>(ch.n_sat()), std::numeric_limits<double>::quiet_NaN());
    }
    rec.wall_time_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return rec;
}

inline std::vector<TrialRecord> run_trial(const Scenario &sc, Index trial, const std::vector<Method> &methods,
                                          const ChannelObserver &observer = {})
{
    const TrialChannels tc = generate_trial_channels(sc, static_cast<std::uint64_t>(trial));
    std::vector<TrialRecord> out;
    out.reserve(methods.size());
    for (Method m : methods)
    {
        if (observer)
            observer(trial, m, tc.channels);
        out.push_back(evaluate_method(m, trial, tc.channels, sc));
    }
    return out;
}

// Records come back ordered by trial, then by the order of `methods`.
inline std::vector<TrialRecord> run_campaign(const Scenario &sc, const std::vector<Method> &methods,
                                             const CampaignOptions &opts = {})
{
    sc.validate();
    if (methods.empty())
        throw config_error("run_campaign: no methods requested");
    const auto n = static_cast<size_t>(sc.trial_count);
    std::vector<std::vector<TrialRecord>> per_trial(n);

    const unsigned workers = std::max(1u, std::min<unsigned>(opts.threads, static_cast<unsigned>(n)));
    if (workers == 1)
        for (size_t t = 0; t < n; ++t)
            per_trial[t] = run_trial(sc, static_cast<Index>(t), methods, opts.observer);
    else
    {
        std::atomic<size_t> next{0};
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (size_t t = next++; t < n; t = next++)
                    per_trial[t] = run_trial(sc, static_cast<Index>(t), methods, opts.observer);
            });
        for (auto &th : pool)
            th.join();
    }

    std::vector<TrialRecord> out;
    out.reserve(n * methods.size());
    for (auto &v : per_trial)
        for (auto &r : v)
            out.push_back(std::move(r));
    return out;
}

// ---------- aggregation ----------

struct MethodSummary
{
    std::string method;
    std::size_t trials = 0;
    std::size_t failed = 0;
    double mean_sum_rate = std::numeric_limits<double>::quiet_NaN();
    double mean_inr_db = std::numeric_limits<double>::quiet_NaN(); // -inf if any exact null
    double mean_interference_power = std::numeric_limits<double>::quiet_NaN();
};

// Means over successful records; INR is averaged in dB over all
// (trial, satellite) pairs.
inline std::vector<MethodSummary> summarize(const std::vector<TrialRecord> &records)
{
    std::vector<MethodSummary> out;
    std::map<std::string, size_t> slot;
    struct Acc
    {
        double rate = 0, inr = 0, interf = 0;
        size_t n_ok = 0, n_inr = 0;
        bool null_hit = false;
    };
    std::vector<Acc> acc;
    for (const auto &r : records)
    {
        auto it = slot.find(r.method);
        if (it == slot.end())
        {
            it = slot.emplace(r.method, out.size()).first;
            out.push_back({r.method});
            acc.emplace_back();
        }
        auto &s = out[it->second];
        auto &a = acc[it->second];
        ++s.trials;
        if (!r.ok)
        {
            ++s.failed;
            continue;
        }
        ++a.n_ok;
        a.rate += r.sum_rate_bits;
        a.interf += r.interference_power;
        for (double v : r.per_sat_inr_db)
        {
            if (std::isinf(v) && v < 0)
                a.null_hit = true;
            else
                a.inr += v;
            ++a.n_inr;
        }
    }
    for (size_t i = 0; i < out.size(); ++i)
    {
        const auto &a = acc[i];
        if (a.n_ok == 0)
            continue;
        out[i].mean_sum_rate = a.rate / static_cast<double>(a.n_ok);
        out[i].mean_interference_power = a.interf / static_cast<double>(a.n_ok);
        if (a.n_inr > 0)
            out[i].mean_inr_db = a.null_hit ? inr_null_sentinel : a.inr / static_cast<double>(a.n_inr);
    }
    return out;
}

inline const MethodSummary *find_summary(const std::vector<MethodSummary> &s, std::string_view method)
{
    for (const auto &m : s)
        if (m.method == method)
            return &m;
    return nullptr;
}

struct SweepRow
{
    double lambda_sat = 0.0;
    double p_t_watts = 0.0;
    std::string method;
    double mean_sum_rate = 0.0;
    double mean_inr_db = 0.0;
    double mean_interference_power = 0.0;
};

inline std::vector<SweepRow> power_sweep(const Scenario &sc, const std::vector<double> &powers,
                                         const std::vector<Method> &methods, const CampaignOptions &opts = {})
{
    if (powers.empty())
        throw config_error("power_sweep: no powers given");
    std::vector<SweepRow> rows;
    for (double p : powers)
    {
        if (!(p > 0.0))
            throw config_error("power_sweep: powers must be positive");
        Scenario s = sc;
        s.p_t_watts = p;
        for (const auto &m : summarize(run_campaign(s, methods, opts)))
            rows.push_back({s.optimizer.lambda_sat, p, m.method, m.mean_sum_rate, m.mean_inr_db,
                            m.mean_interference_power});
    }
    return rows;
}

// Proposed method only, for every (lambda, power) pair.
inline std::vector<SweepRow> lambda_sweep(const Scenario &sc, const std::vector<double> &lambdas,
                                          const std::vector<double> &powers, const CampaignOptions &opts = {})
{
    if (lambdas.empty())
        throw config_error("lambda_sweep: no lambda values given");
    std::vector<SweepRow> rows;
    for (double l : lambdas)
    {
        if (!(l >= 0.0))
            throw config_error("lambda_sweep: lambda values must be nonnegative");
        Scenario s = sc;
        s.optimizer.lambda_sat = l;
        for (auto &r : power_sweep(s, powers, {Method::proposed}, opts))
            rows.push_back(std::move(r));
    }
    return rows;
}

// ---------- CSV ----------

inline std::string format_number(double v)
{
    if (std::isnan(v))
        return "nan";
    if (std::isinf(v))
        return v < 0 ? "-inf" : "inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

// trial,method,sum_rate_bits,inr_db_sat1..N,final_cost,wall_ms
// wall_ms is written as 0 unless with_timing is set, which keeps the output
// reproducible by default.
inline std::string records_csv(const std::vector<TrialRecord> &records, int n_sat, bool with_timing = false)
{
    std::string out = "trial,method,sum_rate_bits";
    for (int i = 1; i <= n_sat; ++i)
        out += ",inr_db_sat" + std::to_string(i);
    out += ",final_cost,wall_ms\n";
    for (const auto &r : records)
    {
        out += std::to_string(r.trial_index) + "," + r.method + "," + format_number(r.sum_rate_bits);
        for (int i = 0; i < n_sat; ++i)
            out += "," + format_number(i < static_cast<int>(r.per_sat_inr_db.size())
                                           ? r.per_sat_inr_db[static_cast<size_t>(i)]
                                           : std::numeric_limits<double>::quiet_NaN());
        out += "," + format_number(r.final_cost) + "," + (with_timing ? format_number(r.wall_time_ms) : "0") + "\n";
    }
    return out;
}

enum class CdfMetric
{
    inr,
    sum_rate
};

// method,value,cdf. Groups appear in first-seen method order; values sort
// ascending with -inf first. INR uses every (trial, satellite) pair. Failed
// records are skipped.
inline std::string emit_cdf(const std::vector<TrialRecord> &records, CdfMetric metric)
{
    if (records.empty())
        throw validation_error("emit_cdf: no records");
    std::vector<std::string> order;
    std::map<std::string, std::vector<double>> groups;
    for (const auto &r : records)
    {
        if (!groups.count(r.method))
            order.push_back(r.method);
        auto &g = groups[r.method];
        if (!r.ok)
            continue;
        if (metric == CdfMetric::sum_rate)
            g.push_back(r.sum_rate_bits);
        else
            for (double v : r.per_sat_inr_db)
                g.push_back(v);
    }
    std::string out = "method,value,cdf\n";
    for (const auto &m : order)
    {
        auto &g = groups[m];
        std::sort(g.begin(), g.end());
        const double n = static_cast<double>(g.size());
        for (size_t k = 0; k < g.size(); ++k)
            out += m + "," + format_number(g[k]) + "," + format_number(static_cast<double>(k + 1) / n) + "\n";
    }
    return out;
}

inline std::string power_sweep_csv(const std::vector<SweepRow> &rows)
{
    std::string out = "p_t_watts,method,mean_sum_rate,mean_inr_db\n";
    for (const auto &r : rows)
        out += format_number(r.p_t_watts) + "," + r.method + "," + format_number(r.mean_sum_rate) + "," +
               format_number(r.mean_inr_db) + "\n";
    return out;
}

inline std::string lambda_sweep_csv(const std::vector<SweepRow> &rows)
{
    std::string out = "lambda_sat,p_t_watts,method,mean_sum_rate,mean_inr_db,mean_interference_power\n";
    for (const auto &r : rows)
        out += format_number(r.lambda_sat) + "," + format_number(r.p_t_watts) + "," + r.method + "," +
               format_number(r.mean_sum_rate) + "," + format_number(r.mean_inr_db) + "," +
               format_number(r.mean_interference_power) + "\n";
    return out;
}

} // namespace satnull

#endif
