// Runs every method on one trial of the default scenario and prints the
// resulting sum-rate and per-satellite INR.

#include <satnull/satnull.hpp>

#include <cstdio>

int main()
{
    using namespace satnull;
    const Scenario sc;
    const TrialChannels tc = generate_trial_channels(sc, 0);

    std::printf("%-14s %10s %12s %12s\n", "method", "rate[b/Hz]", "INR1[dB]", "INR2[dB]");
    for (Method m : all_methods)
    {
        const TrialRecord r = evaluate_method(m, 0, tc.channels, sc);
        if (!r.ok)
        {
            std::printf("%-14s failed: %s\n", r.method.c_str(), r.error.c_str());
            continue;
        }
        std::printf("%-14s %10.3f", r.method.c_str(), r.sum_rate_bits);
        for (double v : r.per_sat_inr_db)
            std::printf(" %12.2f", v);
        std::printf("\n");
    }
}
