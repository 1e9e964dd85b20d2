// Prints delay/Doppler metrics of the four waveforms for unit symbols at
// N = 144, K = L = 12, O_tau = O_nu = 4, L_h = 4.
#include "isac/experiments.hpp"

#include <cstdio>
#include <string>

int main() {
    const auto result = isac::run_campaign(isac::CampaignConfig::reference_unimodular());
    auto show = [](const std::optional<double>& v) {
        char buf[32];
        if (!v) return std::string("n/a");
        std::snprintf(buf, sizeof buf, "%.3f", *v);
        return std::string(buf);
    };
    std::printf("%-8s %9s %9s %9s %9s %9s %9s\n", "", "dtau", "dnu", "PSLR_t", "ISLR_t", "PSLR_n", "ISLR_n");
    for (const auto& w : result.waveforms) {
        std::printf("%-8s %9.5f %9.5f %9s %9s %9s %9s\n", w.name.c_str(), w.delay_metrics.width_3db,
                    w.doppler_metrics.width_3db, show(w.delay_metrics.pslr_db).c_str(),
                    show(w.delay_metrics.islr_db).c_str(), show(w.doppler_metrics.pslr_db).c_str(),
                    show(w.doppler_metrics.islr_db).c_str());
    }
}
