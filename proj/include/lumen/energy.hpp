#pragma once

#include <string>
#include <vector>

#include "lumen/board.hpp"

namespace lumen {

struct Scenario;
struct Trace;

/// Linear lamp power model: a zone at full duty draws
/// led_power_w * leds_per_zone watts.
struct PowerModel {
    double led_power_w = 0.1;
    int leds_per_zone = 4;

    double zone_power_w(PwmDuty duty) const {
        return duty.duty() / static_cast<double>(PwmDuty::max_duty) * led_power_w * leds_per_zone;
    }
};

/// Per-zone accumulated lamp energy in joules.
class EnergyLedger {
public:
    explicit EnergyLedger(int zone_count)
        : zone_joules_(static_cast<std::size_t>(zone_count), 0.0) {}

    void accrue(const std::vector<PwmDuty>& duties, double dt_s, const PowerModel& model);

    double zone_joules(int zone) const { return zone_joules_.at(static_cast<std::size_t>(zone)); }
    double total_joules() const;
    int zone_count() const { return static_cast<int>(zone_joules_.size()); }

private:
    std::vector<double> zone_joules_;
};

enum class Policy { mode_a, mode_b, always_on_full, always_dim };

std::string to_string(Policy policy);

/// Replays a trace's piecewise-constant duty events into a ledger.
EnergyLedger integrate_trace(const Trace& trace, const PowerModel& model);

/// Energy a fixed-duty policy would spend over the scenario's night portion.
/// Day hours contribute nothing: conventional lights are also off by day.
double baseline_energy(const Scenario& scenario, const PowerModel& model, Policy policy);

/// Seconds the scenario spends classified as night, on its tick grid.
double night_seconds(const Scenario& scenario);

/// Fractional saving 1 - smart/baseline; negative when smart exceeds baseline.
double savings(double smart_joules, double baseline_joules);

}  // namespace lumen
