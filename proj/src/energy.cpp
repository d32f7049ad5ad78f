#include "lumen/energy.hpp"

#include <numeric>

#include "lumen/controller.hpp"
#include "lumen/scenario.hpp"
#include "lumen/simulation.hpp"

namespace lumen {

void EnergyLedger::accrue(const std::vector<PwmDuty>& duties, double dt_s,
                          const PowerModel& model) {
    if (!(dt_s > 0.0)) throw NonpositiveDt("accrue needs dt > 0, got " + std::to_string(dt_s));
    if (duties.size() != zone_joules_.size())
        throw LengthMismatch("accrue got " + std::to_string(duties.size()) + " duties for " +
                             std::to_string(zone_joules_.size()) + " zones");
    for (std::size_t i = 0; i < duties.size(); ++i)
        zone_joules_[i] += model.zone_power_w(duties[i]) * dt_s;
}

double EnergyLedger::total_joules() const {
    return std::accumulate(zone_joules_.begin(), zone_joules_.end(), 0.0);
}

std::string to_string(Policy policy) {
    switch (policy) {
        case Policy::mode_a: return "ModeA";
        case Policy::mode_b: return "ModeB";
        case Policy::always_on_full: return "AlwaysOnFull";
        case Policy::always_dim: return "AlwaysDim";
    }
    return "?";
}

EnergyLedger integrate_trace(const Trace& trace, const PowerModel& model) {
    EnergyLedger ledger(trace.zone_count);
    std::vector<PwmDuty> duties(static_cast<std::size_t>(trace.zone_count), PwmDuty(0));
    double prev_s = 0.0;
    for (const DutyEvent& event : trace.duty_events) {
        if (event.time_s > prev_s) {
            ledger.accrue(duties, event.time_s - prev_s, model);
            prev_s = event.time_s;
        }
        duties.at(static_cast<std::size_t>(event.zone)) = PwmDuty(event.duty);
    }
    if (trace.duration_s > prev_s) ledger.accrue(duties, trace.duration_s - prev_s, model);
    return ledger;
}

double night_seconds(const Scenario& scenario) {
    // Same tick grid and hysteresis the controller sees, so baselines and the
    // smart trace agree on where night starts and ends.
    const double tick_s = scenario.tick_ms / 1000.0;
    const std::uint64_t ticks = tick_count(scenario);
    DayNight state = DayNight::day;
    std::uint64_t night_ticks = 0;
    for (std::uint64_t tick = 0; tick < ticks; ++tick) {
        const double now = static_cast<double>(tick) * tick_s;
        state = classify_day_night(ldr_adc(scenario.ldr, scenario.sun.lux_at(now)), state,
                                   scenario.config);
        if (state == DayNight::night) ++night_ticks;
    }
    return static_cast<double>(night_ticks) * tick_s;
}

double baseline_energy(const Scenario& scenario, const PowerModel& model, Policy policy) {
    PwmDuty duty(0);
    switch (policy) {
        case Policy::always_on_full: duty = scenario.config.high_duty; break;
        case Policy::always_dim: duty = scenario.config.dim_duty; break;
        default:
            throw ValidationError("policy", "baseline_energy needs a fixed-duty policy, got " +
                                                to_string(policy));
    }
    return night_seconds(scenario) * scenario.config.zone_count * model.zone_power_w(duty);
}

double savings(double smart_joules, double baseline_joules) {
    if (!(baseline_joules > 0.0))
        throw ZeroBaseline("savings needs baseline > 0, got " + std::to_string(baseline_joules));
    return 1.0 - smart_joules / baseline_joules;
}

}  // namespace lumen
