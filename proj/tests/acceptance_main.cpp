// Acceptance gate: six release criteria, one [PASS]/[FAIL] line each.
// Exits nonzero if any criterion fails. Tolerances and time budgets are
// pinned here and are not configurable.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "lumen/energy.hpp"
#include "lumen/scenario.hpp"
#include "lumen/simulation.hpp"

using namespace lumen;

namespace {

constexpr double savings_tolerance = 0.0005;
constexpr double closed_form_rel_tolerance = 1e-6;

int failures = 0;
std::vector<std::string> detail;  // collected reasons for the current criterion

void require(bool condition, const std::string& reason) {
    if (!condition) detail.push_back(reason);
}

void criterion(int number, const std::string& name, double budget_s,
               const std::function<void()>& body) {
    detail.clear();
    const auto start = std::chrono::steady_clock::now();
    try {
        body();
    } catch (const std::exception& error) {
        detail.push_back(std::string("exception: ") + error.what());
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (elapsed >= budget_s)
        detail.push_back("took " + std::to_string(elapsed) + " s, budget " +
                         std::to_string(budget_s) + " s");

    if (detail.empty()) {
        std::printf("[PASS] %d. %s (%.3f s)\n", number, name.c_str(), elapsed);
    } else {
        ++failures;
        std::printf("[FAIL] %d. %s (%.3f s)\n", number, name.c_str(), elapsed);
        for (const std::string& reason : detail) std::printf("       - %s\n", reason.c_str());
    }
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

std::string fixture(const std::string& name) {
    return std::string(LUMEN_FIXTURE_DIR) + "/" + name;
}

// ---------------------------------------------------------------------------
// Brute-force per-tick reference: no board, no event compression. Control
// rules are restated here in plain form rather than calling the library's
// state machines.

struct Reference {
    std::vector<int> duties;
    std::vector<int> linger;
    std::uint64_t count = 0;
    int run_length = 0;
    DoorPhase door = DoorPhase::closed;
    int door_remaining = 0;
    bool night = false;
};

int reference_adc(const Scenario& scenario, double time_s) {
    const LdrModel& m = scenario.ldr;
    const double lux = scenario.sun.lux_at(time_s);
    double frac = (lux - m.darkness_floor_lux) / (m.saturation_lux - m.darkness_floor_lux);
    frac = frac < 0.0 ? 0.0 : (frac > 1.0 ? 1.0 : frac);
    return static_cast<int>(std::lround(1023.0 * std::pow(frac, m.curve_exponent)));
}

bool reference_covered(const Scenario& scenario, const IrSensor& sensor, double time_s,
                       bool authorized_only) {
    for (const Vehicle& vehicle : scenario.vehicles) {
        if (authorized_only && !vehicle.authorized) continue;
        if (time_s < vehicle.enter_time_s) continue;
        const double front = vehicle.speed_mps * (time_s - vehicle.enter_time_s);
        if (front < sensor.position_m - sensor.window_m) continue;
        if (front - vehicle.length_m > sensor.position_m + sensor.window_m) continue;
        if (vehicle.lateral_offset_m < sensor.min_range_m ||
            vehicle.lateral_offset_m > sensor.max_range_m)
            continue;
        return true;
    }
    return false;
}

void reference_tick(Reference& ref, const Scenario& scenario, double time_s) {
    const ControllerConfig& c = scenario.config;
    const int adc = reference_adc(scenario, time_s);

    // classification with hysteresis, ties to day
    if (c.hysteresis == 0) {
        ref.night = adc < c.threshold;
    } else if (ref.night) {
        ref.night = adc < c.threshold + c.hysteresis;
    } else {
        ref.night = adc < c.threshold - c.hysteresis;
    }

    const int baseline = c.mode == Mode::a ? c.dim_duty.duty() : 0;
    for (int i = 0; i < c.zone_count; ++i) {
        const bool covered = reference_covered(scenario, scenario.sensors[i], time_s, false);
        if (!ref.night) {
            ref.duties[i] = 0;
            ref.linger[i] = 0;
        } else if (covered) {
            ref.duties[i] = c.high_duty.duty();
            ref.linger[i] = c.linger_ticks;
        } else if (ref.linger[i] > 0) {
            ref.duties[i] = c.high_duty.duty();
            --ref.linger[i];
        } else {
            ref.duties[i] = baseline;
        }
    }

    const bool count_gate = ref.night || !c.count_night_only;
    const bool at_counter =
        count_gate && reference_covered(scenario, scenario.sensors[c.counting_sensor], time_s,
                                        false);
    ref.run_length = at_counter ? ref.run_length + 1 : 0;
    const int required = c.debounce_ticks < 1 ? 1 : c.debounce_ticks;
    if (ref.run_length == required) ++ref.count;

    if (c.has_door) {
        const bool at_door = reference_covered(scenario, *scenario.door_sensor, time_s, true);
        switch (ref.door) {
            case DoorPhase::closed:
                if (at_door) {
                    ref.door = DoorPhase::opening;
                    ref.door_remaining = c.door_open_ticks;
                }
                break;
            case DoorPhase::open:
                if (!at_door) {
                    ref.door = DoorPhase::closing;
                    ref.door_remaining = c.door_close_ticks;
                }
                break;
            case DoorPhase::closing:
                if (at_door) {
                    const int closed_part = c.door_close_ticks - ref.door_remaining;
                    const int reopen =
                        (c.door_open_ticks * closed_part + c.door_close_ticks / 2) /
                        c.door_close_ticks;
                    ref.door = reopen <= 0 ? DoorPhase::open : DoorPhase::opening;
                    ref.door_remaining = reopen;
                }
                break;
            case DoorPhase::opening:
                break;
        }
        if (ref.door == DoorPhase::opening || ref.door == DoorPhase::closing) {
            --ref.door_remaining;
            if (ref.door_remaining == 0)
                ref.door = ref.door == DoorPhase::opening ? DoorPhase::open : DoorPhase::closed;
        }
    }
}

Scenario random_scenario(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    auto pick = [&](int lo, int hi) { return lo + static_cast<int>(rng() % (hi - lo + 1)); };
    auto real = [&](double lo, double hi) {
        return lo + (hi - lo) * (static_cast<double>(rng() >> 11) / 9007199254740992.0);
    };

    Scenario scenario;
    scenario.config.mode = rng() & 1 ? Mode::a : Mode::b;
    scenario.tick_ms = std::vector<int>{5, 10, 20}[rng() % 3];
    scenario.duration_s = real(20.0, 60.0);
    scenario.config.dim_duty = PwmDuty(pick(30, 120));
    scenario.config.high_duty = PwmDuty(pick(150, 255));
    scenario.config.linger_ticks = (rng() & 1) ? pick(1, 30) : 0;
    scenario.config.debounce_ticks = pick(1, 3);

    const int zones = pick(1, 3);
    double position = 1.0;
    for (int i = 0; i < zones; ++i) {
        IrSensor sensor;
        sensor.position_m = position;
        sensor.window_m = real(0.1, 0.2);
        scenario.sensors.push_back(sensor);
        position += real(0.5, 1.5);
    }
    scenario.config.zone_count = zones;

    if (scenario.config.mode == Mode::b && (rng() & 1)) {
        IrSensor door;
        door.position_m = position + 0.5;
        door.window_m = 0.15;
        scenario.door_sensor = door;
        scenario.config.has_door = true;
        scenario.config.door_open_ticks = pick(5, 50);
        scenario.config.door_close_ticks = pick(5, 50);
    }

    switch (rng() % 3) {
        case 0: scenario.sun = DiurnalProfile::constant(0.0); break;
        case 1: scenario.sun = DiurnalProfile::constant(5000.0); break;
        default: scenario.sun = DiurnalProfile({{0.0, 5000.0}, {10.0, 0.0}}); break;
    }

    const int vehicle_count = pick(0, 6);
    for (int i = 0; i < vehicle_count; ++i) {
        Vehicle vehicle;
        vehicle.enter_time_s = real(0.0, scenario.duration_s * 0.8);
        vehicle.speed_mps = real(0.5, 2.0);
        vehicle.length_m = real(0.2, 1.0);
        vehicle.authorized = rng() % 4 != 0;
        scenario.vehicles.push_back(vehicle);
    }
    std::sort(scenario.vehicles.begin(), scenario.vehicles.end(),
              [](const Vehicle& a, const Vehicle& b) { return a.enter_time_s < b.enter_time_s; });
    return scenario;
}

std::uint64_t fnv1a(const std::string& text) {
    std::uint64_t hash = 1469598103934665603ull;
    for (unsigned char c : text) {
        hash ^= c;
        hash *= 1099511628211ull;
    }
    return hash;
}

// ---------------------------------------------------------------------------
// Criteria

void golden_fig8() {
    const Scenario scenario = load_scenario(fixture("fig8.scn"));
    const Trace trace = run(scenario);
    require(format_trace(trace) == slurp(fixture("fig8.golden")),
            "trace differs from fig8.golden");

    // zone-pattern walk: all-Off (day) -> all-Dim -> one High sweeping
    // through the zones -> all-Dim
    std::vector<int> duties(3, 0);
    std::vector<std::vector<int>> patterns = {duties};
    for (std::size_t i = 0; i < trace.duty_events.size(); ++i) {
        duties[static_cast<std::size_t>(trace.duty_events[i].zone)] = trace.duty_events[i].duty;
        const bool last_of_group = i + 1 == trace.duty_events.size() ||
                                   trace.duty_events[i + 1].time_s != trace.duty_events[i].time_s;
        if (last_of_group && duties != patterns.back()) patterns.push_back(duties);
    }
    const std::vector<std::vector<int>> expected = {
        {0, 0, 0},       {127, 127, 127}, {255, 127, 127},
        {127, 255, 127}, {127, 127, 255}, {127, 127, 127},
    };
    require(patterns == expected, "zone patterns deviate from the observed sequence");
    require(trace.total_count == 1, "expected exactly one counted vehicle");
}

void golden_fig11() {
    const Scenario scenario = load_scenario(fixture("fig11.scn"));
    const Trace trace = run(scenario);
    require(format_trace(trace) == slurp(fixture("fig11.golden")),
            "trace differs from fig11.golden");

    for (const DutyEvent& event : trace.duty_events)
        require(event.duty == 0 || event.duty == 255,
                "mode B must swing between off and high only");

    // at most one zone lit at any moment
    std::vector<int> duties(3, 0);
    for (const DutyEvent& event : trace.duty_events) {
        duties[static_cast<std::size_t>(event.zone)] = event.duty;
        int lit = 0;
        for (int duty : duties) lit += duty > 0;
        require(lit <= 1, "more than one zone lit at once");
    }

    std::vector<DoorPhase> phases;
    for (const DoorEvent& event : trace.door_events) phases.push_back(event.phase);
    const std::vector<DoorPhase> expected = {DoorPhase::opening, DoorPhase::open,
                                             DoorPhase::closing, DoorPhase::closed};
    require(phases == expected, "door phases deviate from closed-opening-open-closing-closed");
}

void counter_correctness() {
    // constructed scenarios: N well-separated night vehicles -> total == N
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        std::mt19937_64 rng(seed);
        const int zones = 1 + static_cast<int>(rng() % 3);
        const int vehicles = static_cast<int>(rng() % 6);

        std::string text = "mode A\nduration_s " + std::to_string(3.0 + vehicles * 1.5) + "\n";
        for (int i = 0; i < zones; ++i)
            text += "sensor " + std::to_string(1.0 + 0.7 * i) + " 0.15\n";
        for (int i = 0; i < vehicles; ++i)
            text += "vehicle " + std::to_string(0.505 + 1.5 * i) + " 1 0.3\n";

        const Trace trace = run(parse_scenario(text));
        if (trace.total_count != static_cast<std::uint64_t>(vehicles)) {
            require(false, "seed " + std::to_string(seed) + ": total " +
                               std::to_string(trace.total_count) + " != " +
                               std::to_string(vehicles));
            return;
        }
    }

    // exhaustive boolean streams up to length 12 against the run-length oracle
    for (int debounce = 0; debounce <= 3; ++debounce) {
        ControllerConfig config;
        config.debounce_ticks = debounce;
        const int required = debounce < 1 ? 1 : debounce;
        for (int length = 0; length <= 12; ++length) {
            for (std::uint32_t bits = 0; bits < (1u << length); ++bits) {
                CounterState state;
                std::uint64_t expected = 0;
                int run = 0;
                for (int i = 0; i < length; ++i) {
                    const bool detecting = (bits >> i) & 1u;
                    run = detecting ? run + 1 : 0;
                    const bool should_emit = run == required;
                    if (should_emit) ++expected;

                    const CounterUpdate update = update_counter(state, detecting, config);
                    state = update.state;
                    if (update.emitted.has_value() != should_emit) {
                        require(false, "emission mismatch, debounce " +
                                           std::to_string(debounce) + " stream " +
                                           std::to_string(bits));
                        return;
                    }
                }
                if (state.count != expected) {
                    require(false, "count mismatch, debounce " + std::to_string(debounce) +
                                       " stream " + std::to_string(bits));
                    return;
                }
            }
        }
    }
}

void energy_reproduction() {
    const Scenario rho030 = load_scenario(fixture("rho030.scn"));
    const double smart = integrate_trace(run(rho030), rho030.power).total_joules();
    const double baseline = baseline_energy(rho030, rho030.power, Policy::always_on_full);
    const double mode_b_savings = savings(smart, baseline);
    require(std::abs(mode_b_savings - 0.70) <= savings_tolerance,
            "mode B savings " + std::to_string(mode_b_savings) + " not within " +
                std::to_string(savings_tolerance) + " of 0.70");

    // empty road, mode A: the dim floor is the whole bill
    const Scenario idle =
        parse_scenario("mode A\nduration_s 100\nsensor 1.0 0.15\n");
    const double idle_smart = integrate_trace(run(idle), idle.power).total_joules();
    const double idle_baseline = baseline_energy(idle, idle.power, Policy::always_on_full);
    const double mode_a_savings = savings(idle_smart, idle_baseline);
    require(std::abs(mode_a_savings - (1.0 - 127.0 / 255.0)) <= savings_tolerance,
            "mode A dim-floor savings " + std::to_string(mode_a_savings) + " off");

    // integrated ledger vs closed form d + (1 - d) * rho
    for (const Scenario* scenario : {&rho030, &idle}) {
        Scenario mode_a = *scenario;
        mode_a.config.mode = Mode::a;
        const Trace trace = run(mode_a);
        const double energy = integrate_trace(trace, mode_a.power).total_joules();
        const double full = baseline_energy(mode_a, mode_a.power, Policy::always_on_full);

        double high_s = 0.0;
        for (const ZoneOccupancy& zone : trace.occupancy) high_s += zone.high_s;
        const double rho = high_s / (night_seconds(mode_a) * mode_a.config.zone_count);
        const double d =
            static_cast<double>(mode_a.config.dim_duty.duty()) / mode_a.config.high_duty.duty();
        const double predicted = full * (d + (1.0 - d) * rho);
        require(std::abs(energy - predicted) <= closed_form_rel_tolerance * predicted,
                "closed form off: ledger " + std::to_string(energy) + " vs " +
                    std::to_string(predicted));
    }
}

void dense_oracle_equivalence() {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const Scenario scenario = random_scenario(seed);
        const Trace trace = run(scenario);

        Reference ref;
        ref.duties.assign(static_cast<std::size_t>(scenario.config.zone_count), 0);
        ref.linger.assign(static_cast<std::size_t>(scenario.config.zone_count), 0);

        std::vector<int> shadow(static_cast<std::size_t>(scenario.config.zone_count), 0);
        std::size_t next_event = 0;
        const std::uint64_t ticks = tick_count(scenario);
        const double tick_s = scenario.tick_ms / 1000.0;

        for (std::uint64_t tick = 0; tick < ticks; ++tick) {
            const double now = static_cast<double>(tick) * scenario.tick_ms / 1000.0;
            reference_tick(ref, scenario, now);

            while (next_event < trace.duty_events.size() &&
                   trace.duty_events[next_event].time_s <= now + tick_s / 2) {
                shadow[static_cast<std::size_t>(trace.duty_events[next_event].zone)] =
                    trace.duty_events[next_event].duty;
                ++next_event;
            }
            if (shadow != ref.duties) {
                require(false, "seed " + std::to_string(seed) + ": duties diverge at t=" +
                                   std::to_string(now));
                return;
            }
        }

        require(next_event == trace.duty_events.size(),
                "seed " + std::to_string(seed) + ": trace has events past the end");
        if (trace.total_count != ref.count) {
            require(false, "seed " + std::to_string(seed) + ": count " +
                               std::to_string(trace.total_count) + " vs reference " +
                               std::to_string(ref.count));
            return;
        }
        const DoorPhase final_phase =
            trace.door_events.empty() ? DoorPhase::closed : trace.door_events.back().phase;
        if (scenario.config.has_door && final_phase != ref.door) {
            require(false, "seed " + std::to_string(seed) + ": door " +
                               to_string(final_phase) + " vs reference " + to_string(ref.door));
            return;
        }
    }
}

void invariant_suite() {
    std::mt19937_64 rng(2024);
    auto pick = [&](int lo, int hi) { return lo + static_cast<int>(rng() % (hi - lo + 1)); };

    // day dominance: bright readings force every zone off, whatever the ir says
    for (int i = 0; i < 1000; ++i) {
        ControllerConfig config;
        config.mode = rng() & 1 ? Mode::a : Mode::b;
        config.zone_count = pick(1, 4);
        config.hysteresis = pick(0, 5);
        config.threshold = pick(1, 900);

        ControllerState state = ControllerState::initial(config);
        state.day_night = rng() & 1 ? DayNight::day : DayNight::night;
        std::vector<LogicLevel> levels;
        for (int z = 0; z < config.zone_count; ++z)
            levels.push_back(rng() & 1 ? LogicLevel::low : LogicLevel::high);

        const AdcValue bright(pick(config.threshold + config.hysteresis, 1023));
        const StepResult step = controller_step(state, bright, levels, 0.0, config);
        for (const PwmDuty& duty : step.duties)
            if (duty.duty() != 0) {
                require(false, "day dominance violated at case " + std::to_string(i));
                return;
            }
    }

    // mode A night floor: nothing is ever fully dark at night
    for (int i = 0; i < 1000; ++i) {
        ControllerConfig config;
        config.zone_count = pick(1, 4);
        config.hysteresis = pick(0, 5);
        config.threshold = pick(6, 900);

        ControllerState state = ControllerState::initial(config);
        state.day_night = rng() & 1 ? DayNight::day : DayNight::night;
        std::vector<LogicLevel> levels;
        for (int z = 0; z < config.zone_count; ++z)
            levels.push_back(rng() & 1 ? LogicLevel::low : LogicLevel::high);

        const AdcValue dark(pick(0, config.threshold - config.hysteresis - 1));
        const StepResult step = controller_step(state, dark, levels, 0.0, config);
        for (const PwmDuty& duty : step.duties)
            if (duty.duty() == 0) {
                require(false, "mode A floor violated at case " + std::to_string(i));
                return;
            }
    }

    // range guards on the value types
    for (int i = 0; i < 1000; ++i) {
        const int duty = pick(-100, 400);
        bool threw = false;
        try {
            PwmDuty probe(duty);
        } catch (const OutOfRange&) {
            threw = true;
        }
        if (threw != (duty < 0 || duty > 255)) {
            require(false, "PwmDuty range guard wrong for " + std::to_string(duty));
            return;
        }

        const int counts = pick(-100, 1200);
        threw = false;
        try {
            AdcValue probe(counts);
        } catch (const OutOfRange&) {
            threw = true;
        }
        if (threw != (counts < 0 || counts > 1023)) {
            require(false, "AdcValue range guard wrong for " + std::to_string(counts));
            return;
        }
    }

    // ldr monotonicity
    for (int i = 0; i < 1000; ++i) {
        LdrModel model;
        model.darkness_floor_lux = pick(0, 100);
        model.saturation_lux = model.darkness_floor_lux + pick(100, 20000);
        model.curve_exponent = pick(1, 40) / 10.0;
        const double lux_a = pick(0, 25000);
        const double lux_b = lux_a + pick(0, 5000);
        if (ldr_adc(model, lux_a).counts() > ldr_adc(model, lux_b).counts()) {
            require(false, "ldr monotonicity violated at case " + std::to_string(i));
            return;
        }
    }

    // door shoot-through guard over arbitrary single steps
    for (int i = 0; i < 1000; ++i) {
        ControllerConfig config;
        config.door_open_ticks = pick(1, 60);
        config.door_close_ticks = pick(1, 60);

        DoorState door;
        switch (rng() % 4) {
            case 0: door = DoorState{DoorPhase::closed, 0}; break;
            case 1: door = DoorState{DoorPhase::open, 0}; break;
            case 2: door = DoorState{DoorPhase::opening, pick(1, config.door_open_ticks)}; break;
            default: door = DoorState{DoorPhase::closing, pick(1, config.door_close_ticks)}; break;
        }
        const DoorUpdate update = update_door(door, rng() & 1, config);
        if (update.command.in1 == LogicLevel::high && update.command.in2 == LogicLevel::high &&
            update.command.enable) {
            require(false, "shoot-through commanded at case " + std::to_string(i));
            return;
        }
    }

    // determinism: identical runs hash identically
    for (std::uint64_t i = 0; i < 1000; ++i) {
        Scenario scenario;
        scenario.duration_s = 1.0 + static_cast<double>(rng() % 200) / 100.0;
        scenario.config.mode = rng() & 1 ? Mode::a : Mode::b;
        IrSensor sensor;
        sensor.position_m = 1.0;
        scenario.sensors.push_back(sensor);
        scenario.config.zone_count = 1;
        scenario.sun = DiurnalProfile::constant(rng() & 1 ? 0.0 : 5000.0);
        const int vehicles = static_cast<int>(rng() % 3);
        for (int v = 0; v < vehicles; ++v)
            scenario.vehicles.push_back(
                Vehicle{static_cast<double>(rng() % 100) / 100.0, 1.0, 0.3, 0.10, true});

        const std::uint64_t first = fnv1a(format_trace(run(scenario)));
        const std::uint64_t second = fnv1a(format_trace(run(scenario)));
        if (first != second) {
            require(false, "determinism hash mismatch at case " + std::to_string(i));
            return;
        }
    }
}

}  // namespace

int main() {
    criterion(1, "fig8 golden trace, mode A zone sweep", 1.0, golden_fig8);
    criterion(2, "fig11 golden trace, mode B with door", 1.0, golden_fig11);
    criterion(3, "counter correctness, constructed and exhaustive", 10.0, counter_correctness);
    criterion(4, "energy savings reproduction", 1.0, energy_reproduction);
    criterion(5, "dense-oracle equivalence on random scenarios", 5.0, dense_oracle_equivalence);
    criterion(6, "invariant suite at 1000 cases", 30.0, invariant_suite);

    if (failures != 0) {
        std::printf("%d criterion(s) failed\n", failures);
        return 1;
    }
    std::printf("all acceptance criteria hold\n");
    return 0;
}
