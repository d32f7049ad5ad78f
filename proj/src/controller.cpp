#include "lumen/controller.hpp"

#include <algorithm>
#include <cstdio>

namespace lumen {

std::string to_string(DoorPhase phase) {
    switch (phase) {
        case DoorPhase::closed: return "closed";
        case DoorPhase::opening: return "opening";
        case DoorPhase::open: return "open";
        case DoorPhase::closing: return "closing";
    }
    return "?";
}

std::string to_string(ZonePower power) {
    switch (power) {
        case ZonePower::off: return "off";
        case ZonePower::dim: return "dim";
        case ZonePower::high: return "high";
    }
    return "?";
}

DayNight classify_day_night(AdcValue reading, const ControllerConfig& config) {
    return reading.counts() >= config.threshold ? DayNight::day : DayNight::night;
}

DayNight classify_day_night(AdcValue reading, DayNight previous, const ControllerConfig& config) {
    if (config.hysteresis == 0) return classify_day_night(reading, config);
    if (previous == DayNight::night)
        return reading.counts() >= config.threshold + config.hysteresis ? DayNight::day
                                                                        : DayNight::night;
    return reading.counts() < config.threshold - config.hysteresis ? DayNight::night
                                                                   : DayNight::day;
}

namespace {

std::vector<ZoneState> update_zones(DayNight daynight, const std::vector<bool>& detections,
                                    const std::vector<ZoneState>& states, ZonePower baseline,
                                    const ControllerConfig& config) {
    const auto zone_count = static_cast<std::size_t>(config.zone_count);
    if (detections.size() != zone_count || states.size() != zone_count)
        throw LengthMismatch("expected " + std::to_string(config.zone_count) +
                             " detections and zone states");

    std::vector<ZoneState> next(zone_count);
    if (daynight == DayNight::day) return next;  // all off, lingers cleared

    for (std::size_t i = 0; i < zone_count; ++i) {
        if (detections[i]) {
            next[i] = ZoneState{ZonePower::high, config.linger_ticks};
        } else if (states[i].linger_remaining > 0) {
            next[i] = ZoneState{ZonePower::high, states[i].linger_remaining - 1};
        } else {
            next[i] = ZoneState{baseline, 0};
        }
    }
    return next;
}

}  // namespace

std::vector<ZoneState> update_zones_mode_a(DayNight daynight, const std::vector<bool>& detections,
                                           const std::vector<ZoneState>& states,
                                           const ControllerConfig& config) {
    return update_zones(daynight, detections, states, ZonePower::dim, config);
}

std::vector<ZoneState> update_zones_mode_b(DayNight daynight, const std::vector<bool>& detections,
                                           const std::vector<ZoneState>& states,
                                           const ControllerConfig& config) {
    return update_zones(daynight, detections, states, ZonePower::off, config);
}

CounterUpdate update_counter(const CounterState& state, bool detecting,
                             const ControllerConfig& config) {
    const int required = std::max(1, config.debounce_ticks);
    CounterState next = state;
    if (!detecting) {
        next.stable_ticks = 0;
        next.previous_detection = false;
        return {next, std::nullopt};
    }
    if (next.stable_ticks < required) ++next.stable_ticks;
    if (!next.previous_detection && next.stable_ticks >= required) {
        next.previous_detection = true;
        ++next.count;
        return {next, next.count};
    }
    return {next, std::nullopt};
}

namespace {

// One movement tick; flips to the terminal phase when travel completes.
void advance_door(DoorState& door) {
    --door.phase_ticks_remaining;
    if (door.phase_ticks_remaining == 0)
        door.phase = door.phase == DoorPhase::opening ? DoorPhase::open : DoorPhase::closed;
}

}  // namespace

DoorUpdate update_door(const DoorState& door, bool vehicle_at_door,
                       const ControllerConfig& config) {
    DoorState next = door;
    switch (door.phase) {
        case DoorPhase::closed:
            if (vehicle_at_door) {
                next = DoorState{DoorPhase::opening, config.door_open_ticks};
                advance_door(next);
            }
            break;
        case DoorPhase::opening:
            advance_door(next);
            break;
        case DoorPhase::open:
            if (!vehicle_at_door) {
                next = DoorState{DoorPhase::closing, config.door_close_ticks};
                advance_door(next);
            }
            break;
        case DoorPhase::closing:
            if (vehicle_at_door) {
                // Reverse: reopening travel is proportional to how far the
                // door has closed.
                const int closed_ticks = config.door_close_ticks - door.phase_ticks_remaining;
                const int reopen = (config.door_open_ticks * closed_ticks +
                                    config.door_close_ticks / 2) /
                                   config.door_close_ticks;
                if (reopen <= 0) {
                    next = DoorState{DoorPhase::open, 0};
                } else {
                    next = DoorState{DoorPhase::opening, reopen};
                    advance_door(next);
                }
            } else {
                advance_door(next);
            }
            break;
    }

    // Drive while travelling (including the tick that completes travel);
    // resting in a terminal phase holds.
    MotorCommand command = MotorCommand::hold();
    if (next.phase == DoorPhase::opening ||
        (next.phase == DoorPhase::open && door.phase != DoorPhase::open))
        command = MotorCommand::open_drive();
    else if (next.phase == DoorPhase::closing ||
             (next.phase == DoorPhase::closed && door.phase != DoorPhase::closed))
        command = MotorCommand::close_drive();
    return {next, command};
}

std::string format_count_line(double time_s, std::uint64_t count) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "t=%.3f count=%llu", time_s,
                  static_cast<unsigned long long>(count));
    return buf;
}

StepResult controller_step(const ControllerState& state, AdcValue adc,
                           const std::vector<LogicLevel>& ir_levels, double time_s,
                           const ControllerConfig& config) {
    const auto zone_count = static_cast<std::size_t>(config.zone_count);
    const std::size_t expected = zone_count + (config.has_door ? 1 : 0);
    if (ir_levels.size() != expected)
        throw LengthMismatch("expected " + std::to_string(expected) + " ir levels, got " +
                             std::to_string(ir_levels.size()));

    StepResult result;
    result.state = state;
    result.state.day_night = classify_day_night(adc, state.day_night, config);
    const bool night = result.state.day_night == DayNight::night;

    std::vector<bool> detections(zone_count);
    for (std::size_t i = 0; i < zone_count; ++i)
        detections[i] = ir_levels[i] == config.active_level;

    result.state.zones = config.mode == Mode::a
                             ? update_zones_mode_a(result.state.day_night, detections,
                                                   state.zones, config)
                             : update_zones_mode_b(result.state.day_night, detections,
                                                   state.zones, config);

    result.duties.reserve(zone_count);
    for (const ZoneState& zone : result.state.zones) {
        switch (zone.power) {
            case ZonePower::off: result.duties.push_back(PwmDuty(0)); break;
            case ZonePower::dim: result.duties.push_back(config.dim_duty); break;
            case ZonePower::high: result.duties.push_back(config.high_duty); break;
        }
    }

    // The counter observes its sensor only while counting is enabled; the
    // night gate makes daytime traffic invisible to it.
    bool counting_detection = false;
    if (config.counting_sensor >= 0 &&
        static_cast<std::size_t>(config.counting_sensor) < zone_count &&
        (night || !config.count_night_only))
        counting_detection = detections[static_cast<std::size_t>(config.counting_sensor)];
    CounterUpdate counted = update_counter(state.counter, counting_detection, config);
    result.state.counter = counted.state;
    if (counted.emitted) result.serial.push_back(format_count_line(time_s, *counted.emitted));

    result.motor = MotorCommand::hold();
    if (config.has_door) {
        const bool vehicle_at_door = ir_levels[zone_count] == config.active_level;
        DoorUpdate door = update_door(state.door, vehicle_at_door, config);
        result.state.door = door.state;
        result.motor = door.command;
    }
    return result;
}

}  // namespace lumen
