#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lumen/board.hpp"

namespace lumen {

enum class Mode { a, b };
enum class DayNight { day, night };
enum class ZonePower { off, dim, high };
enum class DoorPhase { closed, opening, open, closing };

std::string to_string(DoorPhase phase);
std::string to_string(ZonePower power);

struct ControllerConfig {
    Mode mode = Mode::a;
    int threshold = 10;  // adc counts; reading >= threshold is day
    int zone_count = 3;
    PwmDuty dim_duty{127};
    PwmDuty high_duty{255};
    int linger_ticks = 0;
    int debounce_ticks = 1;
    int hysteresis = 0;  // half-band around the day/night threshold
    int door_open_ticks = 50;
    int door_close_ticks = 50;
    int counting_sensor = 0;
    bool count_night_only = true;
    bool has_door = false;
    LogicLevel active_level = LogicLevel::low;  // IR level meaning "detecting"
};

struct ZoneState {
    ZonePower power = ZonePower::off;
    int linger_remaining = 0;

    friend bool operator==(const ZoneState& a, const ZoneState& b) {
        return a.power == b.power && a.linger_remaining == b.linger_remaining;
    }
};

struct CounterState {
    std::uint64_t count = 0;
    bool previous_detection = false;
    int stable_ticks = 0;
};

struct DoorState {
    DoorPhase phase = DoorPhase::closed;
    int phase_ticks_remaining = 0;  // > 0 iff phase is opening or closing

    friend bool operator==(const DoorState& a, const DoorState& b) {
        return a.phase == b.phase && a.phase_ticks_remaining == b.phase_ticks_remaining;
    }
};

/// H-bridge command triple. in1 = in2 = high with enable set is never built.
struct MotorCommand {
    LogicLevel in1 = LogicLevel::low;
    LogicLevel in2 = LogicLevel::low;
    bool enable = false;

    static MotorCommand open_drive() { return {LogicLevel::high, LogicLevel::low, true}; }
    static MotorCommand close_drive() { return {LogicLevel::low, LogicLevel::high, true}; }
    static MotorCommand hold() { return {LogicLevel::low, LogicLevel::low, false}; }

    friend bool operator==(const MotorCommand& a, const MotorCommand& b) {
        return a.in1 == b.in1 && a.in2 == b.in2 && a.enable == b.enable;
    }
};

/// Night iff reading < threshold; ties go to day.
DayNight classify_day_night(AdcValue reading, const ControllerConfig& config);

/// Stateful variant honouring the hysteresis half-band. Collapses to the
/// stateless rule when the band is zero.
DayNight classify_day_night(AdcValue reading, DayNight previous, const ControllerConfig& config);

/// Mode A: night baseline dim, high while detected (plus linger).
std::vector<ZoneState> update_zones_mode_a(DayNight daynight, const std::vector<bool>& detections,
                                           const std::vector<ZoneState>& states,
                                           const ControllerConfig& config);

/// Mode B: night baseline off, high while detected (plus linger).
std::vector<ZoneState> update_zones_mode_b(DayNight daynight, const std::vector<bool>& detections,
                                           const std::vector<ZoneState>& states,
                                           const ControllerConfig& config);

struct CounterUpdate {
    CounterState state;
    std::optional<std::uint64_t> emitted;  // new count, on an accepted rising edge
};

/// Debounced rising-edge counter. An edge is accepted once the detection has
/// been sustained for debounce_ticks consecutive updates; falling edges and
/// sustained levels emit nothing.
CounterUpdate update_counter(const CounterState& state, bool detecting,
                             const ControllerConfig& config);

struct DoorUpdate {
    DoorState state;
    MotorCommand command;
};

/// One tick of the automatic door. Entering a moving phase consumes one
/// movement tick, so holding a detection for door_open_ticks updates reaches
/// open. Detection while closing reverses with proportional travel; updates
/// that rest in a terminal phase emit the hold command.
DoorUpdate update_door(const DoorState& door, bool vehicle_at_door, const ControllerConfig& config);

struct ControllerState {
    DayNight day_night = DayNight::day;
    std::vector<ZoneState> zones;
    CounterState counter;
    DoorState door;

    static ControllerState initial(const ControllerConfig& config) {
        ControllerState state;
        state.zones.resize(static_cast<std::size_t>(config.zone_count));
        return state;
    }
};

struct StepResult {
    ControllerState state;
    std::vector<PwmDuty> duties;  // one per zone
    MotorCommand motor;
    std::vector<std::string> serial;  // wire-format emissions
};

/// Full per-cycle composition: classification, zone switching, vehicle
/// counting on the designated sensor and the door when configured.
/// ir_levels holds one level per zone, plus the door sensor level last
/// when a door is configured.
StepResult controller_step(const ControllerState& state, AdcValue adc,
                           const std::vector<LogicLevel>& ir_levels, double time_s,
                           const ControllerConfig& config);

/// The `t=<seconds> count=<n>` wire line for counter emissions.
std::string format_count_line(double time_s, std::uint64_t count);

}  // namespace lumen
