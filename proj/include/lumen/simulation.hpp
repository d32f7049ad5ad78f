#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lumen/controller.hpp"
#include "lumen/scenario.hpp"

namespace lumen {

struct DutyEvent {
    double time_s;
    int zone;
    int duty;
};

struct DoorEvent {
    double time_s;
    DoorPhase phase;
};

struct ZoneOccupancy {
    double off_s = 0.0;
    double dim_s = 0.0;
    double high_s = 0.0;
};

/// Full record of one run: change events, serial stream, final counter and
/// per-zone power-state occupancy.
struct Trace {
    int zone_count = 0;
    double duration_s = 0.0;
    std::vector<DutyEvent> duty_events;
    std::vector<DoorEvent> door_events;
    std::vector<SerialLine> serial_lines;
    std::uint64_t total_count = 0;
    std::vector<ZoneOccupancy> occupancy;
};

/// Runs the closed loop: each tick evaluates daylight and vehicle geometry
/// through the board's attached sensor models, steps the controller, and
/// records changes. Identical scenarios produce byte-identical traces.
Trace run(const Scenario& scenario);

/// Tab-separated export: `time\tkind\tdetail` per change event in emission
/// order, with kinds duty, door and serial, then a final `total=<n>` line.
std::string format_trace(const Trace& trace);

/// Number of controller ticks a scenario spans.
std::uint64_t tick_count(const Scenario& scenario);

}  // namespace lumen
