#include "lumen/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace lumen {

std::uint64_t tick_count(const Scenario& scenario) {
    const double ticks = scenario.duration_s * 1000.0 / scenario.tick_ms;
    return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::llround(ticks)));
}

namespace {

// Vehicles whose rear has passed this point can no longer matter.
double road_end_m(const Scenario& scenario) {
    double end = 0.0;
    for (const IrSensor& sensor : scenario.sensors)
        end = std::max(end, sensor.position_m + sensor.window_m);
    if (scenario.door_sensor)
        end = std::max(end, scenario.door_sensor->position_m + scenario.door_sensor->window_m);
    return end + 1.0;
}

std::vector<ObjectSpan> active_spans(const std::vector<Vehicle>& vehicles, double time_s,
                                     double road_end, bool authorized_only) {
    std::vector<ObjectSpan> spans;
    for (const Vehicle& vehicle : vehicles) {
        if (authorized_only && !vehicle.authorized) continue;
        const std::optional<ObjectSpan> span = vehicle_span(vehicle, time_s);
        if (!span) continue;
        if (span->front_m - span->length_m > road_end) continue;
        spans.push_back(*span);
    }
    return spans;
}

}  // namespace

Trace run(const Scenario& scenario) {
    const int zone_count = scenario.config.zone_count;
    const double road_end = road_end_m(scenario);

    Board board(scenario.tick_ms);
    const PinId ldr_pin = board.configure_pin(PinRole::ldr_analog, 0, "A0");
    const PinId motor_in1 = board.configure_pin(PinRole::motor_in1, 0, "IN1");
    const PinId motor_in2 = board.configure_pin(PinRole::motor_in2, 0, "IN2");
    const PinId motor_enable = board.configure_pin(PinRole::motor_enable, 0, "ENB");

    board.attach_analog_source(ldr_pin, [&scenario](const SimClock& clock) {
        return ldr_adc(scenario.ldr, scenario.sun.lux_at(clock.time_s()));
    });

    std::vector<PinId> ir_pins;
    for (int i = 0; i < zone_count; ++i) {
        PinId pin = board.configure_pin(PinRole::ir_digital, i, "IR" + std::to_string(i));
        const IrSensor& sensor = scenario.sensors[static_cast<std::size_t>(i)];
        board.attach_digital_source(pin, [&scenario, &sensor, road_end](const SimClock& clock) {
            return ir_output(sensor,
                             active_spans(scenario.vehicles, clock.time_s(), road_end, false));
        });
        ir_pins.push_back(std::move(pin));
    }
    if (scenario.door_sensor) {
        PinId pin = board.configure_pin(PinRole::ir_digital, zone_count, "IRDOOR");
        // The door answers to authorized vehicles only.
        board.attach_digital_source(pin, [&scenario, road_end](const SimClock& clock) {
            return ir_output(*scenario.door_sensor,
                             active_spans(scenario.vehicles, clock.time_s(), road_end, true));
        });
        ir_pins.push_back(std::move(pin));
    }

    std::vector<PinId> lamp_pins;
    for (int i = 0; i < zone_count; ++i)
        lamp_pins.push_back(board.configure_pin(PinRole::lamp_pwm, i, "LAMP" + std::to_string(i)));

    Trace trace;
    trace.zone_count = zone_count;
    trace.duration_s = scenario.duration_s;
    trace.occupancy.resize(static_cast<std::size_t>(zone_count));

    ControllerState state = ControllerState::initial(scenario.config);
    DoorPhase recorded_phase = state.door.phase;
    const double tick_s = board.clock().tick_s();
    const std::uint64_t ticks = tick_count(scenario);

    for (std::uint64_t tick = 0; tick < ticks; ++tick) {
        const double now = board.clock().time_s();

        const AdcValue adc = board.analog_read(ldr_pin);
        std::vector<LogicLevel> ir_levels;
        ir_levels.reserve(ir_pins.size());
        for (const PinId& pin : ir_pins) ir_levels.push_back(board.digital_read(pin));

        StepResult step = controller_step(state, adc, ir_levels, now, scenario.config);
        state = std::move(step.state);

        for (int i = 0; i < zone_count; ++i)
            board.pwm_write(lamp_pins[static_cast<std::size_t>(i)],
                            step.duties[static_cast<std::size_t>(i)]);
        board.digital_write(motor_in1, step.motor.in1);
        board.digital_write(motor_in2, step.motor.in2);
        board.digital_write(motor_enable,
                            step.motor.enable ? LogicLevel::high : LogicLevel::low);
        if (state.door.phase != recorded_phase) {
            recorded_phase = state.door.phase;
            trace.door_events.push_back(DoorEvent{now, recorded_phase});
        }
        for (const std::string& line : step.serial) board.serial_print(line);

        for (int i = 0; i < zone_count; ++i) {
            ZoneOccupancy& bucket = trace.occupancy[static_cast<std::size_t>(i)];
            switch (state.zones[static_cast<std::size_t>(i)].power) {
                case ZonePower::off: bucket.off_s += tick_s; break;
                case ZonePower::dim: bucket.dim_s += tick_s; break;
                case ZonePower::high: bucket.high_s += tick_s; break;
            }
        }

        board.advance(1);
    }

    trace.total_count = state.counter.count;
    board.serial_print("total=" + std::to_string(trace.total_count));

    for (const DutySample& sample : board.duty_trace())
        trace.duty_events.push_back(DutyEvent{
            static_cast<double>(sample.tick) * scenario.tick_ms / 1000.0, sample.pin_index,
            sample.duty});
    trace.serial_lines = board.serial_log();
    return trace;
}

namespace {

std::string format_time(double time_s) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", time_s);
    return buf;
}

}  // namespace

std::string format_trace(const Trace& trace) {
    struct Record {
        double time_s;
        int rank;  // ties within a tick: duty, then door, then serial
        std::string text;
    };
    std::vector<Record> records;
    records.reserve(trace.duty_events.size() + trace.door_events.size() +
                    trace.serial_lines.size());

    for (const DutyEvent& event : trace.duty_events)
        records.push_back({event.time_s, 0,
                           format_time(event.time_s) + "\tduty\tzone=" +
                               std::to_string(event.zone) + " duty=" +
                               std::to_string(event.duty)});
    for (const DoorEvent& event : trace.door_events)
        records.push_back({event.time_s, 1,
                           format_time(event.time_s) + "\tdoor\t" + to_string(event.phase)});
    for (const SerialLine& line : trace.serial_lines)
        records.push_back({line.time_s, 2,
                           format_time(line.time_s) + "\tserial\t" + line.text});

    std::stable_sort(records.begin(), records.end(), [](const Record& a, const Record& b) {
        if (a.time_s != b.time_s) return a.time_s < b.time_s;
        return a.rank < b.rank;
    });

    std::string out;
    for (const Record& record : records) {
        out += record.text;
        out += '\n';
    }
    out += "total=" + std::to_string(trace.total_count) + "\n";
    return out;
}

}  // namespace lumen
