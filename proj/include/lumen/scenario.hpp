#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lumen/controller.hpp"
#include "lumen/energy.hpp"
#include "lumen/sensors.hpp"

namespace lumen {

/// Moving obstacle on the 1-D road. The front sits at
/// speed_mps * (t - enter_time_s) once the vehicle has entered.
struct Vehicle {
    double enter_time_s = 0.0;
    double speed_mps = 1.0;
    double length_m = 0.3;
    double lateral_offset_m = 0.10;
    bool authorized = true;
};

std::optional<ObjectSpan> vehicle_span(const Vehicle& vehicle, double time_s);

struct Scenario {
    ControllerConfig config;
    int tick_ms = 10;
    double duration_s = 60.0;
    std::vector<IrSensor> sensors;  // position strictly increasing
    std::optional<IrSensor> door_sensor;
    LdrModel ldr;
    DiurnalProfile sun = DiurnalProfile::constant(0.0);
    std::vector<Vehicle> vehicles;  // sorted by enter_time_s
    std::uint64_t seed = 0;
    PowerModel power;
};

/// Parses the line-oriented scenario grammar. Unknown keys, duplicate
/// singular keys and malformed lines raise SyntaxError with the line number;
/// semantic violations raise ValidationError naming the offending key.
Scenario parse_scenario(const std::string& text);

Scenario load_scenario(const std::string& path);

/// Seeded exponential inter-arrival traffic. Deterministic per seed across
/// platforms; the 53-bit uniform draw is built directly from mt19937_64
/// output rather than a distribution adapter.
std::vector<Vehicle> generate_traffic(std::uint64_t seed, double rate_per_hour, double duration_s,
                                      double speed_mps, double length_m);

}  // namespace lumen
