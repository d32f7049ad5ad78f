#include "lumen/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

namespace lumen {

std::optional<ObjectSpan> vehicle_span(const Vehicle& vehicle, double time_s) {
    if (time_s < vehicle.enter_time_s) return std::nullopt;
    const double front = vehicle.speed_mps * (time_s - vehicle.enter_time_s);
    return ObjectSpan{front, vehicle.length_m, vehicle.lateral_offset_m};
}

std::vector<Vehicle> generate_traffic(std::uint64_t seed, double rate_per_hour, double duration_s,
                                      double speed_mps, double length_m) {
    if (rate_per_hour < 0.0) throw NegativeRate("traffic rate must be non-negative");
    std::vector<Vehicle> vehicles;
    if (rate_per_hour == 0.0 || duration_s <= 0.0) return vehicles;

    std::mt19937_64 rng(seed);
    const double rate_per_s = rate_per_hour / 3600.0;
    double t = 0.0;
    for (;;) {
        // 53-bit uniform in (0, 1], then inverse-CDF exponential.
        const double u = (static_cast<double>(rng() >> 11) + 1.0) / 9007199254740992.0;
        t += -std::log(u) / rate_per_s;
        if (t >= duration_s) break;
        vehicles.push_back(Vehicle{t, speed_mps, length_m});
    }
    return vehicles;
}

namespace {

struct LineParser {
    int line_number;
    std::string key;
    std::vector<std::string> args;

    double number(std::size_t i, const std::string& name) const {
        const std::string& raw = args.at(i);
        std::size_t consumed = 0;
        double value = 0.0;
        try {
            value = std::stod(raw, &consumed);
        } catch (const std::exception&) {
            throw SyntaxError(line_number, key + ": '" + raw + "' is not a number (" + name + ")");
        }
        if (consumed != raw.size())
            throw SyntaxError(line_number, key + ": '" + raw + "' is not a number (" + name + ")");
        return value;
    }

    int integer(std::size_t i, const std::string& name) const {
        const double value = number(i, name);
        if (value != std::floor(value))
            throw SyntaxError(line_number, key + ": " + name + " must be an integer");
        return static_cast<int>(value);
    }

    void expect_args(std::size_t n) const {
        if (args.size() != n)
            throw SyntaxError(line_number, key + " expects " + std::to_string(n) +
                                               " argument(s), got " + std::to_string(args.size()));
    }
};

struct TrafficSpec {
    std::uint64_t seed;
    double rate_per_hour;
    double speed_mps;
    double length_m;
};

}  // namespace

Scenario parse_scenario(const std::string& text) {
    Scenario scenario;
    std::vector<std::string> seen;  // singular keys already consumed
    std::optional<TrafficSpec> traffic;
    std::vector<std::pair<double, double>> sun_points;

    auto singular = [&](const LineParser& p) {
        if (std::find(seen.begin(), seen.end(), p.key) != seen.end())
            throw SyntaxError(p.line_number, "duplicate key '" + p.key + "'");
        seen.push_back(p.key);
    };

    std::istringstream stream(text);
    std::string raw;
    int line_number = 0;
    while (std::getline(stream, raw)) {
        ++line_number;
        const std::size_t hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);

        std::istringstream words(raw);
        LineParser p{line_number, {}, {}};
        if (!(words >> p.key)) continue;  // blank or comment-only line
        for (std::string word; words >> word;) p.args.push_back(word);

        if (p.key == "mode") {
            singular(p);
            p.expect_args(1);
            if (p.args[0] == "A") scenario.config.mode = Mode::a;
            else if (p.args[0] == "B") scenario.config.mode = Mode::b;
            else throw SyntaxError(line_number, "mode must be A or B");
        } else if (p.key == "tick_ms") {
            singular(p);
            p.expect_args(1);
            scenario.tick_ms = p.integer(0, "tick_ms");
            if (scenario.tick_ms <= 0) throw ValidationError("tick_ms", "must be positive");
        } else if (p.key == "duration_s") {
            singular(p);
            p.expect_args(1);
            scenario.duration_s = p.number(0, "duration_s");
            if (scenario.duration_s <= 0.0) throw ValidationError("duration_s", "must be positive");
        } else if (p.key == "ldr_threshold") {
            singular(p);
            p.expect_args(1);
            scenario.config.threshold = p.integer(0, "threshold");
            if (scenario.config.threshold < 0 || scenario.config.threshold > AdcValue::max_counts)
                throw ValidationError("ldr_threshold", "must lie within 0-1023");
        } else if (p.key == "dim_duty") {
            singular(p);
            p.expect_args(1);
            const int duty = p.integer(0, "dim_duty");
            if (duty < 0 || duty > PwmDuty::max_duty)
                throw ValidationError("dim_duty", "must lie within 0-255");
            scenario.config.dim_duty = PwmDuty(duty);
        } else if (p.key == "high_duty") {
            singular(p);
            p.expect_args(1);
            const int duty = p.integer(0, "high_duty");
            if (duty < 0 || duty > PwmDuty::max_duty)
                throw ValidationError("high_duty", "must lie within 0-255");
            scenario.config.high_duty = PwmDuty(duty);
        } else if (p.key == "linger_ticks") {
            singular(p);
            p.expect_args(1);
            scenario.config.linger_ticks = p.integer(0, "linger_ticks");
            if (scenario.config.linger_ticks < 0)
                throw ValidationError("linger_ticks", "must be non-negative");
        } else if (p.key == "sensor") {
            p.expect_args(2);
            IrSensor sensor;
            sensor.position_m = p.number(0, "position_m");
            sensor.window_m = p.number(1, "window_m");
            if (sensor.window_m <= 0.0) throw ValidationError("sensor", "window must be positive");
            if (!scenario.sensors.empty() &&
                sensor.position_m <= scenario.sensors.back().position_m)
                throw ValidationError("sensor", "positions must be strictly increasing");
            scenario.sensors.push_back(sensor);
        } else if (p.key == "door_sensor") {
            singular(p);
            p.expect_args(2);
            IrSensor sensor;
            sensor.position_m = p.number(0, "position_m");
            sensor.window_m = p.number(1, "window_m");
            if (sensor.window_m <= 0.0)
                throw ValidationError("door_sensor", "window must be positive");
            scenario.door_sensor = sensor;
        } else if (p.key == "sun") {
            p.expect_args(2);
            const double time_s = p.number(0, "time_s");
            const double lux = p.number(1, "lux");
            if (lux < 0.0) throw ValidationError("sun", "lux must be non-negative");
            if (!sun_points.empty() && time_s <= sun_points.back().first)
                throw ValidationError("sun", "times must be strictly increasing");
            sun_points.emplace_back(time_s, lux);
        } else if (p.key == "ldr") {
            singular(p);
            p.expect_args(3);
            scenario.ldr.darkness_floor_lux = p.number(0, "floor_lux");
            scenario.ldr.saturation_lux = p.number(1, "saturation_lux");
            scenario.ldr.curve_exponent = p.number(2, "exponent");
            if (scenario.ldr.darkness_floor_lux >= scenario.ldr.saturation_lux)
                throw ValidationError("ldr", "floor must be below saturation");
            if (scenario.ldr.curve_exponent <= 0.0)
                throw ValidationError("ldr", "exponent must be positive");
        } else if (p.key == "vehicle") {
            if (p.args.size() != 3 && p.args.size() != 4)
                throw SyntaxError(line_number, "vehicle expects 3 arguments plus optional "
                                               "'unauthorized'");
            Vehicle vehicle;
            vehicle.enter_time_s = p.number(0, "enter_time_s");
            vehicle.speed_mps = p.number(1, "speed_mps");
            vehicle.length_m = p.number(2, "length_m");
            if (p.args.size() == 4) {
                if (p.args[3] != "unauthorized")
                    throw SyntaxError(line_number, "vehicle flag must be 'unauthorized'");
                vehicle.authorized = false;
            }
            if (vehicle.enter_time_s < 0.0)
                throw ValidationError("enter_time", "must be non-negative");
            if (vehicle.speed_mps <= 0.0) throw ValidationError("speed", "must be positive");
            if (vehicle.length_m <= 0.0) throw ValidationError("length", "must be positive");
            scenario.vehicles.push_back(vehicle);
        } else if (p.key == "traffic") {
            singular(p);
            p.expect_args(4);
            TrafficSpec spec;
            const double seed = p.number(0, "seed");
            if (seed < 0.0 || seed != std::floor(seed))
                throw ValidationError("traffic", "seed must be a non-negative integer");
            spec.seed = static_cast<std::uint64_t>(seed);
            spec.rate_per_hour = p.number(1, "rate_per_hour");
            spec.speed_mps = p.number(2, "speed_mps");
            spec.length_m = p.number(3, "length_m");
            if (spec.rate_per_hour < 0.0) throw ValidationError("traffic", "rate must be non-negative");
            if (spec.speed_mps <= 0.0) throw ValidationError("traffic", "speed must be positive");
            if (spec.length_m <= 0.0) throw ValidationError("traffic", "length must be positive");
            traffic = spec;
        } else if (p.key == "leds_per_zone") {
            singular(p);
            p.expect_args(1);
            scenario.power.leds_per_zone = p.integer(0, "leds_per_zone");
            if (scenario.power.leds_per_zone < 1)
                throw ValidationError("leds_per_zone", "must be at least 1");
        } else if (p.key == "led_power_w") {
            singular(p);
            p.expect_args(1);
            scenario.power.led_power_w = p.number(0, "led_power_w");
            if (scenario.power.led_power_w <= 0.0)
                throw ValidationError("led_power_w", "must be positive");
        } else {
            throw SyntaxError(line_number, "unknown key '" + p.key + "'");
        }
    }

    if (scenario.sensors.empty()) throw ValidationError("sensor", "at least one sensor required");
    if (!sun_points.empty()) scenario.sun = DiurnalProfile(std::move(sun_points));
    if (scenario.door_sensor && scenario.config.mode != Mode::b)
        throw ValidationError("door_sensor", "requires mode B");
    if (!(scenario.config.dim_duty < scenario.config.high_duty))
        throw ValidationError("dim_duty", "must be below high_duty");

    scenario.config.zone_count = static_cast<int>(scenario.sensors.size());
    scenario.config.has_door = scenario.door_sensor.has_value();

    if (traffic) {
        scenario.seed = traffic->seed;
        std::vector<Vehicle> generated = generate_traffic(
            traffic->seed, traffic->rate_per_hour, scenario.duration_s, traffic->speed_mps,
            traffic->length_m);
        scenario.vehicles.insert(scenario.vehicles.end(), generated.begin(), generated.end());
    }
    std::stable_sort(scenario.vehicles.begin(), scenario.vehicles.end(),
                     [](const Vehicle& a, const Vehicle& b) {
                         return a.enter_time_s < b.enter_time_s;
                     });
    return scenario;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream file(path);
    if (!file) throw ValidationError("scenario", "cannot open '" + path + "'");
    std::ostringstream text;
    text << file.rdbuf();
    return parse_scenario(text.str());
}

}  // namespace lumen
