#pragma once

#include <utility>
#include <vector>

#include "lumen/board.hpp"

namespace lumen {

/// Illuminance-to-ADC transfer of an LDR read through a divider. Output is
/// round(1023 * clamp((lux - floor) / (saturation - floor), 0, 1) ^ exponent),
/// monotone non-decreasing in lux.
struct LdrModel {
    double darkness_floor_lux = 0.0;
    double saturation_lux = 10000.0;
    double curve_exponent = 1.0;
};

AdcValue ldr_adc(const LdrModel& model, double ambient_lux);

/// Obstacle sensor on a 1-D road axis: detects a span whose occupied interval
/// intersects [position - window, position + window] and whose lateral offset
/// falls inside the 2-30 cm range gate.
struct IrSensor {
    double position_m = 0.0;
    double window_m = 0.15;
    double max_range_m = 0.30;
    double min_range_m = 0.02;
    LogicLevel active_when_detecting = LogicLevel::low;  // idles HIGH
};

/// Object on the road; occupied interval is [front_m - length_m, front_m].
struct ObjectSpan {
    double front_m = 0.0;
    double length_m = 0.0;
    double lateral_offset_m = 0.0;
};

LogicLevel ir_output(const IrSensor& sensor, const std::vector<ObjectSpan>& spans);

/// Piecewise-linear illuminance vs time, clamped outside the breakpoints.
class DiurnalProfile {
public:
    DiurnalProfile() = default;
    explicit DiurnalProfile(std::vector<std::pair<double, double>> breakpoints);

    static DiurnalProfile constant(double lux);

    double lux_at(double time_s) const;
    bool empty() const { return points_.empty(); }
    const std::vector<std::pair<double, double>>& breakpoints() const { return points_; }

private:
    std::vector<std::pair<double, double>> points_;  // (time_s, lux), times strictly increasing
};

}  // namespace lumen
