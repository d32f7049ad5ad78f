#include "lumen/sensors.hpp"

#include <algorithm>
#include <cmath>

namespace lumen {

AdcValue ldr_adc(const LdrModel& model, double ambient_lux) {
    if (model.darkness_floor_lux >= model.saturation_lux)
        throw InvalidModel("ldr darkness floor must be below saturation");
    if (model.curve_exponent <= 0.0) throw InvalidModel("ldr curve exponent must be positive");
    if (ambient_lux < 0.0) throw NegativeLux("ambient illuminance must be non-negative");

    const double span = model.saturation_lux - model.darkness_floor_lux;
    const double frac = std::clamp((ambient_lux - model.darkness_floor_lux) / span, 0.0, 1.0);
    const double response = std::pow(frac, model.curve_exponent);
    return AdcValue(static_cast<int>(std::lround(AdcValue::max_counts * response)));
}

LogicLevel ir_output(const IrSensor& sensor, const std::vector<ObjectSpan>& spans) {
    const double lo = sensor.position_m - sensor.window_m;
    const double hi = sensor.position_m + sensor.window_m;
    for (const ObjectSpan& span : spans) {
        const bool in_window = span.front_m >= lo && span.front_m - span.length_m <= hi;
        const bool in_range = span.lateral_offset_m >= sensor.min_range_m &&
                              span.lateral_offset_m <= sensor.max_range_m;
        if (in_window && in_range) return sensor.active_when_detecting;
    }
    return complement(sensor.active_when_detecting);
}

DiurnalProfile::DiurnalProfile(std::vector<std::pair<double, double>> breakpoints)
    : points_(std::move(breakpoints)) {
    for (std::size_t i = 0; i < points_.size(); ++i) {
        if (points_[i].second < 0.0) throw InvalidModel("profile lux must be non-negative");
        if (i > 0 && points_[i].first <= points_[i - 1].first)
            throw InvalidModel("profile times must be strictly increasing");
    }
}

DiurnalProfile DiurnalProfile::constant(double lux) {
    return DiurnalProfile({{0.0, lux}});
}

double DiurnalProfile::lux_at(double time_s) const {
    if (points_.empty()) throw EmptyProfile("diurnal profile has no breakpoints");
    if (time_s <= points_.front().first) return points_.front().second;
    if (time_s >= points_.back().first) return points_.back().second;
    for (std::size_t i = 1; i < points_.size(); ++i) {
        if (time_s <= points_[i].first) {
            const auto& [t0, lux0] = points_[i - 1];
            const auto& [t1, lux1] = points_[i];
            return lux0 + (lux1 - lux0) * (time_s - t0) / (t1 - t0);
        }
    }
    return points_.back().second;  // unreachable
}

}  // namespace lumen
