#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "lumen/errors.hpp"

namespace lumen {

enum class LogicLevel { low, high };

constexpr LogicLevel complement(LogicLevel level) {
    return level == LogicLevel::low ? LogicLevel::high : LogicLevel::low;
}

/// 10-bit analog reading: 0 is maximum darkness, 1023 maximum brightness.
class AdcValue {
public:
    static constexpr int max_counts = 1023;

    explicit AdcValue(int counts) : counts_(counts) {
        if (counts < 0 || counts > max_counts)
            throw OutOfRange("adc counts " + std::to_string(counts) + " outside 0-1023");
    }

    int counts() const { return counts_; }

    friend bool operator==(AdcValue a, AdcValue b) { return a.counts_ == b.counts_; }

private:
    int counts_;
};

/// 8-bit lamp drive level on a 5 V rail. 0 off, 127 dim (~2.5 V), 255 high (5 V).
class PwmDuty {
public:
    static constexpr int max_duty = 255;

    constexpr explicit PwmDuty(int duty) : duty_(duty) {
        if (duty < 0 || duty > max_duty)
            throw OutOfRange("pwm duty " + std::to_string(duty) + " outside 0-255");
    }

    constexpr int duty() const { return duty_; }
    double equivalent_volts() const { return 5.0 * duty_ / max_duty; }

    friend constexpr bool operator==(PwmDuty a, PwmDuty b) { return a.duty_ == b.duty_; }
    friend constexpr bool operator<(PwmDuty a, PwmDuty b) { return a.duty_ < b.duty_; }

private:
    int duty_;
};

enum class PinRole { ldr_analog, ir_digital, lamp_pwm, motor_in1, motor_in2, motor_enable };

std::string to_string(PinRole role);

/// Handle to a configured board pin. Identity is the (role, index) pair.
struct PinId {
    PinRole role;
    int index = 0;
    std::string label;
};

/// Tick counter with fixed tick duration. All tick arithmetic is integral;
/// seconds are derived only at the point of observation.
class SimClock {
public:
    explicit SimClock(int tick_ms = 10) : tick_ms_(tick_ms) {
        if (tick_ms <= 0) throw OutOfRange("tick_ms must be positive");
    }

    void advance(std::uint64_t ticks) {
        if (ticks == 0) throw ZeroTicks("advance requires at least one tick");
        tick_ += ticks;
    }

    std::uint64_t tick() const { return tick_; }
    int tick_ms() const { return tick_ms_; }
    double tick_s() const { return tick_ms_ / 1000.0; }
    double time_s() const { return static_cast<double>(tick_) * tick_ms_ / 1000.0; }

private:
    std::uint64_t tick_ = 0;
    int tick_ms_;
};

struct SerialLine {
    double time_s;
    std::string text;  // single line, no newline
};

/// Change-triggered PWM trace sample.
struct DutySample {
    std::uint64_t tick;
    int pin_index;
    int duty;
};

using AnalogSource = std::function<AdcValue(const SimClock&)>;
using DigitalSource = std::function<LogicLevel(const SimClock&)>;

/// Virtual microcontroller board: named pins, analog input, PWM output,
/// digital input/output, a serial text sink and a tick-based clock. The
/// controller core sees nothing else of the simulated world.
class Board {
public:
    explicit Board(int tick_ms = 10) : clock_(tick_ms) {}

    /// Registers a pin; the (role, index) pair must be unique.
    PinId configure_pin(PinRole role, int index, std::string label);

    void attach_analog_source(const PinId& pin, AnalogSource source);
    void attach_digital_source(const PinId& pin, DigitalSource source);

    AdcValue analog_read(const PinId& pin) const;
    LogicLevel digital_read(const PinId& pin) const;
    void pwm_write(const PinId& pin, PwmDuty duty);
    void digital_write(const PinId& pin, LogicLevel level);
    void serial_print(const std::string& text);
    void advance(std::uint64_t ticks) { clock_.advance(ticks); }

    const SimClock& clock() const { return clock_; }
    PwmDuty duty_of(const PinId& pin) const;
    LogicLevel level_of(const PinId& pin) const;
    const std::vector<DutySample>& duty_trace() const { return duty_trace_; }
    const std::vector<SerialLine>& serial_log() const { return serial_log_; }

private:
    struct Pin {
        PinRole role;
        int index;
        std::string label;
        AnalogSource analog;
        DigitalSource digital;
        int duty = 0;                         // lamp_pwm pins
        LogicLevel level = LogicLevel::low;   // motor output pins
    };

    const Pin& find(const PinId& id) const;
    Pin& find(const PinId& id);

    SimClock clock_;
    std::vector<Pin> pins_;
    std::vector<DutySample> duty_trace_;
    std::vector<SerialLine> serial_log_;
};

}  // namespace lumen
