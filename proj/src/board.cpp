#include "lumen/board.hpp"

#include <algorithm>

namespace lumen {

std::string to_string(PinRole role) {
    switch (role) {
        case PinRole::ldr_analog: return "ldr_analog";
        case PinRole::ir_digital: return "ir_digital";
        case PinRole::lamp_pwm: return "lamp_pwm";
        case PinRole::motor_in1: return "motor_in1";
        case PinRole::motor_in2: return "motor_in2";
        case PinRole::motor_enable: return "motor_enable";
    }
    return "?";
}

PinId Board::configure_pin(PinRole role, int index, std::string label) {
    for (const Pin& pin : pins_) {
        if (pin.role == role && pin.index == index)
            throw DuplicatePin("pin (" + to_string(role) + ", " + std::to_string(index) +
                               ") already configured");
    }
    pins_.push_back(Pin{role, index, label, {}, {}});
    return PinId{role, index, std::move(label)};
}

const Board::Pin& Board::find(const PinId& id) const {
    for (const Pin& pin : pins_) {
        if (pin.role == id.role && pin.index == id.index) return pin;
    }
    throw UnattachedPin("pin (" + to_string(id.role) + ", " + std::to_string(id.index) +
                        ") is not configured");
}

Board::Pin& Board::find(const PinId& id) {
    return const_cast<Pin&>(static_cast<const Board*>(this)->find(id));
}

void Board::attach_analog_source(const PinId& pin, AnalogSource source) {
    if (pin.role != PinRole::ldr_analog)
        throw WrongRole("analog source requires an ldr_analog pin, got " + to_string(pin.role));
    find(pin).analog = std::move(source);
}

void Board::attach_digital_source(const PinId& pin, DigitalSource source) {
    if (pin.role != PinRole::ir_digital)
        throw WrongRole("digital source requires an ir_digital pin, got " + to_string(pin.role));
    find(pin).digital = std::move(source);
}

AdcValue Board::analog_read(const PinId& pin) const {
    if (pin.role != PinRole::ldr_analog)
        throw WrongRole("analog_read on " + to_string(pin.role) + " pin");
    const Pin& p = find(pin);
    if (!p.analog) throw UnattachedPin("no sensor model attached to " + p.label);
    return p.analog(clock_);
}

LogicLevel Board::digital_read(const PinId& pin) const {
    if (pin.role != PinRole::ir_digital)
        throw WrongRole("digital_read on " + to_string(pin.role) + " pin");
    const Pin& p = find(pin);
    if (!p.digital) throw UnattachedPin("no sensor model attached to " + p.label);
    return p.digital(clock_);
}

void Board::pwm_write(const PinId& pin, PwmDuty duty) {
    if (pin.role != PinRole::lamp_pwm)
        throw WrongRole("pwm_write on " + to_string(pin.role) + " pin");
    Pin& p = find(pin);
    if (p.duty != duty.duty()) {
        p.duty = duty.duty();
        duty_trace_.push_back(DutySample{clock_.tick(), p.index, p.duty});
    }
}

void Board::digital_write(const PinId& pin, LogicLevel level) {
    if (pin.role != PinRole::motor_in1 && pin.role != PinRole::motor_in2 &&
        pin.role != PinRole::motor_enable)
        throw WrongRole("digital_write on " + to_string(pin.role) + " pin");
    find(pin).level = level;
}

void Board::serial_print(const std::string& text) {
    if (text.find('\n') != std::string::npos)
        throw EmbeddedNewline("serial_print text must be a single line");
    serial_log_.push_back(SerialLine{clock_.time_s(), text});
}

PwmDuty Board::duty_of(const PinId& pin) const {
    if (pin.role != PinRole::lamp_pwm)
        throw WrongRole("duty_of on " + to_string(pin.role) + " pin");
    return PwmDuty(find(pin).duty);
}

LogicLevel Board::level_of(const PinId& pin) const {
    return find(pin).level;
}

}  // namespace lumen
