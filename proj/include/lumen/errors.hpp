#pragma once

#include <stdexcept>
#include <string>

namespace lumen {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// board
struct WrongRole : Error {
    using Error::Error;
};
struct UnattachedPin : Error {
    using Error::Error;
};
struct DuplicatePin : Error {
    using Error::Error;
};
struct EmbeddedNewline : Error {
    using Error::Error;
};
struct ZeroTicks : Error {
    using Error::Error;
};
struct OutOfRange : Error {
    using Error::Error;
};

// sensor models
struct NegativeLux : Error {
    using Error::Error;
};
struct EmptyProfile : Error {
    using Error::Error;
};
struct InvalidModel : Error {
    using Error::Error;
};

// controller
struct LengthMismatch : Error {
    using Error::Error;
};

// scenario parsing
struct SyntaxError : Error {
    SyntaxError(int line_number, const std::string& what)
        : Error("line " + std::to_string(line_number) + ": " + what), line(line_number) {}
    int line;
};
struct ValidationError : Error {
    ValidationError(std::string key_name, const std::string& what)
        : Error(key_name + ": " + what), key(std::move(key_name)) {}
    std::string key;
};
struct NegativeRate : Error {
    using Error::Error;
};

// energy
struct NonpositiveDt : Error {
    using Error::Error;
};
struct ZeroBaseline : Error {
    using Error::Error;
};

}  // namespace lumen
