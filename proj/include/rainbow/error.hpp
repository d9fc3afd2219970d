#pragma once

#include <stdexcept>
#include <string>

namespace rainbow {

enum class ErrorKind {
    NoCycle,        // operation needs a cycle, pattern is a forest
    CapExceeded,    // enumeration space above a configured cap
    ComplexityGuard,// work estimate above a configured budget
    EpsilonTooLarge,// perturbation would leave the graphon range [0, 1]
    NoPositiveK,    // no split with positive Q (should be unreachable)
    NotFound,       // search ladder exhausted (should be unreachable)
    InvalidInput,   // malformed file or argument value
};

inline const char* error_kind_name(ErrorKind k) {
    switch (k) {
    case ErrorKind::NoCycle: return "NoCycle";
    case ErrorKind::CapExceeded: return "CapExceeded";
    case ErrorKind::ComplexityGuard: return "ComplexityGuard";
    case ErrorKind::EpsilonTooLarge: return "EpsilonTooLarge";
    case ErrorKind::NoPositiveK: return "NoPositiveK";
    case ErrorKind::NotFound: return "NotFound";
    case ErrorKind::InvalidInput: return "InvalidInput";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace rainbow
