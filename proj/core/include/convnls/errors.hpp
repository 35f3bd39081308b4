#pragma once

#include <stdexcept>
#include <string>

namespace convnls {

// Base class for all toolkit errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class InvalidGrid : public Error { using Error::Error; };
class BadParams : public Error { using Error::Error; };
class NonzeroMean : public Error { using Error::Error; };
class ZeroField : public Error { using Error::Error; };
class NoConvergence : public Error { using Error::Error; };
class NonFinite : public Error { using Error::Error; };
class BoxExit : public Error { using Error::Error; };
class WindowTooNoisy : public Error { using Error::Error; };
class DenominatorVanishes : public Error { using Error::Error; };
class InconsistentState : public Error { using Error::Error; };
class TrapViolation : public Error {
public:
    TrapViolation(const std::string& what, double t) : Error(what), time(t) {}
    double time;
};
class UnsupportedDim : public Error { using Error::Error; };
class SnapshotError : public Error { using Error::Error; };

} // namespace convnls
