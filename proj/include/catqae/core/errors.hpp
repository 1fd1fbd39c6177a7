#pragma once

#include <stdexcept>
#include <string>

namespace catqae {

// Gate or circuit violates its structural invariants.
class InvalidGate : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class TranspileError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Requested Grover depth would alias the amplified angle past pi/2.
class SafetyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace catqae
