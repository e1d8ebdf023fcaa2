#pragma once

#include <stdexcept>
#include <string>

namespace iontrap {

/// Bad or malformed configuration input (unknown key, unparsable value,
/// missing required parameter). CLI maps this to exit code 2.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Physically invalid parameter or state (negative frequency, non-thermal
/// sideband ratio, unreachable constraint...). CLI maps this to exit code 3.
class DomainError : public std::runtime_error {
public:
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

/// Fock-space truncation too aggressive for the requested distribution.
class TruncationError : public DomainError {
public:
    explicit TruncationError(const std::string& what) : DomainError(what) {}
};

/// Filesystem / stream failure. CLI maps this to exit code 4.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace iontrap
