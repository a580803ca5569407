#ifndef GRIDEX_ERRORS_HPP
#define GRIDEX_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace gridex {

// I/O and decode failures (missing files, malformed rasters).
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

// Domain-level failures: empty signals, zero-mass histograms,
// undefined metrics. Mapped to exit code 2 by the CLI.
class DomainError : public std::runtime_error {
public:
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

class InvalidArgument : public std::invalid_argument {
public:
    explicit InvalidArgument(const std::string& what) : std::invalid_argument(what) {}
};

} // namespace gridex

#endif
