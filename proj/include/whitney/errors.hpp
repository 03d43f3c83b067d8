#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace whitney {

// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t offset)
        : std::runtime_error(what + " at offset " + std::to_string(offset)), offset_(offset) {}
    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

// A hypothesis of the construction is not met. Distinct from a failed check.
class PreconditionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class QuadratureError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Evaluation requested outside the region where built stages carry the guarantee.
class ProtectedRegionError : public PreconditionError {
public:
    ProtectedRegionError(const std::string& what, double lo, double hi)
        : PreconditionError(what), lo_(lo), hi_(hi) {}
    double lo() const { return lo_; }
    double hi() const { return hi_; }

private:
    double lo_, hi_;
};

}  // namespace whitney
