#pragma once

#include <stdexcept>
#include <string>

namespace cae {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid argument or malformed input (schema, ranges, mismatched p).
class InputError : public Error {
public:
    using Error::Error;
};

/// Evaluation outside the domain of a function on a ray.
class DomainError : public Error {
public:
    using Error::Error;
};

/// A numerical procedure could not reach its target (overflow, step underflow, no bracket).
class NumericalError : public Error {
public:
    using Error::Error;
};

/// A combined expansion cannot exist: pole order or polynomial degree exceeds the order.
class InfeasibleError : public Error {
public:
    InfeasibleError(const std::string& what, int order, int excess)
        : Error(what), order_(order), excess_(excess) {}
    [[nodiscard]] int order() const noexcept { return order_; }
    [[nodiscard]] int excess() const noexcept { return excess_; }

private:
    int order_;
    int excess_;
};

/// Inner and outer data disagree on an overlapping coefficient c_{nm} = z_{n+m,-m}.
class CompatibilityError : public Error {
public:
    CompatibilityError(const std::string& what, int n, int m) : Error(what), n_(n), m_(m) {}
    [[nodiscard]] int n() const noexcept { return n_; }
    [[nodiscard]] int m() const noexcept { return m_; }

private:
    int n_;
    int m_;
};

}  // namespace cae
