#pragma once

#include <stdexcept>
#include <string>

namespace leobeam {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad or inconsistent configuration (file, flags, parameters).
class ConfigError : public Error {
public:
    using Error::Error;
};

/// NaN/Inf or otherwise malformed numeric input.
class InputError : public Error {
public:
    using Error::Error;
};

/// Coincident points, collinear anchors, retry budgets exhausted.
class DegenerateGeometryError : public Error {
public:
    using Error::Error;
};

/// Singular normal matrix in an unregularized solve.
class RankDeficiencyError : public Error {
public:
    using Error::Error;
};

/// Gauss-Newton update exceeded the divergence bound.
class DivergenceError : public Error {
public:
    using Error::Error;
};

} // namespace leobeam
