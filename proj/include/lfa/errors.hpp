#pragma once

#include <stdexcept>
#include <string>

namespace lfa {

/// Base class for all library errors.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Mismatched or invalid field parameters / malformed arguments.
struct parameter_error : error {
    using error::error;
};

/// A computation would need digits beyond the representable window.
struct precision_error : error {
    using error::error;
};

/// An index exceeds what the chosen resolution can represent (e.g. n > q^k).
struct resolution_error : error {
    using error::error;
};

/// Nonpositive weight cell or similar domain violation.
struct domain_error : error {
    using error::error;
};

/// A declared window is too small to carry the required mass.
struct window_error : error {
    using error::error;
};

/// Operation not available on this backend (e.g. trace in characteristic 0).
struct unsupported_error : error {
    using error::error;
};

/// Exponent outside the integrability range (power weight with alpha <= -1).
struct nonintegrable_error : error {
    using error::error;
};

} // namespace lfa
