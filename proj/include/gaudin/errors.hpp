#pragma once

#include <stdexcept>

namespace gaudin {

/// A denominator of a rational expression vanished at the evaluation point.
struct PoleError : std::domain_error {
    using std::domain_error::domain_error;
};

/// The requested projection target is the zero vector in its module.
struct TargetVanishes : std::domain_error {
    using std::domain_error::domain_error;
};

} // namespace gaudin
