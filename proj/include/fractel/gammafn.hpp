#pragma once

namespace fractel {

/// Gamma function for real arguments (Lanczos approximation, g = 7, 9 terms,
/// with the reflection formula for x < 0.5).
///
/// Throws DomainError at the poles (nonpositive integers). Overflows to +inf
/// for large arguments per IEEE semantics.
double gamma_fn(double x);

}  // namespace fractel
