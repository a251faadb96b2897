#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace widom {

enum class ErrorKind {
  domain,           // evaluation outside |w| > rho_min
  inversion,        // interior point or Newton failure in phi
  shrink,           // shrink exceeds continuation radius / infeasible
  parameter,        // invalid configuration or argument
  root_finding,     // Durand-Kerner stalled
  convergence,      // adaptive quadrature or Lawson failure
  location,         // constructed zero violates its location guarantee
  mismatch,         // combining objects from different domains
  io,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Thrown by find_roots when the iteration does not settle; carries the
/// last iterate so callers can still inspect it.
class RootFindingStalled : public Error {
 public:
  RootFindingStalled(std::vector<std::complex<double>> best, double movement)
      : Error(ErrorKind::root_finding, "root finding stalled"),
        best_(std::move(best)),
        movement_(movement) {}

  const std::vector<std::complex<double>>& best_iterate() const noexcept {
    return best_;
  }
  double last_movement() const noexcept { return movement_; }

 private:
  std::vector<std::complex<double>> best_;
  double movement_;
};

}  // namespace widom
