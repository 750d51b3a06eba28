#ifndef NCR4_ERRORS_HPP
#define NCR4_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ncr4 {

/// Input outside the domain of an operation (zero where C* is required,
/// off-sphere points, parameters outside the admissible region).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A series or iteration was asked to run where its error certificate
/// no longer holds.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Analytic continuation lost track of the branch (step too coarse).
class TrackingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Evaluation at a pole, e.g. the j-invariant of the nodal fiber.
class PoleError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace ncr4

#endif  // NCR4_ERRORS_HPP
