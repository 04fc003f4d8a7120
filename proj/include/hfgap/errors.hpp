#pragma once

#include <stdexcept>
#include <string>

namespace hfgap {

/// Argument outside the domain of a function (negative coupling, x > 1 for Li2, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A quadrature, root search or fit did not reach its tolerance.
/// The message names the quantity that failed.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline void require_domain(bool ok, const std::string& message)
{
    if (!ok) throw DomainError(message);
}

} // namespace hfgap
