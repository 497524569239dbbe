#pragma once

#include <span>

namespace frmpe {

/// Fills out[n] with the normalized Hermite function
///
///   psi_n(x) = (2^n n! sqrt(pi))^(-1/2) H_n(x) exp(-x^2/2),   n = 0 .. out.size()-1
///
/// using the recurrence on the normalized functions,
///   psi_{n+1} = sqrt(2/(n+1)) x psi_n - sqrt(n/(n+1)) psi_{n-1}.
/// Throws DomainError if any value is not finite.
void hermite_functions(double x, std::span<double> out);

}  // namespace frmpe
