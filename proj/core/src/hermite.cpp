#include "frmpe/hermite.hpp"

#include <cmath>
#include <numbers>

#include "frmpe/errors.hpp"

namespace frmpe {

void hermite_functions(double x, std::span<double> out) {
  if (out.empty()) return;
  if (!std::isfinite(x)) throw DomainError("Hermite function argument must be finite");
  out[0] = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * x * x);
  if (out.size() > 1) out[1] = std::sqrt(2.0) * x * out[0];
  for (std::size_t n = 1; n + 1 < out.size(); ++n) {
    const double nd = static_cast<double>(n);
    out[n + 1] = std::sqrt(2.0 / (nd + 1.0)) * x * out[n] - std::sqrt(nd / (nd + 1.0)) * out[n - 1];
    if (!std::isfinite(out[n + 1])) {
      throw DomainError("non-finite Hermite function value at n = " + std::to_string(n + 1));
    }
  }
}

}  // namespace frmpe
