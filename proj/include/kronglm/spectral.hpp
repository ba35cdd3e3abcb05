#pragma once

#include <stdexcept>
#include <string>

#include "kronglm/array.hpp"

namespace kronglm {

class PowerIterationError : public std::runtime_error {
 public:
  explicit PowerIterationError(Index iterations)
      : std::runtime_error("power iteration did not converge after " +
                           std::to_string(iterations) + " iterations"),
        iterations_(iterations) {}
  Index iterations() const { return iterations_; }

 private:
  Index iterations_;
};

/// Spectral radius of a symmetric positive semidefinite matrix by power
/// iteration with a fixed deterministic start vector.
double spectral_radius(const Matrix& a, double rel_tol = 1e-14, Index max_iters = 500000);

}  // namespace kronglm
