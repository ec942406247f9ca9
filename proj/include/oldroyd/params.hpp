#pragma once

// Dimensionless parameters of the stationary viscoelastic model with stress
// diffusion:
//
//   re   Reynolds number                        (re >= 0)
//   we   Weissenberg number                     (we >= 0)
//   r    retardation ratio, elastic fraction    (0 < r < 1, strictly)
//   a    slip parameter of the objective
//        derivative                             (-1 <= a <= 1)
//   diff stress diffusion coefficient           (diff > 0)
//
// r in {0, 1} degenerates the coupled system (no solvent viscosity or no
// elastic stress) and is rejected up front rather than patched around.

#include <stdexcept>
#include <string>

namespace oldroyd {

struct FluidParams {
  double re = 0.0;
  double we = 0.0;
  double r = 0.5;
  double a = 0.0;
  double diff = 1.0;

  void validate() const {
    if (!(re >= 0.0)) throw std::invalid_argument("FluidParams: re must be >= 0");
    if (!(we >= 0.0)) throw std::invalid_argument("FluidParams: we must be >= 0");
    if (!(r > 0.0 && r < 1.0))
      throw std::invalid_argument("FluidParams: r must lie strictly in (0, 1), got " +
                                  std::to_string(r));
    if (!(a >= -1.0 && a <= 1.0))
      throw std::invalid_argument("FluidParams: a must lie in [-1, 1]");
    if (!(diff > 0.0))
      throw std::invalid_argument("FluidParams: diff must be > 0");
  }
};

inline FluidParams make_params(double re, double we, double r, double a, double diff) {
  FluidParams p{re, we, r, a, diff};
  p.validate();
  return p;
}

}  // namespace oldroyd
