#pragma once

// Analytic field callbacks used for loads and manufactured data.

#include <functional>
#include <string>

#include "oldroyd/mesh.hpp"
#include "oldroyd/tensor.hpp"

namespace oldroyd {

using ScalarField = std::function<double(double, double)>;
using VectorField = std::function<Vec2(double, double)>;
using TensorField = std::function<SymMat2(double, double)>;

// Body force of a run.  An empty callback means exactly zero (loads are then
// skipped, not integrated, so f = 0 runs produce bitwise-zero load vectors).
struct Forcing {
  VectorField field;
  std::string description = "zero";
  bool zero() const { return !field; }
};

}  // namespace oldroyd
