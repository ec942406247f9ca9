#pragma once

// Norms of discrete fields and the discrete dual norm of the body force.
//
//   ||u||_V^2     = int ||grad u||_F^2            (velocity energy seminorm;
//                                                  a norm on the Dirichlet space)
//   ||sigma||_W^2 = int ||sigma||_F^2 + ||grad sigma||_F^2
//   ||xi||_X^2    = 2 r ||u||_V^2 + ||sigma||_W^2
//   ||sigma||_L4  = ( int ||sigma(x)||_F^4 )^(1/4)
//
// Frobenius norms of symmetric tensors count the off-diagonal twice.  The
// dual norm is realized by the discrete Riesz map: solve a componentwise
// Dirichlet Poisson problem and return the energy norm of the representative;
// by Galerkin orthogonality this equals the exact supremum of <f, v>/||v||_V
// over the discrete velocity space.

#include <Eigen/Dense>

#include "oldroyd/forcing.hpp"
#include "oldroyd/params.hpp"
#include "oldroyd/spaces.hpp"

namespace oldroyd {

double norm_V(const FunctionSpaces& sp, const Eigen::VectorXd& velocity);

double stress_l2_sq(const FunctionSpaces& sp, const Eigen::VectorXd& stress);
double stress_h1_semi_sq(const FunctionSpaces& sp, const Eigen::VectorXd& stress);
double norm_W(const FunctionSpaces& sp, const Eigen::VectorXd& stress);

double norm_X(const FunctionSpaces& sp, const FluidParams& p, const State& xi);

double norm_L4_stress(const FunctionSpaces& sp, const Eigen::VectorXd& stress);
double norm_L4_scalar(const FunctionSpaces& sp, const Eigen::VectorXd& coeffs);
double norm_H1_scalar(const FunctionSpaces& sp, const Eigen::VectorXd& coeffs);

double norm_L2_pressure(const FunctionSpaces& sp, const Eigen::VectorXd& pressure);

// Dual norm of an assembled velocity load vector (interior test space).
double h_minus1_norm(const FunctionSpaces& sp, const Eigen::VectorXd& velocity_load);
// Convenience overload integrating the field first.
double h_minus1_norm_field(const FunctionSpaces& sp, const VectorField& f);

}  // namespace oldroyd
