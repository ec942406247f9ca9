#pragma once

// Galerkin blocks of the coupled momentum/stress system.
//
// Momentum row (test v in the Dirichlet velocity space):
//   re*(u.grad u, v) + (1-r)(grad u, grad v) - (p, div v) + (sigma, D(v)) = <f, v>
// Stress row (test tau in the unconstrained symmetric-tensor space):
//   we*[(u.grad sigma, tau) + (c_a(grad u, sigma), tau)]
//     + (sigma, tau) + diff*(grad sigma, grad tau) = 2r*(D(u), tau)
//
// Both advective forms are assembled in skew-symmetrized shape,
//   (u.grad v, w) -> 1/2[(u.grad v, w) - (u.grad w, v)],
// inserting the +/- half-contributions pairwise so the assembled operators are
// exactly antisymmetric entrywise, not just up to quadrature.
//
// All stress pairings use the Frobenius convention (off-diagonal weighted 2),
// realized via the component weights kStressWeight.

#include <Eigen/Sparse>

#include "oldroyd/forcing.hpp"
#include "oldroyd/params.hpp"
#include "oldroyd/spaces.hpp"

namespace oldroyd {

struct StokesBlocks {
  SpMat viscous;     // (1-r) * (grad u, grad v),            2N x 2N
  SpMat divergence;  // (div u, q),                          np x 2N
  SpMat coupling;    // (sigma, D(v)),                       2N x 3N
};
StokesBlocks assemble_stokes_blocks(const FunctionSpaces& sp, const FluidParams& p);

// Skew-symmetrized convection operator N(u); the momentum row uses re * N(u).
SpMat assemble_convection(const FunctionSpaces& sp, const Eigen::VectorXd& velocity);

struct StressBlocks {
  SpMat mass;       // (sigma, tau),                          3N x 3N
  SpMat diffusion;  // diff * (grad sigma, grad tau),         3N x 3N
  SpMat transport;  // we * B(u), skew-symmetrized advection, 3N x 3N
  SpMat coupling;   // we * C_a(u), slip/rotation coupling,   3N x 3N
  SpMat source;     // 2r * (D(u), tau),                      3N x 2N
  SpMat system() const { return mass + diffusion + transport + coupling; }
};
StressBlocks assemble_stress_blocks(const FunctionSpaces& sp, const FluidParams& p,
                                    const Eigen::VectorXd& velocity);

// Load vectors by quadrature: <f, phi_i> and (g, tau_i).
Eigen::VectorXd assemble_velocity_load(const FunctionSpaces& sp, const VectorField& f);
Eigen::VectorXd assemble_stress_load(const FunctionSpaces& sp, const TensorField& g);

// Pointwise samples of a discrete velocity field inside one element.
struct VelocitySample {
  Vec2 value;
  Mat2 grad;
};
VelocitySample sample_velocity(const FunctionSpaces& sp, const Eigen::VectorXd& velocity,
                               int tri, double l1, double l2);

}  // namespace oldroyd
