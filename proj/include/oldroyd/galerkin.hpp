#pragma once

// Operator-level machinery on top of the assembled blocks: projection onto
// the weakly divergence-free subspace, the energy pairing of the coupled
// fixed-point operator, and residual norms in the natural dual spaces.
//
// The energy pairing <P(xi), xi> is the quantity whose sign on a sphere
// certifies that a discrete solution exists inside the ball. Because the
// convection and transport forms are skew and the two coupling cross terms
// cancel, it collapses to the closed expansion
//
//   2r(1-r) ||u||_V^2 + ||s||^2 + diff |s|_H1^2 + we (c_a(grad u) s, s)
//     - 2r <f, u>.
//
// Computing the pairing three independent ways -- through Riesz
// representatives, through the raw load functionals, and through this
// expansion -- and comparing them exercises the entire assembly chain, so
// all three routes are exposed.

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include <memory>

#include "oldroyd/assembly.hpp"
#include "oldroyd/forcing.hpp"
#include "oldroyd/params.hpp"
#include "oldroyd/spaces.hpp"

namespace oldroyd {

// Energy-orthogonal projection onto the subspace of no-slip velocity fields
// whose discrete divergence vanishes against every pressure test function.
// Realized as a saddle problem with a zero-mean multiplier; the factorization
// is built once and shared by all projections on the same mesh.
class DivFreeProjector {
 public:
  explicit DivFreeProjector(const FunctionSpaces& sp);

  // Nearest weakly divergence-free field in the gradient inner product.
  Eigen::VectorXd project(const Eigen::VectorXd& velocity) const;

  // Constrained Riesz representative of a load functional: the divergence-
  // free field z with (grad z, grad v) = <load, v> for all divergence-free v.
  Eigen::VectorXd riesz(const Eigen::VectorXd& velocity_load) const;

 private:
  const FunctionSpaces* sp_;
  int ni_ = 0, np_ = 0;
  std::unique_ptr<Eigen::SparseLU<SpMat>> lu_;

  Eigen::VectorXd solve_saddle(const Eigen::VectorXd& interior_load) const;
};

// One application of the fixed-point operator at a state: the momentum and
// stress residual functionals (loads) plus their Riesz representatives in
// the velocity and stress trial spaces. The velocity representative needs
// the constrained projector; without one only the loads and the stress
// representative are filled (enough for the functional pairing route).
struct PkApply {
  Eigen::VectorXd vel_load;      // 2N; pair against no-slip test fields
  Eigen::VectorXd stress_load;   // 3N
  Eigen::VectorXd vel_riesz;     // 2N, weakly divergence free; empty if no projector
  Eigen::VectorXd stress_riesz;  // 3N
};

PkApply apply_pk(const FunctionSpaces& sp, const FluidParams& p, const Forcing& f,
                 const State& xi, const DivFreeProjector* proj = nullptr);

// <P(xi), xi> through the Riesz representatives and the space inner products.
double pk_pairing(const FunctionSpaces& sp, const FluidParams& p, const PkApply& pk,
                  const State& xi);
// The same pairing through the raw load functionals.
double pk_pairing_functional(const FluidParams& p, const PkApply& pk, const State& xi);

// The closed expansion, term by term.
struct PkEnergyTerms {
  double viscous = 0.0;      // 2r(1-r) ||u||_V^2
  double stress_l2 = 0.0;    // ||s||^2
  double stress_diff = 0.0;  // diff |s|_H1^2
  double coupling_ga = 0.0;  // we (c_a(grad u) s, s)
  double forcing = 0.0;      // -2r <f, u>
  double total() const { return viscous + stress_l2 + stress_diff + coupling_ga + forcing; }
  double abs_sum() const {
    return std::abs(viscous) + std::abs(stress_l2) + std::abs(stress_diff) +
           std::abs(coupling_ga) + std::abs(forcing);
  }
};

PkEnergyTerms pk_energy_terms(const FunctionSpaces& sp, const FluidParams& p,
                              const Forcing& f, const State& xi);

// Dual norms of the full weak residual (momentum row includes the pressure
// gradient; stress row optionally carries a manufactured source).
struct ResidualNorms {
  double momentum = 0.0;
  double stress = 0.0;
  double total() const { return std::sqrt(momentum * momentum + stress * stress); }
};

ResidualNorms weak_residual(const FunctionSpaces& sp, const FluidParams& p,
                            const Forcing& f, const State& xi,
                            const TensorField& stress_source = {});

// Gaussian state with no-slip velocity, used by the sphere sampling tests.
State random_state(const FunctionSpaces& sp, unsigned seed);
// Scale velocity and stress together so the combined state norm hits target.
void rescale_state(const FunctionSpaces& sp, const FluidParams& p, State& xi,
                   double target_norm);

}  // namespace oldroyd
