#pragma once

// Pointwise 2x2 tensor algebra for the viscoelastic constitutive terms.
//
// Conventions used throughout the project:
//   * Mat2 is a general 2x2 matrix (e.g. a velocity gradient, G_ij = du_i/dx_j).
//   * SymMat2 stores a symmetric 2x2 matrix by its three independent entries
//     (s11, s12, s22); the off-diagonal entry is stored once.
//   * The Frobenius inner product of symmetric matrices counts the off-diagonal
//     twice:  S : T = s11 t11 + 2 s12 t12 + s22 t22.

#include <cmath>
#include <utility>

namespace oldroyd {

struct Mat2 {
  double a11 = 0.0, a12 = 0.0;
  double a21 = 0.0, a22 = 0.0;

  double frobenius_sq() const {
    return a11 * a11 + a12 * a12 + a21 * a21 + a22 * a22;
  }
  double frobenius() const { return std::sqrt(frobenius_sq()); }
};

struct SymMat2 {
  double s11 = 0.0, s12 = 0.0, s22 = 0.0;

  double frobenius_sq() const { return s11 * s11 + 2.0 * s12 * s12 + s22 * s22; }
  double frobenius() const { return std::sqrt(frobenius_sq()); }

  SymMat2 operator+(const SymMat2& o) const {
    return {s11 + o.s11, s12 + o.s12, s22 + o.s22};
  }
  SymMat2 operator-(const SymMat2& o) const {
    return {s11 - o.s11, s12 - o.s12, s22 - o.s22};
  }
  SymMat2 operator*(double c) const { return {c * s11, c * s12, c * s22}; }
};

// Frobenius contraction S : T with the off-diagonal counted twice.
inline double contract(const SymMat2& s, const SymMat2& t) {
  return s.s11 * t.s11 + 2.0 * s.s12 * t.s12 + s.s22 * t.s22;
}

// Symmetric part D = (G + G^T)/2 and skew part W = (G - G^T)/2 of a gradient.
// G = D + W exactly.
inline std::pair<SymMat2, Mat2> sym_skew_parts(const Mat2& g) {
  const double off = 0.5 * (g.a12 + g.a21);
  const double w = 0.5 * (g.a12 - g.a21);
  SymMat2 d{g.a11, off, g.a22};
  Mat2 skew{0.0, w, -w, 0.0};
  return {d, skew};
}

// Rotation/stretching coupling of the objective stress derivative:
//
//   c_a(G, S) = W S - S W + a (D S + S D),
//
// where D and W are the symmetric and skew parts of G and a in [-1, 1] is the
// slip parameter (a = 0 is the corotational case).  The result is symmetric.
//
// With W = [[0, w], [-w, 0]] the commutator is
//   W S - S W = [[2 w s12, w (s22 - s11)], [w (s22 - s11), -2 w s12]],
// whose contraction with S itself vanishes identically — the a = 0 coupling is
// energy-neutral pointwise.
inline SymMat2 convected_coupling(const Mat2& g, const SymMat2& s, double a) {
  const auto [d, wm] = sym_skew_parts(g);
  const double w = wm.a12;
  SymMat2 out;
  out.s11 = 2.0 * w * s.s12 + a * 2.0 * (d.s11 * s.s11 + d.s12 * s.s12);
  out.s12 = w * (s.s22 - s.s11) +
            a * (d.s12 * (s.s11 + s.s22) + s.s12 * (d.s11 + d.s22));
  out.s22 = -2.0 * w * s.s12 + a * 2.0 * (d.s12 * s.s12 + d.s22 * s.s22);
  return out;
}

}  // namespace oldroyd
