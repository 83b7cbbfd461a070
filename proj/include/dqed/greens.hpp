#pragma once

#include <complex>
#include <vector>

#include "dqed/fresnel.hpp"
#include "dqed/kinematics.hpp"
#include "dqed/quadrature.hpp"

// Medium-dependent photon-propagator kernels after the Wick rotation.
// For a Euclidean radius rho = sqrt(k4^2 + kpar^2) and t = cos(theta), the
// reflection kernel of the vacuum-side propagator is
//   I_sigma(rho, t, Z) = int_C dk_z e^{i k_z Z} W_sigma(k) R^L_sigma(k)
//                        / (rho^2 + k_z^2),   Z = z + z' < 0,
// with W_TE = 1 and W_TM = kpar^2/(kpar^2 + k_z^2) (the TM invariants bring
// the extra spatial 1/k^2). Closing C below picks up the residue at
// k_z = -i rho, and for TM also at k_z = -i kpar.
// Also: the equivalence of the cut-detour and interval forms of the
// evanescent contribution, the contour-closure (wave equation) residuals,
// and the electrostatic Green function with its closed-form image value.

namespace dqed::greens {

using kinematics::complexd;
using kinematics::MediumParams;
using kinematics::Pol;

// Closed-form residue evaluation of I_sigma. TE requires nothing special;
// TM requires t > 0 (at t = 0 the two poles coincide).
complexd contour_kz_integral(Pol sigma, double rho, double t, double z_sum,
                             double n);

// Same kernel with the perfect-reflector coefficients R_TE = -1, R_TM = +1.
complexd contour_kz_integral_perfect(Pol sigma, double rho, double t,
                                     double z_sum);

// |interval form - cut-detour form| of the evanescent contribution:
// interval: int_{-Gamma}^{0} dk_z^d e^{y Z} T^R* T^R / (rho^2 - y^2),
// detour:   the two cut sides of C with the R^L discontinuity.
double detour_equivalence_residual(Pol sigma, double rho, double t,
                                   double z_sum, double n,
                                   const quad::QuadOptions& opt = {});

// Contour-closure residuals behind the wave-equation check. The reflection
// integral over the real axis plus the evanescent interval must vanish for
// Z < 0 (no poles below C); the mixed transmission integral vanishes on its
// own for z < 0 < zp. Both are damped by e^{-eps |k|} and extrapolated
// eps -> 0 (three samples, Richardson).
double waveeq_reflection_residual(Pol sigma, double n, double Z,
                                  double eps_base = 0.05,
                                  const quad::QuadOptions& opt = {});
double waveeq_mixed_residual(Pol sigma, double n, double z, double zp,
                             double eps_base = 0.05,
                             const quad::QuadOptions& opt = {});

struct StaticGreenValue {
    double n;
    double a;
    double value;
};

// Medium part of the electrostatic Green function at coincident points a
// distance a in front of the surface: -(n^2-1)/(n^2+1) / (8 pi a).
StaticGreenValue static_green_closed(double n, double a);

// Same value with the k_z integration done by residue and the remaining
// k_par integral by adaptive quadrature.
StaticGreenValue static_green_numeric(double n, double a,
                                      const quad::QuadOptions& opt = {});

// max |kernel| over the given (rho, t, z_sum) samples at n = 1 (all
// reflection coefficients vanish identically).
double free_limit_residual(Pol sigma,
                           const std::vector<std::array<double, 3>>& samples);

}  // namespace dqed::greens
