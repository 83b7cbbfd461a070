#pragma once

#include <array>
#include <complex>
#include <vector>

#include "dqed/kinematics.hpp"

// Reflection and transmission coefficients at the vacuum/dielectric
// interface for the four polarizations, left- and right-incident, including
// the evanescent branch, their algebraic identities, and the t-parameterized
// real profiles used by the asymptotic self-energy integrals.

namespace dqed::fresnel {

using kinematics::complexd;
using kinematics::MediumParams;
using kinematics::Pol;
using kinematics::WaveVector;

enum class Side { left, right };

struct Coeff {
    complexd R;
    complexd T;
};

struct FresnelSet {
    Side side;
    std::array<Coeff, 4> c;  // indexed by Pol
    WaveVector at;

    const Coeff& operator[](Pol s) const { return c[static_cast<size_t>(s)]; }
    Coeff& operator[](Pol s) { return c[static_cast<size_t>(s)]; }
};

// Left-incident coefficients; requires real k_z > 0.
FresnelSet left_coefficients(const WaveVector& k, const MediumParams& medium);

// Right-incident coefficients; requires real k_z_d < 0 (propagating) or the
// evanescent branch (Im k_z < 0).
FresnelSet right_coefficients(const WaveVector& k, const MediumParams& medium);

// Coefficients as rational functions of (k_z, k_z_d); exposed so contour
// integrands can evaluate them at complex arguments on a declared sheet.
complexd reflection_left(Pol s, complexd kz, complexd kz_d, double n);
complexd transmission_left(Pol s, complexd kz, complexd kz_d, double n);
complexd reflection_right(Pol s, complexd kz, complexd kz_d, double n);
complexd transmission_right(Pol s, complexd kz, complexd kz_d, double n);

// |LHS - RHS| of the product identities between left/right coefficients,
// with every factor of a flipped-argument product evaluated at the flipped
// arguments (fresh wave vectors, sheets recomputed). Real k_z: six relations
// per polarization; evanescent: four. Flattened relation-major over the four
// polarizations (TE, TM, C, G).
std::vector<double> identity_residuals(const WaveVector& k,
                                       const MediumParams& medium);

// R^L_sigma(t) with t = cos(theta) on the Euclidean sphere:
//   TE: (1 - s)/(1 + s),  TM: (n^2 - s)/(n^2 + s),  s = sqrt((n^2-1)t^2 + 1).
double reflection_profile(Pol s, double t, double n);

// d^2/dt^2 R^L_sigma(t) at t = 0:  TE: -(n^2-1)/2,  TM: -2n^2(n^2-1)/(n^2+1)^2.
double reflection_profile_dd0(Pol s, double n);

// n -> infinity limits: R^L_TE = R^L_C = R^L_G = -1, R^L_TM = +1 and all
// transmissions/right-mode couplings vanish.
FresnelSet perfect_limit_set();

}  // namespace dqed::fresnel
