#pragma once

#include <array>
#include <complex>
#include <stdexcept>

#include "dqed/quadrature.hpp"  // quad::Sheet

// Wave-vector kinematics at a vacuum/dielectric interface (dielectric fills
// z > 0 with refractive index n, vacuum z < 0). Units hbar = c = 1,
// Heaviside-Lorentz. The dielectric-side longitudinal component is
//   k_z^d = sgn(k_z) sqrt(n^2 k_z^2 + (n^2-1) k_par^2)
// on the real axis; off it, k_z^d = n k_z sqrt(1 + c^2/k_z^2) with
// c = Gamma/n, which is analytic except for the cut [-i Gamma/n, +i Gamma/n].
// Evanescent right-incident modes have k_z on the negative imaginary axis.

namespace dqed::kinematics {

using complexd = std::complex<double>;

struct MediumParams {
    double n = 1.0;                          // refractive index, n >= 1
    double e2 = 4.0 * M_PI / 137.0;          // coupling e^2

    MediumParams() = default;
    MediumParams(double n_, double e2_ = 4.0 * M_PI / 137.0) : n(n_), e2(e2_) {
        if (!(n >= 1.0)) throw std::domain_error("MediumParams: n must be >= 1");
        if (!(e2 > 0.0)) throw std::domain_error("MediumParams: e2 must be > 0");
    }
};

struct WaveVector {
    double kx = 0.0, ky = 0.0;  // parallel components
    complexd kz;                // vacuum-side longitudinal component
    complexd kz_d;              // dielectric-side longitudinal component
    double omega = 0.0;         // frequency (real, >= 0)
    double gamma_cut = 0.0;     // Gamma = k_par sqrt(n^2-1)
    double n = 1.0;

    double kpar() const { return std::hypot(kx, ky); }
    double kpar2() const { return kx * kx + ky * ky; }
    bool evanescent() const { return kz.imag() < 0.0; }
    // spatial |k|^2 = k_par^2 + k_z^2 (complex for evanescent modes)
    complexd k2() const { return complexd(kpar2(), 0.0) + kz * kz; }
};

// Construct from the vacuum-side k_z. Real k_z uses the sgn branch; a pure
// negative-imaginary k_z = -i kappa selects the evanescent right-incident
// branch with k_z^d = -sqrt(Gamma^2 - n^2 kappa^2) (incident from inside).
// Rejects Im(k_z) > 0 (non-normalizable) and k_z on the omega = 0 cut
// (kappa >= k_par).
WaveVector make_wavevector(double kx, double ky, complexd kz,
                           const MediumParams& medium);

// Construct a right-incident mode from a real dielectric-side k_z^d.
// Propagating when k_z_d^2 > (n^2-1) k_par^2, evanescent otherwise with
// k_z = -i sqrt(Gamma^2 - k_z_d^2)/n (exponentially falling for z -> -inf).
WaveVector make_wavevector_right(double kx, double ky, double kz_d,
                                 const MediumParams& medium);

// Fresh wave vectors with sign-flipped arguments; the branch data are
// recomputed, never negated in place.
WaveVector flip_kz(const WaveVector& k, const MediumParams& medium);
// Evanescent modes only: flip k_z^d keeping k_z = -i kappa on the same sheet.
WaveVector flip_kzd(const WaveVector& k, const MediumParams& medium);

// Rotate the parallel momentum onto the x axis; all scalar mode data depend
// on k_par only, so this canonical form cuts the test surface.
WaveVector canonicalize_direction(const WaveVector& k);

// Analytic continuation of k_z^d into the complex k_z plane, matching the
// sgn branch on the real axis. On the cut (Re k_z = 0, 0 < -Im k_z < Gamma/n)
// the boundary value is two-valued and must be selected by the sheet flag:
// left of the cut gives -K, right gives +K, K = sqrt(Gamma^2 - n^2 y^2).
complexd kzd_continued(complexd kz, double kpar, double n,
                       quad::Sheet sheet = quad::Sheet::principal);

// ---- polarization structure --------------------------------------------

enum class Pol { TE, TM, C, G };

inline constexpr std::array<Pol, 4> kAllPols{Pol::TE, Pol::TM, Pol::C, Pol::G};

// metric weight g^{sigma sigma}: +1 for C, -1 for TE, TM, G
inline double pol_weight(Pol s) { return s == Pol::C ? 1.0 : -1.0; }

struct PolarizationVector {
    Pol sigma;
    std::array<complexd, 4> e;  // contravariant components (e^0, e^1, e^2, e^3)
};

using Tensor4 = std::array<std::array<complexd, 4>, 4>;

struct PolarizationTensor {
    Pol sigma;
    Tensor4 g;  // g^{mu nu}_sigma(k)
};

// Momentum-space polarization vector (substitution d -> ik of the
// position-space operators). TE/TM require k_par > 0, TM and G require
// spatial k^2 != 0.
PolarizationVector polarization_vector(Pol sigma, const WaveVector& k);

// g^{mu nu}_sigma(k). Low-level overload takes raw components so kernels may
// evaluate at contour points that are not physical mode wave vectors.
PolarizationTensor polarization_metric(Pol sigma, const WaveVector& k);
PolarizationTensor polarization_metric(Pol sigma, double kx, double ky,
                                       complexd kz);

// Max-norm residuals of the completeness relations for a propagating k:
// first: sum over all four polarizations vs g^{mu nu};
// second: TE+TM sum vs g^{mu nu} - eta^mu eta^nu + khat^mu khat^nu.
struct CompletenessResidual {
    double full_sum;
    double physical_sum;
};
CompletenessResidual completeness_residual(const WaveVector& k);

}  // namespace dqed::kinematics
