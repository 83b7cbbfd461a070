#pragma once

#include <array>

#include "dqed/dirac.hpp"
#include "dqed/quadrature.hpp"

// Distance-dependent electron self-energy in front of the dielectric
// half-space. Everything is expressed through dimensionless coefficients of
// the basis {gamma^0 p0, gamma_par.p_par, gamma^3 p_z} after factoring out
// -e^2/(32 pi p0 a); the electrostatic piece factors -e^2/(16 pi a) on a
// bare gamma^0. Quadrature engines evaluate the Wick-rotated two-residue
// integrals directly; the asymptotic engines implement the closed
// large-p0a expansions, validated against each other.

namespace dqed::selfenergy {

using dirac::FourMomentum;
using dirac::Matrix2;

struct SigmaCoefficients {
    double c0 = 0.0;       // coefficient of gamma^0 p0
    double c_par = 0.0;    // coefficient of gamma_par . p_par
    double c_z = 0.0;      // coefficient of gamma^3 p_z
    double c_coulomb = 0.0;  // coefficient of bare gamma^0 (x -e^2/(16 pi a))

    SigmaCoefficients operator+(const SigmaCoefficients& o) const {
        return {c0 + o.c0, c_par + o.c_par, c_z + o.c_z,
                c_coulomb + o.c_coulomb};
    }
    SigmaCoefficients operator-(const SigmaCoefficients& o) const {
        return {c0 - o.c0, c_par - o.c_par, c_z - o.c_z,
                c_coulomb - o.c_coulomb};
    }
    SigmaCoefficients operator*(double s) const {
        return {c0 * s, c_par * s, c_z * s, c_coulomb * s};
    }
};

struct SigmaResult {
    SigmaCoefficients coeffs;
    double abs_error = 0.0;  // on the coefficients
    long evaluations = 0;
    bool converged = true;
};

// ---- quadrature engines -------------------------------------------------

// TE self-energy by iterated adaptive quadrature of the scaled integrand
// (outer t in [0,1], inner xi on [0, inf) truncated at exponent 40).
SigmaResult sigma_te_quad(double p0a, double n, double tol = 1e-10);

// Full TM two-residue integrand; the 1/t^2-weighted difference of the two
// exponential terms is evaluated fused (never separated).
SigmaResult sigma_tm_quad(double p0a, double n, double tol = 1e-10);

// The four pieces of the add-and-subtract split, same engines.
enum class TmPiece { A, B, C, D };
std::array<SigmaResult, 4> sigma_tm_split_quad(double p0a, double n,
                                               double tol = 1e-10);

// ---- asymptotic engines ---------------------------------------------------

// TE large-p0a result: elementary t-integrals in closed form, O(1/(p0a)^2).
SigmaCoefficients sigma_te_asympt(double p0a, double n);

// TM pieces through order 1/(p0a)^2. With sici_refined the truncated 1/x
// asymptotics of the auxiliary sine/cosine-integral function are replaced by
// exact aux_f evaluations (mid-range p0a validation).
struct TmAsympt {
    SigmaCoefficients A, B, C, D;
    SigmaCoefficients total() const { return A + B + C + D; }
};
TmAsympt sigma_tm_asympt(double p0a, double n, bool sici_refined = false);

// Leading order: radiative coefficients of the n-rational leading term
// (c_par, c_z); c0 = 0 (the gamma^0 pieces cancel between the TM parts).
SigmaCoefficients sigma_leading(double n);

// Coefficients of the next order: full coefficient = leading + next/(p0a).
// Closed n-functions with log and arctanh terms; the removable n -> 1 limit
// is guarded by linear scaling below |n-1| < 1e-4.
SigmaCoefficients sigma_next(double n);

// Assembled leading-order total (radiative + electrostatic, the gamma^0 p0
// term carrying 2(n^2-1)/(n^2+1)); c_coulomb also populated.
SigmaCoefficients total_leading_coefficients(double n);

// Perfect-reflector results with n -> infinity taken first:
// radiative (c_par, c_z) = (-1, +2); with the electrostatic term c0 = 2.
SigmaCoefficients sigma_perfect();
SigmaCoefficients sigma_perfect_total();

// ---- electrostatic piece and the energy shift -----------------------------

// c_coulomb = (n^2-1)/(n^2+1) and the shift it produces,
// delta_E = -(n^2-1)/(n^2+1) e^2/(16 pi a) (m/p0) ubar gamma^0 u.
struct CoulombShift {
    SigmaCoefficients coeffs;
    double delta_E;
};
CoulombShift coulomb_shift(double n, double a, const FourMomentum& p,
                           double e2 = 4.0 * M_PI / 137.0);

// Wave-packet moments entering the spin matrix.
struct Moments {
    double pz2 = 0.0;    // <p_z^2>
    double ppar2 = 0.0;  // <p_par^2>
    double px_pz = 0.0;  // <p_x p_z>
    double py_pz = 0.0;  // <p_y p_z>
};

struct ShiftResult {
    double delta_E_plus;
    double delta_E_minus;
    Matrix2 spin_matrix;
    // inputs echoed for reporting
    double n, a, e2;
    FourMomentum p;
    Moments moments;
};

// Leading-order energy shift: spin matrix with diagonal
//   -e^2/(32 pi a E^2)[2 (2n^4-n^2-1)/(n^2+1)^2 <p_z^2>
//                      + n^2(n^2-1)/(n^2+1)^2 <p_par^2>
//                      + 2 (n^2-1)/(n^2+1) E^2]
// and off-diagonal proportional to <(p_x + i p_y) p_z>; eigenvalues are the
// two shifts. Moments must satisfy <p_z^2> >= p_z^2, <p_par^2> >= p_par^2
// and the Cauchy-Schwarz bound on the cross moments.
ShiftResult total_shift(double n, double a, const FourMomentum& p,
                        const Moments& moments,
                        double e2 = 4.0 * M_PI / 137.0);

// Self-energy operator for the given coefficients (for spin-space matrix
// elements via dirac::sandwich).
dirac::Matrix4 sigma_matrix(const SigmaCoefficients& c, const FourMomentum& p,
                            double a, double e2);

// Closed-form t-integral building blocks of the asymptotics (exposed for
// the quadrature cross-checks).
namespace blocks {
double J0(double n);    // int_0^1 R_TE dt
double J2(double n);    // int_0^1 R_TE/t^2 dt
double M0(double n);    // int_0^1 R_TM dt
double KAz(double n);   // int_0^1 (R_TM - R_TM(0))/t^2 dt
double KA0(double n);   // int_0^1 ((t^2-2) R_TM + 2 R_TM(0))/t^2 dt
double KB(double n);    // int_0^1 ((R_TM-R_TM(0))/t^2 - R_TM''(0)/2)/t^2 dt
}  // namespace blocks

}  // namespace dqed::selfenergy
