#pragma once

#include <array>
#include <complex>

#include "dqed/kinematics.hpp"

// Gamma-matrix algebra in the Dirac (standard) representation, metric
// (+,-,-,-), on-shell eigenspinors, the gamma-triple decomposition
//   gamma^mu gamma^lam gamma^nu = s^{a mu lam nu} gamma_a
//                                 - i eps^{a mu lam nu} gamma5 gamma_a
// with eps_{0123} = +1, the TE/TM loop invariants and their phi averages,
// and spin-space matrix elements of self-energy operators.

namespace dqed::dirac {

using kinematics::complexd;
using kinematics::Pol;
using kinematics::WaveVector;

inline constexpr std::array<double, 4> kMetric{1.0, -1.0, -1.0, -1.0};

struct Matrix4 {
    std::array<std::array<complexd, 4>, 4> m{};

    static Matrix4 zero() { return {}; }
    static Matrix4 identity();

    complexd& operator()(int r, int c) { return m[r][c]; }
    const complexd& operator()(int r, int c) const { return m[r][c]; }

    Matrix4 operator+(const Matrix4& o) const;
    Matrix4 operator-(const Matrix4& o) const;
    Matrix4 operator*(const Matrix4& o) const;
    Matrix4 operator*(complexd s) const;
    Matrix4& operator+=(const Matrix4& o);
};

Matrix4 operator*(complexd s, const Matrix4& a);
double max_abs(const Matrix4& a);

struct Matrix2 {
    std::array<std::array<complexd, 2>, 2> m{};
    complexd& operator()(int r, int c) { return m[r][c]; }
    const complexd& operator()(int r, int c) const { return m[r][c]; }
};

// eigenvalues of a hermitian 2x2, descending
std::array<double, 2> hermitian_eigenvalues(const Matrix2& h);
double max_antihermiticity(const Matrix2& h);

// Dirac representation; immutable shared data.
struct GammaRep {
    std::array<Matrix4, 4> gamma;  // gamma^0 .. gamma^3 (upper index)
    Matrix4 gamma5;
    static const GammaRep& dirac();

    Matrix4 lower(int mu) const;   // gamma_mu = g_{mu mu} gamma^mu
    Matrix4 slash(const std::array<complexd, 4>& q_up) const;  // gamma^mu q_mu
};

// totally antisymmetric symbol with lower indices, eps_{0123} = +1
int levi_civita_lower(int a, int b, int c, int d);

struct FourMomentum {
    double p0, px, py, pz, m;

    static FourMomentum on_shell(double px, double py, double pz, double m);
    double ppar2() const { return px * px + py * py; }
};

struct Spinor {
    std::array<complexd, 4> c{};
    int helicity_label = 1;  // 1 or 2, spin up/down along z
};

// u^(i)(p), normalized ubar u = 1; phi(1) = (1,0), phi(2) = (0,1).
Spinor eigenspinor(int i, const FourMomentum& p);
// v^(i)(p): upper and lower components interchanged, normalized to -1.
Spinor antispinor(int i, const FourMomentum& p);

std::array<complexd, 4> bar(const Spinor& u);  // ubar = u^dag gamma^0

// ---- gamma triple decomposition ----------------------------------------

struct GammaTriple {
    std::array<double, 4> s_coeff;    // s^{alpha mu lam nu}
    std::array<double, 4> eps_coeff;  // eps^{alpha mu lam nu} (upper indices)
    Matrix4 reconstruct() const;      // sum_a s gamma_a - i sum_a eps g5 gamma_a
};
GammaTriple gamma_triple(int mu, int lam, int nu);

// ---- loop invariants -----------------------------------------------------

enum class Theta { I1, I15, I2, I25 };

// Closed forms of the gamma-valued invariants entering the self-energy, as
// functions of the electron-line momentum q (contravariant components,
// complex q0 allowed after Wick rotation), the photon wave-vector data
// (kx, ky, kz), and the mass m.
Matrix4 invariant(Pol sigma, Theta theta, const std::array<complexd, 4>& q,
                  double kx, double ky, complexd kz, double m);

// gamma^mu (gamma.q + m) gamma^nu g^sigma_{mu nu} assembled directly from the
// polarization tensor; equals I1 + I15 + I2 - i*I25 (I25 is defined without
// the -i). Used as the independent cross-check of the closed forms.
Matrix4 numerator_contraction(Pol sigma, const std::array<complexd, 4>& q,
                              double kx, double ky, complexd kz, double m);

// ---- phi averages ---------------------------------------------------------

// (1/2pi) int dphi of (I1 + I2) after the Wick rotation k0 = i rho t, valid
// between on-shell spinors. Coefficients of gamma^0, gamma_par.p_par and
// gamma^3 p_z:
//   TE: { i rho t, -1, 0 }
//   TM: { i rho t (2 kpar^2/k^2 - 1), 1 - kpar^2/k^2, -2 kpar^2/k^2 }
// with kpar = rho sqrt(1-t^2) and k^2 = kpar^2 + kz^2 at the given kz.
struct PhiAverage {
    complexd c_g0;    // coefficient of gamma^0
    complexd c_gpar;  // coefficient of (gamma^1 px + gamma^2 py)
    complexd c_gz;    // coefficient of gamma^3 pz
    Matrix4 to_matrix(const FourMomentum& p) const;
};
PhiAverage phi_average(Pol sigma, double rho, double t, const FourMomentum& p,
                       complexd kz);

// (m/E) ubar^(i) op u^(j), i,j in {1,2}; hermitian for hermitian-sandwich ops.
Matrix2 sandwich(const Matrix4& op, const FourMomentum& p);

}  // namespace dqed::dirac
