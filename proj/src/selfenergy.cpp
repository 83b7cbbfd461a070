#include "dqed/selfenergy.hpp"

#include <cmath>

#include "dqed/fresnel.hpp"
#include "dqed/special.hpp"

namespace dqed::selfenergy {

namespace {

using fresnel::reflection_profile;
using fresnel::reflection_profile_dd0;
using kinematics::Pol;

double R_TE(double t, double n) { return reflection_profile(Pol::TE, t, n); }
double R_TM(double t, double n) { return reflection_profile(Pol::TM, t, n); }
double R_TM0(double n) { return (n * n - 1.0) / (n * n + 1.0); }

// (R_TM(t) - R_TM(0))/t^2 in the exact cancellation-free form
double q_B(double t, double n) {
    const double b2 = n * n - 1.0;
    const double s = std::sqrt(b2 * t * t + 1.0);
    return -2.0 * n * n * b2 / ((s + 1.0) * (n * n + s) * (n * n + 1.0));
}

struct Inner {
    double value;
    double abs_error;
    long evaluations;
    bool converged;
};

quad::QuadOptions inner_options() {
    quad::QuadOptions o;
    o.abs_tol = 1e-16;
    o.rel_tol = 5e-13;
    o.max_intervals = 4000;
    return o;
}

// J(mu) = int_0^inf xi e^{-mu xi}/(1+xi^2) dxi, truncated at exponent 40
Inner inner_j(double mu) {
    auto f = [mu](double xi) { return xi / (1.0 + xi * xi) * std::exp(-mu * xi); };
    const quad::QuadResult r = quad::integrate_decaying(f, mu, inner_options());
    return {r.value, r.abs_error, r.evaluations, r.converged};
}

// int_0^inf xi/(1+xi^2) (e^{-mu xi} - w e^{-w mu xi}) dxi / t^2 with
// w = sqrt(1-t^2), evaluated without forming the O(t^2) difference of two
// O(1) inner integrals. Pointwise:
//   (e^{-mu xi} - w e^{-w mu xi})/t^2
//     = e^{-mu xi} [ 1/(1+w) - w (mu xi/(1+w)) expm1(d)/d ],  d = mu xi (1-w)
Inner inner_c_over_t2(double mu, double t) {
    const double w = std::sqrt((1.0 - t) * (1.0 + t));
    const double t2 = t * t;
    auto f = [=](double xi) {
        const double pref = xi / (1.0 + xi * xi);
        const double d = mu * xi * t2 / (1.0 + w);
        if (d <= 30.0) {
            const double e1 = std::exp(-mu * xi);
            const double em = d > 1e-290 ? std::expm1(d) / d : 1.0;
            return pref * e1 *
                   (1.0 / (1.0 + w) - w * (mu * xi / (1.0 + w)) * em);
        }
        // exponentials far apart, direct difference is safe
        return pref * (std::exp(-mu * xi) - w * std::exp(-w * mu * xi)) / t2;
    };
    const quad::QuadResult r =
        quad::integrate_decaying(f, w * mu, inner_options());
    return {r.value, r.abs_error, r.evaluations, r.converged};
}

// outer t-integration with a geometric boundary layer at t = 0
std::vector<double> outer_breakpoints(double lambda) {
    std::vector<double> pts;
    for (double p = 0.5 / lambda; p < 0.25; p *= 4.0) pts.push_back(p);
    pts.push_back(0.5);
    pts.push_back(0.9);
    pts.push_back(0.99);
    return pts;
}

struct Outer {
    double value;
    double abs_error;
    long evaluations;
    bool converged;
};

template <class F>
Outer outer_integrate(F&& f, double lambda, double tol) {
    long evals = 0;
    bool conv = true;
    double inner_err = 0.0;
    auto g = [&](double t) {
        const Inner v = f(t);
        evals += v.evaluations;
        conv = conv && v.converged;
        inner_err = std::max(inner_err, v.abs_error);
        return v.value;
    };
    quad::QuadOptions o;
    o.abs_tol = tol;
    o.rel_tol = 0.0;
    o.max_intervals = 3000;
    const quad::QuadResult r =
        quad::integrate_adaptive(g, 0.0, 1.0, outer_breakpoints(lambda), o);
    return {r.value, r.abs_error + inner_err, r.evaluations + evals,
            r.converged && conv};
}

// map an integral in e^2/(4 pi^2) units to the -e^2/(32 pi p0 a) normalization
double to_coeff(double integral, double p0a) {
    return -(8.0 * p0a / M_PI) * integral;
}

SigmaResult assemble(double p0a, const Outer& t0, const Outer& tpar,
                     const Outer& tz) {
    SigmaResult res;
    const double f = 8.0 * p0a / M_PI;
    res.coeffs.c0 = to_coeff(t0.value, p0a);
    res.coeffs.c_par = to_coeff(tpar.value, p0a);
    res.coeffs.c_z = to_coeff(tz.value, p0a);
    res.abs_error = f * (t0.abs_error + tpar.abs_error + tz.abs_error);
    res.evaluations = t0.evaluations + tpar.evaluations + tz.evaluations;
    res.converged = t0.converged && tpar.converged && tz.converged;
    return res;
}

const Outer kZeroOuter{0.0, 0.0, 0, true};

}  // namespace

SigmaResult sigma_te_quad(double p0a, double n, double tol) {
    if (!(p0a > 0.0)) throw std::domain_error("sigma_te_quad: p0a must be > 0");
    if (!(n >= 1.0)) throw std::domain_error("sigma_te_quad: n must be >= 1");
    if (n == 1.0) return {};
    const double lambda = 4.0 * p0a;
    const double tol_t = tol * M_PI / (8.0 * p0a) / 3.0;

    Outer t0 = outer_integrate(
        [&](double t) {
            Inner j = inner_j(lambda * t);
            j.value *= 2.0 * t * t * R_TE(t, n);
            return j;
        },
        lambda, tol_t);
    Outer tpar = outer_integrate(
        [&](double t) {
            Inner j = inner_j(lambda * t);
            j.value *= -R_TE(t, n);
            return j;
        },
        lambda, tol_t);
    return assemble(p0a, t0, tpar, kZeroOuter);
}

namespace {

// inner value of the fused 1/t^2-weighted group entering B+C and the full
// TM integrand: q_B(t) J(lam t) + R0 * inner_c_over_t2(lam t, t)
Inner fused_par_integrand(double t, double lambda, double n) {
    const double mu = lambda * t;
    Inner j = inner_j(mu);
    const double r0 = R_TM0(n);
    if (t < 0.95) {
        Inner c = inner_c_over_t2(mu, t);
        return {q_B(t, n) * j.value + r0 * c.value,
                j.abs_error + c.abs_error, j.evaluations + c.evaluations,
                j.converged && c.converged};
    }
    // w < 0.32: the two inner integrals are far from cancelling
    const double w = std::sqrt((1.0 - t) * (1.0 + t));
    Inner j2 = inner_j(w * mu);
    const double c = (j.value - w * j2.value) / (t * t);
    return {q_B(t, n) * j.value + r0 * c, j.abs_error + j2.abs_error,
            j.evaluations + j2.evaluations, j.converged && j2.converged};
}

}  // namespace

SigmaResult sigma_tm_quad(double p0a, double n, double tol) {
    if (!(p0a > 0.0)) throw std::domain_error("sigma_tm_quad: p0a must be > 0");
    if (!(n >= 1.0)) throw std::domain_error("sigma_tm_quad: n must be >= 1");
    if (n == 1.0) return {};
    const double lambda = 4.0 * p0a;
    const double tol_t = tol * M_PI / (8.0 * p0a) / 3.0;
    const double r0 = R_TM0(n);

    Outer t0 = outer_integrate(
        [&](double t) {
            const double w = std::sqrt((1.0 - t) * (1.0 + t));
            Inner j = inner_j(lambda * t);
            Inner j2 = inner_j(lambda * t * w);
            return Inner{-2.0 * (2.0 - t * t) * R_TM(t, n) * j.value +
                             4.0 * r0 * w * j2.value,
                         j.abs_error + j2.abs_error,
                         j.evaluations + j2.evaluations,
                         j.converged && j2.converged};
        },
        lambda, tol_t);
    Outer tpar = outer_integrate(
        [&](double t) { return fused_par_integrand(t, lambda, n); }, lambda,
        tol_t);
    Outer tz = outer_integrate(
        [&](double t) {
            Inner f = fused_par_integrand(t, lambda, n);
            Inner j = inner_j(lambda * t);
            return Inner{2.0 * f.value - 2.0 * R_TM(t, n) * j.value,
                         2.0 * f.abs_error + j.abs_error,
                         f.evaluations + j.evaluations,
                         f.converged && j.converged};
        },
        lambda, tol_t);
    return assemble(p0a, t0, tpar, tz);
}

std::array<SigmaResult, 4> sigma_tm_split_quad(double p0a, double n,
                                               double tol) {
    if (!(p0a > 0.0)) throw std::domain_error("sigma_tm_split_quad: p0a > 0");
    if (!(n >= 1.0)) throw std::domain_error("sigma_tm_split_quad: n >= 1");
    if (n == 1.0) return {};
    const double lambda = 4.0 * p0a;
    const double tol_t = tol * M_PI / (8.0 * p0a) / 3.0;
    const double r0 = R_TM0(n);

    // A: [2 gamma0 p0 (t^2-2) - 2 gamma3 pz] R(t)
    Outer a0 = outer_integrate(
        [&](double t) {
            Inner j = inner_j(lambda * t);
            j.value *= 2.0 * (t * t - 2.0) * R_TM(t, n);
            return j;
        },
        lambda, tol_t);
    Outer az = outer_integrate(
        [&](double t) {
            Inner j = inner_j(lambda * t);
            j.value *= -2.0 * R_TM(t, n);
            return j;
        },
        lambda, tol_t);

    // B: (2 gamma3 pz + gpar.ppar) (R(t)-R(0))/t^2
    Outer b = outer_integrate(
        [&](double t) {
            Inner j = inner_j(lambda * t);
            j.value *= q_B(t, n);
            return j;
        },
        lambda, tol_t);

    // C: (2 gamma3 pz + gpar.ppar) R0 (e1 - w e2)/t^2, fused
    Outer c = outer_integrate(
        [&](double t) {
            if (t < 0.95) {
                Inner v = inner_c_over_t2(lambda * t, t);
                v.value *= r0;
                return v;
            }
            const double w = std::sqrt((1.0 - t) * (1.0 + t));
            Inner j = inner_j(lambda * t);
            Inner j2 = inner_j(w * lambda * t);
            return Inner{r0 * (j.value - w * j2.value) / (t * t),
                         j.abs_error + j2.abs_error,
                         j.evaluations + j2.evaluations,
                         j.converged && j2.converged};
        },
        lambda, tol_t);

    // D: 4 gamma0 p0 R0 w e2
    Outer d0 = outer_integrate(
        [&](double t) {
            const double w = std::sqrt((1.0 - t) * (1.0 + t));
            Inner j = inner_j(lambda * t * w);
            j.value *= 4.0 * r0 * w;
            return j;
        },
        lambda, tol_t);

    std::array<SigmaResult, 4> out;
    out[0] = assemble(p0a, a0, kZeroOuter, az);
    out[1] = assemble(p0a, kZeroOuter, b, b);
    out[1].coeffs.c_z *= 2.0;  // (2 gamma3 pz + gpar.ppar) structure
    out[2] = assemble(p0a, kZeroOuter, c, c);
    out[2].coeffs.c_z *= 2.0;
    out[3] = assemble(p0a, d0, kZeroOuter, kZeroOuter);
    return out;
}

// ---- closed-form t-integral blocks ---------------------------------------

namespace blocks {

namespace {
double u_n(double n) { return std::sqrt((n - 1.0) / (n + 1.0)); }
double beta(double n) { return std::sqrt(n * n - 1.0); }
double LN(double n) { return std::log(n + beta(n)); }
double AT(double n) { return std::atanh((n - 1.0) / std::sqrt(n * n + 1.0)); }
}  // namespace

double J0(double n) {
    return -1.0 - 2.0 / (n + 1.0) + 2.0 * LN(n) / beta(n);
}

double J2(double n) {
    const double u = u_n(n);
    return -beta(n) * (u / 2.0 + u * u * u / 6.0);
}

double M0(double n) {
    const double n2 = n * n;
    return -1.0 + 2.0 * n2 * LN(n) / beta(n) -
           4.0 * n2 * n2 * AT(n) / (beta(n) * std::sqrt(n2 * n2 - 1.0));
}

double KAz(double n) {
    const double n2 = n * n;
    return 2.0 * n2 / ((n + 1.0) * (n2 + 1.0)) -
           4.0 * n2 * n2 * AT(n) / ((n2 - 1.0) * std::pow(n2 + 1.0, 1.5));
}

double KA0(double n) { return M0(n) - 2.0 * KAz(n); }

double KB(double n) {
    const double n2 = n * n;
    const double b = beta(n);
    const double b2 = n2 - 1.0;
    const double u = u_n(n);
    const double A = 1.0 + 2.0 * n2 / (b2 * b2);
    const double B = -(n2 + 1.0) / b2;
    const double C = -2.0 * n2 / (b2 * b2);
    const double L1 = u;
    const double L2 = u / 2.0 - u * u * u / 6.0;
    const double L3 = 2.0 * AT(n) / std::sqrt(n2 * n2 - 1.0);
    return n2 * b * b2 / ((n2 + 1.0) * (n2 + 1.0)) * (A * L1 + B * L2 + C * L3);
}

}  // namespace blocks

// ---- asymptotics -----------------------------------------------------------

SigmaCoefficients sigma_te_asympt(double p0a, double n) {
    if (n == 1.0) return {};
    const double inv = 1.0 / (M_PI * p0a);
    return {-blocks::J0(n) * inv, blocks::J2(n) * inv / 2.0, 0.0, 0.0};
}

TmAsympt sigma_tm_asympt(double p0a, double n, bool sici_refined) {
    TmAsympt out;
    if (n == 1.0) return out;
    const double lambda = 4.0 * p0a;
    const double r0 = R_TM0(n);
    const double g0 = reflection_profile_dd0(kinematics::Pol::TM, n) / 2.0;
    const double inv = 1.0 / (M_PI * p0a);

    // A: sine/cosine-integral piece plus the twice-by-parts t-integrals.
    // The truncated form uses aux_f(x) ~ 1/x.
    const double fA = sici_refined ? special::aux_f(lambda) : 1.0 / lambda;
    out.A.c0 = (8.0 * r0 / M_PI) * (M_PI / 2.0 - fA) - blocks::KA0(n) * inv;
    out.A.c_z = (4.0 * r0 / M_PI) * (M_PI / 2.0 - fA) + blocks::KAz(n) * inv;

    // B: Taylor-subtraction piece; leading term -R''(0)/2
    const double base_b = -g0 - (blocks::KB(n) - g0) / (2.0 * M_PI * p0a);
    out.B.c_par = base_b;
    out.B.c_z = 2.0 * base_b;

    // C: pure 1/(48 p0^2 a^2) term
    const double base_c = r0 / (6.0 * M_PI * p0a);
    out.C.c_par = base_c;
    out.C.c_z = 2.0 * base_c;

    // D: no 1/(p0a)^2 correction survives (the two sub-pieces cancel)
    if (sici_refined) {
        out.D.c0 = -4.0 * r0 + (8.0 * r0 / M_PI) * special::aux_f(lambda / 2.0) -
                   4.0 * r0 * inv;
    } else {
        out.D.c0 = -4.0 * r0;
    }
    return out;
}

SigmaCoefficients sigma_leading(double n) {
    const double n2 = n * n;
    const double d = (n2 + 1.0) * (n2 + 1.0);
    return {0.0, n2 * (n2 - 1.0) / d, 2.0 * (2.0 * n2 * n2 - n2 - 1.0) / d, 0.0};
}

SigmaCoefficients sigma_next(double n) {
    if (!(n >= 1.0)) throw std::domain_error("sigma_next: n must be >= 1");
    if (n == 1.0) return {};
    if (n - 1.0 < 1e-4) {
        // removable n^2-1 cancellations: linear scaling from a guard point
        // strictly outside the guarded region
        const double guard = 1.0 + 2e-4;
        return sigma_next(guard) * ((n - 1.0) / (guard - 1.0));
    }
    const double r0 = R_TM0(n);
    const double g0 = reflection_profile_dd0(kinematics::Pol::TM, n) / 2.0;
    const double W0 =
        (blocks::J0(n) + 2.0 * r0 + blocks::KA0(n)) / 2.0;
    const double Wpar =
        -blocks::J2(n) / 2.0 + (blocks::KB(n) - g0) / 2.0 - r0 / 6.0;
    const double Wz = r0 - blocks::KAz(n) + blocks::KB(n) - g0 - r0 / 3.0;
    return {-2.0 * W0 / M_PI, -Wpar / M_PI, -Wz / M_PI, 0.0};
}

SigmaCoefficients total_leading_coefficients(double n) {
    SigmaCoefficients c = sigma_leading(n);
    c.c0 = 2.0 * (n * n - 1.0) / (n * n + 1.0);
    c.c_coulomb = (n * n - 1.0) / (n * n + 1.0);
    return c;
}

SigmaCoefficients sigma_perfect() { return {0.0, -1.0, 2.0, 0.0}; }

SigmaCoefficients sigma_perfect_total() { return {2.0, -1.0, 2.0, 1.0}; }

// ---- electrostatics and the shift ------------------------------------------

dirac::Matrix4 sigma_matrix(const SigmaCoefficients& c, const FourMomentum& p,
                            double a, double e2) {
    const auto& rep = dirac::GammaRep::dirac();
    const double rad = -e2 / (32.0 * M_PI * p.p0 * a);
    dirac::Matrix4 op = rep.gamma[0] * (rad * c.c0 * p.p0);
    op += (rep.gamma[1] * p.px + rep.gamma[2] * p.py) * (rad * c.c_par);
    op += rep.gamma[3] * (rad * c.c_z * p.pz);
    op += rep.gamma[0] * (-e2 / (16.0 * M_PI * a) * c.c_coulomb);
    return op;
}

CoulombShift coulomb_shift(double n, double a, const FourMomentum& p,
                           double e2) {
    if (!(a > 0.0)) throw std::domain_error("coulomb_shift: a must be > 0");
    CoulombShift out;
    out.coeffs = {0.0, 0.0, 0.0, (n * n - 1.0) / (n * n + 1.0)};
    const Matrix2 s = dirac::sandwich(sigma_matrix(out.coeffs, p, a, e2), p);
    out.delta_E = std::real(s(0, 0));
    return out;
}

ShiftResult total_shift(double n, double a, const FourMomentum& p,
                        const Moments& mom, double e2) {
    if (!(a > 0.0)) throw std::domain_error("total_shift: a must be > 0");
    if (!(n >= 1.0)) throw std::domain_error("total_shift: n must be >= 1");
    const double tol = 1e-9 * (1.0 + mom.pz2 + mom.ppar2);
    if (mom.pz2 < p.pz * p.pz - tol)
        throw std::invalid_argument("total_shift: <p_z^2> < p_z^2");
    if (mom.ppar2 < p.ppar2() - tol)
        throw std::invalid_argument("total_shift: <p_par^2> < p_par^2");
    if (mom.px_pz * mom.px_pz + mom.py_pz * mom.py_pz >
        mom.ppar2 * mom.pz2 + tol)
        throw std::invalid_argument(
            "total_shift: cross moments violate Cauchy-Schwarz");

    const double n2 = n * n;
    const double E = p.p0;
    const double common = -e2 / (32.0 * M_PI * a * E * E);
    const double cz = 2.0 * (2.0 * n2 * n2 - n2 - 1.0) / ((n2 + 1.0) * (n2 + 1.0));
    const double cpar = n2 * (n2 - 1.0) / ((n2 + 1.0) * (n2 + 1.0));
    const double cc = 2.0 * (n2 - 1.0) / (n2 + 1.0);

    const double diag = common * (cz * mom.pz2 + cpar * mom.ppar2 + cc * E * E);
    const double off_factor =
        cpar + 2.0 * (n2 - 1.0) / (n2 + 1.0) * E / (E + p.m);
    const kinematics::complexd cross(mom.px_pz, mom.py_pz);

    ShiftResult out;
    out.spin_matrix(0, 0) = diag;
    out.spin_matrix(1, 1) = diag;
    out.spin_matrix(1, 0) = common * off_factor * cross;
    out.spin_matrix(0, 1) = std::conj(out.spin_matrix(1, 0));
    const auto ev = dirac::hermitian_eigenvalues(out.spin_matrix);
    out.delta_E_plus = ev[0];
    out.delta_E_minus = ev[1];
    out.n = n;
    out.a = a;
    out.e2 = e2;
    out.p = p;
    out.moments = mom;
    return out;
}

}  // namespace dqed::selfenergy
