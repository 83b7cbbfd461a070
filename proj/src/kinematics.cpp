#include "dqed/kinematics.hpp"

#include <cmath>

namespace dqed::kinematics {

namespace {

bool is_real(complexd z) { return z.imag() == 0.0; }
bool is_neg_imag(complexd z) { return z.real() == 0.0 && z.imag() < 0.0; }

double sgn(double x) { return x < 0.0 ? -1.0 : 1.0; }

}  // namespace

WaveVector make_wavevector(double kx, double ky, complexd kz,
                           const MediumParams& medium) {
    WaveVector k;
    k.kx = kx;
    k.ky = ky;
    k.kz = kz;
    k.n = medium.n;
    const double kp2 = k.kpar2();
    k.gamma_cut = std::sqrt(kp2 * (medium.n * medium.n - 1.0));

    if (is_real(kz)) {
        const double x = kz.real();
        k.kz_d = sgn(x) * std::sqrt(medium.n * medium.n * x * x +
                                    k.gamma_cut * k.gamma_cut);
        k.omega = std::sqrt(x * x + kp2);
        return k;
    }
    if (!is_neg_imag(kz))
        throw std::domain_error(
            "make_wavevector: k_z must be real or on the negative imaginary "
            "axis (evanescent convention)");

    const double kappa = -kz.imag();
    if (kappa * kappa >= kp2)
        throw std::domain_error(
            "make_wavevector: k_z on the omega = 0 branch cut (kappa >= k_par)");
    const double K2 = k.gamma_cut * k.gamma_cut -
                      medium.n * medium.n * kappa * kappa;
    if (K2 < 0.0)
        throw std::domain_error(
            "make_wavevector: kappa > Gamma/n has no evanescent partner");
    k.kz_d = -std::sqrt(K2);  // right-incident default
    k.omega = std::sqrt(kp2 - kappa * kappa);
    return k;
}

WaveVector make_wavevector_right(double kx, double ky, double kz_d,
                                 const MediumParams& medium) {
    WaveVector k;
    k.kx = kx;
    k.ky = ky;
    k.kz_d = kz_d;
    k.n = medium.n;
    const double kp2 = k.kpar2();
    k.gamma_cut = std::sqrt(kp2 * (medium.n * medium.n - 1.0));
    k.omega = std::sqrt(kz_d * kz_d + kp2) / medium.n;

    const double disc = kz_d * kz_d - k.gamma_cut * k.gamma_cut;
    if (disc > 0.0) {
        k.kz = sgn(kz_d) * std::sqrt(disc) / medium.n;
    } else {
        // totally internally reflected: exponentially falling for z -> -inf
        k.kz = complexd(0.0, -std::sqrt(-disc) / medium.n);
    }
    return k;
}

WaveVector flip_kz(const WaveVector& k, const MediumParams& medium) {
    if (!is_real(k.kz))
        throw std::domain_error("flip_kz: defined for real k_z only");
    return make_wavevector(k.kx, k.ky, -k.kz, medium);
}

WaveVector flip_kzd(const WaveVector& k, const MediumParams& medium) {
    if (!k.evanescent())
        throw std::domain_error("flip_kzd: defined for evanescent modes only");
    WaveVector f = make_wavevector(k.kx, k.ky, k.kz, medium);
    f.kz_d = -k.kz_d;  // stay on the same (imaginary-k_z) sheet
    return f;
}

WaveVector canonicalize_direction(const WaveVector& k) {
    WaveVector c = k;
    c.kx = k.kpar();
    c.ky = 0.0;
    return c;
}

complexd kzd_continued(complexd kz, double kpar, double n, quad::Sheet sheet) {
    const double c = kpar * std::sqrt(n * n - 1.0) / n;  // cut tip Gamma/n
    const bool on_cut =
        kz.real() == 0.0 && kz.imag() < 0.0 && -kz.imag() < c;
    if (on_cut) {
        const double y = -kz.imag();
        const double K = std::sqrt(std::max(0.0, c * c * n * n - n * n * y * y));
        switch (sheet) {
            case quad::Sheet::left_of_cut: return -K;
            case quad::Sheet::right_of_cut: return +K;
            case quad::Sheet::principal:
                throw std::domain_error(
                    "kzd_continued: point on the branch cut needs a sheet flag");
        }
    }
    if (kz == complexd(0.0, 0.0))
        throw std::domain_error("kzd_continued: branch point k_z = 0");
    // n kz sqrt(1 + c^2/kz^2): single-valued off the cut, equals the sgn
    // branch on the real axis and -i sqrt(n^2 y^2 - Gamma^2) below the cut
    return n * kz * std::sqrt(1.0 + c * c / (kz * kz));
}

// ---- polarization ------------------------------------------------------

PolarizationVector polarization_vector(Pol sigma, const WaveVector& k) {
    PolarizationVector v{sigma, {complexd(0.0), 0.0, 0.0, 0.0}};
    const double kpar = k.kpar();
    switch (sigma) {
        case Pol::C:
            v.e[0] = 1.0;
            return v;
        case Pol::TE: {
            if (kpar <= 0.0)
                throw std::domain_error(
                    "polarization_vector: TE degenerate at k_par = 0");
            v.e[1] = k.ky / kpar;
            v.e[2] = -k.kx / kpar;
            return v;
        }
        case Pol::G: {
            const complexd norm = std::sqrt(k.k2());
            if (std::abs(norm) == 0.0)
                throw std::domain_error("polarization_vector: G at k^2 = 0");
            v.e[1] = k.kx / norm;
            v.e[2] = k.ky / norm;
            v.e[3] = k.kz / norm;
            return v;
        }
        case Pol::TM: {
            if (kpar <= 0.0)
                throw std::domain_error(
                    "polarization_vector: TM degenerate at k_par = 0");
            const complexd norm = std::sqrt(k.k2() * k.kpar2());
            if (std::abs(norm) == 0.0)
                throw std::domain_error("polarization_vector: TM at k^2 = 0");
            v.e[1] = k.kx * k.kz / norm;
            v.e[2] = k.ky * k.kz / norm;
            v.e[3] = -k.kpar2() / norm;
            return v;
        }
    }
    throw std::logic_error("polarization_vector: unknown polarization");
}

PolarizationTensor polarization_metric(Pol sigma, const WaveVector& k) {
    return polarization_metric(sigma, k.kx, k.ky, k.kz);
}

PolarizationTensor polarization_metric(Pol sigma, double kx, double ky,
                                       complexd kz) {
    PolarizationTensor t{sigma, {}};
    for (auto& row : t.g) row.fill(complexd(0.0));

    const double kp2 = kx * kx + ky * ky;
    const complexd k2 = complexd(kp2, 0.0) + kz * kz;
    const double km[2] = {kx, ky};

    switch (sigma) {
        case Pol::C:
            t.g[0][0] = 1.0;
            return t;
        case Pol::TE: {
            if (kp2 <= 0.0)
                throw std::domain_error("polarization_metric: TE at k_par = 0");
            for (int m = 0; m < 2; ++m)
                for (int n2 = 0; n2 < 2; ++n2)
                    t.g[m + 1][n2 + 1] =
                        -((m == n2 ? 1.0 : 0.0) - km[m] * km[n2] / kp2);
            return t;
        }
        case Pol::TM: {
            if (kp2 <= 0.0)
                throw std::domain_error("polarization_metric: TM at k_par = 0");
            if (std::abs(k2) == 0.0)
                throw std::domain_error(
                    "polarization_metric: TM pole at spatial k^2 = 0");
            for (int m = 0; m < 2; ++m) {
                for (int n2 = 0; n2 < 2; ++n2)
                    t.g[m + 1][n2 + 1] = km[m] * km[n2] * kz * kz / (k2 * kp2);
                // asymmetric entries from the defining substitution d -> ik
                // acting on e^{i k_z (z+z')}; both carry the unconjugated k_z
                t.g[m + 1][3] = km[m] * kz / k2;
                t.g[3][m + 1] = -kz * km[m] / k2;
            }
            t.g[3][3] = -kp2 / k2;
            return t;
        }
        case Pol::G: {
            if (std::abs(k2) == 0.0)
                throw std::domain_error(
                    "polarization_metric: G pole at spatial k^2 = 0");
            for (int m = 0; m < 2; ++m) {
                for (int n2 = 0; n2 < 2; ++n2)
                    t.g[m + 1][n2 + 1] = -km[m] * km[n2] / k2;
                t.g[m + 1][3] = kz * km[m] / k2;
                t.g[3][m + 1] = -kz * km[m] / k2;
            }
            t.g[3][3] = kz * kz / k2;
            return t;
        }
    }
    throw std::logic_error("polarization_metric: unknown polarization");
}

CompletenessResidual completeness_residual(const WaveVector& k) {
    if (k.evanescent())
        throw std::domain_error("completeness_residual: propagating k required");
    if (k.kpar() <= 0.0)
        throw std::domain_error("completeness_residual: k_par > 0 required");

    const double eta[4] = {1.0, -1.0, -1.0, -1.0};  // metric diagonal

    Tensor4 full{}, phys{};
    for (Pol s : kAllPols) {
        const auto v = polarization_vector(s, k);
        const double w = pol_weight(s);
        for (int mu = 0; mu < 4; ++mu)
            for (int nu = 0; nu < 4; ++nu) {
                const complexd term = w * v.e[mu] * v.e[nu];
                full[mu][nu] += term;
                if (s == Pol::TE || s == Pol::TM) phys[mu][nu] += term;
            }
    }

    // khat = spatial unit vector along k (real for propagating modes)
    const double kabs = std::sqrt(std::abs(k.k2()));
    const double khat[4] = {0.0, k.kx / kabs, k.ky / kabs, k.kz.real() / kabs};

    CompletenessResidual r{0.0, 0.0};
    for (int mu = 0; mu < 4; ++mu)
        for (int nu = 0; nu < 4; ++nu) {
            const double gmn = (mu == nu) ? eta[mu] : 0.0;
            const double eta_term = (mu == 0 && nu == 0) ? 1.0 : 0.0;
            r.full_sum = std::max(r.full_sum, std::abs(full[mu][nu] - gmn));
            r.physical_sum = std::max(
                r.physical_sum,
                std::abs(phys[mu][nu] - (gmn - eta_term + khat[mu] * khat[nu])));
        }
    return r;
}

}  // namespace dqed::kinematics
