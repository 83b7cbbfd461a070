#include "dqed/fresnel.hpp"

#include <cmath>

namespace dqed::fresnel {

namespace {
using kinematics::flip_kz;
using kinematics::flip_kzd;
}  // namespace

complexd reflection_left(Pol s, complexd kz, complexd kz_d, double n) {
    const double n2 = n * n;
    switch (s) {
        case Pol::TE: return (kz - kz_d) / (kz + kz_d);
        case Pol::TM: return (n2 * kz - kz_d) / (n2 * kz + kz_d);
        case Pol::C:
        case Pol::G:  return (kz - n2 * kz_d) / (kz + n2 * kz_d);
    }
    throw std::logic_error("reflection_left: unknown polarization");
}

complexd transmission_left(Pol s, complexd kz, complexd kz_d, double n) {
    const double n2 = n * n;
    switch (s) {
        case Pol::TE: return 2.0 * n * kz / (kz + kz_d);
        case Pol::TM: return 2.0 * n2 * kz / (n2 * kz + kz_d);
        case Pol::C:  return 2.0 * n2 * kz / (kz + n2 * kz_d);
        case Pol::G:  return 2.0 * n * kz / (kz + n2 * kz_d);
    }
    throw std::logic_error("transmission_left: unknown polarization");
}

complexd reflection_right(Pol s, complexd kz, complexd kz_d, double n) {
    const double n2 = n * n;
    switch (s) {
        case Pol::TE: return (kz_d - kz) / (kz + kz_d);
        case Pol::TM: return (kz_d - n2 * kz) / (kz_d + n2 * kz);
        case Pol::C:
        case Pol::G:  return (n2 * kz_d - kz) / (n2 * kz_d + kz);
    }
    throw std::logic_error("reflection_right: unknown polarization");
}

complexd transmission_right(Pol s, complexd kz, complexd kz_d, double n) {
    const double n2 = n * n;
    switch (s) {
        case Pol::TE: return 2.0 * kz_d / (n * (kz_d + kz));
        case Pol::TM: return 2.0 * kz_d / (kz_d + n2 * kz);
        case Pol::C:  return 2.0 * kz_d / (n2 * kz_d + kz);
        case Pol::G:  return 2.0 * n * kz_d / (n2 * kz_d + kz);
    }
    throw std::logic_error("transmission_right: unknown polarization");
}

FresnelSet left_coefficients(const WaveVector& k, const MediumParams& medium) {
    if (k.kz.imag() != 0.0 || k.kz.real() <= 0.0)
        throw std::domain_error("left_coefficients: requires real k_z > 0");
    FresnelSet set{Side::left, {}, k};
    for (Pol s : kinematics::kAllPols)
        set[s] = {reflection_left(s, k.kz, k.kz_d, medium.n),
                  transmission_left(s, k.kz, k.kz_d, medium.n)};
    return set;
}

FresnelSet right_coefficients(const WaveVector& k, const MediumParams& medium) {
    const bool propagating_right = k.kz.imag() == 0.0 && k.kz_d.real() < 0.0 &&
                                   k.kz_d.imag() == 0.0;
    if (!propagating_right && !k.evanescent())
        throw std::domain_error(
            "right_coefficients: requires k_z_d < 0 or an evanescent mode");
    FresnelSet set{Side::right, {}, k};
    for (Pol s : kinematics::kAllPols)
        set[s] = {reflection_right(s, k.kz, k.kz_d, medium.n),
                  transmission_right(s, k.kz, k.kz_d, medium.n)};
    return set;
}

std::vector<double> identity_residuals(const WaveVector& k,
                                       const MediumParams& medium) {
    const double n2 = medium.n * medium.n;
    std::vector<double> out;

    if (!k.evanescent()) {
        const WaveVector kf = flip_kz(k, medium);
        for (int rel = 0; rel < 6; ++rel) {
            for (Pol s : kinematics::kAllPols) {
                // normalization weight of the transmission products; the
                // longitudinal mode carries no n^2 because its polarization
                // normalization differs by n between the two sides
                // (determined by machine-zero testing over both regimes)
                const complexd ratio = s == Pol::G
                                           ? k.kz_d / k.kz
                                           : k.kz_d / (n2 * k.kz);
                const complexd RL = reflection_left(s, k.kz, k.kz_d, medium.n);
                const complexd TL = transmission_left(s, k.kz, k.kz_d, medium.n);
                const complexd RR = reflection_right(s, k.kz, k.kz_d, medium.n);
                const complexd TR = transmission_right(s, k.kz, k.kz_d, medium.n);
                const complexd RLf = reflection_left(s, kf.kz, kf.kz_d, medium.n);
                const complexd TLf = transmission_left(s, kf.kz, kf.kz_d, medium.n);
                const complexd RRf = reflection_right(s, kf.kz, kf.kz_d, medium.n);
                const complexd TRf = transmission_right(s, kf.kz, kf.kz_d, medium.n);
                complexd resid;
                switch (rel) {
                    case 0: resid = std::conj(TRf) * TRf / ratio + std::conj(RL) * RL - 1.0; break;
                    case 1: resid = ratio * TL * std::conj(TL) + RRf * std::conj(RRf) - 1.0; break;
                    case 2: resid = ratio * RLf * std::conj(TLf) + TR * std::conj(RR); break;
                    case 3: resid = ratio * std::conj(RL) * TL + RRf * std::conj(TRf); break;
                    case 4: resid = std::conj(RRf) - RR; break;
                    case 5: resid = ratio * TL - TR; break;
                }
                out.push_back(std::abs(resid));
            }
        }
        return out;
    }

    // evanescent: flip k_z^d only, staying on the imaginary-k_z sheet
    const WaveVector kf = flip_kzd(k, medium);
    for (int rel = 0; rel < 4; ++rel) {
        for (Pol s : kinematics::kAllPols) {
            const complexd RR = reflection_right(s, k.kz, k.kz_d, medium.n);
            const complexd TR = transmission_right(s, k.kz, k.kz_d, medium.n);
            const complexd RRf = reflection_right(s, kf.kz, kf.kz_d, medium.n);
            const complexd TRf = transmission_right(s, kf.kz, kf.kz_d, medium.n);
            complexd resid;
            switch (rel) {
                case 0: resid = RR * std::conj(RR) - 1.0; break;
                case 1: resid = std::conj(RRf) - RR; break;
                case 2: resid = std::conj(RRf) * TRf - TR; break;
                case 3: resid = RRf * std::conj(TRf) - std::conj(TR); break;
            }
            out.push_back(std::abs(resid));
        }
    }
    return out;
}

double reflection_profile(Pol s, double t, double n) {
    if (!(t >= 0.0 && t <= 1.0))
        throw std::domain_error("reflection_profile: t must be in [0, 1]");
    if (!(n >= 1.0)) throw std::domain_error("reflection_profile: n must be >= 1");
    const double b2 = n * n - 1.0;
    const double sq = std::sqrt(b2 * t * t + 1.0);
    switch (s) {
        case Pol::TE:
            // (1-s)/(1+s) written as -b^2 t^2/(1+s)^2: exact O(t^2) form
            return -b2 * t * t / ((1.0 + sq) * (1.0 + sq));
        case Pol::TM:
            return (n * n - sq) / (n * n + sq);
        default:
            throw std::domain_error("reflection_profile: TE or TM only");
    }
}

double reflection_profile_dd0(Pol s, double n) {
    const double n2 = n * n;
    switch (s) {
        case Pol::TE: return -(n2 - 1.0) / 2.0;
        case Pol::TM: return -2.0 * n2 * (n2 - 1.0) / ((n2 + 1.0) * (n2 + 1.0));
        default: throw std::domain_error("reflection_profile_dd0: TE or TM only");
    }
}

FresnelSet perfect_limit_set() {
    FresnelSet set{Side::left, {}, {}};
    set[Pol::TE] = {-1.0, 0.0};
    set[Pol::TM] = {+1.0, 0.0};
    set[Pol::C] = {-1.0, 0.0};
    set[Pol::G] = {-1.0, 0.0};
    return set;
}

}  // namespace dqed::fresnel
