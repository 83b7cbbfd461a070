#include "dqed/greens.hpp"

#include <array>
#include <cmath>

namespace dqed::greens {

namespace {

using fresnel::reflection_left;
using fresnel::transmission_right;
using kinematics::kzd_continued;

// R^L at the pole k_z = -i rho: k_z^d = -i rho s, s = sqrt((n^2-1)t^2 + 1),
// which reproduces the real profiles R^L_sigma(t).
double check_t(double t) {
    if (!(t >= 0.0 && t <= 1.0))
        throw std::domain_error("greens: t must be in [0, 1]");
    return t;
}

}  // namespace

complexd contour_kz_integral(Pol sigma, double rho, double t, double z_sum,
                             double n) {
    check_t(t);
    if (!(rho > 0.0)) throw std::domain_error("greens: rho must be > 0");
    if (!(z_sum < 0.0)) throw std::domain_error("greens: z_sum must be < 0");

    if (sigma == Pol::TE) {
        return M_PI / rho * std::exp(rho * z_sum) *
               fresnel::reflection_profile(Pol::TE, t, n);
    }
    if (sigma != Pol::TM)
        throw std::domain_error("greens: kernel defined for TE and TM");
    if (t <= 0.0)
        throw std::domain_error(
            "greens: TM poles coincide at t = 0 (handle by subtraction)");

    const double w = std::sqrt(1.0 - t * t);  // kpar = rho w
    const double Rt = fresnel::reflection_profile(Pol::TM, t, n);
    const double R0 = fresnel::reflection_profile(Pol::TM, 0.0, n);
    return M_PI / (rho * t * t) *
           (w * R0 * std::exp(rho * w * z_sum) -
            (1.0 - t * t) * Rt * std::exp(rho * z_sum));
}

complexd contour_kz_integral_perfect(Pol sigma, double rho, double t,
                                     double z_sum) {
    check_t(t);
    if (sigma == Pol::TE) return -M_PI / rho * std::exp(rho * z_sum);
    const double w = std::sqrt(1.0 - t * t);
    return M_PI / (rho * t * t) *
           (w * std::exp(rho * w * z_sum) -
            (1.0 - t * t) * std::exp(rho * z_sum));
}

double detour_equivalence_residual(Pol sigma, double rho, double t,
                                   double z_sum, double n,
                                   const quad::QuadOptions& opt) {
    check_t(t);
    const double kpar = rho * std::sqrt(1.0 - t * t);
    const double gamma = kpar * std::sqrt(n * n - 1.0);
    if (gamma == 0.0) return 0.0;  // no cut, both pieces vanish

    const double weight_kpar2 = kpar * kpar;
    auto tm_weight = [&](complexd kz) -> complexd {
        if (sigma == Pol::TE) return 1.0;
        return weight_kpar2 / (weight_kpar2 + kz * kz);
    };

    // interval form over k_z^d in (-Gamma, 0): kz = -i y, y = sqrt(G^2-kd^2)/n
    auto interval_f = [&](double kd) {
        const double y = std::sqrt(gamma * gamma - kd * kd) / n;
        const complexd kz(0.0, -y);
        const complexd tr = transmission_right(sigma, kz, kd, n);
        const complexd val = std::conj(tr) * tr * tm_weight(kz) *
                             std::exp(y * z_sum) /
                             complexd(rho * rho - y * y);
        return std::real(val);  // imaginary part vanishes identically
    };
    quad::QuadResult interval =
        quad::integrate_adaptive(interval_f, -gamma, 0.0, opt);

    // cut-detour form: left sheet down, right sheet up; R^L jumps across
    auto detour_f = [&](double y) {
        const complexd kz(0.0, -y);
        const complexd kd_left =
            kzd_continued(kz, kpar, n, quad::Sheet::left_of_cut);
        const complexd kd_right =
            kzd_continued(kz, kpar, n, quad::Sheet::right_of_cut);
        const complexd jump = reflection_left(sigma, kz, kd_left, n) -
                              reflection_left(sigma, kz, kd_right, n);
        const complexd val = complexd(0.0, -1.0) * jump * tm_weight(kz) *
                             std::exp(y * z_sum) /
                             complexd(rho * rho - y * y);
        return std::real(val);
    };
    quad::QuadResult detour =
        quad::integrate_adaptive(detour_f, 0.0, gamma / n, opt);

    return std::abs(interval.value - detour.value);
}

double waveeq_reflection_residual(Pol sigma, double n, double Z,
                                  double eps_base,
                                  const quad::QuadOptions& opt) {
    if (!(Z < 0.0)) throw std::domain_error("waveeq: Z must be < 0");
    const double kpar = 1.0;
    const double gamma = kpar * std::sqrt(n * n - 1.0);
    const MediumParams medium(n);

    // evanescent interval piece (undamped, finite range)
    auto interval_f = [&](double kd) {
        const double y = std::sqrt(gamma * gamma - kd * kd) / n;
        const complexd kz(0.0, -y);
        const complexd tr = transmission_right(sigma, kz, kd, n);
        return std::real(std::conj(tr) * tr) * std::exp(y * Z);
    };
    const double interval =
        gamma > 0.0 ? quad::integrate_adaptive(interval_f, -gamma, 0.0, opt).value
                    : 0.0;

    // damped real-axis reflection integral; R^L is even in k_z
    auto damped_axis = [&](double eps) {
        auto f = [&](double kz) {
            const auto k = kinematics::make_wavevector(kpar, 0.0, kz, medium);
            const complexd rl = reflection_left(sigma, k.kz, k.kz_d, n);
            return 2.0 * std::real(rl) * std::cos(kz * Z) * std::exp(-eps * kz);
        };
        return quad::integrate_decaying(f, eps, opt, 40.0).value;
    };

    std::vector<std::pair<double, double>> samples;
    for (double e : {eps_base, eps_base / 2.0, eps_base / 4.0, eps_base / 8.0})
        samples.push_back({e, damped_axis(e)});
    const auto ext = quad::richardson(samples, 1.0);
    if (!ext.monotone)
        throw quad::convergence_failure(
            "waveeq_reflection_residual: damping extrapolation not monotone",
            std::abs(ext.value + interval));
    return std::abs(ext.value + interval);
}

double waveeq_mixed_residual(Pol sigma, double n, double z, double zp,
                             double eps_base, const quad::QuadOptions& opt) {
    if (!(z < 0.0 && zp > 0.0))
        throw std::domain_error("waveeq: requires z < 0 < zp");
    const double kpar = 1.0;
    const MediumParams medium(n);

    // int dk_z^d e^{i k_z z - i k_z^d zp} T^R over the whole real axis,
    // continuous through the evanescent window |k_z^d| < Gamma
    auto value_at = [&](double kd) -> complexd {
        const auto k = kinematics::make_wavevector_right(kpar, 0.0, kd, medium);
        const complexd tr = transmission_right(sigma, k.kz, k.kz_d, n);
        const complexd phase =
            std::exp(complexd(0.0, 1.0) * (k.kz * z - k.kz_d * zp));
        return tr * phase;
    };
    auto damped = [&](double eps) -> complexd {
        auto fre = [&](double kd) {
            return std::real(value_at(kd)) * std::exp(-eps * std::abs(kd));
        };
        auto fim = [&](double kd) {
            return std::imag(value_at(kd)) * std::exp(-eps * std::abs(kd));
        };
        auto half = [&](auto&& f) {
            auto pos = quad::integrate_decaying(f, eps, opt, 40.0);
            auto neg = quad::integrate_decaying(
                [&f](double x) { return f(-x); }, eps, opt, 40.0);
            return pos.value + neg.value;
        };
        return {half(fre), half(fim)};
    };

    std::vector<std::pair<double, double>> re_s, im_s;
    for (double e : {eps_base, eps_base / 2.0, eps_base / 4.0, eps_base / 8.0}) {
        const complexd v = damped(e);
        re_s.push_back({e, v.real()});
        im_s.push_back({e, v.imag()});
    }
    const auto re = quad::richardson(re_s, 1.0);
    const auto im = quad::richardson(im_s, 1.0);
    if (!re.monotone || !im.monotone)
        throw quad::convergence_failure(
            "waveeq_mixed_residual: damping extrapolation not monotone",
            std::hypot(re.value, im.value));
    return std::hypot(re.value, im.value);
}

StaticGreenValue static_green_closed(double n, double a) {
    if (!(a > 0.0)) throw std::domain_error("static_green: a must be > 0");
    if (!(n >= 1.0)) throw std::domain_error("static_green: n must be >= 1");
    return {n, a, -(n * n - 1.0) / (n * n + 1.0) / (8.0 * M_PI * a)};
}

StaticGreenValue static_green_numeric(double n, double a,
                                      const quad::QuadOptions& opt) {
    if (!(a > 0.0)) throw std::domain_error("static_green: a must be > 0");
    if (!(n >= 1.0)) throw std::domain_error("static_green: n must be >= 1");
    // k_z residue at -i k_par leaves pi e^{-2 a k_par}/k_par; the k_par
    // integral over the measure k_par dk_par is done numerically
    auto f = [a](double kpar) { return M_PI * std::exp(-2.0 * a * kpar); };
    quad::QuadOptions o = opt;
    o.throw_on_failure = true;
    const quad::QuadResult r = quad::integrate_decaying(f, 2.0 * a, o);
    const double pref = -(n * n - 1.0) / (n * n + 1.0) / (4.0 * M_PI * M_PI);
    return {n, a, pref * r.value};
}

double free_limit_residual(Pol sigma,
                           const std::vector<std::array<double, 3>>& samples) {
    double worst = 0.0;
    for (const auto& s : samples)
        worst = std::max(
            worst, std::abs(contour_kz_integral(sigma, s[0], s[1], s[2], 1.0)));
    return worst;
}

}  // namespace dqed::greens
