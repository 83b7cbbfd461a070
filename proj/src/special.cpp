#include "dqed/special.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "dqed/quadrature.hpp"

namespace dqed::special {

namespace {

constexpr double kEulerGamma = 0.5772156649015328606;
constexpr double kSeriesCut = 4.0;

SiCi sici_series(double x) {
    // Si = sum (-1)^k x^{2k+1}/((2k+1)(2k+1)!),  Ci = gamma + ln x + sum ...
    const double x2 = x * x;
    double si = x, ci = 0.0;
    double term_si = x;   // x^{2k+1}/(2k+1)!
    double term_ci = 1.0; // x^{2k}/(2k)!
    for (int k = 1; k <= 40; ++k) {
        term_ci *= -x2 / ((2 * k - 1) * (2 * k));
        ci += term_ci / (2 * k);
        term_si *= -x2 / ((2 * k) * (2 * k + 1));
        si += term_si / (2 * k + 1);
        if (std::abs(term_si) < 1e-18 && std::abs(term_ci) < 1e-18) break;
    }
    return {si, kEulerGamma + std::log(x) + ci};
}

double aux_by_quadrature(double x, bool weighted) {
    quad::QuadOptions opt;
    opt.abs_tol = 1e-15;
    opt.rel_tol = 1e-14;
    auto f = [x, weighted](double t) {
        const double base = std::exp(-x * t) / (1.0 + t * t);
        return weighted ? t * base : base;
    };
    return quad::integrate_decaying(f, x, opt).value;
}

}  // namespace

SiCi sici(double x) {
    if (x < 0.0) throw std::domain_error("sici: x must be >= 0");
    if (x == 0.0) return {0.0, -std::numeric_limits<double>::infinity()};
    if (x < kSeriesCut) return sici_series(x);
    const double f = aux_by_quadrature(x, false);
    const double g = aux_by_quadrature(x, true);
    const double s = std::sin(x), c = std::cos(x);
    return {M_PI / 2.0 - f * c - g * s, f * s - g * c};
}

double aux_f(double x) {
    if (!(x > 0.0)) throw std::domain_error("aux_f: x must be > 0");
    if (x >= kSeriesCut) return aux_by_quadrature(x, false);
    const SiCi v = sici_series(x);
    return std::sin(x) * v.ci + std::cos(x) * (M_PI / 2.0 - v.si);
}

double aux_g(double x) {
    if (!(x > 0.0)) throw std::domain_error("aux_g: x must be > 0");
    if (x >= kSeriesCut) return aux_by_quadrature(x, true);
    const SiCi v = sici_series(x);
    return std::sin(x) * (M_PI / 2.0 - v.si) - std::cos(x) * v.ci;
}

}  // namespace dqed::special
