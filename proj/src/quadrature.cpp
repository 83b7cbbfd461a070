#include "dqed/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

namespace dqed::quad {

namespace {

// 15-point Kronrod abscissae/weights and the embedded 7-point Gauss weights
// on [-1, 1] (QUADPACK dqk15 constants).
constexpr double kXgk[8] = {
    0.9914553711208126, 0.9491079123427585, 0.8648644233597691,
    0.7415311855993944, 0.5860872354676911, 0.4058451513773972,
    0.2077849550078985, 0.0};
constexpr double kWgk[8] = {
    0.0229353220105292, 0.0630920926299785, 0.1047900103222502,
    0.1406532597155259, 0.1690047266392679, 0.1903505780647854,
    0.2044329400752989, 0.2094821410847278};
constexpr double kWg[4] = {
    0.1294849661688697, 0.2797053914892767, 0.3818300505051189,
    0.4179591836734694};

struct RuleOut {
    double integral;
    double error;
    double resabs;
};

// One G7/K15 application on [a,b]; error estimate follows QUADPACK's
// resasc-based sharpening.
template <class F>
RuleOut gk15(F&& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);

    double fv[15];
    // index i in [0,7]: node pair c +- h*xgk[i]; i==7 is the centre
    for (int i = 0; i < 7; ++i) {
        fv[i] = f(c - h * kXgk[i]);
        fv[14 - i] = f(c + h * kXgk[i]);
    }
    fv[7] = f(c);

    double resk = kWgk[7] * fv[7];
    double resg = kWg[3] * fv[7];
    double resabs = kWgk[7] * std::abs(fv[7]);
    for (int i = 0; i < 7; ++i) {
        const double s = fv[i] + fv[14 - i];
        resk += kWgk[i] * s;
        resabs += kWgk[i] * (std::abs(fv[i]) + std::abs(fv[14 - i]));
        if (i % 2 == 1) resg += kWg[i / 2] * s;
    }
    const double reskh = resk * 0.5;
    double resasc = kWgk[7] * std::abs(fv[7] - reskh);
    for (int i = 0; i < 7; ++i)
        resasc += kWgk[i] * (std::abs(fv[i] - reskh) + std::abs(fv[14 - i] - reskh));

    const double habs = std::abs(h);
    resabs *= habs;
    resasc *= habs;
    double err = std::abs(resk - resg) * habs;
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    const double eps = std::numeric_limits<double>::epsilon();
    const double uflow = std::numeric_limits<double>::min();
    if (resabs > uflow / (50.0 * eps)) err = std::max(err, 50.0 * eps * resabs);

    return {resk * h, err, resabs};
}

struct Interval {
    double a, b, value, error;
    bool operator<(const Interval& o) const { return error < o.error; }
};

QuadResult adapt(const Integrand& f, std::vector<Interval> init,
                 const QuadOptions& opt, long evals_so_far) {
    QuadResult out;
    out.evaluations = evals_so_far;

    std::priority_queue<Interval> heap;
    double total = 0.0, toterr = 0.0;
    for (const auto& iv : init) {
        total += iv.value;
        toterr += iv.error;
        heap.push(iv);
    }

    const double eps = std::numeric_limits<double>::epsilon();
    double stuck_err = 0.0;  // intervals at the bisection roundoff floor
    int n_intervals = static_cast<int>(init.size());
    while (!heap.empty() && n_intervals < opt.max_intervals) {
        const double target = std::max(opt.abs_tol, opt.rel_tol * std::abs(total));
        if (toterr + stuck_err <= target) break;

        Interval worst = heap.top();
        heap.pop();
        // too narrow to bisect meaningfully: set aside, keep refining others
        const double width = worst.b - worst.a;
        const double scale = std::max({std::abs(worst.a), std::abs(worst.b), 1.0});
        if (width <= 16.0 * eps * scale) {
            stuck_err += worst.error;  // its value stays counted in total
            toterr -= worst.error;
            continue;
        }

        const double m = 0.5 * (worst.a + worst.b);
        RuleOut l = gk15(f, worst.a, m);
        RuleOut r = gk15(f, m, worst.b);
        out.evaluations += 30;

        total += l.integral + r.integral - worst.value;
        toterr += l.error + r.error - worst.error;
        heap.push({worst.a, m, l.integral, l.error});
        heap.push({m, worst.b, r.integral, r.error});
        ++n_intervals;
    }

    out.value = total;
    out.abs_error = toterr + stuck_err;
    out.converged = out.abs_error <=
                    std::max(opt.abs_tol, opt.rel_tol * std::abs(total));
    if (!out.converged && opt.throw_on_failure)
        throw convergence_failure("adaptive quadrature did not converge",
                                  out.abs_error);
    return out;
}

}  // namespace

QuadResult integrate_adaptive(const Integrand& f, double a, double b,
                              const QuadOptions& opt) {
    return integrate_adaptive(f, a, b, {}, opt);
}

QuadResult integrate_adaptive(const Integrand& f, double a, double b,
                              const std::vector<double>& breakpoints,
                              const QuadOptions& opt) {
    if (!(a < b)) {
        if (a == b) return {};
        throw std::invalid_argument("integrate_adaptive: requires a <= b");
    }
    std::vector<double> pts{a};
    for (double p : breakpoints)
        if (p > a && p < b) pts.push_back(p);
    pts.push_back(b);
    std::sort(pts.begin(), pts.end());

    std::vector<Interval> init;
    long evals = 0;
    for (size_t i = 0; i + 1 < pts.size(); ++i) {
        if (pts[i + 1] <= pts[i]) continue;
        RuleOut r = gk15(f, pts[i], pts[i + 1]);
        evals += 15;
        init.push_back({pts[i], pts[i + 1], r.integral, r.error});
    }
    return adapt(f, std::move(init), opt, evals);
}

QuadResult integrate_semi_infinite(const Integrand& f, double a,
                                   const QuadOptions& opt) {
    // x = a + u/(1-u), dx = du/(1-u)^2; GK nodes never touch u = 1
    auto g = [&f, a](double u) {
        const double om = 1.0 - u;
        const double x = a + u / om;
        return f(x) / (om * om);
    };
    return integrate_adaptive(g, 0.0, 1.0, {0.5, 0.9, 0.99}, opt);
}

QuadResult integrate_decaying(const Integrand& f, double rate,
                              const QuadOptions& opt, double exponent_cut) {
    if (!(rate > 0.0))
        throw std::invalid_argument("integrate_decaying: rate must be > 0");
    const double xmax = exponent_cut / rate;
    // geometric seeds resolve both the x ~ 1/rate layer and any slow prefactor
    std::vector<double> pts;
    for (double p = 0.25 / rate; p < xmax; p *= 4.0) pts.push_back(p);
    QuadResult res = integrate_adaptive(f, 0.0, xmax, pts, opt);
    // tail bound: |f| <= |f(xmax)| * exp(-rate (x - xmax)) beyond the cut
    res.abs_error += std::abs(f(xmax)) / rate;
    res.evaluations += 1;
    return res;
}

// ---- contour ----------------------------------------------------------

ContourSpec ContourSpec::real_axis_with_cut_detour(double K, double cut_depth) {
    ContourSpec spec;
    const complexd i(0.0, 1.0);
    spec.segments.push_back({-K, 0.0, Sheet::principal});
    spec.segments.push_back({0.0, -i * cut_depth, Sheet::left_of_cut});
    spec.segments.push_back({-i * cut_depth, 0.0, Sheet::right_of_cut});
    spec.segments.push_back({0.0, K, Sheet::principal});
    return spec;
}

void ContourSpec::validate() const {
    for (size_t i = 0; i + 1 < segments.size(); ++i) {
        if (std::abs(segments[i].end - segments[i + 1].start) > 1e-14)
            throw std::invalid_argument("ContourSpec: segments not contiguous");
    }
}

QuadResultC integrate_contour(const ContourIntegrand& f, const ContourSpec& spec,
                              const QuadOptions& opt) {
    spec.validate();
    QuadResultC out;
    QuadOptions seg_opt = opt;
    seg_opt.throw_on_failure = false;
    for (size_t s = 0; s < spec.segments.size(); ++s) {
        const auto& seg = spec.segments[s];
        const complexd dz = seg.end - seg.start;
        if (std::abs(dz) == 0.0) continue;
        auto re = [&](double u) {
            return std::real(f(seg.start + u * dz, seg.sheet) * dz);
        };
        auto im = [&](double u) {
            return std::imag(f(seg.start + u * dz, seg.sheet) * dz);
        };
        QuadResult rr = integrate_adaptive(re, 0.0, 1.0, seg_opt);
        QuadResult ri = integrate_adaptive(im, 0.0, 1.0, seg_opt);
        out.value += complexd(rr.value, ri.value);
        out.abs_error += rr.abs_error + ri.abs_error;
        out.evaluations += rr.evaluations + ri.evaluations;
        if (!(rr.converged && ri.converged)) {
            out.converged = false;
            if (opt.throw_on_failure)
                throw convergence_failure(
                    "contour segment " + std::to_string(s) + " did not converge",
                    rr.abs_error + ri.abs_error);
        }
    }
    return out;
}

// ---- Richardson --------------------------------------------------------

RichardsonResult richardson(const std::vector<std::pair<double, double>>& samples,
                            double order) {
    if (samples.size() < 2)
        throw std::invalid_argument("richardson: need at least 2 samples");
    for (size_t i = 0; i + 1 < samples.size(); ++i)
        if (!(samples[i + 1].first < samples[i].first))
            throw std::invalid_argument("richardson: h must strictly decrease");

    // polynomial Neville extrapolation to 0 in the variable x = h^order;
    // the first elimination level removes the O(h^order) term exactly
    RichardsonResult out;
    std::vector<double> x, T;
    for (const auto& [hi, vi] : samples) {
        x.push_back(std::pow(hi, order));
        T.push_back(vi);
    }
    const size_t N = T.size();
    double prev_corner = T[0];
    double prev_step = std::numeric_limits<double>::infinity();
    for (size_t k = 1; k < N; ++k) {
        for (size_t i = 0; i + k < N; ++i)
            T[i] = T[i + 1] + (T[i + 1] - T[i]) / (x[i] / x[i + k] - 1.0);
        const double step = std::abs(T[0] - prev_corner);
        if (k > 1 && step > prev_step * 4.0) out.monotone = false;
        prev_corner = T[0];
        prev_step = step;
    }
    out.value = T[0];
    return out;
}

}  // namespace dqed::quad
