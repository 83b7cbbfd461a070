#pragma once

#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

// Adaptive Gauss-Kronrod quadrature (G7/K15 pair), semi-infinite integrals,
// complex contour segments with branch-sheet flags, and Richardson
// extrapolation. All engines are stateless and reentrant.

namespace dqed::quad {

using complexd = std::complex<double>;

class convergence_failure : public std::runtime_error {
public:
    convergence_failure(const std::string& what, double achieved)
        : std::runtime_error(what), achieved_error(achieved) {}
    double achieved_error;
};

struct QuadResult {
    double value = 0.0;
    double abs_error = 0.0;   // conservative estimate
    long evaluations = 0;
    bool converged = true;

    QuadResult& operator+=(const QuadResult& o) {
        value += o.value;
        abs_error += o.abs_error;
        evaluations += o.evaluations;
        converged = converged && o.converged;
        return *this;
    }
};

struct QuadResultC {
    complexd value = 0.0;
    double abs_error = 0.0;
    long evaluations = 0;
    bool converged = true;
};

struct QuadOptions {
    double abs_tol = 1e-12;
    double rel_tol = 1e-12;
    int max_intervals = 40000;
    bool throw_on_failure = false;
};

using Integrand = std::function<double(double)>;

// Adaptive integration of f over [a, b].
QuadResult integrate_adaptive(const Integrand& f, double a, double b,
                              const QuadOptions& opt = {});

// Same, but with initial subdivision at the given interior breakpoints.
QuadResult integrate_adaptive(const Integrand& f, double a, double b,
                              const std::vector<double>& breakpoints,
                              const QuadOptions& opt = {});

// Integral of f over [a, inf) through the map x = a + u/(1-u).
QuadResult integrate_semi_infinite(const Integrand& f, double a,
                                   const QuadOptions& opt = {});

// Integral of f over [0, inf) for integrands decaying like exp(-rate*x):
// truncates at x = exponent_cut/rate and seeds the boundary layer
// geometrically. The discarded tail is tracked in the error estimate.
QuadResult integrate_decaying(const Integrand& f, double rate,
                              const QuadOptions& opt = {},
                              double exponent_cut = 40.0);

// ---- complex contour integration -------------------------------------

// Sheet selector for integrands evaluated next to a branch cut.
// Segments away from any cut use Sheet::principal.
enum class Sheet { principal, left_of_cut, right_of_cut };

struct Segment {
    complexd start;
    complexd end;
    Sheet sheet = Sheet::principal;
};

struct ContourSpec {
    std::vector<Segment> segments;  // must be contiguous

    // path in the complex k_z plane: real axis from -K to 0, down the
    // left side of the cut to -i*cut_depth, back up the right side, then
    // real axis from 0 to +K.
    static ContourSpec real_axis_with_cut_detour(double K, double cut_depth);

    void validate() const;  // throws if segments are not contiguous
};

using ContourIntegrand = std::function<complexd(complexd, Sheet)>;

QuadResultC integrate_contour(const ContourIntegrand& f, const ContourSpec& spec,
                              const QuadOptions& opt = {});

// ---- Richardson extrapolation -----------------------------------------

struct RichardsonResult {
    double value = 0.0;
    bool monotone = true;  // false if successive extrapolants stop shrinking
};

// samples: (h_i, v_i) with h strictly decreasing; eliminates the leading
// O(h^order) error term pairwise and returns the last extrapolant.
RichardsonResult richardson(const std::vector<std::pair<double, double>>& samples,
                            double order);

}  // namespace dqed::quad
