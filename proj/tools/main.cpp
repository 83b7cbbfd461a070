// dqed: photon propagator, Fresnel mode structure and electron self-energy
// near a non-dispersive dielectric half-space.
//
// Subcommands: fresnel, greens, verify, shift, asympt, limits.
// Exit codes: 0 success, 1 validation error, 2 convergence failure,
//             3 verification-suite failure.

#include <CLI11.hpp>

#include <atomic>
#include <cmath>
#include <functional>
#include <iostream>
#include <random>
#include <thread>

#include "dqed/dirac.hpp"
#include "dqed/fresnel.hpp"
#include "dqed/greens.hpp"
#include "dqed/kinematics.hpp"
#include "dqed/quadrature.hpp"
#include "dqed/report.hpp"
#include "dqed/selfenergy.hpp"

using namespace dqed;
using kinematics::MediumParams;
using kinematics::Pol;
using report::Cell;
using report::Table;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitConvergence = 2;
constexpr int kExitSuite = 3;

struct CommonOpts {
    std::string format = "csv";
    std::string out;
    double tol = 1e-9;
    unsigned long seed = 12345;
    std::vector<std::string> sweeps;  // param=lo:hi:count[:log]
};

// expand "--sweep name=lo:hi:count[:log]" into the named grid list
void apply_sweeps(const CommonOpts& c, const std::string& name,
                  std::vector<double>& target) {
    for (const auto& spec : c.sweeps) {
        const auto eq = spec.find('=');
        if (eq == std::string::npos || spec.substr(0, eq) != name) continue;
        std::vector<std::string> parts;
        std::string cur;
        for (char ch : spec.substr(eq + 1)) {
            if (ch == ':') {
                parts.push_back(cur);
                cur.clear();
            } else
                cur.push_back(ch);
        }
        parts.push_back(cur);
        if (parts.size() < 3)
            throw std::invalid_argument("--sweep expects name=lo:hi:count[:log]");
        const double lo = std::stod(parts[0]), hi = std::stod(parts[1]);
        const int count = std::stoi(parts[2]);
        const bool logspace = parts.size() > 3 && parts[3] == "log";
        if (count < 2 || !(hi > lo) || (logspace && !(lo > 0.0)))
            throw std::invalid_argument("--sweep: bad range");
        target.clear();
        for (int i = 0; i < count; ++i) {
            const double f = static_cast<double>(i) / (count - 1);
            target.push_back(logspace
                                 ? lo * std::pow(hi / lo, f)
                                 : lo + (hi - lo) * f);
        }
    }
}

void emit(const Table& t, const CommonOpts& c) {
    const std::string text =
        c.format == "json" ? report::to_json(t) : report::to_csv(t);
    if (c.out.empty())
        std::cout << text;
    else
        report::write_file(c.out, text);
}

void echo_common(Table& t, const CommonOpts& c) {
    t.config["format"] = c.format;
    t.config["tol"] = report::format_double(c.tol);
    t.config["seed"] = std::to_string(c.seed);
    t.config["units"] = "hbar=c=1, Heaviside-Lorentz, lengths in 1/p0";
}

std::string pol_name(Pol p) {
    switch (p) {
        case Pol::TE: return "TE";
        case Pol::TM: return "TM";
        case Pol::C: return "C";
        case Pol::G: return "G";
    }
    return "?";
}

// deterministic ordered parallel map over row indices
template <class F>
void parallel_rows(size_t count, F&& fill) {
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const unsigned workers =
        static_cast<unsigned>(std::min<size_t>(hw, count ? count : 1));
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1))
                fill(i);
        });
    for (auto& th : pool) th.join();
}

// ---- fresnel ------------------------------------------------------------

int cmd_fresnel(const CommonOpts& common, const std::vector<double>& ns,
                const std::vector<double>& kpars,
                const std::vector<double>& kzs,
                const std::vector<double>& kzds) {
    Table t;
    echo_common(t, common);
    t.columns = {"n",      "kpar",  "side",  "kz_re", "kz_im", "kzd_re",
                 "kzd_im", "omega", "sigma", "R_re",  "R_im",  "T_re",
                 "T_im",   "abs_R"};
    auto add = [&](double n, double kpar, const char* side,
                   const kinematics::WaveVector& k,
                   const fresnel::FresnelSet& set) {
        for (Pol s : kinematics::kAllPols)
            t.add_row({n, kpar, std::string(side), k.kz.real(), k.kz.imag(),
                       k.kz_d.real(), k.kz_d.imag(), k.omega, pol_name(s),
                       set[s].R.real(), set[s].R.imag(), set[s].T.real(),
                       set[s].T.imag(), std::abs(set[s].R)});
    };
    for (double n : ns) {
        const MediumParams med{n};
        for (double kpar : kpars) {
            for (double kz : kzs) {
                const auto k = kinematics::make_wavevector(kpar, 0.0, kz, med);
                add(n, kpar, "L", k, fresnel::left_coefficients(k, med));
            }
            for (double kzd : kzds) {
                const auto k =
                    kinematics::make_wavevector_right(kpar, 0.0, kzd, med);
                add(n, kpar, "R", k, fresnel::right_coefficients(k, med));
            }
        }
    }
    emit(t, common);
    return kExitOk;
}

// ---- greens ---------------------------------------------------------------

int cmd_greens(const CommonOpts& common, const std::vector<double>& ns,
               const std::vector<double>& rhos, const std::vector<double>& ts,
               double z_sum, const std::vector<double>& as) {
    Table t;
    echo_common(t, common);
    t.config["z_sum"] = report::format_double(z_sum);
    t.columns = {"n", "rho", "t", "z_sum", "kernel_TE", "kernel_TM"};
    for (double n : ns)
        for (double rho : rhos)
            for (double tt : ts)
                t.add_row(
                    {n, rho, tt, z_sum,
                     greens::contour_kz_integral(Pol::TE, rho, tt, z_sum, n)
                         .real(),
                     greens::contour_kz_integral(Pol::TM, rho, tt, z_sum, n)
                         .real()});

    Table ts2;
    echo_common(ts2, common);
    ts2.columns = {"n", "a", "static_green_closed", "static_green_numeric"};
    quad::QuadOptions opt;
    opt.abs_tol = common.tol * 1e-3;
    opt.rel_tol = common.tol;
    for (double n : ns)
        for (double a : as)
            ts2.add_row({n, a, greens::static_green_closed(n, a).value,
                         greens::static_green_numeric(n, a, opt).value});

    emit(t, common);
    if (common.out.empty()) {
        if (common.format == "json") std::cout << "\n";  // two documents
        emit(ts2, common);
    } else {
        CommonOpts c2 = common;
        c2.out = common.out + ".static";
        emit(ts2, c2);
    }
    return kExitOk;
}

// ---- verify ---------------------------------------------------------------

struct SuiteStats {
    double worst = 0.0;
    long count = 0;
    bool pass(double bound) const { return worst < bound; }
};

int cmd_verify(const CommonOpts& common, int samples, bool inject_bug) {
    std::mt19937_64 rng(common.seed);
    std::uniform_real_distribution<double> Un(1.01, 10.0), Uk(1e-3, 10.0),
        Ui(1e-6, 1.0 - 1e-6);
    bool all_pass = true;
    Table t;
    echo_common(t, common);
    t.config["samples"] = std::to_string(samples);
    t.config["inject_bug"] = inject_bug ? "1" : "0";
    t.columns = {"suite", "samples", "worst_residual", "bound", "pass"};

    auto report_suite = [&](const std::string& name, const SuiteStats& s,
                            double bound) {
        const bool ok = s.pass(bound);
        all_pass = all_pass && ok;
        t.add_row({name, static_cast<long long>(s.count), s.worst, bound,
                   std::string(ok ? "yes" : "no")});
    };

    // Fresnel identity suites (propagating + evanescent)
    SuiteStats fre_real, fre_imag;
    for (int i = 0; i < samples; ++i) {
        const MediumParams med{Un(rng)};
        auto kp = kinematics::make_wavevector(Uk(rng), 0.0, Uk(rng), med);
        auto res = fresnel::identity_residuals(kp, med);
        if (inject_bug && !res.empty()) res[0] += 1e-3;  // negative control
        for (double r : res) fre_real.worst = std::max(fre_real.worst, r);
        ++fre_real.count;

        const double kpar = Uk(rng);
        auto ke = kinematics::make_wavevector_right(
            kpar, 0.0, -Ui(rng) * kpar * std::sqrt(med.n * med.n - 1.0), med);
        if (ke.evanescent()) {
            for (double r : fresnel::identity_residuals(ke, med))
                fre_imag.worst = std::max(fre_imag.worst, r);
            ++fre_imag.count;
        }
    }
    report_suite("fresnel_identities_real_kz", fre_real, 1e-12);
    report_suite("fresnel_identities_imag_kz", fre_imag, 1e-12);

    // completeness of the polarization system
    SuiteStats comp;
    for (int i = 0; i < samples; ++i) {
        auto k = kinematics::make_wavevector(Uk(rng), Uk(rng), Uk(rng),
                                             MediumParams{Un(rng)});
        const auto r = kinematics::completeness_residual(k);
        comp.worst = std::max({comp.worst, r.full_sum, r.physical_sum});
        ++comp.count;
    }
    report_suite("polarization_completeness", comp, 1e-12);

    // gamma algebra
    SuiteStats cliff;
    {
        const auto& rep = dirac::GammaRep::dirac();
        for (int mu = 0; mu < 4; ++mu)
            for (int nu = 0; nu < 4; ++nu) {
                const auto anti = rep.gamma[mu] * rep.gamma[nu] +
                                  rep.gamma[nu] * rep.gamma[mu];
                const double expect = (mu == nu) ? 2.0 * dirac::kMetric[mu] : 0.0;
                cliff.worst = std::max(
                    cliff.worst,
                    dirac::max_abs(anti - dirac::Matrix4::identity() *
                                              kinematics::complexd(expect)));
                ++cliff.count;
            }
        for (int mu = 0; mu < 4; ++mu)
            for (int lam = 0; lam < 4; ++lam)
                for (int nu = 0; nu < 4; ++nu) {
                    const auto direct =
                        rep.gamma[mu] * rep.gamma[lam] * rep.gamma[nu];
                    cliff.worst = std::max(
                        cliff.worst,
                        dirac::max_abs(
                            dirac::gamma_triple(mu, lam, nu).reconstruct() -
                            direct));
                    ++cliff.count;
                }
    }
    report_suite("gamma_algebra", cliff, 1e-13);

    // detour equivalence on a small grid
    SuiteStats det;
    quad::QuadOptions dopt;
    dopt.abs_tol = 1e-13;
    dopt.rel_tol = 1e-12;
    for (double n : {1.5, 2.0, 5.0})
        for (Pol s : {Pol::TE, Pol::TM}) {
            det.worst = std::max(det.worst, greens::detour_equivalence_residual(
                                                s, 1.0, 0.3, -1.0, n, dopt));
            ++det.count;
        }
    report_suite("detour_equivalence", det, 1e-10);

    // image potential: numeric vs closed
    SuiteStats img;
    for (double n : {1.5, 2.0, 10.0})
        for (double a : {0.5, 1.0, 5.0}) {
            const double c = greens::static_green_closed(n, a).value;
            const double q = greens::static_green_numeric(n, a).value;
            img.worst = std::max(img.worst, std::abs(q - c) / std::abs(c));
            ++img.count;
        }
    report_suite("image_potential_relative", img, 1e-8);

    emit(t, common);
    return all_pass ? kExitOk : kExitSuite;
}

// ---- shift ------------------------------------------------------------------

int cmd_shift(const CommonOpts& common, const std::vector<double>& ns,
              const std::vector<double>& as, double pz, double ppar,
              double mass, const std::vector<double>& moments) {
    const auto p = dirac::FourMomentum::on_shell(ppar, 0.0, pz, mass);
    selfenergy::Moments mom;
    if (!moments.empty()) {
        if (moments.size() != 4)
            throw std::invalid_argument("--moments expects pz2,ppar2,pxpz,pypz");
        mom = {moments[0], moments[1], moments[2], moments[3]};
    } else {
        mom = {pz * pz, ppar * ppar, 0.0, 0.0};
    }

    Table t;
    echo_common(t, common);
    t.columns = {"n",          "a",           "p0a",
                 "c_par_lead", "c_z_lead",    "c0_lead",
                 "c_par_next", "c_z_next",    "c0_next",
                 "c_coulomb",  "delta_E_coulomb",
                 "delta_E_plus", "delta_E_minus"};
    std::vector<std::pair<double, double>> grid;
    for (double n : ns)
        for (double a : as) grid.push_back({n, a});
    std::vector<std::vector<Cell>> rows(grid.size());
    parallel_rows(grid.size(), [&](size_t i) {
        const auto [n, a] = grid[i];
        const auto lead = selfenergy::total_leading_coefficients(n);
        const auto next = selfenergy::sigma_next(n);
        const auto cs = selfenergy::coulomb_shift(n, a, p);
        const auto shift = selfenergy::total_shift(n, a, p, mom);
        rows[i] = {n,
                   a,
                   p.p0 * a,
                   lead.c_par,
                   lead.c_z,
                   lead.c0,
                   next.c_par,
                   next.c_z,
                   next.c0,
                   cs.coeffs.c_coulomb,
                   cs.delta_E,
                   shift.delta_E_plus,
                   shift.delta_E_minus};
    });
    for (auto& r : rows) t.add_row(std::move(r));
    emit(t, common);
    return kExitOk;
}

// ---- asympt -------------------------------------------------------------------

int cmd_asympt(const CommonOpts& common, const std::vector<double>& ns,
               const std::vector<double>& p0as) {
    if (p0as.size() < 3)
        throw std::invalid_argument("--p0a needs at least 3 values");
    Table t;
    echo_common(t, common);
    t.columns = {"n",          "p0a",          "degenerate",
                 "c_par_quad", "c_par_asympt", "rel_dev_par",
                 "c_z_quad",   "c_z_asympt",   "rel_dev_z",
                 "c_par_order", "c_z_order"};

    std::atomic<bool> converged{true};
    for (double n : ns) {
        if (n == 1.0) {
            for (double p0a : p0as)
                t.add_row({n, p0a, static_cast<long long>(1), 0.0, 0.0, 0.0,
                           0.0, 0.0, 0.0, 0.0, 0.0});
            continue;
        }
        struct Point {
            double p0a = 0.0, dev_par = 0.0, dev_z = 0.0;
            std::vector<Cell> partial;
        };
        std::vector<Point> pts(p0as.size());
        parallel_rows(p0as.size(), [&](size_t i) {
            const double p0a = p0as[i];
            const auto tm = selfenergy::sigma_tm_quad(p0a, n, common.tol);
            const auto te = selfenergy::sigma_te_quad(p0a, n, common.tol);
            if (!(tm.converged && te.converged)) converged = false;
            const auto quad_c = tm.coeffs + te.coeffs;
            // leading-plus-next asymptotic prediction of the same coefficients
            const auto asym = selfenergy::sigma_leading(n) +
                              selfenergy::sigma_next(n) * (1.0 / p0a);
            const double dev_par =
                std::abs(quad_c.c_par - asym.c_par) / std::abs(asym.c_par);
            const double dev_z =
                std::abs(quad_c.c_z - asym.c_z) / std::abs(asym.c_z);
            pts[i] = {p0a, dev_par, dev_z,
                      {n, p0a, static_cast<long long>(0), quad_c.c_par,
                       asym.c_par, dev_par, quad_c.c_z, asym.c_z, dev_z}};
        });
        for (size_t i = 0; i < pts.size(); ++i) {
            double ord_par = 0.0, ord_z = 0.0;
            if (i + 1 < pts.size()) {
                const double hr = pts[i + 1].p0a / pts[i].p0a;
                ord_par =
                    std::log(pts[i].dev_par / pts[i + 1].dev_par) / std::log(hr);
                ord_z = std::log(pts[i].dev_z / pts[i + 1].dev_z) / std::log(hr);
            }
            auto row = pts[i].partial;
            row.push_back(ord_par);
            row.push_back(ord_z);
            t.add_row(std::move(row));
        }
    }
    emit(t, common);
    return converged ? kExitOk : kExitConvergence;
}

// ---- limits ---------------------------------------------------------------------

int cmd_limits(const CommonOpts& common) {
    Table t;
    echo_common(t, common);
    t.columns = {"quantity", "c_par", "c_z", "c0"};
    const auto lim = selfenergy::total_leading_coefficients(1e18);
    const auto perf = selfenergy::sigma_perfect_total();
    t.add_row({std::string("lim_n_to_inf_of_total"), lim.c_par, lim.c_z, lim.c0});
    t.add_row({std::string("perfect_reflector_first"), perf.c_par, perf.c_z,
               perf.c0});
    t.add_row({std::string("ratio"), lim.c_par / perf.c_par, lim.c_z / perf.c_z,
               lim.c0 / perf.c0});
    const auto big = selfenergy::total_leading_coefficients(1e6);
    t.add_row({std::string("numeric_n_1e6"), big.c_par, big.c_z, big.c0});
    t.add_row({std::string("numeric_n_1e6_dev_from_(1,4,2)"),
               std::abs(big.c_par - 1.0), std::abs(big.c_z - 4.0),
               std::abs(big.c0 - 2.0)});
    emit(t, common);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "dqed: Fresnel mode structure, propagator kernels and electron "
        "self-energy near a dielectric half-space (hbar = c = 1, "
        "Heaviside-Lorentz, e^2 = 4 pi/137; lengths in units of 1/p0 unless "
        "noted)"};
    app.require_subcommand(1);

    CommonOpts common;
    app.add_option("--format", common.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    app.add_option("--out", common.out, "output path (default: stdout)");
    app.add_option("--tol", common.tol, "quadrature tolerance")
        ->capture_default_str();
    app.add_option("--seed", common.seed, "seed for randomized suites")
        ->capture_default_str();
    app.add_option("--sweep", common.sweeps,
                   "replace a grid list by a range, name=lo:hi:count[:log]; "
                   "names: n, kpar, kz, kzd, rho, t, a, p0a");

    auto* fre = app.add_subcommand("fresnel", "reflection/transmission tables");
    fre->fallthrough();
    std::vector<double> f_n{2.0}, f_kpar{1.0}, f_kz{1.0}, f_kzd{-1.0, -3.0};
    fre->add_option("--n", f_n, "refractive indices")->capture_default_str();
    fre->add_option("--kpar", f_kpar, "parallel momenta")->capture_default_str();
    fre->add_option("--kz", f_kz, "left-incident k_z values")
        ->capture_default_str();
    fre->add_option("--kzd", f_kzd, "right-incident k_z^d values")
        ->capture_default_str();

    auto* gre =
        app.add_subcommand("greens", "propagator kernels and image potential");
    gre->fallthrough();
    std::vector<double> g_n{2.0}, g_rho{0.5, 1.0, 2.0}, g_t{0.25, 0.5, 0.75},
        g_a{0.5, 1.0, 2.0};
    double g_zsum = -2.0;
    gre->add_option("--n", g_n)->capture_default_str();
    gre->add_option("--rho", g_rho)->capture_default_str();
    gre->add_option("--t", g_t)->capture_default_str();
    gre->add_option("--zsum", g_zsum, "z + z' < 0")->capture_default_str();
    gre->add_option("--a", g_a, "distances for the static potential")
        ->capture_default_str();

    auto* ver = app.add_subcommand("verify", "run the verification suites");
    ver->fallthrough();
    int v_samples = 1000;
    bool v_bug = false;
    ver->add_option("--samples", v_samples, "random samples per suite")
        ->capture_default_str();
    ver->add_flag("--inject-bug", v_bug,
                  "perturb one identity to prove the suite can fail");

    auto* shi = app.add_subcommand("shift", "energy shift tables");
    shi->fallthrough();
    std::vector<double> s_n{2.0}, s_a{100.0}, s_mom;
    double s_pz = 0.0, s_ppar = 0.0, s_mass = 1.0;
    shi->add_option("--n", s_n)->capture_default_str();
    shi->add_option("--a", s_a, "distances in units 1/p0")->capture_default_str();
    shi->add_option("--pz", s_pz)->capture_default_str();
    shi->add_option("--ppar", s_ppar)->capture_default_str();
    shi->add_option("--mass", s_mass)->capture_default_str();
    shi->add_option("--moments", s_mom, "pz2,ppar2,pxpz,pypz");

    auto* asy = app.add_subcommand("asympt", "quadrature vs asymptotics");
    asy->fallthrough();
    std::vector<double> a_n{2.0}, a_p0a{100.0, 200.0, 400.0};
    asy->add_option("--n", a_n)->capture_default_str();
    asy->add_option("--p0a", a_p0a, "at least 3 values")->capture_default_str();

    app.add_subcommand("limits", "non-commuting perfect-reflector limit report")
        ->fallthrough();

    CLI11_PARSE(app, argc, argv);

    try {
        apply_sweeps(common, "n", f_n);
        apply_sweeps(common, "kpar", f_kpar);
        apply_sweeps(common, "kz", f_kz);
        apply_sweeps(common, "kzd", f_kzd);
        apply_sweeps(common, "n", g_n);
        apply_sweeps(common, "rho", g_rho);
        apply_sweeps(common, "t", g_t);
        apply_sweeps(common, "a", g_a);
        apply_sweeps(common, "n", s_n);
        apply_sweeps(common, "a", s_a);
        apply_sweeps(common, "n", a_n);
        apply_sweeps(common, "p0a", a_p0a);
        if (app.got_subcommand("fresnel"))
            return cmd_fresnel(common, f_n, f_kpar, f_kz, f_kzd);
        if (app.got_subcommand("greens"))
            return cmd_greens(common, g_n, g_rho, g_t, g_zsum, g_a);
        if (app.got_subcommand("verify"))
            return cmd_verify(common, v_samples, v_bug);
        if (app.got_subcommand("shift"))
            return cmd_shift(common, s_n, s_a, s_pz, s_ppar, s_mass, s_mom);
        if (app.got_subcommand("asympt")) return cmd_asympt(common, a_n, a_p0a);
        if (app.got_subcommand("limits")) return cmd_limits(common);
    } catch (const quad::convergence_failure& e) {
        std::cerr << "convergence failure: " << e.what() << " (achieved "
                  << e.achieved_error << ")\n";
        return kExitConvergence;
    } catch (const std::invalid_argument& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::domain_error& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
    return kExitOk;
}
