#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "dqed/dirac.hpp"
#include "dqed/selfenergy.hpp"

using namespace dqed;
using namespace dqed::dirac;
using kinematics::Pol;

namespace {
const complexd I(0.0, 1.0);

FourMomentum random_momentum(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> U(-2.0, 2.0);
    return FourMomentum::on_shell(U(rng), U(rng), U(rng), 1.0);
}
}  // namespace

TEST_CASE("Clifford algebra and gamma5") {
    const auto& rep = GammaRep::dirac();
    for (int mu = 0; mu < 4; ++mu)
        for (int nu = 0; nu < 4; ++nu) {
            const Matrix4 anti = rep.gamma[mu] * rep.gamma[nu] +
                                 rep.gamma[nu] * rep.gamma[mu];
            const double expect = (mu == nu) ? 2.0 * kMetric[mu] : 0.0;
            CHECK(max_abs(anti - Matrix4::identity() * complexd(expect)) <
                  1e-13);
        }
    // gamma5 anticommutes and squares to one
    CHECK(max_abs(rep.gamma5 * rep.gamma5 - Matrix4::identity()) < 1e-14);
    for (int mu = 0; mu < 4; ++mu)
        CHECK(max_abs(rep.gamma5 * rep.gamma[mu] +
                      rep.gamma[mu] * rep.gamma5) < 1e-14);
    // hermiticity: gamma0 hermitian, gamma^i anti-hermitian
    for (int mu = 0; mu < 4; ++mu)
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c) {
                const complexd dag = std::conj(rep.gamma[mu](c, r));
                const complexd expect =
                    (mu == 0 ? 1.0 : -1.0) * rep.gamma[mu](r, c);
                CHECK(std::abs(dag - expect) < 1e-15);
            }
}

TEST_CASE("gamma triple reconstruction, all 64 index combinations") {
    const auto& rep = GammaRep::dirac();
    for (int mu = 0; mu < 4; ++mu)
        for (int lam = 0; lam < 4; ++lam)
            for (int nu = 0; nu < 4; ++nu) {
                const Matrix4 direct =
                    rep.gamma[mu] * rep.gamma[lam] * rep.gamma[nu];
                CHECK(max_abs(gamma_triple(mu, lam, nu).reconstruct() - direct) <
                      1e-13);
            }
    // (0,0,0) is pure s-part: gamma^0
    auto t = gamma_triple(0, 0, 0);
    CHECK(t.eps_coeff == std::array<double, 4>{0, 0, 0, 0});
    CHECK(max_abs(t.reconstruct() - rep.gamma[0]) < 1e-15);
    // (1,2,3) is pure eps-part
    auto t123 = gamma_triple(1, 2, 3);
    CHECK(t123.s_coeff == std::array<double, 4>{0, 0, 0, 0});
    CHECK(max_abs(t123.reconstruct() -
                  rep.gamma[1] * rep.gamma[2] * rep.gamma[3]) < 1e-15);
}

TEST_CASE("eigenspinors") {
    // rest frame
    auto u1 = eigenspinor(1, FourMomentum::on_shell(0, 0, 0, 1.0));
    CHECK(std::abs(u1.c[0] - complexd(1.0)) < 1e-15);
    CHECK(std::abs(u1.c[1]) + std::abs(u1.c[2]) + std::abs(u1.c[3]) < 1e-15);

    std::mt19937_64 rng(3);
    for (int it = 0; it < 100; ++it) {
        const auto p = random_momentum(rng);
        // ubar^i u^j = delta_ij
        for (int i = 1; i <= 2; ++i)
            for (int j = 1; j <= 2; ++j) {
                const auto ub = bar(eigenspinor(i, p));
                const auto u = eigenspinor(j, p);
                complexd s = 0.0;
                for (int a = 0; a < 4; ++a) s += ub[a] * u.c[a];
                CHECK(std::abs(s - (i == j ? 1.0 : 0.0)) < 1e-13);
            }
        // spin sums: sum u ubar = (slash p + m)/2m, sum v vbar = (slash p - m)/2m
        const auto& rep = GammaRep::dirac();
        Matrix4 su, sv;
        for (int i = 1; i <= 2; ++i) {
            const auto u = eigenspinor(i, p);
            const auto ub = bar(u);
            const auto v = antispinor(i, p);
            const auto vb = bar(v);
            for (int a = 0; a < 4; ++a)
                for (int b = 0; b < 4; ++b) {
                    su(a, b) += u.c[a] * ub[b];
                    sv(a, b) += v.c[a] * vb[b];
                }
        }
        const Matrix4 slash =
            rep.slash({complexd(p.p0), p.px, p.py, p.pz});
        const complexd inv2m = 1.0 / (2.0 * p.m);
        CHECK(max_abs(su - (slash + Matrix4::identity() * complexd(p.m)) * inv2m) <
              1e-12);
        CHECK(max_abs(sv - (slash - Matrix4::identity() * complexd(p.m)) * inv2m) <
              1e-12);
        // vbar v = -1
        const auto v1 = antispinor(1, p);
        const auto vb1 = bar(v1);
        complexd vv = 0.0;
        for (int a = 0; a < 4; ++a) vv += vb1[a] * v1.c[a];
        CHECK(std::abs(vv + 1.0) < 1e-13);
    }
}

TEST_CASE("invariant closed forms vs direct contraction") {
    // contraction = I1 + I15 + I2 - i I25 (I25 is defined without the -i)
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> U(0.2, 2.0), V(-2.0, 2.0);
    for (int it = 0; it < 120; ++it) {
        const double kx = U(rng), ky = U(rng);
        const complexd kz = (it % 4 == 0) ? complexd(0.0, -0.3 * U(rng))
                                          : complexd(V(rng), 0.0);
        const std::array<complexd, 4> q{
            (it % 5 == 0) ? complexd(V(rng), V(rng)) : complexd(V(rng)),
            V(rng), V(rng), V(rng)};
        const double m = U(rng);
        for (Pol s : {Pol::TE, Pol::TM}) {
            Matrix4 sum = invariant(s, Theta::I1, q, kx, ky, kz, m);
            sum += invariant(s, Theta::I15, q, kx, ky, kz, m);
            sum += invariant(s, Theta::I2, q, kx, ky, kz, m);
            sum += invariant(s, Theta::I25, q, kx, ky, kz, m) * (-I);
            const Matrix4 direct = numerator_contraction(s, q, kx, ky, kz, m);
            CHECK(max_abs(sum - direct) < 1e-11);
        }
    }

    // special values: I1^TE = m, I15^TE = I25^TE = 0
    const std::array<complexd, 4> q{1.0, 0.2, 0.3, 0.4};
    CHECK(max_abs(invariant(Pol::TE, Theta::I1, q, 1.0, 0.5, 0.7, 1.3) -
                  Matrix4::identity() * complexd(1.3)) < 1e-15);
    CHECK(max_abs(invariant(Pol::TE, Theta::I15, q, 1.0, 0.5, 0.7, 1.3)) == 0.0);
    CHECK(max_abs(invariant(Pol::TE, Theta::I25, q, 1.0, 0.5, 0.7, 1.3)) == 0.0);
}

namespace {

// 64-point trapezoid phi-average of the invariants at the Wick-rotated
// kinematics; compared with the closed forms between on-shell spinors.
Matrix4 phi_average_numeric(Pol sigma, double rho, double t,
                            const FourMomentum& p, complexd kz) {
    const int N = 64;
    const double kpar = rho * std::sqrt(1.0 - t * t);
    Matrix4 acc;
    for (int j = 0; j < N; ++j) {
        const double phi = 2.0 * M_PI * j / N;
        const double kx = kpar * std::cos(phi), ky = kpar * std::sin(phi);
        const std::array<complexd, 4> q{complexd(p.p0) - I * rho * t,
                                        p.px - kx, p.py - ky, p.pz};
        Matrix4 s = invariant(sigma, Theta::I1, q, kx, ky, kz, p.m);
        s += invariant(sigma, Theta::I2, q, kx, ky, kz, p.m);
        acc += s * complexd(1.0 / N);
    }
    return acc;
}

}  // namespace

TEST_CASE("phi averages: closed forms vs numeric phi integration") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> U(0.3, 1.8), T(0.05, 0.95);
    for (int it = 0; it < 40; ++it) {
        const auto p = random_momentum(rng);
        const double rho = U(rng), t = T(rng);
        // generic lower-half-plane kz as met along the residue evaluations
        const complexd kz =
            (it % 2 == 0) ? complexd(0.0, -U(rng)) : complexd(0.3, -0.2) * U(rng);
        for (Pol s : {Pol::TE, Pol::TM}) {
            const Matrix4 closed = phi_average(s, rho, t, p, kz).to_matrix(p);
            const Matrix4 numeric = phi_average_numeric(s, rho, t, p, kz);
            // equality holds on-shell: compare spin-space matrix elements
            const Matrix2 a = sandwich(closed, p);
            const Matrix2 b = sandwich(numeric, p);
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j)
                    CHECK(std::abs(a(i, j) - b(i, j)) < 1e-10);
        }
        // I15 and I25 average to zero for TM
        const double kpar = rho * std::sqrt(1.0 - t * t);
        Matrix4 a15, a25;
        for (int j = 0; j < 64; ++j) {
            const double phi = 2.0 * M_PI * j / 64;
            const double kx = kpar * std::cos(phi), ky = kpar * std::sin(phi);
            const std::array<complexd, 4> q{complexd(p.p0) - I * rho * t,
                                            p.px - kx, p.py - ky, p.pz};
            a15 += invariant(Pol::TM, Theta::I15, q, kx, ky, kz, p.m);
            a25 += invariant(Pol::TM, Theta::I25, q, kx, ky, kz, p.m);
        }
        CHECK(max_abs(a15 * complexd(1.0 / 64)) < 1e-12);
        CHECK(max_abs(a25 * complexd(1.0 / 64)) < 1e-12);
    }
}

TEST_CASE("phi-averaged TM at t = 1 reduces to the negated TE form") {
    const auto p = FourMomentum::on_shell(0.3, -0.2, 0.5, 1.0);
    const complexd kz(0.0, -0.8);
    const auto te = phi_average(Pol::TE, 1.3, 1.0, p, kz);
    const auto tm = phi_average(Pol::TM, 1.3, 1.0, p, kz);
    CHECK(std::abs(tm.c_g0 + te.c_g0) < 1e-15);
    CHECK(std::abs(tm.c_gpar + te.c_gpar) < 1e-15);
    CHECK(std::abs(tm.c_gz) < 1e-15);
}

TEST_CASE("sandwich: plane-wave matrix elements") {
    const auto& rep = GammaRep::dirac();

    // rest frame, pure gamma^0 operator: c times the identity
    const auto prest = FourMomentum::on_shell(0, 0, 0, 1.0);
    const Matrix2 s0 = sandwich(rep.gamma[0] * complexd(0.37), prest);
    CHECK(std::abs(s0(0, 0) - complexd(0.37)) < 1e-14);
    CHECK(std::abs(s0(1, 1) - complexd(0.37)) < 1e-14);
    CHECK(std::abs(s0(0, 1)) < 1e-15);

    // plane-wave sandwiches of the momentum structures are diagonal:
    // (m/E) ubar gamma^mu u = (p^mu/E) delta_ij
    std::mt19937_64 rng(31);
    for (int it = 0; it < 50; ++it) {
        const auto p = random_momentum(rng);
        const double comps[4] = {p.p0, p.px, p.py, p.pz};
        for (int mu = 0; mu < 4; ++mu) {
            const Matrix2 s = sandwich(rep.gamma[mu], p);
            CHECK(std::abs(s(0, 1)) < 1e-13);
            CHECK(std::abs(s(1, 0)) < 1e-13);
            CHECK(std::abs(s(0, 0) - complexd(comps[mu] / p.p0)) < 1e-13);
            CHECK(std::abs(s(1, 1) - complexd(comps[mu] / p.p0)) < 1e-13);
        }
    }
}

TEST_CASE("sandwich hermiticity and rotation invariance of eigenvalues") {
    std::mt19937_64 rng(37);
    std::uniform_real_distribution<double> U(-1.5, 1.5);
    for (int it = 0; it < 30; ++it) {
        const double ppar = std::abs(U(rng)) + 0.1, pz = U(rng);
        selfenergy::SigmaCoefficients c{0.7, 0.4, 1.3, 0.2};
        double phi0 = U(rng);
        const auto p0 = FourMomentum::on_shell(ppar * std::cos(phi0),
                                               ppar * std::sin(phi0), pz, 1.0);
        const Matrix2 m0 = sandwich(
            selfenergy::sigma_matrix(c, p0, 1.0, 4.0 * M_PI / 137.0), p0);
        CHECK(max_antihermiticity(m0) < 1e-12);
        const auto ev0 = hermitian_eigenvalues(m0);
        // rotate p_par about z: eigenvalues unchanged
        const double phi1 = phi0 + 1.1;
        const auto p1 = FourMomentum::on_shell(ppar * std::cos(phi1),
                                               ppar * std::sin(phi1), pz, 1.0);
        const Matrix2 m1 = sandwich(
            selfenergy::sigma_matrix(c, p1, 1.0, 4.0 * M_PI / 137.0), p1);
        const auto ev1 = hermitian_eigenvalues(m1);
        CHECK(std::abs(ev0[0] - ev1[0]) < 1e-12);
        CHECK(std::abs(ev0[1] - ev1[1]) < 1e-12);
    }
}
