#include "dqed/dirac.hpp"

#include <cmath>
#include <stdexcept>

namespace dqed::dirac {

namespace {
const complexd I(0.0, 1.0);
}

Matrix4 Matrix4::identity() {
    Matrix4 r;
    for (int i = 0; i < 4; ++i) r(i, i) = 1.0;
    return r;
}

Matrix4 Matrix4::operator+(const Matrix4& o) const {
    Matrix4 r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r(i, j) = m[i][j] + o(i, j);
    return r;
}

Matrix4 Matrix4::operator-(const Matrix4& o) const {
    Matrix4 r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r(i, j) = m[i][j] - o(i, j);
    return r;
}

Matrix4 Matrix4::operator*(const Matrix4& o) const {
    Matrix4 r;
    for (int i = 0; i < 4; ++i)
        for (int k = 0; k < 4; ++k) {
            const complexd a = m[i][k];
            if (a == complexd(0.0)) continue;
            for (int j = 0; j < 4; ++j) r(i, j) += a * o(k, j);
        }
    return r;
}

Matrix4 Matrix4::operator*(complexd s) const {
    Matrix4 r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r(i, j) = m[i][j] * s;
    return r;
}

Matrix4& Matrix4::operator+=(const Matrix4& o) {
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) m[i][j] += o(i, j);
    return *this;
}

Matrix4 operator*(complexd s, const Matrix4& a) { return a * s; }

double max_abs(const Matrix4& a) {
    double r = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r = std::max(r, std::abs(a(i, j)));
    return r;
}

std::array<double, 2> hermitian_eigenvalues(const Matrix2& h) {
    // cancellation-free form for nearly degenerate matrices
    const double mean = 0.5 * std::real(h(0, 0) + h(1, 1));
    const double half_gap = 0.5 * std::real(h(0, 0) - h(1, 1));
    const double disc = std::hypot(half_gap, std::abs(h(0, 1)));
    return {mean + disc, mean - disc};
}

double max_antihermiticity(const Matrix2& h) {
    double r = 0.0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            r = std::max(r, std::abs(h(i, j) - std::conj(h(j, i))));
    return r;
}

const GammaRep& GammaRep::dirac() {
    static const GammaRep rep = [] {
        GammaRep g;
        auto& g0 = g.gamma[0];
        g0(0, 0) = 1; g0(1, 1) = 1; g0(2, 2) = -1; g0(3, 3) = -1;

        // gamma^k = [[0, sigma_k], [-sigma_k, 0]]
        auto& g1 = g.gamma[1];
        g1(0, 3) = 1; g1(1, 2) = 1; g1(2, 1) = -1; g1(3, 0) = -1;
        auto& g2 = g.gamma[2];
        g2(0, 3) = -I; g2(1, 2) = I; g2(2, 1) = I; g2(3, 0) = -I;
        auto& g3 = g.gamma[3];
        g3(0, 2) = 1; g3(1, 3) = -1; g3(2, 0) = -1; g3(3, 1) = 1;

        g.gamma5 = I * (g.gamma[0] * g.gamma[1] * g.gamma[2] * g.gamma[3]);
        return g;
    }();
    return rep;
}

Matrix4 GammaRep::lower(int mu) const { return gamma[mu] * complexd(kMetric[mu]); }

Matrix4 GammaRep::slash(const std::array<complexd, 4>& q_up) const {
    Matrix4 r;
    for (int mu = 0; mu < 4; ++mu) r += gamma[mu] * (kMetric[mu] * q_up[mu]);
    return r;
}

int levi_civita_lower(int a, int b, int c, int d) {
    const int idx[4] = {a, b, c, d};
    int sign = 1;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) {
            if (idx[i] == idx[j]) return 0;
            if (idx[i] > idx[j]) sign = -sign;
        }
    return sign;
}

FourMomentum FourMomentum::on_shell(double px, double py, double pz, double m) {
    if (!(m > 0.0)) throw std::domain_error("FourMomentum: m must be > 0");
    return {std::sqrt(m * m + px * px + py * py + pz * pz), px, py, pz, m};
}

Spinor eigenspinor(int i, const FourMomentum& p) {
    if (i != 1 && i != 2) throw std::domain_error("eigenspinor: i in {1, 2}");
    const double N = std::sqrt((p.p0 + p.m) / (2.0 * p.m));
    const double d = p.p0 + p.m;
    Spinor u;
    u.helicity_label = i;
    if (i == 1) {
        u.c = {N, 0.0, N * p.pz / d, N * complexd(p.px, p.py) / d};
    } else {
        u.c = {0.0, N, N * complexd(p.px, -p.py) / d, -N * p.pz / d};
    }
    return u;
}

Spinor antispinor(int i, const FourMomentum& p) {
    const Spinor u = eigenspinor(i, p);
    Spinor v;
    v.helicity_label = i;
    v.c = {u.c[2], u.c[3], u.c[0], u.c[1]};
    return v;
}

std::array<complexd, 4> bar(const Spinor& u) {
    // ubar = u^dag gamma^0: conjugate, flip sign of the lower two components
    return {std::conj(u.c[0]), std::conj(u.c[1]), -std::conj(u.c[2]),
            -std::conj(u.c[3])};
}

Matrix4 GammaTriple::reconstruct() const {
    const auto& rep = GammaRep::dirac();
    Matrix4 r;
    for (int a = 0; a < 4; ++a) {
        if (s_coeff[a] != 0.0) r += rep.lower(a) * complexd(s_coeff[a]);
        if (eps_coeff[a] != 0.0)
            r += (rep.gamma5 * rep.lower(a)) * (-I * eps_coeff[a]);
    }
    return r;
}

GammaTriple gamma_triple(int mu, int lam, int nu) {
    if (mu < 0 || mu > 3 || lam < 0 || lam > 3 || nu < 0 || nu > 3)
        throw std::domain_error("gamma_triple: indices in 0..3");
    GammaTriple t{};
    for (int a = 0; a < 4; ++a) {
        // s^{a mu lam nu} = g^{a mu} g^{lam nu} + g^{a nu} g^{lam mu}
        //                   - g^{a lam} g^{nu mu}
        double s = 0.0;
        if (a == mu && lam == nu) s += kMetric[a] * kMetric[lam];
        if (a == nu && lam == mu) s += kMetric[a] * kMetric[lam];
        if (a == lam && nu == mu) s -= kMetric[a] * kMetric[nu];
        t.s_coeff[a] = s;
        // upper-index symbol: eps^{...} = -eps_{...} for this metric
        t.eps_coeff[a] = -static_cast<double>(levi_civita_lower(a, mu, lam, nu));
    }
    return t;
}

// ---- invariants ----------------------------------------------------------

namespace {

// gamma^1 vx + gamma^2 vy
Matrix4 gamma_perp(complexd vx, complexd vy) {
    const auto& rep = GammaRep::dirac();
    return rep.gamma[1] * vx + rep.gamma[2] * vy;
}

Matrix4 commutator(const Matrix4& a, const Matrix4& b) {
    return a * b - b * a;
}

}  // namespace

Matrix4 invariant(Pol sigma, Theta theta, const std::array<complexd, 4>& q,
                  double kx, double ky, complexd kz, double m) {
    const auto& rep = GammaRep::dirac();
    const double kp2 = kx * kx + ky * ky;
    const complexd k2 = complexd(kp2, 0.0) + kz * kz;
    const complexd q0 = q[0], qx = q[1], qy = q[2], qz = q[3];

    if (sigma == Pol::TE) {
        switch (theta) {
            case Theta::I1: return Matrix4::identity() * complexd(m);
            case Theta::I15:
            case Theta::I25: return Matrix4::zero();
            case Theta::I2: {
                if (kp2 <= 0.0)
                    throw std::domain_error("invariant: TE at k_par = 0");
                const complexd kdotq = kx * qx + ky * qy;
                Matrix4 r = gamma_perp(qx, qy) * complexd(-2.0);
                r += gamma_perp(kx, ky) * (2.0 * kdotq / kp2);
                r += gamma_perp(qx, qy);
                r += rep.gamma[3] * qz;
                r += rep.gamma[0] * (-q0);
                return r;
            }
        }
    }

    // TM
    if (std::abs(k2) == 0.0)
        throw std::domain_error("invariant: TM pole at spatial k^2 = 0");
    if (kp2 <= 0.0) throw std::domain_error("invariant: TM at k_par = 0");
    const complexd one_m2 = 1.0 - 2.0 * kz * kz / k2;
    switch (theta) {
        case Theta::I1:
            return Matrix4::identity() * (m * one_m2);
        case Theta::I15: {
            Matrix4 r = commutator(rep.gamma[3], rep.gamma[1]) * (kx * kz);
            r += commutator(rep.gamma[3], rep.gamma[2]) * (ky * kz);
            return r * (-m / k2);
        }
        case Theta::I25: {
            // 2 eps^{a m lam 3} gamma5 gamma_a q_lam k_m k_z / k^2, m in {1,2}
            const double km[2] = {kx, ky};
            const std::array<complexd, 4> q_lo{q0, -qx, -qy, -qz};
            Matrix4 r;
            for (int a = 0; a < 4; ++a)
                for (int mm = 1; mm <= 2; ++mm)
                    for (int lam = 0; lam < 4; ++lam) {
                        const int e = -levi_civita_lower(a, mm, lam, 3);
                        if (e == 0) continue;
                        r += (rep.gamma5 * rep.lower(a)) *
                             (2.0 * static_cast<double>(e) * q_lo[lam] *
                              km[mm - 1] * kz / k2);
                    }
            return r;
        }
        case Theta::I2: {
            const complexd kdotq = kx * qx + ky * qy;
            Matrix4 r = gamma_perp(kx, ky) * (2.0 * kdotq * kz * kz / (kp2 * k2));
            r += rep.gamma[3] * (-2.0 * qz * kp2 / k2);
            Matrix4 rest = gamma_perp(qx, qy);
            rest += rep.gamma[3] * qz;
            rest += rep.gamma[0] * (-q0);
            r += rest * one_m2;
            return r;
        }
    }
    throw std::logic_error("invariant: unreachable");
}

Matrix4 numerator_contraction(Pol sigma, const std::array<complexd, 4>& q,
                              double kx, double ky, complexd kz, double m) {
    const auto& rep = GammaRep::dirac();
    const auto tensor = kinematics::polarization_metric(sigma, kx, ky, kz);
    const Matrix4 core = rep.slash(q) + Matrix4::identity() * complexd(m);

    Matrix4 r;
    for (int mu = 0; mu < 4; ++mu)
        for (int nu = 0; nu < 4; ++nu) {
            const complexd g_lo =
                kMetric[mu] * kMetric[nu] * tensor.g[mu][nu];
            if (g_lo == complexd(0.0)) continue;
            r += (rep.gamma[mu] * core * rep.gamma[nu]) * g_lo;
        }
    return r;
}

PhiAverage phi_average(Pol sigma, double rho, double t, const FourMomentum&,
                       complexd kz) {
    const complexd irt = I * rho * t;
    if (sigma == Pol::TE) return {irt, -1.0, 0.0};
    if (sigma != Pol::TM)
        throw std::domain_error("phi_average: TE or TM only");
    const double kp2 = rho * rho * (1.0 - t * t);
    const complexd k2 = complexd(kp2, 0.0) + kz * kz;
    if (std::abs(k2) == 0.0)
        throw std::domain_error("phi_average: TM pole at spatial k^2 = 0");
    const complexd w = kp2 / k2;
    return {irt * (2.0 * w - 1.0), 1.0 - w, -2.0 * w};
}

Matrix4 PhiAverage::to_matrix(const FourMomentum& p) const {
    const auto& rep = GammaRep::dirac();
    Matrix4 r = rep.gamma[0] * c_g0;
    r += gamma_perp(p.px, p.py) * c_gpar;
    r += rep.gamma[3] * (c_gz * p.pz);
    return r;
}

Matrix2 sandwich(const Matrix4& op, const FourMomentum& p) {
    const Spinor u[2] = {eigenspinor(1, p), eigenspinor(2, p)};
    Matrix2 r;
    for (int i = 0; i < 2; ++i) {
        const auto ub = bar(u[i]);
        for (int j = 0; j < 2; ++j) {
            complexd s = 0.0;
            for (int a = 0; a < 4; ++a)
                for (int b = 0; b < 4; ++b) s += ub[a] * op(a, b) * u[j].c[b];
            r(i, j) = s * (p.m / p.p0);
        }
    }
    return r;
}

}  // namespace dqed::dirac
