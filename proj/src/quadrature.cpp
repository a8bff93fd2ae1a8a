#include "linkint/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace linkint {

namespace {
std::atomic<int> g_workers{0};
}

int worker_count() {
    int w = g_workers.load();
    if (w > 0) return w;
    if (const char* env = std::getenv("LINKINT_THREADS")) {
        const int n = std::atoi(env);
        if (n >= 1) return std::min(n, 256);
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(std::min(hc, 64u));
}

void set_worker_count(int n) { g_workers.store(n); }

void gauss_legendre(int n, double a, double b, std::vector<double>& x, std::vector<double>& w) {
    x.assign(n, 0.0);
    w.assign(n, 0.0);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        // Newton iteration on P_n from the Chebyshev-like initial guess.
        double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (z * p0 - p1) / (z * z - 1.0);
            const double dz = p0 / pp;
            z -= dz;
            if (std::abs(dz) < 1e-15) break;
        }
        const double xm = 0.5 * (b + a), xl = 0.5 * (b - a);
        x[i] = xm - xl * z;
        x[n - 1 - i] = xm + xl * z;
        w[i] = 2.0 * xl / ((1.0 - z * z) * pp * pp);
        w[n - 1 - i] = w[i];
    }
}

namespace {

double max_gap(const std::vector<double>& x, double lo, double hi) {
    double g = 0.0;
    double prev = lo;
    for (double v : x) {
        g = std::max(g, v - prev);
        prev = v;
    }
    return std::max(g, hi - prev);
}

}  // namespace

VolumeGrid VolumeGrid::s3_hopf(int n_eta, int n_xi1, int n_xi2) {
    if (n_eta < 2 || n_xi1 < 4 || n_xi2 < 4) throw InvalidInput("S3 grid too small");
    VolumeGrid g;
    g.tag = SpaceTag::S3;
    g.dims = {n_eta, n_xi1, n_xi2};

    std::vector<double> eta, weta;
    gauss_legendre(n_eta, 0.0, kPi / 2.0, eta, weta);
    const double dxi1 = kTwoPi / n_xi1, dxi2 = kTwoPi / n_xi2;
    std::vector<double> xi1(n_xi1), xi2(n_xi2);
    for (int j = 0; j < n_xi1; ++j) xi1[j] = (j + 0.5) * dxi1;  // half offset keeps nodes off the poles
    for (int k = 0; k < n_xi2; ++k) xi2[k] = (k + 0.5) * dxi2;
    g.axis = {eta, xi1, xi2};

    g.nodes.reserve(static_cast<std::size_t>(n_eta) * n_xi1 * n_xi2);
    g.weights.reserve(g.nodes.capacity());
    g.alpha0.reserve(g.nodes.capacity());
    Kahan<double> wsum;
    for (int i = 0; i < n_eta; ++i) {
        const double ce = std::cos(eta[i]), se = std::sin(eta[i]);
        const double wi = se * ce * weta[i] * dxi1 * dxi2;
        for (int j = 0; j < n_xi1; ++j) {
            const double c1 = std::cos(xi1[j]), s1 = std::sin(xi1[j]);
            for (int k = 0; k < n_xi2; ++k) {
                const Vec4 x(ce * c1, ce * s1, se * std::cos(xi2[k]), se * std::sin(xi2[k]));
                g.nodes.push_back(x);
                g.weights.push_back(wi);
                g.alpha0.push_back(std::acos(std::clamp(x[0], -1.0, 1.0)));
                wsum.add(wi);
            }
        }
    }
    g.weight_sum = wsum.value();
    g.max_spacing = std::max({max_gap(eta, 0.0, kPi / 2.0), dxi1, dxi2});
    return g;
}

VolumeGrid VolumeGrid::h3_ball(double rho_max, int n_rho, int n_theta, int n_phi) {
    if (rho_max <= 0.0 || n_rho < 2 || n_theta < 2 || n_phi < 4)
        throw InvalidInput("H3 grid parameters out of range");
    VolumeGrid g;
    g.tag = SpaceTag::H3;
    g.dims = {n_rho, n_theta, n_phi};
    g.radius = rho_max;

    std::vector<double> rho, wrho, theta, wtheta;
    gauss_legendre(n_rho, 0.0, rho_max, rho, wrho);
    gauss_legendre(n_theta, 0.0, kPi, theta, wtheta);
    const double dphi = kTwoPi / n_phi;
    std::vector<double> phi(n_phi);
    for (int k = 0; k < n_phi; ++k) phi[k] = (k + 0.5) * dphi;
    g.axis = {rho, theta, phi};

    Kahan<double> wsum;
    for (int i = 0; i < n_rho; ++i) {
        const double ch = std::cosh(rho[i]), sh = std::sinh(rho[i]);
        for (int j = 0; j < n_theta; ++j) {
            const double st = std::sin(theta[j]), ct = std::cos(theta[j]);
            const double wij = sh * sh * st * wrho[i] * wtheta[j] * dphi;
            for (int k = 0; k < n_phi; ++k) {
                g.nodes.push_back(
                    {ch, sh * st * std::cos(phi[k]), sh * st * std::sin(phi[k]), sh * ct});
                g.weights.push_back(wij);
                g.alpha0.push_back(rho[i]);
                wsum.add(wij);
            }
        }
    }
    g.weight_sum = wsum.value();
    const double shm = std::sinh(0.5 * rho_max);
    g.max_spacing =
        std::max({max_gap(rho, 0.0, rho_max), shm * max_gap(theta, 0.0, kPi), shm * dphi});
    return g;
}

VolumeGrid VolumeGrid::r3_ball(double r_max, int n_r, int n_theta, int n_phi) {
    if (r_max <= 0.0 || n_r < 2 || n_theta < 2 || n_phi < 4)
        throw InvalidInput("R3 grid parameters out of range");
    VolumeGrid g;
    g.tag = SpaceTag::R3;
    g.dims = {n_r, n_theta, n_phi};
    g.radius = r_max;

    std::vector<double> r, wr, theta, wtheta;
    gauss_legendre(n_r, 0.0, r_max, r, wr);
    gauss_legendre(n_theta, 0.0, kPi, theta, wtheta);
    const double dphi = kTwoPi / n_phi;
    std::vector<double> phi(n_phi);
    for (int k = 0; k < n_phi; ++k) phi[k] = (k + 0.5) * dphi;
    g.axis = {r, theta, phi};

    Kahan<double> wsum;
    for (int i = 0; i < n_r; ++i) {
        for (int j = 0; j < n_theta; ++j) {
            const double st = std::sin(theta[j]), ct = std::cos(theta[j]);
            const double wij = r[i] * r[i] * st * wr[i] * wtheta[j] * dphi;
            for (int k = 0; k < n_phi; ++k) {
                g.nodes.push_back(
                    {r[i] * st * std::cos(phi[k]), r[i] * st * std::sin(phi[k]), r[i] * ct, 0.0});
                g.weights.push_back(wij);
                g.alpha0.push_back(r[i]);
                wsum.add(wij);
            }
        }
    }
    g.weight_sum = wsum.value();
    g.max_spacing =
        std::max({max_gap(r, 0.0, r_max), 0.5 * r_max * max_gap(theta, 0.0, kPi), 0.5 * r_max * dphi});
    return g;
}

VolumeGrid VolumeGrid::make_default(SpaceTag tag, std::array<int, 3> d, double radius) {
    switch (tag) {
        case SpaceTag::S3: return s3_hopf(d[0], d[1], d[2]);
        case SpaceTag::H3: return h3_ball(radius, d[0], d[1], d[2]);
        case SpaceTag::R3: return r3_ball(radius, d[0], d[1], d[2]);
    }
    throw InvalidInput("unknown space tag");
}

Recenter::Recenter(const Point& y) : tag_(y.tag()), y_(y.coords()) {
    switch (tag_) {
        case SpaceTag::R3:
        case SpaceTag::S3: break;  // translation / left multiplication, no setup
        case SpaceTag::H3: {
            const Point c0 = canonical_pole(SpaceTag::H3);
            const double d = distance(c0, y);
            if (d <= 1e-14) {
                identity_ = true;
                break;
            }
            cosh_d_ = std::cosh(d);
            sinh_d_ = std::sinh(d);
            u_ = geodesic_dir(c0, y).comp;
            break;
        }
    }
}

Vec4 Recenter::operator()(const Vec4& node) const {
    switch (tag_) {
        case SpaceTag::R3: return node + y_;
        case SpaceTag::S3: return quat_mul(y_, node);
        case SpaceTag::H3: {
            if (identity_) return node;
            const Vec4 c0{1, 0, 0, 0};
            const double a = minkowski_form(node, c0);
            const double b = -minkowski_form(node, u_);
            const Vec4 w = node - a * c0 - b * u_;
            return (a * cosh_d_ + b * sinh_d_) * c0 + (a * sinh_d_ + b * cosh_d_) * u_ + w;
        }
    }
    return node;
}

double masked_weight_fraction(const PairGrid& pg) {
    const double total = pg.a->weight_sum * pg.b->weight_sum;
    const double kept = integrate_pair<double>(
        pg, [](const Vec4&, double wa, const Vec4&, double wb, double) { return wa * wb; });
    return 1.0 - kept / total;
}

std::vector<SweepRow> convergence_sweep(const std::vector<double>& resolutions,
                                        const std::function<double(double)>& compute) {
    if (resolutions.size() < 2) throw InvalidInput("sweep needs at least two resolutions");
    std::vector<SweepRow> rows;
    rows.reserve(resolutions.size());
    for (double r : resolutions) {
        const double v = compute(r);
        rows.push_back({r, v, rows.empty() ? 0.0 : v - rows.back().value});
    }
    return rows;
}

double estimated_order(const std::vector<SweepRow>& rows) {
    if (rows.size() < 3) return std::nan("");
    const double d1 = std::abs(rows[rows.size() - 2].delta);
    const double d2 = std::abs(rows[rows.size() - 1].delta);
    if (d1 == 0.0 || d2 == 0.0) return std::nan("");
    return std::log2(d1 / d2);
}

}  // namespace linkint
