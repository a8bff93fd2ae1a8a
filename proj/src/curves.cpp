#include "linkint/curves.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "linkint/errors.hpp"

namespace linkint {

namespace {

// Trigonometric interpolant evaluation from stored coefficients.
double eval_series(const std::vector<double>& ac, const std::vector<double>& bs, int n, double t) {
    double f = ac[0];
    const int K = static_cast<int>(bs.size()) - 1;  // bs[1..K]
    for (int k = 1; k <= K; ++k) f += ac[k] * std::cos(k * t) + bs[k] * std::sin(k * t);
    if (n % 2 == 0) f += ac[n / 2] * std::cos(0.5 * n * t);
    return f;
}

double eval_series_deriv(const std::vector<double>& ac, const std::vector<double>& bs, int n,
                         double t) {
    double f = 0.0;
    const int K = static_cast<int>(bs.size()) - 1;
    for (int k = 1; k <= K; ++k) f += k * (-ac[k] * std::sin(k * t) + bs[k] * std::cos(k * t));
    if (n % 2 == 0) f -= ac[n / 2] * 0.5 * n * std::sin(0.5 * n * t);
    return f;
}

}  // namespace

void ClosedCurve::build_spectral() {
    const int n = size();
    const int K = (n - 1) / 2;
    const int M = n / 2;
    for (int d = 0; d < 4; ++d) {
        cosc_[d].assign(M + 1, 0.0);
        sinc_[d].assign(K + 1, 0.0);
    }
    for (int j = 0; j < n; ++j) {
        const double s = param(j);
        for (int d = 0; d < 4; ++d) cosc_[d][0] += pts_[j][d];
    }
    for (int d = 0; d < 4; ++d) cosc_[d][0] /= n;
    for (int k = 1; k <= K; ++k) {
        for (int j = 0; j < n; ++j) {
            const double c = std::cos(k * param(j)), s = std::sin(k * param(j));
            for (int d = 0; d < 4; ++d) {
                cosc_[d][k] += pts_[j][d] * c;
                sinc_[d][k] += pts_[j][d] * s;
            }
        }
        for (int d = 0; d < 4; ++d) {
            cosc_[d][k] *= 2.0 / n;
            sinc_[d][k] *= 2.0 / n;
        }
    }
    if (n % 2 == 0) {
        for (int j = 0; j < n; ++j) {
            const double c = (j % 2 == 0) ? 1.0 : -1.0;
            for (int d = 0; d < 4; ++d) cosc_[d][M] += pts_[j][d] * c;
        }
        for (int d = 0; d < 4; ++d) cosc_[d][M] /= n;
    }

    vel_.resize(n);
    for (int j = 0; j < n; ++j) {
        Vec4 v;
        for (int d = 0; d < 4; ++d) v[d] = eval_series_deriv(cosc_[d], sinc_[d], n, param(j));
        vel_[j] = project_tangent(tag_, pts_[j], v);
    }
    Kahan<double> len;
    for (int j = 0; j < n; ++j) len.add(metric_norm(tag_, vel_[j]) * param_step());
    arclength_ = len.value();
    if (!(arclength_ > 0.0)) throw InvalidInput("curve has zero arclength");
}

ClosedCurve ClosedCurve::from_points(SpaceTag tag, std::vector<Vec4> samples, double tol) {
    if (samples.size() < 8) throw InvalidInput("closed curves need at least 8 samples");
    ClosedCurve c;
    c.tag_ = tag;
    c.pts_.reserve(samples.size());
    for (const Vec4& p : samples) {
        Point::make(tag, p, tol);  // membership check at the stated tolerance
        c.pts_.push_back(Point::project(tag, p).coords());
    }
    for (std::size_t j = 0; j < c.pts_.size(); ++j) {
        const Vec4 d = c.pts_[j] - c.pts_[(j + 1) % c.pts_.size()];
        if (dot4(d, d) == 0.0) throw InvalidInput("consecutive curve samples coincide");
    }
    c.build_spectral();
    return c;
}

ClosedCurve ClosedCurve::resampled(int m) const {
    if (m < 8) throw InvalidInput("resample target too small");
    if (m == size()) return *this;
    ClosedCurve c;
    c.tag_ = tag_;
    c.pts_.resize(m);
    const int n = size();
    for (int j = 0; j < m; ++j) {
        const double t = kTwoPi * j / m;
        Vec4 p;
        for (int d = 0; d < 4; ++d) p[d] = eval_series(cosc_[d], sinc_[d], n, t);
        c.pts_[j] = Point::project(tag_, p).coords();
    }
    c.build_spectral();
    return c;
}

ClosedCurve ClosedCurve::reversed() const {
    std::vector<Vec4> rev(pts_.size());
    for (std::size_t j = 0; j < pts_.size(); ++j)
        rev[j] = pts_[(pts_.size() - j) % pts_.size()];
    return from_points(tag_, std::move(rev), 1e-9);
}

double ClosedCurve::min_sample_spacing() const {
    double m = std::numeric_limits<double>::max();
    for (int j = 0; j < size(); ++j)
        m = std::min(m, distance(point(j), point((j + 1) % size())));
    return m;
}

double ClosedCurve::max_sample_spacing() const {
    double m = 0.0;
    for (int j = 0; j < size(); ++j)
        m = std::max(m, distance(point(j), point((j + 1) % size())));
    return m;
}

double ClosedCurve::min_distance_to(const ClosedCurve& other) const {
    if (tag_ != other.tag_) throw TagMismatch();
    double m = std::numeric_limits<double>::max();
    for (int i = 0; i < size(); ++i)
        for (int j = 0; j < other.size(); ++j)
            m = std::min(m, distance(point(i), other.point(j)));
    return m;
}

double ClosedCurve::min_self_distance(int window) const {
    const int n = size();
    double m = std::numeric_limits<double>::max();
    for (int i = 0; i < n; ++i)
        for (int j = i + window; j <= i + n - window; ++j)
            m = std::min(m, distance(point(i), point(j % n)));
    return m;
}

double integrate_curve(const ClosedCurve& c, const std::function<double(int)>& fn) {
    Kahan<double> acc;
    for (int i = 0; i < c.size(); ++i) acc.add(fn(i));
    return acc.value() * c.param_step();
}

// ---- canonical curves ------------------------------------------------------

ClosedCurve great_circle(int n) {
    std::vector<Vec4> pts(n);
    for (int j = 0; j < n; ++j) {
        const double s = kTwoPi * j / n;
        pts[j] = {std::cos(s), std::sin(s), 0.0, 0.0};
    }
    return ClosedCurve::from_points(SpaceTag::S3, std::move(pts), 1e-12);
}

std::pair<ClosedCurve, ClosedCurve> orthogonal_great_circle_pair(int n) {
    std::vector<Vec4> pts(n);
    for (int j = 0; j < n; ++j) {
        const double s = kTwoPi * j / n;
        pts[j] = {0.0, 0.0, std::cos(s), std::sin(s)};
    }
    return {great_circle(n), ClosedCurve::from_points(SpaceTag::S3, std::move(pts), 1e-12)};
}

ClosedCurve clifford_torus_knot(int p, int q, int n) {
    if (p == 0 || q == 0 || std::gcd(std::abs(p), std::abs(q)) != 1)
        throw InvalidInput("torus curve indices must be nonzero and coprime");
    const double r = 1.0 / std::sqrt(2.0);
    std::vector<Vec4> pts(n);
    for (int j = 0; j < n; ++j) {
        const double s = kTwoPi * j / n;
        pts[j] = {r * std::cos(p * s), r * std::sin(p * s), r * std::cos(q * s), r * std::sin(q * s)};
    }
    return ClosedCurve::from_points(SpaceTag::S3, std::move(pts), 1e-12);
}

std::pair<ClosedCurve, ClosedCurve> hopf_fiber_pair(int n, double eta) {
    if (eta <= 0.0 || eta >= kPi / 2.0)
        throw InvalidInput("hopf fiber separation must lie in (0, pi/2)");
    // Fibers through 1 and through cos(eta) + j sin(eta) of the fibration by
    // left multiplication with e^{i t}.
    const double ce = std::cos(eta), se = std::sin(eta);
    std::vector<Vec4> pts(n);
    for (int j = 0; j < n; ++j) {
        const double t = kTwoPi * j / n;
        pts[j] = {ce * std::cos(t), ce * std::sin(t), se * std::cos(t), se * std::sin(t)};
    }
    return {great_circle(n), ClosedCurve::from_points(SpaceTag::S3, std::move(pts), 1e-12)};
}

ClosedCurve h3_geodesic_circle(const Point& center, double radius, int n, int a1, int a2) {
    if (center.tag() != SpaceTag::H3) throw InvalidInput("center must be an H3 point");
    if (radius <= 0.0) throw InvalidInput("radius must be positive");
    if (a1 == a2 || a1 < 0 || a2 < 0 || a1 > 2 || a2 > 2)
        throw InvalidInput("plane axes must be distinct indices in 0..2");
    const auto F = frame_at(center);
    std::vector<Vec4> pts(n);
    const double ch = std::cosh(radius), sh = std::sinh(radius);
    for (int j = 0; j < n; ++j) {
        const double s = kTwoPi * j / n;
        const Vec4 dir = std::cos(s) * F[a1].comp + std::sin(s) * F[a2].comp;
        pts[j] = ch * center.coords() + sh * dir;
    }
    return ClosedCurve::from_points(SpaceTag::H3, std::move(pts), 1e-10);
}

ClosedCurve r3_round_circle(const Vec4& center, double radius, int n, int a1, int a2) {
    if (radius <= 0.0) throw InvalidInput("radius must be positive");
    if (a1 == a2 || a1 < 0 || a2 < 0 || a1 > 2 || a2 > 2)
        throw InvalidInput("plane axes must be distinct indices in 0..2");
    std::vector<Vec4> pts(n);
    for (int j = 0; j < n; ++j) {
        const double s = kTwoPi * j / n;
        Vec4 p = center;
        p[a1] += radius * std::cos(s);
        p[a2] += radius * std::sin(s);
        pts[j] = p;
    }
    return ClosedCurve::from_points(SpaceTag::R3, std::move(pts), 1e-12);
}

ClosedCurve exp_embedded(const ClosedCurve& model, const Point& base) {
    if (model.tag() != SpaceTag::R3) throw InvalidInput("exp_embedded expects an R3 model curve");
    const auto F = frame_at(base);
    std::vector<Vec4> pts(model.size());
    for (int j = 0; j < model.size(); ++j) {
        const Vec4 c = model.point_coords(j);
        const double r = norm4(c);
        if (r < 1e-14) {
            pts[j] = base.coords();
            continue;
        }
        const Vec4 dir = (c[0] * F[0].comp + c[1] * F[1].comp + c[2] * F[2].comp) * (1.0 / r);
        pts[j] = exp_map(base, {base, dir}, r).coords();
    }
    return ClosedCurve::from_points(base.tag(), std::move(pts), 1e-9);
}

std::vector<ClosedCurve> canonical_curve(const std::string& name,
                                         const std::map<std::string, double>& params, int n) {
    auto get = [&](const std::string& key, double dflt) {
        auto it = params.find(key);
        return it == params.end() ? dflt : it->second;
    };
    if (name == "great_circle") return {great_circle(n)};
    if (name == "orthogonal_great_circle_pair") {
        auto [a, b] = orthogonal_great_circle_pair(n);
        return {a, b};
    }
    if (name == "clifford_torus_knot")
        return {clifford_torus_knot(static_cast<int>(get("p", 2)), static_cast<int>(get("q", 3)), n)};
    if (name == "hopf_fiber_pair") {
        auto [a, b] = hopf_fiber_pair(n, get("eta", kPi / 4.0));
        return {a, b};
    }
    if (name == "hopf_a") return {hopf_fiber_pair(n, get("eta", kPi / 4.0)).first};
    if (name == "hopf_b") return {hopf_fiber_pair(n, get("eta", kPi / 4.0)).second};
    if (name == "h3_geodesic_circle") {
        const Point c = canonical_pole(SpaceTag::H3);
        return {h3_geodesic_circle(c, get("radius", 1.0), n, static_cast<int>(get("axis1", 0)),
                                   static_cast<int>(get("axis2", 1)))};
    }
    if (name == "r3_round_circle") {
        const Vec4 center{get("cx", 0.0), get("cy", 0.0), get("cz", 0.0)};
        return {r3_round_circle(center, get("radius", 1.0), n, static_cast<int>(get("axis1", 0)),
                                static_cast<int>(get("axis2", 1)))};
    }
    if (name == "exp_embedded") {
        // A round R3 circle pushed through the exponential map; `space` selects
        // the target (1 = s3, 2 = h3).
        const Vec4 center{get("cx", 0.0), get("cy", 0.0), get("cz", 0.0)};
        const double scale = get("radius", 0.5);
        ClosedCurve model = r3_round_circle(center, scale, n, static_cast<int>(get("axis1", 0)),
                                            static_cast<int>(get("axis2", 1)));
        const SpaceTag target = get("space", 2.0) == 1.0 ? SpaceTag::S3 : SpaceTag::H3;
        return {exp_embedded(model, canonical_pole(target))};
    }
    throw InvalidInput("unknown canonical curve: " + name);
}

// ---- framings ---------------------------------------------------------------

namespace {

Vec4 unit_tangent(const ClosedCurve& c, int i) {
    const Vec4 v = c.velocity_coords(i);
    return v * (1.0 / metric_norm(c.tag(), v));
}

// Initial unit normal at node 0: Gram-Schmidt a frame vector against the tangent.
Vec4 seed_normal(const ClosedCurve& c) {
    const Point x = c.point(0);
    const Vec4 t = unit_tangent(c, 0);
    const auto F = frame_at(x);
    for (const auto& e : F) {
        Vec4 w = e.comp - metric_dot(c.tag(), e.comp, t) * t;
        const double n = metric_norm(c.tag(), w);
        if (n > 0.3) return w * (1.0 / n);
    }
    throw NumericalFailure("could not seed a normal field");
}

Vec4 rotate_normal(const ClosedCurve& c, int i, const Vec4& w, double angle) {
    const Point x = c.point(i);
    const Vec4 t = unit_tangent(c, i);
    const Vec4 txw = tangent_cross(c.tag(), x.coords(), t, w);
    return std::cos(angle) * w + std::sin(angle) * txw;
}

}  // namespace

bool Framing::has_analytic_derivative() const {
    return method == FramingMethod::explicit_registry && registry_name == "paper_example";
}

Vec4 Framing::analytic_derivative(int i) const {
    if (!has_analytic_derivative()) throw InvalidInput("framing has no analytic derivative");
    const double s = curve.param(i);
    return {0.0, 0.0, -std::sin(s), std::cos(s)};
}

Framing make_framing(const ClosedCurve& curve, FramingMethod method,
                     const std::string& registry_name, double theta0) {
    const int n = curve.size();
    Framing f;
    f.curve = curve;
    f.method = method;
    f.registry_name = registry_name;
    f.theta0 = theta0;
    f.normals.resize(n);

    if (method == FramingMethod::explicit_registry) {
        if (registry_name != "paper_example")
            throw InvalidInput("unknown framing registry entry: " + registry_name);
        if (curve.tag() != SpaceTag::S3)
            throw InvalidInput("paper_example framing lives on S3");
        for (int i = 0; i < n; ++i) {
            const double s = curve.param(i);
            f.normals[i] = {0.0, 0.0, std::cos(s), std::sin(s)};
        }
    } else {
        // Discrete relatively-parallel frame: transport along chords, project
        // back to the normal bundle, then unroll the measured holonomy.
        std::vector<Vec4> w(n + 1);
        w[0] = seed_normal(curve);
        for (int i = 0; i < n; ++i) {
            const Point a = curve.point(i);
            const Point b = curve.point((i + 1) % n);
            Vec4 moved = parallel_transport(a, b, {a, w[i]}).comp;
            const Vec4 t = unit_tangent(curve, (i + 1) % n);
            moved = moved - metric_dot(curve.tag(), moved, t) * t;
            moved = project_tangent(curve.tag(), b.coords(), moved);
            const double nn = metric_norm(curve.tag(), moved);
            if (nn < 1e-8) throw NumericalFailure("normal field degenerated during transport");
            w[i + 1] = moved * (1.0 / nn);
        }
        const Vec4 t0 = unit_tangent(curve, 0);
        const Vec4 cross0 = tangent_cross(curve.tag(), curve.point_coords(0), t0, w[0]);
        const double hol = std::atan2(metric_dot(curve.tag(), cross0, w[n]),
                                      metric_dot(curve.tag(), w[0], w[n]));
        f.holonomy_angle = hol;
        const double extra = (method == FramingMethod::constant_angle) ? theta0 : 0.0;
        for (int i = 0; i < n; ++i)
            f.normals[i] = rotate_normal(curve, i, w[i], -hol * i / n + extra);
    }

    for (int i = 0; i < n; ++i) {
        const double nn = metric_norm(curve.tag(), f.normals[i]);
        const double tp = metric_dot(curve.tag(), f.normals[i], unit_tangent(curve, i));
        if (std::abs(nn - 1.0) > 1e-8 || std::abs(tp) > 1e-8)
            throw NumericalFailure("framing violates unit/normal invariants");
    }
    return f;
}

Ribbon make_ribbon(const Framing& framing, double eps) {
    if (eps <= 0.0) throw InvalidInput("ribbon width must be positive");
    Ribbon r{framing, eps};
    const ClosedCurve edge = ribbon_edge(framing, eps);
    if (framing.curve.min_distance_to(edge) <= 0.5 * eps)
        throw ComputationRejected("ribbon edge comes closer than eps/2 to the base curve");
    return r;
}

ClosedCurve ribbon_edge(const Framing& framing, double eps) {
    const ClosedCurve& K = framing.curve;
    std::vector<Vec4> pts(K.size());
    for (int i = 0; i < K.size(); ++i) {
        const Point x = K.point(i);
        pts[i] = exp_map(x, {x, framing.normals[i]}, eps).coords();
    }
    return ClosedCurve::from_points(K.tag(), std::move(pts), 1e-8);
}

ClosedCurve ribbon_edge(const Ribbon& ribbon) { return ribbon_edge(ribbon.framing, ribbon.eps); }

}  // namespace linkint
