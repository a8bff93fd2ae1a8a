#include "linkint/fields.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace linkint {

namespace {

// x coth x with the removable singularity at 0.
double xcoth(double x) {
    if (std::abs(x) < 1e-5) return 1.0 + x * x / 3.0;
    return x / std::tanh(x);
}

struct Bump {
    double R;
    double value(double r) const {
        if (r >= R) return 0.0;
        const double u = (r / R) * (r / R);
        const double w = 1.0 - u;
        return w * w * w;
    }
    double deriv(double r) const {
        if (r >= R) return 0.0;
        const double u = (r / R) * (r / R);
        const double w = 1.0 - u;
        return -6.0 * r / (R * R) * w * w;
    }
    double second(double r) const {
        if (r >= R) return 0.0;
        const double u = (r / R) * (r / R);
        const double w = 1.0 - u;
        return -6.0 / (R * R) * w * w + 24.0 * r * r / (R * R * R * R) * w;
    }
};

}  // namespace

double ScalarSpec::eval(const Point& x) const {
    if (x.tag() != tag) throw TagMismatch();
    if (tag == SpaceTag::S3) {
        const int c = name[1] - '0';
        return x.coords()[c];
    }
    const double r = distance(canonical_pole(tag), x);
    return Bump{radius}.value(r);
}

Vec4 ScalarSpec::grad(const Point& x) const {
    if (x.tag() != tag) throw TagMismatch();
    if (tag == SpaceTag::S3) {
        const int c = name[1] - '0';
        Vec4 e;
        e[c] = 1.0;
        return project_tangent(SpaceTag::S3, x.coords(), e);
    }
    const Point pole = canonical_pole(tag);
    const double r = distance(pole, x);
    if (r < 1e-12 || r >= radius) return Vec4{};
    return Bump{radius}.deriv(r) * grad_distance(pole, x).comp;
}

double ScalarSpec::laplacian(const Point& x) const {
    if (x.tag() != tag) throw TagMismatch();
    if (tag == SpaceTag::S3) return -3.0 * eval(x);
    const double r = distance(canonical_pole(tag), x);
    if (r >= radius) return 0.0;
    const Bump b{radius};
    if (r < 1e-8) return 3.0 * b.second(0.0);
    if (tag == SpaceTag::R3) return b.second(r) + 2.0 / r * b.deriv(r);
    return b.second(r) + 2.0 * xcoth(r) / r * b.deriv(r);
}

ScalarSpec scalar_registry(SpaceTag tag, const std::string& name, double radius) {
    if (tag == SpaceTag::S3) {
        if (name.size() == 2 && name[0] == 'x' && name[1] >= '0' && name[1] <= '3')
            return {tag, name, radius};
        throw InvalidInput("unknown S3 scalar: " + name);
    }
    if (name == "bump") return {tag, name, radius};
    throw InvalidInput("unknown scalar: " + name);
}

// ---- grid-sampled fields -----------------------------------------------------

namespace {

// Clamped bracketing index + interpolation fraction on a sorted axis.
std::pair<int, double> locate(const std::vector<double>& ax, double c) {
    const int n = static_cast<int>(ax.size());
    if (c <= ax.front()) return {0, 0.0};
    if (c >= ax.back()) return {n - 2, 1.0};
    const int hi = static_cast<int>(std::upper_bound(ax.begin(), ax.end(), c) - ax.begin());
    const int lo = hi - 1;
    return {lo, (c - ax[lo]) / (ax[hi] - ax[lo])};
}

// Wrapped index + fraction on a uniform half-offset periodic axis.
std::pair<int, double> locate_periodic(const std::vector<double>& ax, double c) {
    const int n = static_cast<int>(ax.size());
    const double step = kTwoPi / n;
    double t = (c - ax[0]) / step;
    t -= std::floor(t / n) * n;
    const int lo = static_cast<int>(std::floor(t)) % n;
    return {lo, t - std::floor(t)};
}

std::array<double, 3> grid_coords(const VolumeGrid& g, const Point& x) {
    const Vec4& c = x.coords();
    switch (g.tag) {
        case SpaceTag::S3: {
            const double r01 = std::hypot(c[0], c[1]), r23 = std::hypot(c[2], c[3]);
            const double eta = std::atan2(r23, r01);
            auto wrap = [](double a) { return a < 0.0 ? a + kTwoPi : a; };
            return {eta, wrap(std::atan2(c[1], c[0])), wrap(std::atan2(c[3], c[2]))};
        }
        case SpaceTag::H3:
        case SpaceTag::R3: {
            const Point pole = canonical_pole(g.tag);
            const double rho = distance(pole, x);
            if (rho > g.radius)
                throw InvalidInput("point outside grid-sampled support");
            Vec4 u{0, 0, 0, 1};
            if (rho > 1e-12) u = geodesic_dir(pole, x).comp;
            const int off = g.tag == SpaceTag::H3 ? 1 : 0;  // spatial components
            const double u1 = u[off], u2 = u[off + 1], u3 = u[off + 2];
            const double theta = std::acos(std::clamp(u3, -1.0, 1.0));
            double phi = std::atan2(u2, u1);
            if (phi < 0.0) phi += kTwoPi;
            return {rho, theta, phi};
        }
    }
    throw InvalidInput("unknown space tag");
}

}  // namespace

GridSampledField GridSampledField::sample(const VecFieldFn& src, const VolumeGrid& skeleton) {
    GridSampledField out;
    out.grid_ = skeleton;
    out.comps_.resize(skeleton.size());
    for (std::size_t i = 0; i < skeleton.size(); ++i) {
        const Point p = Point::make(skeleton.tag, skeleton.nodes[i], 1e-9);
        const auto F = frame_at(p);
        const Vec4 v = src(p);
        for (int k = 0; k < 3; ++k)
            out.comps_[i][k] = metric_dot(skeleton.tag, v, F[k].comp);
    }
    return out;
}

Vec4 GridSampledField::eval(const Point& x) const {
    if (x.tag() != grid_.tag) throw TagMismatch();
    const auto c = grid_coords(grid_, x);
    const auto [i0, f0] = locate(grid_.axis[0], c[0]);
    const auto [i1, f1] = (grid_.tag == SpaceTag::S3) ? locate_periodic(grid_.axis[1], c[1])
                                                      : locate(grid_.axis[1], c[1]);
    const auto [i2, f2] = locate_periodic(grid_.axis[2], c[2]);
    const int n1 = grid_.dims[1], n2 = grid_.dims[2];
    auto idx = [&](int a, int b, int cc) {
        return (static_cast<std::size_t>(a) * n1 + (b % n1)) * n2 + (cc % n2);
    };
    std::array<double, 3> acc{0.0, 0.0, 0.0};
    for (int da = 0; da < 2; ++da)
        for (int db = 0; db < 2; ++db)
            for (int dc = 0; dc < 2; ++dc) {
                const double w = (da ? f0 : 1.0 - f0) * (db ? f1 : 1.0 - f1) * (dc ? f2 : 1.0 - f2);
                const auto& cv = comps_[idx(i0 + da, i1 + db, i2 + dc)];
                for (int k = 0; k < 3; ++k) acc[k] += w * cv[k];
            }
    const auto F = frame_at(x);
    return acc[0] * F[0].comp + acc[1] * F[1].comp + acc[2] * F[2].comp;
}

// ---- field specifications ----------------------------------------------------

FieldSpec FieldSpec::left_invariant(double a, double b, double c) {
    FieldSpec f;
    f.tag_ = SpaceTag::S3;
    FieldTerm t{FieldKind::left_invariant};
    t.quat_axis = {0, a, b, c};
    f.terms_.push_back(t);
    return f;
}

FieldSpec FieldSpec::right_invariant(double a, double b, double c) {
    FieldSpec f;
    f.tag_ = SpaceTag::S3;
    FieldTerm t{FieldKind::right_invariant};
    t.quat_axis = {0, a, b, c};
    f.terms_.push_back(t);
    return f;
}

FieldSpec FieldSpec::gradient_of(SpaceTag tag, const std::string& name, double radius) {
    FieldSpec f;
    f.tag_ = tag;
    FieldTerm t{FieldKind::gradient_scalar};
    t.scalar = scalar_registry(tag, name, radius);
    f.terms_.push_back(t);
    return f;
}

FieldSpec FieldSpec::bump_rotational(SpaceTag tag, double radius, int axis) {
    if (tag == SpaceTag::S3) throw InvalidInput("bump fields live on H3/R3");
    if (axis < 0 || axis > 2) throw InvalidInput("rotation axis must be 0..2");
    FieldSpec f;
    f.tag_ = tag;
    FieldTerm t{FieldKind::bump_rotational};
    t.scalar = scalar_registry(tag, "bump", radius);
    t.rotation_axis = axis;
    f.terms_.push_back(t);
    return f;
}

FieldSpec FieldSpec::grid_sampled(std::shared_ptr<const GridSampledField> g, SpaceTag tag) {
    FieldSpec f;
    f.tag_ = tag;
    FieldTerm t{FieldKind::grid_sampled};
    t.grid = std::move(g);
    f.terms_.push_back(t);
    return f;
}

FieldSpec& FieldSpec::add(const FieldSpec& other, double coeff) {
    if (terms_.empty()) tag_ = other.tag_;
    if (tag_ != other.tag_) throw TagMismatch();
    for (FieldTerm t : other.terms_) {
        t.coeff *= coeff;
        terms_.push_back(t);
    }
    return *this;
}

FieldSpec operator*(double s, FieldSpec f) {
    for (auto& t : f.terms_) t.coeff *= s;
    return f;
}

namespace {

Vec4 eval_term(SpaceTag tag, const FieldTerm& t, const Point& x) {
    switch (t.kind) {
        case FieldKind::left_invariant: return quat_mul(x.coords(), t.quat_axis);
        case FieldKind::right_invariant: return quat_mul(t.quat_axis, x.coords());
        case FieldKind::gradient_scalar: return t.scalar.grad(x);
        case FieldKind::bump_rotational: {
            const Point pole = canonical_pole(tag);
            const double r = distance(pole, x);
            const double psi = Bump{t.scalar.radius}.value(r);
            if (psi == 0.0) return Vec4{};
            const int k = t.rotation_axis;
            const int a = (k + 1) % 3, b = (k + 2) % 3;
            const int off = tag == SpaceTag::H3 ? 1 : 0;
            Vec4 K;
            K[off + a] = -x.coords()[off + b];
            K[off + b] = x.coords()[off + a];
            return psi * K;
        }
        case FieldKind::grid_sampled: return t.grid->eval(x);
    }
    throw InvalidInput("unknown field kind");
}

}  // namespace

Vec4 FieldSpec::eval_coords(const Point& x) const {
    if (x.tag() != tag_) throw TagMismatch();
    Vec4 v;
    for (const auto& t : terms_) v += t.coeff * eval_term(tag_, t, x);
    return v;
}

VecFieldFn FieldSpec::as_fn() const {
    return [spec = *this](const Point& x) { return spec.eval_coords(x); };
}

double FieldSpec::support_radius() const {
    double r = 0.0;
    for (const auto& t : terms_) {
        switch (t.kind) {
            case FieldKind::gradient_scalar:
                if (t.scalar.name != "bump") return 0.0;
                r = std::max(r, t.scalar.radius);
                break;
            case FieldKind::bump_rotational: r = std::max(r, t.scalar.radius); break;
            case FieldKind::grid_sampled: r = std::max(r, t.grid->skeleton().radius); break;
            default: return 0.0;
        }
    }
    return r;
}

namespace {

bool term_analytic(const FieldTerm& t, int op) {  // op: 0 div, 1 curl, 2 lap
    switch (t.kind) {
        case FieldKind::left_invariant:
        case FieldKind::right_invariant: return true;
        case FieldKind::gradient_scalar:
            if (op == 2) return t.scalar.name != "bump";
            return true;
        case FieldKind::bump_rotational: return op == 0;
        case FieldKind::grid_sampled: return false;
    }
    return false;
}

}  // namespace

bool FieldSpec::has_analytic_ops() const {
    for (const auto& t : terms_)
        for (int op = 0; op < 3; ++op)
            if (!term_analytic(t, op)) return false;
    return true;
}

bool FieldSpec::smooth_everywhere() const {
    for (const auto& t : terms_)
        if (t.kind == FieldKind::grid_sampled) return false;
    return true;
}

// ---- differential operators --------------------------------------------------

Vec4 fd_covariant_derivative(const VecFieldFn& V, const Point& x, const TangentVec& dir, double h) {
    const Point xp = exp_map(x, dir, h);
    const Point xm = exp_map(x, dir, -h);
    const Vec4 vp = parallel_transport(xp, x, {xp, V(xp)}).comp;
    const Vec4 vm = parallel_transport(xm, x, {xm, V(xm)}).comp;
    return (vp - vm) * (1.0 / (2.0 * h));
}

Vec4 fd_curl(const VecFieldFn& V, const Point& x, double h) {
    const auto F = frame_at(x);
    std::array<Vec4, 3> D;
    for (int i = 0; i < 3; ++i) D[i] = fd_covariant_derivative(V, x, F[i], h);
    const SpaceTag tag = x.tag();
    Vec4 out;
    for (int k = 0; k < 3; ++k) {
        const int i = (k + 1) % 3, j = (k + 2) % 3;
        const double c = metric_dot(tag, D[i], F[j].comp) - metric_dot(tag, D[j], F[i].comp);
        out += c * F[k].comp;
    }
    return out;
}

double fd_divergence(const VecFieldFn& V, const Point& x, double h) {
    const auto F = frame_at(x);
    double d = 0.0;
    for (int i = 0; i < 3; ++i)
        d += metric_dot(x.tag(), fd_covariant_derivative(V, x, F[i], h), F[i].comp);
    return d;
}

Vec4 fd_gradient(const ScalarFieldFn& f, const Point& x, double h) {
    const auto F = frame_at(x);
    Vec4 g;
    for (int i = 0; i < 3; ++i) {
        const double fp = f(exp_map(x, F[i], h));
        const double fm = f(exp_map(x, F[i], -h));
        g += ((fp - fm) / (2.0 * h)) * F[i].comp;
    }
    return g;
}

Vec4 fd_vector_laplacian(const VecFieldFn& V, const Point& x, double h_outer, double h_inner) {
    auto curl_fn = [&](const Point& p) { return fd_curl(V, p, h_inner); };
    const Vec4 curl_curl = fd_curl(curl_fn, x, h_outer);
    auto div_fn = [&](const Point& p) { return fd_divergence(V, p, h_inner); };
    const Vec4 grad_div = fd_gradient(div_fn, x, h_outer);
    return grad_div - curl_curl;
}

namespace {

bool all_analytic(const FieldSpec& V, int op) {
    for (const auto& t : V.terms())
        if (!term_analytic(t, op)) return false;
    return true;
}

}  // namespace

double divergence(const FieldSpec& V, const Point& x, DiffBackend b) {
    const bool analytic = b == DiffBackend::analytic ||
                          (b == DiffBackend::automatic && all_analytic(V, 0));
    if (b == DiffBackend::analytic && !all_analytic(V, 0))
        throw InvalidInput("no analytic divergence for this field");
    if (!analytic) return fd_divergence(V.as_fn(), x, kFdStep1);
    double d = 0.0;
    for (const auto& t : V.terms()) {
        if (t.kind == FieldKind::gradient_scalar) d += t.coeff * t.scalar.laplacian(x);
        // invariant and rotational terms are divergence-free
    }
    return d;
}

TangentVec curl(const FieldSpec& V, const Point& x, DiffBackend b) {
    const bool analytic = b == DiffBackend::analytic ||
                          (b == DiffBackend::automatic && all_analytic(V, 1));
    if (b == DiffBackend::analytic && !all_analytic(V, 1))
        throw InvalidInput("no analytic curl for this field");
    if (!analytic) return {x, fd_curl(V.as_fn(), x, kFdStep1)};
    Vec4 out;
    for (const auto& t : V.terms()) {
        if (t.kind == FieldKind::left_invariant)
            out += (-2.0 * t.coeff) * eval_term(V.tag(), t, x);
        else if (t.kind == FieldKind::right_invariant)
            out += (2.0 * t.coeff) * eval_term(V.tag(), t, x);
        // gradient terms are curl-free
    }
    return {x, out};
}

TangentVec vector_laplacian(const FieldSpec& V, const Point& x, DiffBackend b) {
    const bool analytic = b == DiffBackend::analytic ||
                          (b == DiffBackend::automatic && all_analytic(V, 2));
    if (b == DiffBackend::analytic && !all_analytic(V, 2))
        throw InvalidInput("no analytic vector Laplacian for this field");
    if (!analytic) return {x, fd_vector_laplacian(V.as_fn(), x)};
    Vec4 out;
    for (const auto& t : V.terms()) {
        switch (t.kind) {
            case FieldKind::left_invariant:
            case FieldKind::right_invariant:
                out += (-4.0 * t.coeff) * eval_term(V.tag(), t, x);
                break;
            case FieldKind::gradient_scalar:
                // Delta grad f = grad Delta f; S3 coordinate scalars obey
                // Delta f = -3 f.
                out += (-3.0 * t.coeff) * eval_term(V.tag(), t, x);
                break;
            default: throw InvalidInput("no analytic vector Laplacian for this term");
        }
    }
    return {x, out};
}

// ---- L2 pairings ---------------------------------------------------------------

double l2_inner(const FieldSpec& a, const FieldSpec& b, const VolumeGrid& grid) {
    if (a.tag() != b.tag() || a.tag() != grid.tag) throw TagMismatch();
    const double rs = std::max(a.support_radius(), b.support_radius());
    if (grid.tag != SpaceTag::S3 && rs > 0.0 && grid.radius < rs)
        throw InvalidInput("grid does not cover the field support");
    return integrate_volume<double>(grid, [&](const Point& x, double w) {
        return w * metric_dot(grid.tag, a.eval_coords(x), b.eval_coords(x));
    });
}

double l2_norm(const FieldSpec& a, const VolumeGrid& grid) {
    return std::sqrt(std::max(0.0, l2_inner(a, a, grid)));
}

// ---- registry -----------------------------------------------------------------

FieldSpec field_registry(SpaceTag tag, const std::string& name,
                         const std::map<std::string, double>& params) {
    auto get = [&](const std::string& k, double d) {
        auto it = params.find(k);
        return it == params.end() ? d : it->second;
    };
    if (name == "left_invariant")
        return FieldSpec::left_invariant(get("a", 1), get("b", 0), get("c", 0));
    if (name == "right_invariant")
        return FieldSpec::right_invariant(get("a", 1), get("b", 0), get("c", 0));
    if (name.rfind("gradient_", 0) == 0) {
        const std::string scalar = name.substr(9);
        return FieldSpec::gradient_of(tag, scalar, get("R", 1.0));
    }
    if (name == "bump_gradient") return FieldSpec::gradient_of(tag, "bump", get("R", 1.0));
    if (name == "bump_rotational")
        return FieldSpec::bump_rotational(tag, get("R", 1.0), static_cast<int>(get("axis", 2)));
    throw InvalidInput("unknown field registry entry: " + name);
}

}  // namespace linkint
