// Command-line surface: Gauss-type linking/writhing/twisting integrals,
// Biot-Savart and Green's operators, helicity and operator-norm bounds.
//
// Exit codes: 0 success, 2 invalid input, 3 computation rejected
// (geometry too degenerate), 4 internal numerical failure.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "linkint/helicity.hpp"
#include "linkint/io.hpp"
#include "linkint/ltw.hpp"

using namespace linkint;

namespace {

using Clock = std::chrono::steady_clock;

struct CommonOpts {
    std::string space = "s3";
    std::string format;
    int samples = 256;
    std::string grid = "";
    double grid_radius = 3.0;
    double eps = 1e-2;
    double r_cut = -1.0;
    int threads = 0;
    std::string out = "json";
    std::string out_file;
};

SpaceTag space_of(const std::string& s) {
    if (s == "r3") return SpaceTag::R3;
    if (s == "s3") return SpaceTag::S3;
    if (s == "h3") return SpaceTag::H3;
    throw InvalidInput("unknown space: " + s);
}

Format format_of(const std::string& f, SpaceTag tag) {
    if (f.empty()) return default_format(tag);
    if (f == "left") return Format::left_translation;
    if (f == "parallel") return Format::parallel;
    if (f == "euclidean") return Format::euclidean;
    throw InvalidInput("unknown format: " + f);
}

std::array<int, 3> parse_dims(const std::string& s, std::array<int, 3> dflt) {
    if (s.empty()) return dflt;
    std::array<int, 3> d{};
    std::stringstream ss(s);
    std::string tok;
    int i = 0;
    while (std::getline(ss, tok, ',') && i < 3) d[i++] = std::stoi(tok);
    if (i != 3) throw InvalidInput("--grid expects n1,n2,n3");
    return d;
}

VolumeGrid make_grid(const CommonOpts& o, SpaceTag tag) {
    const std::array<int, 3> dflt =
        tag == SpaceTag::S3 ? std::array<int, 3>{32, 64, 64} : std::array<int, 3>{24, 16, 32};
    return VolumeGrid::make_default(tag, parse_dims(o.grid, dflt), o.grid_radius);
}

FieldSpec parse_field(const std::string& ref, SpaceTag tag) {
    if (ref.rfind("registry:", 0) != 0)
        throw InvalidInput("--field expects registry:NAME?key=value");
    const auto [name, params] = parse_ref(ref, "registry:");
    return field_registry(tag, name, params);
}

Framing parse_framing(const ClosedCurve& curve, const std::string& ref) {
    if (ref == "parallel_corrected" || ref.empty())
        return make_framing(curve, FramingMethod::parallel_corrected);
    if (ref.rfind("constant_angle", 0) == 0) {
        const auto [name, params] = parse_ref(ref, "");
        auto it = params.find("theta0");
        return make_framing(curve, FramingMethod::constant_angle, "",
                            it == params.end() ? 0.0 : it->second);
    }
    return make_framing(curve, FramingMethod::explicit_registry, ref);
}

std::vector<Point> probe_points(SpaceTag tag, int count, double radius_cap) {
    std::mt19937_64 rng(918273645ULL);
    std::normal_distribution<double> g;
    std::uniform_real_distribution<double> ur(0.1, std::max(0.2, radius_cap));
    std::vector<Point> pts;
    while (static_cast<int>(pts.size()) < count) {
        if (tag == SpaceTag::S3) {
            Vec4 v{g(rng), g(rng), g(rng), g(rng)};
            if (norm4(v) < 1e-3) continue;
            pts.push_back(Point::project(SpaceTag::S3, v));
        } else if (tag == SpaceTag::R3) {
            pts.push_back(Point::r3({g(rng), g(rng), g(rng)}));
        } else {
            const Point c0 = canonical_pole(SpaceTag::H3);
            Vec4 raw{0, g(rng), g(rng), g(rng)};
            Vec4 t = project_tangent(SpaceTag::H3, c0.coords(), raw);
            const double nn = metric_norm(SpaceTag::H3, t);
            if (nn < 1e-3) continue;
            pts.push_back(exp_map(c0, {c0, t * (1.0 / nn)}, ur(rng)));
        }
    }
    return pts;
}

void emit(Report rep, const CommonOpts& o, Clock::time_point t0) {
    for (const auto& [k, v] : rep.values)
        if (!std::isfinite(v)) throw NumericalFailure("non-finite value in report field " + k);
    rep.runtime_seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    std::string body;
    if (o.out == "json") {
        body = rep.to_json();
    } else if (o.out == "csv") {
        std::ostringstream ss;
        ss.precision(17);
        ss << "key,value\n";
        for (const auto& [k, v] : rep.values) ss << k << "," << v << "\n";
        body = ss.str();
    } else {
        throw InvalidInput("--out must be json or csv");
    }
    if (o.out_file.empty())
        std::cout << body;
    else
        write_text_file(o.out_file, body);
}

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--space", o.space, "r3|s3|h3");
    cmd->add_option("--format", o.format, "left|parallel|euclidean");
    cmd->add_option("--samples", o.samples, "curve sample count");
    cmd->add_option("--grid", o.grid, "volume grid n1,n2,n3");
    cmd->add_option("--grid-radius", o.grid_radius, "ball truncation radius (h3/r3)");
    cmd->add_option("--eps", o.eps, "ribbon width");
    cmd->add_option("--r-cut", o.r_cut, "singular exclusion radius");
    cmd->add_option("--threads", o.threads, "worker threads (default: all)");
    cmd->add_option("--out", o.out, "json|csv");
    cmd->add_option("--out-file", o.out_file, "write the report here instead of stdout");
}

int run(int argc, char** argv) {
    CLI::App app{"Gauss-type linking integrals and steady-state electrodynamics on R3/S3/H3"};
    app.require_subcommand(1);

    CommonOpts o;
    std::string curve_ref, curve2_ref, framing_ref = "parallel_corrected";
    std::string field_ref = "registry:left_invariant", charge_ref = "x0";
    std::string route = "bs_pairing", kernel_name = "s3_shift", op_name = "link";
    std::string resolutions = "64,128,256";
    int probes = 5, count = 100;
    double volume = 0.0, radius = 0.0;

    auto* link = app.add_subcommand("link", "linking number of two disjoint closed curves");
    add_common(link, o);
    link->add_option("--curve", curve_ref)->required();
    link->add_option("--curve2", curve2_ref);

    auto* wr = app.add_subcommand("writhe", "writhing number of a simple closed curve");
    add_common(wr, o);
    wr->add_option("--curve", curve_ref)->required();

    auto* tw = app.add_subcommand("twist", "total twist of a framing");
    add_common(tw, o);
    tw->add_option("--curve", curve_ref)->required();
    tw->add_option("--framing", framing_ref);

    auto* ltw = app.add_subcommand("ltw", "link vs twist + writhe for an exponentiated ribbon");
    add_common(ltw, o);
    ltw->add_option("--curve", curve_ref)->required();
    ltw->add_option("--framing", framing_ref);

    auto* bs = app.add_subcommand("bs", "magnetic field of a current field");
    add_common(bs, o);
    bs->add_option("--field", field_ref);
    bs->add_option("--probes", probes);

    auto* green = app.add_subcommand("green", "Green's operator (inverse vector Laplacian, s3)");
    add_common(green, o);
    green->add_option("--field", field_ref);
    green->add_option("--probes", probes);

    auto* hel = app.add_subcommand("helicity", "helicity of a vector field");
    add_common(hel, o);
    hel->add_option("--field", field_ref);
    hel->add_option("--route", route, "double_integral|bs_pairing");

    auto* mx = app.add_subcommand("maxwell-check", "steady-state field equation residuals");
    add_common(mx, o);
    mx->add_option("--field", field_ref, "current J");
    mx->add_option("--charge", charge_ref, "charge density name");
    mx->add_option("--probes", probes);

    auto* kl = app.add_subcommand("keylemma", "pointwise curl/grad identity residuals");
    add_common(kl, o);
    kl->add_option("--kernel", kernel_name, "s3_shift|s3_cos|h3_shift|h3_gauss");
    kl->add_option("--count", count);

    auto* bd = app.add_subcommand("bounds", "operator-norm bound N(R) and 1/N(R)");
    add_common(bd, o);
    bd->add_option("--volume", volume, "domain volume (inverted to R)");
    bd->add_option("--radius", radius, "ball radius");

    auto* sw = app.add_subcommand("sweep", "resolution sweep, CSV output");
    add_common(sw, o);
    sw->add_option("--op", op_name, "link|writhe|helicity");
    sw->add_option("--curve", curve_ref);
    sw->add_option("--curve2", curve2_ref);
    sw->add_option("--field", field_ref);
    sw->add_option("--resolutions", resolutions, "comma-separated");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    if (o.threads > 0) set_worker_count(o.threads);
    const auto t0 = Clock::now();
    const SpaceTag tag = space_of(o.space);
    const Format fmt = format_of(o.format, tag);

    Report rep;
    rep.resolution = std::to_string(o.samples);

    if (link->parsed()) {
        rep.command = "link";
        rep.inputs = {{"curve", curve_ref}, {"curve2", curve2_ref}, {"format", to_string(fmt)}};
        ClosedCurve k1 = load_curve(curve_ref, o.samples, 0).curve;
        ClosedCurve k2 = curve2_ref.empty() ? load_curve(curve_ref, o.samples, 1).curve
                                            : load_curve(curve2_ref, o.samples, 0).curve;
        const LinkResult r = linking_number(k1, k2, fmt, o.samples);
        rep.values.push_back({"linking_number", r.total});
        if (r.first_integral) rep.values.push_back({"first_integral", *r.first_integral});
        if (r.second_integral) rep.values.push_back({"second_integral", *r.second_integral});
        rep.integer_gap = r.integer_gap;
        rep.error_estimate = r.error_estimate;
    } else if (wr->parsed()) {
        rep.command = "writhe";
        rep.inputs = {{"curve", curve_ref}, {"format", to_string(fmt)}};
        const WritheResult r = writhe(load_curve(curve_ref, o.samples).curve, fmt, o.samples);
        rep.values.push_back({"writhe", r.value});
        rep.error_estimate = r.error_estimate;
    } else if (tw->parsed()) {
        rep.command = "twist";
        rep.inputs = {{"curve", curve_ref}, {"framing", framing_ref}, {"format", to_string(fmt)}};
        const LoadedCurve lc = load_curve(curve_ref, o.samples);
        const Framing f = lc.framing ? *lc.framing : parse_framing(lc.curve, framing_ref);
        const TwistFlavor flavor =
            fmt == Format::left_translation ? TwistFlavor::left : TwistFlavor::parallel;
        rep.values.push_back({"twist", twist(f, flavor)});
        if (f.holonomy_angle) rep.values.push_back({"holonomy_angle", *f.holonomy_angle});
    } else if (ltw->parsed()) {
        rep.command = "ltw";
        rep.inputs = {{"curve", curve_ref},
                      {"framing", framing_ref},
                      {"format", to_string(fmt)},
                      {"eps", std::to_string(o.eps)}};
        const LoadedCurve lc = load_curve(curve_ref, o.samples);
        const Framing f = lc.framing ? *lc.framing : parse_framing(lc.curve, framing_ref);
        const LtwReport r = ltw_check(f, o.eps, fmt, o.samples);
        rep.values = {{"lk", r.lk}, {"tw", r.tw}, {"wr", r.wr}, {"residual", r.residual}};
        rep.integer_gap = r.integer_gap;
    } else if (bs->parsed() || green->parsed()) {
        const bool is_bs = bs->parsed();
        rep.command = is_bs ? "bs" : "green";
        rep.inputs = {{"field", field_ref}, {"format", to_string(fmt)}};
        const FieldSpec V = parse_field(field_ref, tag);
        const VolumeGrid grid = make_grid(o, tag);
        rep.resolution = std::to_string(grid.dims[0]) + "x" + std::to_string(grid.dims[1]) + "x" +
                         std::to_string(grid.dims[2]);
        const auto pts = probe_points(tag, probes, grid.radius > 0 ? grid.radius - 0.5 : 1.0);
        for (int k = 0; k < static_cast<int>(pts.size()); ++k) {
            const Vec4 v = is_bs ? biot_savart(V, pts[k], fmt, grid, o.r_cut).comp
                                 : greens_operator(V, pts[k], grid, o.r_cut).comp;
            const std::string base = "probe" + std::to_string(k);
            rep.values.push_back({base + "_norm", metric_norm(tag, v)});
            for (int d = 0; d < ambient_dim(tag); ++d)
                rep.values.push_back({base + "_c" + std::to_string(d), v[d]});
        }
    } else if (hel->parsed()) {
        rep.command = "helicity";
        rep.inputs = {{"field", field_ref}, {"format", to_string(fmt)}, {"route", route}};
        const FieldSpec V = parse_field(field_ref, tag);
        const VolumeGrid grid = make_grid(o, tag);
        rep.resolution = std::to_string(grid.dims[0]) + "x" + std::to_string(grid.dims[1]) + "x" +
                         std::to_string(grid.dims[2]);
        const HelicityRoute rt = route == "double_integral" ? HelicityRoute::double_integral
                                                            : HelicityRoute::bs_pairing;
        rep.values.push_back({"helicity", helicity(V, fmt, grid, rt, o.r_cut)});
    } else if (mx->parsed()) {
        rep.command = "maxwell-check";
        rep.inputs = {{"field", field_ref}, {"charge", charge_ref}};
        const FieldSpec J = parse_field(field_ref, tag);
        const ChargeSpec rho = ChargeSpec::registry(tag, charge_ref);
        const VolumeGrid grid = make_grid(o, tag);
        const auto pts = probe_points(tag, probes, grid.radius > 0 ? grid.radius - 0.5 : 1.0);
        MaxwellReport worst;
        for (const Point& y : pts) {
            const MaxwellReport r = maxwell_residuals(J, rho, y, grid, o.r_cut);
            worst.div_e_minus_rho = std::max(worst.div_e_minus_rho, std::abs(r.div_e_minus_rho));
            worst.curl_e = std::max(worst.curl_e, r.curl_e);
            worst.div_b = std::max(worst.div_b, std::abs(r.div_b));
            worst.ampere = std::max(worst.ampere, r.ampere);
        }
        rep.values = {{"max_div_e_minus_rho", worst.div_e_minus_rho},
                      {"max_curl_e", worst.curl_e},
                      {"max_div_b", worst.div_b},
                      {"max_ampere_residual", worst.ampere}};
    } else if (kl->parsed()) {
        rep.command = "keylemma";
        rep.inputs = {{"kernel", kernel_name}};
        KernelId id;
        if (kernel_name == "s3_shift") id = KernelId::s3_shift;
        else if (kernel_name == "s3_cos") id = KernelId::s3_cos;
        else if (kernel_name == "h3_shift") id = KernelId::h3_shift;
        else if (kernel_name == "h3_gauss") id = KernelId::h3_gauss;
        else throw InvalidInput("keylemma kernel must be s3_shift|s3_cos|h3_shift|h3_gauss");
        const SpaceTag ktag = kernel_space(id);
        std::mt19937_64 rng(5551212ULL);
        std::normal_distribution<double> g;
        auto draw_point = [&] {
            if (ktag == SpaceTag::S3) {
                Vec4 v{g(rng), g(rng), g(rng), g(rng)};
                return Point::project(SpaceTag::S3, v);
            }
            const Point c0 = canonical_pole(SpaceTag::H3);
            Vec4 raw{0, g(rng), g(rng), g(rng)};
            Vec4 t = project_tangent(SpaceTag::H3, c0.coords(), raw);
            const double nn = metric_norm(SpaceTag::H3, t);
            std::uniform_real_distribution<double> ur(0.1, 1.5);
            return exp_map(c0, {c0, t * (1.0 / nn)}, ur(rng));
        };
        double worst = 0.0;
        int done = 0;
        while (done < count) {
            const Point x = draw_point(), y = draw_point();
            const double a = distance(x, y);
            if (a < 0.25 || (ktag == SpaceTag::S3 && a > kPi - 0.25)) continue;
            Vec4 raw{g(rng), g(rng), g(rng), g(rng)};
            if (ktag == SpaceTag::H3) raw[0] = 0.0;
            Vec4 t = project_tangent(ktag, x.coords(), raw);
            const double nn = metric_norm(ktag, t);
            if (nn < 1e-3) continue;
            worst = std::max(worst, key_lemma_residual(x, y, {x, t * (1.0 / nn)}, id));
            ++done;
        }
        rep.values = {{"max_residual", worst}, {"configurations", static_cast<double>(count)}};
    } else if (bd->parsed()) {
        rep.command = "bounds";
        rep.inputs = {{"space", o.space}};
        double R = radius;
        if (R <= 0.0) {
            if (volume <= 0.0) {
                if (tag != SpaceTag::S3)
                    throw InvalidInput("bounds needs --radius or --volume");
                R = kPi;
            } else {
                R = ball_radius_for_volume(tag, volume);
            }
        }
        rep.values = {{"R", R}, {"N", bound_N(tag, R)}, {"inv_N", curl_eigen_bound(tag, R)}};
        if (volume > 0.0) rep.values.push_back({"volume", volume});
    } else if (sw->parsed()) {
        rep.command = "sweep";
        std::vector<double> res;
        std::stringstream ss(resolutions);
        std::string tok;
        while (std::getline(ss, tok, ',')) res.push_back(std::stod(tok));
        std::function<double(double)> compute;
        if (op_name == "link") {
            const std::string c1 = curve_ref, c2 = curve2_ref;
            compute = [=, &o](double r) {
                const int n = static_cast<int>(r);
                ClosedCurve k1 = load_curve(c1, n, 0).curve;
                ClosedCurve k2 =
                    c2.empty() ? load_curve(c1, n, 1).curve : load_curve(c2, n, 0).curve;
                return linking_number(k1, k2, format_of(o.format, tag), n).total;
            };
        } else if (op_name == "writhe") {
            const std::string c1 = curve_ref;
            compute = [=, &o](double r) {
                const int n = static_cast<int>(r);
                return writhe(load_curve(c1, n).curve, format_of(o.format, tag), n).value;
            };
        } else if (op_name == "helicity") {
            const FieldSpec V = parse_field(field_ref, tag);
            compute = [=, &o](double r) {
                const int n = static_cast<int>(r);
                const VolumeGrid grid =
                    VolumeGrid::make_default(tag, {n, 2 * n, 2 * n}, o.grid_radius);
                return helicity(V, format_of(o.format, tag), grid, HelicityRoute::bs_pairing,
                                o.r_cut);
            };
        } else {
            throw InvalidInput("sweep --op must be link|writhe|helicity");
        }
        const auto rows = convergence_sweep(res, compute);
        std::string body = sweep_csv(rows);
        if (o.out_file.empty())
            std::cout << body;
        else
            write_text_file(o.out_file, body);
        return 0;
    }

    emit(std::move(rep), o, t0);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const CLI::ParseError&) {
        return 2;
    } catch (const ComputationRejected& e) {
        std::fprintf(stderr, "rejected: %s\n", e.what());
        return 3;
    } catch (const InvalidInput& e) {
        std::fprintf(stderr, "invalid input: %s\n", e.what());
        return 2;
    } catch (const Error& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return 4;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 4;
    }
}
