#include "linkint/io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace linkint {

namespace {

using ordered_json = nlohmann::ordered_json;

SpaceTag parse_space(const std::string& s) {
    if (s == "r3") return SpaceTag::R3;
    if (s == "s3") return SpaceTag::S3;
    if (s == "h3") return SpaceTag::H3;
    throw InvalidInput("unknown space: " + s);
}

}  // namespace

std::pair<std::string, std::map<std::string, double>> parse_ref(const std::string& ref,
                                                                const std::string& prefix) {
    std::string body = ref.substr(prefix.size());
    std::map<std::string, double> params;
    const auto qpos = body.find('?');
    if (qpos != std::string::npos) {
        std::string query = body.substr(qpos + 1);
        body = body.substr(0, qpos);
        std::stringstream ss(query);
        std::string kv;
        while (std::getline(ss, kv, '&')) {
            const auto eq = kv.find('=');
            if (eq == std::string::npos) throw InvalidInput("malformed parameter: " + kv);
            try {
                params[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
            } catch (const std::exception&) {
                throw InvalidInput("non-numeric parameter value in: " + kv);
            }
        }
    }
    if (body.empty()) throw InvalidInput("empty reference name");
    return {body, params};
}

LoadedCurve load_curve(const std::string& path_or_ref, int n_samples, int which) {
    if (path_or_ref.rfind("canonical:", 0) == 0) {
        const auto [name, params] = parse_ref(path_or_ref, "canonical:");
        auto curves = canonical_curve(name, params, n_samples);
        if (which >= static_cast<int>(curves.size()))
            throw InvalidInput("canonical reference has no component " + std::to_string(which));
        return {curves[which], std::nullopt, name};
    }
    LoadedCurve lc = read_curve_file(path_or_ref);
    if (n_samples > 0 && n_samples != lc.curve.size()) {
        lc.curve = lc.curve.resampled(n_samples);
        lc.framing.reset();  // framings are tied to the stored sampling
    }
    return lc;
}

void write_curve_file(const std::string& path, const ClosedCurve& curve, const std::string& name,
                      const Framing* framing) {
    ordered_json j;
    j["space"] = to_string(curve.tag());
    j["name"] = name;
    const int dim = ambient_dim(curve.tag());
    ordered_json pts = ordered_json::array();
    for (int i = 0; i < curve.size(); ++i) {
        ordered_json row = ordered_json::array();
        for (int d = 0; d < dim; ++d) row.push_back(curve.point_coords(i)[d]);
        pts.push_back(std::move(row));
    }
    j["points"] = std::move(pts);
    if (framing != nullptr) {
        ordered_json fr = ordered_json::array();
        for (int i = 0; i < curve.size(); ++i) {
            ordered_json row = ordered_json::array();
            for (int d = 0; d < dim; ++d) row.push_back(framing->normals[i][d]);
            fr.push_back(std::move(row));
        }
        j["framing"] = std::move(fr);
    }
    write_text_file(path, j.dump(2) + "\n");
}

LoadedCurve read_curve_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open curve file: " + path);
    ordered_json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw InvalidInput(std::string("malformed curve file: ") + e.what());
    }
    if (!j.contains("space") || !j.contains("points"))
        throw InvalidInput("curve file must contain 'space' and 'points'");
    const SpaceTag tag = parse_space(j["space"].get<std::string>());
    const int dim = ambient_dim(tag);

    std::vector<Vec4> pts;
    for (const auto& row : j["points"]) {
        if (!row.is_array() || static_cast<int>(row.size()) != dim)
            throw InvalidInput("point arity does not match the space");
        Vec4 p;
        for (int d = 0; d < dim; ++d) p[d] = row[d].get<double>();
        pts.push_back(p);
    }
    LoadedCurve lc;
    lc.curve = ClosedCurve::from_points(tag, std::move(pts), 1e-8);
    lc.name = j.value("name", std::string("curve"));

    if (j.contains("framing")) {
        const auto& fr = j["framing"];
        if (static_cast<int>(fr.size()) != lc.curve.size())
            throw InvalidInput("framing length does not match the point count");
        Framing f;
        f.curve = lc.curve;
        f.method = FramingMethod::explicit_registry;
        f.registry_name = "file";
        f.normals.resize(lc.curve.size());
        for (int i = 0; i < lc.curve.size(); ++i) {
            if (!fr[i].is_array() || static_cast<int>(fr[i].size()) != dim)
                throw InvalidInput("framing arity does not match the space");
            Vec4 v;
            for (int d = 0; d < dim; ++d) v[d] = fr[i][d].get<double>();
            // Re-orthonormalize against the resampled tangent.
            const Vec4 t = lc.curve.velocity_coords(i) *
                           (1.0 / metric_norm(tag, lc.curve.velocity_coords(i)));
            v = project_tangent(tag, lc.curve.point_coords(i), v);
            v = v - metric_dot(tag, v, t) * t;
            const double nn = metric_norm(tag, v);
            if (nn < 1e-6) throw InvalidInput("framing vector parallel to the curve tangent");
            f.normals[i] = v * (1.0 / nn);
        }
        lc.framing = std::move(f);
    }
    return lc;
}

std::string Report::to_json() const {
    ordered_json j;
    j["command"] = command;
    ordered_json in = ordered_json::object();
    for (const auto& [k, v] : inputs) in[k] = v;
    j["inputs"] = std::move(in);
    j["resolution"] = resolution;
    ordered_json vals = ordered_json::object();
    for (const auto& [k, v] : values) vals[k] = v;
    j["values"] = std::move(vals);
    if (integer_gap) j["integer_gap"] = *integer_gap;
    if (error_estimate) j["error_estimate"] = *error_estimate;
    j["runtime_seconds"] = runtime_seconds;
    return j.dump(2) + "\n";
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
    std::ostringstream out;
    out << "resolution,value,delta\n";
    out.precision(17);
    for (const auto& r : rows) out << r.resolution << "," << r.value << "," << r.delta << "\n";
    return out.str();
}

void write_text_file(const std::string& path, const std::string& body) {
    std::ofstream out(path);
    if (!out) throw InvalidInput("cannot open output file: " + path);
    out << body;
}

}  // namespace linkint
