#pragma once

// Curve files, canonical/registry reference parsing, and machine-readable
// reports.
//
// Curve file schema (JSON):
//   { "space": "r3"|"s3"|"h3", "name": "...",
//     "points": [[...], ...],            // arity 3 for r3, 4 otherwise
//     "framing": [[...], ...] }          // optional, same arity
//
// Reports are emitted with stable field order:
//   { command, inputs, resolution, values, integer_gap?, error_estimate?,
//     runtime_seconds }.

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "linkint/curves.hpp"
#include "linkint/quadrature.hpp"

namespace linkint {

struct LoadedCurve {
    ClosedCurve curve;
    std::optional<Framing> framing;
    std::string name;
};

// Accepts a file path or a "canonical:NAME?key=value&..." reference.  For
// canonical pair names, `which` selects the component.
LoadedCurve load_curve(const std::string& path_or_ref, int n_samples, int which = 0);

void write_curve_file(const std::string& path, const ClosedCurve& curve, const std::string& name,
                      const Framing* framing = nullptr);
LoadedCurve read_curve_file(const std::string& path);

// Parsed "name?k=v&k2=v2" reference (shared by canonical curves and field
// registry references).
std::pair<std::string, std::map<std::string, double>> parse_ref(const std::string& ref,
                                                                const std::string& prefix);

struct Report {
    std::string command;
    std::vector<std::pair<std::string, std::string>> inputs;  // ordered
    std::string resolution;
    std::vector<std::pair<std::string, double>> values;  // ordered
    std::optional<double> integer_gap;
    std::optional<double> error_estimate;
    double runtime_seconds = 0.0;

    std::string to_json() const;
};

// CSV rows for sweep output: header "resolution,value,delta".
std::string sweep_csv(const std::vector<SweepRow>& rows);

void write_text_file(const std::string& path, const std::string& body);

}  // namespace linkint
