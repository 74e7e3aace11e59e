// Copyright 2026 The qeraser Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "config.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include "api.hpp"
#include "json.hpp"

namespace qeraser::cli {

namespace {

using nlohmann::json;

void reject_unknown(const json &obj, const std::string &prefix, std::initializer_list<const char *> known) {
    for (const auto &[key, value] : obj.items()) {
        bool found = false;
        for (const char *k : known) {
            found = found || key == k;
        }
        if (!found) {
            throw ConfigError(prefix + key, "unknown field");
        }
    }
}

const json &section(const json &root, const char *name) {
    if (!root.contains(name)) {
        throw ConfigError(name, "missing section");
    }
    const json &s = root.at(name);
    if (!s.is_object()) {
        throw ConfigError(name, "must be an object");
    }
    return s;
}

double number(const json &obj, const std::string &prefix, const char *key) {
    std::string field = prefix + key;
    if (!obj.contains(key)) {
        throw ConfigError(field, "missing");
    }
    const json &v = obj.at(key);
    if (!v.is_number()) {
        throw ConfigError(field, "must be a number");
    }
    double d = v.get<double>();
    if (!std::isfinite(d)) {
        throw ConfigError(field, "must be finite");
    }
    return d;
}

std::size_t count(const json &obj, const std::string &prefix, const char *key) {
    std::string field = prefix + key;
    if (!obj.contains(key)) {
        throw ConfigError(field, "missing");
    }
    const json &v = obj.at(key);
    if (!v.is_number_integer() || v.get<long long>() < 0) {
        throw ConfigError(field, "must be a non-negative integer");
    }
    return static_cast<std::size_t>(v.get<long long>());
}

// Either a plain number (real) or a [re, im] pair.
qe_complex complex_value(const json &v, const std::string &field) {
    if (v.is_number()) {
        return {v.get<double>(), 0.0};
    }
    if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
        return {v[0].get<double>(), v[1].get<double>()};
    }
    throw ConfigError(field, "must be a number or a [re, im] pair");
}

SlitConfig parse_slits(const json &root) {
    const json &s = section(root, "slits");
    reject_unknown(s, "slits.", {"n", "d", "epsilon", "amplitudes"});
    SlitConfig out;
    out.n = count(s, "slits.", "n");
    out.d = number(s, "slits.", "d");
    out.epsilon = number(s, "slits.", "epsilon");
    if (s.contains("amplitudes") && !s.at("amplitudes").is_null()) {
        const json &amps = s.at("amplitudes");
        if (!amps.is_array()) {
            throw ConfigError("slits.amplitudes", "must be an array");
        }
        std::vector<qe_complex> values;
        for (std::size_t k = 0; k < amps.size(); ++k) {
            values.push_back(complex_value(amps[k], "slits.amplitudes[" + std::to_string(k) + "]"));
        }
        out.amplitudes = std::move(values);
    }
    return out;
}

void parse_propagation(const json &root, ExperimentConfig &cfg) {
    const json &p = section(root, "propagation");
    reject_unknown(p, "propagation.", {"a", "lambda", "D", "t", "m", "hbar"});
    int forms = int(p.contains("a")) + int(p.contains("lambda") || p.contains("D")) +
                int(p.contains("t") || p.contains("m") || p.contains("hbar"));
    if (forms != 1) {
        throw ConfigError("propagation", "give exactly one of {a}, {lambda, D} or {t, m, hbar}");
    }
    if (p.contains("a")) {
        cfg.a = number(p, "propagation.", "a");
        cfg.propagation_source = "a";
    } else if (p.contains("lambda") || p.contains("D")) {
        double lambda = number(p, "propagation.", "lambda");
        double distance = number(p, "propagation.", "D");
        if (qe_evolution_from_geometry(lambda, distance, &cfg.a) != QE_OK) {
            throw ConfigError(lambda > 0.0 ? "propagation.D" : "propagation.lambda", qe_last_error());
        }
        cfg.propagation_source = "lambda,D";
    } else {
        double t = number(p, "propagation.", "t");
        double m = p.contains("m") ? number(p, "propagation.", "m") : 1.0;
        double hbar = p.contains("hbar") ? number(p, "propagation.", "hbar") : 1.0;
        if (qe_evolution_from_time(t, m, hbar, &cfg.a) != QE_OK) {
            std::string field = m <= 0.0 ? "propagation.m" : hbar <= 0.0 ? "propagation.hbar" : "propagation.t";
            throw ConfigError(field, qe_last_error());
        }
        cfg.propagation_source = "t,m,hbar";
    }
}

DetectorConfig parse_detector(const json &root) {
    DetectorConfig out;
    if (!root.contains("detector")) {
        return out;
    }
    const json &d = section(root, "detector");
    reject_unknown(d, "detector.", {"enabled", "basis", "matrix"});
    if (d.contains("enabled")) {
        if (!d.at("enabled").is_boolean()) {
            throw ConfigError("detector.enabled", "must be true or false");
        }
        out.enabled = d.at("enabled").get<bool>();
    } else {
        out.enabled = true;
    }
    if (d.contains("basis")) {
        if (!d.at("basis").is_string()) {
            throw ConfigError("detector.basis", "must be a string");
        }
        out.basis = d.at("basis").get<std::string>();
    }
    if (d.contains("matrix")) {
        const json &m = d.at("matrix");
        if (!m.is_array()) {
            throw ConfigError("detector.matrix", "must be an array of rows");
        }
        for (std::size_t i = 0; i < m.size(); ++i) {
            std::string row_field = "detector.matrix[" + std::to_string(i) + "]";
            if (!m[i].is_array() || m[i].size() != m.size()) {
                throw ConfigError(row_field, "rows must be arrays of the same length as the matrix");
            }
            for (std::size_t k = 0; k < m[i].size(); ++k) {
                out.matrix.push_back(complex_value(m[i][k], row_field + "[" + std::to_string(k) + "]"));
            }
        }
    }
    return out;
}

qe_grid parse_grid(const json &root) {
    const json &g = section(root, "grid");
    reject_unknown(g, "grid.", {"xmin", "xmax", "points"});
    return qe_grid{number(g, "grid.", "xmin"), number(g, "grid.", "xmax"), count(g, "grid.", "points")};
}

OutputConfig parse_output(const json &root) {
    OutputConfig out;
    if (!root.contains("output")) {
        return out;
    }
    const json &o = section(root, "output");
    reject_unknown(o, "output.", {"format", "path", "normalize"});
    if (o.contains("format")) {
        if (!o.at("format").is_string()) {
            throw ConfigError("output.format", "must be a string");
        }
        out.format = o.at("format").get<std::string>();
    }
    if (o.contains("path")) {
        if (!o.at("path").is_string()) {
            throw ConfigError("output.path", "must be a string");
        }
        out.path = o.at("path").get<std::string>();
    }
    if (o.contains("normalize")) {
        if (!o.at("normalize").is_boolean()) {
            throw ConfigError("output.normalize", "must be true or false");
        }
        out.normalize = o.at("normalize").get<bool>();
    }
    return out;
}

}  // namespace

void validate(const ExperimentConfig &cfg) {
    if (cfg.slits.n < 2) {
        throw ConfigError("slits.n", "need at least 2 slits");
    }
    if (!(cfg.slits.d > 0.0)) {
        throw ConfigError("slits.d", "slit spacing must be positive");
    }
    if (!(cfg.slits.epsilon > 0.0)) {
        throw ConfigError("slits.epsilon", "width parameter must be positive");
    }
    if (cfg.slits.amplitudes) {
        const auto &amps = *cfg.slits.amplitudes;
        if (amps.size() != cfg.slits.n) {
            throw ConfigError("slits.amplitudes", "need exactly n entries");
        }
        bool any = false;
        for (const auto &z : amps) {
            any = any || z.re != 0.0 || z.im != 0.0;
        }
        if (!any) {
            throw ConfigError("slits.amplitudes", "must not all be zero");
        }
    }
    if (!(cfg.a >= 0.0) || !std::isfinite(cfg.a)) {
        throw ConfigError("propagation.a", "must be finite and non-negative");
    }
    const auto &basis = cfg.detector.basis;
    if (basis != "computational" && basis != "sx3" && basis != "eraser" && basis != "custom") {
        throw ConfigError("detector.basis", "must be one of computational, sx3, eraser, custom");
    }
    if (basis == "sx3" && cfg.slits.n != 3) {
        throw ConfigError("detector.basis", "sx3 needs exactly 3 slits");
    }
    if (basis == "custom" && cfg.detector.matrix.size() != cfg.slits.n * cfg.slits.n) {
        throw ConfigError("detector.matrix", "custom basis needs an n x n matrix");
    }
    if (!(cfg.grid.xmin < cfg.grid.xmax)) {
        throw ConfigError("grid.xmax", "must exceed grid.xmin");
    }
    if (cfg.grid.points < 2) {
        throw ConfigError("grid.points", "need at least 2 points");
    }
    if (cfg.output.format != "csv" && cfg.output.format != "json") {
        throw ConfigError("output.format", "must be csv or json");
    }
}

ExperimentConfig parse_config(const std::string &text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error &e) {
        throw ConfigError("<document>", std::string("invalid JSON: ") + e.what());
    }
    if (!root.is_object()) {
        throw ConfigError("<document>", "top level must be an object");
    }
    reject_unknown(root, "", {"slits", "propagation", "detector", "grid", "output"});
    ExperimentConfig cfg;
    cfg.slits = parse_slits(root);
    parse_propagation(root, cfg);
    cfg.detector = parse_detector(root);
    cfg.grid = parse_grid(root);
    cfg.output = parse_output(root);
    validate(cfg);
    return cfg;
}

ExperimentConfig load_config(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("<file>", "cannot open " + path.string());
    }
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str());
}

}  // namespace qeraser::cli
