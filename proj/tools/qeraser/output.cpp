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


#include "output.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <system_error>

#include "json.hpp"

namespace qeraser::cli {

std::string format_number(double v) {
    if (std::isnan(v)) {
        return "nan";
    }
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

void write_csv(std::ostream &out, const Table &table) {
    for (std::size_t c = 0; c < table.names.size(); ++c) {
        out << (c ? "," : "") << table.names[c];
    }
    out << '\n';
    for (std::size_t r = 0; r < table.rows(); ++r) {
        for (std::size_t c = 0; c < table.columns.size(); ++c) {
            out << (c ? "," : "") << format_number(table.columns[c][r]);
        }
        out << '\n';
    }
}

void write_json(std::ostream &out, const Table &table,
                const std::vector<std::pair<std::string, std::string>> &text_parameters,
                const std::vector<std::pair<std::string, double>> &parameters) {
    nlohmann::ordered_json doc;
    nlohmann::ordered_json params = nlohmann::ordered_json::object();
    for (const auto &[k, v] : text_parameters) {
        params[k] = v;
    }
    for (const auto &[k, v] : parameters) {
        params[k] = v;
    }
    doc["parameters"] = params;
    nlohmann::ordered_json cols = nlohmann::ordered_json::object();
    for (std::size_t c = 0; c < table.names.size(); ++c) {
        cols[table.names[c]] = table.columns[c];
    }
    doc["columns"] = cols;
    out << doc.dump(1) << '\n';
}

void write_file(const std::filesystem::path &path, const std::string &contents) {
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path());
    }
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) {
            throw std::runtime_error("cannot write " + tmp.string());
        }
        f << contents;
        if (!f) {
            throw std::runtime_error("write failed for " + tmp.string());
        }
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace qeraser::cli
