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


#ifndef QERASER_TOOLS_OUTPUT_HPP_
#define QERASER_TOOLS_OUTPUT_HPP_

#include <filesystem>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace qeraser::cli {

/// Column-major numeric table; the first column is usually x.
struct Table {
    std::vector<std::string> names;
    std::vector<std::vector<double>> columns;

    void add(std::string name, std::vector<double> values) {
        names.push_back(std::move(name));
        columns.push_back(std::move(values));
    }
    std::size_t rows() const {
        return columns.empty() ? 0 : columns.front().size();
    }
};

/// 17 significant digits, locale-independent; nan/inf spelled out.
std::string format_number(double v);

void write_csv(std::ostream &out, const Table &table);

/// `parameters` is a list of (name, value) pairs emitted before the columns.
void write_json(std::ostream &out, const Table &table,
                const std::vector<std::pair<std::string, std::string>> &text_parameters,
                const std::vector<std::pair<std::string, double>> &parameters);

/// Writes through a temporary file and renames it into place.
void write_file(const std::filesystem::path &path, const std::string &contents);

}  // namespace qeraser::cli

#endif
