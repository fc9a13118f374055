/*
   Copyright 2026 The epspin Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

// Plot-ready CSV tables and the run manifest. Numbers are
// written with 17 significant digits in scientific notation so that every
// double round-trips exactly; lines end in LF.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace epspin {

/// Version of every CSV column layout; bump when a header changes.
inline constexpr int kCsvSchemaVersion = 1;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    void add_row(std::vector<double> row);
    /// Column by name; throws std::out_of_range if absent.
    std::vector<double> column(const std::string& name) const;
};

/// "%.16e" formatting of one value.
std::string format_double(double v);

std::string to_csv(const Table& t);

std::uint64_t fnv1a64(std::string_view bytes);
std::string hex64(std::uint64_t v);

/// Writes `content` to `path` in binary mode; throws std::runtime_error.
void write_file(const std::string& path, const std::string& content);

} // namespace epspin
