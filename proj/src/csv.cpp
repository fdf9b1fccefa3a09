// SPDX-License-Identifier: Apache-2.0
//
// iosim - link-level simulation of sensing-assisted communication through
// a vehicle-mounted intelligent omni-surface
// Copyright (C) 2026 iosim contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "iosim/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace iosim
{

std::string format_value(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return std::string(buf);
}

void write_csv_atomic(const std::string &path, const CsvTable &table)
{
    for (const auto &row : table.rows)
        if (row.size() != table.header.size())
            throw std::runtime_error("csv: row width does not match header: " + path);

    std::ostringstream body;
    for (size_t i = 0; i < table.header.size(); ++i)
        body << (i ? "," : "") << table.header[i];
    body << '\n';
    for (const auto &row : table.rows)
    {
        for (size_t i = 0; i < row.size(); ++i)
            body << (i ? "," : "") << row[i];
        body << '\n';
    }

    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw std::runtime_error("csv: cannot open for writing: " + tmp);
        out << body.str();
        out.flush();
        if (!out)
        {
            std::remove(tmp.c_str());
            throw std::runtime_error("csv: write failed: " + tmp);
        }
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
    {
        std::remove(tmp.c_str());
        throw std::runtime_error("csv: rename failed: " + path);
    }
}

} // namespace iosim
