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

#ifndef IOSIM_CSV_HPP
#define IOSIM_CSV_HPP

#include <string>
#include <vector>

namespace iosim
{

struct CsvTable
{
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

// Numeric cell format: 12 significant digits, so a round-trip through the
// emitted file recovers the value to full printed precision.
std::string format_value(double v);

/*!
 * Write the table to `path` atomically: the bytes land in a sibling temp
 * file first and are renamed over the target, so readers never observe a
 * half-written CSV. Throws std::runtime_error on any IO failure (the temp
 * file is removed) and on rows whose width disagrees with the header.
 */
void write_csv_atomic(const std::string &path, const CsvTable &table);

} // namespace iosim

#endif
