// SPDX-License-Identifier: Apache-2.0
//
// rfda - random frequency diverse array modelling and processing library
// Copyright (C) 2026 The rfda authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef RFDA_TABLE_IO_HPP
#define RFDA_TABLE_IO_HPP

#include <cstddef>
#include <filesystem>
#include <initializer_list>
#include <string>
#include <vector>

namespace rfda
{
    // Named, column-oriented numeric dataset.
    struct Table
    {
        std::string name;
        std::vector<std::string> columns;
        std::vector<std::vector<double>> data; // data[c][r]

        Table() = default;
        Table(std::string name, std::vector<std::string> columns);

        std::size_t n_rows() const { return data.empty() ? 0 : data.front().size(); }
        std::size_t n_columns() const { return columns.size(); }

        void add_row(std::initializer_list<double> row);
        void add_row(const std::vector<double> &row);

        const std::vector<double> &column(const std::string &column_name) const;

        // NaN cells compare equal to NaN cells.
        bool operator==(const Table &other) const;
    };

    enum class TableFormat
    {
        csv,
        json,
    };

    // Floats are written with 17 significant digits.
    std::string format_double(double v);

    std::string to_csv(const Table &table);
    std::string to_json(const Table &table);

    Table parse_csv(const std::string &text, const std::string &name = {});
    Table parse_json_table(const std::string &text);

    /// Writes <dir>/<name>.csv or <dir>/<name>.json and returns the path.
    std::filesystem::path write_table(const Table &table, const std::filesystem::path &dir, TableFormat format);
    Table read_table(const std::filesystem::path &path);

    void write_text_file(const std::filesystem::path &path, const std::string &text);
    std::string read_text_file(const std::filesystem::path &path);
}

#endif
