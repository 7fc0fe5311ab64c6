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

#include "rfda/table_io.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace rfda
{
    namespace
    {
        double parse_double(const std::string &s)
        {
            if (s == "null")
                return std::numeric_limits<double>::quiet_NaN();
            char *end = nullptr;
            errno = 0;
            const double v = std::strtod(s.c_str(), &end);
            if (end == s.c_str() || *end != '\0')
                throw std::invalid_argument("table: malformed number '" + s + "'");
            return v;
        }

        std::vector<std::string> split_line(const std::string &line)
        {
            std::vector<std::string> out;
            std::string field;
            std::istringstream in(line);
            while (std::getline(in, field, ','))
                out.push_back(field);
            if (!line.empty() && line.back() == ',')
                out.emplace_back();
            return out;
        }

        std::string json_number(double v)
        {
            return std::isfinite(v) ? format_double(v) : std::string("null");
        }
    }

    Table::Table(std::string name_, std::vector<std::string> columns_)
        : name(std::move(name_)), columns(std::move(columns_)), data(columns.size())
    {
    }

    void Table::add_row(std::initializer_list<double> row) { add_row(std::vector<double>(row)); }

    void Table::add_row(const std::vector<double> &row)
    {
        if (row.size() != columns.size())
            throw std::invalid_argument("Table::add_row: " + name + " expects " + std::to_string(columns.size()) +
                                        " values, got " + std::to_string(row.size()));
        for (std::size_t c = 0; c < row.size(); ++c)
            data[c].push_back(row[c]);
    }

    bool Table::operator==(const Table &other) const
    {
        if (name != other.name || columns != other.columns || data.size() != other.data.size())
            return false;
        for (std::size_t c = 0; c < data.size(); ++c)
            if (!std::equal(data[c].begin(), data[c].end(), other.data[c].begin(), other.data[c].end(),
                            [](double a, double b) { return a == b || (std::isnan(a) && std::isnan(b)); }))
                return false;
        return true;
    }

    const std::vector<double> &Table::column(const std::string &column_name) const
    {
        for (std::size_t c = 0; c < columns.size(); ++c)
            if (columns[c] == column_name)
                return data[c];
        throw std::out_of_range("Table::column: " + name + " has no column '" + column_name + "'");
    }

    std::string format_double(double v)
    {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", v);
        return buf;
    }

    std::string to_csv(const Table &table)
    {
        std::string out;
        for (std::size_t c = 0; c < table.columns.size(); ++c)
            out += (c ? "," : "") + table.columns[c];
        out += '\n';
        for (std::size_t r = 0; r < table.n_rows(); ++r)
        {
            for (std::size_t c = 0; c < table.columns.size(); ++c)
                out += (c ? "," : "") + format_double(table.data[c][r]);
            out += '\n';
        }
        return out;
    }

    std::string to_json(const Table &table)
    {
        std::string out = "{\n  \"name\": " + nlohmann::json(table.name).dump() + ",\n  \"columns\": [";
        for (std::size_t c = 0; c < table.columns.size(); ++c)
            out += (c ? ", " : "") + nlohmann::json(table.columns[c]).dump();
        out += "],\n  \"rows\": [";
        for (std::size_t r = 0; r < table.n_rows(); ++r)
        {
            out += r ? ",\n    [" : "\n    [";
            for (std::size_t c = 0; c < table.columns.size(); ++c)
                out += (c ? ", " : "") + json_number(table.data[c][r]);
            out += "]";
        }
        out += table.n_rows() ? "\n  ]\n}\n" : "]\n}\n";
        return out;
    }

    Table parse_csv(const std::string &text, const std::string &name)
    {
        std::istringstream in(text);
        std::string line;
        if (!std::getline(in, line))
            throw std::invalid_argument("parse_csv: missing header row");
        Table t(name, split_line(line));
        while (std::getline(in, line))
        {
            if (line.empty())
                continue;
            const std::vector<std::string> fields = split_line(line);
            std::vector<double> row;
            for (const std::string &f : fields)
                row.push_back(parse_double(f));
            t.add_row(row);
        }
        return t;
    }

    Table parse_json_table(const std::string &text)
    {
        const nlohmann::json j = nlohmann::json::parse(text);
        Table t(j.at("name").get<std::string>(), j.at("columns").get<std::vector<std::string>>());
        for (const auto &row : j.at("rows"))
        {
            std::vector<double> values;
            for (const auto &v : row)
                values.push_back(v.is_null() ? std::numeric_limits<double>::quiet_NaN() : v.get<double>());
            t.add_row(values);
        }
        return t;
    }

    std::filesystem::path write_table(const Table &table, const std::filesystem::path &dir, TableFormat format)
    {
        const bool csv = format == TableFormat::csv;
        const std::filesystem::path path = dir / (table.name + (csv ? ".csv" : ".json"));
        write_text_file(path, csv ? to_csv(table) : to_json(table));
        return path;
    }

    Table read_table(const std::filesystem::path &path)
    {
        const std::string text = read_text_file(path);
        if (path.extension() == ".json")
            return parse_json_table(text);
        return parse_csv(text, path.stem().string());
    }

    void write_text_file(const std::filesystem::path &path, const std::string &text)
    {
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out)
            throw std::runtime_error("cannot open " + path.string() + " for writing: " + std::strerror(errno));
        out.write(text.data(), static_cast<std::streamsize>(text.size()));
        out.close();
        if (!out)
            throw std::runtime_error("write failed for " + path.string());
    }

    std::string read_text_file(const std::filesystem::path &path)
    {
        std::ifstream in(path, std::ios::binary);
        if (!in)
            throw std::runtime_error("cannot open " + path.string() + " for reading: " + std::strerror(errno));
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }
}
