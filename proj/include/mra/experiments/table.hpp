// mra: massive random access simulator
// Copyright (C) 2026 mra contributors
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

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace mra {

using Cell = std::variant<std::int64_t, double, std::string>;

// Rectangular result with '#'-comment metadata, emitted as CSV.
class ResultTable {
public:
    ResultTable() = default;
    explicit ResultTable(std::vector<std::string> columns);

    // Throws ShapeError when the row width differs from the column count.
    void add_row(std::vector<Cell> row);
    // Appends, or replaces the value of an existing key.
    void set_meta(const std::string& key, std::string value);
    [[nodiscard]] const std::string* meta(const std::string& key) const;

    [[nodiscard]] const std::vector<std::string>& columns() const noexcept { return columns_; }
    [[nodiscard]] const std::vector<std::vector<Cell>>& rows() const noexcept { return rows_; }
    [[nodiscard]] const std::vector<std::pair<std::string, std::string>>& metadata() const noexcept { return meta_; }
    [[nodiscard]] std::size_t column(const std::string& name) const;  // throws ShapeError when absent
    [[nodiscard]] double number(std::size_t row, const std::string& name) const;

    // Stable sort of the rows by one numeric column.
    void sort_by(const std::string& name);

    friend bool operator==(const ResultTable&, const ResultTable&) = default;

private:
    std::vector<std::string> columns_;
    std::vector<std::vector<Cell>> rows_;
    std::vector<std::pair<std::string, std::string>> meta_;
};

// Shortest round-trip decimal form, always containing '.', 'e', "inf" or "nan"
// so that it reads back as a floating-point cell.
std::string format_double(double value);

// Metadata lines "# key: value", then the header, then rows.  Strings that
// contain separators, quotes or newlines are quoted.
void write_csv(const ResultTable& table, std::ostream& out);
// Throws std::system_error carrying the OS message when the file cannot be written.
void emit_csv(const ResultTable& table, const std::string& path);

ResultTable parse_csv(std::istream& in);
ResultTable read_csv(const std::string& path);

}  // namespace mra
