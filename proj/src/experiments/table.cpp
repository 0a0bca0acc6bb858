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

#include "mra/experiments/table.hpp"

#include <algorithm>
#include <cerrno>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <system_error>

#include "mra/core/errors.hpp"

namespace mra {

ResultTable::ResultTable(std::vector<std::string> columns) : columns_(std::move(columns)) {}

void ResultTable::add_row(std::vector<Cell> row) {
    if (row.size() != columns_.size())
        throw ShapeError("result row has " + std::to_string(row.size()) + " cells, table has " +
                         std::to_string(columns_.size()) + " columns");
    rows_.push_back(std::move(row));
}

void ResultTable::set_meta(const std::string& key, std::string value) {
    for (auto& [k, v] : meta_)
        if (k == key) {
            v = std::move(value);
            return;
        }
    meta_.emplace_back(key, std::move(value));
}

const std::string* ResultTable::meta(const std::string& key) const {
    for (const auto& [k, v] : meta_)
        if (k == key) return &v;
    return nullptr;
}

std::size_t ResultTable::column(const std::string& name) const {
    const auto it = std::find(columns_.begin(), columns_.end(), name);
    if (it == columns_.end()) throw ShapeError("no column named " + name);
    return static_cast<std::size_t>(it - columns_.begin());
}

namespace {

double as_number(const Cell& c) {
    if (const auto* i = std::get_if<std::int64_t>(&c)) return static_cast<double>(*i);
    if (const auto* d = std::get_if<double>(&c)) return *d;
    throw ShapeError("cell is not numeric: " + std::get<std::string>(c));
}

}  // namespace

double ResultTable::number(std::size_t row, const std::string& name) const { return as_number(rows_.at(row)[column(name)]); }

void ResultTable::sort_by(const std::string& name) {
    const std::size_t c = column(name);
    std::stable_sort(rows_.begin(), rows_.end(),
                     [c](const auto& a, const auto& b) { return as_number(a[c]) < as_number(b[c]); });
}

std::string format_double(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, value);
    std::string s(buf, res.ptr);
    if (s.find_first_of(".e") == std::string::npos) s += ".0";
    return s;
}

namespace {

std::string quote(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos && !s.empty()) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    out += '"';
    return out;
}

Cell parse_cell(const std::string& text, bool quoted);

std::string render(const Cell& c) {
    if (const auto* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
    if (const auto* d = std::get_if<double>(&c)) return format_double(*d);
    const auto& s = std::get<std::string>(c);
    // Text that would read back as a number keeps its quotes.
    if (!std::holds_alternative<std::string>(parse_cell(s, false))) return '"' + s + '"';
    return quote(s);
}

// Splits one CSV record; quoted fields may not span lines.
std::vector<std::pair<std::string, bool>> split_record(const std::string& line) {
    std::vector<std::pair<std::string, bool>> fields;
    std::string cur;
    bool quoted = false;
    bool in_quotes = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char ch = line[i];
        if (in_quotes) {
            if (ch == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                cur += ch;
            }
        } else if (ch == '"') {
            in_quotes = true;
            quoted = true;
        } else if (ch == ',') {
            fields.emplace_back(std::move(cur), quoted);
            cur.clear();
            quoted = false;
        } else {
            cur += ch;
        }
    }
    if (in_quotes) throw ShapeError("csv: unterminated quote");
    fields.emplace_back(std::move(cur), quoted);
    return fields;
}

Cell parse_cell(const std::string& text, bool quoted) {
    if (quoted) return text;
    const char* first = text.data();
    const char* last = first + text.size();
    std::int64_t i = 0;
    if (auto r = std::from_chars(first, last, i); r.ec == std::errc() && r.ptr == last) return i;
    if (text == "nan") return std::nan("");
    if (text == "inf") return HUGE_VAL;
    if (text == "-inf") return -HUGE_VAL;
    double d = 0.0;
    if (auto r = std::from_chars(first, last, d); r.ec == std::errc() && r.ptr == last) return d;
    return text;
}

}  // namespace

void write_csv(const ResultTable& table, std::ostream& out) {
    for (const auto& [k, v] : table.metadata()) out << "# " << k << ": " << v << '\n';
    const auto& cols = table.columns();
    for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << quote(cols[i]);
    out << '\n';
    for (const auto& row : table.rows()) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << render(row[i]);
        out << '\n';
    }
}

void emit_csv(const ResultTable& table, const std::string& path) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw std::system_error(errno, std::generic_category(), "cannot open " + path + " for writing");
    write_csv(table, f);
    f.flush();
    if (!f) throw std::system_error(errno, std::generic_category(), "write to " + path + " failed");
}

ResultTable parse_csv(std::istream& in) {
    std::string line;
    std::vector<std::pair<std::string, std::string>> meta;
    bool have_header = false;
    ResultTable table;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!have_header && line.rfind("# ", 0) == 0) {
            const auto colon = line.find(": ", 2);
            if (colon == std::string::npos) throw ShapeError("csv: malformed metadata line: " + line);
            meta.emplace_back(line.substr(2, colon - 2), line.substr(colon + 2));
            continue;
        }
        if (!have_header) {
            std::vector<std::string> cols;
            for (auto& [text, q] : split_record(line)) cols.push_back(text);
            table = ResultTable(std::move(cols));
            have_header = true;
            continue;
        }
        std::vector<Cell> row;
        for (auto& [text, q] : split_record(line)) row.push_back(parse_cell(text, q));
        table.add_row(std::move(row));
    }
    if (!have_header) throw ShapeError("csv: missing header row");
    for (auto& [k, v] : meta) table.set_meta(k, std::move(v));
    return table;
}

ResultTable read_csv(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::system_error(errno, std::generic_category(), "cannot open " + path);
    return parse_csv(f);
}

}  // namespace mra
