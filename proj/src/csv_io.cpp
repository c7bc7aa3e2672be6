#include "fdhom/csv_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <vector>

namespace fdhom {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return {};
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_cells(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) cells.push_back(trim(cell));
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

std::optional<double> parse_number(const std::string& cell) {
    if (cell.empty()) return std::nullopt;
    double value = 0.0;
    const char* begin = cell.data();
    const char* end = begin + cell.size();
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr != end) return std::nullopt;
    return value;
}

[[noreturn]] void fail(const std::string& origin, std::size_t line, const std::string& what) {
    throw ParseError(origin + ", line " + std::to_string(line) + ": " + what);
}

}  // namespace

std::string format_double(double value) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, ptr);
}

FunctionalSample parse_sample_csv(std::istream& in, const std::string& origin) {
    std::string line;
    std::size_t line_no = 0;

    // Header: grid points, optionally preceded by a label-column name.
    std::vector<double> grid_points;
    bool has_labels = false;
    std::size_t header_line = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped.front() == '#') continue;
        const auto cells = split_cells(stripped);
        std::size_t first = 0;
        if (!parse_number(cells[0]).has_value()) {
            has_labels = true;
            first = 1;
        }
        for (std::size_t c = first; c < cells.size(); ++c) {
            const auto v = parse_number(cells[c]);
            if (!v.has_value()) {
                fail(origin, line_no,
                     "header column " + std::to_string(c + 1) + ": not a number: '" + cells[c] + "'");
            }
            if (!std::isfinite(*v)) {
                fail(origin, line_no, "header column " + std::to_string(c + 1) + ": grid point not finite");
            }
            grid_points.push_back(*v);
        }
        header_line = line_no;
        break;
    }
    if (header_line == 0) {
        throw ParseError(origin + ": empty file, expected a grid header row");
    }
    if (grid_points.size() < 2) {
        fail(origin, header_line, "grid needs at least two points");
    }
    for (std::size_t k = 1; k < grid_points.size(); ++k) {
        if (!(grid_points[k - 1] < grid_points[k])) {
            fail(origin, header_line,
                 "header column " + std::to_string(k + 1 + (has_labels ? 1 : 0)) +
                     ": grid points must be strictly increasing");
        }
    }
    const std::size_t m = grid_points.size();
    const std::size_t expected_cells = m + (has_labels ? 1 : 0);

    std::vector<Curve> curves;
    std::vector<std::string> labels;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped.front() == '#') continue;
        const auto cells = split_cells(stripped);
        if (cells.size() != expected_cells) {
            fail(origin, line_no,
                 "expected " + std::to_string(expected_cells) + " cells, found " +
                     std::to_string(cells.size()));
        }
        std::size_t first = 0;
        if (has_labels) {
            labels.push_back(cells[0]);
            first = 1;
        }
        Curve curve(m);
        for (std::size_t c = first; c < cells.size(); ++c) {
            const auto v = parse_number(cells[c]);
            if (!v.has_value()) {
                fail(origin, line_no,
                     "column " + std::to_string(c + 1) + ": not a number: '" + cells[c] + "'");
            }
            if (!std::isfinite(*v)) {
                fail(origin, line_no, "column " + std::to_string(c + 1) + ": value not finite");
            }
            curve[c - first] = *v;
        }
        curves.push_back(std::move(curve));
    }
    if (curves.empty()) {
        throw ParseError(origin + ": no curve rows after the header");
    }
    return FunctionalSample(Grid(std::move(grid_points)), std::move(curves), std::move(labels));
}

FunctionalSample load_sample_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open '" + path + "'");
    }
    return parse_sample_csv(in, path);
}

void save_sample_csv(std::ostream& out, const FunctionalSample& sample,
                     const std::string& manifest_line) {
    if (!manifest_line.empty()) {
        out << "# " << manifest_line << "\n";
    }
    const bool has_labels = !sample.labels().empty();
    if (has_labels) out << "label,";
    for (std::size_t k = 0; k < sample.grid_size(); ++k) {
        out << (k ? "," : "") << format_double(sample.grid()[k]);
    }
    out << "\n";
    for (std::size_t i = 0; i < sample.size(); ++i) {
        if (has_labels) out << sample.labels()[i] << ",";
        const Curve& c = sample.curve(i);
        for (std::size_t k = 0; k < c.size(); ++k) {
            out << (k ? "," : "") << format_double(c[k]);
        }
        out << "\n";
    }
}

}  // namespace fdhom
