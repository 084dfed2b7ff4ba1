#include "hfda/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace hfda {

namespace {

std::vector<std::string> split_row(const std::string& line)
{
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

std::string trim(std::string s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double parse_cell(const std::string& raw, std::size_t row, std::size_t col)
{
    const std::string cell = trim(raw);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (ec != std::errc() || ptr != cell.data() + cell.size() || cell.empty())
        throw IoError("row " + std::to_string(row) + ", column " + std::to_string(col) +
                      ": cannot parse '" + cell + "' as a number");
    if (!std::isfinite(v))
        throw IoError("row " + std::to_string(row) + ", column " + std::to_string(col) +
                      ": non-finite value");
    return v;
}

} // namespace

std::string format_double(double v)
{
    if (v == 0.0) return "0";
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

FunctionTable parse_function_csv(const std::string& text)
{
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw IoError("empty CSV input");
    std::vector<std::string> header = split_row(line);
    for (auto& h : header) h = trim(h);
    if (header.size() < 2) throw IoError("row 1: expected a 't' column and at least one function column");

    const std::size_t n_cols = header.size();
    std::vector<std::vector<double>> columns(n_cols);
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (trim(line).empty()) continue;
        const auto cells = split_row(line);
        if (cells.size() != n_cols)
            throw IoError("row " + std::to_string(row) + ": expected " + std::to_string(n_cols) +
                          " columns, found " + std::to_string(cells.size()));
        for (std::size_t c = 0; c < n_cols; ++c) columns[c].push_back(parse_cell(cells[c], row, c + 1));
    }
    const auto n = static_cast<Index>(columns[0].size());
    if (n < 2) throw IoError("CSV needs at least 2 data rows");

    const auto& t = columns[0];
    const UniformGrid grid(n, t.front(), t.back());
    const double tol = 1e-9 * (grid.hi() - grid.lo());
    for (Index j = 0; j < n; ++j) {
        if (std::abs(t[static_cast<std::size_t>(j)] - grid[j]) > tol)
            throw IoError("row " + std::to_string(j + 2) + ", column 1: grid is not uniform (t=" +
                          format_double(t[static_cast<std::size_t>(j)]) + ", expected " +
                          format_double(grid[j]) + ")");
    }

    FunctionTable table{grid, {}, {}};
    for (std::size_t c = 1; c < n_cols; ++c) {
        table.names.push_back(header[c]);
        table.functions.emplace_back(grid, Eigen::Map<const Eigen::VectorXd>(columns[c].data(), n));
    }
    return table;
}

FunctionTable read_function_csv(const std::filesystem::path& path)
{
    try {
        return parse_function_csv(read_text(path));
    } catch (const IoError& e) {
        throw IoError(path.string() + ": " + e.what());
    }
}

std::string to_function_csv(const FunctionTable& table)
{
    std::string out = "t";
    for (const auto& name : table.names) out += "," + name;
    out += "\n";
    for (Index j = 0; j < table.grid.size(); ++j) {
        out += format_double(table.grid[j]);
        for (const auto& f : table.functions) {
            out += ",";
            out += format_double(f[j]);
        }
        out += "\n";
    }
    return out;
}

void write_function_csv(const std::filesystem::path& path, const FunctionTable& table)
{
    write_text(path, to_function_csv(table));
}

FunctionTable make_table(const std::vector<SampledFunction>& fns, const std::string& prefix)
{
    if (fns.empty()) throw DomainError("cannot tabulate an empty function list");
    FunctionTable table{fns.front().grid(), {}, {}};
    for (std::size_t i = 0; i < fns.size(); ++i) {
        if (!(fns[i].grid() == table.grid)) throw GridMismatchError("table functions must share one grid");
        table.names.push_back(prefix + std::to_string(i + 1));
        table.functions.push_back(fns[i]);
    }
    return table;
}

void write_text(const std::filesystem::path& path, const std::string& text)
{
    if (path.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(path.parent_path(), ec);
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    out << text;
    if (!out) throw IoError("failed writing '" + path.string() + "'");
}

std::string read_text(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace hfda
