#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "hfda/grid.hpp"

namespace hfda {

/// A family of functions sharing one grid, as stored in the CSV layout:
/// column `t` first, then one column per function, header row of names.
struct FunctionTable {
    UniformGrid grid;
    std::vector<std::string> names;
    std::vector<SampledFunction> functions;
};

/// Shortest round-trip decimal representation.
std::string format_double(double v);

FunctionTable parse_function_csv(const std::string& text);
FunctionTable read_function_csv(const std::filesystem::path& path);

std::string to_function_csv(const FunctionTable& table);
void write_function_csv(const std::filesystem::path& path, const FunctionTable& table);

FunctionTable make_table(const std::vector<SampledFunction>& fns, const std::string& prefix);

void write_text(const std::filesystem::path& path, const std::string& text);
std::string read_text(const std::filesystem::path& path);

} // namespace hfda
