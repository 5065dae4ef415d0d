#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "lve/program.hpp"

namespace lve {

struct ParseOptions {
  bool stochastic_check = true;
  // Declarations available before the text is read.
  std::vector<MatrixRef> matrices;
  std::map<std::string, Type> variables;
};

// Reads a program: matrix and variable declarations followed by a
// let-term. Errors are SourceError with line and column.
Program parse_program(std::string_view text, const ParseOptions& options = {});

Type parse_type(std::string_view text);

// Reads a .lve program or a .json network, depending on the extension.
Program load_program(const std::filesystem::path& path, const ParseOptions& options = {});

std::string read_file(const std::filesystem::path& path);

}  // namespace lve
