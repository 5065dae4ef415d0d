#pragma once

#include <string>

#include "lve/program.hpp"
#include "lve/syntax.hpp"

namespace lve {

std::string pretty_print(const Pattern& p);
std::string pretty_print(const Expr& e);
// One definition per line, then "in <output>".
std::string pretty_print(const LetTerm& l);

// Matrix and variable declarations followed by the term; parses back to an
// equal program.
std::string print_program(const Program& p);

// Shortest decimal form with 12 significant digits.
std::string format_number(double x);

}  // namespace lve
