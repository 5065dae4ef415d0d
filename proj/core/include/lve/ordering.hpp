#pragma once

#include <string>
#include <vector>

#include "lve/syntax.hpp"

namespace lve {

// Greedy min-degree order over the eliminable variables of l, computed on
// the interaction graph of its factors. Ties are broken by name. This is a
// heuristic; it does not guarantee a minimal width.
std::vector<std::string> min_degree_order(const LetTerm& l);

}  // namespace lve
