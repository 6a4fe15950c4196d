#pragma once

#include <istream>
#include <string>

#include "pathcover/decomposition.hpp"
#include "pathcover/graph.hpp"

namespace pathcover {

// PACE text formats. Ids are 1-based on disk and 0-based in memory.
// Parse errors throw InputError carrying the offending line number.

Graph read_gr(std::istream& in);
Graph read_gr_file(const std::string& path);
std::string write_gr(const Graph& g);

TreeDecomposition read_td(std::istream& in);
TreeDecomposition read_td_file(const std::string& path);
std::string write_td(const TreeDecomposition& td);

}  // namespace pathcover
