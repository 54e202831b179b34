#pragma once

#include <iosfwd>
#include <string>

#include "gsp/core.hpp"
#include "gsp/graph.hpp"

namespace gsp {

// Edge-list format:
//   n <count>
//   i j w        (one edge per line, 0-based, i < j)
// Blank lines and lines starting with '#' are ignored.
Graph read_edge_list(std::istream& in);
Graph read_edge_list_file(const std::string& path);
void write_edge_list(std::ostream& out, const Graph& g);
void write_edge_list_file(const std::string& path, const Graph& g);

// Signal format: one decimal value per line.
VectorXd read_signal(std::istream& in);
VectorXd read_signal_file(const std::string& path);
void write_signal(std::ostream& out, const VectorXd& s);
void write_signal_file(const std::string& path, const VectorXd& s);

std::string read_text_file(const std::string& path);

}  // namespace gsp
