#include "gsp/io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

namespace gsp {

namespace {

[[noreturn]] void parse_error(int line_no, const std::string& msg) {
  throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": " + msg);
}

bool skip_line(const std::string& line) {
  const auto first = line.find_first_not_of(" \t\r");
  return first == std::string::npos || line[first] == '#';
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open '" + path + "' for reading");
  return in;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::IoError, "cannot open '" + path + "' for writing");
  return out;
}

}  // namespace

Graph read_edge_list(std::istream& in) {
  std::string line;
  int line_no = 0;
  long long n = -1;
  std::vector<Edge> edges;
  while (std::getline(in, line)) {
    ++line_no;
    if (skip_line(line)) continue;
    std::istringstream fields(line);
    std::string extra;
    if (n < 0) {
      std::string key;
      if (!(fields >> key >> n) || key != "n" || (fields >> extra))
        parse_error(line_no, "expected header 'n <count>'");
      if (n < 1) parse_error(line_no, "vertex count must be >= 1");
      continue;
    }
    long long i = 0, j = 0;
    double w = 0.0;
    if (!(fields >> i >> j >> w) || (fields >> extra)) parse_error(line_no, "expected 'i j w'");
    if (i > j) parse_error(line_no, "edge (" + std::to_string(i) + ", " + std::to_string(j) + ") must have i <= j");
    edges.push_back({static_cast<Index>(i), static_cast<Index>(j), w});
  }
  if (n < 0) parse_error(line_no, "missing header 'n <count>'");
  return build_graph(static_cast<Index>(n), std::move(edges));
}

Graph read_edge_list_file(const std::string& path) {
  auto in = open_in(path);
  return read_edge_list(in);
}

void write_edge_list(std::ostream& out, const Graph& g) {
  out << "n " << g.num_vertices() << '\n' << std::setprecision(17);
  for (const auto& e : g.edges()) out << e.i << ' ' << e.j << ' ' << e.weight << '\n';
}

void write_edge_list_file(const std::string& path, const Graph& g) {
  auto out = open_out(path);
  write_edge_list(out, g);
  if (!out) throw Error(ErrorCode::IoError, "write to '" + path + "' failed");
}

VectorXd read_signal(std::istream& in) {
  std::string line;
  int line_no = 0;
  std::vector<double> values;
  while (std::getline(in, line)) {
    ++line_no;
    if (skip_line(line)) continue;
    std::istringstream fields(line);
    double v = 0.0;
    std::string extra;
    if (!(fields >> v) || (fields >> extra)) parse_error(line_no, "expected one number");
    if (!std::isfinite(v)) parse_error(line_no, "value is not finite");
    values.push_back(v);
  }
  return Eigen::Map<const VectorXd>(values.data(), static_cast<Index>(values.size()));
}

VectorXd read_signal_file(const std::string& path) {
  auto in = open_in(path);
  return read_signal(in);
}

void write_signal(std::ostream& out, const VectorXd& s) {
  out << std::setprecision(17);
  for (Index k = 0; k < s.size(); ++k) out << s[k] << '\n';
}

void write_signal_file(const std::string& path, const VectorXd& s) {
  auto out = open_out(path);
  write_signal(out, s);
  if (!out) throw Error(ErrorCode::IoError, "write to '" + path + "' failed");
}

std::string read_text_file(const std::string& path) {
  auto in = open_in(path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace gsp
