#include "chipfire/graph_io.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "chipfire/errors.hpp"

namespace chipfire {

namespace {

// Strips a trailing comment and surrounding whitespace.
std::string clean_line(const std::string& raw) {
  std::string line = raw;
  if (auto hash = line.find('#'); hash != std::string::npos)
    line.erase(hash);
  auto begin = line.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  auto end = line.find_last_not_of(" \t\r\n");
  return line.substr(begin, end - begin + 1);
}

long long parse_int_token(std::istringstream& in, const char* what,
                          int line_no) {
  long long value = 0;
  if (!(in >> value))
    throw domain_error("line " + std::to_string(line_no) + ": expected " +
                       what);
  return value;
}

void expect_line_end(std::istringstream& in, int line_no) {
  std::string extra;
  if (in >> extra)
    throw domain_error("line " + std::to_string(line_no) +
                       ": unexpected trailing token '" + extra + "'");
}

}  // namespace

Multigraph parse_graph(std::istream& in) {
  std::string raw;
  int line_no = 0;
  long long n = -1;
  std::vector<EdgeBundle> edges;
  std::map<std::pair<int, int>, bool> seen;

  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = clean_line(raw);
    if (line.empty()) continue;

    std::istringstream tokens(line);
    std::string keyword;
    tokens >> keyword;
    if (keyword == "vertices") {
      if (n >= 0)
        throw domain_error("line " + std::to_string(line_no) +
                           ": repeated vertices directive");
      n = parse_int_token(tokens, "a vertex count", line_no);
      expect_line_end(tokens, line_no);
      if (n < 1)
        throw domain_error("line " + std::to_string(line_no) +
                           ": vertex count must be >= 1");
    } else if (keyword == "edge") {
      if (n < 0)
        throw domain_error("line " + std::to_string(line_no) +
                           ": edge before vertices directive");
      long long u = parse_int_token(tokens, "an endpoint", line_no);
      long long v = parse_int_token(tokens, "an endpoint", line_no);
      long long mult = parse_int_token(tokens, "a multiplicity", line_no);
      expect_line_end(tokens, line_no);
      if (!(0 <= u && u < v && v < n))
        throw domain_error("line " + std::to_string(line_no) +
                           ": edge endpoints must satisfy 0 <= u < v < n");
      if (mult < 1)
        throw domain_error("line " + std::to_string(line_no) +
                           ": edge multiplicity must be >= 1");
      auto key = std::make_pair(static_cast<int>(u), static_cast<int>(v));
      if (seen.count(key))
        throw domain_error("line " + std::to_string(line_no) +
                           ": duplicate edge " + std::to_string(u) + " " +
                           std::to_string(v));
      seen[key] = true;
      edges.push_back({static_cast<int>(u), static_cast<int>(v),
                       static_cast<int>(mult)});
    } else {
      throw domain_error("line " + std::to_string(line_no) +
                         ": unknown directive '" + keyword + "'");
    }
  }
  if (n < 0) throw domain_error("missing vertices directive");
  return Multigraph(static_cast<int>(n), edges);
}

Multigraph parse_graph(const std::string& text) {
  std::istringstream in(text);
  return parse_graph(in);
}

Multigraph load_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw domain_error("cannot open graph file: " + path);
  return parse_graph(in);
}

void write_graph(const Multigraph& g, std::ostream& out) {
  out << "vertices " << g.vertex_count() << "\n";
  for (int u = 0; u < g.vertex_count(); ++u)
    for (int v = u + 1; v < g.vertex_count(); ++v)
      if (g.multiplicity(u, v) > 0)
        out << "edge " << u << " " << v << " " << g.multiplicity(u, v) << "\n";
}

std::string format_graph(const Multigraph& g) {
  std::ostringstream out;
  write_graph(g, out);
  return out.str();
}

}  // namespace chipfire
