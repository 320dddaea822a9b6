#pragma once

#include <iosfwd>
#include <string>

#include "chipfire/multigraph.hpp"

namespace chipfire {

/// Plain-text graph format:
///
///   vertices <n>
///   edge <u> <v> <mult>
///
/// one directive per line, `#` starts a comment, 0 <= u < v < n, mult >= 1,
/// and a repeated (u, v) pair is an error.
Multigraph parse_graph(std::istream& in);
Multigraph parse_graph(const std::string& text);
Multigraph load_graph_file(const std::string& path);

/// Writes the format above with edges sorted ascending by (u, v), so equal
/// graphs produce byte-identical output.
void write_graph(const Multigraph& g, std::ostream& out);
std::string format_graph(const Multigraph& g);

}  // namespace chipfire
