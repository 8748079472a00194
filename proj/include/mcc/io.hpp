#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "mcc/graph.hpp"

namespace mcc {

// Malformed input; line is 1-based within the parsed text.
struct ParseError : std::runtime_error {
    ParseError(int line_no, const std::string& what)
        : std::runtime_error("line " + std::to_string(line_no) + ": " + what), line(line_no) {}
    int line;
};

// Colored edge-list text: header `n r`, one `u v c` per edge with
// 0 <= u < v < n and 1 <= c <= r. Lines starting with `#` and blank
// lines are skipped. A repeated pair is a ParseError, not a rebind.
ColoredGraph read_colored_graph(std::istream& in);
void write_colored_graph(const ColoredGraph& cg, std::ostream& out);

// File variants; missing or unwritable paths raise std::runtime_error.
ColoredGraph load_colored_graph(const std::string& path);
void save_colored_graph(const ColoredGraph& cg, const std::string& path);

}  // namespace mcc
