#include "mcc/io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace mcc {

namespace {

bool skippable(const std::string& line) {
    for (char ch : line) {
        if (ch == '#') return true;
        if (!std::isspace(static_cast<unsigned char>(ch))) return false;
    }
    return true;  // blank
}

// All fields must parse and nothing may trail them.
template <typename... Ts>
void scan(const std::string& line, int line_no, Ts&... fields) {
    std::istringstream is(line);
    ((is >> fields) && ...);
    if (!is) throw ParseError(line_no, "expected " + std::to_string(sizeof...(fields)) +
                                           " integers, got \"" + line + "\"");
    std::string rest;
    if (is >> rest) throw ParseError(line_no, "trailing content \"" + rest + "\"");
}

}  // namespace

ColoredGraph read_colored_graph(std::istream& in) {
    std::string line;
    int line_no = 0;
    long long n = -1, r = -1;
    while (std::getline(in, line)) {
        ++line_no;
        if (skippable(line)) continue;
        scan(line, line_no, n, r);
        if (n < 1) throw ParseError(line_no, "vertex count must be >= 1");
        if (r < 1) throw ParseError(line_no, "color count must be >= 1");
        break;
    }
    if (n < 0) throw ParseError(line_no + 1, "missing `n r` header");

    ColoredGraph cg{int(n), int(r)};
    while (std::getline(in, line)) {
        ++line_no;
        if (skippable(line)) continue;
        long long u = 0, v = 0, c = 0;
        scan(line, line_no, u, v, c);
        if (u < 0 || v >= n || u >= v)
            throw ParseError(line_no, "edge endpoints need 0 <= u < v < n");
        if (c < 1 || c > r) throw ParseError(line_no, "color outside 1..r");
        if (cg.base().adjacent(int(u), int(v)))
            throw ParseError(line_no, "duplicate edge " + std::to_string(u) + " " +
                                          std::to_string(v));
        cg.add_edge(int(u), int(v), int(c));
    }
    return cg;
}

void write_colored_graph(const ColoredGraph& cg, std::ostream& out) {
    out << cg.vertex_count() << ' ' << cg.colors() << '\n';
    for (auto [u, v] : cg.base().edges())
        out << u << ' ' << v << ' ' << cg.color_of(u, v) << '\n';
}

ColoredGraph load_colored_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return read_colored_graph(in);
}

void save_colored_graph(const ColoredGraph& cg, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    write_colored_graph(cg, out);
    out.flush();
    if (!out) throw std::runtime_error("write failed for " + path);
}

}  // namespace mcc
