#pragma once

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "rigid/graph.hpp"

namespace rigid {

/// Thrown on malformed edge-list input; carries the 1-based line number.
class ParseError : public std::runtime_error {
public:
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}
  int line() const { return line_; }

private:
  int line_;
};

namespace detail {

inline bool parse_two_ints(const std::string& s, long long& a, long long& b) {
  const char* p = s.data();
  const char* end = p + s.size();
  auto skip_ws = [&] {
    while (p < end && (*p == ' ' || *p == '\t')) ++p;
  };
  skip_ws();
  auto r1 = std::from_chars(p, end, a);
  if (r1.ec != std::errc{}) return false;
  p = r1.ptr;
  skip_ws();
  auto r2 = std::from_chars(p, end, b);
  if (r2.ec != std::errc{}) return false;
  p = r2.ptr;
  skip_ws();
  return p == end;
}

}  // namespace detail

/// Reads the plain edge-list format: header "n m", then m lines "u v" with
/// 0 <= u < v < n. Trailing newline optional, \r\n tolerated.
inline Graph read_edge_list(std::istream& in) {
  std::string line;
  int lineno = 0;
  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++lineno;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      return true;
    }
    return false;
  };

  if (!next_line()) throw ParseError(1, "missing header");
  long long n, m;
  if (!detail::parse_two_ints(line, n, m))
    throw ParseError(lineno, "header must be two integers: n m");
  if (n < 0 || m < 0) throw ParseError(lineno, "negative header value");
  if (n > 50'000'000)
    throw ParseError(lineno, "vertex count implausibly large");

  Graph g(static_cast<int>(n));
  for (long long i = 0; i < m; ++i) {
    if (!next_line())
      throw ParseError(lineno + 1, "expected " + std::to_string(m) +
                                       " edges, got " + std::to_string(i));
    long long u, v;
    if (!detail::parse_two_ints(line, u, v))
      throw ParseError(lineno, "edge must be two integers: u v");
    if (u < 0 || v <= u || v >= n)
      throw ParseError(lineno, "edge endpoints must satisfy 0 <= u < v < n");
    try {
      g.add_edge(static_cast<Vertex>(u), static_cast<Vertex>(v));
    } catch (const std::invalid_argument&) {
      throw ParseError(lineno, "duplicate edge");
    }
  }
  if (next_line()) {
    if (!line.empty()) throw ParseError(lineno, "trailing content after edges");
  }
  return g;
}

inline Graph read_edge_list(const std::string& text) {
  std::istringstream in(text);
  return read_edge_list(in);
}

/// Writes the same format: "n m\n" then one "u v\n" per edge, u < v,
/// lexicographic order, LF line endings.
inline void write_edge_list(std::ostream& out, const Graph& g) {
  out << g.order() << ' ' << g.edge_count() << '\n';
  for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

inline std::string write_edge_list(const Graph& g) {
  std::ostringstream out;
  write_edge_list(out, g);
  return out.str();
}

}  // namespace rigid
