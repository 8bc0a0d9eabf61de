#pragma once

#include <charconv>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "graph.hpp"

namespace irrdec {

struct ParseError : std::runtime_error {
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

private:
  int line_;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  auto hash = s.find('#');
  if (hash != std::string_view::npos) s = s.substr(0, hash);
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
    s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

inline std::vector<long long> parse_ints(std::string_view s, int line) {
  std::vector<long long> out;
  while (!s.empty()) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    if (s.empty()) break;
    long long x = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
    if (ec != std::errc() || (ptr != s.data() + s.size() && *ptr != ' ' && *ptr != '\t'))
      throw ParseError(line, "expected decimal integers, got '" + std::string(s) + "'");
    out.push_back(x);
    s.remove_prefix(static_cast<std::size_t>(ptr - s.data()));
  }
  return out;
}

}  // namespace detail

// Format: first non-comment line "n", then one "u v" line per edge with
// 0 <= u < v < n. '#' starts a comment. Self-loops and duplicates are rejected.
inline Graph parse_edge_list(std::string_view text) {
  int line_no = 0;
  bool have_n = false;
  long long n = 0;
  std::vector<Edge> edges;
  std::vector<std::vector<Vertex>> seen;
  while (!text.empty()) {
    auto nl = text.find('\n');
    std::string_view raw = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    auto body = detail::trim(raw);
    if (body.empty()) continue;
    auto ints = detail::parse_ints(body, line_no);
    if (!have_n) {
      if (ints.size() != 1) throw ParseError(line_no, "first line must hold the vertex count");
      if (ints[0] < 0 || ints[0] > (1LL << 30)) throw ParseError(line_no, "bad vertex count");
      n = ints[0];
      have_n = true;
      seen.resize(static_cast<std::size_t>(n));
      continue;
    }
    if (ints.size() != 2) throw ParseError(line_no, "edge line must hold two vertex ids");
    auto u = ints[0], v = ints[1];
    if (u < 0 || v < 0 || u >= n || v >= n) throw ParseError(line_no, "vertex id out of range");
    if (u == v) throw ParseError(line_no, "self-loop");
    if (u > v) throw ParseError(line_no, "edge must be written as u v with u < v");
    auto& list = seen[static_cast<std::size_t>(u)];
    if (std::find(list.begin(), list.end(), static_cast<Vertex>(v)) != list.end())
      throw ParseError(line_no, "duplicate edge");
    list.push_back(static_cast<Vertex>(v));
    edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v)});
  }
  if (!have_n) throw ParseError(line_no, "missing vertex count");
  return Graph(static_cast<int>(n), std::move(edges));
}

inline std::string serialize_edge_list(const Graph& g) {
  std::ostringstream out;
  out << g.vertex_count() << '\n';
  for (const auto& e : g.edges()) out << e.u << ' ' << e.v << '\n';
  return out.str();
}

}  // namespace irrdec
