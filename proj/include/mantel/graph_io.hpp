#ifndef MANTEL_GRAPH_IO_HPP
#define MANTEL_GRAPH_IO_HPP

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include "mantel/graph.hpp"

namespace mantel {

enum class ParseErrorKind {
  kMalformedHeader,
  kMalformedLine,
  kEdgeCountMismatch,
  kVertexOutOfRange,
  kDuplicateEdge,
  kLoop,
};

const char* to_string(ParseErrorKind kind);

class ParseError : public std::runtime_error {
 public:
  ParseError(ParseErrorKind kind, std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        kind_(kind), line_(line) {}

  ParseErrorKind kind() const { return kind_; }
  std::size_t line() const { return line_; }

 private:
  ParseErrorKind kind_;
  std::size_t line_;
};

/// Edge-list text: header "n m", then m lines "u v" with 0 <= u < v < n.
Graph parse_graph(std::istream& in);
Graph parse_graph(const std::string& text);
void format_graph(std::ostream& out, const Graph& g);

/// File variants; I/O failures throw std::runtime_error (not ParseError).
Graph read_graph(const std::filesystem::path& path);
void write_graph(const std::filesystem::path& path, const Graph& g);

}  // namespace mantel

#endif  // MANTEL_GRAPH_IO_HPP
