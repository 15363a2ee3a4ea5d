#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "twi/cnf.hpp"
#include "twi/graph.hpp"

namespace twi {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// Grammars are documented in docs/formats.md.
Graph read_dimacs_graph(std::istream& in);
void write_dimacs_graph(std::ostream& out, const Graph& g);
CnfFormula read_dimacs_cnf(std::istream& in);
void write_dimacs_cnf(std::ostream& out, const CnfFormula& phi);

Graph read_dimacs_graph_file(const std::string& path);
CnfFormula read_dimacs_cnf_file(const std::string& path);

}  // namespace twi
