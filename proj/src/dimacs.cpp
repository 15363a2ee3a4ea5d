#include "twi/dimacs.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace twi {
namespace {

bool is_blank_or_comment(const std::string& line) {
  std::size_t i = line.find_first_not_of(" \t\r");
  return i == std::string::npos || line[i] == 'c';
}

// Parses a whole token as a signed integer; false on trailing junk.
bool parse_int(const std::string& tok, long long& out) {
  try {
    std::size_t used = 0;
    out = std::stoll(tok, &used);
    return used == tok.size();
  } catch (const std::exception&) {
    return false;
  }
}

}  // namespace

Graph read_dimacs_graph(std::istream& in) {
  std::string line;
  int lineno = 0;
  long long n = -1, m = -1;
  std::vector<Edge> edges;
  while (std::getline(in, line)) {
    ++lineno;
    if (is_blank_or_comment(line)) continue;
    std::istringstream ss(line);
    std::string kind;
    ss >> kind;
    if (kind == "p") {
      if (n >= 0) throw ParseError(lineno, "second problem line");
      std::string fmt, a, b, extra;
      ss >> fmt >> a >> b;
      if (fmt != "edge" || !parse_int(a, n) || !parse_int(b, m) || n < 0 || m < 0 || (ss >> extra))
        throw ParseError(lineno, "malformed header, expected 'p edge <n> <m>'");
    } else if (kind == "e") {
      if (n < 0) throw ParseError(lineno, "edge before problem line");
      std::string a, b, extra;
      ss >> a >> b;
      long long u = 0, v = 0;
      if (!parse_int(a, u) || !parse_int(b, v) || (ss >> extra))
        throw ParseError(lineno, "malformed edge line");
      if (u < 1 || v < 1 || u > n || v > n) throw ParseError(lineno, "vertex id out of range");
      if (u == v) throw ParseError(lineno, "self-loop");
      edges.push_back({static_cast<Vertex>(u - 1), static_cast<Vertex>(v - 1)});
    } else {
      throw ParseError(lineno, "unknown line type '" + kind + "'");
    }
  }
  if (n < 0) throw ParseError(lineno, "missing problem line");
  if (static_cast<long long>(edges.size()) != m)
    throw ParseError(lineno, "header declares " + std::to_string(m) + " edges, found " +
                                 std::to_string(edges.size()));
  try {
    return Graph(static_cast<int>(n), std::move(edges));
  } catch (const std::invalid_argument& e) {
    throw ParseError(lineno, e.what());
  }
}

void write_dimacs_graph(std::ostream& out, const Graph& g) {
  out << "p edge " << g.vertex_count() << ' ' << g.edge_count() << '\n';
  for (const auto& e : g.edges()) out << "e " << e.u + 1 << ' ' << e.v + 1 << '\n';
}

CnfFormula read_dimacs_cnf(std::istream& in) {
  std::string line;
  int lineno = 0;
  long long n = -1, m = -1;
  CnfFormula phi;
  Clause current;
  while (std::getline(in, line)) {
    ++lineno;
    if (is_blank_or_comment(line)) continue;
    std::istringstream ss(line);
    std::string tok;
    ss >> tok;
    if (tok == "p") {
      if (n >= 0) throw ParseError(lineno, "second problem line");
      std::string fmt, a, b, extra;
      ss >> fmt >> a >> b;
      if (fmt != "cnf" || !parse_int(a, n) || !parse_int(b, m) || n < 0 || m < 0 || (ss >> extra))
        throw ParseError(lineno, "malformed header, expected 'p cnf <vars> <clauses>'");
      phi.num_vars = static_cast<int>(n);
      continue;
    }
    if (n < 0) throw ParseError(lineno, "clause before problem line");
    do {
      long long lit = 0;
      if (!parse_int(tok, lit)) throw ParseError(lineno, "malformed literal '" + tok + "'");
      if (lit == 0) {
        phi.clauses.push_back(std::move(current));
        current.clear();
        continue;
      }
      long long var = lit < 0 ? -lit : lit;
      if (var > n) throw ParseError(lineno, "variable " + std::to_string(var) + " out of range");
      current.push_back({static_cast<int>(var - 1), lit > 0});
    } while (ss >> tok);
  }
  if (n < 0) throw ParseError(lineno, "missing problem line");
  if (!current.empty()) throw ParseError(lineno, "last clause not terminated by 0");
  if (static_cast<long long>(phi.clauses.size()) != m)
    throw ParseError(lineno, "header declares " + std::to_string(m) + " clauses, found " +
                                 std::to_string(phi.clauses.size()));
  try {
    return normalized(std::move(phi));
  } catch (const std::invalid_argument& e) {
    throw ParseError(lineno, e.what());
  }
}

void write_dimacs_cnf(std::ostream& out, const CnfFormula& phi) {
  out << "p cnf " << phi.num_vars << ' ' << phi.clause_count() << '\n';
  for (const auto& c : phi.clauses) {
    for (const auto& lit : c) out << (lit.positive ? lit.var + 1 : -(lit.var + 1)) << ' ';
    out << "0\n";
  }
}

Graph read_dimacs_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_dimacs_graph(in);
}

CnfFormula read_dimacs_cnf_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_dimacs_cnf(in);
}

}  // namespace twi
