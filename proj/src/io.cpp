#include "wmodk/io.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_map>

#include "wmodk/harness.hpp"  // format_double

namespace wmodk {

namespace {

std::vector<std::string> split_fields(const std::string& line, char delim) {
  std::vector<std::string> fields;
  if (delim == '\0') {
    std::istringstream ss(line);
    std::string tok;
    while (ss >> tok) fields.push_back(tok);
  } else {
    std::string tok;
    std::istringstream ss(line);
    while (std::getline(ss, tok, delim)) {
      // trim surrounding whitespace
      auto b = tok.find_first_not_of(" \t\r");
      auto e = tok.find_last_not_of(" \t\r");
      fields.push_back(b == std::string::npos ? "" : tok.substr(b, e - b + 1));
    }
  }
  return fields;
}

double parse_weight(const std::string& tok, long line_no) {
  char* end = nullptr;
  double w = std::strtod(tok.c_str(), &end);
  if (end == tok.c_str() || *end != '\0' || !std::isfinite(w))
    throw ParseError("bad edge weight '" + tok + "'", line_no);
  return w;
}

}  // namespace

EdgeListDocument read_edge_list(const std::string& path,
                                const EdgeListOptions& opts) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");

  std::unordered_map<std::string, int> index;
  std::vector<std::string> names;
  auto node = [&](const std::string& tok) {
    auto it = index.find(tok);
    if (it != index.end()) return it->second;
    int id = static_cast<int>(names.size());
    index.emplace(tok, id);
    names.push_back(tok);
    return id;
  };

  // directed accumulation first; symmetrize after
  std::map<std::pair<int, int>, double> directed;
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::vector<std::string> fields = split_fields(line, opts.delimiter);
    if (fields.empty()) continue;
    if (fields.size() != 2 && fields.size() != 3)
      throw ParseError("expected 'src dst [weight]', got " +
                       std::to_string(fields.size()) + " fields", line_no);
    int u = node(fields[0]);
    int v = node(fields[1]);
    double w = fields.size() == 3 ? parse_weight(fields[2], line_no) : 1.0;
    auto key = std::make_pair(u, v);
    auto [it, inserted] = directed.try_emplace(key, w);
    if (!inserted) {
      if (opts.duplicate_policy == DuplicatePolicy::error)
        throw ParseError("duplicate edge " + fields[0] + " -> " + fields[1],
                         line_no);
      it->second += w;
    }
  }
  const int n = static_cast<int>(names.size());
  if (n == 0) throw ParseError("no edges in '" + path + "'");

  EdgeListDocument doc;
  doc.node_ids = std::move(names);
  doc.adjacency = Matrix::Zero(n, n);
  for (const auto& [key, w] : directed) {
    auto [u, v] = key;
    if (u == v) {
      doc.adjacency(u, u) = w;
      continue;
    }
    auto rev = directed.find(std::make_pair(v, u));
    bool both = rev != directed.end();
    if (both && u > v) continue;  // handled from the (min, max) side
    double value = w;
    if (both) {
      if (opts.symmetrize == SymmetrizePolicy::mirror) {
        if (std::abs(w - rev->second) > 1e-9)
          throw ParseError("conflicting weights for edge " + doc.node_ids[u] +
                           " -- " + doc.node_ids[v] + ": " + format_double(w) +
                           " vs " + format_double(rev->second));
        value = w;
      } else {
        value = (w + rev->second) / 2.0;
      }
    }
    doc.adjacency(u, v) = value;
    doc.adjacency(v, u) = value;
  }
  return doc;
}

void write_matrix(const std::string& path, const Matrix& a) {
  if (a.rows() != a.cols() || a.rows() < 1)
    throw StructuralError("matrix must be square and non-empty");
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write '" + path + "'");
  const int n = static_cast<int>(a.rows());
  out << n << '\n';
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (j) out << ' ';
      out << format_double(a(i, j));
    }
    out << '\n';
  }
  if (!out) throw ParseError("short write to '" + path + "'");
}

Matrix read_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  long n = 0;
  if (!(in >> n)) throw ParseError("missing size header in '" + path + "'", 1);
  if (n < 1)
    throw ParseError("matrix size must be >= 1, got " + std::to_string(n), 1);
  Matrix a(n, n);
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j)
      if (!(in >> a(i, j)))
        throw ParseError("matrix data ends early at row " + std::to_string(i),
                         i + 2);
  double extra;
  if (in >> extra) throw ParseError("trailing data after matrix");
  return a;
}

Matrix read_network(const std::string& path, InputFormat format,
                    std::vector<std::string>* node_ids) {
  if (format == InputFormat::automatic) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    std::string line;
    format = InputFormat::edge_list;
    while (std::getline(in, line)) {
      auto hash = line.find('#');
      if (hash != std::string::npos) line = line.substr(0, hash);
      std::istringstream ss(line);
      std::string first, second;
      if (!(ss >> first)) continue;
      if (!(ss >> second) && first.find_first_not_of("0123456789") == std::string::npos)
        format = InputFormat::matrix;
      break;
    }
  }
  if (format == InputFormat::matrix) {
    if (node_ids) node_ids->clear();
    Matrix a = read_matrix(path);
    require_square_symmetric(a, 1e-9, "matrix file");
    return a;
  }
  EdgeListDocument doc = read_edge_list(path);
  if (node_ids) *node_ids = doc.node_ids;
  return doc.adjacency;
}

}  // namespace wmodk
