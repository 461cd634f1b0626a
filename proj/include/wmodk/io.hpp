#pragma once

#include <string>
#include <vector>

#include "wmodk/types.hpp"

namespace wmodk {

enum class DuplicatePolicy { sum, error };
enum class SymmetrizePolicy { mirror, average };

struct EdgeListOptions {
  char delimiter = '\0';  // '\0': any whitespace
  DuplicatePolicy duplicate_policy = DuplicatePolicy::sum;
  SymmetrizePolicy symmetrize = SymmetrizePolicy::mirror;
};

// Parsed edge list: dense symmetric adjacency plus the node-id table in
// first-appearance order.
struct EdgeListDocument {
  Matrix adjacency;
  std::vector<std::string> node_ids;
};

// Lines are "src dst [weight]"; '#' starts a comment. Repeated (i,j) records
// follow duplicate_policy; (i,j) vs (j,i) totals follow symmetrize: `mirror`
// requires them to agree within 1e-9, `average` takes the mean of the sides
// present.
EdgeListDocument read_edge_list(const std::string& path,
                                const EdgeListOptions& opts = {});

// Dense text format: first line n, then n rows of n entries. Values are
// written with enough digits to round-trip exactly.
void write_matrix(const std::string& path, const Matrix& a);
Matrix read_matrix(const std::string& path);

// Convenience for the CLI: matrix format if the first significant line is a
// single integer, edge list otherwise.
enum class InputFormat { automatic, matrix, edge_list };
Matrix read_network(const std::string& path, InputFormat format,
                    std::vector<std::string>* node_ids = nullptr);

}  // namespace wmodk
