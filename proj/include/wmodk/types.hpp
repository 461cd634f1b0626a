#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>
#include <vector>

namespace wmodk {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Thrown when an input breaks a structural precondition (shape, symmetry,
// finiteness, label range).
class StructuralError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Thrown for bad run parameters (k out of range, rho <= 0, unknown preset).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Thrown by file readers; carries the offending line when known.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& msg, long line = -1)
      : std::runtime_error(line >= 0 ? msg + " (line " + std::to_string(line) + ")"
                                     : msg),
        line_(line) {}
  long line() const { return line_; }

 private:
  long line_;
};

// Community assignment for n nodes, labels 1..k.
struct LabelVector {
  std::vector<int> entries;  // 1-based community ids
  int k = 0;

  int n() const { return static_cast<int>(entries.size()); }

  void validate() const {
    if (n() < 1) throw StructuralError("label vector must have n >= 1");
    if (k < 1) throw StructuralError("label vector must have k >= 1");
    if (k > n()) throw StructuralError("label vector needs k <= n");
    for (int i = 0; i < n(); ++i) {
      if (entries[i] < 1 || entries[i] > k)
        throw StructuralError("label " + std::to_string(entries[i]) +
                              " at index " + std::to_string(i) +
                              " outside [1, " + std::to_string(k) + "]");
    }
  }

  bool operator==(const LabelVector& o) const = default;
};

// Outcome of a constraint check: violations block generation, warnings do not
// (unless strict mode promotes them).
struct ValidationReport {
  std::vector<std::string> violations;
  std::vector<std::string> warnings;

  bool ok() const { return violations.empty(); }
  std::string summary() const {
    std::string s;
    for (const auto& v : violations) s += "error: " + v + "\n";
    for (const auto& w : warnings) s += "warning: " + w + "\n";
    return s;
  }
};

inline void require_square_symmetric(const Matrix& a, double tol,
                                     const char* what) {
  if (a.rows() != a.cols())
    throw StructuralError(std::string(what) + " must be square");
  if (!a.allFinite())
    throw StructuralError(std::string(what) + " has non-finite entries");
  double asym = (a - a.transpose()).cwiseAbs().maxCoeff();
  if (asym > tol)
    throw StructuralError(std::string(what) + " is not symmetric (max |A-A'| = " +
                          std::to_string(asym) + ")");
}

}  // namespace wmodk
