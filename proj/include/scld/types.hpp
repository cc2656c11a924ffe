#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace scld {

// Column-major real matrix; the universal carrier for data, representations,
// duals, affinities and embeddings.
using DenseMatrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using IndexVector = Eigen::VectorXi;

// Precondition violations: non-finite inputs, bad shapes, out-of-range knobs.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Matrix/label or shape disagreement between two inputs.
class DimensionMismatch : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

// A numeric routine (SVD, eigensolver, linear solve) failed to produce a
// usable result.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input file; carries the 1-based line (and column when known).
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, long line, long column = 0)
      : std::runtime_error(what), line_(line), column_(column) {}
  long line() const { return line_; }
  long column() const { return column_; }

 private:
  long line_;
  long column_;
};

// File system failures: missing file, unwritable output.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline bool is_finite(const DenseMatrix& m) { return m.allFinite(); }

}  // namespace scld
