#pragma once

// Algebra files.
//
//   {
//     "dim": 3,
//     "brackets": [[0, 1, 2, 1.0]],      // [i, j, k, C_ij^k], 0-based
//     "metric": [[1,0,0],[0,1,0],[0,0,1]], // optional, row-major Gram matrix
//     "name": "heisenberg3"              // optional
//   }
//
// Entries are normally written with i < j. An entry with i > j is read as
// the long form of the same constant and must agree with its partner by
// antisymmetry; i == j must carry a zero value.

#include <metlie/metlie.hpp>

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace metlie {

/// Malformed file: bad JSON, wrong field types or shapes.
class ParseError : public Error {
 public:
  using Error::Error;
};

struct BracketEntry {
  Index i = 0, j = 0, k = 0;
  double value = 0;

  bool operator==(const BracketEntry&) const = default;
};

struct AlgebraFile {
  Index dim = 0;
  std::vector<BracketEntry> brackets;
  std::optional<std::vector<std::vector<double>>> metric;
  std::string name;

  bool operator==(const AlgebraFile&) const = default;
};

AlgebraFile parse_algebra_file(const std::string& text);
AlgebraFile read_algebra_file(const std::string& path);

nlohmann::ordered_json to_json(const AlgebraFile& f);
AlgebraFile algebra_file_from_json(const nlohmann::ordered_json& j);

/// Short-form entries (i < j, nonzero values) of an algebra.
AlgebraFile make_algebra_file(const LieAlgebra<double>& alg, const std::string& name = {});
AlgebraFile make_algebra_file(const LieAlgebra<double>& alg, const InnerProduct<double>& metric,
                              const std::string& name = {});

struct ValidationReport {
  bool valid = false;
  /// One line per problem found, in the order checked.
  std::vector<std::string> problems;
  double antisymmetry_residual = 0;
  double jacobi_residual = 0;
  std::optional<double> metric_symmetry_residual;
  /// Smallest Cholesky pivot squared, when the factorization got that far.
  std::optional<double> metric_min_pivot;
};

ValidationReport validate(const AlgebraFile& f, const Tolerances<double>& tol = {});

/// Structure constants of a file; throws InputError on index or antisymmetry problems.
StructureConstants<double> constants_of(const AlgebraFile& f);
InnerProduct<double> metric_of(const AlgebraFile& f, const Tolerances<double>& tol = {});
MetricLieAlgebra<double> metric_algebra_of(const AlgebraFile& f, const Tolerances<double>& tol = {});

std::vector<std::vector<double>> to_rows(const Matrix<double>& m);
Matrix<double> from_rows(const std::vector<std::vector<double>>& rows);

}  // namespace metlie
