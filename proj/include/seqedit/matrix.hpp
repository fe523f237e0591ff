#pragma once

#include <Eigen/Dense>
#include <filesystem>
#include <string>

#include "seqedit/errors.hpp"

namespace seqedit {

// Dense double-precision carriers used throughout the library.
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Throws DomainError if any entry is NaN or infinite.
void require_finite(const Matrix& a, const std::string& what);
void require_finite(const Vector& v, const std::string& what);

// Throws DimensionError if the matrix has no entries.
void require_nonempty(const Matrix& a, const std::string& what);

// Text format: first line "rows cols", then one line per row with
// space-separated entries printed with 17 significant digits so that
// write/read round-trips doubles exactly. Extension ".mat" by convention.
Matrix load_matrix(const std::filesystem::path& path);
void save_matrix(const std::filesystem::path& path, const Matrix& a);

// %.17g rendering shared by the .mat and CSV writers.
std::string format_double(double x);

}  // namespace seqedit
