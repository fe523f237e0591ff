#include "seqedit/matrix.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace seqedit {

void require_finite(const Matrix& a, const std::string& what) {
    if (!a.allFinite()) {
        throw DomainError(what + ": non-finite entry");
    }
}

void require_finite(const Vector& v, const std::string& what) {
    if (!v.allFinite()) {
        throw DomainError(what + ": non-finite entry");
    }
}

void require_nonempty(const Matrix& a, const std::string& what) {
    if (a.rows() == 0 || a.cols() == 0) {
        throw DimensionError(what + ": empty matrix");
    }
}

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

Matrix load_matrix(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open matrix file: " + path.string());
    }
    long rows = 0;
    long cols = 0;
    if (!(in >> rows >> cols) || rows <= 0 || cols <= 0) {
        throw IoError("bad matrix header in " + path.string());
    }
    Matrix a(rows, cols);
    for (long i = 0; i < rows; ++i) {
        for (long j = 0; j < cols; ++j) {
            if (!(in >> a(i, j))) {
                throw IoError("truncated matrix data in " + path.string());
            }
        }
    }
    require_finite(a, "matrix file " + path.string());
    return a;
}

void save_matrix(const std::filesystem::path& path, const Matrix& a) {
    require_nonempty(a, "save_matrix");
    require_finite(a, "save_matrix");
    std::ofstream out(path);
    if (!out) {
        throw IoError("cannot write matrix file: " + path.string());
    }
    out << a.rows() << ' ' << a.cols() << '\n';
    for (long i = 0; i < a.rows(); ++i) {
        for (long j = 0; j < a.cols(); ++j) {
            if (j) out << ' ';
            out << format_double(a(i, j));
        }
        out << '\n';
    }
    if (!out) {
        throw IoError("write failed for " + path.string());
    }
}

}  // namespace seqedit
