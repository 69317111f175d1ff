#include "lpball/matrix_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>

#include "lpball/csv.hpp"
#include "lpball/errors.hpp"

namespace lpball {

Matrix read_matrix(std::istream& in) {
    long long rows = -1;
    long long cols = -1;
    if (!(in >> rows >> cols) || rows < 0 || cols < 0)
        throw InvalidInput("matrix: expected a 'rows cols' header");
    Matrix m(rows, cols);
    std::string token;
    for (long long r = 0; r < rows; ++r)
        for (long long c = 0; c < cols; ++c) {
            if (!(in >> token))
                throw InvalidInput("matrix: fewer values than rows*cols");
            m(r, c) = parse_double(token);
        }
    if (in >> token)
        throw InvalidInput("matrix: trailing data after rows*cols values");
    return m;
}

void write_matrix(std::ostream& out, const Matrix& m) {
    out << m.rows() << ' ' << m.cols() << '\n';
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            if (c)
                out << ' ';
            out << format_double(m(r, c));
        }
        out << '\n';
    }
}

Matrix read_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open '" + path + "' for reading");
    return read_matrix(in);
}

void write_matrix_file(const std::string& path, const Matrix& m) {
    std::ofstream out(path);
    if (!out)
        throw IoError("cannot open '" + path + "' for writing");
    write_matrix(out, m);
    if (!out)
        throw IoError("write to '" + path + "' failed");
}

Vector read_vector_file(const std::string& path) {
    const Matrix m = read_matrix_file(path);
    Vector v(m.size());
    Eigen::Index k = 0;
    for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index c = 0; c < m.cols(); ++c)
            v[k++] = m(r, c);
    return v;
}

} // namespace lpball
