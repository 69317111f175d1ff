#pragma once

#include <iosfwd>
#include <string>

#include "lpball/quasinorm.hpp"

namespace lpball {

// Text matrix format: a "rows cols" header followed by rows·cols
// whitespace-separated values in row-major order. Vectors are n×1.

/// Throws InvalidInput on malformed content.
Matrix read_matrix(std::istream& in);
void write_matrix(std::ostream& out, const Matrix& m);

/// File variants; throw IoError when the file cannot be opened or written.
Matrix read_matrix_file(const std::string& path);
void write_matrix_file(const std::string& path, const Matrix& m);

/// Reads a matrix file and flattens it (row-major) into a vector.
Vector read_vector_file(const std::string& path);

} // namespace lpball
