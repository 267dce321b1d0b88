#pragma once

#include <filesystem>
#include <istream>
#include <stdexcept>
#include <string>
#include <vector>

#include "zpf/gf_matrix.hpp"
#include "zpf/group.hpp"
#include "zpf/log_hadamard.hpp"

namespace zpf {

/// Malformed input. line and column are 1-based; column 0 means the whole line.
class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& source, int line, int column, const std::string& what);
  int line() const { return line_; }
  int column() const { return column_; }

private:
  int line_;
  int column_;
};

// Matrix text format:
//   m n p
//   m lines of n residues
// Blank lines and lines starting with '#' are ignored.
GFMatrix parse_gf_matrix(std::istream& in, const std::string& source = "<stdin>");
GFMatrix parse_gf_matrix_file(const std::filesystem::path& path);
std::string serialize(const GFMatrix& m);

// Point-set text format:
//   p d count
//   count lines of d coordinates
PointSet parse_point_set(std::istream& in, const std::string& source = "<stdin>");
PointSet parse_point_set_file(const std::filesystem::path& path);
/// Consecutive point-set blocks in one stream.
std::vector<PointSet> parse_point_sets(std::istream& in, const std::string& source = "<stdin>");
std::string serialize(const PointSet& e);

// Sign matrices: rows of '+'/'-' characters, or whitespace-separated 1/-1
// tokens, with an optional "m n" header line.
SignMatrix parse_sign_matrix(std::istream& in, const std::string& source = "<stdin>");
SignMatrix parse_sign_matrix_file(const std::filesystem::path& path);
/// Character grid, one row per line.
std::string serialize(const SignMatrix& h);

}  // namespace zpf
