#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "zpf/gf_matrix.hpp"

namespace zpf {

/// True iff every residue 0..p-1 occurs equally often. Lengths that are not a
/// multiple of p are never equidistributed.
///
/// For prime p this is exactly the condition for sum_k w^{v_k} = 0 with w a
/// primitive p-th root of unity: the minimal polynomial of w over Q is
/// 1 + X + ... + X^{p-1}, so a vanishing integer combination of powers of w
/// must have equal coefficients. Every orthogonality test in this library
/// reduces to this counting check; no complex arithmetic is used.
bool is_equidistributed(const GFVector& v);
bool is_equidistributed(PrimeModulus p, const ResidueVector& v);

/// First pair of rows i < j whose difference is not equidistributed.
std::optional<std::pair<Index, Index>> find_unbalanced_rows(const GFMatrix& m);
/// Pairwise row differences are equidistributed. Non-square input is false.
bool is_log_hadamard(const GFMatrix& m);
/// Pairwise column differences are equidistributed. Non-square input is false.
bool is_log_hadamard_by_columns(const GFMatrix& m);

bool is_dephased(const GFMatrix& m);

/// Subtracts row 0 from every row, then column 0 from every column.
GFMatrix dephase(const GFMatrix& m);

/// Adds multiples of the all-one vector to rows and columns, then permutes.
///
/// Row r of the input lands at row row_perm[r] (likewise for columns), so
/// out(row_perm[r], col_perm[c]) = in(r, c) + row_shifts[r] + col_shifts[c].
class EquivalenceMove {
public:
  /// Throws std::invalid_argument if a permutation is not a bijection or a
  /// shift vector's length disagrees with its permutation.
  EquivalenceMove(GFVector row_shifts, GFVector col_shifts, std::vector<Index> row_perm,
                  std::vector<Index> col_perm);
  static EquivalenceMove identity(PrimeModulus p, Index rows, Index cols);

  const GFVector& row_shifts() const { return row_shifts_; }
  const GFVector& col_shifts() const { return col_shifts_; }
  const std::vector<Index>& row_perm() const { return row_perm_; }
  const std::vector<Index>& col_perm() const { return col_perm_; }

private:
  GFVector row_shifts_;
  GFVector col_shifts_;
  std::vector<Index> row_perm_;
  std::vector<Index> col_perm_;
};

/// Throws std::invalid_argument on dimension or modulus mismatch.
GFMatrix apply_move(const GFMatrix& m, const EquivalenceMove& mv);

/// The shift-only move with apply_move(m, dephasing_move(m)) == dephase(m).
EquivalenceMove dephasing_move(const GFMatrix& m);

/// Dephased rank, which is the least rank in the equivalence class of m.
/// Throws std::invalid_argument if m is not log-Hadamard.
Index min_rank_in_class(const GFMatrix& m);

/// Matrix with entries +1 / -1.
class SignMatrix {
public:
  /// Throws std::invalid_argument on any entry other than +1 or -1.
  explicit SignMatrix(SignEntries entries);
  SignMatrix(std::initializer_list<std::initializer_list<int>> rows);

  Index rows() const { return h_.rows(); }
  Index cols() const { return h_.cols(); }
  int operator()(Index i, Index j) const { return h_(i, j); }
  const SignEntries& entries() const { return h_; }

  friend bool operator==(const SignMatrix& a, const SignMatrix& b) {
    return a.rows() == b.rows() && a.cols() == b.cols() && a.h_ == b.h_;
  }

private:
  SignEntries h_;
};

/// First pair of rows (i < j) whose integer dot product is nonzero, or a
/// pair of indices equal to the row count when the matrix is not square.
std::optional<std::pair<Index, Index>> find_non_orthogonal_rows(const SignMatrix& h);
inline bool is_hadamard(const SignMatrix& h) { return !find_non_orthogonal_rows(h).has_value(); }

/// Indicator of the -1 entries, over Z_2. With strict set, throws
/// std::invalid_argument naming the offending row pair (1-based) unless H H^T = nI.
GFMatrix from_sign_matrix(const SignMatrix& h, bool strict = false);

}  // namespace zpf
