#pragma once

#include <initializer_list>
#include <vector>

#include "zpf/dense.hpp"
#include "zpf/modulus.hpp"

namespace zpf {

/// Immutable vector over Z_p.
class GFVector {
public:
  /// Throws std::invalid_argument if an entry is not reduced mod p.
  GFVector(PrimeModulus p, ResidueVector entries);
  GFVector(PrimeModulus p, std::initializer_list<Residue> entries);
  static GFVector constant(PrimeModulus p, Index n, Residue value);

  PrimeModulus modulus() const { return p_; }
  Index size() const { return v_.size(); }
  Residue operator[](Index i) const { return v_[i]; }
  const ResidueVector& entries() const { return v_; }

  friend bool operator==(const GFVector& a, const GFVector& b) {
    return a.p_ == b.p_ && a.v_.size() == b.v_.size() && a.v_ == b.v_;
  }

private:
  PrimeModulus p_;
  ResidueVector v_;
};

GFVector operator+(const GFVector& a, const GFVector& b);
GFVector operator-(const GFVector& a, const GFVector& b);
GFVector operator*(Residue scalar, const GFVector& v);

/// Dense m x n matrix over Z_p with entries stored reduced.
///
/// Zero-sized matrices are allowed here (they represent an empty inner
/// dimension); the text format only admits positive sizes.
class GFMatrix {
public:
  /// Throws std::invalid_argument if an entry is not reduced mod p.
  GFMatrix(PrimeModulus p, ResidueMatrix entries);
  GFMatrix(PrimeModulus p, std::initializer_list<std::initializer_list<Residue>> rows);
  static GFMatrix zero(PrimeModulus p, Index rows, Index cols);
  static GFMatrix identity(PrimeModulus p, Index n);
  /// Stacks equal-length vectors as rows.
  static GFMatrix from_rows(PrimeModulus p, const std::vector<GFVector>& rows);

  PrimeModulus modulus() const { return p_; }
  Index rows() const { return a_.rows(); }
  Index cols() const { return a_.cols(); }
  bool square() const { return rows() == cols(); }
  Residue operator()(Index i, Index j) const { return a_(i, j); }
  const ResidueMatrix& entries() const { return a_; }

  GFVector row(Index i) const;
  GFVector col(Index j) const;
  GFMatrix transpose() const;

  friend bool operator==(const GFMatrix& a, const GFMatrix& b) {
    return a.p_ == b.p_ && a.rows() == b.rows() && a.cols() == b.cols() && a.a_ == b.a_;
  }

private:
  PrimeModulus p_;
  ResidueMatrix a_;
};

/// A * B mod p. Throws std::invalid_argument on shape or modulus mismatch.
GFMatrix multiply(const GFMatrix& a, const GFMatrix& b);
/// B * E^T mod p, the product a rank factorization multiplies back to.
GFMatrix multiply_transposed(const GFMatrix& b, const GFMatrix& e);

struct RowEchelonForm {
  GFMatrix reduced;           // reduced row-echelon form, zero rows last
  std::vector<Index> pivots;  // pivot column of each nonzero row, ascending
};

/// Gauss-Jordan elimination with modular-inverse pivot scaling.
RowEchelonForm row_reduce(const GFMatrix& m);

/// Row rank over Z_p. Uses the bit-packed path when p = 2 and n <= 64.
Index rank(const GFMatrix& m);
/// Forward elimination on residues; valid for every p.
Index rank_generic(const GFMatrix& m);
/// Elimination on rows packed into 64-bit words. Requires p = 2, n <= 64.
Index rank_gf2_packed(const GFMatrix& m);

/// M = left * right^T with inner dimension rank(M).
///
/// Built as the CR factorization: `left` holds the pivot columns of M and
/// `right` the transposed nonzero rows of rref(M). A zero input yields
/// factors with no columns and is_zero() set.
struct RankFactorization {
  GFMatrix left;   // m x r
  GFMatrix right;  // n x r

  Index inner_dimension() const { return left.cols(); }
  bool is_zero() const { return inner_dimension() == 0; }
};

RankFactorization rank_factorization(const GFMatrix& m);

}  // namespace zpf
