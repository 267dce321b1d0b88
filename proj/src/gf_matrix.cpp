#include "zpf/gf_matrix.hpp"

#include <bit>
#include <limits>
#include <stdexcept>
#include <string>

namespace zpf {
namespace {

template <typename Derived>
void require_reduced(PrimeModulus p, const Eigen::DenseBase<Derived>& a) {
  if (a.size() > 0 && a.maxCoeff() >= p.value())
    throw std::invalid_argument("entry " + std::to_string(a.maxCoeff()) +
                                " is not reduced mod " + std::to_string(p.value()));
}

void require_same_modulus(PrimeModulus a, PrimeModulus b) {
  if (!(a == b)) throw std::invalid_argument("modulus mismatch");
}

}  // namespace

GFVector::GFVector(PrimeModulus p, ResidueVector entries) : p_(p), v_(std::move(entries)) {
  require_reduced(p_, v_);
}

GFVector::GFVector(PrimeModulus p, std::initializer_list<Residue> entries)
    : p_(p), v_(static_cast<Index>(entries.size())) {
  Index i = 0;
  for (Residue r : entries) v_[i++] = r;
  require_reduced(p_, v_);
}

GFVector GFVector::constant(PrimeModulus p, Index n, Residue value) {
  return GFVector(p, ResidueVector::Constant(n, value % p.value()));
}

GFVector operator+(const GFVector& a, const GFVector& b) {
  require_same_modulus(a.modulus(), b.modulus());
  if (a.size() != b.size()) throw std::invalid_argument("vector length mismatch");
  const PrimeModulus p = a.modulus();
  return GFVector(p, a.entries().binaryExpr(b.entries(), [p](Residue x, Residue y) { return p.add(x, y); }));
}

GFVector operator-(const GFVector& a, const GFVector& b) {
  require_same_modulus(a.modulus(), b.modulus());
  if (a.size() != b.size()) throw std::invalid_argument("vector length mismatch");
  const PrimeModulus p = a.modulus();
  return GFVector(p, a.entries().binaryExpr(b.entries(), [p](Residue x, Residue y) { return p.sub(x, y); }));
}

GFVector operator*(Residue scalar, const GFVector& v) {
  const PrimeModulus p = v.modulus();
  const Residue s = scalar % p.value();
  return GFVector(p, v.entries().unaryExpr([p, s](Residue x) { return p.mul(s, x); }));
}

GFMatrix::GFMatrix(PrimeModulus p, ResidueMatrix entries) : p_(p), a_(std::move(entries)) {
  require_reduced(p_, a_);
}

GFMatrix::GFMatrix(PrimeModulus p, std::initializer_list<std::initializer_list<Residue>> rows)
    : p_(p) {
  const Index m = static_cast<Index>(rows.size());
  const Index n = m == 0 ? 0 : static_cast<Index>(rows.begin()->size());
  a_.resize(m, n);
  Index i = 0;
  for (const auto& row : rows) {
    if (static_cast<Index>(row.size()) != n) throw std::invalid_argument("ragged matrix literal");
    Index j = 0;
    for (Residue r : row) a_(i, j++) = r;
    ++i;
  }
  require_reduced(p_, a_);
}

GFMatrix GFMatrix::zero(PrimeModulus p, Index rows, Index cols) {
  return GFMatrix(p, ResidueMatrix::Zero(rows, cols));
}

GFMatrix GFMatrix::identity(PrimeModulus p, Index n) {
  return GFMatrix(p, ResidueMatrix::Identity(n, n));
}

GFMatrix GFMatrix::from_rows(PrimeModulus p, const std::vector<GFVector>& rows) {
  const Index n = rows.empty() ? 0 : rows.front().size();
  ResidueMatrix a(static_cast<Index>(rows.size()), n);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    require_same_modulus(p, rows[i].modulus());
    if (rows[i].size() != n) throw std::invalid_argument("rows of unequal length");
    a.row(static_cast<Index>(i)) = rows[i].entries().transpose();
  }
  return GFMatrix(p, std::move(a));
}

GFVector GFMatrix::row(Index i) const { return GFVector(p_, a_.row(i).transpose()); }
GFVector GFMatrix::col(Index j) const { return GFVector(p_, a_.col(j)); }
GFMatrix GFMatrix::transpose() const { return GFMatrix(p_, a_.transpose()); }

GFMatrix multiply(const GFMatrix& a, const GFMatrix& b) {
  require_same_modulus(a.modulus(), b.modulus());
  if (a.cols() != b.rows()) throw std::invalid_argument("inner dimensions differ");
  const PrimeModulus p = a.modulus();
  const std::uint64_t q = p.value() - 1;
  const auto inner = static_cast<std::uint64_t>(std::max<Index>(a.cols(), 1));
  if (q == 0 || q * q <= std::numeric_limits<std::uint64_t>::max() / inner) {
    // Exact in 64 bits, reduce once at the end.
    const DenseMatrix<std::uint64_t> wide =
        a.entries().cast<std::uint64_t>() * b.entries().cast<std::uint64_t>();
    return GFMatrix(p, wide.unaryExpr([p](std::uint64_t x) {
                         return static_cast<Residue>(x % p.value());
                       }).cast<Residue>());
  }
  ResidueMatrix c = ResidueMatrix::Zero(a.rows(), b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index k = 0; k < a.cols(); ++k)
      for (Index j = 0; j < b.cols(); ++j)
        c(i, j) = p.add(c(i, j), p.mul(a(i, k), b(k, j)));
  return GFMatrix(p, std::move(c));
}

GFMatrix multiply_transposed(const GFMatrix& b, const GFMatrix& e) {
  return multiply(b, e.transpose());
}

RowEchelonForm row_reduce(const GFMatrix& m) {
  const PrimeModulus p = m.modulus();
  ResidueMatrix a = m.entries();
  std::vector<Index> pivots;
  Index r = 0;
  for (Index c = 0; c < a.cols() && r < a.rows(); ++c) {
    Index piv = r;
    while (piv < a.rows() && a(piv, c) == 0) ++piv;
    if (piv == a.rows()) continue;
    a.row(piv).swap(a.row(r));
    const Residue s = p.inv(a(r, c));
    for (Index j = c; j < a.cols(); ++j) a(r, j) = p.mul(a(r, j), s);
    for (Index i = 0; i < a.rows(); ++i) {
      if (i == r || a(i, c) == 0) continue;
      const Residue f = a(i, c);
      for (Index j = c; j < a.cols(); ++j) a(i, j) = p.sub(a(i, j), p.mul(f, a(r, j)));
    }
    pivots.push_back(c);
    ++r;
  }
  return {GFMatrix(p, std::move(a)), std::move(pivots)};
}

Index rank_generic(const GFMatrix& m) {
  const PrimeModulus p = m.modulus();
  ResidueMatrix a = m.entries();
  Index r = 0;
  for (Index c = 0; c < a.cols() && r < a.rows(); ++c) {
    Index piv = r;
    while (piv < a.rows() && a(piv, c) == 0) ++piv;
    if (piv == a.rows()) continue;
    a.row(piv).swap(a.row(r));
    const Residue s = p.inv(a(r, c));
    for (Index i = r + 1; i < a.rows(); ++i) {
      if (a(i, c) == 0) continue;
      const Residue f = p.mul(a(i, c), s);
      for (Index j = c; j < a.cols(); ++j) a(i, j) = p.sub(a(i, j), p.mul(f, a(r, j)));
    }
    ++r;
  }
  return r;
}

Index rank_gf2_packed(const GFMatrix& m) {
  if (m.modulus().value() != 2 || m.cols() > 64)
    throw std::invalid_argument("packed rank needs p = 2 and at most 64 columns");
  std::vector<std::uint64_t> rows(static_cast<std::size_t>(m.rows()), 0);
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j)
      if (m(i, j)) rows[i] |= std::uint64_t{1} << j;
  Index r = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const std::uint64_t v = rows[i];
    if (v == 0) continue;
    const std::uint64_t low = v & (~v + 1);
    for (std::size_t k = i + 1; k < rows.size(); ++k)
      if (rows[k] & low) rows[k] ^= v;
    ++r;
  }
  return r;
}

Index rank(const GFMatrix& m) {
  if (m.modulus().value() == 2 && m.cols() <= 64) return rank_gf2_packed(m);
  return rank_generic(m);
}

RankFactorization rank_factorization(const GFMatrix& m) {
  const PrimeModulus p = m.modulus();
  const RowEchelonForm ref = row_reduce(m);
  const auto r = static_cast<Index>(ref.pivots.size());
  ResidueMatrix left(m.rows(), r);
  for (Index k = 0; k < r; ++k) left.col(k) = m.entries().col(ref.pivots[k]);
  ResidueMatrix right = ref.reduced.entries().topRows(r).transpose();
  return {GFMatrix(p, std::move(left)), GFMatrix(p, std::move(right))};
}

}  // namespace zpf
