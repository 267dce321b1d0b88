#include "zpf/log_hadamard.hpp"

#include <stdexcept>
#include <string>

namespace zpf {

bool is_equidistributed(PrimeModulus p, const ResidueVector& v) {
  const auto n = static_cast<std::size_t>(v.size());
  const Residue q = p.value();
  if (n == 0 || n % q != 0) return false;
  std::vector<std::size_t> count(q, 0);
  const std::size_t target = n / q;
  for (Index i = 0; i < v.size(); ++i)
    if (++count[v[i]] > target) return false;
  return true;
}

bool is_equidistributed(const GFVector& v) { return is_equidistributed(v.modulus(), v.entries()); }

namespace {

std::optional<std::pair<Index, Index>> first_unbalanced_pair(PrimeModulus p, const ResidueMatrix& a) {
  ResidueVector diff(a.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = i + 1; j < a.rows(); ++j) {
      for (Index c = 0; c < a.cols(); ++c) diff[c] = p.sub(a(i, c), a(j, c));
      if (!is_equidistributed(p, diff)) return std::pair{i, j};
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<std::pair<Index, Index>> find_unbalanced_rows(const GFMatrix& m) {
  return first_unbalanced_pair(m.modulus(), m.entries());
}

bool is_log_hadamard(const GFMatrix& m) {
  return m.square() && !first_unbalanced_pair(m.modulus(), m.entries());
}

bool is_log_hadamard_by_columns(const GFMatrix& m) {
  return m.square() && !first_unbalanced_pair(m.modulus(), m.entries().transpose());
}

bool is_dephased(const GFMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return true;
  return m.entries().row(0).maxCoeff() == 0 && m.entries().col(0).maxCoeff() == 0;
}

GFMatrix dephase(const GFMatrix& m) {
  const PrimeModulus p = m.modulus();
  ResidueMatrix a = m.entries();
  if (a.rows() == 0 || a.cols() == 0) return m;
  for (Index i = 1; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j) a(i, j) = p.sub(a(i, j), a(0, j));
  a.row(0).setZero();
  for (Index j = 1; j < a.cols(); ++j)
    for (Index i = 0; i < a.rows(); ++i) a(i, j) = p.sub(a(i, j), a(i, 0));
  a.col(0).setZero();
  return GFMatrix(p, std::move(a));
}

namespace {

void require_permutation(const std::vector<Index>& perm, const char* what) {
  std::vector<bool> seen(perm.size(), false);
  for (Index k : perm) {
    if (k < 0 || static_cast<std::size_t>(k) >= perm.size() || seen[k])
      throw std::invalid_argument(std::string(what) + " is not a permutation");
    seen[k] = true;
  }
}

std::vector<Index> iota_perm(Index n) {
  std::vector<Index> perm(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) perm[i] = i;
  return perm;
}

}  // namespace

EquivalenceMove::EquivalenceMove(GFVector row_shifts, GFVector col_shifts,
                                 std::vector<Index> row_perm, std::vector<Index> col_perm)
    : row_shifts_(std::move(row_shifts)),
      col_shifts_(std::move(col_shifts)),
      row_perm_(std::move(row_perm)),
      col_perm_(std::move(col_perm)) {
  if (!(row_shifts_.modulus() == col_shifts_.modulus()))
    throw std::invalid_argument("row and column shifts use different moduli");
  if (static_cast<std::size_t>(row_shifts_.size()) != row_perm_.size() ||
      static_cast<std::size_t>(col_shifts_.size()) != col_perm_.size())
    throw std::invalid_argument("shift vector length differs from permutation length");
  require_permutation(row_perm_, "row_perm");
  require_permutation(col_perm_, "col_perm");
}

EquivalenceMove EquivalenceMove::identity(PrimeModulus p, Index rows, Index cols) {
  return EquivalenceMove(GFVector::constant(p, rows, 0), GFVector::constant(p, cols, 0),
                         iota_perm(rows), iota_perm(cols));
}

GFMatrix apply_move(const GFMatrix& m, const EquivalenceMove& mv) {
  const PrimeModulus p = m.modulus();
  if (!(p == mv.row_shifts().modulus()))
    throw std::invalid_argument("move and matrix use different moduli");
  if (static_cast<Index>(mv.row_perm().size()) != m.rows() ||
      static_cast<Index>(mv.col_perm().size()) != m.cols())
    throw std::invalid_argument("move dimensions do not match the matrix");
  ResidueMatrix out(m.rows(), m.cols());
  for (Index r = 0; r < m.rows(); ++r) {
    const Residue rs = mv.row_shifts()[r];
    for (Index c = 0; c < m.cols(); ++c)
      out(mv.row_perm()[r], mv.col_perm()[c]) = p.add(p.add(m(r, c), rs), mv.col_shifts()[c]);
  }
  return GFMatrix(p, std::move(out));
}

EquivalenceMove dephasing_move(const GFMatrix& m) {
  const PrimeModulus p = m.modulus();
  ResidueVector rows(m.rows());
  ResidueVector cols(m.cols());
  if (m.rows() > 0 && m.cols() > 0) {
    for (Index i = 0; i < m.rows(); ++i) rows[i] = p.sub(m(0, 0), m(i, 0));
    for (Index j = 0; j < m.cols(); ++j) cols[j] = p.neg(m(0, j));
  }
  return EquivalenceMove(GFVector(p, rows), GFVector(p, cols), iota_perm(m.rows()),
                         iota_perm(m.cols()));
}

Index min_rank_in_class(const GFMatrix& m) {
  if (!is_log_hadamard(m)) throw std::invalid_argument("matrix is not log-Hadamard");
  return rank(dephase(m));
}

SignMatrix::SignMatrix(SignEntries entries) : h_(std::move(entries)) {
  for (Index i = 0; i < h_.rows(); ++i)
    for (Index j = 0; j < h_.cols(); ++j)
      if (h_(i, j) != 1 && h_(i, j) != -1)
        throw std::invalid_argument("sign matrix entry (" + std::to_string(i) + ", " +
                                    std::to_string(j) + ") is not +1 or -1");
}

namespace {

SignEntries sign_literal(std::initializer_list<std::initializer_list<int>> rows) {
  const Index m = static_cast<Index>(rows.size());
  const Index n = m == 0 ? 0 : static_cast<Index>(rows.begin()->size());
  SignEntries h(m, n);
  Index i = 0;
  for (const auto& row : rows) {
    if (static_cast<Index>(row.size()) != n) throw std::invalid_argument("ragged sign literal");
    Index j = 0;
    for (int s : row) h(i, j++) = static_cast<std::int8_t>(s);
    ++i;
  }
  return h;
}

}  // namespace

SignMatrix::SignMatrix(std::initializer_list<std::initializer_list<int>> rows)
    : SignMatrix(sign_literal(rows)) {}

std::optional<std::pair<Index, Index>> find_non_orthogonal_rows(const SignMatrix& h) {
  if (h.rows() != h.cols()) return std::pair{h.rows(), h.rows()};
  const DenseMatrix<int> wide = h.entries().cast<int>();
  for (Index i = 0; i < h.rows(); ++i)
    for (Index j = i + 1; j < h.rows(); ++j)
      if (wide.row(i).dot(wide.row(j)) != 0) return std::pair{i, j};
  return std::nullopt;
}

GFMatrix from_sign_matrix(const SignMatrix& h, bool strict) {
  if (strict) {
    if (auto bad = find_non_orthogonal_rows(h)) {
      if (bad->first == h.rows())
        throw std::invalid_argument("sign matrix is not square");
      throw std::invalid_argument("rows " + std::to_string(bad->first + 1) + " and " +
                                  std::to_string(bad->second + 1) + " are not orthogonal");
    }
  }
  const ResidueMatrix a = h.entries().unaryExpr([](std::int8_t s) -> Residue { return s < 0 ? 1 : 0; });
  return GFMatrix(PrimeModulus(2), a);
}

}  // namespace zpf
