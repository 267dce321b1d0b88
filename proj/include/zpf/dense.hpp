#pragma once

#include <cstdint>

#include <Eigen/Core>

namespace zpf {

/// Residues mod p are stored reduced, in [0, p).
using Residue = std::uint32_t;
using Index = Eigen::Index;

template <typename T>
using DenseMatrix = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

template <typename T>
using DenseVector = Eigen::Matrix<T, Eigen::Dynamic, 1>;

using ResidueMatrix = DenseMatrix<Residue>;
using ResidueVector = DenseVector<Residue>;
using SignEntries = DenseMatrix<std::int8_t>;

}  // namespace zpf
