#pragma once

#include <cstdint>
#include <vector>

#include "zpf/gf_matrix.hpp"
#include "zpf/modulus.hpp"

namespace zpf {

/// Index of a point of Z_p^d in mixed radix, most significant coordinate
/// first, so numeric order is lexicographic order of coordinates.
using PointCode = std::uint32_t;
using Coords = std::vector<Residue>;

/// The group Z_p^d with its elements enumerated 0 .. p^d - 1.
class Ambient {
public:
  static constexpr std::uint64_t kMaxOrder = std::uint64_t{1} << 31;

  /// Throws std::invalid_argument if d < 1 or p^d exceeds kMaxOrder.
  Ambient(PrimeModulus p, int d);

  PrimeModulus modulus() const { return p_; }
  int dimension() const { return d_; }
  std::uint64_t order() const { return order_; }

  /// Throws std::invalid_argument on wrong length or unreduced coordinate.
  PointCode encode(const Coords& x) const;
  Coords decode(PointCode c) const;
  Residue coord(PointCode c, int i) const;

  PointCode add(PointCode a, PointCode b) const;
  PointCode sub(PointCode a, PointCode b) const;
  Residue dot(PointCode a, PointCode b) const;

  /// Digit-wise arithmetic regardless of p; the p = 2 fast paths above must
  /// agree with these.
  PointCode add_generic(PointCode a, PointCode b) const;
  PointCode sub_generic(PointCode a, PointCode b) const;
  Residue dot_generic(PointCode a, PointCode b) const;

  friend bool operator==(const Ambient& a, const Ambient& b) {
    return a.p_ == b.p_ && a.d_ == b.d_;
  }

private:
  PrimeModulus p_;
  int d_;
  std::uint64_t order_;
  std::vector<PointCode> place_;  // p^(d-1-i) for coordinate i
};

/// A nonempty finite set of distinct points of Z_p^d. Keeps the order the
/// points were given in; equality compares as sets.
class PointSet {
public:
  /// Throws std::invalid_argument on empty input, out-of-range codes or
  /// duplicates.
  PointSet(Ambient ambient, std::vector<PointCode> points);
  static PointSet from_coords(Ambient ambient, const std::vector<Coords>& points);

  const Ambient& ambient() const { return ambient_; }
  std::size_t size() const { return points_.size(); }
  const std::vector<PointCode>& points() const { return points_; }
  const std::vector<PointCode>& sorted() const { return sorted_; }
  bool contains(PointCode c) const;
  std::vector<Coords> coords() const;

  PointSet translate(PointCode shift) const;
  /// {A x : x in E} for a d x d matrix A acting on column vectors.
  PointSet linear_image(const GFMatrix& a) const;

  friend bool operator==(const PointSet& a, const PointSet& b) {
    return a.ambient_ == b.ambient_ && a.sorted_ == b.sorted_;
  }

private:
  Ambient ambient_;
  std::vector<PointCode> points_;
  std::vector<PointCode> sorted_;
};

}  // namespace zpf
