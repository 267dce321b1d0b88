#include "zpf/group.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>

namespace zpf {

Ambient::Ambient(PrimeModulus p, int d) : p_(p), d_(d), order_(1) {
  if (d < 1) throw std::invalid_argument("dimension must be positive");
  for (int i = 0; i < d; ++i) {
    order_ *= p.value();
    if (order_ > kMaxOrder)
      throw std::invalid_argument("group Z_" + std::to_string(p.value()) + "^" +
                                  std::to_string(d) + " is too large");
  }
  place_.resize(static_cast<std::size_t>(d));
  PointCode w = 1;
  for (int i = d - 1; i >= 0; --i) {
    place_[i] = w;
    w *= p.value();
  }
}

PointCode Ambient::encode(const Coords& x) const {
  if (static_cast<int>(x.size()) != d_)
    throw std::invalid_argument("point has " + std::to_string(x.size()) + " coordinates, expected " +
                                std::to_string(d_));
  PointCode c = 0;
  for (int i = 0; i < d_; ++i) {
    if (x[i] >= p_.value())
      throw std::invalid_argument("coordinate " + std::to_string(x[i]) + " is not reduced mod " +
                                  std::to_string(p_.value()));
    c += x[i] * place_[i];
  }
  return c;
}

Residue Ambient::coord(PointCode c, int i) const { return (c / place_[i]) % p_.value(); }

Coords Ambient::decode(PointCode c) const {
  Coords x(static_cast<std::size_t>(d_));
  for (int i = 0; i < d_; ++i) x[i] = coord(c, i);
  return x;
}

PointCode Ambient::add_generic(PointCode a, PointCode b) const {
  PointCode c = 0;
  for (int i = 0; i < d_; ++i) c += p_.add(coord(a, i), coord(b, i)) * place_[i];
  return c;
}

PointCode Ambient::sub_generic(PointCode a, PointCode b) const {
  PointCode c = 0;
  for (int i = 0; i < d_; ++i) c += p_.sub(coord(a, i), coord(b, i)) * place_[i];
  return c;
}

Residue Ambient::dot_generic(PointCode a, PointCode b) const {
  Residue s = 0;
  for (int i = 0; i < d_; ++i) s = p_.add(s, p_.mul(coord(a, i), coord(b, i)));
  return s;
}

PointCode Ambient::add(PointCode a, PointCode b) const {
  return p_.value() == 2 ? a ^ b : add_generic(a, b);
}

PointCode Ambient::sub(PointCode a, PointCode b) const {
  return p_.value() == 2 ? a ^ b : sub_generic(a, b);
}

Residue Ambient::dot(PointCode a, PointCode b) const {
  return p_.value() == 2 ? static_cast<Residue>(std::popcount(a & b) & 1) : dot_generic(a, b);
}

PointSet::PointSet(Ambient ambient, std::vector<PointCode> points)
    : ambient_(std::move(ambient)), points_(std::move(points)), sorted_(points_) {
  if (points_.empty()) throw std::invalid_argument("point set is empty");
  std::sort(sorted_.begin(), sorted_.end());
  if (sorted_.back() >= ambient_.order()) throw std::invalid_argument("point outside the group");
  auto dup = std::adjacent_find(sorted_.begin(), sorted_.end());
  if (dup != sorted_.end()) {
    std::string s;
    for (Residue r : ambient_.decode(*dup)) s += (s.empty() ? "" : " ") + std::to_string(r);
    throw std::invalid_argument("duplicate point (" + s + ")");
  }
}

PointSet PointSet::from_coords(Ambient ambient, const std::vector<Coords>& points) {
  std::vector<PointCode> codes;
  codes.reserve(points.size());
  for (const auto& x : points) codes.push_back(ambient.encode(x));
  return PointSet(std::move(ambient), std::move(codes));
}

bool PointSet::contains(PointCode c) const {
  return std::binary_search(sorted_.begin(), sorted_.end(), c);
}

std::vector<Coords> PointSet::coords() const {
  std::vector<Coords> out;
  out.reserve(points_.size());
  for (PointCode c : points_) out.push_back(ambient_.decode(c));
  return out;
}

PointSet PointSet::translate(PointCode shift) const {
  std::vector<PointCode> out;
  out.reserve(points_.size());
  for (PointCode c : points_) out.push_back(ambient_.add(c, shift));
  return PointSet(ambient_, std::move(out));
}

PointSet PointSet::linear_image(const GFMatrix& a) const {
  const int d = ambient_.dimension();
  if (a.rows() != d || a.cols() != d || !(a.modulus() == ambient_.modulus()))
    throw std::invalid_argument("linear map does not act on this ambient");
  const PrimeModulus p = ambient_.modulus();
  std::vector<PointCode> out;
  out.reserve(points_.size());
  for (PointCode c : points_) {
    const Coords x = ambient_.decode(c);
    Coords y(static_cast<std::size_t>(d), 0);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) y[i] = p.add(y[i], p.mul(a(i, j), x[j]));
    out.push_back(ambient_.encode(y));
  }
  // Duplicates here mean the map was singular on E.
  return PointSet(ambient_, std::move(out));
}

}  // namespace zpf
