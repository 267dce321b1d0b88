#include "zpf/reference.hpp"

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <set>
#include <stdexcept>

namespace zpf::reference {

namespace {

std::complex<double> root_sum(std::uint64_t p, const std::vector<std::uint64_t>& exponents) {
  std::complex<double> s = 0;
  for (std::uint64_t k : exponents)
    s += std::polar(1.0, 2 * std::numbers::pi * static_cast<double>(k % p) / static_cast<double>(p));
  return s;
}

std::vector<Coords> all_points(std::uint64_t p, int d) {
  std::vector<Coords> out{Coords(d, 0)};
  for (int i = d - 1; i >= 0; --i) {
    std::vector<Coords> next;
    for (const Coords& x : out)
      for (Residue v = 0; v < p; ++v) {
        Coords y = x;
        y[i] = v;
        next.push_back(y);
      }
    out = std::move(next);
  }
  return out;
}

// Calls f on every k-subset of pts[1..] together with pts[0], stopping
// when f returns true.
bool any_subset_with_first(const std::vector<Coords>& pts, std::size_t k,
                           const std::function<bool(const std::vector<Coords>&)>& f) {
  std::vector<Coords> chosen{pts[0]};
  std::function<bool(std::size_t)> rec = [&](std::size_t from) {
    if (chosen.size() == k) return f(chosen);
    for (std::size_t i = from; i < pts.size(); ++i) {
      chosen.push_back(pts[i]);
      if (rec(i + 1)) return true;
      chosen.pop_back();
    }
    return false;
  };
  return rec(1);
}

}  // namespace

bool is_spectrum(std::uint64_t p, const std::vector<Coords>& e, const std::vector<Coords>& l) {
  if (l.size() != e.size()) return false;
  for (std::size_t a = 0; a < l.size(); ++a)
    for (std::size_t b = 0; b < l.size(); ++b) {
      if (a == b) continue;
      std::vector<std::uint64_t> ex;
      for (const Coords& x : e) {
        std::uint64_t s = 0;
        for (std::size_t i = 0; i < x.size(); ++i) s += (l[a][i] + p - l[b][i]) % p * x[i];
        ex.push_back(s);
      }
      if (std::abs(root_sum(p, ex)) > 1e-9) return false;
    }
  return true;
}

bool spectral(const PointSet& e) {
  const std::uint64_t p = e.ambient().modulus().value();
  const std::vector<Coords> pts = all_points(p, e.ambient().dimension());
  const std::vector<Coords> ec = e.coords();
  return any_subset_with_first(pts, ec.size(), [&](const std::vector<Coords>& l) { return is_spectrum(p, ec, l); });
}

bool tiles(const PointSet& e) {
  const std::uint64_t p = e.ambient().modulus().value();
  const std::vector<Coords> pts = all_points(p, e.ambient().dimension());
  if (pts.size() % e.size() != 0) return false;
  const std::vector<Coords> ec = e.coords();
  return any_subset_with_first(pts, pts.size() / e.size(), [&](const std::vector<Coords>& t) {
    std::set<Coords> covered;
    for (const Coords& a : ec)
      for (const Coords& b : t) {
        Coords s(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) s[i] = (a[i] + b[i]) % p;
        if (!covered.insert(s).second) return false;
      }
    return true;
  });
}

Index span_rank(const GFMatrix& m) {
  const std::uint64_t p = m.modulus().value();
  double log_combos = static_cast<double>(m.rows()) * std::log2(static_cast<double>(p));
  if (log_combos > 22) throw std::invalid_argument("span too large to enumerate");
  std::set<std::vector<std::uint64_t>> span{std::vector<std::uint64_t>(m.cols(), 0)};
  for (Index i = 0; i < m.rows(); ++i) {
    std::set<std::vector<std::uint64_t>> next;
    for (const auto& v : span)
      for (std::uint64_t c = 0; c < p; ++c) {
        auto w = v;
        for (Index j = 0; j < m.cols(); ++j) w[j] = (w[j] + c * m(i, j)) % p;
        next.insert(std::move(w));
      }
    span = std::move(next);
  }
  Index r = 0;
  for (std::size_t n = span.size(); n > 1; n /= p) ++r;
  return r;
}

bool is_log_hadamard(const GFMatrix& m) {
  if (m.rows() != m.cols()) return false;
  const std::uint64_t p = m.modulus().value();
  for (Index a = 0; a < m.rows(); ++a)
    for (Index b = a + 1; b < m.rows(); ++b) {
      std::vector<std::uint64_t> ex;
      for (Index j = 0; j < m.cols(); ++j) ex.push_back(m(a, j) + p - m(b, j));
      if (std::abs(root_sum(p, ex)) > 1e-9) return false;
    }
  return true;
}

}  // namespace zpf::reference
