#include "zpf/fuglede.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "zpf/gf_matrix.hpp"
#include "zpf/log_hadamard.hpp"

namespace zpf {
namespace {

void check_universe(const Ambient& g, const SearchLimits& limits) {
  if (g.order() > limits.universe_bound)
    throw BudgetExceeded("group order " + std::to_string(g.order()) + " exceeds the universe bound " +
                         std::to_string(limits.universe_bound));
}

bool over_budget(std::uint64_t nodes, const SearchLimits& limits) {
  return limits.node_budget != 0 && nodes > limits.node_budget;
}

class Bitset {
public:
  explicit Bitset(std::uint64_t n) : words_((n + 63) / 64, 0) {}
  bool test(std::uint64_t i) const { return (words_[i >> 6] >> (i & 63)) & 1; }
  void set(std::uint64_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(std::uint64_t i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  /// Least clear bit at or after `from`, or `limit` if none.
  std::uint64_t next_clear(std::uint64_t from, std::uint64_t limit) const {
    for (std::uint64_t w = from >> 6; w < words_.size(); ++w) {
      std::uint64_t free = ~words_[w];
      if (w == (from >> 6)) free &= ~std::uint64_t{0} << (from & 63);
      if (free) return std::min<std::uint64_t>(limit, w * 64 + std::countr_zero(free));
    }
    return limit;
  }

private:
  std::vector<std::uint64_t> words_;
};

bool is_power_of(std::uint64_t n, std::uint64_t p, int* exponent = nullptr) {
  int k = 0;
  while (n % p == 0) {
    n /= p;
    ++k;
  }
  if (exponent) *exponent = k;
  return n == 1;
}

}  // namespace

SearchOutcome<TilingCertificate> search_tiling(const PointSet& e, const SearchLimits& limits) {
  const Ambient& g = e.ambient();
  check_universe(g, limits);
  SearchOutcome<TilingCertificate> out;
  const std::uint64_t n = g.order();
  if (n % e.size() != 0) return out;

  const std::vector<PointCode>& pts = e.sorted();
  Bitset covered(n);
  std::uint64_t covered_count = 0;

  auto fits = [&](PointCode t) {
    for (PointCode x : pts)
      if (covered.test(g.add(x, t))) return false;
    return true;
  };
  auto place = [&](PointCode t, bool on) {
    for (PointCode x : pts) {
      const PointCode y = g.add(x, t);
      if (on) covered.set(y); else covered.reset(y);
    }
    covered_count = on ? covered_count + pts.size() : covered_count - pts.size();
  };

  struct Frame {
    PointCode target;  // least uncovered element when the frame was opened
    std::size_t next = 0;
    bool placed = false;
    PointCode shift = 0;
  };
  std::vector<Frame> stack;
  stack.push_back({0});
  while (!stack.empty()) {
    Frame& f = stack.back();
    if (f.placed) {
      place(f.shift, false);
      f.placed = false;
    }
    while (f.next < pts.size()) {
      const PointCode t = g.sub(f.target, pts[f.next++]);
      if (fits(t)) {
        place(t, true);
        f.placed = true;
        f.shift = t;
        break;
      }
    }
    if (!f.placed) {
      stack.pop_back();
      continue;
    }
    if (over_budget(++out.nodes, limits)) {
      out.complete = false;
      return out;
    }
    if (covered_count == n) {
      std::vector<PointCode> shifts;
      shifts.reserve(stack.size());
      for (const Frame& s : stack) shifts.push_back(s.shift);
      out.certificate = TilingCertificate{PointSet(g, std::move(shifts))};
      return out;
    }
    const auto next = static_cast<PointCode>(covered.next_clear(f.target, n));
    stack.push_back({next});
  }
  return out;
}

std::optional<TilingCertificate> tiles(const PointSet& e, const SearchLimits& limits) {
  auto out = search_tiling(e, limits);
  if (!out.complete) throw BudgetExceeded("tiling search exceeded its node budget");
  return std::move(out.certificate);
}

std::vector<PointCode> difference_set(const PointSet& e, const SearchLimits& limits) {
  const Ambient& g = e.ambient();
  check_universe(g, limits);
  const Residue p = g.modulus().value();
  std::vector<PointCode> out;
  if (e.size() % p != 0) return out;
  const std::size_t target = e.size() / p;
  std::vector<std::size_t> count(p);
  for (std::uint64_t m = 1; m < g.order(); ++m) {
    std::fill(count.begin(), count.end(), 0);
    bool ok = true;
    for (PointCode x : e.sorted()) {
      if (++count[g.dot(static_cast<PointCode>(m), x)] > target) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(static_cast<PointCode>(m));
  }
  return out;
}

SearchOutcome<SpectrumCertificate> search_spectrum(const PointSet& e, const SearchLimits& limits) {
  const Ambient& g = e.ambient();
  check_universe(g, limits);
  SearchOutcome<SpectrumCertificate> out;
  const std::size_t want = e.size();
  if (want == 1) {
    out.certificate = SpectrumCertificate{PointSet(g, {0})};
    return out;
  }
  const std::vector<PointCode> diffs = difference_set(e, limits);
  if (diffs.size() + 1 < want) return out;
  Bitset connected(g.order());
  for (PointCode m : diffs) connected.set(m);

  // Depth-first over cliques containing 0; level i holds the candidates that
  // extend the current clique of size i + 1.
  struct Level {
    std::vector<PointCode> cand;
    std::size_t next = 0;
  };
  std::vector<PointCode> clique{0};
  std::vector<Level> levels;
  levels.push_back({diffs});
  while (!levels.empty()) {
    Level& lv = levels.back();
    // The clique holds 0 plus one vertex per level below this one.
    clique.resize(levels.size());
    if (lv.next >= lv.cand.size() || clique.size() + (lv.cand.size() - lv.next) < want) {
      levels.pop_back();
      continue;
    }
    const PointCode v = lv.cand[lv.next++];
    if (over_budget(++out.nodes, limits)) {
      out.complete = false;
      return out;
    }
    clique.push_back(v);
    if (clique.size() == want) {
      out.certificate = SpectrumCertificate{PointSet(g, clique)};
      return out;
    }
    Level child;
    child.cand.reserve(lv.cand.size() - lv.next);
    for (std::size_t i = lv.next; i < lv.cand.size(); ++i)
      if (connected.test(g.sub(lv.cand[i], v))) child.cand.push_back(lv.cand[i]);
    if (clique.size() + child.cand.size() >= want) levels.push_back(std::move(child));
  }
  return out;
}

std::optional<SpectrumCertificate> spectral(const PointSet& e, const SearchLimits& limits) {
  auto out = search_spectrum(e, limits);
  if (!out.complete) throw BudgetExceeded("spectrum search exceeded its node budget");
  return std::move(out.certificate);
}

namespace {

PointCode unit_vector(const Ambient& g, int i) {
  Coords x(static_cast<std::size_t>(g.dimension()), 0);
  x[i] = 1;
  return g.encode(x);
}

// Calls visit(pivots, basis rows) for every reduced echelon basis of a
// w-dimensional subspace of Z_p^d, until visit returns true.
template <typename Visit>
bool for_each_subspace(const Ambient& g, int w, Visit&& visit) {
  const int d = g.dimension();
  const Residue p = g.modulus().value();
  std::vector<int> piv(static_cast<std::size_t>(w));
  for (int i = 0; i < w; ++i) piv[i] = i;
  while (true) {
    std::vector<bool> is_pivot(static_cast<std::size_t>(d), false);
    for (int c : piv) is_pivot[c] = true;
    // Free cells: row i, column c > piv[i], c not a pivot column.
    std::vector<std::pair<int, int>> free;
    for (int i = 0; i < w; ++i)
      for (int c = piv[i] + 1; c < d; ++c)
        if (!is_pivot[c]) free.emplace_back(i, c);
    std::vector<Residue> digits(free.size(), 0);
    while (true) {
      std::vector<Coords> rows(static_cast<std::size_t>(w), Coords(static_cast<std::size_t>(d), 0));
      for (int i = 0; i < w; ++i) rows[i][piv[i]] = 1;
      for (std::size_t k = 0; k < free.size(); ++k) rows[free[k].first][free[k].second] = digits[k];
      if (visit(piv, rows)) return true;
      std::size_t k = 0;
      while (k < digits.size() && ++digits[k] == p) digits[k++] = 0;
      if (k == digits.size()) break;
    }
    // Next pivot combination in lexicographic order.
    int i = w - 1;
    while (i >= 0 && piv[i] == d - w + i) --i;
    if (i < 0) return false;
    ++piv[i];
    for (int j = i + 1; j < w; ++j) piv[j] = piv[j - 1] + 1;
  }
}

}  // namespace

std::optional<GraphWitness> graph_on_subspace(const PointSet& e, const SearchLimits& limits) {
  const Ambient& g = e.ambient();
  check_universe(g, limits);
  const PrimeModulus p = g.modulus();
  const int d = g.dimension();
  int k = 0;
  if (!is_power_of(e.size(), p.value(), &k) || k > d) return std::nullopt;
  const int w = d - k;

  const std::vector<Coords> pts = e.coords();
  std::optional<GraphWitness> found;
  std::vector<PointCode> images(pts.size());
  for_each_subspace(g, w, [&](const std::vector<int>& piv, const std::vector<Coords>& rows) {
    // Projection along W onto the coordinate subspace of non-pivot columns.
    for (std::size_t n = 0; n < pts.size(); ++n) {
      Coords y = pts[n];
      for (int i = 0; i < w; ++i) {
        const Residue f = y[piv[i]];
        if (f == 0) continue;
        for (int c = 0; c < d; ++c) y[c] = p.sub(y[c], p.mul(f, rows[i][c]));
      }
      images[n] = g.encode(y);
    }
    std::sort(images.begin(), images.end());
    if (std::adjacent_find(images.begin(), images.end()) != images.end()) return false;
    GraphWitness wit;
    std::vector<bool> is_pivot(static_cast<std::size_t>(d), false);
    for (int c : piv) is_pivot[c] = true;
    for (int c = 0; c < d; ++c)
      if (!is_pivot[c]) wit.subspace_basis.push_back(unit_vector(g, c));
    for (const Coords& r : rows) wit.complement_basis.push_back(g.encode(r));
    found = std::move(wit);
    return true;
  });
  return found;
}

bool verify_spectrum(const PointSet& e, const PointSet& exponents) {
  if (!(e.ambient() == exponents.ambient()))
    throw std::invalid_argument("point sets live in different groups");
  if (exponents.size() != e.size()) return false;
  const Ambient& g = e.ambient();
  const std::vector<PointCode>& lam = exponents.points();
  ResidueVector pairing(static_cast<Index>(e.size()));
  for (std::size_t i = 0; i < lam.size(); ++i) {
    for (std::size_t j = i + 1; j < lam.size(); ++j) {
      const PointCode m = g.sub_generic(lam[i], lam[j]);
      for (std::size_t k = 0; k < e.size(); ++k)
        pairing[static_cast<Index>(k)] = g.dot_generic(m, e.points()[k]);
      if (!is_equidistributed(g.modulus(), pairing)) return false;
    }
  }
  return true;
}

bool verify_tiling(const PointSet& e, const PointSet& translations) {
  if (!(e.ambient() == translations.ambient()))
    throw std::invalid_argument("point sets live in different groups");
  const Ambient& g = e.ambient();
  if (std::uint64_t{e.size()} * translations.size() != g.order()) return false;
  std::vector<std::uint8_t> hit(g.order(), 0);
  for (PointCode t : translations.points())
    for (PointCode x : e.points())
      if (hit[g.add_generic(x, t)]++) return false;
  return true;
}

bool verify_graph_witness(const PointSet& e, const GraphWitness& w) {
  const Ambient& g = e.ambient();
  const PrimeModulus p = g.modulus();
  const int d = g.dimension();
  const auto dim_v = static_cast<Index>(w.subspace_basis.size());
  if (dim_v + static_cast<Index>(w.complement_basis.size()) != d) return false;
  std::uint64_t cosets = 1;
  for (Index i = 0; i < dim_v; ++i) cosets *= p.value();
  if (cosets != e.size()) return false;

  // Columns: basis of V, basis of W, then the points of E. Reducing gives the
  // coordinates of each point in the combined basis.
  ResidueMatrix aug(d, d + static_cast<Index>(e.size()));
  Index col = 0;
  for (const auto* basis : {&w.subspace_basis, &w.complement_basis})
    for (PointCode b : *basis) {
      if (b >= g.order()) return false;
      const Coords x = g.decode(b);
      for (int i = 0; i < d; ++i) aug(i, col) = x[i];
      ++col;
    }
  for (PointCode c : e.points()) {
    const Coords x = g.decode(c);
    for (int i = 0; i < d; ++i) aug(i, col) = x[i];
    ++col;
  }
  const RowEchelonForm ref = row_reduce(GFMatrix(p, std::move(aug)));
  if (static_cast<Index>(ref.pivots.size()) < d || ref.pivots[d - 1] != d - 1) return false;
  std::vector<std::vector<Residue>> projected;
  projected.reserve(e.size());
  for (Index k = 0; k < static_cast<Index>(e.size()); ++k) {
    std::vector<Residue> v(static_cast<std::size_t>(dim_v));
    for (Index i = 0; i < dim_v; ++i) v[i] = ref.reduced(i, d + k);
    projected.push_back(std::move(v));
  }
  std::sort(projected.begin(), projected.end());
  return std::adjacent_find(projected.begin(), projected.end()) == projected.end();
}

}  // namespace zpf
