#include <algorithm>
#include <numeric>
#include <random>

#include "doctest.h"
#include "zpf/construct.hpp"
#include "zpf/fuglede.hpp"
#include "zpf/reference.hpp"

using namespace zpf;

namespace {

PointSet subset(const Ambient& g, std::uint64_t mask) {
  std::vector<PointCode> pts;
  for (PointCode x = 0; x < g.order(); ++x)
    if (mask >> x & 1) pts.push_back(x);
  return PointSet(g, pts);
}

}  // namespace

TEST_CASE("ambient encoding") {
  const Ambient g(PrimeModulus(3), 3);
  CHECK(g.order() == 27);
  CHECK(g.encode({1, 0, 2}) == 11);
  CHECK(g.decode(11) == Coords{1, 0, 2});
  CHECK(g.coord(11, 2) == 2);
  CHECK_THROWS_AS(g.encode({1, 0}), std::invalid_argument);
  CHECK_THROWS_AS(g.encode({1, 0, 3}), std::invalid_argument);
  CHECK_THROWS_AS(Ambient(PrimeModulus(2), 0), std::invalid_argument);
  CHECK_THROWS_AS(Ambient(PrimeModulus(2), 32), std::invalid_argument);
  CHECK_NOTHROW(Ambient(PrimeModulus(2), 31));
}

TEST_CASE("fast group arithmetic matches digit-wise arithmetic") {
  std::mt19937_64 rng(1);
  for (auto [p, d] : {std::pair{2, 6}, std::pair{3, 4}, std::pair{7, 2}}) {
    const Ambient g(PrimeModulus(p), d);
    for (int t = 0; t < 500; ++t) {
      const auto a = static_cast<PointCode>(rng() % g.order());
      const auto b = static_cast<PointCode>(rng() % g.order());
      CHECK(g.add(a, b) == g.add_generic(a, b));
      CHECK(g.sub(a, b) == g.sub_generic(a, b));
      CHECK(g.dot(a, b) == g.dot_generic(a, b));
      CHECK(g.add(g.sub(a, b), b) == a);
    }
  }
}

TEST_CASE("point set validation") {
  const Ambient g(PrimeModulus(2), 3);
  CHECK_THROWS_AS(PointSet(g, {}), std::invalid_argument);
  CHECK_THROWS_AS(PointSet(g, {1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(PointSet(g, {8}), std::invalid_argument);
  const PointSet e(g, {5, 1});
  CHECK(e.points() == std::vector<PointCode>{5, 1});
  CHECK(e.sorted() == std::vector<PointCode>{1, 5});
  CHECK(e == PointSet(g, {1, 5}));
  CHECK(e.translate(1) == PointSet(g, {0, 4}));
  const GFMatrix swap(PrimeModulus(2), {{0, 1, 0}, {1, 0, 0}, {0, 0, 1}});
  CHECK(e.linear_image(swap) == PointSet(g, {3, 1}));
}

TEST_CASE("subgroups tile and are spectral") {
  const Ambient g(PrimeModulus(3), 3);
  const PointSet line = PointSet::from_coords(g, {{0, 0, 0}, {1, 2, 0}, {2, 1, 0}});
  const auto t = tiles(line);
  REQUIRE(t);
  CHECK(t->translations.size() == 9);
  CHECK(verify_tiling(line, t->translations));
  const auto s = spectral(line);
  REQUIRE(s);
  CHECK(verify_spectrum(line, s->exponents));
  const auto w = graph_on_subspace(line);
  REQUIRE(w);
  CHECK(verify_graph_witness(line, *w));
}

TEST_CASE("sizes that do not divide the group order are rejected without search") {
  const Ambient g(PrimeModulus(2), 3);
  const auto out = search_tiling(PointSet(g, {0, 1, 2}));
  CHECK_FALSE(out.certificate);
  CHECK(out.complete);
  CHECK(out.nodes == 0);
}

TEST_CASE("difference set") {
  const Ambient g(PrimeModulus(2), 2);
  // E = {00, 10}: m . x is equidistributed iff m has first coordinate 1.
  CHECK(difference_set(PointSet(g, {0, 2})) == std::vector<PointCode>{2, 3});
  CHECK(difference_set(PointSet(g, {0, 1, 2})).empty());
}

TEST_CASE("deciders agree with brute force on every subset of Z_2^3 and Z_3^2") {
  for (auto [p, d] : {std::pair{2, 3}, std::pair{3, 2}}) {
    const Ambient g(PrimeModulus(p), d);
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << g.order()); ++mask) {
      const PointSet e = subset(g, mask);
      const auto t = tiles(e);
      const auto s = spectral(e);
      CHECK(t.has_value() == reference::tiles(e));
      CHECK(s.has_value() == reference::spectral(e));
      if (t) CHECK(verify_tiling(e, t->translations));
      if (s) {
        CHECK(verify_spectrum(e, s->exponents));
        CHECK(s->exponents.contains(0));
      }
      // Fuglede holds in these groups.
      CHECK(t.has_value() == s.has_value());
    }
  }
}

TEST_CASE("verifiers reject broken certificates") {
  const Ambient g(PrimeModulus(2), 3);
  const PointSet e(g, {0, 1});
  const auto t = tiles(e);
  REQUIRE(t);
  auto bad = t->translations.points();
  bad.pop_back();
  CHECK_FALSE(verify_tiling(e, PointSet(g, bad)));
  CHECK_FALSE(verify_tiling(e, PointSet(g, {0, 1, 2, 3})));
  CHECK_FALSE(verify_spectrum(e, PointSet(g, {0, 2})));
  CHECK_FALSE(verify_spectrum(e, PointSet(g, {0, 1, 2})));
  CHECK(verify_spectrum(e, PointSet(g, {0, 1})));
  CHECK_THROWS_AS(verify_spectrum(e, PointSet(Ambient(PrimeModulus(2), 2), {0, 1})), std::invalid_argument);

  const auto w = graph_on_subspace(e);
  REQUIRE(w);
  GraphWitness broken = *w;
  broken.complement_basis = broken.subspace_basis;
  CHECK_FALSE(verify_graph_witness(e, broken));
}

TEST_CASE("graph witnesses exist for size-4 sets of Z_2^4 but not for the size-8 example") {
  const Ambient g(PrimeModulus(2), 4);
  std::mt19937_64 rng(4);
  for (int t = 0; t < 100; ++t) {
    std::vector<PointCode> all(16);
    std::iota(all.begin(), all.end(), PointCode{0});
    std::shuffle(all.begin(), all.end(), rng);
    all.resize(4);
    const PointSet e(g, all);
    const auto w = graph_on_subspace(e);
    REQUIRE(w);
    CHECK(verify_graph_witness(e, *w));
  }
  CHECK_FALSE(graph_on_subspace(size8_example_z2_5()));
  CHECK_FALSE(graph_on_subspace(PointSet(g, {0, 1, 2})));
}

TEST_CASE("budgets") {
  const Ambient big(PrimeModulus(2), 21);
  CHECK_THROWS_AS(tiles(PointSet(big, {0})), BudgetExceeded);
  SearchLimits tight;
  tight.node_budget = 1;
  const auto out = search_spectrum(size8_example_z2_5(), tight);
  CHECK_FALSE(out.complete);
  CHECK_FALSE(out.certificate);
  CHECK_THROWS_AS(spectral(size8_example_z2_5(), tight), BudgetExceeded);
}
