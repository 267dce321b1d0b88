#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "zpf/group.hpp"

namespace zpf {

/// Raised when a decider would exceed its universe bound or node budget.
class BudgetExceeded : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct SearchLimits {
  std::uint64_t universe_bound = std::uint64_t{1} << 20;  // max p^d
  std::uint64_t node_budget = 0;                          // 0 = unlimited
};

/// Translates E + t, t in T, partition Z_p^d.
struct TilingCertificate {
  PointSet translations;
};

/// For distinct l, l' in the exponent set, ((l - l') . x)_{x in E} is
/// equidistributed, and there are |E| exponents.
struct SpectrumCertificate {
  PointSet exponents;
};

/// E meets every coset of span(complement_basis) exactly once; the
/// projection along that span onto span(subspace_basis) is a bijection on E.
struct GraphWitness {
  std::vector<PointCode> subspace_basis;
  std::vector<PointCode> complement_basis;
};

template <typename Certificate>
struct SearchOutcome {
  std::optional<Certificate> certificate;
  bool complete = true;  // false when the node budget ran out first
  std::uint64_t nodes = 0;
};

/// Exact cover of Z_p^d by translates of E, branching on the least
/// uncovered element. Sets whose size does not divide p^d are rejected
/// without search. Throws BudgetExceeded if p^d is over the universe bound.
SearchOutcome<TilingCertificate> search_tiling(const PointSet& e, const SearchLimits& limits = {});
/// Throws BudgetExceeded if the search could not finish.
std::optional<TilingCertificate> tiles(const PointSet& e, const SearchLimits& limits = {});

/// Nonzero m with (m . x)_{x in E} equidistributed, ascending.
std::vector<PointCode> difference_set(const PointSet& e, const SearchLimits& limits = {});

/// Clique of size |E| containing 0 in the Cayley graph on Z_p^d with
/// connection set difference_set(E). Branch and bound over ascending
/// candidates; the first clique found is the lexicographically least.
SearchOutcome<SpectrumCertificate> search_spectrum(const PointSet& e, const SearchLimits& limits = {});
std::optional<SpectrumCertificate> spectral(const PointSet& e, const SearchLimits& limits = {});

/// Searches subspaces W of dimension d - k (|E| = p^k) in reduced echelon
/// form for one whose cosets E meets exactly once.
std::optional<GraphWitness> graph_on_subspace(const PointSet& e, const SearchLimits& limits = {});

// Verifiers. These use digit-wise group arithmetic and share no code with
// the searchers above.

/// Throws std::invalid_argument if the ambients differ.
bool verify_spectrum(const PointSet& e, const PointSet& exponents);
bool verify_tiling(const PointSet& e, const PointSet& translations);
bool verify_graph_witness(const PointSet& e, const GraphWitness& w);

}  // namespace zpf
