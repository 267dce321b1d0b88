#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "zpf/fuglede.hpp"
#include "zpf/hadamard_library.hpp"
#include "zpf/report.hpp"

namespace zpf {

/// Raised when an operation needs representative data that is not loaded.
class MissingData : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct ScanConfig {
  std::uint64_t p = 2;
  int d = 4;
  std::set<std::size_t> size_filter;           // empty: every size
  std::optional<std::uint64_t> sample_budget;  // absent: exhaustive
  unsigned threads = 1;
  bool deterministic = false;
  std::uint64_t seed = 0;
  /// Scan only subsets containing 0. Tiling and spectrality are translation
  /// invariant and every nonempty set has a translate through 0.
  bool translation_normalize = true;
  /// When nonempty, exactly these sets are scanned.
  std::vector<PointSet> explicit_sets;
  /// Ceiling on the number of subsets an exhaustive scan may visit.
  std::uint64_t exhaustive_limit = std::uint64_t{1} << 26;
  SearchLimits limits;
  std::uint64_t chunk_size = 4096;  // work units per chunk and per checkpoint
  std::optional<std::filesystem::path> checkpoint;
};

enum class DiscrepancyKind { spectral_not_tile, tile_not_spectral };
std::string to_string(DiscrepancyKind k);

struct Discrepancy {
  std::vector<PointCode> set;  // sorted
  DiscrepancyKind kind;
  friend bool operator<(const Discrepancy& a, const Discrepancy& b) { return a.set < b.set; }
};

struct SizeTally {
  std::uint64_t scanned = 0, tiles = 0, spectral = 0;
};

/// Counters of a scan; merging is commutative once discrepancy lists are
/// sorted.
struct ScanTally {
  std::uint64_t scanned = 0, tiles = 0, spectral = 0, both = 0, neither = 0;
  std::uint64_t non_power_sizes = 0;  // tile or spectral sets with |E| not a power of p
  std::map<std::size_t, SizeTally> by_size;
  std::vector<Discrepancy> discrepancies;
  std::vector<std::vector<PointCode>> undecided;  // node budget ran out

  ScanTally& operator+=(const ScanTally& o);
  void sort();
};

struct ScanSummary {
  ScanTally tally;
  std::uint64_t work_units = 0;
  std::uint64_t chunks = 0;
  std::uint64_t chunks_resumed = 0;
  std::string mode;  // "exhaustive", "sampled" or "explicit"
};

/// Throws BudgetExceeded when an exhaustive scan exceeds exhaustive_limit
/// and std::invalid_argument for a checkpoint written by another config.
ScanSummary run_fuglede_scan(const ScanConfig& cfg);
VerdictReport fuglede_scan(const ScanConfig& cfg);

struct RankSweepResult {
  int order = 0;
  std::vector<Index> ranks;
  Index min_rank = 0;
  bool all_equal = true;
  std::optional<bool> min_at_least_ten;  // set for orders >= 12
};

/// Dephased ranks of the log images of the given representatives. Throws
/// std::invalid_argument naming the source and row pair of any
/// representative that is not Hadamard, or when the list is empty.
RankSweepResult rank_sweep(int order, const std::vector<HadamardLibraryEntry>& reps);
VerdictReport rank_sweep_report(int order, const std::vector<HadamardLibraryEntry>& reps);

enum class Feasibility { possible, impossible_by_rank, impossible_no_matrix };
std::string to_string(Feasibility f);

struct FeasibilityResult {
  Feasibility verdict = Feasibility::possible;
  std::string reason;
  std::optional<Index> min_rank;
};

/// Whether a spectral set of size m in Z_p^d is excluded by the rank
/// argument: such a set yields an m x m log-Hadamard matrix of rank at most
/// d, and dephasing minimises rank within a class. Throws MissingData when
/// the answer needs representatives that are not available.
FeasibilityResult size_feasibility(std::uint64_t p, int d, int m, const HadamardLibrary& lib);
VerdictReport size_feasibility_report(std::uint64_t p, int d, int m, const HadamardLibrary& lib);

struct LowRankProbeResult {
  std::optional<GFMatrix> hit;  // dephased log-Hadamard matrix within the rank bound
  bool complete = true;
  std::uint64_t bases = 0;      // basis tuples examined
  std::uint64_t cliques = 0;    // clique searches run on spanned rows
  std::string search_space;
};

/// Exhaustive search for a dephased 2p x 2p log-Hadamard matrix over Z_p of
/// rank at most max_rank. Rows 1..max_rank are taken as a basis of the row
/// space; columns other than the first are sorted lexicographically by their
/// entries in those rows, which every matrix can be brought to by a column
/// permutation. The remaining rows are a clique of equidistributed
/// differences inside the span. budget caps the number of basis tuples
/// (0 = unlimited).
LowRankProbeResult low_rank_probe(PrimeModulus p, int max_rank, std::uint64_t budget = 0);
VerdictReport rank3_probe(PrimeModulus p, std::uint64_t budget = 0);

}  // namespace zpf
