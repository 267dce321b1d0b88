#include "zpf/search.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <fstream>
#include <functional>
#include <limits>
#include <memory>
#include <mutex>
#include <random>
#include <thread>

#include "zpf/construct.hpp"
#include "zpf/log_hadamard.hpp"

namespace zpf {

std::string to_string(DiscrepancyKind k) {
  return k == DiscrepancyKind::spectral_not_tile ? "spectral-not-tile" : "tile-not-spectral";
}

std::string to_string(Feasibility f) {
  switch (f) {
    case Feasibility::possible: return "possible";
    case Feasibility::impossible_by_rank: return "impossible-by-rank";
    case Feasibility::impossible_no_matrix: return "impossible-no-matrix";
  }
  return "possible";
}

ScanTally& ScanTally::operator+=(const ScanTally& o) {
  scanned += o.scanned;
  tiles += o.tiles;
  spectral += o.spectral;
  both += o.both;
  neither += o.neither;
  non_power_sizes += o.non_power_sizes;
  for (const auto& [s, t] : o.by_size) {
    SizeTally& mine = by_size[s];
    mine.scanned += t.scanned;
    mine.tiles += t.tiles;
    mine.spectral += t.spectral;
  }
  discrepancies.insert(discrepancies.end(), o.discrepancies.begin(), o.discrepancies.end());
  undecided.insert(undecided.end(), o.undecided.begin(), o.undecided.end());
  return *this;
}

void ScanTally::sort() {
  std::sort(discrepancies.begin(), discrepancies.end());
  std::sort(undecided.begin(), undecided.end());
}

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::uint64_t binom(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 c = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    c = c * (n - k + i) / i;
    if (c > std::numeric_limits<std::uint64_t>::max()) return std::numeric_limits<std::uint64_t>::max();
  }
  return static_cast<std::uint64_t>(c);
}

std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) {
  return a > std::numeric_limits<std::uint64_t>::max() - b ? std::numeric_limits<std::uint64_t>::max() : a + b;
}

// The r-th k-subset of {0, ..., n-1} in lexicographic order.
std::vector<PointCode> unrank_combination(std::uint64_t n, std::uint64_t k, std::uint64_t r) {
  std::vector<PointCode> out;
  out.reserve(k);
  std::uint64_t x = 0;
  for (std::uint64_t i = 0; i < k; ++i) {
    for (;;) {
      const std::uint64_t c = binom(n - x - 1, k - i - 1);
      if (r < c) break;
      r -= c;
      ++x;
    }
    out.push_back(static_cast<PointCode>(x));
    ++x;
  }
  return out;
}

bool is_power_of(std::uint64_t m, std::uint64_t p) {
  while (m % p == 0) m /= p;
  return m == 1;
}

// Maps work-unit indices to the sets they stand for.
struct UnitPlan {
  std::string mode;
  std::uint64_t total = 0;
  std::function<std::vector<PointCode>(std::uint64_t)> unit;
};

std::vector<std::size_t> scan_sizes(const ScanConfig& cfg, std::uint64_t n) {
  std::vector<std::size_t> sizes;
  if (cfg.size_filter.empty()) {
    for (std::uint64_t s = 1; s <= n; ++s) sizes.push_back(static_cast<std::size_t>(s));
  } else {
    for (std::size_t s : cfg.size_filter)
      if (s >= 1 && s <= n) sizes.push_back(s);
  }
  return sizes;
}

UnitPlan exhaustive_plan(const ScanConfig& cfg, const Ambient& g) {
  const std::uint64_t n = g.order();
  const std::uint64_t pool = cfg.translation_normalize ? n - 1 : n;
  struct Bucket {
    std::uint64_t k, start, count;
  };
  std::vector<Bucket> buckets;
  std::uint64_t total = 0;
  for (std::size_t s : scan_sizes(cfg, n)) {
    const std::uint64_t k = cfg.translation_normalize ? s - 1 : s;
    const std::uint64_t c = binom(pool, k);
    buckets.push_back({k, total, c});
    total = saturating_add(total, c);
  }
  if (total > cfg.exhaustive_limit)
    throw BudgetExceeded("exhaustive scan needs " +
                         (total == std::numeric_limits<std::uint64_t>::max() ? std::string("more than 2^64")
                                                                              : std::to_string(total)) +
                         " subsets, over the limit of " + std::to_string(cfg.exhaustive_limit));
  UnitPlan plan;
  plan.mode = "exhaustive";
  plan.total = total;
  const bool normalize = cfg.translation_normalize;
  plan.unit = [buckets, pool, normalize](std::uint64_t i) {
    auto b = std::upper_bound(buckets.begin(), buckets.end(), i,
                              [](std::uint64_t v, const Bucket& x) { return v < x.start; });
    --b;
    std::vector<PointCode> c = unrank_combination(pool, b->k, i - b->start);
    if (normalize) {
      for (PointCode& x : c) ++x;
      c.insert(c.begin(), 0);
    }
    return c;
  };
  return plan;
}

UnitPlan sampled_plan(const ScanConfig& cfg, const Ambient& g) {
  const std::uint64_t n = g.order();
  const std::vector<std::size_t> sizes = scan_sizes(cfg, n);
  if (sizes.empty()) throw std::invalid_argument("size filter admits no subset of the ambient group");
  std::mt19937_64 rng(cfg.seed);
  std::uniform_int_distribution<std::size_t> pick_size(0, sizes.size() - 1);
  auto samples = std::make_shared<std::vector<std::vector<PointCode>>>();
  samples->reserve(*cfg.sample_budget + 1);
  for (std::uint64_t i = 0; i < *cfg.sample_budget; ++i) {
    const std::size_t s = sizes[pick_size(rng)];
    // Floyd's algorithm: a uniform s-subset of {0, ..., n-1}.
    std::set<PointCode> chosen;
    for (std::uint64_t j = n - s; j < n; ++j) {
      const auto t = static_cast<PointCode>(std::uniform_int_distribution<std::uint64_t>(0, j)(rng));
      if (!chosen.insert(t).second) chosen.insert(static_cast<PointCode>(j));
    }
    std::vector<PointCode> set(chosen.begin(), chosen.end());
    if (cfg.translation_normalize) {
      const PointCode m = set.front();
      for (PointCode& x : set) x = g.sub(x, m);
      std::sort(set.begin(), set.end());
    }
    samples->push_back(std::move(set));
  }
  if (cfg.p == 2 && cfg.d == 5) samples->push_back(size8_example_z2_5().sorted());
  UnitPlan plan;
  plan.mode = "sampled";
  plan.total = samples->size();
  plan.unit = [samples](std::uint64_t i) { return (*samples)[i]; };
  return plan;
}

UnitPlan explicit_plan(const ScanConfig& cfg, const Ambient& g) {
  auto sets = std::make_shared<std::vector<std::vector<PointCode>>>();
  for (const PointSet& e : cfg.explicit_sets) {
    if (!(e.ambient() == g)) throw std::invalid_argument("explicit set lies in a different ambient group");
    sets->push_back(e.sorted());
  }
  UnitPlan plan;
  plan.mode = "explicit";
  plan.total = sets->size();
  plan.unit = [sets](std::uint64_t i) { return (*sets)[i]; };
  return plan;
}

void evaluate(const Ambient& g, std::vector<PointCode> codes, const SearchLimits& limits, ScanTally& t) {
  const PointSet e(g, codes);
  const auto tiling = search_tiling(e, limits);
  const auto spectrum = search_spectrum(e, limits);
  SizeTally& st = t.by_size[e.size()];
  ++t.scanned;
  ++st.scanned;
  if (!tiling.complete || !spectrum.complete) {
    t.undecided.push_back(std::move(codes));
    return;
  }
  const bool tile = tiling.certificate.has_value();
  const bool spec = spectrum.certificate.has_value();
  t.tiles += tile;
  t.spectral += spec;
  st.tiles += tile;
  st.spectral += spec;
  if (tile && spec) ++t.both;
  if (!tile && !spec) ++t.neither;
  if ((tile || spec) && !is_power_of(e.size(), g.modulus().value())) ++t.non_power_sizes;
  if (tile != spec)
    t.discrepancies.push_back(
        {std::move(codes), spec ? DiscrepancyKind::spectral_not_tile : DiscrepancyKind::tile_not_spectral});
}

Json tally_json(const ScanTally& t) {
  Json by_size = Json::array();
  for (const auto& [s, x] : t.by_size) by_size.push_back({s, x.scanned, x.tiles, x.spectral});
  Json disc = Json::array();
  for (const Discrepancy& d : t.discrepancies) disc.push_back({{"set", d.set}, {"kind", to_string(d.kind)}});
  return {{"scanned", t.scanned},   {"tiles", t.tiles},
          {"spectral", t.spectral}, {"both", t.both},
          {"neither", t.neither},   {"non_power_sizes", t.non_power_sizes},
          {"by_size", by_size},     {"discrepancies", disc},
          {"undecided", t.undecided}};
}

ScanTally tally_from_json(const Json& j) {
  ScanTally t;
  t.scanned = j.at("scanned").get<std::uint64_t>();
  t.tiles = j.at("tiles").get<std::uint64_t>();
  t.spectral = j.at("spectral").get<std::uint64_t>();
  t.both = j.at("both").get<std::uint64_t>();
  t.neither = j.at("neither").get<std::uint64_t>();
  t.non_power_sizes = j.at("non_power_sizes").get<std::uint64_t>();
  for (const Json& x : j.at("by_size"))
    t.by_size[x[0].get<std::size_t>()] = {x[1].get<std::uint64_t>(), x[2].get<std::uint64_t>(),
                                          x[3].get<std::uint64_t>()};
  for (const Json& d : j.at("discrepancies"))
    t.discrepancies.push_back({d.at("set").get<std::vector<PointCode>>(),
                               d.at("kind") == "spectral-not-tile" ? DiscrepancyKind::spectral_not_tile
                                                                   : DiscrepancyKind::tile_not_spectral});
  for (const Json& u : j.at("undecided")) t.undecided.push_back(u.get<std::vector<PointCode>>());
  return t;
}

Json scan_inputs(const ScanConfig& cfg, const std::string& mode) {
  Json in;
  in["p"] = cfg.p;
  in["d"] = cfg.d;
  in["mode"] = mode;
  in["size_filter"] = cfg.size_filter;
  in["sample_budget"] = cfg.sample_budget ? Json(*cfg.sample_budget) : Json(nullptr);
  in["translation_normalize"] = cfg.translation_normalize;
  in["node_budget"] = cfg.limits.node_budget;
  if (!cfg.explicit_sets.empty()) {
    Json sets = Json::array();
    for (const PointSet& e : cfg.explicit_sets) sets.push_back(point_set_json(e));
    in["sets"] = sets;
  }
  return in;
}

// Chunks already recorded in a checkpoint ledger written for the same
// fingerprint. Creates the ledger when it does not exist.
std::map<std::uint64_t, ScanTally> open_ledger(const std::filesystem::path& path, const Json& fingerprint) {
  std::map<std::uint64_t, ScanTally> done;
  std::ifstream in(path);
  std::string line;
  if (in && std::getline(in, line) && !line.empty()) {
    const Json header = Json::parse(line, nullptr, false);
    if (header.is_discarded() || !header.contains("fingerprint") || header["fingerprint"] != fingerprint)
      throw std::invalid_argument(path.string() + ": checkpoint was written for a different scan");
    while (std::getline(in, line)) {
      const Json rec = Json::parse(line, nullptr, false);
      if (rec.is_discarded()) break;  // torn final line
      done[rec.at("chunk").get<std::uint64_t>()] = tally_from_json(rec.at("tally"));
    }
    return done;
  }
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error(path.string() + ": cannot write checkpoint");
  out << Json{{"fingerprint", fingerprint}}.dump() << '\n';
  return done;
}

}  // namespace

ScanSummary run_fuglede_scan(const ScanConfig& cfg) {
  const Ambient g(PrimeModulus(cfg.p), cfg.d);
  if (g.order() > cfg.limits.universe_bound)
    throw BudgetExceeded("ambient group of order " + std::to_string(g.order()) + " exceeds the universe bound");
  if (cfg.chunk_size == 0) throw std::invalid_argument("chunk size must be positive");
  const UnitPlan plan = !cfg.explicit_sets.empty() ? explicit_plan(cfg, g)
                        : cfg.sample_budget        ? sampled_plan(cfg, g)
                                                   : exhaustive_plan(cfg, g);
  const std::uint64_t chunks = (plan.total + cfg.chunk_size - 1) / cfg.chunk_size;

  std::map<std::uint64_t, ScanTally> resumed;
  std::ofstream ledger;
  if (cfg.checkpoint) {
    Json fingerprint = scan_inputs(cfg, plan.mode);
    fingerprint["seed"] = cfg.seed;
    fingerprint["chunk_size"] = cfg.chunk_size;
    fingerprint["units"] = plan.total;
    resumed = open_ledger(*cfg.checkpoint, fingerprint);
    ledger.open(*cfg.checkpoint, std::ios::app);
  }

  std::vector<ScanTally> results(chunks);
  std::atomic<std::uint64_t> next{0};
  std::atomic<bool> stop{false};
  std::mutex mu;
  std::exception_ptr failure;
  auto worker = [&] {
    try {
      for (;;) {
        const std::uint64_t c = next++;
        if (c >= chunks || stop) return;
        if (resumed.count(c)) continue;
        ScanTally t;
        const std::uint64_t end = std::min(plan.total, (c + 1) * cfg.chunk_size);
        for (std::uint64_t i = c * cfg.chunk_size; i < end; ++i) evaluate(g, plan.unit(i), cfg.limits, t);
        if (ledger.is_open()) {
          std::lock_guard lock(mu);
          ledger << Json{{"chunk", c}, {"tally", tally_json(t)}}.dump() << '\n';
          ledger.flush();
        }
        results[c] = std::move(t);
      }
    } catch (...) {
      std::lock_guard lock(mu);
      if (!failure) failure = std::current_exception();
      stop = true;
    }
  };
  const unsigned n = std::max(1u, cfg.threads);
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < n; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);

  ScanSummary out;
  for (const auto& [c, t] : resumed) results[c] = t;
  for (const ScanTally& t : results) out.tally += t;
  out.tally.sort();
  out.work_units = plan.total;
  out.chunks = chunks;
  out.chunks_resumed = resumed.size();
  out.mode = plan.mode;
  return out;
}

VerdictReport fuglede_scan(const ScanConfig& cfg) {
  const auto t0 = Clock::now();
  const ScanSummary s = run_fuglede_scan(cfg);
  const Ambient g(PrimeModulus(cfg.p), cfg.d);
  VerdictReport r;
  r.claim_id = "fuglede-scan";
  r.inputs = scan_inputs(cfg, s.mode);
  Json result = tally_json(s.tally);
  Json disc = Json::array();
  for (const Discrepancy& d : s.tally.discrepancies) {
    const PointSet e(g, d.set);
    disc.push_back({{"set", point_set_json(e)}, {"kind", to_string(d.kind)}});
  }
  result["discrepancies"] = disc;
  result["undecided"] = s.tally.undecided.size();
  result["chunks"] = s.chunks;
  result["chunks_resumed"] = s.chunks_resumed;
  r.result = std::move(result);
  r.verdict = !s.tally.discrepancies.empty() ? Verdict::fails
              : !s.tally.undecided.empty()   ? Verdict::incomplete
                                             : Verdict::holds;
  r.work_units = s.work_units;
  r.threads = std::max(1u, cfg.threads);
  if (s.mode == "sampled") r.seed = cfg.seed;
  r.elapsed_ms = ms_since(t0);
  return r;
}

RankSweepResult rank_sweep(int order, const std::vector<HadamardLibraryEntry>& reps) {
  if (reps.empty()) throw std::invalid_argument("no representatives of order " + std::to_string(order));
  RankSweepResult out;
  out.order = order;
  for (const HadamardLibraryEntry& e : reps) {
    if (e.matrix.rows() != order)
      throw std::invalid_argument(e.source + ": not of order " + std::to_string(order));
    GFMatrix log_image = [&] {
      try {
        return from_sign_matrix(e.matrix, true);
      } catch (const std::invalid_argument& ex) {
        throw std::invalid_argument(e.source + ": " + ex.what());
      }
    }();
    out.ranks.push_back(rank(dephase(log_image)));
  }
  out.min_rank = *std::min_element(out.ranks.begin(), out.ranks.end());
  out.all_equal = std::all_of(out.ranks.begin(), out.ranks.end(), [&](Index r) { return r == out.ranks[0]; });
  if (order >= 12) out.min_at_least_ten = out.min_rank >= 10;
  return out;
}

VerdictReport rank_sweep_report(int order, const std::vector<HadamardLibraryEntry>& reps) {
  const auto t0 = Clock::now();
  const RankSweepResult s = rank_sweep(order, reps);
  VerdictReport r;
  r.claim_id = "rank-sweep";
  Json sources = Json::array();
  for (const auto& e : reps) sources.push_back(e.source);
  r.inputs = {{"order", order}, {"representatives", sources}};
  r.result = {{"ranks", s.ranks},
              {"min_rank", s.min_rank},
              {"all_equal", s.all_equal},
              {"min_at_least_ten", s.min_at_least_ten ? Json(*s.min_at_least_ten) : Json(nullptr)}};
  r.verdict = Verdict::holds;
  r.work_units = reps.size();
  r.elapsed_ms = ms_since(t0);
  return r;
}

FeasibilityResult size_feasibility(std::uint64_t p, int d, int m, const HadamardLibrary& lib) {
  const Ambient g(PrimeModulus(p), d);
  if (m < 1) throw std::invalid_argument("size must be positive");
  const auto um = static_cast<std::uint64_t>(m);
  if (um > 1 && um % p != 0)
    return {Feasibility::impossible_no_matrix, "rows of a log-Hadamard matrix over Z_p have length divisible by p", {}};
  if (um > g.order())
    return {Feasibility::impossible_by_rank, "m distinct rows need rank at least log_p m > d", {}};
  if (is_power_of(um, p)) return {Feasibility::possible, "subgroups of order m are spectral", {}};
  if (p != 2)
    throw MissingData("no representatives of " + std::to_string(m) + " x " + std::to_string(m) +
                      " log-Hadamard matrices over Z_" + std::to_string(p));
  const auto reps = lib.representatives(m);
  const bool complete = lib.complete(m);
  if (reps.empty()) {
    if (complete) return {Feasibility::impossible_no_matrix, "library is complete and empty for this order", {}};
    throw MissingData("no representatives of order " + std::to_string(m) + " in the library");
  }
  const Index min_rank = rank_sweep(m, reps).min_rank;
  if (min_rank > d && complete)
    return {Feasibility::impossible_by_rank, "every class has dephased rank above d", min_rank};
  return {Feasibility::possible,
          complete ? "some class has dephased rank at most d" : "library is not complete for this order", min_rank};
}

VerdictReport size_feasibility_report(std::uint64_t p, int d, int m, const HadamardLibrary& lib) {
  const auto t0 = Clock::now();
  const FeasibilityResult f = size_feasibility(p, d, m, lib);
  VerdictReport r;
  r.claim_id = "size-feasibility";
  r.inputs = {{"p", p}, {"d", d}, {"m", m}};
  r.result = {{"feasibility", to_string(f.verdict)},
              {"reason", f.reason},
              {"min_rank", f.min_rank ? Json(*f.min_rank) : Json(nullptr)},
              {"library_complete", p == 2 ? Json(lib.complete(m)) : Json(nullptr)}};
  r.verdict = Verdict::holds;
  r.work_units = 1;
  r.elapsed_ms = ms_since(t0);
  return r;
}

}  // namespace zpf
