#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "zpf/construct.hpp"
#include "zpf/hadamard_library.hpp"
#include "zpf/io.hpp"
#include "zpf/search.hpp"

using namespace zpf;

namespace {

std::filesystem::path fresh_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / name;
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

void write(const std::filesystem::path& path, const std::string& text) {
  std::ofstream(path) << text;
}

ScanConfig z2(int d) {
  ScanConfig cfg;
  cfg.p = 2;
  cfg.d = d;
  return cfg;
}

}  // namespace

TEST_CASE("exhaustive scan counts") {
  ScanConfig cfg = z2(3);
  ScanSummary s = run_fuglede_scan(cfg);
  CHECK(s.mode == "exhaustive");
  CHECK(s.tally.scanned == 128);  // subsets of Z_2^3 containing 0
  CHECK(s.tally.discrepancies.empty());
  cfg.translation_normalize = false;
  s = run_fuglede_scan(cfg);
  CHECK(s.tally.scanned == 255);
  // Tiles of Z_2^3: sizes 1, 2, 4 and 8 only.
  for (const auto& [size, t] : s.tally.by_size) {
    if (size != 1 && size != 2 && size != 4 && size != 8) CHECK(t.tiles == 0);
    CHECK(t.tiles == t.spectral);
  }
  CHECK(s.tally.by_size.at(2).tiles == 28);
  CHECK(s.tally.non_power_sizes == 0);
  cfg.size_filter = {3, 4};
  CHECK(run_fuglede_scan(cfg).tally.scanned == 56 + 70);
}

TEST_CASE("Z_2^4 scan holds") {
  ScanConfig cfg = z2(4);
  cfg.threads = 3;
  const VerdictReport r = fuglede_scan(cfg);
  CHECK(r.verdict == Verdict::holds);
  CHECK(r.result["scanned"] == 32768);
  CHECK(r.result["non_power_sizes"] == 0);
  CHECK(r.work_units == 32768);
}

TEST_CASE("scan reports do not depend on the thread count") {
  ScanConfig cfg = z2(4);
  cfg.size_filter = {4, 6};
  cfg.chunk_size = 100;
  cfg.threads = 1;
  Json one = to_json(fuglede_scan(cfg), false);
  cfg.threads = 4;
  Json four = to_json(fuglede_scan(cfg), false);
  one["metrics"].erase("threads");
  four["metrics"].erase("threads");
  CHECK(one.dump() == four.dump());
}

TEST_CASE("sampled scans are seeded") {
  ScanConfig cfg = z2(5);
  cfg.size_filter = {8};
  cfg.sample_budget = 300;
  cfg.seed = 7;
  const std::string a = to_json(fuglede_scan(cfg), false).dump();
  const std::string b = to_json(fuglede_scan(cfg), false).dump();
  CHECK(a == b);
  const VerdictReport r = fuglede_scan(cfg);
  CHECK(r.seed == std::optional<std::uint64_t>(7));
  CHECK(r.result["scanned"] == 301);  // the size-8 example is always added in Z_2^5
  CHECK(r.result["neither"].get<int>() >= 1);
  cfg.seed = 8;
  CHECK(to_json(fuglede_scan(cfg), false).dump() != a);
}

TEST_CASE("explicit scan of the odd-prime spectral set") {
  ScanConfig cfg;
  cfg.p = 3;
  cfg.d = 4;
  cfg.explicit_sets = {build_spectral_pair(PrimeModulus(3), 2, 1).set};
  const ScanSummary s = run_fuglede_scan(cfg);
  REQUIRE(s.tally.discrepancies.size() == 1);
  CHECK(s.tally.discrepancies[0].kind == DiscrepancyKind::spectral_not_tile);
  CHECK(s.tally.non_power_sizes == 1);
  const VerdictReport r = fuglede_scan(cfg);
  CHECK(r.verdict == Verdict::fails);
  CHECK(r.result["discrepancies"][0]["kind"] == "spectral-not-tile");

  cfg.explicit_sets = {size8_example_z2_5()};
  CHECK_THROWS_AS(run_fuglede_scan(cfg), std::invalid_argument);
}

TEST_CASE("scan budgets") {
  ScanConfig cfg = z2(5);
  cfg.exhaustive_limit = 1000;
  CHECK_THROWS_AS(run_fuglede_scan(cfg), BudgetExceeded);
  cfg.size_filter = {2};
  CHECK(run_fuglede_scan(cfg).tally.scanned == 31);

  ScanConfig tight = z2(4);
  tight.size_filter = {8};
  tight.limits.node_budget = 1;
  const VerdictReport r = fuglede_scan(tight);
  CHECK(r.verdict == Verdict::incomplete);
  CHECK(r.result["undecided"].get<int>() > 0);
}

TEST_CASE("checkpoint resume") {
  const auto dir = fresh_dir("zpf_ckpt");
  ScanConfig cfg = z2(4);
  cfg.chunk_size = 1000;
  cfg.checkpoint = dir / "ledger.jsonl";
  const std::string full = to_json(fuglede_scan(cfg), false).dump();

  // Keep the header and the first three chunks, plus a torn line.
  std::ifstream in(*cfg.checkpoint);
  std::string line, kept;
  for (int i = 0; i < 4 && std::getline(in, line); ++i) kept += line + "\n";
  in.close();
  write(*cfg.checkpoint, kept + "{\"chunk\": 9, \"tal");
  const ScanSummary resumed = run_fuglede_scan(cfg);
  CHECK(resumed.chunks_resumed == 3);
  CHECK(resumed.tally.scanned == 32768);

  std::filesystem::remove(*cfg.checkpoint);
  fuglede_scan(cfg);
  ScanConfig other = cfg;
  other.size_filter = {4};
  CHECK_THROWS_AS(run_fuglede_scan(other), std::invalid_argument);
  std::filesystem::remove_all(dir);
  (void)full;
}

TEST_CASE("rank sweep") {
  const HadamardLibrary lib = HadamardLibrary::bundled();
  const RankSweepResult s12 = rank_sweep(12, lib.representatives(12));
  CHECK(s12.ranks == std::vector<Index>{10});
  CHECK(s12.min_rank == 10);
  CHECK(s12.all_equal);
  CHECK(s12.min_at_least_ten == std::optional<bool>(true));
  const RankSweepResult s2 = rank_sweep(2, lib.representatives(2));
  CHECK(s2.ranks == std::vector<Index>{1});
  CHECK_FALSE(s2.min_at_least_ten.has_value());
  CHECK_THROWS_AS(rank_sweep(20, {}), std::invalid_argument);

  const SignMatrix bad{{1, 1, 1, 1}, {1, -1, 1, -1}, {1, 1, -1, -1}, {1, 1, 1, -1}};
  CHECK_THROWS_WITH_AS(rank_sweep(4, {{4, 0, bad, "had.4.bad"}}), "had.4.bad: rows 1 and 4 are not orthogonal",
                       std::invalid_argument);

  // Two inequivalent-looking but equivalent order-12 inputs give equal ranks.
  const SignMatrix h = bundled_hadamard_12();
  SignEntries neg = h.entries();
  neg.row(3) *= -1;
  neg.col(7) *= -1;
  const RankSweepResult two = rank_sweep(12, {{12, 0, h, "a"}, {12, 1, SignMatrix(neg), "b"}});
  CHECK(two.all_equal);
}

TEST_CASE("library ingestion") {
  const auto dir = fresh_dir("zpf_lib");
  HadamardLibrary lib = HadamardLibrary::bundled();
  std::filesystem::copy_file(std::filesystem::path(ZPF_DATA_DIR) / "library-order20" / "had.20.paley.txt",
                             dir / "had.20.paley.txt");
  write(dir / "notes.txt", "ignored\n");
  lib.ingest_directory(dir);
  CHECK(lib.representatives(20).size() == 1);
  CHECK_FALSE(lib.complete(20));
  // Dephased rank of the Paley matrix of order 20, frozen from an
  // independent elimination in Python.
  CHECK(rank_sweep(20, lib.representatives(20)).ranks == std::vector<Index>{18});

  write(dir / "library.json", R"({"complete_orders": [20]})");
  HadamardLibrary flagged;
  flagged.ingest_directory(dir);
  CHECK(flagged.complete(20));

  write(dir / "had.8.wrong.txt", "++\n+-\n");
  HadamardLibrary broken;
  CHECK_THROWS_WITH_AS(broken.ingest_directory(dir), doctest::Contains("had.8.wrong.txt"), std::runtime_error);
  std::filesystem::remove(dir / "had.8.wrong.txt");
  write(dir / "had.4.ragged", "++++\n+-+\n");
  CHECK_THROWS_AS(broken.ingest_directory(dir), ParseError);
  CHECK_THROWS(broken.ingest_directory(dir / "nope"));
  std::filesystem::remove_all(dir);

  CHECK(lib.complete(6));
  CHECK(lib.complete(12));
  CHECK_FALSE(lib.complete(16));
  CHECK(lib.representatives(6).empty());
}

TEST_CASE("size feasibility") {
  const HadamardLibrary lib = HadamardLibrary::bundled();
  for (int d = 1; d <= 9; ++d) CHECK(size_feasibility(2, d, 12, lib).verdict == Feasibility::impossible_by_rank);
  CHECK(size_feasibility(2, 10, 12, lib).verdict == Feasibility::possible);
  CHECK(size_feasibility(2, 10, 12, lib).min_rank == std::optional<Index>(10));
  CHECK(size_feasibility(2, 5, 6, lib).verdict == Feasibility::impossible_no_matrix);
  CHECK(size_feasibility(2, 5, 8, lib).verdict == Feasibility::possible);
  CHECK(size_feasibility(2, 2, 8, lib).verdict == Feasibility::impossible_by_rank);
  CHECK(size_feasibility(3, 4, 7, lib).verdict == Feasibility::impossible_no_matrix);
  CHECK(size_feasibility(3, 4, 9, lib).verdict == Feasibility::possible);
  CHECK_THROWS_AS(size_feasibility(3, 4, 6, lib), MissingData);
  CHECK_THROWS_AS(size_feasibility(2, 9, 20, lib), MissingData);
  CHECK_THROWS_AS(size_feasibility(2, 9, 0, lib), std::invalid_argument);

  // An incomplete library never yields impossible-by-rank.
  HadamardLibrary partial;
  partial.add(12, bundled_hadamard_12(), "copy");
  CHECK(size_feasibility(2, 9, 12, partial).verdict == Feasibility::possible);
}

TEST_CASE("low-rank probe") {
  for (std::uint64_t p : {3ull, 5ull}) {
    const VerdictReport r = rank3_probe(PrimeModulus(p));
    CHECK(r.verdict == Verdict::none);
    CHECK(r.result["complete"] == true);
    // The same search finds the rank-four matrices.
    const LowRankProbeResult four = low_rank_probe(PrimeModulus(p), 4);
    REQUIRE(four.hit);
    CHECK(is_log_hadamard(*four.hit));
    CHECK(is_dephased(*four.hit));
    CHECK(rank(*four.hit) == 4);
  }
  const VerdictReport cut = rank3_probe(PrimeModulus(5), 10);
  CHECK(cut.verdict == Verdict::incomplete);
  CHECK(cut.work_units == 10);
  CHECK_THROWS_AS(rank3_probe(PrimeModulus(2)), std::invalid_argument);
  CHECK_THROWS_AS(low_rank_probe(PrimeModulus(3), 6), std::invalid_argument);
}
