// zpf: command-line front end. Matrices and point sets travel through
// stdin/stdout in the text exchange formats; checks emit verdict reports.

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <functional>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "zpf/claims.hpp"
#include "zpf/construct.hpp"
#include "zpf/fuglede.hpp"
#include "zpf/hadamard_library.hpp"
#include "zpf/io.hpp"
#include "zpf/log_hadamard.hpp"
#include "zpf/report.hpp"
#include "zpf/search.hpp"

namespace {

using namespace zpf;

struct Globals {
  std::optional<unsigned> threads;
  bool deterministic = false;
  std::uint64_t seed = 0;
  std::optional<std::uint64_t> budget;
  std::string format = "json";
  std::string output;
  std::string library;
  std::string data_dir = ZPF_DATA_DIR;

  unsigned thread_count() const {
    if (threads) return *threads;
    if (const char* e = std::getenv("ZPF_THREADS")) return static_cast<unsigned>(std::stoul(e));
    return 1;
  }
  std::uint64_t work_budget() const {
    if (budget) return *budget;
    if (const char* e = std::getenv("ZPF_BUDGET")) return std::stoull(e);
    return 0;
  }
  SearchLimits limits() const {
    SearchLimits l;
    l.node_budget = work_budget();
    return l;
  }
};

// Output sink and exit status shared by all subcommands.
class Session {
public:
  explicit Session(const Globals& g) : g_(g) {}

  void text(const std::string& s) { buf_ << s; }

  void report(const VerdictReport& r) {
    if (!r.passed()) status_ = 1;
    if (g_.format == "text") {
      buf_ << render_text(r, !g_.deterministic);
    } else {
      buf_ << to_json(r, !g_.deterministic).dump() << '\n';
    }
  }

  // JSON reports go one per line.
  void reports(const std::vector<VerdictReport>& rs) {
    for (const auto& r : rs) {
      report(r);
      if (g_.format == "text") buf_ << '\n';
    }
  }

  int finish() {
    if (g_.output.empty() || g_.output == "-") {
      std::cout << buf_.str();
    } else {
      std::ofstream out(g_.output);
      if (!out) throw std::runtime_error(g_.output + ": cannot write");
      out << buf_.str();
    }
    return status_;
  }

private:
  const Globals& g_;
  std::ostringstream buf_;
  int status_ = 0;
};

template <typename F>
auto with_input(const std::string& path, F parse) {
  if (path == "-") return parse(std::cin, std::string("<stdin>"));
  std::ifstream in(path);
  if (!in) throw std::runtime_error(path + ": cannot open");
  return parse(in, path);
}

GFMatrix read_matrix(const std::string& path) {
  return with_input(path, [](std::istream& in, const std::string& src) { return parse_gf_matrix(in, src); });
}

std::vector<PointSet> read_sets(const std::string& path) {
  return with_input(path, [](std::istream& in, const std::string& src) { return parse_point_sets(in, src); });
}

PointSet read_set(const std::string& path) {
  return with_input(path, [](std::istream& in, const std::string& src) { return parse_point_set(in, src); });
}

HadamardLibrary load_library(const Globals& g) {
  HadamardLibrary lib = HadamardLibrary::bundled();
  if (!g.library.empty()) lib.ingest_directory(g.library);
  return lib;
}

VerdictReport base_report(const std::string& claim, Json inputs) {
  VerdictReport r;
  r.claim_id = claim;
  r.inputs = std::move(inputs);
  return r;
}

template <typename F>
double timed(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

template <typename Outcome>
void set_search_verdict(VerdictReport& r, const Outcome& o) {
  r.verdict = o.certificate ? Verdict::found : o.complete ? Verdict::none : Verdict::incomplete;
  r.work_units = o.nodes;
  r.result["complete"] = o.complete;
  if (o.certificate) r.certificate = certificate_json(*o.certificate);
}

Residue default_n(PrimeModulus p, std::optional<Residue> n) { return n ? *n : smallest_nonsquare(p); }

}  // namespace

int main(int argc, char** argv) {
  Globals g;
  CLI::App app{"Log-Hadamard matrices over Z_p and Fuglede checks in Z_p^d"};
  app.set_version_flag("--version", std::string(ZPF_VERSION));
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--threads", g.threads, "worker threads (env ZPF_THREADS)")->check(CLI::PositiveNumber);
  app.add_flag("--deterministic", g.deterministic, "omit timings so reports compare byte for byte");
  app.add_option("--seed", g.seed, "seed for sampling and random moves");
  app.add_option("--budget", g.budget,
                 "work budget: search nodes, basis tuples or subsets (env ZPF_BUDGET; 0 = unlimited)");
  app.add_option("--format", g.format, "report format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--output", g.output, "write output here instead of stdout");
  app.add_option("--library", g.library, "directory of had.<m>.* files to add to the bundled library");
  app.add_option("--data-dir", g.data_dir, "location of the bundled data files");

  std::function<void(Session&)> action;
  auto on = [&](CLI::App* sub, std::function<void(Session&)> f) {
    sub->callback([&action, f] { action = f; });
  };

  std::string in = "-";

  auto* rank_cmd = app.add_subcommand("rank", "rank of a matrix over Z_p");
  rank_cmd->add_option("file", in, "matrix file (default stdin)");
  on(rank_cmd, [&](Session& s) {
    const GFMatrix m = read_matrix(in);
    VerdictReport r = base_report("rank", {{"matrix", matrix_json(m)}});
    Index k = 0;
    r.elapsed_ms = timed([&] { k = rank(m); });
    r.result = {{"rank", k}};
    r.verdict = Verdict::holds;
    r.work_units = 1;
    s.report(r);
  });

  auto* dephase_cmd = app.add_subcommand("dephase", "zero the first row and column by equivalence moves");
  dephase_cmd->add_option("file", in, "matrix file (default stdin)");
  on(dephase_cmd, [&](Session& s) { s.text(serialize(dephase(read_matrix(in)))); });

  auto* check_lh = app.add_subcommand("check-log-hadamard", "pairwise row differences equidistributed");
  check_lh->add_option("file", in, "matrix file (default stdin)");
  on(check_lh, [&](Session& s) {
    const GFMatrix m = read_matrix(in);
    VerdictReport r = base_report("check-log-hadamard", {{"matrix", matrix_json(m)}});
    r.elapsed_ms = timed([&] {
      const auto bad = find_unbalanced_rows(m);
      const bool ok = m.square() && !bad;
      r.verdict = ok ? Verdict::holds : Verdict::fails;
      r.result = {{"square", m.square()},
                  {"dephased", is_dephased(m)},
                  {"rank", rank(m)},
                  {"unbalanced_rows", bad ? Json::array({bad->first, bad->second}) : Json(nullptr)}};
      if (ok) r.result["dephased_rank"] = rank(dephase(m));
    });
    r.work_units = 1;
    s.report(r);
  });

  auto* construct = app.add_subcommand("construct", "build the explicit matrices and point sets");
  construct->require_subcommand(1);
  std::uint64_t cp = 3;
  std::optional<Residue> cn, calpha, cbeta;
  std::string which = "both";
  auto* c_orig = construct->add_subcommand("original", "original 2p x 2p family");
  c_orig->add_option("--p", cp, "odd prime")->required();
  c_orig->add_option("--n", cn, "nonsquare mod p (default: least)");
  on(c_orig, [&](Session& s) {
    const PrimeModulus p(cp);
    s.text(serialize(build_original(p, default_n(p, cn))));
  });
  auto* c_mod = construct->add_subcommand("modified", "rank-four family with alpha and beta");
  c_mod->add_option("--p", cp, "odd prime")->required();
  c_mod->add_option("--n", cn, "nonsquare mod p (default: least)");
  c_mod->add_option("--alpha", calpha, "alpha (default 1)");
  c_mod->add_option("--beta", cbeta, "beta (default: n alpha - n^2 - n)");
  on(c_mod, [&](Session& s) {
    const PrimeModulus p(cp);
    const Residue n = default_n(p, cn);
    const Residue a = calpha.value_or(1);
    const CounterexampleParams params =
        cbeta ? CounterexampleParams(p, n, a, *cbeta) : CounterexampleParams::with_alpha(p, n, a);
    s.text(serialize(build_modified(params)));
  });
  auto* c_pair = construct->add_subcommand("pair", "spectral set E in Z_p^4 and its spectrum B");
  c_pair->add_option("--p", cp, "odd prime")->required();
  c_pair->add_option("--n", cn, "nonsquare mod p (default: least)");
  c_pair->add_option("--alpha", calpha, "alpha (default 1)");
  c_pair->add_option("--set", which, "which set to print")->check(CLI::IsMember({"E", "B", "both"}));
  on(c_pair, [&](Session& s) {
    const PrimeModulus p(cp);
    const SpectralPair sp = build_spectral_pair(p, default_n(p, cn), calpha.value_or(1));
    if (which != "B") s.text(serialize(sp.set));
    if (which != "E") s.text(serialize(sp.spectrum));
  });
  auto* c_tao = construct->add_subcommand("tao12", "dephased 12 x 12 matrix over Z_2 of rank ten");
  on(c_tao, [&](Session& s) { s.text(serialize(tao_dephased_12())); });
  auto* c_ex = construct->add_subcommand("example8", "size-8 set in Z_2^5 that neither tiles nor is spectral");
  on(c_ex, [&](Session& s) { s.text(serialize(size8_example_z2_5())); });

  auto* check_tile = app.add_subcommand("check-tile", "search for a tiling complement");
  check_tile->add_option("file", in, "point-set file (default stdin)");
  on(check_tile, [&](Session& s) {
    const PointSet e = read_set(in);
    VerdictReport r = base_report("check-tile", {{"set", point_set_json(e)}});
    r.elapsed_ms = timed([&] { set_search_verdict(r, search_tiling(e, g.limits())); });
    s.report(r);
  });

  auto* check_spec = app.add_subcommand("check-spectral", "search for a spectrum");
  check_spec->add_option("file", in, "point-set file (default stdin)");
  on(check_spec, [&](Session& s) {
    const PointSet e = read_set(in);
    VerdictReport r = base_report("check-spectral", {{"set", point_set_json(e)}});
    r.elapsed_ms = timed([&] { set_search_verdict(r, search_spectrum(e, g.limits())); });
    s.report(r);
  });

  auto* check_graph = app.add_subcommand("check-graph", "search for a subspace the set is a graph on");
  check_graph->add_option("file", in, "point-set file (default stdin)");
  on(check_graph, [&](Session& s) {
    const PointSet e = read_set(in);
    VerdictReport r = base_report("check-graph", {{"set", point_set_json(e)}});
    r.elapsed_ms = timed([&] {
      const auto w = graph_on_subspace(e, g.limits());
      r.verdict = w ? Verdict::found : Verdict::none;
      if (w) r.certificate = certificate_json(*w, e.ambient());
    });
    r.work_units = 1;
    s.report(r);
  });

  std::string spectrum_file;
  auto* verify_spec = app.add_subcommand("verify-spectrum", "check that L is a spectrum of E");
  verify_spec->add_option("file", in, "E, or E followed by L (default stdin)");
  verify_spec->add_option("spectrum", spectrum_file, "file holding L");
  on(verify_spec, [&](Session& s) {
    std::vector<PointSet> sets = read_sets(in);
    if (!spectrum_file.empty()) {
      const auto more = read_sets(spectrum_file);
      sets.insert(sets.end(), more.begin(), more.end());
    }
    if (sets.size() != 2) throw std::invalid_argument("expected two point sets, got " + std::to_string(sets.size()));
    VerdictReport r = base_report("verify-spectrum", {{"set", point_set_json(sets[0])}});
    r.elapsed_ms = timed([&] {
      r.verdict = verify_spectrum(sets[0], sets[1]) ? Verdict::holds : Verdict::fails;
    });
    r.certificate = certificate_json(SpectrumCertificate{sets[1]});
    r.work_units = 1;
    s.report(r);
  });

  auto* verify_cert = app.add_subcommand("verify-certificate", "re-check the certificate in a report");
  verify_cert->add_option("file", in, "report JSON (default stdin)");
  on(verify_cert, [&](Session& s) {
    const VerdictReport src =
        with_input(in, [](std::istream& is, const std::string&) { return report_from_json(Json::parse(is)); });
    VerdictReport r = base_report("verify-certificate", {{"claim_id", src.claim_id}});
    if (src.inputs.contains("set")) r.inputs["set"] = src.inputs["set"];
    r.elapsed_ms = timed([&] { r.verdict = verify_embedded_certificate(src) ? Verdict::holds : Verdict::fails; });
    r.result = {{"kind", src.certificate ? src.certificate->value("kind", "") : std::string()}};
    r.work_units = 1;
    s.report(r);
  });

  ScanConfig scan;
  std::vector<std::size_t> sizes;
  std::optional<std::uint64_t> sample;
  std::string sets_file, checkpoint;
  bool no_normalize = false;
  auto* scan_cmd = app.add_subcommand("fuglede-scan", "compare tiling and spectrality over many sets");
  scan_cmd->add_option("--p", scan.p, "prime");
  scan_cmd->add_option("--d", scan.d, "dimension");
  scan_cmd->add_option("--sizes", sizes, "only sets of these sizes")->delimiter(',');
  scan_cmd->add_option("--sample", sample, "scan this many seeded random sets instead of all");
  scan_cmd->add_option("--sets", sets_file, "scan exactly the point sets in this file");
  scan_cmd->add_flag("--no-normalize", no_normalize, "do not restrict to sets containing 0");
  scan_cmd->add_option("--checkpoint", checkpoint, "resumable JSON-lines ledger");
  scan_cmd->add_option("--chunk", scan.chunk_size, "work units per chunk and checkpoint record");
  on(scan_cmd, [&](Session& s) {
    scan.size_filter = {sizes.begin(), sizes.end()};
    scan.sample_budget = sample;
    scan.threads = g.thread_count();
    scan.deterministic = g.deterministic;
    scan.seed = g.seed;
    scan.translation_normalize = !no_normalize;
    scan.limits = g.limits();
    if (g.budget || std::getenv("ZPF_BUDGET")) scan.exhaustive_limit = g.work_budget();
    if (!sets_file.empty()) scan.explicit_sets = read_sets(sets_file);
    if (!checkpoint.empty()) scan.checkpoint = checkpoint;
    s.report(fuglede_scan(scan));
  });

  int order = 12;
  std::vector<std::string> rep_files;
  auto* sweep_cmd = app.add_subcommand("rank-sweep", "dephased ranks of Hadamard representatives");
  sweep_cmd->add_option("--order", order, "matrix order")->required();
  sweep_cmd->add_option("files", rep_files, "sign-matrix files (default: the library)");
  on(sweep_cmd, [&](Session& s) {
    std::vector<HadamardLibraryEntry> reps;
    if (rep_files.empty()) {
      reps = load_library(g).representatives(order);
    } else {
      for (const auto& f : rep_files)
        reps.push_back({order, static_cast<int>(reps.size()), parse_sign_matrix_file(f), f});
    }
    s.report(rank_sweep_report(order, reps));
  });

  std::uint64_t fp = 2;
  int fd = 9, fm = 12;
  auto* feas_cmd = app.add_subcommand("size-feasibility", "is a spectral set of size m excluded by rank?");
  feas_cmd->add_option("--p", fp, "prime");
  feas_cmd->add_option("--d", fd, "dimension")->required();
  feas_cmd->add_option("--m", fm, "set size")->required();
  on(feas_cmd, [&](Session& s) { s.report(size_feasibility_report(fp, fd, fm, load_library(g))); });

  std::uint64_t probe_p = 3;
  auto* probe_cmd = app.add_subcommand("rank3-probe", "search for a 2p x 2p log-Hadamard matrix of rank 3");
  probe_cmd->add_option("--p", probe_p, "odd prime")->required();
  on(probe_cmd, [&](Session& s) { s.report(rank3_probe(PrimeModulus(probe_p), g.work_budget())); });

  std::vector<int> only;
  auto* claims_cmd = app.add_subcommand("verify-paper", "run the acceptance claims");
  claims_cmd->add_option("--claims", only, "claim numbers (default: all)")->delimiter(',');
  on(claims_cmd, [&](Session& s) {
    ClaimOptions opts;
    opts.threads = g.threads ? *g.threads : (std::getenv("ZPF_THREADS") ? g.thread_count() : 4);
    opts.deterministic = g.deterministic;
    opts.seed = g.seed;
    opts.data_dir = g.data_dir;
    if (!g.library.empty()) opts.library = g.library;
    std::vector<VerdictReport> out;
    for (const ClaimInfo& c : claims())
      if (only.empty() || std::find(only.begin(), only.end(), c.number) != only.end())
        out.push_back(run_claim(c.number, opts));
    s.reports(out);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return e.get_exit_code() == 0 ? rc : 2;
  }

  try {
    Session session(g);
    action(session);
    return session.finish();
  } catch (const std::exception& ex) {
    std::cerr << "zpf: " << ex.what() << '\n';
    return 2;
  }
}
