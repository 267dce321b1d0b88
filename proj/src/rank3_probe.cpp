#include <algorithm>
#include <chrono>
#include <set>

#include "zpf/log_hadamard.hpp"
#include "zpf/search.hpp"

namespace zpf {

namespace {

using Row = std::vector<Residue>;

class Probe {
public:
  Probe(PrimeModulus p, int max_rank, std::uint64_t budget)
      : p_(p), q_(2 * p.value()), r_(max_rank), budget_(budget) {}

  LowRankProbeResult run() {
    basis_.clear();
    extend(0);
    return std::move(out_);
  }

private:
  // Equidistributed: each residue exactly twice among 2p entries.
  bool equidistributed(const Row& v) const {
    std::vector<int> count(p_.value(), 0);
    for (Residue x : v)
      if (++count[x] > 2) return false;
    return true;
  }

  bool difference_ok(const Row& a, const Row& b) const {
    std::vector<int> count(p_.value(), 0);
    for (std::size_t j = 0; j < q_; ++j)
      if (++count[p_.sub(a[j], b[j])] > 2) return false;
    return true;
  }

  bool done() const { return out_.hit || !out_.complete; }

  // Chooses basis row `level`, column by column, keeping columns 1..q-1
  // sorted by their entries in rows 0..level.
  void extend(int level) {
    if (done()) return;
    if (level == r_) {
      if (budget_ != 0 && out_.bases >= budget_) {
        out_.complete = false;
        return;
      }
      ++out_.bases;
      complete_rows();
      return;
    }
    Row row(q_, 0);
    std::vector<int> self(p_.value(), 0);
    std::vector<std::vector<int>> diff(level, std::vector<int>(p_.value(), 0));
    self[0] = 1;
    for (auto& d : diff) d[0] = 1;
    fill(level, 1, row, self, diff);
  }

  void fill(int level, std::size_t j, Row& row, std::vector<int>& self, std::vector<std::vector<int>>& diff) {
    if (done()) return;
    if (j == q_) {
      basis_.push_back(row);
      extend(level + 1);
      basis_.pop_back();
      return;
    }
    bool block_start = j == 1;
    for (int i = 0; i < level && !block_start; ++i) block_start = basis_[i][j] != basis_[i][j - 1];
    const Residue lo = block_start ? 0 : row[j - 1];
    for (Residue v = lo; v < p_.value(); ++v) {
      if (self[v] == 2) continue;
      bool ok = true;
      for (int i = 0; i < level && ok; ++i) ok = diff[i][p_.sub(v, basis_[i][j])] < 2;
      if (!ok) continue;
      row[j] = v;
      ++self[v];
      for (int i = 0; i < level; ++i) ++diff[i][p_.sub(v, basis_[i][j])];
      fill(level, j + 1, row, self, diff);
      --self[v];
      for (int i = 0; i < level; ++i) --diff[i][p_.sub(v, basis_[i][j])];
      if (done()) return;
    }
  }

  // Looks for the remaining 2p - 1 - r rows inside the span of the basis.
  void complete_rows() {
    std::set<Row> span;
    std::vector<Residue> coef(r_, 0);
    for (;;) {
      Row v(q_, 0);
      for (int i = 0; i < r_; ++i)
        for (std::size_t j = 0; j < q_; ++j) v[j] = p_.add(v[j], p_.mul(coef[i], basis_[i][j]));
      span.insert(std::move(v));
      int i = 0;
      while (i < r_ && ++coef[i] == p_.value()) coef[i++] = 0;
      if (i == r_) break;
    }
    std::vector<Row> cand;
    for (const Row& v : span) {
      if (std::all_of(v.begin(), v.end(), [](Residue x) { return x == 0; })) continue;
      if (std::find(basis_.begin(), basis_.end(), v) != basis_.end()) continue;
      if (!equidistributed(v)) continue;
      bool ok = true;
      for (const Row& b : basis_) ok = ok && difference_ok(v, b);
      if (ok) cand.push_back(v);
    }
    const std::size_t need = q_ - 1 - static_cast<std::size_t>(r_);
    if (cand.size() < need) return;
    ++out_.cliques;
    std::vector<std::size_t> all(cand.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    std::vector<std::size_t> chosen;
    if (clique(cand, all, chosen, need)) {
      ResidueMatrix m(static_cast<Index>(q_), static_cast<Index>(q_));
      m.setZero();
      std::vector<Row> rows(basis_);
      for (std::size_t c : chosen) rows.push_back(cand[c]);
      for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < q_; ++j) m(static_cast<Index>(i + 1), static_cast<Index>(j)) = rows[i][j];
      GFMatrix hit(p_, std::move(m));
      if (!is_log_hadamard(hit) || rank(hit) > r_)
        throw std::logic_error("rank probe produced an invalid matrix");
      out_.hit = std::move(hit);
    }
  }

  bool clique(const std::vector<Row>& cand, const std::vector<std::size_t>& pool, std::vector<std::size_t>& chosen,
              std::size_t need) const {
    if (chosen.size() == need) return true;
    if (chosen.size() + pool.size() < need) return false;
    for (std::size_t k = 0; k < pool.size(); ++k) {
      if (chosen.size() + (pool.size() - k) < need) return false;
      std::vector<std::size_t> next;
      for (std::size_t l = k + 1; l < pool.size(); ++l)
        if (difference_ok(cand[pool[k]], cand[pool[l]])) next.push_back(pool[l]);
      chosen.push_back(pool[k]);
      if (clique(cand, next, chosen, need)) return true;
      chosen.pop_back();
    }
    return false;
  }

  PrimeModulus p_;
  std::size_t q_;
  int r_;
  std::uint64_t budget_;
  std::vector<Row> basis_;
  LowRankProbeResult out_;
};

}  // namespace

LowRankProbeResult low_rank_probe(PrimeModulus p, int max_rank, std::uint64_t budget) {
  if (max_rank < 1) throw std::invalid_argument("rank bound must be positive");
  if (static_cast<std::uint64_t>(max_rank) > 2 * p.value() - 1)
    throw std::invalid_argument("rank bound exceeds the number of nonzero rows");
  LowRankProbeResult out = Probe(p, max_rank, budget).run();
  out.search_space =
      "dephased 2p x 2p matrices over Z_p; rows 1.." + std::to_string(max_rank) +
      " range over rows with first entry 0, each residue twice, pairwise differences equidistributed, "
      "and columns 2..2p sorted lexicographically by their entries in those rows; the other rows are drawn "
      "from the span of rows 1.." + std::to_string(max_rank) + "; one work unit per basis tuple";
  return out;
}

VerdictReport rank3_probe(PrimeModulus p, std::uint64_t budget) {
  if (p.value() == 2) throw std::invalid_argument("rank-3 probe needs an odd prime");
  const auto t0 = std::chrono::steady_clock::now();
  const LowRankProbeResult res = low_rank_probe(p, 3, budget);
  VerdictReport r;
  r.claim_id = "rank3-probe";
  r.inputs = {{"p", p.value()}, {"max_rank", 3}, {"budget", budget}};
  r.result = {{"search_space", res.search_space},
              {"bases", res.bases},
              {"clique_searches", res.cliques},
              {"complete", res.complete}};
  if (res.hit) {
    r.verdict = Verdict::found;
    Json c = matrix_json(*res.hit);
    c["kind"] = "matrix";
    r.certificate = std::move(c);
  } else {
    r.verdict = res.complete ? Verdict::none : Verdict::incomplete;
  }
  r.work_units = res.bases;
  r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

}  // namespace zpf
