#include "zpf/report.hpp"

#include <sstream>
#include <stdexcept>

namespace zpf {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::holds: return "holds";
    case Verdict::fails: return "fails";
    case Verdict::found: return "found";
    case Verdict::none: return "none";
    case Verdict::incomplete: return "incomplete";
  }
  return "incomplete";
}

Verdict verdict_from_string(const std::string& s) {
  for (Verdict v : {Verdict::holds, Verdict::fails, Verdict::found, Verdict::none, Verdict::incomplete})
    if (to_string(v) == s) return v;
  throw std::invalid_argument("unknown verdict '" + s + "'");
}

Json to_json(const VerdictReport& r, bool include_timing) {
  Json j;
  j["schema_version"] = kReportSchemaVersion;
  j["claim_id"] = r.claim_id;
  j["inputs"] = r.inputs;
  j["verdict"] = to_string(r.verdict);
  j["result"] = r.result;
  j["certificate"] = r.certificate ? *r.certificate : Json(nullptr);
  Json metrics;
  if (include_timing) metrics["elapsed_ms"] = r.elapsed_ms;
  metrics["work_units"] = r.work_units;
  metrics["threads"] = r.threads;
  j["metrics"] = std::move(metrics);
  j["tool_version"] = ZPF_VERSION;
  j["seed"] = r.seed ? Json(*r.seed) : Json(nullptr);
  return j;
}

VerdictReport report_from_json(const Json& j) {
  if (j.value("schema_version", 0) != kReportSchemaVersion)
    throw std::invalid_argument("unsupported report schema version");
  VerdictReport r;
  r.claim_id = j.at("claim_id").get<std::string>();
  r.inputs = j.value("inputs", Json::object());
  r.verdict = verdict_from_string(j.at("verdict").get<std::string>());
  r.result = j.value("result", Json::object());
  if (j.contains("certificate") && !j["certificate"].is_null()) r.certificate = j["certificate"];
  const Json& m = j.at("metrics");
  r.elapsed_ms = m.value("elapsed_ms", 0.0);
  r.work_units = m.value("work_units", std::uint64_t{0});
  r.threads = m.value("threads", 1u);
  if (j.contains("seed") && !j["seed"].is_null()) r.seed = j["seed"].get<std::uint64_t>();
  return r;
}

namespace {

void render(std::ostringstream& out, const Json& j, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  for (auto it = j.begin(); it != j.end(); ++it) {
    const Json& v = it.value();
    if (v.is_object() && !v.empty()) {
      out << pad << it.key() << ":\n";
      render(out, v, indent + 1);
    } else {
      out << pad << it.key() << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
    }
  }
}

}  // namespace

std::string render_text(const VerdictReport& r, bool include_timing) {
  std::ostringstream out;
  render(out, to_json(r, include_timing), 0);
  return out.str();
}

Json point_set_json(const PointSet& e) {
  Json pts = Json::array();
  for (const Coords& x : e.coords()) pts.push_back(x);
  return {{"p", e.ambient().modulus().value()}, {"d", e.ambient().dimension()}, {"points", pts}};
}

PointSet point_set_from_json(const Json& j) {
  const Ambient g(PrimeModulus(j.at("p").get<std::uint64_t>()), j.at("d").get<int>());
  std::vector<Coords> pts;
  for (const Json& x : j.at("points")) pts.push_back(x.get<Coords>());
  return PointSet::from_coords(g, pts);
}

Json matrix_json(const GFMatrix& m) {
  Json rows = Json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return {{"p", m.modulus().value()}, {"rows", rows}};
}

GFMatrix matrix_from_json(const Json& j) {
  const PrimeModulus p(j.at("p").get<std::uint64_t>());
  const Json& rows = j.at("rows");
  const Index m = static_cast<Index>(rows.size());
  const Index n = m == 0 ? 0 : static_cast<Index>(rows[0].size());
  ResidueMatrix a(m, n);
  for (Index i = 0; i < m; ++i) {
    if (static_cast<Index>(rows[i].size()) != n) throw std::invalid_argument("ragged matrix");
    for (Index k = 0; k < n; ++k) a(i, k) = rows[i][k].get<Residue>();
  }
  return GFMatrix(p, std::move(a));
}

Json certificate_json(const TilingCertificate& c) {
  return {{"kind", "tiling"}, {"translations", point_set_json(c.translations)}};
}

Json certificate_json(const SpectrumCertificate& c) {
  return {{"kind", "spectrum"}, {"exponents", point_set_json(c.exponents)}};
}

Json certificate_json(const GraphWitness& w, const Ambient& g) {
  Json v = Json::array(), k = Json::array();
  for (PointCode b : w.subspace_basis) v.push_back(g.decode(b));
  for (PointCode b : w.complement_basis) k.push_back(g.decode(b));
  return {{"kind", "graph"}, {"subspace_basis", v}, {"complement_basis", k}};
}

bool verify_embedded_certificate(const VerdictReport& r) {
  if (!r.certificate || !r.inputs.contains("set")) return false;
  const PointSet e = point_set_from_json(r.inputs["set"]);
  const Json& c = *r.certificate;
  const std::string kind = c.value("kind", "");
  if (kind == "tiling") return verify_tiling(e, point_set_from_json(c.at("translations")));
  if (kind == "spectrum") return verify_spectrum(e, point_set_from_json(c.at("exponents")));
  if (kind == "graph") {
    const Ambient& g = e.ambient();
    GraphWitness w;
    for (const Json& x : c.at("subspace_basis")) w.subspace_basis.push_back(g.encode(x.get<Coords>()));
    for (const Json& x : c.at("complement_basis")) w.complement_basis.push_back(g.encode(x.get<Coords>()));
    return verify_graph_witness(e, w);
  }
  return false;
}

}  // namespace zpf
