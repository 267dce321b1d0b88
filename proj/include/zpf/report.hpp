#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "json.hpp"
#include "zpf/fuglede.hpp"
#include "zpf/gf_matrix.hpp"
#include "zpf/group.hpp"

namespace zpf {

using Json = nlohmann::ordered_json;

inline constexpr int kReportSchemaVersion = 1;

enum class Verdict { holds, fails, found, none, incomplete };

std::string to_string(Verdict v);
Verdict verdict_from_string(const std::string& s);

/// Machine-readable outcome of a check or scan.
struct VerdictReport {
  std::string claim_id;
  Json inputs = Json::object();
  Verdict verdict = Verdict::incomplete;
  Json result = Json::object();  // computed values that are not certificates
  std::optional<Json> certificate;
  double elapsed_ms = 0;
  std::uint64_t work_units = 0;
  unsigned threads = 1;
  std::optional<std::uint64_t> seed;

  bool passed() const { return verdict == Verdict::holds || verdict == Verdict::found; }
};

/// With include_timing false, elapsed time is left out so that reports of
/// deterministic runs compare byte for byte.
Json to_json(const VerdictReport& r, bool include_timing = true);
VerdictReport report_from_json(const Json& j);

/// Indented key/value rendering of the same structure.
std::string render_text(const VerdictReport& r, bool include_timing = true);

// Certificate and input encodings shared by the CLI and the claim runner.
Json point_set_json(const PointSet& e);
PointSet point_set_from_json(const Json& j);
Json matrix_json(const GFMatrix& m);
GFMatrix matrix_from_json(const Json& j);
Json certificate_json(const TilingCertificate& c);
Json certificate_json(const SpectrumCertificate& c);
Json certificate_json(const GraphWitness& w, const Ambient& g);

/// Re-checks the certificate embedded in a report against the point set in
/// its inputs ("set"), using the independent verifiers. Returns false when
/// the report has no certificate of a known kind.
bool verify_embedded_certificate(const VerdictReport& r);

}  // namespace zpf
