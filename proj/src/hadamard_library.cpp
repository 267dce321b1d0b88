#include "zpf/hadamard_library.hpp"

#include <algorithm>
#include <fstream>
#include <regex>

#include "json.hpp"
#include "zpf/construct.hpp"
#include "zpf/io.hpp"

namespace zpf {

HadamardLibrary HadamardLibrary::bundled() {
  HadamardLibrary lib;
  lib.add(1, SignMatrix{{1}}, "bundled");
  lib.add(2, SignMatrix{{1, 1}, {1, -1}}, "bundled");
  lib.add(12, bundled_hadamard_12(), "bundled");
  for (int m : {1, 2, 12}) lib.mark_complete(m);
  return lib;
}

void HadamardLibrary::add(int order, SignMatrix matrix, std::string source) {
  if (matrix.rows() != order || matrix.cols() != order)
    throw std::runtime_error(source + ": expected a " + std::to_string(order) + " x " +
                             std::to_string(order) + " matrix, got " + std::to_string(matrix.rows()) +
                             " x " + std::to_string(matrix.cols()));
  auto& list = entries_[order];
  list.push_back({order, static_cast<int>(list.size()), std::move(matrix), std::move(source)});
}

void HadamardLibrary::ingest_directory(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir))
    throw std::runtime_error(dir.string() + " is not a directory");
  static const std::regex kName(R"(had\.(\d+)(\..*)?)");
  std::vector<std::pair<int, std::filesystem::path>> files;
  for (const auto& ent : std::filesystem::directory_iterator(dir)) {
    if (!ent.is_regular_file()) continue;
    std::smatch m;
    const std::string name = ent.path().filename().string();
    if (std::regex_match(name, m, kName)) files.emplace_back(std::stoi(m[1].str()), ent.path());
  }
  std::sort(files.begin(), files.end());
  for (const auto& [order, path] : files) {
    try {
      add(order, parse_sign_matrix_file(path), path.string());
    } catch (const ParseError&) {
      throw;
    } catch (const std::invalid_argument& ex) {
      throw std::runtime_error(path.string() + ": " + ex.what());
    }
  }
  const auto manifest = dir / "library.json";
  if (std::filesystem::exists(manifest)) {
    std::ifstream in(manifest);
    const auto j = nlohmann::json::parse(in);
    for (int m : j.value("complete_orders", std::vector<int>{})) mark_complete(m);
  }
}

bool HadamardLibrary::complete(int order) const {
  if (order > 2 && order % 4 != 0) return true;
  return complete_.count(order) > 0;
}

std::vector<HadamardLibraryEntry> HadamardLibrary::representatives(int order) const {
  auto it = entries_.find(order);
  return it == entries_.end() ? std::vector<HadamardLibraryEntry>{} : it->second;
}

std::vector<int> HadamardLibrary::orders() const {
  std::vector<int> out;
  for (const auto& [m, list] : entries_) out.push_back(m);
  return out;
}

}  // namespace zpf
