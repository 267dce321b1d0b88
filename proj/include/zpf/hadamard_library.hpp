#pragma once

#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "zpf/log_hadamard.hpp"

namespace zpf {

/// One equivalence-class representative of Hadamard matrices of some order.
struct HadamardLibraryEntry {
  int order = 0;
  int index = 0;       // position among the representatives of this order
  SignMatrix matrix;
  std::string source;  // "bundled" or the ingested file path
};

/// Representatives of Hadamard equivalence classes, keyed by order.
///
/// An order is complete when the representatives listed cover every class.
/// Orders m > 2 with m % 4 != 0 are complete and empty, since no Hadamard
/// matrix of such an order exists.
class HadamardLibrary {
public:
  /// Orders 1, 2 and 12, each a single class and flagged complete.
  static HadamardLibrary bundled();

  /// Adds every file named had.<m>.* in `dir` as a representative of order
  /// m. An optional library.json with {"complete_orders": [...]} flags
  /// orders as complete. Throws std::runtime_error naming the file on a
  /// parse error or a matrix that is not m x m.
  void ingest_directory(const std::filesystem::path& dir);

  void add(int order, SignMatrix matrix, std::string source);
  void mark_complete(int order) { complete_.insert(order); }

  bool complete(int order) const;
  std::vector<HadamardLibraryEntry> representatives(int order) const;
  std::vector<int> orders() const;

private:
  std::map<int, std::vector<HadamardLibraryEntry>> entries_;
  std::set<int> complete_;
};

}  // namespace zpf
