#include "zpf/io.hpp"

#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>
#include <unordered_map>

namespace zpf {

ParseError::ParseError(const std::string& source, int line, int column, const std::string& what)
    : std::runtime_error(source + ":" + std::to_string(line) +
                         (column > 0 ? ":" + std::to_string(column) : std::string()) + ": " + what),
      line_(line),
      column_(column) {}

namespace {

struct Token {
  std::string text;
  int column;  // 1-based
};

struct Line {
  int number;
  std::vector<Token> tokens;
  std::string raw;
};

/// Yields non-blank, non-comment lines split on whitespace.
class LineReader {
public:
  LineReader(std::istream& in, std::string source) : in_(in), source_(std::move(source)) {}

  std::optional<Line> next() {
    std::string raw;
    while (std::getline(in_, raw)) {
      ++number_;
      if (!raw.empty() && raw.back() == '\r') raw.pop_back();
      const auto first = raw.find_first_not_of(" \t");
      if (first == std::string::npos || raw[first] == '#') continue;
      Line line{number_, {}, raw};
      std::size_t i = 0;
      while (i < raw.size()) {
        while (i < raw.size() && (raw[i] == ' ' || raw[i] == '\t')) ++i;
        if (i == raw.size()) break;
        const std::size_t start = i;
        while (i < raw.size() && raw[i] != ' ' && raw[i] != '\t') ++i;
        line.tokens.push_back({raw.substr(start, i - start), static_cast<int>(start) + 1});
      }
      return line;
    }
    return std::nullopt;
  }

  [[noreturn]] void fail(int line, int column, const std::string& what) const {
    throw ParseError(source_, line, column, what);
  }
  [[noreturn]] void fail_eof(const std::string& what) const { fail(number_ + 1, 0, what); }

  const std::string& source() const { return source_; }

private:
  std::istream& in_;
  std::string source_;
  int number_ = 0;
};

std::optional<std::int64_t> to_int(const std::string& s) {
  std::int64_t v = 0;
  const char* first = s.data();
  if (!s.empty() && s[0] == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

std::int64_t expect_int(const LineReader& r, const Line& line, const Token& t, const char* what) {
  auto v = to_int(t.text);
  if (!v) r.fail(line.number, t.column, std::string("expected ") + what + ", got '" + t.text + "'");
  return *v;
}

PrimeModulus header_modulus(const LineReader& r, int line, std::int64_t p) {
  if (p < 2 || !is_prime(static_cast<std::uint64_t>(p)) ||
      static_cast<std::uint64_t>(p) > PrimeModulus::kMax)
    r.fail(line, 0, "modulus " + std::to_string(p) + " is not a supported prime");
  return PrimeModulus(static_cast<std::uint64_t>(p));
}

void expect_end(LineReader& r) {
  if (auto extra = r.next()) r.fail(extra->number, 0, "unexpected content after the last row");
}

GFMatrix read_gf_matrix(LineReader& r) {
  auto first = r.next();
  if (!first) r.fail_eof("empty input, expected header 'm n p'");
  if (first->tokens.size() != 3) r.fail(first->number, 0, "header must be 'm n p'");
  const std::int64_t m = expect_int(r, *first, first->tokens[0], "row count");
  const std::int64_t n = expect_int(r, *first, first->tokens[1], "column count");
  if (m < 1 || n < 1) r.fail(first->number, 0, "matrix dimensions must be positive");
  const PrimeModulus p =
      header_modulus(r, first->number, expect_int(r, *first, first->tokens[2], "modulus"));
  ResidueMatrix a(m, n);
  for (Index i = 0; i < m; ++i) {
    auto line = r.next();
    if (!line) r.fail_eof("expected " + std::to_string(m) + " rows, found " + std::to_string(i));
    if (static_cast<std::int64_t>(line->tokens.size()) != n)
      r.fail(line->number, 0,
             "row " + std::to_string(i) + " has " + std::to_string(line->tokens.size()) +
                 " entries, expected " + std::to_string(n));
    for (Index j = 0; j < n; ++j) {
      const Token& t = line->tokens[j];
      const std::int64_t v = expect_int(r, *line, t, "residue");
      if (v < 0 || v >= p.value())
        r.fail(line->number, t.column,
               "residue " + t.text + " at row " + std::to_string(i) + ", column " +
                   std::to_string(j) + " is not reduced mod " + std::to_string(p.value()));
      a(i, j) = static_cast<Residue>(v);
    }
  }
  return GFMatrix(p, std::move(a));
}

PointSet read_point_set(LineReader& r, std::optional<Line> first) {
  if (!first) r.fail_eof("empty input, expected header 'p d count'");
  if (first->tokens.size() != 3) r.fail(first->number, 0, "header must be 'p d count'");
  const PrimeModulus p =
      header_modulus(r, first->number, expect_int(r, *first, first->tokens[0], "modulus"));
  const std::int64_t d = expect_int(r, *first, first->tokens[1], "dimension");
  const std::int64_t count = expect_int(r, *first, first->tokens[2], "point count");
  if (d < 1 || d > 64) r.fail(first->number, 0, "dimension must be between 1 and 64");
  if (count < 1) r.fail(first->number, 0, "point count must be positive");
  std::optional<Ambient> g;
  try {
    g.emplace(p, static_cast<int>(d));
  } catch (const std::invalid_argument& ex) {
    r.fail(first->number, 0, ex.what());
  }
  std::vector<PointCode> codes;
  std::unordered_map<PointCode, int> seen;
  for (std::int64_t k = 0; k < count; ++k) {
    auto line = r.next();
    if (!line)
      r.fail_eof("expected " + std::to_string(count) + " points, found " + std::to_string(k));
    if (static_cast<std::int64_t>(line->tokens.size()) != d)
      r.fail(line->number, 0,
             "point has " + std::to_string(line->tokens.size()) + " coordinates, expected " +
                 std::to_string(d));
    Coords x(static_cast<std::size_t>(d));
    for (std::int64_t i = 0; i < d; ++i) {
      const Token& t = line->tokens[i];
      const std::int64_t v = expect_int(r, *line, t, "coordinate");
      if (v < 0 || v >= p.value())
        r.fail(line->number, t.column,
               "coordinate " + t.text + " is not reduced mod " + std::to_string(p.value()));
      x[i] = static_cast<Residue>(v);
    }
    const PointCode c = g->encode(x);
    if (auto [it, fresh] = seen.emplace(c, line->number); !fresh)
      r.fail(line->number, 0, "duplicate point (first given on line " + std::to_string(it->second) + ")");
    codes.push_back(c);
  }
  return PointSet(*g, std::move(codes));
}

std::optional<std::int8_t> sign_token(const std::string& s) {
  if (s == "1" || s == "+1" || s == "+") return 1;
  if (s == "-1" || s == "-") return -1;
  return std::nullopt;
}

template <typename F>
auto with_file(const std::filesystem::path& path, F&& parse) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return parse(in, path.string());
}

}  // namespace

GFMatrix parse_gf_matrix(std::istream& in, const std::string& source) {
  LineReader r(in, source);
  GFMatrix m = read_gf_matrix(r);
  expect_end(r);
  return m;
}

GFMatrix parse_gf_matrix_file(const std::filesystem::path& path) {
  return with_file(path, [](std::istream& in, const std::string& s) { return parse_gf_matrix(in, s); });
}

std::string serialize(const GFMatrix& m) {
  std::ostringstream out;
  out << m.rows() << ' ' << m.cols() << ' ' << m.modulus().value() << '\n';
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) out << (j ? " " : "") << m(i, j);
    out << '\n';
  }
  return out.str();
}

PointSet parse_point_set(std::istream& in, const std::string& source) {
  LineReader r(in, source);
  PointSet e = read_point_set(r, r.next());
  expect_end(r);
  return e;
}

PointSet parse_point_set_file(const std::filesystem::path& path) {
  return with_file(path, [](std::istream& in, const std::string& s) { return parse_point_set(in, s); });
}

std::vector<PointSet> parse_point_sets(std::istream& in, const std::string& source) {
  LineReader r(in, source);
  std::vector<PointSet> out;
  while (auto first = r.next()) out.push_back(read_point_set(r, std::move(first)));
  if (out.empty()) r.fail_eof("empty input, expected header 'p d count'");
  return out;
}

std::string serialize(const PointSet& e) {
  const Ambient& g = e.ambient();
  std::ostringstream out;
  out << g.modulus().value() << ' ' << g.dimension() << ' ' << e.size() << '\n';
  for (const Coords& x : e.coords()) {
    for (std::size_t i = 0; i < x.size(); ++i) out << (i ? " " : "") << x[i];
    out << '\n';
  }
  return out.str();
}

SignMatrix parse_sign_matrix(std::istream& in, const std::string& source) {
  LineReader r(in, source);
  std::optional<std::pair<std::int64_t, std::int64_t>> shape;
  std::vector<std::vector<std::int8_t>> rows;
  int first_row_line = 0;
  bool first = true;
  while (auto line = r.next()) {
    if (first) {
      first = false;
      // "m n" header: two integers that are not both valid sign entries.
      if (line->tokens.size() == 2) {
        auto a = to_int(line->tokens[0].text), b = to_int(line->tokens[1].text);
        auto sign = [](std::int64_t v) { return v == 1 || v == -1; };
        if (a && b && !(sign(*a) && sign(*b))) {
          if (*a < 1 || *b < 1) r.fail(line->number, 0, "header dimensions must be positive");
          shape.emplace(*a, *b);
          continue;
        }
      }
    }
    std::vector<std::int8_t> row;
    const bool grid = line->tokens.size() == 1 &&
                      line->tokens[0].text.find_first_not_of("+-") == std::string::npos;
    if (grid) {
      for (char ch : line->tokens[0].text) row.push_back(ch == '-' ? -1 : 1);
    } else {
      for (const Token& t : line->tokens) {
        if (auto s = sign_token(t.text)) {
          row.push_back(*s);
          continue;
        }
        const auto bad = t.text.find_first_not_of("+-1");
        if (line->tokens.size() == 1 && bad != std::string::npos)
          r.fail(line->number, t.column + static_cast<int>(bad),
                 std::string("illegal character '") + t.text[bad] + "'");
        r.fail(line->number, t.column, "illegal entry '" + t.text + "'");
      }
    }
    if (rows.empty()) {
      first_row_line = line->number;
    } else if (row.size() != rows.front().size()) {
      r.fail(line->number, 0,
             "ragged row: " + std::to_string(row.size()) + " entries, expected " +
                 std::to_string(rows.front().size()) + " (from line " +
                 std::to_string(first_row_line) + ")");
    }
    if (shape && static_cast<std::int64_t>(row.size()) != shape->second)
      r.fail(line->number, 0,
             "ragged row: " + std::to_string(row.size()) + " entries, header says " +
                 std::to_string(shape->second));
    rows.push_back(std::move(row));
  }
  if (rows.empty()) r.fail_eof("no matrix rows");
  if (shape && static_cast<std::int64_t>(rows.size()) != shape->first)
    r.fail_eof("header says " + std::to_string(shape->first) + " rows, found " +
               std::to_string(rows.size()));
  SignEntries h(static_cast<Index>(rows.size()), static_cast<Index>(rows.front().size()));
  for (Index i = 0; i < h.rows(); ++i)
    for (Index j = 0; j < h.cols(); ++j) h(i, j) = rows[i][j];
  return SignMatrix(std::move(h));
}

SignMatrix parse_sign_matrix_file(const std::filesystem::path& path) {
  return with_file(path, [](std::istream& in, const std::string& s) { return parse_sign_matrix(in, s); });
}

std::string serialize(const SignMatrix& h) {
  std::string out;
  for (Index i = 0; i < h.rows(); ++i) {
    for (Index j = 0; j < h.cols(); ++j) out += h(i, j) < 0 ? '-' : '+';
    out += '\n';
  }
  return out;
}

}  // namespace zpf
