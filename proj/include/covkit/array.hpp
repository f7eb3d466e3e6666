#pragma once

#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "covkit/combinatorics.hpp"

namespace covkit {

enum class SchemeKind { partition, weight };

inline const char* to_string(SchemeKind k) {
  return k == SchemeKind::partition ? "partition" : "weight";
}

// Coverage regime: which word classes every t-column projection must show.
struct Scheme {
  SchemeKind kind = SchemeKind::partition;
  int t = 1;
};

struct WeightValue {
  std::int64_t w = 0;
  friend auto operator<=>(const WeightValue&, const WeightValue&) = default;
};

// A coverage target: either an equality pattern or a row-sum value.
using PatternClass = std::variant<PartitionRgs, WeightValue>;

// Scheme cannot be satisfied at all (e.g. partition coverage with d < t).
class infeasible_error : public std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A declared instance limit was exceeded (search too large, restarts
// exhausted, subset scan too big).
class limit_error : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

class parse_error : public std::runtime_error {
 public:
  parse_error(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// k x n array over the alphabet {1..d}. Cells are stored 0-based row-major;
// the text format renders them 1-based.
struct Array {
  int k = 0;
  int n = 0;
  int d = 0;
  std::vector<int> cells;

  Array() = default;
  Array(int rows, int cols, int alphabet)
      : k(rows), n(cols), d(alphabet), cells(checked_size(rows, cols, alphabet)) {}

  int at(int r, int c) const { return cells[static_cast<std::size_t>(r) * n + c]; }
  int& at(int r, int c) { return cells[static_cast<std::size_t>(r) * n + c]; }

  friend bool operator==(const Array&, const Array&) = default;

 private:
  static std::size_t checked_size(int rows, int cols, int alphabet) {
    if (rows < 1 || cols < 1 || alphabet < 1)
      throw std::invalid_argument("array dimensions and alphabet must be positive");
    return static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols);
  }
};

// One deficient column subset with the classes it is missing.
struct Deficiency {
  std::vector<int> columns;             // strictly increasing, 0-based
  std::vector<PatternClass> missing;    // in class enumeration order
  friend bool operator==(const Deficiency&, const Deficiency&) = default;
};

struct DeficiencyReport {
  bool covering = false;
  bool truncated = false;
  std::vector<Deficiency> deficiencies;  // colex order of column subsets
  friend bool operator==(const DeficiencyReport&, const DeficiencyReport&) = default;
};

// An array together with the scheme its file header declares.
struct ArrayFile {
  Array array;
  Scheme scheme;
};

namespace detail {

inline std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::string cur;
  for (char c : text) {
    if (c == '\n') {
      lines.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) lines.push_back(cur);
  return lines;
}

}  // namespace detail

// Text format: header `k n d scheme t`, then k lines of n integers in 1..d.
inline ArrayFile parse_array(const std::string& text) {
  const std::vector<std::string> lines = detail::split_lines(text);
  if (lines.empty()) throw parse_error(1, "empty input");

  std::istringstream head(lines[0]);
  int k = 0, n = 0, d = 0, t = 0;
  std::string scheme_word, extra;
  if (!(head >> k >> n >> d >> scheme_word >> t))
    throw parse_error(1, "expected header `k n d scheme t`");
  if (head >> extra) throw parse_error(1, "unexpected trailing token in header");
  if (k < 1 || n < 1 || d < 1 || t < 1)
    throw parse_error(1, "k, n, d and t must be positive");
  if (t > n) throw parse_error(1, "strength t exceeds column count n");

  Scheme scheme;
  scheme.t = t;
  if (scheme_word == "partition") {
    scheme.kind = SchemeKind::partition;
  } else if (scheme_word == "weight") {
    scheme.kind = SchemeKind::weight;
  } else {
    throw parse_error(1, "unknown scheme `" + scheme_word + "`");
  }

  Array a(k, n, d);
  for (int r = 0; r < k; ++r) {
    const int line_no = r + 2;
    if (static_cast<std::size_t>(r + 1) >= lines.size())
      throw parse_error(line_no, "missing row (expected " + std::to_string(k) + " rows)");
    std::istringstream row(lines[r + 1]);
    for (int c = 0; c < n; ++c) {
      int value = 0;
      if (!(row >> value))
        throw parse_error(line_no, "expected " + std::to_string(n) + " values");
      if (value < 1 || value > d)
        throw parse_error(line_no, "symbol " + std::to_string(value) + " out of range 1.." +
                                       std::to_string(d));
      a.at(r, c) = value - 1;
    }
    if (row >> extra) throw parse_error(line_no, "unexpected trailing token");
  }
  for (std::size_t i = static_cast<std::size_t>(k) + 1; i < lines.size(); ++i) {
    std::istringstream rest(lines[i]);
    if (rest >> extra)
      throw parse_error(static_cast<int>(i) + 1, "unexpected content after last row");
  }
  return {std::move(a), scheme};
}

// Canonical rendering: ASCII, single spaces, LF line endings, 1-based symbols.
inline std::string serialize_array(const Array& a, const Scheme& s) {
  std::string out;
  out += std::to_string(a.k) + " " + std::to_string(a.n) + " " + std::to_string(a.d) + " " +
         to_string(s.kind) + " " + std::to_string(s.t) + "\n";
  for (int r = 0; r < a.k; ++r) {
    for (int c = 0; c < a.n; ++c) {
      if (c) out += ' ';
      out += std::to_string(a.at(r, c) + 1);
    }
    out += '\n';
  }
  return out;
}

}  // namespace covkit
