#include "salt/dimacs.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace salt {

namespace {

class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  // Next non-blank, non-comment line; false at end of input.
  bool next() {
    while (std::getline(in_, line_)) {
      ++number_;
      pos_ = 0;
      skip_space();
      if (pos_ == line_.size() || line_[pos_] == 'c') continue;
      return true;
    }
    return false;
  }

  std::string_view word() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < line_.size() && !is_space(line_[pos_])) ++pos_;
    return std::string_view(line_).substr(start, pos_ - start);
  }

  std::int64_t integer(const char* what) {
    const std::string_view w = word();
    std::int64_t value = 0;
    const auto [ptr, ec] = std::from_chars(w.data(), w.data() + w.size(), value);
    if (w.empty() || ec != std::errc() || ptr != w.data() + w.size())
      throw FormatError(where() + "expected integer " + what);
    return value;
  }

  bool at_end() {
    skip_space();
    return pos_ == line_.size();
  }

  std::string where() const { return "line " + std::to_string(number_) + ": "; }

 private:
  static bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r'; }
  void skip_space() {
    while (pos_ < line_.size() && is_space(line_[pos_])) ++pos_;
  }

  std::istream& in_;
  std::string line_;
  std::size_t pos_ = 0;
  std::size_t number_ = 0;
};

}  // namespace

Graph parse_dimacs_gr(std::istream& in) {
  LineReader r(in);
  if (!r.next()) throw FormatError("empty input: missing 'p sp <n> <m>' header");
  if (r.word() != "p" || r.word() != "sp") throw FormatError(r.where() + "malformed header");
  const std::int64_t n = r.integer("vertex count");
  const std::int64_t m = r.integer("arc count");
  if (n < 0 || m < 0 || n >= kNoVertex || m >= kInfinity || !r.at_end())
    throw FormatError(r.where() + "malformed header");

  std::vector<ArcInput> arcs;
  arcs.reserve(static_cast<std::size_t>(m));
  std::int64_t seen = 0;
  while (r.next()) {
    const std::string_view tag = r.word();
    if (tag != "a") throw FormatError(r.where() + "unexpected line type '" + std::string(tag) + "'");
    const std::int64_t u = r.integer("tail");
    const std::int64_t v = r.integer("head");
    const std::int64_t w = r.integer("weight");
    if (!r.at_end()) throw FormatError(r.where() + "trailing data on arc line");
    if (u < 1 || u > n || v < 1 || v > n)
      throw RangeError(r.where() + "vertex id outside [1," + std::to_string(n) + "]");
    if (w <= 0 || w >= (std::int64_t{1} << 31))
      throw WeightError(r.where() + "weight must lie in [1, 2^31)");
    if (++seen > m) throw CountError(r.where() + "more arc lines than the header's " + std::to_string(m));
    arcs.push_back({static_cast<Vertex>(u - 1), static_cast<Vertex>(v - 1), static_cast<Weight>(w)});
  }
  if (seen != m)
    throw CountError("header announces " + std::to_string(m) + " arcs, found " + std::to_string(seen));
  return Graph::from_arcs(static_cast<std::uint32_t>(n), std::move(arcs));
}

void write_dimacs_gr(std::ostream& out, const Graph& g) {
  out << "p sp " << g.vertex_count() << ' ' << g.arc_count() << '\n';
  for (Vertex v = 0; v < g.vertex_count(); ++v)
    for (ArcId a = g.first_arc(v); a < g.end_arc(v); ++a)
      out << "a " << v + 1 << ' ' << g.head(a) + 1 << ' ' << g.weight(a) << '\n';
}

Coordinates parse_dimacs_co(std::istream& in, std::uint32_t vertex_count) {
  LineReader r(in);
  if (!r.next()) throw FormatError("empty input: missing 'p aux sp co <n>' header");
  if (r.word() != "p" || r.word() != "aux" || r.word() != "sp" || r.word() != "co")
    throw FormatError(r.where() + "malformed header");
  const std::int64_t n = r.integer("vertex count");
  if (!r.at_end()) throw FormatError(r.where() + "malformed header");
  if (n != vertex_count)
    throw CountError("coordinate file has " + std::to_string(n) + " vertices, graph has " +
                     std::to_string(vertex_count));

  Coordinates coords(vertex_count);
  std::vector<bool> seen(vertex_count, false);
  std::uint32_t count = 0;
  while (r.next()) {
    const std::string_view tag = r.word();
    if (tag != "v") throw FormatError(r.where() + "unexpected line type '" + std::string(tag) + "'");
    const std::int64_t id = r.integer("vertex id");
    const std::int64_t x = r.integer("x");
    const std::int64_t y = r.integer("y");
    if (!r.at_end()) throw FormatError(r.where() + "trailing data on vertex line");
    if (id < 1 || id > n) throw RangeError(r.where() + "vertex id outside [1," + std::to_string(n) + "]");
    if (x < INT32_MIN || x > INT32_MAX || y < INT32_MIN || y > INT32_MAX)
      throw RangeError(r.where() + "coordinate does not fit 32 bits");
    const auto v = static_cast<Vertex>(id - 1);
    if (seen[v]) throw DuplicateError(r.where() + "duplicate vertex " + std::to_string(id));
    seen[v] = true;
    ++count;
    coords[v] = {static_cast<std::int32_t>(x), static_cast<std::int32_t>(y)};
  }
  if (count != vertex_count)
    throw CountError("coordinates given for " + std::to_string(count) + " of " +
                     std::to_string(vertex_count) + " vertices");
  return coords;
}

void write_dimacs_co(std::ostream& out, const Coordinates& coords) {
  out << "p aux sp co " << coords.size() << '\n';
  for (std::size_t v = 0; v < coords.size(); ++v)
    out << "v " << v + 1 << ' ' << coords[v].x << ' ' << coords[v].y << '\n';
}

Graph load_dimacs_gr(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  try {
    return parse_dimacs_gr(in);
  } catch (const Error& e) {
    throw Error(path.string() + ": " + e.what());
  }
}

Coordinates load_dimacs_co(const std::filesystem::path& path, std::uint32_t vertex_count) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  try {
    return parse_dimacs_co(in, vertex_count);
  } catch (const Error& e) {
    throw Error(path.string() + ": " + e.what());
  }
}

}  // namespace salt
