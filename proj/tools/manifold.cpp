#include "manifold.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "riemext/parse.hpp"
#include "riemext/render.hpp"

namespace riemext::cli {

BaseGeometry ManifoldFile::base() const {
  if (metric) return base_from_metric(*metric);
  return base_from_connection(make_connection(*connection));
}

IndexedTensor ManifoldFile::c_or_zero() const { return c ? *c : zero_c(chart()); }

namespace {

const Symbol kTime("t");

struct Line {
  std::string_view text;
  int number;
  std::size_t pos = 0;

  int column() const { return static_cast<int>(pos) + 1; }

  [[noreturn]] void fail(const std::string& message) const { throw ParseError(message, number, column()); }

  void skip_space() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }
  bool at_end() {
    skip_space();
    return pos >= text.size();
  }
  bool accept(char c) {
    skip_space();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  std::string identifier() {
    skip_space();
    std::size_t start = pos;
    while (pos < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
      ++pos;
    std::string word(text.substr(start, pos - start));
    if (word.empty() || !is_identifier(word)) {
      pos = start;
      fail("expected an identifier");
    }
    return word;
  }
  int integer() {
    skip_space();
    std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (start == pos) fail("expected an index");
    return std::stoi(std::string(text.substr(start, pos - start)));
  }
};

std::vector<Line> split_lines(std::string_view text) {
  std::vector<Line> out;
  int number = 1;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view l = text.substr(start, end - start);
    std::size_t hash = l.find('#');
    if (hash != std::string_view::npos) l = l.substr(0, hash);
    if (!l.empty() && l.back() == '\r') l.remove_suffix(1);
    out.push_back(Line{l, number++});
    start = end + 1;
  }
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : lines_(split_lines(text)) {}

  ManifoldFile manifold() {
    ManifoldFile f;
    bool have_name = false;
    while (next()) {
      Line& l = current();
      std::size_t start = (l.skip_space(), l.pos);
      std::string kw = l.identifier();
      if (kw == "manifold") {
        if (have_name) l.fail("duplicate 'manifold' line");
        f.name = l.identifier();
        have_name = true;
        end_of_line();
      } else if (kw == "coords") {
        if (!f.coords.empty()) l.fail("duplicate 'coords' line");
        f.coords = symbol_list(f);
      } else if (kw == "params") {
        if (!f.params.empty()) l.fail("duplicate 'params' line");
        f.params = symbol_list(f);
      } else if (kw == "omega") {
        if (!f.omega.empty()) l.fail("duplicate 'omega' line");
        f.omega = symbol_list(f);
      } else if (kw == "metric" || kw == "connection" || kw == "c") {
        if (f.coords.empty()) l.fail("'" + kw + "' block before 'coords'");
        if (!have_name) l.fail("missing 'manifold' line");
        if (kw == "metric") {
          if (f.metric || f.connection) l.fail("only one of 'metric' and 'connection' is allowed");
          f.metric = block(f, "g", 2);
        } else if (kw == "connection") {
          if (f.metric || f.connection) l.fail("only one of 'metric' and 'connection' is allowed");
          f.connection = block(f, "Gamma", 3);
        } else {
          if (f.c) l.fail("duplicate 'c' block");
          f.c = block(f, "c", 2);
        }
      } else {
        l.pos = start;
        l.fail("unknown keyword '" + kw + "'");
      }
    }
    Line eof{"", static_cast<int>(lines_.size())};
    if (!have_name) eof.fail("missing 'manifold' line");
    if (f.coords.empty()) eof.fail("missing 'coords' line");
    if (!f.metric && !f.connection) eof.fail("missing 'metric' or 'connection' block");
    if (!f.omega.empty() && f.omega.size() != f.coords.size())
      eof.fail("'omega' needs " + std::to_string(f.coords.size()) + " names");
    return f;
  }

  IndexedTensor c_only(const ManifoldFile& base) {
    std::optional<IndexedTensor> c;
    while (next()) {
      Line& l = current();
      std::size_t start = (l.skip_space(), l.pos);
      std::string kw = l.identifier();
      if (kw != "c") {
        l.pos = start;
        l.fail("a c file holds a single 'c' block");
      }
      if (c) l.fail("duplicate 'c' block");
      c = block(base, "c", 2);
    }
    if (!c) Line{"", static_cast<int>(lines_.size())}.fail("missing 'c' block");
    return *c;
  }

 private:
  // Advances to the next non-blank line; false at end of input.
  bool next() {
    while (++index_ < static_cast<int>(lines_.size()))
      if (!current().at_end()) return true;
    return false;
  }
  Line& current() { return lines_[index_]; }

  void end_of_line() {
    if (!current().at_end()) current().fail("unexpected text");
  }

  std::vector<Symbol> symbol_list(const ManifoldFile& f) {
    Line& l = current();
    std::vector<Symbol> out;
    while (!l.at_end()) {
      std::size_t start = l.pos;
      Symbol s(l.identifier());
      auto taken = [&](const std::vector<Symbol>& v) {
        return std::find(v.begin(), v.end(), s) != v.end();
      };
      if (s == kTime || s.name() == "exp") {
        l.pos = start;
        l.fail("'" + s.name() + "' is reserved");
      }
      if (taken(out) || taken(f.coords) || taken(f.params) || taken(f.omega)) {
        l.pos = start;
        l.fail("symbol '" + s.name() + "' declared twice");
      }
      out.push_back(s);
    }
    if (out.empty()) l.fail("expected at least one name");
    return out;
  }

  IndexedTensor block(const ManifoldFile& f, const std::string& entry, int rank) {
    current().expect('{');
    end_of_line();
    int n = f.dim();
    std::vector<Variance> var(rank, Variance::Down);
    if (rank == 3) var[0] = Variance::Up;
    IndexedTensor t(f.chart(), var);
    std::set<Index> seen;
    std::set<Symbol> declared(f.coords.begin(), f.coords.end());
    declared.insert(f.params.begin(), f.params.end());

    while (true) {
      if (!next()) Line{"", static_cast<int>(lines_.size())}.fail("unterminated block");
      Line& l = current();
      if (l.accept('}')) {
        end_of_line();
        return t;
      }
      std::size_t start = l.pos;
      std::string name = l.identifier();
      if (name != entry) {
        l.pos = start;
        l.fail("expected '" + entry + "[...]' entries in this block");
      }
      l.expect('[');
      Index idx;
      std::size_t idx_start = l.pos;
      for (int s = 0; s < rank; ++s) {
        if (s > 0) l.expect(',');
        std::size_t at = (l.skip_space(), l.pos);
        int v = l.integer();
        if (v < 1 || v > n) {
          l.pos = at;
          l.fail("index " + std::to_string(v) + " out of range 1.." + std::to_string(n));
        }
        idx.push_back(v);
      }
      l.expect(']');
      int a = idx[rank - 2], b = idx[rank - 1];
      if (a > b) {
        l.pos = idx_start;
        l.fail("symmetric entry: write the pair with " + std::to_string(b) + " before " +
               std::to_string(a));
      }
      if (!seen.insert(idx).second) {
        l.pos = idx_start;
        l.fail("duplicate entry " + index_label(idx));
      }
      l.expect('=');
      l.skip_space();
      std::string_view text = l.text.substr(l.pos);
      if (text.empty()) l.fail("expected an expression");
      Expr e = parse_expression(text, l.number, l.column());
      for (Symbol s : e.free_symbols())
        if (!declared.count(s)) l.fail("undeclared symbol '" + s.name() + "'");
      t.set(idx, e);
      Index mirror = idx;
      std::swap(mirror[rank - 2], mirror[rank - 1]);
      t.set(mirror, e);
    }
  }

  std::vector<Line> lines_;
  int index_ = -1;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

ManifoldFile parse_manifold(std::string_view text) { return Parser(text).manifold(); }

ManifoldFile load_manifold(const std::string& path) { return parse_manifold(read_file(path)); }

IndexedTensor parse_c_file(std::string_view text, const ManifoldFile& base) {
  return Parser(text).c_only(base);
}

IndexedTensor load_c_file(const std::string& path, const ManifoldFile& base) {
  return parse_c_file(read_file(path), base);
}

std::string write_manifold(const std::string& name, const std::vector<Symbol>& params,
                           const IndexedTensor& metric) {
  std::ostringstream o;
  o << "manifold " << name << "\ncoords";
  for (Symbol s : metric.chart().coords()) o << ' ' << s.name();
  o << '\n';
  if (!params.empty()) {
    o << "params";
    for (Symbol s : params) o << ' ' << s.name();
    o << '\n';
  }
  o << "metric {\n";
  int n = metric.dim();
  for (int i = 1; i <= n; ++i)
    for (int j = i; j <= n; ++j)
      if (!metric({i, j}).is_zero())
        o << "  g[" << i << ',' << j << "] = " << render(metric({i, j})) << '\n';
  o << "}\n";
  return o.str();
}

}  // namespace riemext::cli
