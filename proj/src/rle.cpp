#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

#include "lifelogic/patterns.hpp"

namespace lifelogic {

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string strip(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

bool rule_supported(std::string_view rule) {
  std::string r;
  for (char c : lower(rule))
    if (!std::isspace(static_cast<unsigned char>(c))) r += c;
  return r == "b3/s23" || r == "23/3";
}

[[noreturn]] void fail(RleError::Kind kind, int line, int column, const std::string& msg) {
  std::ostringstream os;
  os << "line " << line << ", column " << column << ": " << msg;
  throw RleError(kind, line, column, os.str());
}

// Parses "key = value, key = value" pairs, reporting the column of each value.
struct HeaderField {
  std::string key;
  std::string value;
  int column;
};

std::vector<HeaderField> split_fields(const std::string& line, int line_no) {
  std::vector<HeaderField> fields;
  std::size_t pos = 0;
  while (pos <= line.size()) {
    std::size_t comma = line.find(',', pos);
    if (comma == std::string::npos) comma = line.size();
    const std::string part = line.substr(pos, comma - pos);
    const auto eq = part.find('=');
    if (eq == std::string::npos)
      fail(RleError::Kind::MalformedHeader, line_no, static_cast<int>(pos) + 1,
           "expected 'key = value' in header");
    fields.push_back({lower(strip(part.substr(0, eq))), strip(part.substr(eq + 1)),
                      static_cast<int>(pos + eq) + 2});
    pos = comma + 1;
  }
  return fields;
}

int parse_dimension(const HeaderField& f, int line_no) {
  if (f.value.empty() || !std::all_of(f.value.begin(), f.value.end(),
                                      [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
    fail(RleError::Kind::MalformedHeader, line_no, f.column,
         "'" + f.key + "' must be a non-negative integer");
  return std::stoi(f.value);
}

}  // namespace

RleError::RleError(Kind kind, int line, int column, const std::string& what)
    : std::runtime_error(what), kind_(kind), line_(line), column_(column) {}

Pattern parse_rle(std::string_view text) {
  std::vector<std::string> lines;
  {
    std::string cur;
    for (char c : text) {
      if (c == '\n') {
        lines.push_back(cur);
        cur.clear();
      } else {
        cur += c;
      }
    }
    lines.push_back(cur);
  }

  Pattern p;
  std::size_t i = 0;
  for (; i < lines.size(); ++i) {
    const std::string s = strip(lines[i]);
    if (s.empty()) continue;
    if (s[0] != '#') break;
    if (s.size() > 2 && (s[1] == 'N' || s[1] == 'n')) p.name = strip(s.substr(2));
  }
  if (i == lines.size()) fail(RleError::Kind::MalformedHeader, static_cast<int>(i), 1, "missing header");

  const int header_line = static_cast<int>(i) + 1;
  bool have_x = false, have_y = false;
  std::optional<std::pair<std::string, int>> rule;
  for (const auto& f : split_fields(strip(lines[i]), header_line)) {
    if (f.key == "x") {
      parse_dimension(f, header_line);
      have_x = true;
    } else if (f.key == "y") {
      parse_dimension(f, header_line);
      have_y = true;
    } else if (f.key == "rule") {
      rule = {f.value, f.column};
    } else {
      fail(RleError::Kind::MalformedHeader, header_line, f.column - 1, "unknown header key '" + f.key + "'");
    }
  }
  if (!have_x || !have_y) fail(RleError::Kind::MalformedHeader, header_line, 1, "header needs x and y");
  if (rule && !rule_supported(rule->first))
    fail(RleError::Kind::UnsupportedRule, header_line, rule->second, "unsupported rule '" + rule->first + "'");
  ++i;

  // A separate "rule = ..." line may follow the header.
  for (; i < lines.size(); ++i) {
    const std::string s = strip(lines[i]);
    if (s.empty()) continue;
    if (lower(s).rfind("rule", 0) == 0) {
      const auto eq = s.find('=');
      if (eq == std::string::npos)
        fail(RleError::Kind::MalformedHeader, static_cast<int>(i) + 1, 1, "expected 'rule = ...'");
      const std::string r = strip(s.substr(eq + 1));
      if (!rule_supported(r))
        fail(RleError::Kind::UnsupportedRule, static_cast<int>(i) + 1, static_cast<int>(eq) + 2,
             "unsupported rule '" + r + "'");
      ++i;
    }
    break;
  }

  std::int32_t x = 0, y = 0;
  long run = 0;
  bool terminated = false;
  for (; i < lines.size() && !terminated; ++i) {
    const std::string& s = lines[i];
    for (std::size_t col = 0; col < s.size(); ++col) {
      const char c = s[col];
      if (std::isdigit(static_cast<unsigned char>(c))) {
        run = run * 10 + (c - '0');
        if (run > 1'000'000)
          fail(RleError::Kind::UnexpectedCharacter, static_cast<int>(i) + 1, static_cast<int>(col) + 1,
               "run length too large");
        continue;
      }
      const std::int32_t n = run == 0 ? 1 : static_cast<std::int32_t>(run);
      switch (c) {
        case 'b':
          x += n;
          break;
        case 'o':
          for (std::int32_t k = 0; k < n; ++k) p.cells.push_back({x + k, y});
          x += n;
          break;
        case '$':
          y += n;
          x = 0;
          break;
        case '!':
          terminated = true;
          break;
        case ' ':
        case '\t':
        case '\r':
          if (run != 0)
            fail(RleError::Kind::UnexpectedCharacter, static_cast<int>(i) + 1, static_cast<int>(col) + 1,
                 "whitespace inside a run");
          break;
        default:
          fail(RleError::Kind::UnexpectedCharacter, static_cast<int>(i) + 1, static_cast<int>(col) + 1,
               std::string("unexpected character '") + c + "'");
      }
      run = 0;
      if (terminated) break;
    }
  }
  if (!terminated)
    fail(RleError::Kind::MissingTerminator, static_cast<int>(lines.size()),
         static_cast<int>(lines.back().size()) + 1, "missing '!' terminator");
  p.cells = normalise_cells(std::move(p.cells));
  return p;
}

std::string emit_rle(const Pattern& p) {
  const auto cells = normalise_cells(p.cells);
  std::int32_t w = 0, h = 0;
  std::map<std::int32_t, std::vector<std::int32_t>> rows;
  for (const Cell& c : cells) {
    w = std::max(w, c.x + 1);
    h = std::max(h, c.y + 1);
    rows[c.y].push_back(c.x);
  }

  std::vector<std::string> tokens;
  auto token = [&](long n, char c) {
    tokens.push_back(n == 1 ? std::string(1, c) : std::to_string(n) + c);
  };
  std::int32_t row = 0;
  for (auto& [y, xs] : rows) {
    std::sort(xs.begin(), xs.end());
    if (y > row) token(y - row, '$');
    row = y;
    std::int32_t x = 0;
    for (std::size_t k = 0; k < xs.size();) {
      std::size_t e = k;
      while (e + 1 < xs.size() && xs[e + 1] == xs[e] + 1) ++e;
      if (xs[k] > x) token(xs[k] - x, 'b');
      token(static_cast<long>(e - k + 1), 'o');
      x = xs[e] + 1;
      k = e + 1;
    }
  }
  tokens.push_back("!");

  std::string out = "x = " + std::to_string(w) + ", y = " + std::to_string(h) + "\n";
  std::size_t line_len = 0;
  for (const auto& t : tokens) {
    if (line_len + t.size() > 70) {
      out += '\n';
      line_len = 0;
    }
    out += t;
    line_len += t.size();
  }
  return out;
}

Pattern read_rle_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  Pattern p = parse_rle(ss.str());
  if (p.name.empty()) p.name = path.stem().string();
  return p;
}

void write_rle_file(const std::filesystem::path& path, const Pattern& p) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  if (!p.name.empty()) out << "#N " << p.name << '\n';
  out << emit_rle(p) << '\n';
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace lifelogic
