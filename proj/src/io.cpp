#include "factlab/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace factlab {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot write '" + path + "'");
  out << text;
  if (!out) throw Error(ErrorCode::Io, "write failed for '" + path + "'");
}

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

int parse_count(const std::string& tok, const std::string& what) {
  if (tok.empty() || tok.size() > 6 || tok.find_first_not_of("0123456789") != std::string::npos) {
    throw Error(ErrorCode::SyntaxError, "bad " + what + " '" + tok + "'");
  }
  return std::stoi(tok);
}

}  // namespace

std::vector<std::string> content_lines(std::string_view text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t nl = text.find('\n', start);
    const std::string line = trim(text.substr(start, nl == std::string_view::npos ? std::string_view::npos : nl - start));
    if (!line.empty() && line[0] != '#') out.push_back(line);
    if (nl == std::string_view::npos) break;
    start = nl + 1;
  }
  return out;
}

PointFileHeader read_point_header(std::string_view text) {
  const auto lines = content_lines(text);
  PointFileHeader h;
  if (lines.empty()) return h;
  std::istringstream in(lines[0]);
  std::string tag, n, spec, extra;
  if (!(in >> tag >> n >> spec) || tag != "P" || (in >> extra)) {
    throw Error(ErrorCode::SyntaxError, "point file must start with 'P <n> <fieldspec>'");
  }
  h.n = parse_count(n, "dimension");
  if (h.n < 1) throw Error(ErrorCode::SyntaxError, "dimension must be >= 1");
  h.field = FieldSpec::parse(spec);
  return h;
}

PolyFileHeader split_poly_file(std::string_view text) {
  auto lines = content_lines(text);
  PolyFileHeader h;
  std::size_t first = 0;
  if (!lines.empty() && lines[0].rfind("poly", 0) == 0 &&
      (lines[0].size() == 4 || lines[0][4] == ' ' || lines[0][4] == '\t')) {
    std::istringstream in(lines[0]);
    std::string tag, n, spec, extra;
    if (!(in >> tag >> n >> spec) || (in >> extra)) throw Error(ErrorCode::SyntaxError, "header must be 'poly <nvars> <fieldspec>'");
    h.nvars = parse_count(n, "variable count");
    if (*h.nvars < 1) throw Error(ErrorCode::SyntaxError, "variable count must be >= 1");
    h.field = FieldSpec::parse(spec);
    first = 1;
  }
  std::string body;
  for (std::size_t i = first; i < lines.size(); ++i) body += lines[i] + "\n";
  std::size_t start = 0;
  while (start < body.size()) {
    const std::size_t semi = body.find(';', start);
    const std::string expr = trim(body.substr(start, semi == std::string::npos ? std::string::npos : semi - start));
    if (expr.find_first_not_of(" \t\r\n") != std::string::npos) {
      h.exprs.push_back(expr);
    } else if (semi != std::string::npos) {
      throw Error(ErrorCode::SyntaxError, "empty expression before ';'");
    }
    if (semi == std::string::npos) break;
    start = semi + 1;
  }
  return h;
}

int infer_nvars(const std::vector<std::string>& exprs) {
  std::set<std::string> used;
  for (const auto& e : exprs) {
    for (std::size_t i = 0; i < e.size();) {
      if (std::isalpha(static_cast<unsigned char>(e[i]))) {
        std::size_t j = i;
        while (j < e.size() && std::isalnum(static_cast<unsigned char>(e[j]))) ++j;
        used.insert(e.substr(i, j - i));
        i = j;
      } else {
        ++i;
      }
    }
  }
  for (int n = 2; n <= 64; ++n) {
    const auto names = default_variable_names(n);
    const std::set<std::string> have(names.begin(), names.end());
    if (std::all_of(used.begin(), used.end(), [&](const std::string& v) { return have.count(v) != 0; })) return n;
  }
  throw Error(ErrorCode::UnknownVariable, "cannot infer the ring from the variable names; add a 'poly' header");
}

}  // namespace factlab
