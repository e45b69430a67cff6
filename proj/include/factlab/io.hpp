#pragma once

// Text files for point sets and polynomials.
//
// Point file:  header "P <n> <fieldspec>", then one point per line as
//              comma-separated coordinates; '#' starts a comment line.
// Poly file:   optional header "poly <nvars> <fieldspec>", then expressions
//              in the polynomial grammar, each terminated by ';' (the last
//              terminator may be omitted); '#' starts a comment line.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "factlab/poly_text.hpp"
#include "factlab/projgeom.hpp"

namespace factlab {

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

struct PointFileHeader {
  int n = 2;
  std::optional<FieldSpec> field;
};

/// Comment-free, trimmed, non-empty lines.
std::vector<std::string> content_lines(std::string_view text);

PointFileHeader read_point_header(std::string_view text);

template <class S>
std::string format_point(const ProjPoint<S>& p, const field_t<S>& field) {
  std::string s;
  for (std::size_t i = 0; i < p.coords().size(); ++i) s += (i ? "," : "") + coefficient_text(field, p[i]);
  return s;
}

template <class F>
ProjPoint<typename F::Scalar> parse_point(std::string_view line, int n, const F& field) {
  std::vector<typename F::Scalar> c;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    std::string tok(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    tok.erase(0, tok.find_first_not_of(" \t"));
    tok.erase(tok.find_last_not_of(" \t") + 1);
    c.push_back(parse_scalar(field, tok));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (static_cast<int>(c.size()) != n + 1) {
    throw Error(ErrorCode::WrongAmbient, "expected " + std::to_string(n + 1) + " coordinates in '" + std::string(line) + "'");
  }
  return ProjPoint<typename F::Scalar>::from_coords(std::move(c));
}

/// Points are canonicalized; a repeated point is an error. A file with no
/// header must contain no points and yields the empty set in P^2.
template <class F>
PointSet<typename F::Scalar> parse_points(std::string_view text, const F& field) {
  const auto lines = content_lines(text);
  const PointFileHeader h = read_point_header(text);
  if (h.field && !(*h.field == field.spec())) {
    throw Error(ErrorCode::FieldMismatch, "file is over " + h.field->to_string() + ", expected " + field.spec().to_string());
  }
  PointSet<typename F::Scalar> out(h.n, field);
  for (std::size_t i = h.field ? 1 : 0; i < lines.size(); ++i) out.add(parse_point(lines[i], h.n, field));
  return out;
}

template <class S>
std::string format_points(const PointSet<S>& set) {
  std::string s = "P " + std::to_string(set.ambient_dim()) + " " + set.field().spec().to_string() + "\n";
  for (const auto& p : set) s += format_point(p, set.field()) + "\n";
  return s;
}

struct PolyFileHeader {
  std::optional<int> nvars;
  std::optional<FieldSpec> field;
  /// Expression texts, in order.
  std::vector<std::string> exprs;
};

PolyFileHeader split_poly_file(std::string_view text);

/// Smallest variable count whose default names cover every name used.
int infer_nvars(const std::vector<std::string>& exprs);

template <class F>
std::vector<HomoPoly<typename F::Scalar>> parse_poly_file(std::string_view text, const F& field) {
  const PolyFileHeader h = split_poly_file(text);
  if (h.field && !(*h.field == field.spec())) {
    throw Error(ErrorCode::FieldMismatch, "file is over " + h.field->to_string() + ", expected " + field.spec().to_string());
  }
  if (h.exprs.empty()) throw Error(ErrorCode::SyntaxError, "no polynomial in file");
  const int nvars = h.nvars ? *h.nvars : infer_nvars(h.exprs);
  std::vector<HomoPoly<typename F::Scalar>> out;
  for (const auto& e : h.exprs) out.push_back(parse_poly(e, nvars, field));
  return out;
}

template <class S>
std::string format_poly_file(const std::vector<HomoPoly<S>>& polys) {
  if (polys.empty()) return "";
  std::string s = "poly " + std::to_string(polys.front().nvars()) + " " + polys.front().field().spec().to_string() + "\n";
  for (const auto& f : polys) s += format_poly(f) + ";\n";
  return s;
}

}  // namespace factlab
