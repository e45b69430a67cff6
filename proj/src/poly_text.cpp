#include "factlab/poly_text.hpp"

#include <cctype>

namespace factlab {

std::vector<std::string> default_variable_names(int nvars) {
  switch (nvars) {
    case 2: return {"x", "y"};
    case 3: return {"x", "y", "z"};
    case 4: return {"x", "y", "z", "w"};
    case 5: return {"x", "y", "z", "t", "u"};
    case 6: return {"x", "y", "z", "w", "t", "v"};
    default: break;
  }
  std::vector<std::string> out;
  for (int i = 0; i < nvars; ++i) out.push_back("x" + std::to_string(i));
  return out;
}

namespace {

class TermParser {
 public:
  TermParser(std::string_view text, std::span<const std::string> names) : text_(text), names_(names) {}

  std::vector<RawTerm> parse() {
    std::vector<RawTerm> out;
    skip();
    bool negative = false;
    if (peek() == '-' || peek() == '+') {
      negative = get() == '-';
    }
    out.push_back(term(negative));
    while (true) {
      skip();
      if (pos_ == text_.size()) break;
      const char c = get();
      if (c != '+' && c != '-') fail("expected '+' or '-'");
      out.push_back(term(c == '-'));
    }
    return out;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::SyntaxError, what + " at offset " + std::to_string(pos_) + " in '" + std::string(text_) + "'");
  }
  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  char peek() {
    skip();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  char get() {
    skip();
    if (pos_ == text_.size()) fail("unexpected end of input");
    return text_[pos_++];
  }
  std::string digits() {
    skip();
    std::string s;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) s += text_[pos_++];
    if (s.empty()) fail("expected a number");
    return s;
  }

  void factor(RawTerm& t) {
    skip();
    std::string id;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      id += text_[pos_++];
    }
    if (id.empty() || std::isdigit(static_cast<unsigned char>(id[0]))) fail("expected a variable");
    std::size_t idx = names_.size();
    for (std::size_t i = 0; i < names_.size(); ++i) {
      if (names_[i] == id) idx = i;
    }
    if (idx == names_.size()) throw Error(ErrorCode::UnknownVariable, "unknown variable '" + id + "'");
    int e = 1;
    if (peek() == '^') {
      get();
      const std::string d = digits();
      if (d.size() > 6) fail("exponent too large");
      e = std::stoi(d);
    }
    t.exponents[idx] += e;
  }

  RawTerm term(bool negative) {
    RawTerm t{1, 1, std::vector<int>(names_.size(), 0)};
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      t.num = BigInt(digits());
      if (peek() == '/') {
        get();
        t.den = BigInt(digits());
        if (t.den == 0) fail("zero denominator");
      }
      if (peek() != '*') {
        if (negative) t.num = -t.num;
        return t;
      }
      get();
    }
    factor(t);
    while (peek() == '*') {
      get();
      factor(t);
    }
    if (negative) t.num = -t.num;
    return t;
  }

  std::string_view text_;
  std::span<const std::string> names_;
  std::size_t pos_ = 0;
};

}  // namespace

std::vector<RawTerm> parse_raw_terms(std::string_view text, std::span<const std::string> names) {
  return TermParser(text, names).parse();
}

namespace detail {

std::string format_terms(const std::vector<std::pair<std::string, std::vector<int>>>& terms, int nvars,
                         int degree, std::span<const std::string> names) {
  if (terms.empty()) {
    if (degree == 0) return "0";
    return "0*" + names[0] + (degree > 1 ? "^" + std::to_string(degree) : std::string());
  }
  (void)nvars;
  std::string out;
  bool first = true;
  for (const auto& [coeff, exps] : terms) {
    std::string c = coeff;
    bool negative = !c.empty() && c[0] == '-';
    if (negative) c.erase(0, 1);
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    std::string mono;
    for (std::size_t i = 0; i < exps.size(); ++i) {
      if (exps[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += names[i];
      if (exps[i] > 1) mono += "^" + std::to_string(exps[i]);
    }
    if (mono.empty()) {
      out += c;
    } else if (c == "1") {
      out += mono;
    } else {
      out += c + "*" + mono;
    }
  }
  return out;
}

}  // namespace detail

}  // namespace factlab
