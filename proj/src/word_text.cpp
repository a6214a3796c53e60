// Text rendering and parsing of word expressions.
#include <cctype>
#include <charconv>
#include <cmath>

#include "qball/error.hpp"
#include "qball/word.hpp"

namespace qball {

namespace {

std::string format_real(double x) {
  if (x == 0.0) x = 0.0;  // no "-0"
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string bracket_path(const DirectedGraph& g, const Path& p) { return "S[" + to_string(g, p) + "]"; }

class Parser {
 public:
  Parser(const std::shared_ptr<const DirectedGraph>& g, std::string_view text) : g_(g), text_(text) {}

  WordExpr parse_expr() {
    WordExpr out(g_);
    skip_ws();
    if (at_end()) return WordExpr::unit(g_);
    bool first = true;
    while (true) {
      skip_ws();
      double sign = 1.0;
      if (!first) {
        if (at_end()) break;
        if (peek() == '+') {
          ++pos_;
        } else if (peek() == '-') {
          sign = -1.0;
          ++pos_;
        } else {
          fail("expected '+' or '-' between terms");
        }
      } else if (peek() == '-') {
        sign = -1.0;
        ++pos_;
      }
      out += parse_term(sign);
      first = false;
      skip_ws();
      if (at_end()) break;
    }
    return out;
  }

  std::vector<GeneratorLetter> parse_product_only() {
    std::vector<GeneratorLetter> letters;
    skip_ws();
    while (!at_end()) {
      if (!parse_factor(letters)) fail("expected a generator factor");
      skip_ws();
    }
    return letters;
  }

 private:
  WordExpr parse_term(double sign) {
    skip_ws();
    Complex coeff = sign;
    bool have_coeff = false;
    if (!at_end() && peek() == '(') {
      coeff *= parse_complex();
      have_coeff = true;
    } else if (!at_end() && (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '.')) {
      // "1" alone is the unit factor; a number followed by factors is a coefficient.
      coeff *= parse_real();
      have_coeff = true;
    }
    std::vector<GeneratorLetter> letters;
    skip_ws();
    while (!at_end() && peek() != '+' && peek() != '-') {
      if (!parse_factor(letters)) fail("expected a generator factor");
      skip_ws();
    }
    if (!have_coeff && letters.empty()) fail("empty term");
    return coeff * reduce(g_, letters);
  }

  bool parse_factor(std::vector<GeneratorLetter>& letters) {
    if (at_end()) return false;
    const char c = peek();
    if (c == 'S' || c == 'P') {
      ++pos_;
      expect('[');
      std::vector<std::string> labels;
      std::vector<std::size_t> starts;
      while (true) {
        skip_ws();
        if (at_end()) fail("unterminated '['");
        if (peek() == ']') break;
        std::size_t start = pos_;
        while (!at_end() && !std::isspace(static_cast<unsigned char>(peek())) && peek() != ']') ++pos_;
        labels.emplace_back(text_.substr(start, pos_ - start));
        starts.push_back(start);
      }
      const std::size_t close = pos_;
      ++pos_;
      if (labels.empty()) fail("empty brackets", close);
      if (c == 'P') {
        if (labels.size() != 1) fail("P[...] takes one vertex", close);
        auto v = g_->find_vertex(labels[0]);
        if (!v) fail("unknown vertex '" + labels[0] + "'", starts[0]);
        letters.push_back(GeneratorLetter::projection(*v));
        return true;
      }
      std::vector<EdgeIndex> edges;
      for (std::size_t k = 0; k < labels.size(); ++k) {
        auto e = g_->find_edge(labels[k]);
        if (!e) fail("unknown edge '" + labels[k] + "'", starts[k]);
        if (!edges.empty() && g_->edge(edges.back()).dst != g_->edge(*e).src)
          fail("'" + labels[k] + "' does not continue the path", starts[k]);
        edges.push_back(*e);
      }
      const bool star = !at_end() && peek() == '*';
      if (star) {
        ++pos_;
        for (auto it = edges.rbegin(); it != edges.rend(); ++it)
          letters.push_back(GeneratorLetter::edge_adjoint(*it));
      } else {
        for (EdgeIndex e : edges) letters.push_back(GeneratorLetter::edge(e));
      }
      return true;
    }
    if (c == '1') {
      ++pos_;
      letters.push_back(GeneratorLetter::unit());
      return true;
    }
    return false;
  }

  double parse_real() {
    skip_ws();
    const char* first = text_.data() + pos_;
    const char* last = text_.data() + text_.size();
    double value = 0.0;
    auto res = std::from_chars(first, last, value);
    if (res.ec != std::errc()) fail("expected a number");
    pos_ = static_cast<std::size_t>(res.ptr - text_.data());
    return value;
  }

  Complex parse_complex() {
    expect('(');
    double re = parse_real();
    skip_ws();
    double sign = 1.0;
    if (!at_end() && (peek() == '+' || peek() == '-')) {
      sign = peek() == '-' ? -1.0 : 1.0;
      ++pos_;
    } else {
      fail("expected imaginary part");
    }
    double im = parse_real();
    expect('i');
    expect(')');
    return {re, sign * im};
  }

  void expect(char c) {
    skip_ws();
    if (at_end() || peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }
  [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, pos_); }
  [[noreturn]] void fail(const std::string& msg, std::size_t at) { throw ParseError(msg, at); }

  std::shared_ptr<const DirectedGraph> g_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string render(const DirectedGraph& g, const NormalWord& w) {
  const bool mu_vertex = w.mu().empty();
  const bool nu_vertex = w.nu().empty();
  if (mu_vertex && nu_vertex) return "P[" + g.vertex_id(w.mu().base) + "]";
  if (mu_vertex) return bracket_path(g, w.nu()) + "*";
  if (nu_vertex) return bracket_path(g, w.mu());
  return bracket_path(g, w.mu()) + bracket_path(g, w.nu()) + "*";
}

std::string render(const WordExpr& a) {
  if (a.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [w, c] : a.terms()) {
    std::string coeff;
    bool negative = false;
    if (c.imag() == 0.0) {
      double r = c.real();
      negative = r < 0;
      r = std::abs(r);
      if (r != 1.0) coeff = format_real(r) + " ";
    } else {
      coeff = "(" + format_real(c.real()) + (c.imag() < 0 ? "-" : "+") + format_real(std::abs(c.imag())) +
              "i) ";
    }
    if (first)
      out += negative ? "-" : "";
    else
      out += negative ? " - " : " + ";
    out += coeff + render(a.graph(), w);
    first = false;
  }
  return out;
}

WordExpr parse_word_expr(const std::shared_ptr<const DirectedGraph>& g, std::string_view text) {
  return Parser(g, text).parse_expr();
}

std::vector<GeneratorLetter> parse_letters(const DirectedGraph& g, std::string_view text) {
  auto shared = std::make_shared<const DirectedGraph>(g);
  return Parser(shared, text).parse_product_only();
}

}  // namespace qball
