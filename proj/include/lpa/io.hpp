#pragma once

// Text and JSON formats.
//
// Graph files are line based:
//
//   # comment
//   graph NAME
//   vertex ID
//   edge ID SOURCE RANGE
//
// Identifiers start with a letter or '_' and continue with letters, digits,
// '_' or '\''. A JSON mirror {"name", "vertices", "edges": [{"id","source","range"}]}
// is accepted wherever a graph file is.
//
// Element expressions:
//
//   expr   := ['+'|'-'] term (('+'|'-') term)*
//   term   := coeff [('·'|'.') chain] | chain
//   chain  := factor ('.' factor)*
//   factor := ID ['^*']... | '(' expr ')' ['^*']...
//   coeff  := INT | INT '/' INT
//
// '−' (U+2212) is accepted for '-'. A bare coefficient stands for coeff·1.

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "lpa/leavitt.hpp"

namespace lpa {

using Json = nlohmann::json;

using AnyField = std::variant<Rationals, PrimeField>;

/// "rat" or "fp:P" with P prime.
inline AnyField parse_field(std::string_view text) {
  if (text == "rat" || text == "Q") return Rationals{};
  if (text.substr(0, 3) == "fp:") {
    const auto digits = text.substr(3);
    if (digits.empty() || digits.size() > 19 ||
        !std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; })) {
      throw InputError("malformed field modulus '" + std::string(digits) + "'");
    }
    return PrimeField(std::stoull(std::string(digits)));
  }
  throw InputError("unknown field '" + std::string(text) + "' (use rat or fp:P)");
}

namespace detail {

inline bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
inline bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

inline bool is_identifier(std::string_view s) {
  if (s.empty() || !ident_start(s.front())) return false;
  return std::all_of(s.begin(), s.end(), ident_char);
}

}  // namespace detail

inline Digraph graph_from_json(const Json& j) {
  try {
    std::vector<std::string> vertices = j.at("vertices").get<std::vector<std::string>>();
    std::vector<EdgeSpec> edges;
    for (const auto& e : j.value("edges", Json::array())) {
      edges.push_back({e.at("id").get<std::string>(), e.at("source").get<std::string>(),
                       e.at("range").get<std::string>()});
    }
    for (const auto& v : vertices) {
      if (!detail::is_identifier(v)) throw InputError("invalid vertex id '" + v + "'");
    }
    for (const auto& e : edges) {
      if (!detail::is_identifier(e.id)) throw InputError("invalid edge id '" + e.id + "'");
    }
    return Digraph(std::move(vertices), std::move(edges), j.value("name", std::string{}));
  } catch (const Json::exception& ex) {
    throw InputError(std::string("malformed graph JSON: ") + ex.what());
  }
}

inline Json graph_to_json(const Digraph& g) {
  Json j;
  if (!g.name().empty()) j["name"] = g.name();
  j["vertices"] = Json::array();
  for (auto v : g.vertices()) j["vertices"].push_back(g.vertex_name(v));
  j["edges"] = Json::array();
  for (auto e : g.edges()) {
    j["edges"].push_back({{"id", g.edge_name(e)},
                          {"source", g.vertex_name(g.source(e))},
                          {"range", g.vertex_name(g.range(e))}});
  }
  return j;
}

/// Parses the line format (or JSON when the text starts with '{').
inline Digraph parse_graph(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{') {
    Json j;
    try {
      j = Json::parse(text);
    } catch (const Json::exception& ex) {
      throw InputError(std::string("malformed graph JSON: ") + ex.what());
    }
    return graph_from_json(j);
  }

  struct Token {
    std::string text;
    std::size_t column;
  };
  std::string name;
  std::vector<std::string> vertices;
  std::vector<std::pair<EdgeSpec, std::pair<std::size_t, std::vector<Token>>>> edges;
  std::map<std::string, std::size_t> declared;  // id -> line

  std::size_t line_no = 0;
  std::size_t pos = 0;
  auto fail = [&](std::size_t col, const std::string& msg) -> InputError {
    return InputError("line " + std::to_string(line_no) + ", column " + std::to_string(col) + ": " + msg);
  };
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    ++line_no;
    pos = end + 1;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    std::vector<Token> tokens;
    for (std::size_t i = 0; i < line.size();) {
      if (std::isspace(static_cast<unsigned char>(line[i]))) {
        ++i;
        continue;
      }
      const std::size_t start = i;
      while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
      tokens.push_back({std::string(line.substr(start, i - start)), start + 1});
    }
    if (tokens.empty()) continue;
    const auto& kw = tokens[0].text;
    auto declare = [&](const Token& t) {
      if (!detail::is_identifier(t.text)) throw fail(t.column, "invalid identifier '" + t.text + "'");
      auto [it, fresh] = declared.emplace(t.text, line_no);
      if (!fresh) {
        throw fail(t.column, "duplicate id '" + t.text + "' (first declared on line " +
                                 std::to_string(it->second) + ")");
      }
    };
    if (kw == "graph") {
      if (tokens.size() != 2) throw fail(tokens[0].column, "expected 'graph NAME'");
      name = tokens[1].text;
    } else if (kw == "vertex") {
      if (tokens.size() != 2) throw fail(tokens[0].column, "expected 'vertex ID'");
      declare(tokens[1]);
      vertices.push_back(tokens[1].text);
    } else if (kw == "edge") {
      if (tokens.size() != 4) throw fail(tokens[0].column, "expected 'edge ID SOURCE RANGE'");
      declare(tokens[1]);
      edges.push_back({{tokens[1].text, tokens[2].text, tokens[3].text}, {line_no, tokens}});
    } else {
      throw fail(tokens[0].column, "unknown declaration '" + kw + "'");
    }
  }
  std::set<std::string> vertex_set(vertices.begin(), vertices.end());
  for (const auto& [spec, where] : edges) {
    line_no = where.first;
    for (std::size_t k : {2, 3}) {
      const auto& t = where.second[k];
      if (!vertex_set.count(t.text)) throw fail(t.column, "unknown endpoint '" + t.text + "'");
    }
  }
  if (vertices.empty()) throw InputError("graph has no vertices");
  std::vector<EdgeSpec> specs;
  for (auto& [spec, where] : edges) specs.push_back(std::move(spec));
  return Digraph(std::move(vertices), std::move(specs), name);
}

/// Canonical line format: name, vertices, edges, each sorted by id.
inline std::string print_graph(const Digraph& g) {
  std::ostringstream out;
  if (!g.name().empty()) out << "graph " << g.name() << "\n";
  for (auto v : g.vertices()) out << "vertex " << g.vertex_name(v) << "\n";
  for (auto e : g.edges()) {
    out << "edge " << g.edge_name(e) << " " << g.vertex_name(g.source(e)) << " " << g.vertex_name(g.range(e))
        << "\n";
  }
  return out.str();
}

namespace detail {

class ExpressionParser {
 public:
  ExpressionParser(std::string_view text) : text_(text) {}

  struct Token {
    enum Kind { ident, number, plus, minus, dot, cdot, star, lparen, rparen, end } kind;
    std::string text;
    std::size_t column;
  };

  std::vector<Token> tokenize() {
    std::vector<Token> out;
    std::size_t i = 0;
    auto col = [&](std::size_t at) { return at + 1; };
    while (i < text_.size()) {
      const char c = text_[i];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++i;
        continue;
      }
      const std::size_t start = i;
      if (ident_start(c)) {
        while (i < text_.size() && ident_char(text_[i])) ++i;
        out.push_back({Token::ident, std::string(text_.substr(start, i - start)), col(start)});
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        while (i < text_.size() && std::isdigit(static_cast<unsigned char>(text_[i]))) ++i;
        if (i < text_.size() && text_[i] == '/') {
          ++i;
          const std::size_t den = i;
          while (i < text_.size() && std::isdigit(static_cast<unsigned char>(text_[i]))) ++i;
          if (i == den) throw error(col(start), "malformed scalar");
        }
        out.push_back({Token::number, std::string(text_.substr(start, i - start)), col(start)});
      } else if (text_.substr(i, 2) == "^*") {
        i += 2;
        out.push_back({Token::star, "^*", col(start)});
      } else if (text_.substr(i, 2) == "\xC2\xB7") {  // ·
        i += 2;
        out.push_back({Token::cdot, "\xC2\xB7", col(start)});
      } else if (text_.substr(i, 3) == "\xE2\x88\x92") {  // −
        i += 3;
        out.push_back({Token::minus, "-", col(start)});
      } else {
        ++i;
        switch (c) {
          case '+': out.push_back({Token::plus, "+", col(start)}); break;
          case '-': out.push_back({Token::minus, "-", col(start)}); break;
          case '.': out.push_back({Token::dot, ".", col(start)}); break;
          case '(': out.push_back({Token::lparen, "(", col(start)}); break;
          case ')': out.push_back({Token::rparen, ")", col(start)}); break;
          default: throw error(col(start), std::string("unexpected character '") + c + "'");
        }
      }
    }
    out.push_back({Token::end, "", col(text_.size())});
    return out;
  }

  static InputError error(std::size_t column, const std::string& msg) {
    return InputError("column " + std::to_string(column) + ": " + msg);
  }

 private:
  std::string_view text_;
};

template <Field F>
class ElementBuilder {
 public:
  using Token = ExpressionParser::Token;

  ElementBuilder(std::vector<Token> tokens, ConfigPtr cfg, F field)
      : tokens_(std::move(tokens)), cfg_(std::move(cfg)), field_(std::move(field)) {}

  LeavittElement<F> run() {
    if (peek().kind == Token::end) throw ExpressionParser::error(peek().column, "empty expression");
    auto x = expr();
    if (peek().kind != Token::end) throw ExpressionParser::error(peek().column, "unexpected '" + peek().text + "'");
    return x;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  const Token& next() { return tokens_[pos_++]; }

  LeavittElement<F> expr() {
    LeavittElement<F> out(cfg_, field_);
    bool negate = false;
    if (peek().kind == Token::plus || peek().kind == Token::minus) negate = next().kind == Token::minus;
    for (;;) {
      auto t = term();
      out += negate ? t.scale(-field_.one()) : t;
      if (peek().kind != Token::plus && peek().kind != Token::minus) break;
      negate = next().kind == Token::minus;
    }
    return out;
  }

  LeavittElement<F> term() {
    if (peek().kind == Token::number) {
      const Token& num = next();
      typename F::Scalar k;
      try {
        k = field_.parse(num.text);
      } catch (const InputError& ex) {
        throw ExpressionParser::error(num.column, ex.what());
      }
      if (peek().kind == Token::cdot || peek().kind == Token::dot) {
        next();
        return chain().scale(k);
      }
      return LeavittElement<F>::one(cfg_, field_).scale(k);
    }
    return chain();
  }

  LeavittElement<F> chain() {
    LeavittElement<F> out = factor();
    while (peek().kind == Token::dot) {
      next();
      out = out * factor();
    }
    return out;
  }

  LeavittElement<F> factor() {
    LeavittElement<F> out(cfg_, field_);
    const Token& t = next();
    const Digraph& g = cfg_->graph();
    if (t.kind == Token::ident) {
      if (auto v = g.find_vertex(t.text)) {
        out = LeavittElement<F>::vertex(cfg_, field_, *v);
      } else if (auto e = g.find_edge(t.text)) {
        out = LeavittElement<F>::real_path(cfg_, field_, Path::edge(g, *e));
      } else {
        throw ExpressionParser::error(t.column, "unknown identifier '" + t.text + "'");
      }
    } else if (t.kind == Token::lparen) {
      out = expr();
      if (next().kind != Token::rparen) throw ExpressionParser::error(tokens_[pos_ - 1].column, "expected ')'");
    } else {
      throw ExpressionParser::error(t.column, t.kind == Token::end ? "unexpected end of expression"
                                                                   : "unexpected '" + t.text + "'");
    }
    while (peek().kind == Token::star) {
      next();
      out = involution(out);
    }
    return out;
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  ConfigPtr cfg_;
  F field_;
};

}  // namespace detail

/// Parses an expression into L_K(E) (or C_K(E), by the config's mode). The
/// result is evaluated with l_mul and is not normalized.
template <Field F>
LeavittElement<F> parse_element(std::string_view text, const ConfigPtr& cfg, const F& field) {
  detail::ExpressionParser lexer(text);
  return detail::ElementBuilder<F>(lexer.tokenize(), cfg, field).run();
}

/// Parses an expression that must lie in KE.
template <Field F>
QuiverElement<F> parse_quiver_element(std::string_view text, const ConfigPtr& cfg, const F& field) {
  auto x = parse_element(text, cfg, field);
  for (const auto& [m, k] : x.terms()) {
    if (!m.is_real()) throw InputError("expression '" + std::string(text) + "' is not in the quiver algebra");
  }
  return to_quiver(x);
}

/// α·β* as "a1 . a2 . b2^* . b1^*" (β = b1 b2), or the vertex name.
inline std::string monomial_to_string(const Digraph& g, const LeavittMonomial& m) {
  if (m.real.is_vertex() && m.ghost.is_vertex()) return g.vertex_name(m.real.source());
  std::string out;
  for (auto e : m.real.edges()) {
    if (!out.empty()) out += " . ";
    out += g.edge_name(e);
  }
  const auto& ghost = m.ghost.edges();
  for (auto it = ghost.rbegin(); it != ghost.rend(); ++it) {
    if (!out.empty()) out += " . ";
    out += g.edge_name(*it) + "^*";
  }
  return out;
}

inline std::string path_to_expression(const Digraph& g, const Path& p) {
  return monomial_to_string(g, {p, Path::vertex(p.range())});
}

namespace detail {

template <Field F>
std::string terms_to_string(const F& field, const std::vector<std::pair<std::string, typename F::Scalar>>& terms) {
  if (terms.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [body, k] : terms) {
    std::string coeff = field.format(k);
    bool negative = !coeff.empty() && coeff.front() == '-';
    if (negative) coeff.erase(0, 1);
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    if (coeff != "1") out += coeff + " \xC2\xB7 ";
    out += body;
  }
  return out;
}

}  // namespace detail

/// Canonical text: terms in monomial order, coefficients as "k · ".
template <Field F>
std::string print_element(const LeavittElement<F>& x) {
  std::vector<std::pair<std::string, typename F::Scalar>> terms;
  for (const auto& [m, k] : x.terms()) terms.emplace_back(monomial_to_string(x.graph(), m), k);
  return detail::terms_to_string(x.field(), terms);
}

template <Field F>
std::string print_quiver_element(const QuiverElement<F>& x) {
  std::vector<std::pair<std::string, typename F::Scalar>> terms;
  for (const auto& [p, k] : x.terms()) terms.emplace_back(path_to_expression(x.graph(), p), k);
  return detail::terms_to_string(x.field(), terms);
}

inline Json path_to_json(const Digraph& g, const Path& p) {
  Json out = Json::array();
  if (p.is_vertex()) {
    out.push_back(g.vertex_name(p.source()));
  } else {
    for (auto e : p.edges()) out.push_back(g.edge_name(e));
  }
  return out;
}

inline Path path_from_json(const Digraph& g, const Json& j) {
  if (!j.is_array() || j.empty()) throw InputError("path must be a nonempty array of ids");
  std::vector<std::string> ids;
  for (const auto& x : j) {
    if (!x.is_string()) throw InputError("path entries must be strings");
    ids.push_back(x.get<std::string>());
  }
  if (ids.size() == 1) {
    if (auto v = g.find_vertex(ids[0])) return Path::vertex(*v);
  }
  std::vector<EdgeId> edges;
  for (const auto& id : ids) edges.push_back(g.edge(id));
  return Path::from_edges(g, std::move(edges));
}

template <Field F>
Json element_to_json(const LeavittElement<F>& x) {
  Json terms = Json::array();
  for (const auto& [m, k] : x.terms()) {
    terms.push_back({{"coeff", x.field().format(k)},
                     {"real", path_to_json(x.graph(), m.real)},
                     {"ghost", path_to_json(x.graph(), m.ghost)}});
  }
  return {{"terms", terms}};
}

template <Field F>
Json quiver_element_to_json(const QuiverElement<F>& x) {
  Json terms = Json::array();
  for (const auto& [p, k] : x.terms()) {
    terms.push_back({{"coeff", x.field().format(k)}, {"path", path_to_json(x.graph(), p)}});
  }
  return {{"terms", terms}};
}

template <Field F>
LeavittElement<F> element_from_json(const Json& j, const ConfigPtr& cfg, const F& field) {
  LeavittElement<F> out(cfg, field);
  try {
    for (const auto& t : j.at("terms")) {
      const auto k = field.parse(t.at("coeff").get<std::string>());
      auto m = LeavittMonomial::make(path_from_json(cfg->graph(), t.at("real")),
                                     path_from_json(cfg->graph(), t.at("ghost")));
      if (!m) throw InputError("term with r(real) != r(ghost)");
      out.add_term(*m, k);
    }
  } catch (const Json::exception& ex) {
    throw InputError(std::string("malformed element JSON: ") + ex.what());
  }
  return out;
}

}  // namespace lpa
