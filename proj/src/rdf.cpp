#include "exekg/rdf.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <sstream>

namespace exekg {

namespace {

bool has_whitespace(std::string_view s) {
  return s.find_first_of(" \t\r\n") != std::string_view::npos;
}

bool is_name_start(char c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_';
}

bool is_name_char(char c) {
  return is_name_start(c) || (c >= '0' && c <= '9') || c == '-';
}

// Conservative PN_LOCAL: what this library both emits and accepts.
bool valid_local_name(std::string_view s) {
  if (s.empty() || !is_name_start(s[0])) return false;
  return std::all_of(s.begin(), s.end(), [](char c) { return is_name_char(c); });
}

bool parse_integer_lexical(std::string_view s, std::int64_t* out) {
  if (s.empty()) return false;
  const char* first = s.data();
  if (s[0] == '+') first++;  // from_chars accepts '-' but not '+'
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return false;
  if (out) *out = v;
  return true;
}

// Decimal or scientific notation only: no hex, no inf/nan, no whitespace.
bool parse_double_lexical(std::string_view s, double* out) {
  if (s.empty()) return false;
  if (s.find_first_not_of("+-0123456789.eE") != std::string_view::npos) return false;
  const char* first = s.data();
  if (s[0] == '+') first++;  // from_chars rejects a leading '+'
  double v = 0;
  auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return false;
  if (!std::isfinite(v)) return false;
  if (out) *out = v;
  return true;
}

}  // namespace

// ---------------------------------------------------------------------------
// Iri / Literal

Iri::Iri(std::string value) : value_(std::move(value)) {
  if (value_.empty()) throw Error("IRI must not be empty");
  if (has_whitespace(value_)) throw Error("IRI must not contain whitespace: <" + value_ + ">");
  if (value_.rfind("http://", 0) != 0 && value_.rfind("https://", 0) != 0)
    throw Error("IRI must be absolute with http(s) scheme: <" + value_ + ">");
}

std::string_view Iri::namespace_part() const {
  auto pos = value_.find_last_of("#/");
  return std::string_view(value_).substr(0, pos + 1);
}

std::string_view Iri::local_name() const {
  auto pos = value_.find_last_of("#/");
  return std::string_view(value_).substr(pos + 1);
}

const char* to_string(Datatype dt) {
  switch (dt) {
    case Datatype::String: return "string";
    case Datatype::Integer: return "integer";
    case Datatype::Double: return "double";
    case Datatype::Boolean: return "boolean";
  }
  return "?";
}

Literal Literal::str(std::string value) {
  Literal l;
  l.lexical_ = std::move(value);
  l.datatype_ = Datatype::String;
  return l;
}

Literal Literal::integer(std::int64_t value) {
  Literal l;
  l.lexical_ = std::to_string(value);
  l.datatype_ = Datatype::Integer;
  return l;
}

Literal Literal::number(double value) {
  if (!std::isfinite(value)) throw Error("non-finite double literal");
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  std::string lex(buf, ptr);
  // Keep the lexical form recognizably floating-point.
  if (lex.find_first_of(".eE") == std::string::npos) lex += ".0";
  Literal l;
  l.lexical_ = std::move(lex);
  l.datatype_ = Datatype::Double;
  return l;
}

Literal Literal::boolean(bool value) {
  Literal l;
  l.lexical_ = value ? "true" : "false";
  l.datatype_ = Datatype::Boolean;
  return l;
}

Literal Literal::typed(std::string lexical, Datatype dt) {
  switch (dt) {
    case Datatype::String:
      break;
    case Datatype::Integer:
      if (!parse_integer_lexical(lexical, nullptr))
        throw Error("'" + lexical + "' is not a valid integer lexical form");
      break;
    case Datatype::Double:
      if (!parse_double_lexical(lexical, nullptr))
        throw Error("'" + lexical + "' is not a valid double lexical form");
      break;
    case Datatype::Boolean:
      if (lexical != "true" && lexical != "false")
        throw Error("'" + lexical + "' is not a valid boolean lexical form");
      break;
  }
  Literal l;
  l.lexical_ = std::move(lexical);
  l.datatype_ = dt;
  return l;
}

std::int64_t Literal::as_integer() const {
  std::int64_t v = 0;
  if (datatype_ != Datatype::Integer || !parse_integer_lexical(lexical_, &v))
    throw Error("literal '" + lexical_ + "' is not an integer");
  return v;
}

double Literal::as_double() const {
  double v = 0;
  if ((datatype_ != Datatype::Double && datatype_ != Datatype::Integer) ||
      !parse_double_lexical(lexical_, &v))
    throw Error("literal '" + lexical_ + "' is not numeric");
  return v;
}

bool Literal::as_boolean() const {
  if (datatype_ != Datatype::Boolean) throw Error("literal '" + lexical_ + "' is not boolean");
  return lexical_ == "true";
}

// ---------------------------------------------------------------------------
// Terms and triples

bool term_equal(const Term& a, const Term& b) { return a == b; }

bool term_less(const Term& a, const Term& b) {
  if (a.index() != b.index()) return a.index() < b.index();
  if (std::holds_alternative<Iri>(a)) return std::get<Iri>(a) < std::get<Iri>(b);
  return std::get<Literal>(a) < std::get<Literal>(b);
}

std::string term_key(const Term& t) {
  if (const auto* iri = std::get_if<Iri>(&t)) return "I" + iri->str();
  const auto& lit = std::get<Literal>(t);
  return std::string("L") + to_string(lit.datatype()) + ":" + lit.lexical();
}

bool Triple::operator==(const Triple& other) const {
  return subject == other.subject && predicate == other.predicate && object == other.object;
}

bool triple_less(const Triple& a, const Triple& b) {
  if (a.subject != b.subject) return a.subject < b.subject;
  if (a.predicate != b.predicate) return a.predicate < b.predicate;
  return term_less(a.object, b.object);
}

namespace {
std::string triple_key(const Triple& t) {
  return t.subject.str() + '\x1f' + t.predicate.str() + '\x1f' + term_key(t.object);
}
std::string pair_key(const Iri& s, const Iri& p) { return s.str() + '\x1f' + p.str(); }
}  // namespace

// ---------------------------------------------------------------------------
// Graph

bool Graph::add(Triple t) {
  auto key = triple_key(t);
  if (triple_set_.count(key)) return false;
  std::size_t idx = triples_.size();
  triple_set_.emplace(std::move(key), idx);
  by_subject_[t.subject.str()].push_back(idx);
  by_predicate_[t.predicate.str()].push_back(idx);
  by_subject_predicate_[pair_key(t.subject, t.predicate)].push_back(idx);
  triples_.push_back(std::move(t));
  return true;
}

void Graph::add_all(const Graph& other) {
  for (const auto& t : other.triples_) add(t);
  for (const auto& [prefix, ns] : other.prefixes_) register_prefix(prefix, ns);
}

bool Graph::contains(const Triple& t) const { return triple_set_.count(triple_key(t)) != 0; }

void Graph::register_prefix(const std::string& prefix, const std::string& ns) {
  prefixes_[prefix] = ns;
}

namespace {
std::vector<const Triple*> collect(const std::vector<Triple>& triples,
                                   const std::unordered_map<std::string, std::vector<std::size_t>>& index,
                                   const std::string& key) {
  std::vector<const Triple*> out;
  auto it = index.find(key);
  if (it == index.end()) return out;
  out.reserve(it->second.size());
  for (auto idx : it->second) out.push_back(&triples[idx]);
  return out;
}
}  // namespace

std::vector<const Triple*> Graph::with_subject(const Iri& s) const {
  return collect(triples_, by_subject_, s.str());
}

std::vector<const Triple*> Graph::with_predicate(const Iri& p) const {
  return collect(triples_, by_predicate_, p.str());
}

std::vector<const Triple*> Graph::with_subject_predicate(const Iri& s, const Iri& p) const {
  return collect(triples_, by_subject_predicate_, pair_key(s, p));
}

std::vector<Term> Graph::objects_of(const Iri& s, const Iri& p) const {
  std::vector<Term> out;
  for (const Triple* t : with_subject_predicate(s, p)) out.push_back(t->object);
  return out;
}

std::optional<Term> Graph::object_of(const Iri& s, const Iri& p) const {
  auto objs = objects_of(s, p);
  if (objs.size() != 1) return std::nullopt;
  return objs[0];
}

std::vector<Iri> Graph::subjects_with(const Iri& p, const Term& o) const {
  std::vector<Iri> out;
  for (const Triple* t : with_predicate(p))
    if (term_equal(t->object, o)) out.push_back(t->subject);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Basic graph pattern matching

Variable::Variable(std::string n) : name(std::move(n)) {
  if (name.empty() || !is_name_start(name[0]) ||
      !std::all_of(name.begin(), name.end(),
                   [](char c) { return is_name_start(c) || (c >= '0' && c <= '9'); }))
    throw Error("invalid variable name '" + name + "'");
}

TriplePattern::TriplePattern(PatternTerm s, PatternTerm p, PatternTerm o)
    : subject(std::move(s)), predicate(std::move(p)), object(std::move(o)) {
  if (std::holds_alternative<Literal>(subject)) throw Error("pattern subject cannot be a literal");
  if (std::holds_alternative<Literal>(predicate))
    throw Error("pattern predicate cannot be a literal");
}

namespace {

// Resolves a pattern slot under a binding: a constant term or nullopt (free).
std::optional<Term> resolve_slot(const PatternTerm& slot, const Binding& binding,
                                 const std::string** var_name) {
  *var_name = nullptr;
  if (const auto* v = std::get_if<Variable>(&slot)) {
    auto it = binding.find(v->name);
    if (it != binding.end()) return it->second;
    *var_name = &v->name;
    return std::nullopt;
  }
  if (const auto* iri = std::get_if<Iri>(&slot)) return Term(*iri);
  return Term(std::get<Literal>(slot));
}

bool unify_slot(const std::optional<Term>& constant, const std::string* var_name, const Term& actual,
                Binding& binding) {
  if (constant) return term_equal(*constant, actual);
  auto [it, inserted] = binding.emplace(*var_name, actual);
  if (!inserted) return term_equal(it->second, actual);
  return true;
}

void match_rec(const Graph& g, const std::vector<TriplePattern>& patterns, std::size_t i,
               Binding& binding, std::vector<Binding>& out) {
  if (i == patterns.size()) {
    out.push_back(binding);
    return;
  }
  const auto& p = patterns[i];
  const std::string *sv, *pv, *ov;
  auto s_const = resolve_slot(p.subject, binding, &sv);
  auto p_const = resolve_slot(p.predicate, binding, &pv);
  auto o_const = resolve_slot(p.object, binding, &ov);

  std::vector<const Triple*> candidates;
  if (s_const && p_const)
    candidates = g.with_subject_predicate(std::get<Iri>(*s_const), std::get<Iri>(*p_const));
  else if (s_const)
    candidates = g.with_subject(std::get<Iri>(*s_const));
  else if (p_const)
    candidates = g.with_predicate(std::get<Iri>(*p_const));
  else {
    candidates.reserve(g.size());
    for (const auto& t : g.triples()) candidates.push_back(&t);
  }

  for (const Triple* t : candidates) {
    Binding extended = binding;
    if (!unify_slot(s_const, sv, Term(t->subject), extended)) continue;
    if (!unify_slot(p_const, pv, Term(t->predicate), extended)) continue;
    if (!unify_slot(o_const, ov, t->object, extended)) continue;
    match_rec(g, patterns, i + 1, extended, out);
  }
}

std::string binding_key(const Binding& b) {
  std::string key;
  for (const auto& [name, term] : b) {
    key += name;
    key += '=';
    key += term_key(term);
    key += '\x1e';
  }
  return key;
}

}  // namespace

std::vector<Binding> match_bgp(const Graph& g, const std::vector<TriplePattern>& patterns) {
  std::vector<Binding> out;
  Binding empty;
  match_rec(g, patterns, 0, empty, out);
  std::sort(out.begin(), out.end(),
            [](const Binding& a, const Binding& b) { return binding_key(a) < binding_key(b); });
  out.erase(std::unique(out.begin(), out.end(),
                        [](const Binding& a, const Binding& b) {
                          return binding_key(a) == binding_key(b);
                        }),
            out.end());
  return out;
}

bool graph_equal(const Graph& a, const Graph& b) {
  if (a.size() != b.size()) return false;
  for (const auto& t : a.triples())
    if (!b.contains(t)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Turtle lexer

namespace {

enum class Tok {
  Eof,
  IriRef,     // <...>
  PrefixedName,  // prefix:local (value = expanded later; text = raw)
  PrefixDecl,    // @prefix
  String,
  Integer,
  Double,
  BoolTrue,
  BoolFalse,
  KeywordA,
  Dot,
  Semicolon,
  Comma,
  DoubleCaret,
};

struct Token {
  Tok kind = Tok::Eof;
  std::string text;     // token payload (IRI body, string value, number lexical, pname)
  int line = 1;
  int column = 1;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  Token next() {
    skip_ws_and_comments();
    Token tok;
    tok.line = line_;
    tok.column = column_;
    if (eof()) {
      tok.kind = Tok::Eof;
      return tok;
    }
    char c = peek();
    switch (c) {
      case '<': return lex_iriref(tok);
      case '"': return lex_string(tok);
      case '@': return lex_at(tok);
      case '.': {
        get();
        tok.kind = Tok::Dot;
        tok.text = ".";
        return tok;
      }
      case ';': get(); tok.kind = Tok::Semicolon; tok.text = ";"; return tok;
      case ',': get(); tok.kind = Tok::Comma; tok.text = ","; return tok;
      case '^': {
        get();
        if (eof() || peek() != '^') fail(tok, "^", "expected '^^' datatype marker");
        get();
        tok.kind = Tok::DoubleCaret;
        tok.text = "^^";
        return tok;
      }
      case '[': case ']':
        fail(tok, std::string(1, c), "blank nodes are not supported by this Turtle subset");
        break;
      case '(': case ')':
        fail(tok, std::string(1, c), "collections are not supported by this Turtle subset");
        break;
      default: break;
    }
    if (c == '+' || c == '-' || (c >= '0' && c <= '9')) return lex_number(tok);
    if (is_name_start(c) || c == ':') return lex_name(tok);
    fail(tok, std::string(1, c), "unexpected character");
    return tok;  // unreachable
  }

 private:
  bool eof() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }
  char get() {
    char c = text_[pos_++];
    if (c == '\n') {
      line_++;
      column_ = 1;
    } else {
      column_++;
    }
    return c;
  }

  [[noreturn]] void fail(const Token& tok, const std::string& text, const std::string& msg) {
    throw ParseError(tok.line, tok.column, text, msg);
  }

  void skip_ws_and_comments() {
    while (!eof()) {
      char c = peek();
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        get();
      } else if (c == '#') {
        while (!eof() && peek() != '\n') get();
      } else {
        break;
      }
    }
  }

  Token lex_iriref(Token tok) {
    get();  // '<'
    std::string value;
    while (true) {
      if (eof()) fail(tok, value, "unterminated IRI");
      char c = get();
      if (c == '>') break;
      if (c == '\n') fail(tok, value, "newline inside IRI");
      value += c;
    }
    tok.kind = Tok::IriRef;
    tok.text = std::move(value);
    return tok;
  }

  Token lex_string(Token tok) {
    get();  // opening quote
    std::string value;
    while (true) {
      if (eof()) fail(tok, value, "unterminated string literal");
      char c = get();
      if (c == '"') break;
      if (c == '\\') {
        if (eof()) fail(tok, value, "unterminated escape sequence");
        char e = get();
        switch (e) {
          case 't': value += '\t'; break;
          case 'n': value += '\n'; break;
          case 'r': value += '\r'; break;
          case '"': value += '"'; break;
          case '\\': value += '\\'; break;
          default: fail(tok, std::string(1, e), "unsupported escape sequence");
        }
      } else {
        value += c;
      }
    }
    tok.kind = Tok::String;
    tok.text = std::move(value);
    return tok;
  }

  Token lex_at(Token tok) {
    get();  // '@'
    std::string word;
    while (!eof() && is_name_start(peek())) word += get();
    if (word == "prefix") {
      tok.kind = Tok::PrefixDecl;
      tok.text = "@prefix";
      return tok;
    }
    if (word == "base") fail(tok, "@base", "@base is not supported by this Turtle subset");
    fail(tok, "@" + word, "language tags and unknown directives are not supported");
    return tok;  // unreachable
  }

  Token lex_number(Token tok) {
    std::string lex;
    bool is_double = false;
    if (peek() == '+' || peek() == '-') lex += get();
    while (!eof() && peek() >= '0' && peek() <= '9') lex += get();
    if (!eof() && peek() == '.') {
      // A '.' is part of the number only if followed by a digit; otherwise it
      // terminates the statement.
      if (pos_ + 1 < text_.size() && text_[pos_ + 1] >= '0' && text_[pos_ + 1] <= '9') {
        is_double = true;
        lex += get();
        while (!eof() && peek() >= '0' && peek() <= '9') lex += get();
      }
    }
    if (!eof() && (peek() == 'e' || peek() == 'E')) {
      is_double = true;
      lex += get();
      if (!eof() && (peek() == '+' || peek() == '-')) lex += get();
      if (eof() || peek() < '0' || peek() > '9') fail(tok, lex, "malformed exponent");
      while (!eof() && peek() >= '0' && peek() <= '9') lex += get();
    }
    if (lex.empty() || lex == "+" || lex == "-") fail(tok, lex, "malformed number");
    tok.kind = is_double ? Tok::Double : Tok::Integer;
    tok.text = std::move(lex);
    return tok;
  }

  Token lex_name(Token tok) {
    std::string word;
    while (!eof() && is_name_char(peek())) word += get();
    if (!eof() && peek() == ':') {
      get();
      if (word == "_") fail(tok, "_:", "blank node labels are not supported");
      std::string local;
      while (!eof() && is_name_char(peek())) local += get();
      tok.kind = Tok::PrefixedName;
      tok.text = word + ":" + local;
      return tok;
    }
    if (word == "a") {
      tok.kind = Tok::KeywordA;
      tok.text = "a";
      return tok;
    }
    if (word == "true") {
      tok.kind = Tok::BoolTrue;
      tok.text = "true";
      return tok;
    }
    if (word == "false") {
      tok.kind = Tok::BoolFalse;
      tok.text = "false";
      return tok;
    }
    fail(tok, word, "expected a prefixed name, 'a', 'true' or 'false'");
    return tok;  // unreachable
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

// ---------------------------------------------------------------------------
// Turtle parser

class Parser {
 public:
  explicit Parser(std::string_view text) : lexer_(text) { advance(); }

  Graph parse() {
    Graph g;
    while (cur_.kind != Tok::Eof) {
      if (cur_.kind == Tok::PrefixDecl) {
        parse_prefix(g);
      } else {
        parse_statement(g);
      }
    }
    return g;
  }

 private:
  void advance() { cur_ = lexer_.next(); }

  [[noreturn]] void fail(const std::string& msg) {
    throw ParseError(cur_.line, cur_.column, cur_.text, msg);
  }

  void expect(Tok kind, const char* what) {
    if (cur_.kind != kind) fail(std::string("expected ") + what);
    advance();
  }

  Iri make_iri(const std::string& value) {
    try {
      return Iri(value);
    } catch (const Error& e) {
      throw ParseError(cur_.line, cur_.column, cur_.text, e.what());
    }
  }

  Iri expand_pname(const std::string& pname) {
    auto colon = pname.find(':');
    std::string prefix = pname.substr(0, colon);
    std::string local = pname.substr(colon + 1);
    auto it = prefixes_.find(prefix);
    if (it == prefixes_.end()) fail("unknown prefix '" + prefix + ":'");
    return make_iri(it->second + local);
  }

  void parse_prefix(Graph& g) {
    advance();  // @prefix
    if (cur_.kind != Tok::PrefixedName) fail("expected prefix name after @prefix");
    std::string pname = cur_.text;
    if (pname.empty() || pname.back() != ':')
      fail("prefix declaration must end with ':'");
    std::string prefix = pname.substr(0, pname.size() - 1);
    advance();
    if (cur_.kind != Tok::IriRef) fail("expected <IRI> in @prefix");
    std::string ns = cur_.text;
    make_iri(ns);  // validate
    advance();
    expect(Tok::Dot, "'.' after @prefix directive");
    prefixes_[prefix] = ns;
    g.register_prefix(prefix, ns);
  }

  Iri parse_iri_term(const char* what) {
    if (cur_.kind == Tok::IriRef) {
      Iri iri = make_iri(cur_.text);
      advance();
      return iri;
    }
    if (cur_.kind == Tok::PrefixedName) {
      Iri iri = expand_pname(cur_.text);
      advance();
      return iri;
    }
    fail(std::string("expected ") + what);
  }

  Iri parse_predicate() {
    if (cur_.kind == Tok::KeywordA) {
      advance();
      return iris::rdf_type();
    }
    return parse_iri_term("predicate IRI");
  }

  Datatype datatype_from_iri(const Iri& iri) {
    static const std::string xsd = "http://www.w3.org/2001/XMLSchema#";
    if (iri.str().rfind(xsd, 0) == 0) {
      auto local = iri.str().substr(xsd.size());
      if (local == "string") return Datatype::String;
      if (local == "integer" || local == "int" || local == "long") return Datatype::Integer;
      if (local == "double" || local == "decimal" || local == "float") return Datatype::Double;
      if (local == "boolean") return Datatype::Boolean;
    }
    fail("unsupported literal datatype <" + iri.str() + ">");
  }

  Term parse_object() {
    switch (cur_.kind) {
      case Tok::IriRef:
      case Tok::PrefixedName:
        return Term(parse_iri_term("object"));
      case Tok::String: {
        std::string value = cur_.text;
        int line = cur_.line, column = cur_.column;
        advance();
        if (cur_.kind == Tok::DoubleCaret) {
          advance();
          Iri dt_iri = parse_iri_term("datatype IRI after '^^'");
          Datatype dt = datatype_from_iri(dt_iri);
          try {
            return Term(Literal::typed(std::move(value), dt));
          } catch (const Error& e) {
            throw ParseError(line, column, value, e.what());
          }
        }
        return Term(Literal::str(std::move(value)));
      }
      case Tok::Integer: {
        auto lit = Literal::typed(cur_.text, Datatype::Integer);
        advance();
        return Term(std::move(lit));
      }
      case Tok::Double: {
        auto lit = Literal::typed(cur_.text, Datatype::Double);
        advance();
        return Term(std::move(lit));
      }
      case Tok::BoolTrue:
        advance();
        return Term(Literal::boolean(true));
      case Tok::BoolFalse:
        advance();
        return Term(Literal::boolean(false));
      default:
        fail("expected an object (IRI or literal)");
    }
  }

  void parse_statement(Graph& g) {
    Iri subject = parse_iri_term("subject IRI");
    while (true) {
      Iri predicate = parse_predicate();
      while (true) {
        Term object = parse_object();
        g.add(Triple{subject, predicate, std::move(object)});
        if (cur_.kind != Tok::Comma) break;
        advance();
      }
      if (cur_.kind == Tok::Semicolon) {
        advance();
        if (cur_.kind == Tok::Dot) break;  // trailing ';' before '.'
        continue;
      }
      break;
    }
    expect(Tok::Dot, "'.' after statement");
  }

  Lexer lexer_;
  Token cur_;
  std::map<std::string, std::string> prefixes_;
};

}  // namespace

Graph parse_turtle(std::string_view text) { return Parser(text).parse(); }

// ---------------------------------------------------------------------------
// Turtle serializer

namespace {

std::string escape_string(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  return out;
}

// True iff the lexer would read this bare lexical back as a Double token:
// digits (optionally signed), then '.' + digits and/or an exponent.
bool bare_double_lexical(const std::string& s) {
  std::size_t i = 0;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) i++;
  std::size_t digits = 0;
  while (i < s.size() && s[i] >= '0' && s[i] <= '9') i++, digits++;
  if (digits == 0) return false;
  bool fraction = false, exponent = false;
  if (i < s.size() && s[i] == '.') {
    i++;
    std::size_t frac_digits = 0;
    while (i < s.size() && s[i] >= '0' && s[i] <= '9') i++, frac_digits++;
    if (frac_digits == 0) return false;
    fraction = true;
  }
  if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
    i++;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) i++;
    std::size_t exp_digits = 0;
    while (i < s.size() && s[i] >= '0' && s[i] <= '9') i++, exp_digits++;
    if (exp_digits == 0) return false;
    exponent = true;
  }
  return i == s.size() && (fraction || exponent);
}

std::string render_iri(const Iri& iri, const std::map<std::string, std::string>& prefixes) {
  for (const auto& [prefix, ns] : prefixes) {
    if (iri.str().size() > ns.size() && iri.str().rfind(ns, 0) == 0) {
      auto local = std::string_view(iri.str()).substr(ns.size());
      if (valid_local_name(local)) return prefix + ":" + std::string(local);
    }
  }
  return "<" + iri.str() + ">";
}

std::string render_term(const Term& t, const std::map<std::string, std::string>& prefixes) {
  if (const auto* iri = std::get_if<Iri>(&t)) return render_iri(*iri, prefixes);
  const auto& lit = std::get<Literal>(t);
  switch (lit.datatype()) {
    case Datatype::String: return "\"" + escape_string(lit.lexical()) + "\"";
    case Datatype::Integer:
    case Datatype::Boolean: return lit.lexical();
    case Datatype::Double:
      // A lexical like "5" would reparse as an integer; keep the datatype.
      if (bare_double_lexical(lit.lexical())) return lit.lexical();
      return "\"" + escape_string(lit.lexical()) +
             "\"^^<http://www.w3.org/2001/XMLSchema#double>";
  }
  return "";
}

}  // namespace

std::string serialize_turtle(const Graph& g) {
  std::ostringstream out;
  for (const auto& [prefix, ns] : g.prefixes())
    out << "@prefix " << prefix << ": <" << ns << "> .\n";
  if (!g.prefixes().empty() && !g.empty()) out << "\n";

  // subject -> predicate -> objects; rdf:type sorts first within a subject.
  std::map<Iri, std::map<std::pair<bool, Iri>, std::vector<Term>>> grouped;
  for (const auto& t : g.triples()) {
    bool is_type = t.predicate == iris::rdf_type();
    grouped[t.subject][{!is_type, t.predicate}].push_back(t.object);
  }

  for (auto& [subject, pred_map] : grouped) {
    out << render_iri(subject, g.prefixes());
    bool first_pred = true;
    for (auto& [pred_key, objects] : pred_map) {
      if (!first_pred) out << " ;\n   ";
      const auto& predicate = pred_key.second;
      out << " " << (predicate == iris::rdf_type() ? "a" : render_iri(predicate, g.prefixes()));
      std::sort(objects.begin(), objects.end(), term_less);
      bool first_obj = true;
      for (const auto& object : objects) {
        out << (first_obj ? " " : ", ") << render_term(object, g.prefixes());
        first_obj = false;
      }
      first_pred = false;
    }
    out << " .\n";
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Violation helpers (kept here so errors.hpp stays header-only)

const char* to_string(ViolationCode code) {
  switch (code) {
    case ViolationCode::MethodNotApplicable: return "METHOD_NOT_APPLICABLE";
    case ViolationCode::MissingParam: return "MISSING_PARAM";
    case ViolationCode::UnknownParam: return "UNKNOWN_PARAM";
    case ViolationCode::DuplicateParam: return "DUPLICATE_PARAM";
    case ViolationCode::ParamTypeMismatch: return "PARAM_TYPE_MISMATCH";
    case ViolationCode::InputArityMismatch: return "INPUT_ARITY_MISMATCH";
    case ViolationCode::InputStructureMismatch: return "INPUT_STRUCTURE_MISMATCH";
    case ViolationCode::OutputArityMismatch: return "OUTPUT_ARITY_MISMATCH";
    case ViolationCode::UnknownTaskType: return "UNKNOWN_TASK_TYPE";
    case ViolationCode::UnknownMethodType: return "UNKNOWN_METHOD_TYPE";
    case ViolationCode::UnknownStructure: return "UNKNOWN_STRUCTURE";
    case ViolationCode::UnknownIri: return "UNKNOWN_IRI";
    case ViolationCode::InvalidName: return "INVALID_NAME";
    case ViolationCode::DuplicateEntity: return "DUPLICATE_ENTITY";
    case ViolationCode::MissingMethod: return "MISSING_METHOD";
    case ViolationCode::MalformedTask: return "MALFORMED_TASK";
    case ViolationCode::NonlinearChain: return "NONLINEAR_CHAIN";
    case ViolationCode::Cycle: return "CYCLE";
    case ViolationCode::DanglingInput: return "DANGLING_INPUT";
    case ViolationCode::UnreachableTask: return "UNREACHABLE_TASK";
    case ViolationCode::MissingStartTask: return "MISSING_START_TASK";
    case ViolationCode::MissingPipeline: return "MISSING_PIPELINE";
    case ViolationCode::MissingDataPath: return "MISSING_DATA_PATH";
    case ViolationCode::EmptyPipeline: return "EMPTY_PIPELINE";
  }
  return "?";
}

std::string Violation::describe() const {
  std::string out = std::string(to_string(code)) + ": " + message;
  for (const auto& iri : iris) out += " <" + iri + ">";
  return out;
}

std::string ValidationError::summarize(const std::vector<Violation>& violations) {
  if (violations.empty()) return "validation failed";
  std::string out = "validation failed with " + std::to_string(violations.size()) +
                    " violation(s):";
  for (const auto& v : violations) out += "\n  - " + v.describe();
  return out;
}

}  // namespace exekg
