#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

#include "exekg/errors.hpp"

namespace exekg {

// Absolute http(s) IRI. Splits into namespace + local name at the last '#' or '/'.
class Iri {
 public:
  Iri() = default;
  explicit Iri(std::string value);

  const std::string& str() const { return value_; }
  std::string_view namespace_part() const;  // includes the trailing '#' or '/'
  std::string_view local_name() const;

  bool operator==(const Iri&) const = default;
  auto operator<=>(const Iri&) const = default;

 private:
  std::string value_;
};

enum class Datatype { String, Integer, Double, Boolean };

const char* to_string(Datatype dt);

// Typed literal. Identity is (lexical form, datatype); the lexical form is
// preserved verbatim from parse to serialization.
class Literal {
 public:
  Literal() = default;

  static Literal str(std::string value);
  static Literal integer(std::int64_t value);
  static Literal number(double value);  // shortest round-trip lexical form
  static Literal boolean(bool value);
  // Validates that `lexical` parses under `dt`; throws Error otherwise.
  static Literal typed(std::string lexical, Datatype dt);

  const std::string& lexical() const { return lexical_; }
  Datatype datatype() const { return datatype_; }

  std::int64_t as_integer() const;
  double as_double() const;  // accepts Integer and Double literals
  bool as_boolean() const;

  bool operator==(const Literal&) const = default;
  auto operator<=>(const Literal&) const = default;

 private:
  std::string lexical_;
  Datatype datatype_ = Datatype::String;
};

using Term = std::variant<Iri, Literal>;

bool term_equal(const Term& a, const Term& b);
// Total order over terms: IRIs before literals, then componentwise.
bool term_less(const Term& a, const Term& b);
std::string term_key(const Term& t);  // canonical encoding, used by indexes

struct Triple {
  Iri subject;
  Iri predicate;
  Term object;

  bool operator==(const Triple& other) const;
};

bool triple_less(const Triple& a, const Triple& b);

// Indexed set of ground triples plus a prefix table for serialization.
// Set semantics: adding a duplicate is a no-op. Mutable while being built,
// then treated as immutable; no internal locking.
class Graph {
 public:
  bool add(Triple t);  // returns false if the triple was already present
  void add_all(const Graph& other);  // triples and prefixes

  bool contains(const Triple& t) const;
  std::size_t size() const { return triples_.size(); }
  bool empty() const { return triples_.empty(); }
  const std::vector<Triple>& triples() const { return triples_; }

  void register_prefix(const std::string& prefix, const std::string& ns);
  const std::map<std::string, std::string>& prefixes() const { return prefixes_; }

  std::vector<const Triple*> with_subject(const Iri& s) const;
  std::vector<const Triple*> with_predicate(const Iri& p) const;
  std::vector<const Triple*> with_subject_predicate(const Iri& s, const Iri& p) const;

  // All objects of (s, p, ?), in insertion order.
  std::vector<Term> objects_of(const Iri& s, const Iri& p) const;
  // The unique object of (s, p, ?), or nullopt if absent or ambiguous.
  std::optional<Term> object_of(const Iri& s, const Iri& p) const;
  // All subjects s with (s, p, o) present, sorted.
  std::vector<Iri> subjects_with(const Iri& p, const Term& o) const;

 private:
  std::vector<Triple> triples_;
  std::map<std::string, std::string> prefixes_;
  std::unordered_map<std::string, std::size_t> triple_set_;
  std::unordered_map<std::string, std::vector<std::size_t>> by_subject_;
  std::unordered_map<std::string, std::vector<std::size_t>> by_predicate_;
  std::unordered_map<std::string, std::vector<std::size_t>> by_subject_predicate_;
};

// Named variable in a triple pattern. Names match [A-Za-z_][A-Za-z0-9_]*.
struct Variable {
  explicit Variable(std::string n);
  std::string name;
};

using PatternTerm = std::variant<Variable, Iri, Literal>;

// Subject and predicate slots must hold a Variable or an Iri.
struct TriplePattern {
  TriplePattern(PatternTerm s, PatternTerm p, PatternTerm o);
  PatternTerm subject;
  PatternTerm predicate;
  PatternTerm object;
};

using Binding = std::map<std::string, Term>;

// All bindings such that substituting them into every pattern yields triples
// present in g (natural join). Result is sorted and duplicate-free.
std::vector<Binding> match_bgp(const Graph& g, const std::vector<TriplePattern>& patterns);

// Turtle subset: @prefix, absolute IRIs, prefixed names, 'a', ';' and ','
// lists, literals of the four supported datatypes (optionally with an ^^xsd
// annotation). Blank nodes, collections, @base and language tags are rejected
// with an unsupported-feature ParseError.
Graph parse_turtle(std::string_view text);

// Deterministic: prefixes sorted, subjects in lexicographic IRI order,
// rdf:type first within a subject, objects sorted. parse(serialize(g)) is
// graph-equal to g.
std::string serialize_turtle(const Graph& g);

// Triple-set equality; prefix tables are ignored.
bool graph_equal(const Graph& a, const Graph& b);

namespace iris {
inline const Iri& rdf_type() {
  static const Iri iri{"http://www.w3.org/1999/02/22-rdf-syntax-ns#type"};
  return iri;
}
}  // namespace iris

}  // namespace exekg
