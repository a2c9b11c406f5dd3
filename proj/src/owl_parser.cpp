#include "axiom_align/owl_parser.hpp"

#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <unordered_map>

#include "overloaded.hpp"

namespace axiom_align {

ParseError::ParseError(ParseDiagnostic diagnostic)
    : Error(std::to_string(diagnostic.line) + ":" + std::to_string(diagnostic.column) + ": " +
            diagnostic.message),
      diagnostic_(std::move(diagnostic)) {}

namespace {

using detail::Overloaded;

const std::map<std::string, std::string, std::less<>> kBuiltinPrefixes = {
    {"owl", "http://www.w3.org/2002/07/owl#"},
    {"rdf", "http://www.w3.org/1999/02/22-rdf-syntax-ns#"},
    {"rdfs", "http://www.w3.org/2000/01/rdf-schema#"},
    {"xsd", "http://www.w3.org/2001/XMLSchema#"},
};

const std::string kRdfsLabel = "http://www.w3.org/2000/01/rdf-schema#label";

struct Position {
  std::size_t line = 1;
  std::size_t column = 1;
};

enum class TokenType { LParen, RParen, Equals, IriRef, Name, String, End };

struct Token {
  TokenType type;
  std::string text;  // IRI without brackets, name, or unescaped string
  Position pos;
};

[[noreturn]] void fail(Position pos, std::string message) {
  throw ParseError(ParseDiagnostic{pos.line, pos.column, std::move(message),
                                   ParseDiagnostic::Severity::Error});
}

bool is_name_char(char ch) {
  auto u = static_cast<unsigned char>(ch);
  return std::isalnum(u) || ch == '_' || ch == '-' || ch == '.' || ch == ':';
}

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  Token next() {
    skip_blanks();
    Position start = pos_;
    if (offset_ >= text_.size()) return Token{TokenType::End, "", start};
    char ch = text_[offset_];
    switch (ch) {
      case '(': advance(); return Token{TokenType::LParen, "(", start};
      case ')': advance(); return Token{TokenType::RParen, ")", start};
      case '=': advance(); return Token{TokenType::Equals, "=", start};
      case '<': return iri(start);
      case '"': return string(start);
      default: break;
    }
    if (is_name_char(ch)) {
      std::string name;
      while (offset_ < text_.size() && is_name_char(text_[offset_])) {
        name += text_[offset_];
        advance();
      }
      return Token{TokenType::Name, std::move(name), start};
    }
    fail(start, std::string("unexpected character '") + ch + "'");
  }

 private:
  void advance() {
    if (text_[offset_] == '\n') {
      ++pos_.line;
      pos_.column = 1;
    } else {
      ++pos_.column;
    }
    ++offset_;
  }

  void skip_blanks() {
    while (offset_ < text_.size()) {
      char ch = text_[offset_];
      if (ch == '#') {
        while (offset_ < text_.size() && text_[offset_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(ch))) {
        advance();
      } else {
        break;
      }
    }
  }

  Token iri(Position start) {
    advance();
    std::string body;
    while (offset_ < text_.size() && text_[offset_] != '>') {
      if (std::isspace(static_cast<unsigned char>(text_[offset_]))) {
        fail(pos_, "whitespace inside IRI");
      }
      body += text_[offset_];
      advance();
    }
    if (offset_ >= text_.size()) fail(start, "unterminated IRI");
    advance();
    if (body.empty()) fail(start, "empty IRI");
    return Token{TokenType::IriRef, std::move(body), start};
  }

  Token string(Position start) {
    advance();
    std::string body;
    while (true) {
      if (offset_ >= text_.size()) fail(start, "unterminated string literal");
      char ch = text_[offset_];
      if (ch == '"') {
        advance();
        break;
      }
      if (ch == '\\') {
        Position esc = pos_;
        advance();
        if (offset_ >= text_.size()) fail(start, "unterminated string literal");
        char escaped = text_[offset_];
        if (escaped != '"' && escaped != '\\') fail(esc, "unsupported escape sequence");
        body += escaped;
        advance();
        continue;
      }
      body += ch;
      advance();
    }
    return Token{TokenType::String, std::move(body), start};
  }

  std::string_view text_;
  std::size_t offset_ = 0;
  Position pos_;
};

struct Usage {
  Iri iri;
  std::optional<EntityKind> kind;  // empty for label subjects
  Position pos;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : lexer_(text) { current_ = lexer_.next(); }

  ParsedOntology run() {
    bool seen_ontology = false;
    while (current_.type != TokenType::End) {
      if (current_.type == TokenType::Name && current_.text == "Prefix") {
        if (seen_ontology) fail(current_.pos, "Prefix must precede Ontology");
        prefix();
      } else if (current_.type == TokenType::Name && current_.text == "Ontology") {
        if (seen_ontology) fail(current_.pos, "duplicate ontology: document declares a second Ontology");
        seen_ontology = true;
        ontology();
      } else if (current_.type == TokenType::Name && peek_is_call()) {
        fail(current_.pos, "unsupported construct '" + current_.text + "'");
      } else {
        fail(current_.pos, "expected Prefix(...) or Ontology(...)");
      }
    }
    if (!seen_ontology) fail(current_.pos, "expected Ontology(...)");
    return finish();
  }

 private:
  // Lookahead of one token beyond current_ is only needed to tell a keyword
  // call from a bare name; the lexer is cheap to copy for that.
  bool peek_is_call() {
    Lexer probe = lexer_;
    return probe.next().type == TokenType::LParen;
  }

  Token take() {
    Token t = std::move(current_);
    current_ = lexer_.next();
    return t;
  }

  Token expect(TokenType type, const char* what) {
    if (current_.type != type) fail(current_.pos, std::string("expected ") + what);
    return take();
  }

  void prefix() {
    take();
    expect(TokenType::LParen, "'('");
    Token name = expect(TokenType::Name, "prefix name");
    if (name.text.empty() || name.text.back() != ':' ||
        name.text.find(':') != name.text.size() - 1) {
      fail(name.pos, "malformed prefix name '" + name.text + "'");
    }
    expect(TokenType::Equals, "'='");
    Token ns = expect(TokenType::IriRef, "namespace IRI");
    expect(TokenType::RParen, "')'");
    prefixes_[name.text.substr(0, name.text.size() - 1)] = ns.text;
  }

  void ontology() {
    take();
    expect(TokenType::LParen, "'('");
    Token iri = expect(TokenType::IriRef, "ontology IRI");
    ontology_iri_.emplace(make_iri(iri.text, iri.pos));
    while (current_.type != TokenType::RParen) {
      if (current_.type == TokenType::End) fail(current_.pos, "unterminated Ontology(...)");
      item();
    }
    take();
  }

  Iri make_iri(const std::string& text, Position pos) {
    try {
      return Iri(text);
    } catch (const ModelError& e) {
      fail(pos, e.what());
    }
  }

  bool at_reference() const {
    return current_.type == TokenType::IriRef ||
           (current_.type == TokenType::Name && current_.text.find(':') != std::string::npos);
  }

  Iri reference(const char* what) {
    if (current_.type == TokenType::IriRef) {
      Token t = take();
      return make_iri(t.text, t.pos);
    }
    if (current_.type == TokenType::Name) {
      auto colon = current_.text.find(':');
      if (colon != std::string::npos) {
        Token t = take();
        std::string prefix = t.text.substr(0, colon);
        std::string local = t.text.substr(colon + 1);
        if (local.empty()) fail(t.pos, "missing local name in '" + t.text + "'");
        return make_iri(resolve_prefix(prefix, t.pos) + local, t.pos);
      }
      if (peek_is_call()) fail(current_.pos, "unsupported construct '" + current_.text + "'");
    }
    fail(current_.pos, std::string("expected ") + what);
  }

  std::string resolve_prefix(const std::string& prefix, Position pos) {
    if (auto it = prefixes_.find(prefix); it != prefixes_.end()) return it->second;
    if (prefix.empty()) return default_namespace(*ontology_iri_);
    if (auto it = kBuiltinPrefixes.find(prefix); it != kBuiltinPrefixes.end()) return it->second;
    fail(pos, "undeclared prefix '" + prefix + ":'");
  }

  Iri entity(EntityKind kind, const char* what) {
    Position pos = current_.pos;
    Iri iri = reference(what);
    usages_.push_back(Usage{iri, kind, pos});
    return iri;
  }

  ClassExpression class_expression() {
    if (at_reference()) return ClassExpression::named(entity(EntityKind::Class, "class"));
    if (current_.type != TokenType::Name) fail(current_.pos, "expected class expression");
    Token head = take();
    if (current_.type != TokenType::LParen) fail(head.pos, "expected class expression");
    const std::string& kw = head.text;
    if (kw == "ObjectSomeValuesFrom" || kw == "ObjectAllValuesFrom") {
      take();
      Iri property = entity(EntityKind::ObjectProperty, "object property");
      ClassExpression filler = class_expression();
      expect(TokenType::RParen, "')'");
      return kw == "ObjectSomeValuesFrom"
                 ? ClassExpression::object_some(std::move(property), std::move(filler))
                 : ClassExpression::object_all(std::move(property), std::move(filler));
    }
    if (kw == "DataSomeValuesFrom") {
      take();
      Iri property = entity(EntityKind::DataProperty, "data property");
      Iri datatype = reference("datatype");
      expect(TokenType::RParen, "')'");
      return ClassExpression::data_some(std::move(property), std::move(datatype));
    }
    if (kw == "ObjectUnionOf" || kw == "ObjectIntersectionOf") {
      take();
      std::vector<ClassExpression> ops;
      ops.push_back(class_expression());
      do {
        ops.push_back(class_expression());
      } while (current_.type != TokenType::RParen);
      take();
      return kw == "ObjectUnionOf" ? ClassExpression::union_of(std::move(ops))
                                   : ClassExpression::intersection_of(std::move(ops));
    }
    if (kw == "ObjectComplementOf") {
      take();
      ClassExpression operand = class_expression();
      expect(TokenType::RParen, "')'");
      return ClassExpression::complement_of(std::move(operand));
    }
    fail(head.pos, "unsupported construct '" + kw + "'");
  }

  void item() {
    if (current_.type != TokenType::Name || current_.text.find(':') != std::string::npos) {
      fail(current_.pos, "expected axiom or declaration");
    }
    Token head = take();
    if (current_.type != TokenType::LParen) fail(head.pos, "expected '(' after " + head.text);
    take();
    const std::string& kw = head.text;
    if (kw == "Declaration") {
      declaration();
    } else if (kw == "SubClassOf") {
      ClassExpression sub = class_expression();
      ClassExpression sup = class_expression();
      axioms_.emplace_back(SubClassOf{std::move(sub), std::move(sup)});
    } else if (kw == "EquivalentClasses") {
      ClassExpression a = class_expression();
      ClassExpression b = class_expression();
      if (current_.type != TokenType::RParen) {
        fail(current_.pos, "unsupported construct 'EquivalentClasses' with more than two operands");
      }
      axioms_.emplace_back(EquivalentClasses{std::move(a), std::move(b)});
    } else if (kw == "DisjointClasses") {
      std::vector<Iri> members;
      while (current_.type != TokenType::RParen) {
        if (!at_reference()) {
          fail(current_.pos, "DisjointClasses members must be named classes");
        }
        Position pos = current_.pos;
        Iri member = entity(EntityKind::Class, "class");
        for (const auto& m : members) {
          if (m == member) fail(pos, "DisjointClasses lists " + member.full() + " twice");
        }
        members.push_back(std::move(member));
      }
      if (members.size() < 2) fail(head.pos, "DisjointClasses needs at least two classes");
      axioms_.emplace_back(DisjointClasses{std::move(members)});
    } else if (kw == "ObjectPropertyDomain" || kw == "ObjectPropertyRange") {
      Iri property = entity(EntityKind::ObjectProperty, "object property");
      ClassExpression ce = class_expression();
      if (kw == "ObjectPropertyDomain") {
        axioms_.emplace_back(ObjectPropertyDomain{std::move(property), std::move(ce)});
      } else {
        axioms_.emplace_back(ObjectPropertyRange{std::move(property), std::move(ce)});
      }
    } else if (kw == "DataPropertyDomain") {
      Iri property = entity(EntityKind::DataProperty, "data property");
      ClassExpression ce = class_expression();
      axioms_.emplace_back(DataPropertyDomain{std::move(property), std::move(ce)});
    } else if (kw == "DataPropertyRange") {
      Iri property = entity(EntityKind::DataProperty, "data property");
      Iri datatype = reference("datatype");
      axioms_.emplace_back(DataPropertyRange{std::move(property), std::move(datatype)});
    } else if (kw == "AnnotationAssertion") {
      Position pos = current_.pos;
      Iri annotation = reference("annotation property");
      if (annotation.full() != kRdfsLabel) {
        fail(pos, "unsupported construct: annotation property " + annotation.full());
      }
      Position subject_pos = current_.pos;
      Iri subject = reference("annotation subject");
      usages_.push_back(Usage{subject, std::nullopt, subject_pos});
      Token text = expect(TokenType::String, "string literal");
      axioms_.emplace_back(Label{std::move(subject), std::move(text.text)});
    } else {
      fail(head.pos, "unsupported construct '" + kw + "'");
    }
    expect(TokenType::RParen, "')'");
  }

  void declaration() {
    Token head = expect(TokenType::Name, "entity type");
    EntityKind kind;
    if (head.text == "Class") {
      kind = EntityKind::Class;
    } else if (head.text == "ObjectProperty") {
      kind = EntityKind::ObjectProperty;
    } else if (head.text == "DataProperty") {
      kind = EntityKind::DataProperty;
    } else {
      fail(head.pos, "unsupported construct 'Declaration(" + head.text + ")'");
    }
    expect(TokenType::LParen, "'('");
    Position pos = current_.pos;
    Iri iri = reference("entity IRI");
    expect(TokenType::RParen, "')'");
    auto [it, inserted] = declared_.emplace(iri, kind);
    if (!inserted && it->second != kind) {
      fail(pos, iri.full() + " is already declared as " + std::string(to_string(it->second)));
    }
  }

  ParsedOntology finish() {
    std::vector<ParseDiagnostic> warnings;
    std::unordered_map<Iri, EntityKind> kinds(declared_.begin(), declared_.end());
    auto warn = [&](const Usage& u, EntityKind kind) {
      warnings.push_back(ParseDiagnostic{
          u.pos.line, u.pos.column,
          "undeclared entity " + u.iri.full() + " declared as " + std::string(to_string(kind)),
          ParseDiagnostic::Severity::Warning});
    };
    for (const auto& u : usages_) {
      if (!u.kind) continue;
      auto it = kinds.find(u.iri);
      if (it == kinds.end()) {
        kinds.emplace(u.iri, *u.kind);
        warn(u, *u.kind);
      } else if (it->second != *u.kind) {
        fail(u.pos, u.iri.full() + " is used as " + std::string(to_string(*u.kind)) +
                        " but is a " + std::string(to_string(it->second)));
      }
    }
    for (const auto& u : usages_) {
      if (u.kind || kinds.contains(u.iri)) continue;
      kinds.emplace(u.iri, EntityKind::Class);
      warn(u, EntityKind::Class);
    }
    std::set<Iri> classes, object_properties, data_properties;
    for (const auto& [iri, kind] : kinds) {
      switch (kind) {
        case EntityKind::Class: classes.insert(iri); break;
        case EntityKind::ObjectProperty: object_properties.insert(iri); break;
        case EntityKind::DataProperty: data_properties.insert(iri); break;
      }
    }
    try {
      return ParsedOntology{Ontology(*ontology_iri_, std::move(classes),
                                     std::move(object_properties), std::move(data_properties),
                                     std::move(axioms_)),
                            std::move(warnings)};
    } catch (const ModelError& e) {
      fail(Position{}, e.what());
    }
  }

  Lexer lexer_;
  Token current_;
  std::map<std::string, std::string, std::less<>> prefixes_;
  std::optional<Iri> ontology_iri_;
  std::map<Iri, EntityKind> declared_;
  std::vector<Usage> usages_;
  std::vector<Axiom> axioms_;
};

// ---------------------------------------------------------------------------
// Serialization

bool is_local_name(std::string_view local) {
  if (local.empty() || local.back() == '.') return false;
  auto first = static_cast<unsigned char>(local.front());
  if (!std::isalpha(first) && local.front() != '_') return false;
  for (char ch : local) {
    auto u = static_cast<unsigned char>(ch);
    if (!std::isalnum(u) && ch != '_' && ch != '-' && ch != '.') return false;
  }
  return true;
}

class Writer {
 public:
  explicit Writer(const Ontology& o) : ns_(default_namespace(o.iri())) {}

  std::string ref(const Iri& iri) const {
    const std::string& full = iri.full();
    if (full.size() > ns_.size() && full.compare(0, ns_.size(), ns_) == 0) {
      std::string_view local(full.data() + ns_.size(), full.size() - ns_.size());
      if (is_local_name(local)) return ":" + std::string(local);
    }
    for (const auto& [name, ns] : kBuiltinPrefixes) {
      if (full.size() > ns.size() && full.compare(0, ns.size(), ns) == 0) {
        std::string_view local(full.data() + ns.size(), full.size() - ns.size());
        if (is_local_name(local)) return name + ":" + std::string(local);
      }
    }
    return "<" + full + ">";
  }

  void expression(const ClassExpression& ce, std::string& out) const {
    using K = ClassExpression::Kind;
    switch (ce.kind()) {
      case K::Named: out += ref(ce.iri()); return;
      case K::ObjectSome:
      case K::ObjectAll:
        out += ce.kind() == K::ObjectSome ? "ObjectSomeValuesFrom(" : "ObjectAllValuesFrom(";
        out += ref(ce.iri());
        out += ' ';
        expression(ce.filler(), out);
        out += ')';
        return;
      case K::DataSome:
        out += "DataSomeValuesFrom(" + ref(ce.iri()) + " " + ref(ce.datatype()) + ")";
        return;
      case K::Union:
      case K::Intersection:
      case K::Complement:
        out += ce.kind() == K::Union          ? "ObjectUnionOf("
               : ce.kind() == K::Intersection ? "ObjectIntersectionOf("
                                              : "ObjectComplementOf(";
        for (std::size_t i = 0; i < ce.operands().size(); ++i) {
          if (i) out += ' ';
          expression(ce.operands()[i], out);
        }
        out += ')';
        return;
    }
  }

  std::string expression(const ClassExpression& ce) const {
    std::string out;
    expression(ce, out);
    return out;
  }

  std::string axiom(const Axiom& ax) const {
    return std::visit(
        Overloaded{
            [&](const SubClassOf& a) {
              return "SubClassOf(" + expression(a.sub) + " " + expression(a.sup) + ")";
            },
            [&](const EquivalentClasses& a) {
              return "EquivalentClasses(" + expression(a.first) + " " + expression(a.second) + ")";
            },
            [&](const DisjointClasses& a) {
              std::string out = "DisjointClasses(";
              for (std::size_t i = 0; i < a.members.size(); ++i) {
                if (i) out += ' ';
                out += ref(a.members[i]);
              }
              return out + ")";
            },
            [&](const ObjectPropertyDomain& a) {
              return "ObjectPropertyDomain(" + ref(a.property) + " " + expression(a.domain) + ")";
            },
            [&](const ObjectPropertyRange& a) {
              return "ObjectPropertyRange(" + ref(a.property) + " " + expression(a.range) + ")";
            },
            [&](const DataPropertyDomain& a) {
              return "DataPropertyDomain(" + ref(a.property) + " " + expression(a.domain) + ")";
            },
            [&](const DataPropertyRange& a) {
              return "DataPropertyRange(" + ref(a.property) + " " + ref(a.datatype) + ")";
            },
            [&](const Label& a) {
              std::string text;
              for (char ch : a.text) {
                if (ch == '"' || ch == '\\') text += '\\';
                text += ch;
              }
              return "AnnotationAssertion(rdfs:label " + ref(a.subject) + " \"" + text + "\")";
            },
        },
        ax);
  }

  const std::string& ns() const { return ns_; }

 private:
  std::string ns_;
};

}  // namespace

ParsedOntology parse_ontology(std::string_view text) { return Parser(text).run(); }

std::string serialize_ontology(const Ontology& o) {
  Writer w(o);
  std::string out = "Prefix(:=<" + w.ns() + ">)\n";
  out += "Ontology(<" + o.iri().full() + ">\n";
  auto declare = [&](const std::set<Iri>& entities, const char* kind) {
    for (const auto& e : entities) {
      out += "Declaration(";
      out += kind;
      out += "(" + w.ref(e) + "))\n";
    }
  };
  declare(o.classes(), "Class");
  declare(o.object_properties(), "ObjectProperty");
  declare(o.data_properties(), "DataProperty");
  for (const auto& ax : o.axioms()) out += w.axiom(ax) + "\n";
  out += ")\n";
  return out;
}

}  // namespace axiom_align
