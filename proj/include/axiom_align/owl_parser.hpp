#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "axiom_align/alignment.hpp"
#include "axiom_align/error.hpp"
#include "axiom_align/ontology.hpp"

namespace axiom_align {

struct ParseDiagnostic {
  enum class Severity { Error, Warning };

  std::size_t line = 1;    // 1-based
  std::size_t column = 1;  // 1-based, counted in bytes
  std::string message;
  Severity severity = Severity::Error;
};

/// Raised by parse_ontology; carries the diagnostic that stopped parsing.
class ParseError : public Error {
 public:
  explicit ParseError(ParseDiagnostic diagnostic);
  const ParseDiagnostic& diagnostic() const noexcept { return diagnostic_; }

 private:
  ParseDiagnostic diagnostic_;
};

struct ParsedOntology {
  Ontology ontology;
  std::vector<ParseDiagnostic> warnings;
};

/// Parses the functional-syntax subset:
///
///   Prefix(NAME:=<IRI>)*
///   Ontology(<IRI> item*)
///
/// with items Declaration(Class|ObjectProperty|DataProperty(REF)),
/// SubClassOf, EquivalentClasses, DisjointClasses, Object/DataPropertyDomain,
/// Object/DataPropertyRange and AnnotationAssertion(rdfs:label REF "text").
/// `#` starts a comment that runs to the end of the line.
///
/// Entities used without a declaration are declared with the kind their
/// position implies and reported as warnings. Throws ParseError.
ParsedOntology parse_ontology(std::string_view text);

/// Canonical rendering: the `:` prefix, declarations (classes, object
/// properties, data properties, each sorted by IRI), then axioms in stored
/// order, one per line. Byte-identical for equal ontologies.
std::string serialize_ontology(const Ontology& o);

/// Reads the alignment TSV format (header `#source\ttarget\trelation\tconfidence`).
/// Throws FormatError with the offending line number.
Alignment parse_alignment(std::string_view text);

/// Writes rows in tsv_order with three-decimal confidences.
std::string serialize_alignment(const Alignment& alignment);

}  // namespace axiom_align
