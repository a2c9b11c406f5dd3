#pragma once

#include <compare>
#include <string>
#include <variant>
#include <vector>

#include "axiom_align/class_expression.hpp"

namespace axiom_align {

struct SubClassOf {
  ClassExpression sub;
  ClassExpression sup;
  auto operator<=>(const SubClassOf&) const = default;
};

struct EquivalentClasses {
  ClassExpression first;
  ClassExpression second;
  auto operator<=>(const EquivalentClasses&) const = default;
};

/// Members are named classes, pairwise distinct, at least two.
struct DisjointClasses {
  std::vector<Iri> members;
  auto operator<=>(const DisjointClasses&) const = default;
};

struct ObjectPropertyDomain {
  Iri property;
  ClassExpression domain;
  auto operator<=>(const ObjectPropertyDomain&) const = default;
};

struct ObjectPropertyRange {
  Iri property;
  ClassExpression range;
  auto operator<=>(const ObjectPropertyRange&) const = default;
};

struct DataPropertyDomain {
  Iri property;
  ClassExpression domain;
  auto operator<=>(const DataPropertyDomain&) const = default;
};

struct DataPropertyRange {
  Iri property;
  Iri datatype;
  auto operator<=>(const DataPropertyRange&) const = default;
};

/// rdfs:label annotation.
struct Label {
  Iri subject;
  std::string text;
  auto operator<=>(const Label&) const = default;
};

using Axiom = std::variant<SubClassOf, EquivalentClasses, DisjointClasses, ObjectPropertyDomain,
                           ObjectPropertyRange, DataPropertyDomain, DataPropertyRange, Label>;

/// Normal form used for structural-identity checks: boolean operands sorted,
/// equivalence sides ordered, disjoint members sorted.
Axiom canonical(const Axiom& axiom);

bool structurally_identical(const Axiom& a, const Axiom& b);

std::string to_string(const Axiom& axiom);

}  // namespace axiom_align
