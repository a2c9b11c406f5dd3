#include "axiom_align/axiom.hpp"

#include <algorithm>

#include "overloaded.hpp"

namespace axiom_align {

namespace {

using detail::Overloaded;

std::string bracket(const Iri& iri) { return "<" + iri.full() + ">"; }

std::string quote(const std::string& text) {
  std::string out = "\"";
  for (char ch : text) {
    if (ch == '"' || ch == '\\') out += '\\';
    out += ch;
  }
  out += '"';
  return out;
}

}  // namespace

Axiom canonical(const Axiom& axiom) {
  return std::visit(
      Overloaded{
          [](const SubClassOf& a) -> Axiom {
            return SubClassOf{a.sub.canonical(), a.sup.canonical()};
          },
          [](const EquivalentClasses& a) -> Axiom {
            auto x = a.first.canonical();
            auto y = a.second.canonical();
            if (y < x) std::swap(x, y);
            return EquivalentClasses{std::move(x), std::move(y)};
          },
          [](const DisjointClasses& a) -> Axiom {
            auto members = a.members;
            std::sort(members.begin(), members.end());
            return DisjointClasses{std::move(members)};
          },
          [](const ObjectPropertyDomain& a) -> Axiom {
            return ObjectPropertyDomain{a.property, a.domain.canonical()};
          },
          [](const ObjectPropertyRange& a) -> Axiom {
            return ObjectPropertyRange{a.property, a.range.canonical()};
          },
          [](const DataPropertyDomain& a) -> Axiom {
            return DataPropertyDomain{a.property, a.domain.canonical()};
          },
          [](const DataPropertyRange& a) -> Axiom { return a; },
          [](const Label& a) -> Axiom { return a; },
      },
      axiom);
}

bool structurally_identical(const Axiom& a, const Axiom& b) {
  return canonical(a) == canonical(b);
}

std::string to_string(const Axiom& axiom) {
  return std::visit(
      Overloaded{
          [](const SubClassOf& a) {
            return "SubClassOf(" + to_string(a.sub) + " " + to_string(a.sup) + ")";
          },
          [](const EquivalentClasses& a) {
            return "EquivalentClasses(" + to_string(a.first) + " " + to_string(a.second) + ")";
          },
          [](const DisjointClasses& a) {
            std::string out = "DisjointClasses(";
            for (std::size_t i = 0; i < a.members.size(); ++i) {
              if (i) out += ' ';
              out += bracket(a.members[i]);
            }
            return out + ")";
          },
          [](const ObjectPropertyDomain& a) {
            return "ObjectPropertyDomain(" + bracket(a.property) + " " + to_string(a.domain) + ")";
          },
          [](const ObjectPropertyRange& a) {
            return "ObjectPropertyRange(" + bracket(a.property) + " " + to_string(a.range) + ")";
          },
          [](const DataPropertyDomain& a) {
            return "DataPropertyDomain(" + bracket(a.property) + " " + to_string(a.domain) + ")";
          },
          [](const DataPropertyRange& a) {
            return "DataPropertyRange(" + bracket(a.property) + " " + bracket(a.datatype) + ")";
          },
          [](const Label& a) {
            return "AnnotationAssertion(rdfs:label " + bracket(a.subject) + " " + quote(a.text) +
                   ")";
          },
      },
      axiom);
}

}  // namespace axiom_align
