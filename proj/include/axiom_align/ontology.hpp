#pragma once

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "axiom_align/axiom.hpp"
#include "axiom_align/iri.hpp"

namespace axiom_align {

namespace detail {
struct OntologyIndex;
}

/// Immutable snapshot of an ontology. The constructor checks the model
/// invariants (every referenced entity declared with a matching kind, entity
/// kinds pairwise disjoint, well-formed disjointness axioms) and builds the
/// lookup index the closure operations use. All member functions are const
/// and safe to call concurrently.
class Ontology {
 public:
  Ontology(Iri iri, std::set<Iri> classes, std::set<Iri> object_properties,
           std::set<Iri> data_properties, std::vector<Axiom> axioms);

  const Iri& iri() const noexcept { return iri_; }
  const std::set<Iri>& classes() const noexcept { return classes_; }
  const std::set<Iri>& object_properties() const noexcept { return object_properties_; }
  const std::set<Iri>& data_properties() const noexcept { return data_properties_; }
  const std::vector<Axiom>& axioms() const noexcept { return axioms_; }

  std::optional<EntityKind> kind_of(const Iri& entity) const;
  bool declares(const Iri& entity) const { return kind_of(entity).has_value(); }
  bool is_class(const Iri& entity) const { return classes_.contains(entity); }
  std::size_t entity_count() const noexcept;

  /// Named superclasses one SubClassOf/EquivalentClasses edge away.
  const std::vector<Iri>& direct_superclasses(const Iri& cls) const;
  const std::vector<Iri>& direct_subclasses(const Iri& cls) const;
  const std::vector<std::string>& labels(const Iri& entity) const;
  /// Member lists of every DisjointClasses axiom, in axiom order.
  const std::vector<std::vector<Iri>>& disjoint_axioms() const;
  /// Non-named superclass expressions asserted directly on the class.
  const std::vector<ClassExpression>& direct_restrictions(const Iri& cls) const;
  const std::vector<ClassExpression>& property_domains(const Iri& property) const;
  /// Object-property ranges as class expressions; data-property ranges are
  /// returned by data_property_ranges.
  const std::vector<ClassExpression>& object_property_ranges(const Iri& property) const;
  const std::vector<Iri>& data_property_ranges(const Iri& property) const;

  /// Same IRI, entity sets and axiom sequence.
  friend bool operator==(const Ontology& a, const Ontology& b);

 private:
  Iri iri_;
  std::set<Iri> classes_;
  std::set<Iri> object_properties_;
  std::set<Iri> data_properties_;
  std::vector<Axiom> axioms_;
  std::shared_ptr<const detail::OntologyIndex> index_;
};

/// Same IRI and entity sets, axioms equal as multisets after canonicalization.
bool structurally_equal(const Ontology& a, const Ontology& b);

/// Namespace used for `:` references and fresh IRIs: the ontology IRI plus
/// '#', unless the IRI already ends with '#' or '/'.
std::string default_namespace(const Iri& ontology_iri);

/// Unordered pair of classes, stored with first < second.
struct ClassPair {
  Iri first;
  Iri second;
  static ClassPair of(Iri a, Iri b);
  auto operator<=>(const ClassPair&) const = default;
};

/// Transitive, non-reflexive named superclasses of `cls`.
std::set<Iri> superclass_closure(const Ontology& o, const Iri& cls);

/// Every pair {x, y} whose ancestors-or-self contain two distinct members of
/// one DisjointClasses axiom.
std::set<ClassPair> disjoint_pairs_closure(const Ontology& o);

bool is_unsatisfiable_structural(const Ontology& o, const Iri& cls);

/// Restriction and boolean superclass expressions asserted on `cls` or any of
/// its ancestors. Bare named superclasses are excluded.
std::set<ClassExpression> inherited_axioms(const Ontology& o, const Iri& cls);

}  // namespace axiom_align
