#include "axiom_align/ontology.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <unordered_map>

#include "axiom_align/error.hpp"
#include "overloaded.hpp"

namespace axiom_align {

namespace detail {

struct OntologyIndex {
  std::unordered_map<Iri, EntityKind> kinds;
  std::unordered_map<Iri, std::vector<Iri>> direct_supers;
  std::unordered_map<Iri, std::vector<Iri>> direct_subs;
  std::unordered_map<Iri, std::vector<std::string>> labels;
  std::unordered_map<Iri, std::vector<ClassExpression>> restrictions;
  std::unordered_map<Iri, std::vector<ClassExpression>> domains;
  std::unordered_map<Iri, std::vector<ClassExpression>> object_ranges;
  std::unordered_map<Iri, std::vector<Iri>> data_ranges;
  std::vector<std::vector<Iri>> disjoint;
};

}  // namespace detail

namespace {

using detail::Overloaded;

template <class T>
const std::vector<T>& lookup(const std::unordered_map<Iri, std::vector<T>>& map, const Iri& key) {
  static const std::vector<T> empty;
  auto it = map.find(key);
  return it == map.end() ? empty : it->second;
}

template <class T>
void push_unique(std::vector<T>& items, T value) {
  if (std::find(items.begin(), items.end(), value) == items.end()) items.push_back(std::move(value));
}

class ReferenceChecker {
 public:
  explicit ReferenceChecker(const detail::OntologyIndex& index) : index_(index) {}

  void expect(const Iri& iri, EntityKind kind) const {
    auto it = index_.kinds.find(iri);
    if (it == index_.kinds.end()) {
      throw ModelError("axiom references undeclared entity " + iri.full());
    }
    if (it->second != kind) {
      throw ModelError(iri.full() + " is declared as " + std::string(to_string(it->second)) +
                       " but used as " + std::string(to_string(kind)));
    }
  }

  void expression(const ClassExpression& ce) const {
    using K = ClassExpression::Kind;
    switch (ce.kind()) {
      case K::Named: expect(ce.iri(), EntityKind::Class); break;
      case K::ObjectSome:
      case K::ObjectAll: expect(ce.iri(), EntityKind::ObjectProperty); break;
      case K::DataSome: expect(ce.iri(), EntityKind::DataProperty); break;
      default: break;
    }
    for (const auto& op : ce.operands()) expression(op);
  }

 private:
  const detail::OntologyIndex& index_;
};

}  // namespace

Ontology::Ontology(Iri iri, std::set<Iri> classes, std::set<Iri> object_properties,
                   std::set<Iri> data_properties, std::vector<Axiom> axioms)
    : iri_(std::move(iri)), classes_(std::move(classes)),
      object_properties_(std::move(object_properties)),
      data_properties_(std::move(data_properties)), axioms_(std::move(axioms)) {
  auto index = std::make_shared<detail::OntologyIndex>();
  auto declare = [&](const std::set<Iri>& entities, EntityKind kind) {
    for (const auto& e : entities) {
      auto [it, inserted] = index->kinds.emplace(e, kind);
      if (!inserted) {
        throw ModelError(e.full() + " is declared both as " + std::string(to_string(it->second)) +
                         " and as " + std::string(to_string(kind)));
      }
    }
  };
  declare(classes_, EntityKind::Class);
  declare(object_properties_, EntityKind::ObjectProperty);
  declare(data_properties_, EntityKind::DataProperty);

  ReferenceChecker check(*index);
  auto add_edge = [&](const Iri& sub, const Iri& sup) {
    if (sub == sup) return;
    push_unique(index->direct_supers[sub], sup);
    push_unique(index->direct_subs[sup], sub);
  };

  for (const auto& axiom : axioms_) {
    std::visit(
        Overloaded{
            [&](const SubClassOf& a) {
              check.expression(a.sub);
              check.expression(a.sup);
              if (!a.sub.is_named()) return;
              if (a.sup.is_named()) {
                add_edge(a.sub.iri(), a.sup.iri());
              } else {
                push_unique(index->restrictions[a.sub.iri()], a.sup);
              }
            },
            [&](const EquivalentClasses& a) {
              check.expression(a.first);
              check.expression(a.second);
              if (a.first.is_named() && a.second.is_named()) {
                add_edge(a.first.iri(), a.second.iri());
                add_edge(a.second.iri(), a.first.iri());
              } else if (a.first.is_named()) {
                push_unique(index->restrictions[a.first.iri()], a.second);
              } else if (a.second.is_named()) {
                push_unique(index->restrictions[a.second.iri()], a.first);
              }
            },
            [&](const DisjointClasses& a) {
              if (a.members.size() < 2) {
                throw ModelError("DisjointClasses needs at least two members");
              }
              std::set<Iri> seen;
              for (const auto& m : a.members) {
                check.expect(m, EntityKind::Class);
                if (!seen.insert(m).second) {
                  throw ModelError("DisjointClasses lists " + m.full() + " twice");
                }
              }
              index->disjoint.push_back(a.members);
            },
            [&](const ObjectPropertyDomain& a) {
              check.expect(a.property, EntityKind::ObjectProperty);
              check.expression(a.domain);
              push_unique(index->domains[a.property], a.domain);
            },
            [&](const ObjectPropertyRange& a) {
              check.expect(a.property, EntityKind::ObjectProperty);
              check.expression(a.range);
              push_unique(index->object_ranges[a.property], a.range);
            },
            [&](const DataPropertyDomain& a) {
              check.expect(a.property, EntityKind::DataProperty);
              check.expression(a.domain);
              push_unique(index->domains[a.property], a.domain);
            },
            [&](const DataPropertyRange& a) {
              check.expect(a.property, EntityKind::DataProperty);
              push_unique(index->data_ranges[a.property], a.datatype);
            },
            [&](const Label& a) {
              if (!index->kinds.contains(a.subject)) {
                throw ModelError("label on undeclared entity " + a.subject.full());
              }
              push_unique(index->labels[a.subject], a.text);
            },
        },
        axiom);
  }
  for (auto& [_, supers] : index->direct_supers) std::sort(supers.begin(), supers.end());
  for (auto& [_, subs] : index->direct_subs) std::sort(subs.begin(), subs.end());
  index_ = std::move(index);
}

std::optional<EntityKind> Ontology::kind_of(const Iri& entity) const {
  auto it = index_->kinds.find(entity);
  if (it == index_->kinds.end()) return std::nullopt;
  return it->second;
}

std::size_t Ontology::entity_count() const noexcept {
  return classes_.size() + object_properties_.size() + data_properties_.size();
}

const std::vector<Iri>& Ontology::direct_subclasses(const Iri& cls) const {
  return lookup(index_->direct_subs, cls);
}

const std::vector<Iri>& Ontology::direct_superclasses(const Iri& cls) const {
  return lookup(index_->direct_supers, cls);
}

const std::vector<std::string>& Ontology::labels(const Iri& entity) const {
  return lookup(index_->labels, entity);
}

const std::vector<std::vector<Iri>>& Ontology::disjoint_axioms() const { return index_->disjoint; }

const std::vector<ClassExpression>& Ontology::direct_restrictions(const Iri& cls) const {
  return lookup(index_->restrictions, cls);
}

const std::vector<ClassExpression>& Ontology::property_domains(const Iri& property) const {
  return lookup(index_->domains, property);
}

const std::vector<ClassExpression>& Ontology::object_property_ranges(const Iri& property) const {
  return lookup(index_->object_ranges, property);
}

const std::vector<Iri>& Ontology::data_property_ranges(const Iri& property) const {
  return lookup(index_->data_ranges, property);
}

bool operator==(const Ontology& a, const Ontology& b) {
  return a.iri_ == b.iri_ && a.classes_ == b.classes_ &&
         a.object_properties_ == b.object_properties_ &&
         a.data_properties_ == b.data_properties_ && a.axioms_ == b.axioms_;
}

bool structurally_equal(const Ontology& a, const Ontology& b) {
  if (a.iri() != b.iri() || a.classes() != b.classes() ||
      a.object_properties() != b.object_properties() ||
      a.data_properties() != b.data_properties() || a.axioms().size() != b.axioms().size()) {
    return false;
  }
  auto sorted = [](const Ontology& o) {
    std::vector<Axiom> out;
    out.reserve(o.axioms().size());
    for (const auto& ax : o.axioms()) out.push_back(canonical(ax));
    std::sort(out.begin(), out.end());
    return out;
  };
  return sorted(a) == sorted(b);
}

std::string default_namespace(const Iri& ontology_iri) {
  const auto& full = ontology_iri.full();
  if (full.back() == '#' || full.back() == '/') return full;
  return full + "#";
}

ClassPair ClassPair::of(Iri a, Iri b) {
  if (b < a) std::swap(a, b);
  return ClassPair{std::move(a), std::move(b)};
}

std::set<Iri> superclass_closure(const Ontology& o, const Iri& cls) {
  if (!o.is_class(cls)) throw UnknownEntityError(cls.full());
  std::set<Iri> seen;
  std::deque<const Iri*> queue{&cls};
  while (!queue.empty()) {
    const Iri* current = queue.front();
    queue.pop_front();
    for (const auto& sup : o.direct_superclasses(*current)) {
      if (seen.insert(sup).second) queue.push_back(&sup);
    }
  }
  seen.erase(cls);
  return seen;
}

namespace {

std::set<Iri> descendants_or_self(const Ontology& o, const Iri& cls) {
  std::set<Iri> seen{cls};
  std::deque<const Iri*> queue{&cls};
  while (!queue.empty()) {
    const Iri* current = queue.front();
    queue.pop_front();
    for (const auto& sub : o.direct_subclasses(*current)) {
      if (seen.insert(sub).second) queue.push_back(&sub);
    }
  }
  return seen;
}

}  // namespace

std::set<ClassPair> disjoint_pairs_closure(const Ontology& o) {
  std::set<ClassPair> pairs;
  if (o.disjoint_axioms().empty()) return pairs;
  std::map<Iri, std::set<Iri>> below;
  for (const auto& members : o.disjoint_axioms()) {
    for (const auto& m : members) {
      if (!below.contains(m)) below.emplace(m, descendants_or_self(o, m));
    }
  }
  for (const auto& members : o.disjoint_axioms()) {
    for (std::size_t i = 0; i < members.size(); ++i) {
      for (std::size_t j = i + 1; j < members.size(); ++j) {
        for (const auto& x : below.at(members[i])) {
          for (const auto& y : below.at(members[j])) {
            if (x != y) pairs.insert(ClassPair::of(x, y));
          }
        }
      }
    }
  }
  return pairs;
}

bool is_unsatisfiable_structural(const Ontology& o, const Iri& cls) {
  auto scope = superclass_closure(o, cls);
  scope.insert(cls);
  // Two distinct members of one axiom among the ancestors-or-self is exactly
  // the existence of a closure pair inside that set.
  for (const auto& members : o.disjoint_axioms()) {
    auto hits = std::count_if(members.begin(), members.end(),
                              [&](const Iri& m) { return scope.contains(m); });
    if (hits >= 2) return true;
  }
  return false;
}

std::set<ClassExpression> inherited_axioms(const Ontology& o, const Iri& cls) {
  auto scope = superclass_closure(o, cls);
  scope.insert(cls);
  std::set<ClassExpression> out;
  for (const auto& c : scope) {
    for (const auto& ce : o.direct_restrictions(c)) out.insert(ce);
  }
  return out;
}

}  // namespace axiom_align
