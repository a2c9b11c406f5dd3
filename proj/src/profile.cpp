#include "profile.hpp"

#include <algorithm>
#include <functional>

#include "axiom_align/error.hpp"

namespace axiom_align::detail {

std::string name_key(const Iri& iri) { return normalize_term(iri.fragment()).joined("-"); }

OntologyProfile::OntologyProfile(const Ontology& o) : ontology_(&o) {
  auto add_entity = [&](const Iri& e) {
    EntityTerms t;
    t.name = normalize_term(e.fragment());
    for (const auto& label : o.labels(e)) {
      auto tokens = normalize_term(label);
      if (!tokens.empty()) t.labels.push_back(std::move(tokens));
    }
    keys_.emplace(e, t.name.joined("-"));
    terms_.emplace(e, std::move(t));
  };
  for (const auto& c : o.classes()) add_entity(c);
  for (const auto& p : o.object_properties()) add_entity(p);
  for (const auto& p : o.data_properties()) add_entity(p);

  for (const auto& c : o.classes()) {
    auto inherited = inherited_axioms(o, c);
    for (const auto& ce : inherited) remember_keys(ce);
    inherited_.emplace(c, std::vector<ClassExpression>(inherited.begin(), inherited.end()));
  }
  for (const auto& p : o.object_properties()) {
    for (const auto& ce : o.property_domains(p)) remember_keys(ce);
    for (const auto& ce : o.object_property_ranges(p)) remember_keys(ce);
  }
  for (const auto& p : o.data_properties()) {
    for (const auto& ce : o.property_domains(p)) remember_keys(ce);
    for (const auto& dt : o.data_property_ranges(p)) keys_.try_emplace(dt, name_key(dt));
  }
}

void OntologyProfile::remember_keys(const ClassExpression& ce) {
  switch (ce.kind()) {
    case ClassExpression::Kind::DataSome:
      keys_.try_emplace(ce.datatype(), name_key(ce.datatype()));
      [[fallthrough]];
    case ClassExpression::Kind::Named:
    case ClassExpression::Kind::ObjectSome:
    case ClassExpression::Kind::ObjectAll:
      keys_.try_emplace(ce.iri(), name_key(ce.iri()));
      break;
    default:
      break;
  }
  for (const auto& op : ce.operands()) remember_keys(op);
}

const EntityTerms& OntologyProfile::terms(const Iri& entity) const {
  auto it = terms_.find(entity);
  if (it == terms_.end()) throw UnknownEntityError(entity.full());
  return it->second;
}

const std::vector<ClassExpression>& OntologyProfile::inherited(const Iri& cls) const {
  auto it = inherited_.find(cls);
  if (it == inherited_.end()) throw UnknownEntityError(cls.full());
  return it->second;
}

std::string OntologyProfile::key(const Iri& iri) const {
  auto it = keys_.find(iri);
  return it == keys_.end() ? name_key(iri) : it->second;
}

BaseSimilarity base_similarity(const EntityTerms& a, const EntityTerms& b, const Lexicon& lexicon) {
  BaseSimilarity s;
  // An entity whose local name normalizes to nothing carries no lexical
  // evidence; two such names must not score as identical.
  s.uri = a.name.empty() || b.name.empty() ? 0.0 : sim_string(a.name, b.name);
  s.syn = synonyms(lexicon, a.name, b.name);
  for (const auto& la : a.labels) {
    for (const auto& lb : b.labels) {
      s.lab = std::max(s.lab, sim_string(la, lb));
      if (!s.syn && synonyms(lexicon, la, lb)) s.syn = true;
    }
  }
  return s;
}

namespace {

// Kuhn's augmenting-path matching on a dense adjacency matrix.
std::size_t maximum_matching(const std::vector<std::vector<bool>>& adj, std::size_t right) {
  std::vector<int> owner(right, -1);
  std::size_t matched = 0;
  for (std::size_t u = 0; u < adj.size(); ++u) {
    std::vector<bool> seen(right, false);
    std::function<bool(std::size_t)> augment = [&](std::size_t x) {
      for (std::size_t v = 0; v < right; ++v) {
        if (!adj[x][v] || seen[v]) continue;
        seen[v] = true;
        if (owner[v] < 0 || augment(static_cast<std::size_t>(owner[v]))) {
          owner[v] = static_cast<int>(x);
          return true;
        }
      }
      return false;
    };
    if (augment(u)) ++matched;
  }
  return matched;
}

class ExpressionMatcher {
 public:
  ExpressionMatcher(const OntologyProfile& p1, const OntologyProfile& p2, const MatchContext& ctx)
      : p1_(p1), p2_(p2), ctx_(ctx) {}

  bool names(const Iri& a, const Iri& b) const {
    if (ctx_.mapped(a, b)) return true;
    std::string ka = p1_.key(a);
    return !ka.empty() && ka == p2_.key(b);
  }

  bool operator()(const ClassExpression& x, const ClassExpression& y) const {
    using K = ClassExpression::Kind;
    if (x.kind() != y.kind()) return false;
    switch (x.kind()) {
      case K::Named:
        return names(x.iri(), y.iri());
      case K::ObjectSome:
      case K::ObjectAll:
        return names(x.iri(), y.iri()) && (*this)(x.filler(), y.filler());
      case K::DataSome:
        return names(x.iri(), y.iri()) && names(x.datatype(), y.datatype());
      case K::Complement:
        return (*this)(x.operands()[0], y.operands()[0]);
      case K::Union:
      case K::Intersection: {
        auto xs = x.operands(), ys = y.operands();
        if (xs.size() != ys.size()) return false;
        return match_count(xs, ys) == xs.size();
      }
    }
    return false;
  }

  std::size_t match_count(std::span<const ClassExpression> xs,
                          std::span<const ClassExpression> ys) const {
    std::vector<std::vector<bool>> adj(xs.size(), std::vector<bool>(ys.size()));
    for (std::size_t i = 0; i < xs.size(); ++i) {
      for (std::size_t j = 0; j < ys.size(); ++j) adj[i][j] = (*this)(xs[i], ys[j]);
    }
    return maximum_matching(adj, ys.size());
  }

 private:
  const OntologyProfile& p1_;
  const OntologyProfile& p2_;
  const MatchContext& ctx_;
};

double slot_match(bool either_undeclared, bool any_match) {
  if (either_undeclared) return 0.5;
  return any_match ? 1.0 : 0.0;
}

}  // namespace

double axiomatic_similarity(const OntologyProfile& p1, const OntologyProfile& p2, const Iri& c1,
                            const Iri& c2, const MatchContext& context) {
  const auto& a1 = p1.inherited(c1);
  const auto& a2 = p2.inherited(c2);
  std::size_t larger = std::max(a1.size(), a2.size());
  if (larger == 0) return 0.0;
  ExpressionMatcher match(p1, p2, context);
  return static_cast<double>(match.match_count(a1, a2)) / static_cast<double>(larger);
}

double property_similarity(const OntologyProfile& p1, const OntologyProfile& p2, const Iri& e1,
                           const Iri& e2, const MatchContext& context, const Lexicon& lexicon,
                           const MatcherConfig& config) {
  const Ontology& o1 = p1.ontology();
  const Ontology& o2 = p2.ontology();
  double base = base_similarity(p1.terms(e1), p2.terms(e2), lexicon).base(config.synonym_confidence);
  ExpressionMatcher match(p1, p2, context);

  auto any_pair = [&](const auto& xs, const auto& ys, auto&& eq) {
    for (const auto& x : xs) {
      for (const auto& y : ys) {
        if (eq(x, y)) return true;
      }
    }
    return false;
  };

  const auto& d1 = o1.property_domains(e1);
  const auto& d2 = o2.property_domains(e2);
  double domain = slot_match(d1.empty() || d2.empty(), any_pair(d1, d2, match));

  double range = 0.0;
  if (o1.kind_of(e1) == EntityKind::ObjectProperty) {
    const auto& r1 = o1.object_property_ranges(e1);
    const auto& r2 = o2.object_property_ranges(e2);
    range = slot_match(r1.empty() || r2.empty(), any_pair(r1, r2, match));
  } else {
    const auto& r1 = o1.data_property_ranges(e1);
    const auto& r2 = o2.data_property_ranges(e2);
    range = slot_match(r1.empty() || r2.empty(),
                       any_pair(r1, r2, [&](const Iri& a, const Iri& b) { return match.names(a, b); }));
  }
  return 0.6 * base + 0.2 * domain + 0.2 * range;
}

double boost(const Ontology& o1, const Ontology& o2, const Iri& c1, const Iri& c2,
             const MatchContext& context, const MatcherConfig& config) {
  for (const auto& s1 : o1.direct_superclasses(c1)) {
    for (const auto& s2 : o2.direct_superclasses(c2)) {
      if (context.mapped(s1, s2)) return config.boost;
    }
  }
  return 0.0;
}

}  // namespace axiom_align::detail
