#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "axiom_align/ontology.hpp"
#include "axiom_align/similarity.hpp"
#include "axiom_align/text.hpp"

namespace axiom_align::detail {

struct EntityTerms {
  TermTokens name;
  std::vector<TermTokens> labels;  // empty token lists are dropped
};

/// Lemma key of an IRI's local name; empty when nothing normalizable is left.
std::string name_key(const Iri& iri);

/// Everything the similarity functions read from one ontology, precomputed
/// once so that concurrent workers only perform lookups.
class OntologyProfile {
 public:
  explicit OntologyProfile(const Ontology& o);

  const Ontology& ontology() const noexcept { return *ontology_; }
  /// Throws UnknownEntityError.
  const EntityTerms& terms(const Iri& entity) const;
  const std::vector<ClassExpression>& inherited(const Iri& cls) const;
  std::string key(const Iri& iri) const;

 private:
  void remember_keys(const ClassExpression& ce);

  const Ontology* ontology_;
  std::unordered_map<Iri, EntityTerms> terms_;
  std::unordered_map<Iri, std::vector<ClassExpression>> inherited_;
  std::unordered_map<Iri, std::string> keys_;
};

BaseSimilarity base_similarity(const EntityTerms& a, const EntityTerms& b, const Lexicon& lexicon);

double axiomatic_similarity(const OntologyProfile& p1, const OntologyProfile& p2, const Iri& c1,
                            const Iri& c2, const MatchContext& context);

double property_similarity(const OntologyProfile& p1, const OntologyProfile& p2, const Iri& e1,
                           const Iri& e2, const MatchContext& context, const Lexicon& lexicon,
                           const MatcherConfig& config);

double boost(const Ontology& o1, const Ontology& o2, const Iri& c1, const Iri& c2,
             const MatchContext& context, const MatcherConfig& config);

}  // namespace axiom_align::detail
