#include "axiom_align/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "axiom_align/error.hpp"
#include "profile.hpp"

namespace axiom_align {

void MatcherConfig::validate() const {
  auto unit = [](double v) { return v >= 0.0 && v <= 1.0; };
  if (!unit(w_base) || !unit(w_axm) || std::abs(w_base + w_axm - 1.0) > 1e-9) {
    throw ConfigError("weights must be in [0,1] and sum to 1 (got " + std::to_string(w_base) +
                      "," + std::to_string(w_axm) + ")");
  }
  if (!(threshold > 0.0 && threshold <= 1.0)) {
    throw ConfigError("threshold must be in (0,1]");
  }
  if (!(boost >= 0.0 && boost <= 0.5)) throw ConfigError("boost must be in [0,0.5]");
  if (!unit(synonym_confidence)) throw ConfigError("synonym confidence must be in [0,1]");
  if (!unit(partition_threshold)) throw ConfigError("partition threshold must be in [0,1]");
}

double BaseSimilarity::base(double synonym_confidence) const {
  return std::max({uri, lab, syn ? synonym_confidence : 0.0});
}

MatchContext::MatchContext(const Alignment& alignment) {
  for (const auto& c : alignment) add(c.source, c.target);
}

void MatchContext::add(const Iri& source, const Iri& target) {
  auto& targets = forward_[source];
  if (std::find(targets.begin(), targets.end(), target) != targets.end()) return;
  targets.push_back(target);
  ++size_;
}

bool MatchContext::mapped(const Iri& source, const Iri& target) const {
  auto it = forward_.find(source);
  if (it == forward_.end()) return false;
  return std::find(it->second.begin(), it->second.end(), target) != it->second.end();
}

const std::vector<Iri>& MatchContext::targets(const Iri& source) const {
  static const std::vector<Iri> none;
  auto it = forward_.find(source);
  return it == forward_.end() ? none : it->second;
}

std::size_t edit_distance(std::string_view a, std::string_view b) {
  if (a.size() < b.size()) std::swap(a, b);
  std::vector<std::size_t> row(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      std::size_t up = row[j];
      std::size_t sub = diag + (a[i - 1] == b[j - 1] ? 0 : 1);
      row[j] = std::min({up + 1, row[j - 1] + 1, sub});
      diag = up;
    }
  }
  return row[b.size()];
}

double sim_string(const TermTokens& a, const TermTokens& b) {
  if (a.empty() && b.empty()) return 1.0;
  std::string ja = a.joined("-"), jb = b.joined("-");
  std::size_t longest = std::max(ja.size(), jb.size());
  double lev = longest == 0 ? 1.0
                            : 1.0 - static_cast<double>(edit_distance(ja, jb)) /
                                        static_cast<double>(longest);

  std::set<std::string> sa(a.tokens.begin(), a.tokens.end());
  std::set<std::string> sb(b.tokens.begin(), b.tokens.end());
  std::size_t common = 0;
  for (const auto& t : sa) common += sb.count(t);
  std::size_t all = sa.size() + sb.size() - common;
  double jaccard = all == 0 ? 1.0 : static_cast<double>(common) / static_cast<double>(all);
  return std::max(lev, jaccard);
}

namespace {

void require_same_kind(const Ontology& o1, const Ontology& o2, const Iri& e1, const Iri& e2) {
  auto k1 = o1.kind_of(e1);
  if (!k1) throw UnknownEntityError(e1.full());
  auto k2 = o2.kind_of(e2);
  if (!k2) throw UnknownEntityError(e2.full());
  if (*k1 != *k2) {
    throw ModelError("cannot compare " + std::string(to_string(*k1)) + " " + e1.full() +
                     " with " + std::string(to_string(*k2)) + " " + e2.full());
  }
}

}  // namespace

BaseSimilarity base_concept_similarity(const Iri& e1, const Iri& e2, const Ontology& o1,
                                       const Ontology& o2, const Lexicon& lexicon) {
  require_same_kind(o1, o2, e1, e2);
  detail::OntologyProfile p1(o1), p2(o2);
  return detail::base_similarity(p1.terms(e1), p2.terms(e2), lexicon);
}

double sim_axiomatic(const Iri& c1, const Iri& c2, const Ontology& o1, const Ontology& o2,
                     const MatchContext& context) {
  if (!o1.is_class(c1)) throw UnknownEntityError(c1.full());
  if (!o2.is_class(c2)) throw UnknownEntityError(c2.full());
  detail::OntologyProfile p1(o1), p2(o2);
  return detail::axiomatic_similarity(p1, p2, c1, c2, context);
}

double sim_property(const Iri& p1, const Iri& p2, const Ontology& o1, const Ontology& o2,
                    const MatchContext& context, const Lexicon& lexicon,
                    const MatcherConfig& config) {
  require_same_kind(o1, o2, p1, p2);
  if (o1.is_class(p1)) throw ModelError(p1.full() + " is a class, not a property");
  detail::OntologyProfile f1(o1), f2(o2);
  return detail::property_similarity(f1, f2, p1, p2, context, lexicon, config);
}

double inheritance_boost(const Iri& c1, const Iri& c2, const Ontology& o1, const Ontology& o2,
                         const MatchContext& context, const MatcherConfig& config) {
  if (!o1.is_class(c1)) throw UnknownEntityError(c1.full());
  if (!o2.is_class(c2)) throw UnknownEntityError(c2.full());
  return detail::boost(o1, o2, c1, c2, context, config);
}

double aggregate(const SimilarityVector& v, const MatcherConfig& config) {
  double base = std::max({v.sim_uri, v.sim_lab, v.sim_syn ? config.synonym_confidence : 0.0});
  return std::min(1.0, config.w_base * base + config.w_axm * v.sim_axm + v.inherit_boost);
}

Alignment extract_one_to_one(std::vector<Candidate> candidates, double threshold) {
  std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
    if (a.confidence != b.confidence) return a.confidence > b.confidence;
    if (a.source != b.source) return a.source < b.source;
    return a.target < b.target;
  });
  Alignment out;
  std::set<Iri> used_sources, used_targets;
  for (auto& c : candidates) {
    if (!meets_threshold(c.confidence, threshold)) break;
    if (used_sources.contains(c.source) || used_targets.contains(c.target)) continue;
    used_sources.insert(c.source);
    used_targets.insert(c.target);
    out.push_back(Correspondence{std::move(c.source), std::move(c.target), Relation::Equivalence,
                                 std::min(1.0, c.confidence), c.kind});
  }
  return out;
}

}  // namespace axiom_align
