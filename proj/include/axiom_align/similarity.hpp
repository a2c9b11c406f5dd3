#pragma once

#include <optional>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "axiom_align/alignment.hpp"
#include "axiom_align/ontology.hpp"
#include "axiom_align/text.hpp"

namespace axiom_align {

struct MatcherConfig {
  double w_base = 0.7;
  double w_axm = 0.3;
  double boost = 0.10;               // inheritance boost δ
  double synonym_confidence = 0.95;  // s_syn
  double threshold = 0.80;           // τ
  double partition_threshold = 0.6;  // root similarity needed to pair partitions
  bool partitioning = true;
  unsigned threads = 0;  // 0: one per hardware thread

  /// Throws ConfigError unless w_base + w_axm = 1, τ ∈ (0,1], δ ∈ [0,0.5]
  /// and the remaining values lie in [0,1].
  void validate() const;
};

/// Comparisons against τ allow for rounding in sums such as 0.7 + 0.1.
inline constexpr double kThresholdSlack = 1e-9;

inline bool meets_threshold(double confidence, double threshold) {
  return confidence >= threshold - kThresholdSlack;
}

struct BaseSimilarity {
  double uri = 0.0;
  double lab = 0.0;
  bool syn = false;

  /// max(sim_uri, sim_lab, s_syn·sim_syn)
  double base(double synonym_confidence) const;
  bool operator==(const BaseSimilarity&) const = default;
};

struct SimilarityVector {
  double sim_uri = 0.0;
  double sim_lab = 0.0;
  bool sim_syn = false;
  double sim_axm = 0.0;
  double inherit_boost = 0.0;
};

/// Partial class/property alignment consulted by the "mapped" tests.
class MatchContext {
 public:
  MatchContext() = default;
  explicit MatchContext(const Alignment& alignment);

  void add(const Iri& source, const Iri& target);
  bool mapped(const Iri& source, const Iri& target) const;
  /// Targets `source` is mapped to, empty if none.
  const std::vector<Iri>& targets(const Iri& source) const;
  std::size_t size() const noexcept { return size_; }

 private:
  std::unordered_map<Iri, std::vector<Iri>> forward_;
  std::size_t size_ = 0;
};

std::size_t edit_distance(std::string_view a, std::string_view b);

/// max(normalized Levenshtein over the hyphen-joined tokens, token-set
/// Jaccard). Two empty terms score 1.
double sim_string(const TermTokens& a, const TermTokens& b);

/// Throws UnknownEntityError if either entity is undeclared and ModelError if
/// their kinds differ.
BaseSimilarity base_concept_similarity(const Iri& e1, const Iri& e2, const Ontology& o1,
                                       const Ontology& o2, const Lexicon& lexicon);

/// Maximum bipartite matching between the inherited restriction sets,
/// divided by the larger set size. 0 when both sets are empty.
double sim_axiomatic(const Iri& c1, const Iri& c2, const Ontology& o1, const Ontology& o2,
                     const MatchContext& context);

/// 0.6·base + 0.2·domain_match + 0.2·range_match. Throws ModelError if the
/// two properties are of different kinds or not properties at all.
double sim_property(const Iri& p1, const Iri& p2, const Ontology& o1, const Ontology& o2,
                    const MatchContext& context, const Lexicon& lexicon,
                    const MatcherConfig& config = {});

/// δ when a direct superclass of c1 is mapped in `context` to a direct
/// superclass of c2, else 0.
double inheritance_boost(const Iri& c1, const Iri& c2, const Ontology& o1, const Ontology& o2,
                         const MatchContext& context, const MatcherConfig& config = {});

double aggregate(const SimilarityVector& v, const MatcherConfig& config = {});

struct Candidate {
  Iri source;
  Iri target;
  double confidence = 0.0;
  std::optional<EntityKind> kind;
};

/// Greedy 1:1 selection by descending confidence, ties on (source, target)
/// ascending; candidates below `threshold` are dropped. Output is in
/// selection order.
Alignment extract_one_to_one(std::vector<Candidate> candidates, double threshold);

}  // namespace axiom_align
