#pragma once

#include "axiom_align/alignment.hpp"
#include "axiom_align/ontology.hpp"
#include "axiom_align/partition.hpp"
#include "axiom_align/similarity.hpp"
#include "axiom_align/text.hpp"

namespace axiom_align {

struct MatchResult {
  Alignment alignment;  // one-to-one, in extraction order
  /// The comparison plan with executed_count including fallback work.
  ComparisonPlan plan;
  std::size_t property_comparisons = 0;
};

/// Two-pass matcher.
///
/// Pass 1 computes base similarities over the plan's class pairs (running the
/// fallback stages for classes with nothing ≥ τ in their block) and pass-1
/// property similarities over every same-kind property pair. Pairs reaching τ
/// are extracted 1:1 into a provisional context. Pass 2 aggregates base,
/// sim_axm and the inheritance boost against that context, recomputes
/// property similarities, and extracts the final one-to-one alignment.
///
/// Pair scoring runs on config.threads workers; the result does not depend on
/// the thread count. Throws ConfigError for an invalid config.
MatchResult match_ontologies(const Ontology& o1, const Ontology& o2, const MatcherConfig& config,
                             const Lexicon& lexicon);

}  // namespace axiom_align
