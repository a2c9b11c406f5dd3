#pragma once

#include <optional>
#include <string>
#include <vector>

#include "axiom_align/ontology.hpp"
#include "axiom_align/similarity.hpp"
#include "axiom_align/text.hpp"

namespace axiom_align {

/// Classes under one top-level disjoint root. The residual partition has no
/// root and collects classes under zero or several roots.
struct Partition {
  std::optional<Iri> root;
  std::vector<Iri> members;  // sorted

  bool residual() const noexcept { return !root.has_value(); }
  /// Root fragment, or "RESIDUAL".
  std::string name() const;
  bool operator==(const Partition&) const = default;
};

/// Roots sorted by IRI, then the residual partition (always present, possibly
/// empty). Member sets are pairwise disjoint and cover every class.
std::vector<Partition> extract_partitions(const Ontology& o);

/// Indices into the two partition lists.
struct PartitionPairing {
  std::size_t first = 0;
  std::size_t second = 0;
  double similarity = 0.0;  // base similarity of the roots
  bool operator==(const PartitionPairing&) const = default;
};

/// Greedy 1:1 pairing of non-residual partitions by descending root base
/// similarity (ties by root IRIs). Eligible when the base similarity reaches
/// config.partition_threshold or the roots are synonyms.
std::vector<PartitionPairing> pair_partitions(const std::vector<Partition>& first,
                                              const std::vector<Partition>& second,
                                              const Ontology& o1, const Ontology& o2,
                                              const Lexicon& lexicon,
                                              const MatcherConfig& config = {});

/// Every source in `sources` is compared with every target in `targets`.
struct PlanBlock {
  std::vector<Iri> sources;
  std::vector<Iri> targets;
  /// Absent for the fallback pool block.
  std::optional<PartitionPairing> pairing;
};

struct ComparisonPlan {
  std::vector<Partition> first_partitions;
  std::vector<Partition> second_partitions;
  std::vector<PartitionPairing> pairings;
  /// One block per pairing, then the pool block (unpaired and residual
  /// partitions of both sides). Blocks have disjoint source sets.
  std::vector<PlanBlock> blocks;
  std::size_t exhaustive_count = 0;
  std::size_t planned_count = 0;
  /// planned_count plus fallback comparisons; filled in by the matcher.
  std::size_t executed_count = 0;

  /// All planned (source, target) pairs, block by block.
  std::vector<std::pair<Iri, Iri>> pairs() const;
};

ComparisonPlan build_plan(const Ontology& o1, const Ontology& o2, std::vector<Partition> first,
                          std::vector<Partition> second, std::vector<PartitionPairing> pairings);

/// extract_partitions on both sides, pair_partitions, build_plan.
ComparisonPlan plan_comparisons(const Ontology& o1, const Ontology& o2, const Lexicon& lexicon,
                                const MatcherConfig& config = {});

/// One block with every class pair.
ComparisonPlan exhaustive_plan(const Ontology& o1, const Ontology& o2);

/// Targets to try for a source class that found nothing ≥ τ in its block.
/// stage1: classes of target partitions paired with the sibling partitions
/// of the class's own partition (siblings: non-residual partitions whose
/// roots share a direct superclass, or are both top-level). stage2: every
/// other target class not compared yet. Both sorted.
struct FallbackStages {
  std::vector<Iri> stage1;
  std::vector<Iri> stage2;
};

FallbackStages fallback_lookup(const ComparisonPlan& plan, const Iri& source, const Ontology& o1,
                               const Ontology& o2);

}  // namespace axiom_align
