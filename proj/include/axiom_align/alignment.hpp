#pragma once

#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "axiom_align/iri.hpp"

namespace axiom_align {

/// Only equivalence correspondences are produced and read.
enum class Relation { Equivalence };

/// One scored mapping from an entity of the first ontology to an entity of
/// the second. `kind` is unknown for rows read back from a TSV file.
struct Correspondence {
  Iri source;
  Iri target;
  Relation relation = Relation::Equivalence;
  double confidence = 0.0;
  std::optional<EntityKind> kind;

  bool operator==(const Correspondence&) const = default;
};

using Alignment = std::vector<Correspondence>;

/// True when no source and no target occurs twice.
bool is_one_to_one(const Alignment& alignment);

/// Order used in TSV output: confidence (at printed precision) descending,
/// then source IRI, then target IRI.
bool tsv_order(const Correspondence& a, const Correspondence& b);

/// Confidence rounded to three decimals, e.g. "0.850".
std::string format_confidence(double confidence);

}  // namespace axiom_align
