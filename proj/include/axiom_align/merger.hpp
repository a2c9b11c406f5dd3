#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "axiom_align/alignment.hpp"
#include "axiom_align/ontology.hpp"
#include "axiom_align/validator.hpp"

namespace axiom_align {

/// Source entity -> IRI it has in the merged ontology, per side.
struct EntityMap {
  std::map<Iri, Iri> first;
  std::map<Iri, Iri> second;

  /// The mapped IRI, or `iri` itself when it is not an entity of that side
  /// (datatypes, builtins).
  const Iri& canonical(Side side, const Iri& iri) const;
  std::size_t size() const noexcept { return first.size() + second.size(); }
};

/// O1 entities map to themselves, mapped O2 entities to their partner, and
/// unmapped O2 entities to default_namespace(O1) + fragment, with `_2`, `_3`
/// ... appended when that local name is already taken. Fresh names are handed
/// out in (kind, IRI) order. Throws MergeError for a non-1:1 alignment or a
/// correspondence between entities of different kinds, UnknownEntityError
/// for undeclared entities.
EntityMap canonicalize(const Alignment& alignment, const Ontology& o1, const Ontology& o2);

/// A source DisjointClasses axiom: its side and position among that source's
/// DisjointClasses axioms.
struct DisjointRef {
  Side side = Side::First;
  std::size_t index = 0;
  auto operator<=>(const DisjointRef&) const = default;
};

enum class ConflictAction { DroppedAxiom, RewrittenAxiom };

std::string_view to_string(ConflictAction action) noexcept;

struct ConflictEntry {
  ConflictAction action = ConflictAction::DroppedAxiom;
  Axiom axiom;
  std::optional<Axiom> replacement;  // for rewrites
  std::vector<Iri> cured;            // classes made satisfiable by this step
  std::string justification;
  std::vector<DisjointRef> sources;  // source axioms the touched axiom came from
};

struct Finding {
  std::string message;
  std::vector<std::size_t> log_entries;  // indices into the conflict log
};

struct QualityReport {
  bool coherent = true;
  std::vector<Iri> unsatisfiable;
  std::vector<Finding> incompleteness_findings;
  std::vector<Finding> redundancy_findings;
};

struct MergeResult {
  Ontology merged;
  EntityMap entity_map;
  std::vector<ConflictEntry> conflict_log;
  QualityReport quality;
};

/// Copies O1, appends every O2 axiom translated through the entity map,
/// drops structural duplicates, resolves remaining disjointness clashes and
/// verifies the result. Throws MergeError if the alignment was validated
/// against other ontologies.
MergeResult merge(const Ontology& o1, const Ontology& o2, const ValidatedAlignment& alignment);

struct ResolveResult {
  Ontology ontology;
  std::vector<ConflictEntry> log;
};

/// While some class is structurally unsatisfiable: take the smallest such
/// class, a DisjointClasses axiom witnessing it (axioms contributed by a
/// single source first), and remove the member among the class's ancestors
/// whose removal cures the most unsatisfiable classes (ties: smallest IRI).
/// An axiom that would drop below two members is deleted instead.
ResolveResult resolve_clashes(const Ontology& merged);

QualityReport verify_merged(const MergeResult& result, const Ontology& o1, const Ontology& o2,
                            const ValidatedAlignment& alignment);

/// Source DisjointClasses axioms, how many are present (translated) in the
/// merged ontology, and how many have a conflict-log entry instead.
struct DisjointnessAccount {
  std::size_t source_axioms = 0;
  std::size_t preserved = 0;
  std::size_t logged = 0;
};

DisjointnessAccount account_disjointness(const MergeResult& result, const Ontology& o1,
                                         const Ontology& o2);

/// One `ACTION axiom [=> replacement] JUSTIFICATION` line per entry.
std::string format_conflict_log(const std::vector<ConflictEntry>& log);
std::string format_quality(const QualityReport& quality);
/// `source\tcanonical` lines, first ontology then second, sorted.
std::string format_entity_map(const EntityMap& map);

}  // namespace axiom_align
