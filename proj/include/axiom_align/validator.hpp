#pragma once

#include <compare>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "axiom_align/alignment.hpp"
#include "axiom_align/ontology.hpp"

namespace axiom_align {

namespace detail {
struct ValidationAccess;
}

/// A class of one of the two ontologies inside the virtual merge.
struct MergedNode {
  Side side = Side::First;
  Iri iri;
  auto operator<=>(const MergedNode&) const = default;
};

std::string to_string(const MergedNode& node);

/// Union of both subclass graphs, with every class correspondence added as a
/// bidirectional edge. Property correspondences do not take part.
class VirtualMerge {
 public:
  /// Throws UnknownEntityError when a correspondence names an entity neither
  /// ontology declares.
  VirtualMerge(const Ontology& o1, const Ontology& o2, const Alignment& alignment);

  const Ontology& first() const noexcept { return *o1_; }
  const Ontology& second() const noexcept { return *o2_; }
  /// The class correspondences that became edges.
  const Alignment& edges() const noexcept { return edges_; }

  std::size_t node_count() const noexcept { return nodes_.size(); }
  /// Transitive, non-reflexive ancestors across both ontologies.
  std::set<MergedNode> superclass_closure(const MergedNode& node) const;
  /// Pairs {x, y} whose merged ancestors-or-self hold two distinct members of
  /// one disjointness axiom of either source.
  std::set<std::pair<MergedNode, MergedNode>> disjoint_pairs_closure() const;

  // Index-level access for the detectors.
  std::size_t index_of(const MergedNode& node) const;
  const MergedNode& node(std::size_t index) const { return nodes_[index]; }
  bool reaches(std::size_t from, std::size_t to) const;                 // reflexive
  bool reaches_within_source(std::size_t from, std::size_t to) const;  // same-side edges only
  /// Outgoing edges point from a class to its direct merged superclasses.
  enum class EdgeKind : std::uint8_t { SubClass, SourceEquivalence, Correspondence };
  struct Edge {
    std::size_t to;
    EdgeKind kind;
    std::size_t correspondence;  // index into edges() for Correspondence edges
  };
  const std::vector<Edge>& successors(std::size_t index) const { return succ_[index]; }
  /// Disjointness axioms of both sources as node-index member lists.
  struct DisjointSet {
    Side side;
    std::size_t axiom;  // position among that source's DisjointClasses axioms
    std::vector<std::size_t> members;
  };
  const std::vector<DisjointSet>& disjoint_sets() const noexcept { return disjoint_; }

 private:
  using Bits = std::vector<std::uint64_t>;
  static bool test(const Bits& bits, std::size_t i) { return (bits[i / 64] >> (i % 64)) & 1U; }

  const Ontology* o1_;
  const Ontology* o2_;
  Alignment edges_;
  std::vector<MergedNode> nodes_;
  std::size_t first_count_ = 0;
  std::vector<std::vector<Edge>> succ_;
  std::vector<Bits> reach_;
  std::vector<Bits> source_reach_;
  std::vector<DisjointSet> disjoint_;
};

/// One unsatisfiable node and the disjoint pair it inherits.
struct Clash {
  MergedNode cls;
  MergedNode disjoint_a;
  MergedNode disjoint_b;
  /// Correspondences lying on an ancestry path from cls to either member.
  /// Empty when the clash already exists inside one source (a source defect).
  std::vector<Correspondence> implicated;

  bool source_defect() const noexcept { return implicated.empty(); }
};

std::vector<Clash> detect_disjointness_clashes(const VirtualMerge& merge);

/// Strongly connected components (size ≥ 2) that use at least one
/// correspondence edge and at least one SubClassOf edge. Components made only
/// of equivalences are not cycles. Nodes in each cycle are sorted.
std::vector<std::vector<MergedNode>> detect_circularity(const VirtualMerge& merge);

/// Exact duplicates beyond the first, and correspondences whose source and
/// target fall in the same equivalence groups (EquivalentClasses between
/// named classes) as a higher-confidence one. Returned in input order.
Alignment detect_redundancy(const Alignment& alignment, const Ontology& o1, const Ontology& o2);

enum class RejectionReason { DisjointnessClash, Circularity, Redundancy };

std::string_view to_string(RejectionReason reason) noexcept;

struct Rejection {
  Correspondence correspondence;
  RejectionReason reason;
  std::string detail;
};

/// An alignment that went through validate against a particular pair of
/// ontologies. Only validate can create one, so merging an unvalidated
/// alignment does not compile.
class ValidatedAlignment {
 public:
  const Alignment& correspondences() const noexcept { return alignment_; }
  /// Redundant rows still entailed by an accepted correspondence whose
  /// entities are otherwise unmapped; the merger unifies them too.
  const Alignment& implied() const noexcept { return implied_; }
  const Iri& first_ontology() const noexcept { return first_; }
  const Iri& second_ontology() const noexcept { return second_; }

 private:
  friend struct detail::ValidationAccess;
  ValidatedAlignment(Alignment alignment, Alignment implied, Iri first, Iri second)
      : alignment_(std::move(alignment)), implied_(std::move(implied)), first_(std::move(first)),
        second_(std::move(second)) {}

  Alignment alignment_;
  Alignment implied_;
  Iri first_;
  Iri second_;
};

struct ValidationOptions {
  bool strict_cycles = false;  // reject instead of warn
};

struct ValidationReport {
  ValidatedAlignment accepted;
  std::vector<Rejection> rejected;  // in removal order
  std::vector<std::string> warnings;
};

/// Drops redundancies, then repeatedly removes the lowest-confidence
/// correspondence implicated in a disjointness clash (ties: smaller
/// (source, target)) until none is left. Cycles are warnings unless
/// options.strict_cycles, in which case the lowest-confidence correspondence
/// of each cycle is rejected the same way. Accepted keeps input order.
ValidationReport validate(const Alignment& alignment, const Ontology& o1, const Ontology& o2,
                          const ValidationOptions& options = {});

/// Human-readable report.
std::string format_report(const ValidationReport& report);

/// `#source\ttarget\tconfidence\treason` rows in removal order.
std::string format_rejections(const ValidationReport& report);

}  // namespace axiom_align
