#include "axiom_align/validator.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <tuple>
#include <unordered_map>

#include "axiom_align/error.hpp"

namespace axiom_align {

namespace detail {

struct ValidationAccess {
  static ValidatedAlignment make(Alignment a, Alignment implied, const Ontology& o1,
                                 const Ontology& o2) {
    return ValidatedAlignment(std::move(a), std::move(implied), o1.iri(), o2.iri());
  }
};

}  // namespace detail

std::string to_string(const MergedNode& node) {
  return (node.side == Side::First ? "O1:" : "O2:") + node.iri.full();
}

std::string_view to_string(RejectionReason reason) noexcept {
  switch (reason) {
    case RejectionReason::DisjointnessClash:
      return "disjointness-clash";
    case RejectionReason::Circularity:
      return "circularity";
    case RejectionReason::Redundancy:
      return "redundancy";
  }
  return "unknown";
}

namespace {

void add_hierarchy(const Ontology& o, std::size_t offset,
                   const std::unordered_map<Iri, std::size_t>& index,
                   std::vector<std::vector<VirtualMerge::Edge>>& succ) {
  using Kind = VirtualMerge::EdgeKind;
  for (const auto& axiom : o.axioms()) {
    if (const auto* sub = std::get_if<SubClassOf>(&axiom)) {
      if (sub->sub.is_named() && sub->sup.is_named()) {
        succ[offset + index.at(sub->sub.iri())].push_back(
            {offset + index.at(sub->sup.iri()), Kind::SubClass, 0});
      }
    } else if (const auto* eq = std::get_if<EquivalentClasses>(&axiom)) {
      if (eq->first.is_named() && eq->second.is_named()) {
        std::size_t a = offset + index.at(eq->first.iri());
        std::size_t b = offset + index.at(eq->second.iri());
        succ[a].push_back({b, Kind::SourceEquivalence, 0});
        succ[b].push_back({a, Kind::SourceEquivalence, 0});
      }
    }
  }
}

}  // namespace

VirtualMerge::VirtualMerge(const Ontology& o1, const Ontology& o2, const Alignment& alignment)
    : o1_(&o1), o2_(&o2) {
  std::unordered_map<Iri, std::size_t> idx1, idx2;
  for (const auto& c : o1.classes()) {
    idx1.emplace(c, nodes_.size());
    nodes_.push_back({Side::First, c});
  }
  first_count_ = nodes_.size();
  for (const auto& c : o2.classes()) {
    idx2.emplace(c, nodes_.size() - first_count_);
    nodes_.push_back({Side::Second, c});
  }
  succ_.resize(nodes_.size());
  add_hierarchy(o1, 0, idx1, succ_);
  add_hierarchy(o2, first_count_, idx2, succ_);

  const std::size_t words = (nodes_.size() + 63) / 64;
  auto closure = [&](bool include_correspondences) {
    std::vector<Bits> reach(nodes_.size(), Bits(words, 0));
    std::vector<std::size_t> stack;
    for (std::size_t start = 0; start < nodes_.size(); ++start) {
      Bits& bits = reach[start];
      bits[start / 64] |= std::uint64_t{1} << (start % 64);
      stack.assign(1, start);
      while (!stack.empty()) {
        std::size_t u = stack.back();
        stack.pop_back();
        for (const auto& e : succ_[u]) {
          if (!include_correspondences && e.kind == EdgeKind::Correspondence) continue;
          if (test(bits, e.to)) continue;
          bits[e.to / 64] |= std::uint64_t{1} << (e.to % 64);
          stack.push_back(e.to);
        }
      }
    }
    return reach;
  };
  source_reach_ = closure(false);

  for (const auto& c : alignment) {
    auto k1 = o1.kind_of(c.source);
    if (!k1) throw UnknownEntityError(c.source.full());
    auto k2 = o2.kind_of(c.target);
    if (!k2) throw UnknownEntityError(c.target.full());
    if (*k1 != *k2) {
      throw ModelError("correspondence " + c.source.full() + " = " + c.target.full() +
                       " relates a " + std::string(to_string(*k1)) + " to a " +
                       std::string(to_string(*k2)));
    }
    if (*k1 != EntityKind::Class) continue;
    std::size_t a = idx1.at(c.source);
    std::size_t b = first_count_ + idx2.at(c.target);
    std::size_t k = edges_.size();
    edges_.push_back(c);
    succ_[a].push_back({b, EdgeKind::Correspondence, k});
    succ_[b].push_back({a, EdgeKind::Correspondence, k});
  }
  reach_ = closure(true);

  auto add_disjoint = [&](const Ontology& o, Side side, std::size_t offset,
                          const std::unordered_map<Iri, std::size_t>& index) {
    std::size_t n = 0;
    for (const auto& members : o.disjoint_axioms()) {
      DisjointSet set{side, n++, {}};
      for (const auto& m : members) set.members.push_back(offset + index.at(m));
      disjoint_.push_back(std::move(set));
    }
  };
  add_disjoint(o1, Side::First, 0, idx1);
  add_disjoint(o2, Side::Second, first_count_, idx2);
}

std::size_t VirtualMerge::index_of(const MergedNode& node) const {
  const Ontology& o = node.side == Side::First ? *o1_ : *o2_;
  auto it = o.classes().find(node.iri);
  if (it == o.classes().end()) throw UnknownEntityError(node.iri.full());
  auto pos = static_cast<std::size_t>(std::distance(o.classes().begin(), it));
  return node.side == Side::First ? pos : first_count_ + pos;
}

bool VirtualMerge::reaches(std::size_t from, std::size_t to) const { return test(reach_[from], to); }

bool VirtualMerge::reaches_within_source(std::size_t from, std::size_t to) const {
  return test(source_reach_[from], to);
}

std::set<MergedNode> VirtualMerge::superclass_closure(const MergedNode& node) const {
  std::size_t i = index_of(node);
  std::set<MergedNode> out;
  for (std::size_t j = 0; j < nodes_.size(); ++j) {
    if (j != i && reaches(i, j)) out.insert(nodes_[j]);
  }
  return out;
}

std::set<std::pair<MergedNode, MergedNode>> VirtualMerge::disjoint_pairs_closure() const {
  std::set<std::pair<MergedNode, MergedNode>> out;
  for (const auto& d : disjoint_) {
    for (std::size_t a = 0; a < d.members.size(); ++a) {
      for (std::size_t b = a + 1; b < d.members.size(); ++b) {
        for (std::size_t x = 0; x < nodes_.size(); ++x) {
          if (!reaches(x, d.members[a])) continue;
          for (std::size_t y = 0; y < nodes_.size(); ++y) {
            if (x == y || !reaches(y, d.members[b])) continue;
            out.insert(std::minmax(nodes_[x], nodes_[y]));
          }
        }
      }
    }
  }
  return out;
}

std::vector<Clash> detect_disjointness_clashes(const VirtualMerge& merge) {
  const auto& sets = merge.disjoint_sets();
  const auto& corr = merge.edges();
  std::vector<std::pair<std::size_t, std::size_t>> corr_nodes;
  for (const auto& c : corr) {
    corr_nodes.emplace_back(merge.index_of({Side::First, c.source}),
                            merge.index_of({Side::Second, c.target}));
  }

  // Nodes already unsatisfiable inside their own source for a given pair.
  std::map<std::tuple<std::size_t, std::size_t, std::size_t>, std::vector<std::size_t>> defective;
  auto defect_nodes = [&](std::size_t set, std::size_t a, std::size_t b) -> const std::vector<std::size_t>& {
    auto key = std::make_tuple(set, a, b);
    auto it = defective.find(key);
    if (it != defective.end()) return it->second;
    std::vector<std::size_t> nodes;
    for (std::size_t x = 0; x < merge.node_count(); ++x) {
      if (merge.node(x).side == sets[set].side && merge.reaches_within_source(x, a) &&
          merge.reaches_within_source(x, b)) {
        nodes.push_back(x);
      }
    }
    return defective.emplace(key, std::move(nodes)).first->second;
  };

  std::vector<Clash> out;
  for (std::size_t c = 0; c < merge.node_count(); ++c) {
    for (std::size_t s = 0; s < sets.size(); ++s) {
      std::vector<std::size_t> hit;
      for (auto m : sets[s].members) {
        if (merge.reaches(c, m)) hit.push_back(m);
      }
      for (std::size_t i = 0; i < hit.size(); ++i) {
        for (std::size_t j = i + 1; j < hit.size(); ++j) {
          std::size_t a = hit[i], b = hit[j];
          Clash clash{merge.node(c), merge.node(a), merge.node(b), {}};
          const auto& sources = defect_nodes(s, a, b);
          bool defect = std::any_of(sources.begin(), sources.end(),
                                    [&](std::size_t x) { return merge.reaches(c, x); });
          if (!defect) {
            for (std::size_t k = 0; k < corr.size(); ++k) {
              auto [u, v] = corr_nodes[k];
              auto on_path = [&](std::size_t target) {
                return (merge.reaches(c, u) && merge.reaches(v, target)) ||
                       (merge.reaches(c, v) && merge.reaches(u, target));
              };
              if (on_path(a) || on_path(b)) clash.implicated.push_back(corr[k]);
            }
          }
          out.push_back(std::move(clash));
        }
      }
    }
  }
  return out;
}

std::vector<std::vector<MergedNode>> detect_circularity(const VirtualMerge& merge) {
  const std::size_t n = merge.node_count();
  std::vector<std::size_t> component(n, n);
  std::vector<std::vector<MergedNode>> out;
  for (std::size_t u = 0; u < n; ++u) {
    if (component[u] != n) continue;
    std::vector<std::size_t> members;
    for (std::size_t v = u; v < n; ++v) {
      if (component[v] == n && merge.reaches(u, v) && merge.reaches(v, u)) {
        component[v] = u;
        members.push_back(v);
      }
    }
    if (members.size() < 2) continue;
    bool has_corr = false, has_sub = false;
    for (auto v : members) {
      for (const auto& e : merge.successors(v)) {
        if (component[e.to] != u) continue;
        has_corr = has_corr || e.kind == VirtualMerge::EdgeKind::Correspondence;
        has_sub = has_sub || e.kind == VirtualMerge::EdgeKind::SubClass;
      }
    }
    if (!has_corr || !has_sub) continue;
    std::vector<MergedNode> cycle;
    for (auto v : members) cycle.push_back(merge.node(v));
    std::sort(cycle.begin(), cycle.end());
    out.push_back(std::move(cycle));
  }
  return out;
}

namespace {

// Smallest IRI of each class's named-equivalence group.
std::unordered_map<Iri, Iri> equivalence_groups(const Ontology& o) {
  std::unordered_map<Iri, Iri> parent;
  std::function<Iri(const Iri&)> find = [&](const Iri& x) -> Iri {
    auto it = parent.find(x);
    if (it == parent.end() || it->second == x) return x;
    Iri root = find(it->second);
    parent.insert_or_assign(x, root);
    return root;
  };
  for (const auto& axiom : o.axioms()) {
    const auto* eq = std::get_if<EquivalentClasses>(&axiom);
    if (!eq || !eq->first.is_named() || !eq->second.is_named()) continue;
    Iri a = find(eq->first.iri()), b = find(eq->second.iri());
    if (a == b) continue;
    if (b < a) std::swap(a, b);
    parent.insert_or_assign(b, a);
  }
  std::unordered_map<Iri, Iri> out;
  for (const auto& [x, _] : parent) out.insert_or_assign(x, find(x));
  return out;
}

std::vector<std::size_t> redundant_positions(const Alignment& alignment, const Ontology& o1,
                                             const Ontology& o2) {
  auto g1 = equivalence_groups(o1), g2 = equivalence_groups(o2);
  auto group = [](const std::unordered_map<Iri, Iri>& g, const Iri& x) {
    auto it = g.find(x);
    return it == g.end() ? x : it->second;
  };
  std::map<std::pair<Iri, Iri>, std::size_t> best;
  for (std::size_t i = 0; i < alignment.size(); ++i) {
    const auto& c = alignment[i];
    auto key = std::make_pair(group(g1, c.source), group(g2, c.target));
    auto [it, fresh] = best.emplace(key, i);
    if (fresh) continue;
    const auto& held = alignment[it->second];
    bool better = c.confidence > held.confidence ||
                  (c.confidence == held.confidence &&
                   std::tie(c.source, c.target) < std::tie(held.source, held.target));
    if (better) it->second = i;
  }
  std::vector<bool> keep(alignment.size(), false);
  for (const auto& [_, i] : best) keep[i] = true;
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < alignment.size(); ++i) {
    if (!keep[i]) out.push_back(i);
  }
  return out;
}

bool weaker(const Correspondence& a, const Correspondence& b);

// Redundant rows backed by a surviving correspondence between the same
// groups, kept 1:1 with everything accepted so far.
Alignment implied_rows(const std::vector<Rejection>& rejected, const Alignment& accepted,
                       const Ontology& o1, const Ontology& o2) {
  auto g1 = equivalence_groups(o1), g2 = equivalence_groups(o2);
  auto group = [](const std::unordered_map<Iri, Iri>& g, const Iri& x) {
    auto it = g.find(x);
    return it == g.end() ? x : it->second;
  };
  std::set<std::pair<Iri, Iri>> backed;
  std::set<Iri> used1, used2;
  for (const auto& c : accepted) {
    backed.emplace(group(g1, c.source), group(g2, c.target));
    used1.insert(c.source);
    used2.insert(c.target);
  }
  Alignment candidates;
  for (const auto& r : rejected) {
    if (r.reason == RejectionReason::Redundancy) candidates.push_back(r.correspondence);
  }
  std::sort(candidates.begin(), candidates.end(),
            [](const Correspondence& a, const Correspondence& b) { return weaker(b, a); });
  Alignment out;
  for (const auto& c : candidates) {
    if (!backed.contains({group(g1, c.source), group(g2, c.target)})) continue;
    if (used1.contains(c.source) || used2.contains(c.target)) continue;
    used1.insert(c.source);
    used2.insert(c.target);
    out.push_back(c);
  }
  return out;
}

bool weaker(const Correspondence& a, const Correspondence& b) {
  if (a.confidence != b.confidence) return a.confidence < b.confidence;
  return std::tie(a.source, a.target) < std::tie(b.source, b.target);
}

void erase_one(Alignment& alignment, const Correspondence& c) {
  auto it = std::find_if(alignment.begin(), alignment.end(), [&](const Correspondence& x) {
    return x.source == c.source && x.target == c.target;
  });
  if (it != alignment.end()) alignment.erase(it);
}

std::string describe(const Correspondence& c) {
  return c.source.full() + " = " + c.target.full() + " (" + format_confidence(c.confidence) + ")";
}

}  // namespace

Alignment detect_redundancy(const Alignment& alignment, const Ontology& o1, const Ontology& o2) {
  Alignment out;
  for (auto i : redundant_positions(alignment, o1, o2)) out.push_back(alignment[i]);
  return out;
}

ValidationReport validate(const Alignment& alignment, const Ontology& o1, const Ontology& o2,
                          const ValidationOptions& options) {
  std::vector<Rejection> rejected;
  std::vector<std::string> warnings;

  Alignment remaining;
  {
    auto redundant = redundant_positions(alignment, o1, o2);
    std::size_t r = 0;
    for (std::size_t i = 0; i < alignment.size(); ++i) {
      if (r < redundant.size() && redundant[r] == i) {
        rejected.push_back({alignment[i], RejectionReason::Redundancy,
                            "implied by a higher-confidence correspondence between the same "
                            "equivalence groups"});
        ++r;
      } else {
        remaining.push_back(alignment[i]);
      }
    }
  }

  while (true) {
    VirtualMerge vm(o1, o2, remaining);
    const Correspondence* victim = nullptr;
    const Clash* witness = nullptr;
    auto clashes = detect_disjointness_clashes(vm);
    for (const auto& clash : clashes) {
      for (const auto& c : clash.implicated) {
        if (!victim || weaker(c, *victim)) {
          victim = &c;
          witness = &clash;
        }
      }
    }
    if (!victim) break;
    rejected.push_back({*victim, RejectionReason::DisjointnessClash,
                        to_string(witness->cls) + " would inherit disjoint " +
                            to_string(witness->disjoint_a) + " and " +
                            to_string(witness->disjoint_b)});
    erase_one(remaining, *victim);
  }

  while (true) {
    VirtualMerge vm(o1, o2, remaining);
    auto cycles = detect_circularity(vm);
    if (cycles.empty()) break;
    if (!options.strict_cycles) {
      for (const auto& cycle : cycles) {
        std::string line = "cycle:";
        for (const auto& node : cycle) line += " " + to_string(node);
        warnings.push_back(std::move(line));
      }
      break;
    }
    const auto& cycle = cycles.front();
    auto in_cycle = [&](Side side, const Iri& iri) {
      return std::binary_search(cycle.begin(), cycle.end(), MergedNode{side, iri});
    };
    const Correspondence* victim = nullptr;
    for (const auto& c : vm.edges()) {
      if (in_cycle(Side::First, c.source) && in_cycle(Side::Second, c.target) &&
          (!victim || weaker(c, *victim))) {
        victim = &c;
      }
    }
    std::string detail = "closes a subclass cycle through " + to_string(cycle.front());
    rejected.push_back({*victim, RejectionReason::Circularity, detail});
    erase_one(remaining, *victim);
  }

  {
    VirtualMerge vm(o1, o2, remaining);
    std::set<std::string> defects;
    for (const auto& clash : detect_disjointness_clashes(vm)) {
      if (clash.source_defect()) {
        defects.insert("source defect: " + to_string(clash.cls) + " inherits disjoint " +
                       to_string(clash.disjoint_a) + " and " + to_string(clash.disjoint_b));
      }
    }
    warnings.insert(warnings.end(), defects.begin(), defects.end());
  }

  Alignment implied = implied_rows(rejected, remaining, o1, o2);
  return ValidationReport{
      detail::ValidationAccess::make(std::move(remaining), std::move(implied), o1, o2),
      std::move(rejected), std::move(warnings)};
}

std::string format_report(const ValidationReport& report) {
  std::string out = "accepted " + std::to_string(report.accepted.correspondences().size()) +
                    " correspondences\n";
  out += "rejected " + std::to_string(report.rejected.size()) + "\n";
  for (const auto& r : report.rejected) {
    out += "  " + std::string(to_string(r.reason)) + " " + describe(r.correspondence) + ": " +
           r.detail + "\n";
  }
  out += "warnings " + std::to_string(report.warnings.size()) + "\n";
  for (const auto& w : report.warnings) out += "  " + w + "\n";
  return out;
}

std::string format_rejections(const ValidationReport& report) {
  std::string out = "#source\ttarget\tconfidence\treason\n";
  for (const auto& r : report.rejected) {
    out += r.correspondence.source.full() + "\t" + r.correspondence.target.full() + "\t" +
           format_confidence(r.correspondence.confidence) + "\t" + std::string(to_string(r.reason)) +
           "\n";
  }
  return out;
}

}  // namespace axiom_align
