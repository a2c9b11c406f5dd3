#include "axiom_align/partition.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "profile.hpp"

namespace axiom_align {

std::string Partition::name() const { return root ? std::string(root->fragment()) : "RESIDUAL"; }

std::vector<Partition> extract_partitions(const Ontology& o) {
  std::set<Iri> in_disjoint;
  for (const auto& members : o.disjoint_axioms()) in_disjoint.insert(members.begin(), members.end());

  std::set<Iri> roots;
  for (const auto& d : in_disjoint) {
    auto ancestors = superclass_closure(o, d);
    bool nested = std::any_of(ancestors.begin(), ancestors.end(),
                              [&](const Iri& a) { return in_disjoint.contains(a); });
    if (!nested) roots.insert(d);
  }

  std::vector<Partition> out;
  std::map<Iri, std::size_t> slot;
  for (const auto& r : roots) {
    slot.emplace(r, out.size());
    out.push_back(Partition{r, {}});
  }
  Partition residual;
  for (const auto& c : o.classes()) {
    std::vector<const Iri*> hits;
    if (roots.contains(c)) hits.push_back(&c);
    for (const auto& a : superclass_closure(o, c)) {
      if (roots.contains(a)) hits.push_back(&*roots.find(a));
    }
    if (hits.size() == 1) {
      out[slot.at(*hits.front())].members.push_back(c);
    } else {
      residual.members.push_back(c);
    }
  }
  out.push_back(std::move(residual));
  return out;
}

std::vector<PartitionPairing> pair_partitions(const std::vector<Partition>& first,
                                              const std::vector<Partition>& second,
                                              const Ontology& o1, const Ontology& o2,
                                              const Lexicon& lexicon,
                                              const MatcherConfig& config) {
  detail::OntologyProfile p1(o1), p2(o2);
  std::vector<PartitionPairing> candidates;
  for (std::size_t i = 0; i < first.size(); ++i) {
    if (first[i].residual()) continue;
    for (std::size_t j = 0; j < second.size(); ++j) {
      if (second[j].residual()) continue;
      auto sim = detail::base_similarity(p1.terms(*first[i].root), p2.terms(*second[j].root), lexicon);
      double base = sim.base(config.synonym_confidence);
      if (sim.syn || meets_threshold(base, config.partition_threshold)) {
        candidates.push_back(PartitionPairing{i, j, base});
      }
    }
  }
  std::sort(candidates.begin(), candidates.end(),
            [&](const PartitionPairing& a, const PartitionPairing& b) {
              if (a.similarity != b.similarity) return a.similarity > b.similarity;
              if (*first[a.first].root != *first[b.first].root) {
                return *first[a.first].root < *first[b.first].root;
              }
              return *second[a.second].root < *second[b.second].root;
            });
  std::vector<PartitionPairing> chosen;
  std::set<std::size_t> used1, used2;
  for (const auto& c : candidates) {
    if (used1.contains(c.first) || used2.contains(c.second)) continue;
    used1.insert(c.first);
    used2.insert(c.second);
    chosen.push_back(c);
  }
  return chosen;
}

std::vector<std::pair<Iri, Iri>> ComparisonPlan::pairs() const {
  std::vector<std::pair<Iri, Iri>> out;
  out.reserve(planned_count);
  for (const auto& b : blocks) {
    for (const auto& s : b.sources) {
      for (const auto& t : b.targets) out.emplace_back(s, t);
    }
  }
  return out;
}

ComparisonPlan build_plan(const Ontology& o1, const Ontology& o2, std::vector<Partition> first,
                          std::vector<Partition> second, std::vector<PartitionPairing> pairings) {
  ComparisonPlan plan;
  plan.exhaustive_count = o1.classes().size() * o2.classes().size();
  std::vector<bool> paired1(first.size()), paired2(second.size());
  for (const auto& p : pairings) {
    plan.blocks.push_back(PlanBlock{first[p.first].members, second[p.second].members, p});
    paired1[p.first] = true;
    paired2[p.second] = true;
  }
  PlanBlock pool;
  for (std::size_t i = 0; i < first.size(); ++i) {
    if (!paired1[i]) pool.sources.insert(pool.sources.end(), first[i].members.begin(), first[i].members.end());
  }
  for (std::size_t j = 0; j < second.size(); ++j) {
    if (!paired2[j]) pool.targets.insert(pool.targets.end(), second[j].members.begin(), second[j].members.end());
  }
  std::sort(pool.sources.begin(), pool.sources.end());
  std::sort(pool.targets.begin(), pool.targets.end());
  plan.blocks.push_back(std::move(pool));

  for (const auto& b : plan.blocks) plan.planned_count += b.sources.size() * b.targets.size();
  plan.executed_count = plan.planned_count;
  plan.first_partitions = std::move(first);
  plan.second_partitions = std::move(second);
  plan.pairings = std::move(pairings);
  return plan;
}

ComparisonPlan plan_comparisons(const Ontology& o1, const Ontology& o2, const Lexicon& lexicon,
                                const MatcherConfig& config) {
  auto first = extract_partitions(o1);
  auto second = extract_partitions(o2);
  auto pairings = pair_partitions(first, second, o1, o2, lexicon, config);
  return build_plan(o1, o2, std::move(first), std::move(second), std::move(pairings));
}

ComparisonPlan exhaustive_plan(const Ontology& o1, const Ontology& o2) {
  ComparisonPlan plan = build_plan(o1, o2, {}, {}, {});
  auto& all = plan.blocks.front();
  all.sources.assign(o1.classes().begin(), o1.classes().end());
  all.targets.assign(o2.classes().begin(), o2.classes().end());
  plan.planned_count = plan.executed_count = plan.exhaustive_count;
  return plan;
}

namespace {

bool siblings(const Ontology& o, const Iri& a, const Iri& b) {
  const auto& sa = o.direct_superclasses(a);
  const auto& sb = o.direct_superclasses(b);
  if (sa.empty() && sb.empty()) return true;
  return std::any_of(sa.begin(), sa.end(),
                     [&](const Iri& x) { return std::find(sb.begin(), sb.end(), x) != sb.end(); });
}

}  // namespace

FallbackStages fallback_lookup(const ComparisonPlan& plan, const Iri& source, const Ontology& o1,
                               const Ontology& o2) {
  std::set<Iri> compared;
  for (const auto& b : plan.blocks) {
    if (std::binary_search(b.sources.begin(), b.sources.end(), source)) {
      compared.insert(b.targets.begin(), b.targets.end());
      break;
    }
  }

  std::set<Iri> stage1;
  const auto& parts = plan.first_partitions;
  auto home = std::find_if(parts.begin(), parts.end(), [&](const Partition& p) {
    return std::binary_search(p.members.begin(), p.members.end(), source);
  });
  if (home != parts.end() && !home->residual()) {
    for (const auto& pairing : plan.pairings) {
      const auto& other = parts[pairing.first];
      if (&other == &*home || !siblings(o1, *home->root, *other.root)) continue;
      for (const auto& t : plan.second_partitions[pairing.second].members) {
        if (!compared.contains(t)) stage1.insert(t);
      }
    }
  }

  FallbackStages out;
  out.stage1.assign(stage1.begin(), stage1.end());
  for (const auto& t : o2.classes()) {
    if (!compared.contains(t) && !stage1.contains(t)) out.stage2.push_back(t);
  }
  return out;
}

}  // namespace axiom_align
