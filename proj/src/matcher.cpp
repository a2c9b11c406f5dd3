#include "axiom_align/matcher.hpp"

#include <algorithm>
#include <unordered_map>

#include "parallel.hpp"
#include "profile.hpp"

namespace axiom_align {

namespace {

struct Scored {
  std::uint32_t target;
  BaseSimilarity sim;
};

struct PropertyPairs {
  std::vector<Iri> first;
  std::vector<Iri> second;
};

}  // namespace

MatchResult match_ontologies(const Ontology& o1, const Ontology& o2, const MatcherConfig& config,
                             const Lexicon& lexicon) {
  config.validate();
  const double tau = config.threshold;
  detail::OntologyProfile p1(o1), p2(o2);

  MatchResult result;
  result.plan = config.partitioning ? plan_comparisons(o1, o2, lexicon, config)
                                    : exhaustive_plan(o1, o2);
  const ComparisonPlan& plan = result.plan;

  std::vector<Iri> sources(o1.classes().begin(), o1.classes().end());
  std::vector<Iri> targets(o2.classes().begin(), o2.classes().end());
  std::unordered_map<Iri, std::uint32_t> target_index;
  for (std::uint32_t i = 0; i < targets.size(); ++i) target_index.emplace(targets[i], i);
  std::unordered_map<Iri, const PlanBlock*> home_block;
  for (const auto& b : plan.blocks) {
    for (const auto& s : b.sources) home_block.emplace(s, &b);
  }

  // Pass 1: base similarity over planned pairs, with fallback per source.
  std::vector<std::vector<Scored>> rows(sources.size());
  detail::parallel_for(sources.size(), config.threads, [&](std::size_t i) {
    const auto& terms1 = p1.terms(sources[i]);
    auto& row = rows[i];
    bool found = false;
    auto score = [&](const std::vector<Iri>& batch) {
      for (const auto& t : batch) {
        auto sim = detail::base_similarity(terms1, p2.terms(t), lexicon);
        found = found || meets_threshold(sim.base(config.synonym_confidence), tau);
        row.push_back(Scored{target_index.at(t), sim});
      }
    };
    auto block = home_block.find(sources[i]);
    if (block != home_block.end()) score(block->second->targets);
    if (found || !config.partitioning) return;
    auto stages = fallback_lookup(plan, sources[i], o1, o2);
    score(stages.stage1);
    if (!found) score(stages.stage2);
  });
  std::size_t executed = 0;
  for (const auto& row : rows) executed += row.size();
  result.plan.executed_count = executed;

  std::vector<PropertyPairs> kinds{
      {{o1.object_properties().begin(), o1.object_properties().end()},
       {o2.object_properties().begin(), o2.object_properties().end()}},
      {{o1.data_properties().begin(), o1.data_properties().end()},
       {o2.data_properties().begin(), o2.data_properties().end()}}};
  const EntityKind kind_tags[] = {EntityKind::ObjectProperty, EntityKind::DataProperty};

  auto property_scores = [&](const MatchContext& context) {
    std::vector<std::vector<double>> scores;
    for (const auto& k : kinds) {
      std::vector<double> grid(k.first.size() * k.second.size());
      detail::parallel_for(k.first.size(), config.threads, [&](std::size_t i) {
        for (std::size_t j = 0; j < k.second.size(); ++j) {
          grid[i * k.second.size() + j] =
              detail::property_similarity(p1, p2, k.first[i], k.second[j], context, lexicon, config);
        }
      });
      scores.push_back(std::move(grid));
    }
    return scores;
  };
  auto property_candidates = [&](const std::vector<std::vector<double>>& scores,
                                 std::vector<Candidate>& out) {
    for (std::size_t k = 0; k < kinds.size(); ++k) {
      const auto& pk = kinds[k];
      for (std::size_t i = 0; i < pk.first.size(); ++i) {
        for (std::size_t j = 0; j < pk.second.size(); ++j) {
          double s = scores[k][i * pk.second.size() + j];
          if (meets_threshold(s, tau)) out.push_back(Candidate{pk.first[i], pk.second[j], s, kind_tags[k]});
        }
      }
    }
  };

  // Provisional context from pass-1 evidence.
  MatchContext context;
  {
    std::vector<Candidate> provisional;
    for (std::size_t i = 0; i < sources.size(); ++i) {
      for (const auto& s : rows[i]) {
        double base = s.sim.base(config.synonym_confidence);
        if (meets_threshold(base, tau)) {
          provisional.push_back(Candidate{sources[i], targets[s.target], base, EntityKind::Class});
        }
      }
    }
    property_candidates(property_scores(MatchContext{}), provisional);
    for (const auto& c : extract_one_to_one(std::move(provisional), tau)) context.add(c.source, c.target);
  }

  // Pass 2.
  std::vector<std::vector<Candidate>> class_candidates(sources.size());
  detail::parallel_for(sources.size(), config.threads, [&](std::size_t i) {
    for (const auto& s : rows[i]) {
      const Iri& target = targets[s.target];
      double base = s.sim.base(config.synonym_confidence);
      double ceiling = config.w_base * base + config.w_axm + config.boost;
      if (!meets_threshold(ceiling, tau)) continue;
      SimilarityVector v{s.sim.uri, s.sim.lab, s.sim.syn, 0.0, 0.0};
      v.sim_axm = detail::axiomatic_similarity(p1, p2, sources[i], target, context);
      v.inherit_boost = detail::boost(o1, o2, sources[i], target, context, config);
      double confidence = aggregate(v, config);
      if (meets_threshold(confidence, tau)) {
        class_candidates[i].push_back(Candidate{sources[i], target, confidence, EntityKind::Class});
      }
    }
  });

  std::vector<Candidate> finals;
  for (auto& row : class_candidates) {
    std::move(row.begin(), row.end(), std::back_inserter(finals));
  }
  property_candidates(property_scores(context), finals);
  for (const auto& k : kinds) result.property_comparisons += k.first.size() * k.second.size();

  result.alignment = extract_one_to_one(std::move(finals), tau);
  return result;
}

}  // namespace axiom_align
