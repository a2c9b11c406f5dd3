#include "axiom_align/eval.hpp"

#include <cstdio>
#include <set>
#include <tuple>

namespace axiom_align {

double f_measure(double precision, double recall) {
  double sum = precision + recall;
  return sum == 0.0 ? 0.0 : 2.0 * precision * recall / sum;
}

EvalScores evaluate(const Alignment& candidate, const Alignment& reference) {
  using Key = std::tuple<Iri, Iri, Relation>;
  auto keys = [](const Alignment& a) {
    std::set<Key> out;
    for (const auto& c : a) out.emplace(c.source, c.target, c.relation);
    return out;
  };
  auto cand = keys(candidate);
  auto ref = keys(reference);

  EvalScores s;
  for (const auto& k : cand) s.tp += ref.count(k);
  s.fp = cand.size() - s.tp;
  s.fn = ref.size() - s.tp;
  s.precision = s.tp + s.fp == 0 ? 1.0 : static_cast<double>(s.tp) / static_cast<double>(s.tp + s.fp);
  s.recall = s.tp + s.fn == 0 ? 1.0 : static_cast<double>(s.tp) / static_cast<double>(s.tp + s.fn);
  s.f_measure = f_measure(s.precision, s.recall);
  return s;
}

std::string format_scores(const EvalScores& s) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "P=%.3f R=%.3f F=%.3f", s.precision, s.recall, s.f_measure);
  return buf;
}

}  // namespace axiom_align
