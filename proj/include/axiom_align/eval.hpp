#pragma once

#include <cstddef>
#include <string>

#include "axiom_align/alignment.hpp"

namespace axiom_align {

struct EvalScores {
  double precision = 1.0;
  double recall = 1.0;
  double f_measure = 1.0;
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
};

/// 2PR/(P+R), or 0 when P+R = 0.
double f_measure(double precision, double recall);

/// Set comparison on (source, target, relation); confidences are ignored and
/// repeated rows count once.
EvalScores evaluate(const Alignment& candidate, const Alignment& reference);

/// "P=0.844 R=0.498 F=0.626"
std::string format_scores(const EvalScores& scores);

}  // namespace axiom_align
