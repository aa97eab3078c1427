#pragma once

#include <chrono>
#include <cstdint>
#include <limits>
#include <optional>

#include "mapgen/objective.hpp"

namespace mapgen {

// A run stops when either limit trips. Wall-clock mode mirrors the 60 s
// experiment protocol; the evaluation cap makes tests machine-independent.
struct Budget {
  std::int64_t max_millis = std::numeric_limits<std::int64_t>::max();
  std::int64_t max_evaluations = std::numeric_limits<std::int64_t>::max();

  static Budget millis(std::int64_t ms) { return {ms, std::numeric_limits<std::int64_t>::max()}; }
  static Budget evaluations(std::int64_t n) { return {std::numeric_limits<std::int64_t>::max(), n}; }
};

// Counts objective evaluations and enforces the budget. Every score
// computation in a run goes through one of these, so the evaluation count is
// exact. The initial state of a run is evaluated unconditionally (a run must
// know its starting score); all later evaluations are budget-gated.
class CountingEvaluator {
 public:
  CountingEvaluator(const ObjectiveSpec& spec, const Budget& budget)
      : spec_(spec), budget_(budget), start_(std::chrono::steady_clock::now()) {}

  Evaluation evaluate(const Grid& g) {
    ++evaluations_;
    return mapgen::evaluate(spec_, g);
  }

  // nullopt once the budget is exhausted.
  std::optional<Evaluation> try_evaluate(const Grid& g) {
    if (exhausted()) return std::nullopt;
    return evaluate(g);
  }

  bool exhausted() const {
    return evaluations_ >= budget_.max_evaluations || elapsed_millis() >= budget_.max_millis;
  }

  std::int64_t evaluations() const { return evaluations_; }

  std::int64_t elapsed_millis() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

  const ObjectiveSpec& spec() const { return spec_; }

 private:
  ObjectiveSpec spec_;
  Budget budget_;
  std::chrono::steady_clock::time_point start_;
  std::int64_t evaluations_ = 0;
};

}  // namespace mapgen
