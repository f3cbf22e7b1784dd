#pragma once

// Result types shared by the two inference engines and the CLI.

#include <cstdint>
#include <string>
#include <vector>

#include "datefmt/icu_format.hpp"

namespace datefmt {

// Engine-independent detection options; defaults mirror the documented
// knobs (5% error threshold, 32-value samples).
struct DetectOptions {
  double max_error_rate = 0.05;
  size_t sample_size = 32;
  int max_trees = 16;  // ranked parse trees kept per value (nlp engine)
};

struct FormatCandidate {
  FormatString format;
  std::string locale_id;
  double error_rate = 0.0;
  // engine-specific: description length in bits (mdl) or aggregated
  // probability mass (nlp)
  double score = 0.0;
};

struct DetectionResult {
  std::string engine;
  std::string column;
  std::vector<FormatCandidate> candidates;  // ranked, best first
  int64_t analysis_micros = 0;
  int64_t validation_micros = 0;

  bool found() const { return !candidates.empty(); }
  const FormatCandidate& top() const { return candidates.front(); }
};

}  // namespace datefmt
