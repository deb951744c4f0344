#pragma once

#include <stdexcept>
#include <string>

#include "runitary/correction.hpp"
#include "runitary/decompose.hpp"
#include "runitary/povm.hpp"
#include "runitary/types.hpp"

namespace runitary {

// Syntactic/structural problems with the input text. Semantic invariant
// violations (completeness, positivity, ...) surface as std::invalid_argument
// instead, so callers can map the two cases to different exit codes.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Channel files carry either a "kraus" or a "choi" key; a Choi input is
// converted through the canonical Kraus representation. Complex numbers are
// [re, im] pairs, matrices are row-major nested arrays. Parsed values are
// validated against their invariants before being returned.
KrausChannel parse_channel_json(const std::string& text, const ToleranceConfig& tol = {});
RankOnePovm parse_povm_json(const std::string& text);
RuDecomposition parse_decomposition_json(const std::string& text, const ToleranceConfig& tol = {});

// Emission goes through a fixed-order writer with doubles printed at 17
// significant digits, so identical inputs yield byte-identical output.
std::string channel_to_json(const KrausChannel& ch);
std::string povm_to_json(const RankOnePovm& p);
std::string decomposition_to_json(const RuDecomposition& dec);
std::string search_report_to_json(const SearchReport& report);
std::string correction_report_to_json(const CorrectionReport& report);

struct AnalysisResult {
  int rank = 0;
  bool unital = false;
  bool tp = false;
  int k_low = 0;
  int k_high = 0;
  double h_bound_bits = 0.0;
  std::string note;  // emitted only when non-empty
};

std::string analysis_to_json(const AnalysisResult& a);

std::string format_double(double x);  // printf %.17g

}  // namespace runitary
