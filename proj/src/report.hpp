#pragma once

#include <optional>
#include <string>
#include <vector>

#include "algebra.hpp"
#include "composition.hpp"
#include "specfile.hpp"

namespace nilred {

enum class Mode { Exact, Float };

/// Analysis options shared by every command. Exact mode is the default;
/// float mode runs the same decision procedures in binary64 against `tol`.
struct Options {
  Mode mode = Mode::Exact;
  double tol = 1e-9;
  bool classify_core = false;  // also classify the reduced core when a
                               // Euclidean factor is split off
};

struct BuiltAlgebra {
  AlgebraSpec spec;
  JMap j;
  MetricNilpotentAlgebra alg;
  std::optional<HTypeParams> params;  // normalized, for constructor specs

  const std::string& name() const { return spec.name; }
};

BuiltAlgebra build_algebra(const AlgebraSpec& spec);
BuiltAlgebra build_constructor(const std::string& name, HTypeParams params);

/// Pair-level verdicts of `compare`. nr_differs is only defined when both
/// classifications are in scope (no Euclidean factor on either side).
struct PairFlags {
  bool dims_equal = false;
  bool summaries_equal = false;
  std::optional<bool> nr_differs;
};

PairFlags compare_flags(const BuiltAlgebra& a, const BuiltAlgebra& b, const Options& opts);

/// Renderers. JSON output follows the stable schema documented in the
/// README ("schema": 1); exact-mode scalars serialize as strings.
std::string render_classify(const std::vector<BuiltAlgebra>& algs, const Options& opts,
                            bool as_json);
std::string render_compare(const BuiltAlgebra& a, const BuiltAlgebra& b,
                           const Options& opts, bool as_json);
std::string render_export(const std::vector<BuiltAlgebra>& algs, bool as_json);

}  // namespace nilred
