#pragma once

#include <iosfwd>

#include "wts/bridge.hpp"
#include "wts/classify.hpp"
#include "wts/dual.hpp"
#include "wts/json_writer.hpp"
#include "wts/repfit.hpp"

namespace wts {

inline constexpr int kReportSchema = 1;

void write_json(JsonWriter& w, const ClassVerdict& v);
void write_json(JsonWriter& w, const ClassificationReport& report);
void write_json(JsonWriter& w, const CrossCheckReport& report);
void write_json(JsonWriter& w, const DualReport& report);
void write_json(JsonWriter& w, const ShiftWeights& weights,
                const SeqVerdicts& beta_verdicts,
                const SeqVerdicts& dual_moment_verdicts);
void write_json(JsonWriter& w, const CmFit& fit);
void write_json(JsonWriter& w, const CaFit& fit);
void write_json(JsonWriter& w, const MomentFit& fit);

// Standalone file format for a Levy triple: {"phi0": ..., "c": ..., "atoms":
// [{"a": ..., "weight": ...}, ...]}.
std::string levy_triple_json(const LevyTriple& triple);

}  // namespace wts
