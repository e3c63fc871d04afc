#include "wts/report_json.hpp"

namespace wts {

namespace {

void write_witness(JsonWriter& w, const Witness& witness) {
  w.begin_object();
  w.field("x", witness.x);
  w.field("value", witness.value);
  if (witness.t) w.field("t", *witness.t);
  w.end_object();
}

void write_measure_atoms(JsonWriter& w, const DiscreteMeasure& measure) {
  w.begin_array();
  for (const MeasureAtom& a : measure.atoms) {
    w.begin_object();
    w.field("a", a.location);
    w.field("weight", a.weight);
    w.end_object();
  }
  w.end_array();
}

void write_seq_verdicts(JsonWriter& w, const SeqVerdicts& v) {
  w.begin_object();
  w.field("checked_order", v.checked_order);
  w.key("completely_monotone");
  write_json(w, v.completely_monotone);
  w.key("completely_alternating");
  write_json(w, v.completely_alternating);
  w.end_object();
}

}  // namespace

void write_json(JsonWriter& w, const ClassVerdict& v) {
  w.begin_object();
  w.field("verdict", verdict_name(v.verdict));
  if (v.order) w.field("order", *v.order);
  if (v.witness) {
    w.key("witness");
    write_witness(w, *v.witness);
  }
  w.end_object();
}

void write_json(JsonWriter& w, const ClassificationReport& report) {
  w.begin_object();
  w.field("symbol", report.symbol);
  w.field("derivative_route", report.derivative_route);
  w.field("checked_order", report.checked_order);

  w.key("grid");
  w.begin_object();
  w.field("x_max", report.grid.x_max);
  w.field("uniform_points", report.grid.uniform_points);
  w.field("geometric_points", report.grid.geometric_points);
  w.field("geometric_min", report.grid.geometric_min);
  w.end_object();

  w.key("positivity");
  write_json(w, report.positivity);

  w.key("contraction");
  w.begin_object();
  if (report.contraction_sup) w.field("sup", *report.contraction_sup);
  else w.null_field("sup");
  w.key("verdict");
  write_json(w, report.contraction);
  w.end_object();

  w.key("function_classes");
  w.begin_object();
  w.key("completely_monotone");
  write_json(w, report.function_classes.completely_monotone);
  w.key("completely_alternating");
  write_json(w, report.function_classes.completely_alternating);
  w.key("absolutely_monotone");
  write_json(w, report.function_classes.absolutely_monotone);
  w.key("concave");
  write_json(w, report.function_classes.concave);
  w.key("log_convex");
  write_json(w, report.function_classes.log_convex);
  if (report.function_classes.polynomial_degree) {
    w.field("polynomial_degree", *report.function_classes.polynomial_degree);
  } else {
    w.null_field("polynomial_degree");
  }
  w.end_object();

  w.key("semigroup_classes");
  w.begin_object();
  w.key("subnormal_contraction");
  write_json(w, report.semigroup_classes.subnormal_contraction);
  w.key("completely_hyperexpansive");
  write_json(w, report.semigroup_classes.completely_hyperexpansive);
  w.key("two_hyperexpansive");
  write_json(w, report.semigroup_classes.two_hyperexpansive);
  w.key("alternatingly_hyperexpansive");
  write_json(w, report.semigroup_classes.alternatingly_hyperexpansive);
  w.key("hyponormal");
  write_json(w, report.semigroup_classes.hyponormal);
  w.key("m_isometry");
  write_json(w, report.semigroup_classes.m_isometry);
  if (report.semigroup_classes.isometry_order) {
    w.field("isometry_order", *report.semigroup_classes.isometry_order);
  } else {
    w.null_field("isometry_order");
  }
  w.end_object();

  w.end_object();
}

void write_json(JsonWriter& w, const CrossCheckReport& report) {
  w.begin_object();
  w.key("orders");
  w.begin_array();
  for (const CrossCheckEntry& e : report.entries) {
    w.begin_object();
    w.field("order", e.order);
    w.field("derivative_sign", sign_class_name(e.derivative_sign));
    w.field("difference_sign", sign_class_name(e.difference_sign));
    w.field("compatible", e.compatible);
    w.end_object();
  }
  w.end_array();
  w.field("all_compatible", report.all_compatible);
  w.end_object();
}

void write_json(JsonWriter& w, const DualReport& report) {
  w.begin_object();
  w.field("symbol", report.symbol);
  w.field("dual_symbol", report.dual_symbol);

  w.key("margins");
  w.begin_array();
  for (const MarginEntry& m : report.margins) {
    w.begin_object();
    w.field("t", m.t);
    w.field("margin", m.margin);
    w.field("left_invertible", m.left_invertible);
    w.end_object();
  }
  w.end_array();

  w.key("primal");
  write_json(w, report.primal);
  w.key("dual");
  write_json(w, report.dual);

  w.key("theorem_checks");
  w.begin_array();
  for (const TheoremCheck& c : report.theorem_checks) {
    w.begin_object();
    w.field("name", c.name);
    w.field("status", theorem_status_name(c.status));
    w.field("detail", c.detail);
    w.end_object();
  }
  w.end_array();
  w.end_object();
}

void write_json(JsonWriter& w, const ShiftWeights& weights,
                const SeqVerdicts& beta_verdicts,
                const SeqVerdicts& dual_moment_verdicts) {
  w.begin_object();
  w.field("n_terms", static_cast<long long>(weights.beta.size()));

  auto write_vec = [&w](const char* name, const std::vector<double>& v) {
    w.key(name);
    w.begin_array();
    for (double x : v) w.value(x);
    w.end_array();
  };
  write_vec("beta", weights.beta);
  write_vec("beta_normalized", weights.beta_normalized);
  write_vec("alpha", weights.alpha);
  write_vec("dual_alpha", weights.dual_alpha);

  w.key("beta_verdicts");
  write_seq_verdicts(w, beta_verdicts);
  w.key("dual_moment_verdicts");
  write_seq_verdicts(w, dual_moment_verdicts);
  w.end_object();
}

void write_json(JsonWriter& w, const CmFit& fit) {
  w.begin_object();
  w.key("atoms");
  write_measure_atoms(w, fit.measure);
  w.field("total_mass", fit.measure.total_mass());
  w.field("residual", fit.residual);
  w.field("iterations", fit.iterations);
  w.field("converged", fit.converged);
  w.end_object();
}

void write_json(JsonWriter& w, const CaFit& fit) {
  w.begin_object();
  w.field("phi0", fit.triple.phi0);
  w.field("drift", fit.triple.drift);
  w.key("atoms");
  write_measure_atoms(w, fit.triple.measure);
  w.field("total_mass", fit.triple.measure.total_mass());
  w.field("residual", fit.residual);
  w.field("iterations", fit.iterations);
  w.field("converged", fit.converged);
  w.end_object();
}

void write_json(JsonWriter& w, const MomentFit& fit) {
  w.begin_object();
  w.key("atoms");
  write_measure_atoms(w, fit.measure);
  w.field("total_mass", fit.measure.total_mass());
  w.field("normalization", fit.normalization);
  w.field("residual", fit.residual);
  w.field("iterations", fit.iterations);
  w.field("converged", fit.converged);
  w.end_object();
}

std::string levy_triple_json(const LevyTriple& triple) {
  JsonWriter w;
  w.begin_object();
  w.field("phi0", triple.phi0);
  w.field("c", triple.drift);
  w.key("atoms");
  write_measure_atoms(w, triple.measure);
  w.end_object();
  return w.str() + "\n";
}

}  // namespace wts
