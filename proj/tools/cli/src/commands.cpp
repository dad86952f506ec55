#include "mfd_cli/commands.hpp"

#include "mfd/distortion.hpp"
#include "mfd/error.hpp"
#include "mfd/loopbasis.hpp"
#include "mfd/markov.hpp"
#include "mfd/morita.hpp"
#include "mfd/perron.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <map>
#include <sstream>

namespace mfd::cli {

using nlohmann::json;

namespace {

constexpr std::size_t kDefaultTowerSteps = 3;
constexpr std::size_t kDefaultDensitySteps = 20;

struct Context {
  const InputFile& input;
  const Options& options;
  Tolerance tol;
  json diagnostics = json::object();
};

const PartialMatrix& need_delta(const Context& ctx) {
  if (!ctx.input.delta) throw ParseError("this command needs a delta matrix in the input", {{"field", "delta"}});
  return *ctx.input.delta;
}

Matrix completed_delta(Context& ctx) {
  DistortionMatrix full = complete_distortion(need_delta(ctx), ctx.tol);
  return *full.extension;
}

/// Traces from the input file, paired with the Perron index.
std::optional<TracePair> given_traces(const InputFile& input, const PerronData& perron) {
  if (!input.trace_a || !input.trace_b) return std::nullopt;
  return TracePair{*input.trace_a, *input.trace_b, perron.d * perron.d};
}

const char* homogeneity_summary(const HomogeneityReport& r) {
  if (r.all()) return "all-true";
  if (r.none()) return "all-false";
  return "mixed";
}

json cmd_perron(Context& ctx) {
  PerronData p = perron_data(ctx.input.inclusion());
  return {{"d", to_json(p.d)},
          {"d_squared", to_json(p.d * p.d)},
          {"alpha", to_json(p.alpha)},
          {"beta", to_json(p.beta)},
          {"standard_distortion", to_json(standard_distortion(p))}};
}

json cmd_extend(Context& ctx) {
  const PartialMatrix& delta = need_delta(ctx);
  validate_distortion(ctx.input.inclusion(), delta);
  DistortionMatrix full = complete_distortion(delta, ctx.tol);
  return {{"cycle_condition", true},
          {"eta", to_json(full.factorization->eta)},
          {"xi", to_json(full.factorization->xi)},
          {"extension", to_json(*full.extension)}};
}

json finite_dim_route(const Matrix& lambda, const std::optional<Vector>& m_a) {
  FiniteDimMarkov fm = finite_dim_markov(lambda, m_a);
  TracePair tp = finite_dim_trace_pair(fm);
  InclusionData inc = validate_inclusion(lambda);
  PerronData p = perron_data(inc);
  return {{"m_A", to_json(fm.m_a)},
          {"m_B", to_json(fm.m_b)},
          {"lambda_A", to_json(fm.lambda_a)},
          {"lambda_B", to_json(fm.lambda_b)},
          {"d_squared", to_json(fm.d_squared)},
          {"tr_A", to_json(tp.tr_a)},
          {"tr_B", to_json(tp.tr_b)},
          {"trace_matrix", to_json(finite_dim_trace_matrix(lambda, m_a))},
          {"distortion", to_json(finite_dim_distortion(lambda, m_a))},
          {"distortion_from_trace", to_json(distortion_from_trace(tp.tr_a, inc, p))}};
}

/// Unit dimension vector first; the file's m0 as a second variant.
json finite_dim_section(const Context& ctx) {
  const Matrix& lambda = ctx.input.lambda ? *ctx.input.lambda : ctx.input.dims;
  json out = finite_dim_route(lambda, std::nullopt);
  if (ctx.input.m0) out["with_m0"] = finite_dim_route(lambda, ctx.input.m0);
  return out;
}

json cmd_markov_trace(Context& ctx) {
  const bool finite_dim = ctx.input.lambda || ctx.input.m0;
  if (!ctx.input.delta && !finite_dim)
    throw ParseError("markov-trace needs delta, Lambda or m0 in the input", {{"field", "delta"}});
  json out = json::object();
  if (ctx.input.delta) {
    const InclusionData& inc = ctx.input.inclusion();
    TraceMatrices tm = trace_matrices(inc, *ctx.input.delta);
    TracePair tp = markov_trace(inc, *ctx.input.delta, ctx.tol);
    BasicConstructionTrace bc = basic_construction_trace(tp, inc, *ctx.input.delta);
    out["markov"] = {{"T", to_json(tm.t)},
                     {"T_tilde", to_json(tm.t_tilde)},
                     {"tr_A", to_json(tp.tr_a)},
                     {"tr_B", to_json(tp.tr_b)},
                     {"d_squared", to_json(tp.d_squared)},
                     {"basic_construction_trace", to_json(bc.trace)}};
  }
  if (finite_dim) out["finite_dimensional"] = finite_dim_section(ctx);
  return out;
}

json cmd_extremality(Context& ctx) {
  const PartialMatrix& delta = need_delta(ctx);
  const InclusionData& inc = ctx.input.inclusion();
  ExtremalityReport er = check_extremality(inc, delta, ctx.tol);
  json out{{"jones_equals_statistical", er.jones_equals_statistical},
           {"cycle_condition", er.cycle_condition_holds},
           {"extremal", er.extremal}};
  if (er.witness) out["witness"] = to_json(*er.witness);
  if (er.cycle_condition_holds) {
    PerronData p = perron_data(inc);
    std::optional<TracePair> supplied = given_traces(ctx.input, p);
    TracePair tp = supplied ? *supplied : markov_trace(inc, delta, ctx.tol);
    ExpectationCoefficients ec = expectation_coefficients(inc, delta, tp, p);
    ExtremalInclusionReport r = check_extremal_inclusion(inc, delta, tp, p, ctx.tol);
    out["markov_equals_minimal"] = r.e1;
    out["distortion_matches_trace"] = r.e2;
    out["trace_extremal"] = r.e3;
    out["lambda_markov"] = to_json(ec.lambda_markov);
    out["lambda_minimal"] = to_json(ec.lambda_minimal);
  }
  return out;
}

json cmd_homogeneity(Context& ctx) {
  const InclusionData& inc = ctx.input.inclusion();
  PerronData p = perron_data(inc);
  HomogeneityReport r = homogeneity_report(inc, need_delta(ctx), given_traces(ctx.input, p), p, ctx.tol);
  return {{"H2_row_sums_constant", r.h2_row_sums},
          {"H3_fixed_point", r.h3_fixed_point},
          {"H4_standard", r.h4_standard},
          {"H5_scalar_jones_trace", r.h5_scalar_jones_trace},
          {"H6_trace_preserved", r.h6_trace_preserved},
          {"H7_super_extremal", r.h7_super_extremal},
          {"row_sums", to_json(r.row_sums)},
          {"consistent", r.consistent()},
          {"summary", homogeneity_summary(r)}};
}

json level_json(const TowerLevel& level) {
  return {{"jones_level", level.jones_level}, {"distortion", to_json(level.distortion)}};
}

json cmd_tower(Context& ctx) {
  const InclusionData& inc = ctx.input.inclusion();
  const Matrix sigma = standard_distortion(perron_data(inc));
  Matrix start = completed_delta(ctx);
  json out = json::object();
  if (!ctx.options.steps && ctx.options.max_iter) {
    FixedPointOptions fp;
    fp.max_iter = *ctx.options.max_iter;
    TowerTrace t = iterate_to_fixed_point(start.as(NumberMode::kFloat), inc, fp, ctx.tol);
    out["fixed_point"] = to_json(t.levels.back().distortion);
    out["standard_distortion"] = to_json(sigma);
    ctx.diagnostics["iterations"] = t.iterations;
    ctx.diagnostics["residual"] = Scalar(t.residual).str();
    ctx.diagnostics["converged"] = t.converged;
    return out;
  }
  const std::size_t steps = ctx.options.steps.value_or(kDefaultTowerSteps);
  TowerTrace t = jones_tower(start, inc, steps, ctx.tol);
  json even = json::array();
  json odd = json::array();
  for (const TowerLevel& level : t.levels) {
    json entry = level_json(level);
    if (level.parity == Parity::kEven) {
      entry["step"] = level.jones_level / 2;
      even.push_back(std::move(entry));
    } else {
      odd.push_back(std::move(entry));
    }
  }
  out["levels"] = std::move(even);
  out["odd_levels"] = std::move(odd);
  out["standard_distortion"] = to_json(sigma);
  ctx.diagnostics["steps"] = steps;
  ctx.diagnostics["residual"] = Scalar(relative_residual(t.levels.back().distortion, sigma)).str();
  return out;
}

json cmd_downward(Context& ctx) {
  const InclusionData& inc = ctx.input.inclusion();
  const PartialMatrix& delta = need_delta(ctx);
  FeasibilityResult r = downward_feasibility(inc, delta, ctx.options.feasibility, ctx.tol);
  json out{{"status", to_string(r.status)}, {"certificate", r.certificate.is_null() ? json::object() : r.certificate}};
  if (r.pi) out["pi"] = to_json(*r.pi);
  if (r.status == FeasibilityStatus::kFeasible) {
    PartialMatrix gamma = downward_distortion(delta, *r.pi);
    out["gamma"] = to_json(gamma);
    PartialMatrix up = basic_construction_distortion(gamma, inc.jones().transpose());
    bool consistent = true;
    for (const Edge& e : inc.support().edges()) consistent = consistent && up.value(e.i, e.j) == delta.value(e.i, e.j);
    if (!consistent) {
      consistent = true;
      for (const Edge& e : inc.support().edges())
        consistent = consistent && ctx.tol.close(up.value(e.i, e.j), delta.value(e.i, e.j));
    }
    out["upward_consistent"] = consistent;
  }
  return out;
}

Vector parse_rho(const Context& ctx) {
  Vector rho;
  std::stringstream in(*ctx.options.rho);
  std::string item;
  try {
    while (std::getline(in, item, ',')) rho.push_back(parse_scalar(item, ctx.input.mode));
  } catch (const std::exception& e) {
    throw ParseError(std::string("--rho: ") + e.what(), {{"field", "--rho"}});
  }
  if (rho.size() != ctx.input.dims.rows())
    throw ParseError("--rho must list one weight per row of D", {{"field", "--rho"}, {"expected", ctx.input.dims.rows()}});
  return rho;
}

json cmd_morita(Context& ctx) {
  const InclusionData& inc = ctx.input.inclusion();
  Matrix delta = completed_delta(ctx);
  if (ctx.options.rho) {
    Vector rho = parse_rho(ctx);
    Matrix image = morita_distortion(delta, inc.jones(), rho);
    RealizabilityResult r = realizability_check(restrict_to_support(image, inc.dims()), inc, ctx.tol);
    return {{"rho", to_json(rho)}, {"distortion", to_json(image)}, {"realizable", r.realizable}};
  }
  PerronData p = perron_data(inc);
  Vector rho = rescale_to_standard(delta, inc, p, ctx.tol);
  Matrix image = morita_distortion(delta, inc.jones(), rho);
  Matrix sigma = standard_distortion(p);
  ctx.diagnostics["max_deviation_from_standard"] = Scalar(max_abs_diff(image, sigma)).str();
  return {{"rho", to_json(rho)}, {"distortion", to_json(image)}, {"standard_distortion", to_json(sigma)}};
}

json cmd_realizable(Context& ctx) {
  const InclusionData& inc = ctx.input.inclusion();
  const PartialMatrix& delta = need_delta(ctx);
  validate_distortion(inc, delta);
  RealizabilityResult r = realizability_check(delta, inc, ctx.tol);
  Vector column_sums(inc.b(), Scalar(0));
  for (const Edge& e : inc.support().edges()) column_sums[e.j] += inc.dims()(e.i, e.j) / delta.value(e.i, e.j);
  json out{{"realizable", r.realizable}, {"column_sums", to_json(column_sums)}};
  if (r.eta_witness) out["eta"] = to_json(*r.eta_witness);
  if (r.violation) out["violated_column"] = *r.violation;
  return out;
}

json cmd_loopbasis(Context& ctx) {
  if (!ctx.input.m0) throw ParseError("loopbasis-verify needs m0 in the input", {{"field", "m0"}});
  const Matrix& lambda = ctx.input.lambda ? *ctx.input.lambda : ctx.input.dims;
  LoopAlgebraPair pair = build_loop_algebra(*ctx.input.m0, lambda);
  PimsnerPopaBasis basis = pimsner_popa_basis(pair);
  const std::vector<LoopElement> all = basis.all();
  PimsnerPopaReport pp = verify_pp_identity(pair, all);

  Eigen::MatrixXd transfer = central_transfer_matrix(pair);
  Matrix transfer_m = Matrix::from_eigen(transfer);
  double transfer_dev = 0.0;
  for (std::size_t i = 0; i < pair.k; ++i) {
    std::vector<double> unit_i(pair.k, 0.0);
    unit_i[i] = 1.0;
    transfer_dev = std::max(transfer_dev, central_transfer(pair, all, unit_i).max_deviation);
  }
  const std::size_t n = ctx.options.steps.value_or(kDefaultDensitySteps);
  DensitySequence seq = density_sequence(pair, all, n);
  double limit_gap = 0.0;
  for (std::size_t i = 0; i < pair.k; ++i)
    limit_gap = std::max(limit_gap, std::abs(seq.closed_form.back()[i] - seq.limit[i]));

  ctx.diagnostics["reconstruction_error"] = Scalar(pp.reconstruction_error).str();
  ctx.diagnostics["index_error"] = Scalar(pp.index_error).str();
  ctx.diagnostics["transfer_deviation"] = Scalar(transfer_dev).str();
  ctx.diagnostics["density_deviation"] = Scalar(seq.max_deviation).str();
  ctx.diagnostics["density_limit_gap"] = Scalar(limit_gap).str();
  return {{"basis_size", pp.basis_size},
          {"parallel_elements", basis.parallel.size()},
          {"crossing_elements", basis.crossing.size()},
          {"n0_loops", pair.n0_loops.size()},
          {"n1_loops", pair.n1_loops.size()},
          {"loops_checked", pp.loops_checked},
          {"index", Scalar(pair.d_squared()).str()},
          {"lambda0", to_json(pair.lambda0)},
          {"lambda1", to_json(pair.lambda1)},
          {"pimsner_popa_holds", pp.holds(ctx.tol.eps * 100.0)},
          {"central_transfer", to_json(transfer_m)},
          {"density_steps", n},
          {"density_final", to_json(seq.closed_form.back())},
          {"density_limit", to_json(seq.limit)}};
}

using Handler = std::function<json(Context&)>;

json cmd_report_all(Context& ctx);

const std::map<std::string, Handler>& handlers() {
  static const std::map<std::string, Handler> table{
      {"perron", cmd_perron},
      {"extend", cmd_extend},
      {"markov-trace", cmd_markov_trace},
      {"homogeneity", cmd_homogeneity},
      {"tower", cmd_tower},
      {"downward", cmd_downward},
      {"morita-rescale", cmd_morita},
      {"realizable", cmd_realizable},
      {"loopbasis-verify", cmd_loopbasis},
      {"report-all", cmd_report_all},
  };
  return table;
}

json cmd_report_all(Context& ctx) {
  struct Stage {
    const char* name;
    Handler handler;
    bool needs_delta;
    bool needs_m0;
  };
  const std::vector<Stage> stages{
      {"perron", cmd_perron, false, false},
      {"extend", cmd_extend, true, false},
      {"markov-trace", cmd_markov_trace, false, false},
      {"extremality", cmd_extremality, true, false},
      {"homogeneity", cmd_homogeneity, true, false},
      {"downward", cmd_downward, true, false},
      {"realizable", cmd_realizable, true, false},
      {"tower", cmd_tower, true, false},
      {"morita-rescale", cmd_morita, true, false},
      {"loopbasis-verify", cmd_loopbasis, false, true},
  };
  json out = json::object();
  json stage_diagnostics = json::object();
  std::size_t failures = 0;
  out["validate"] = {{"a", ctx.input.dims.rows()},
                     {"b", ctx.input.dims.cols()},
                     {"D", to_json(ctx.input.dims)},
                     {"Delta", to_json(ctx.input.inclusion().jones())}};
  for (const Stage& stage : stages) {
    if ((stage.needs_delta && !ctx.input.delta) || (stage.needs_m0 && !ctx.input.m0) ||
        (std::string(stage.name) == "markov-trace" && !ctx.input.delta && !ctx.input.lambda && !ctx.input.m0)) {
      out[stage.name] = {{"skipped", "input lacks the data this stage needs"}};
      continue;
    }
    Context inner{ctx.input, ctx.options, ctx.tol};
    try {
      out[stage.name] = stage.handler(inner);
    } catch (const Error& e) {
      out[stage.name] = {{"error", e.to_json()}};
      ++failures;
    }
    if (!inner.diagnostics.empty()) stage_diagnostics[stage.name] = inner.diagnostics;
  }
  ctx.diagnostics["stages"] = stage_diagnostics;
  ctx.diagnostics["failed_stages"] = failures;
  return out;
}

}  // namespace

json Options::to_json() const {
  json out = json::object();
  if (mode) out["mode"] = *mode == NumberMode::kFloat ? "float" : "rational";
  if (tol) out["tol"] = *tol;
  if (max_iter) out["max_iter"] = *max_iter;
  if (steps) out["steps"] = *steps;
  if (rho) out["rho"] = *rho;
  out["downward_mode"] = feasibility == FeasibilityMode::kStrict ? "strict" : "markov-tunnel";
  return out;
}

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, handler] : handlers()) out.push_back(name);
    return out;
  }();
  return names;
}

bool is_command(const std::string& name) { return handlers().count(name) != 0; }

double resolve_tolerance(const Options& options, const InputFile& input) {
  if (options.tol) return *options.tol;
  if (input.tolerance) return *input.tolerance;
  if (const char* env = std::getenv("MFD_TOLERANCE"); env && *env) {
    char* end = nullptr;
    const double value = std::strtod(env, &end);
    if (*end != '\0' || !(value > 0.0)) throw ParseError("MFD_TOLERANCE must be a positive number", {{"field", "MFD_TOLERANCE"}});
    return value;
  }
  return Tolerance::kDefaultEps;
}

Report run(const std::string& command, const InputFile& input, const Options& options) {
  auto it = handlers().find(command);
  if (it == handlers().end()) throw ParseError("unknown command " + command, {{"field", "command"}});
  Report report;
  report.command = command;
  report.input = {{"source", input.source}, {"digest", "fnv1a64:" + input.digest}};
  report.flags = options.to_json();
  report.flags["number_mode"] = input.mode == NumberMode::kFloat ? "float" : "rational";
  Context ctx{input, options, Tolerance{resolve_tolerance(options, input)}};
  report.flags["tolerance"] = ctx.tol.eps;
  report.result = it->second(ctx);
  report.diagnostics = std::move(ctx.diagnostics);
  if (command == "report-all" && report.diagnostics["failed_stages"].get<std::size_t>() > 0)
    report.exit_code = kExitDomainError;
  return report;
}

Report run_file(const std::string& command, const std::string& path, const Options& options) {
  Report report;
  report.command = command;
  report.input = {{"source", path}};
  report.flags = options.to_json();
  try {
    InputFile input = load_input(path, options.mode);
    report.input["digest"] = "fnv1a64:" + input.digest;
    return run(command, input, options);
  } catch (const ParseError& e) {
    report.error = e.to_json();
    report.exit_code = kExitParseError;
  } catch (const Error& e) {
    report.error = e.to_json();
    report.exit_code = kExitDomainError;
  }
  return report;
}

}  // namespace mfd::cli
