#include "symcap/experiments.hpp"

#include <chrono>
#include <cmath>
#include <limits>

#include "parallel.hpp"

namespace symcap {

namespace {

using Clock = std::chrono::steady_clock;

double ln_rounded(const Rational& x, mpfr_rnd_t rounding) {
  BigFloat v = ln_of(x, 80, rounding);
  return mpfr_get_d(v.get(), rounding);
}

Json rationals(const std::vector<Rational>& xs) {
  Json a = Json::array();
  for (const auto& x : xs) a.push_back(rational_to_json(x));
  return a;
}

Json verdicts_json(const std::vector<Verdict>& vs) {
  Json a = Json::array();
  for (const auto& v : vs) a.push_back({{"name", v.name}, {"pass", v.pass}, {"detail", v.detail}});
  return a;
}

Json common_inputs(const ExperimentConfig& c) {
  return {{"precision_bits", c.precision_bits},
          {"threshold", rational_to_json(c.threshold)},
          {"oracle_limit", to_string(c.oracle_limit)},
          {"seed", c.seed}};
}

// round(lo * 10^(j / per_decade)) for j = 0, 1, ... up to hi, plus hi.
std::vector<Integer> log_grid(const Integer& lo, const Integer& hi, unsigned per_decade) {
  std::vector<Integer> out;
  BigFloat ten(Rational(10), 128);
  BigFloat base(Rational(lo), 128);
  for (unsigned long j = 0;; ++j) {
    BigFloat e(make_rational(Integer(j), Integer(per_decade)), 128);
    BigFloat p(128);
    mpfr_pow(p.get(), ten.get(), e.get(), MPFR_RNDN);
    mpfr_mul(p.get(), p.get(), base.get(), MPFR_RNDN);
    Integer k;
    mpfr_get_z(k.get_mpz_t(), p.get(), MPFR_RNDN);
    if (k > hi) break;
    if (out.empty() || out.back() != k) out.push_back(k);
  }
  if (out.empty() || out.back() != hi) out.push_back(hi);
  return out;
}

void finish(RunReport& r, Clock::time_point start) {
  r.wall_seconds = std::chrono::duration<double>(Clock::now() - start).count();
}

std::vector<std::string> pair_cells(const Rational& r) {
  return {r.get_num().get_str(10), r.get_den().get_str(10)};
}

}  // namespace

CapacityLimits ExperimentConfig::limits() const {
  CapacityLimits l;
  l.oracle_budget_limit = oracle_limit;
  return l;
}

void ExperimentConfig::validate() const {
  if (kmax < 1) throw InvalidDomain("kmax must be positive");
  if (per_decade == 0) throw InvalidDomain("per_decade must be positive");
  if (precision_bits < 53) throw InvalidDomain("precision must be at least 53 bits");
  if (oracle_limit < 1) throw InvalidDomain("oracle limit must be positive");
  if (threshold <= 0) throw InvalidDomain("threshold must be positive");
  if (!out_dir.empty() && !std::filesystem::is_directory(out_dir))
    throw Error("output directory does not exist: " + out_dir.string());
}

bool RunReport::passed() const {
  for (const auto& v : verdicts)
    if (!v.pass) return false;
  return true;
}

RunReport run_lemma_cap_sweep(const ExperimentConfig& config) {
  config.validate();
  auto start = Clock::now();
  RunReport r;
  r.command = "lemma-cap";
  const ParameterVector& v = config.params;
  const std::size_t M = config.M;
  if (M < 1 || M >= v.size()) throw InvalidDomain("the active index M must satisfy 1 <= M < N");
  Admissibility adm = validate_parameters(v, config.threshold);
  const Rational& BM = v.B[M - 1];
  Integer lo = ceil_of(power(BM, static_cast<long>(M + 1)));
  Integer hi = floor_of(power(v.B[M], static_cast<long>(M + 1)));
  if (lo > hi) throw InvalidDomain("empty k range for this M");

  std::vector<Integer> ks = log_grid(lo, hi, config.per_decade);
  if (config.anchor && config.anchor->first >= lo && config.anchor->first <= hi) {
    ks.push_back(config.anchor->first);
    std::sort(ks.begin(), ks.end());
    ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
  }

  r.inputs = common_inputs(config);
  r.inputs["params"] = to_json(v);
  r.inputs["M"] = M;
  r.inputs["per_decade"] = config.per_decade;
  r.inputs["ratio_window"] = {rational_to_json(config.ratio_low), rational_to_json(config.ratio_high)};

  CapacitySource source = CapacitySource::from_parameters(v, config.precision_bits);
  CapacityLimits limits = config.limits();
  std::vector<std::optional<CapacityInterval>> values(ks.size());
  std::vector<std::string> skipped(ks.size());
  detail::parallel_for(ks.size(), config.threads, [&](std::size_t i) {
    try {
      values[i] = capacity_interval(source, ks[i], limits);
    } catch (const ResourceLimit& e) {
      skipped[i] = e.what();
    }
  });

  r.csv.header = {"k", "c_k_num", "c_k_den", "ratio", "exact", "gap"};
  bool in_window = true;
  double min_ratio = std::numeric_limits<double>::infinity(), max_ratio = 0, max_gap = 0;
  std::size_t exact_count = 0;
  Json skipped_json = Json::array();
  std::string first_violation;
  for (std::size_t i = 0; i < ks.size(); ++i) {
    if (!values[i]) {
      skipped_json.push_back({{"k", to_string(ks[i])}, {"reason", skipped[i]}});
      continue;
    }
    const CapacityInterval& c = *values[i];
    Rational scale2 = Rational(ks[i]) * BM;  // ratio^2 = c^2 / (k B_M)
    double ratio = std::sqrt(to_double(c.lower * c.lower / scale2));
    double gap = c.lower > 0 ? to_double((c.upper - c.lower) / c.lower) : 0.0;
    bool ok = c.lower * c.lower >= config.ratio_low * config.ratio_low * scale2 &&
              c.upper * c.upper <= config.ratio_high * config.ratio_high * scale2;
    if (!ok && first_violation.empty()) first_violation = "k = " + to_string(ks[i]) + ", ratio " + format_double(ratio);
    in_window = in_window && ok;
    min_ratio = std::min(min_ratio, ratio);
    max_ratio = std::max(max_ratio, std::sqrt(to_double(c.upper * c.upper / scale2)));
    max_gap = std::max(max_gap, gap);
    exact_count += c.exact;
    auto cells = pair_cells(c.lower);
    r.csv.rows.push_back({to_string(ks[i]), cells[0], cells[1], format_double(ratio), c.exact ? "1" : "0",
                          format_double(gap)});
  }

  r.results = {{"range", {to_string(lo), to_string(hi)}},
               {"samples", ks.size()},
               {"computed", r.csv.rows.size()},
               {"exact", exact_count},
               {"min_ratio", min_ratio},
               {"max_ratio", max_ratio},
               {"max_gap", max_gap},
               {"admissible", adm.admissible()},
               {"skipped", skipped_json}};
  if (!adm.admissible()) r.results["test_scale"] = adm.failures;

  r.verdicts.push_back({"ratio window", in_window,
                        in_window ? "ratio in [" + to_string(config.ratio_low) + ", " + to_string(config.ratio_high) +
                                        "] at every computed k"
                                  : "first violation at " + first_violation});
  r.verdicts.push_back({"coverage", skipped_json.empty(),
                        std::to_string(r.csv.rows.size()) + " of " + std::to_string(ks.size()) + " k computed"});
  if (config.anchor) {
    const auto& [k, expected] = *config.anchor;
    auto it = std::find(ks.begin(), ks.end(), k);
    bool ok = false;
    std::string detail = "k = " + to_string(k) + " outside the sweep";
    if (it != ks.end() && values[it - ks.begin()]) {
      const CapacityInterval& c = *values[it - ks.begin()];
      ok = c.exact && c.lower == expected;
      detail = "c_" + to_string(k) + " = " + to_string(c.lower) + (c.exact ? "" : " (not certified)") +
               ", expected " + to_string(expected);
    }
    r.verdicts.push_back({"anchor", ok, detail});
  }
  finish(r, start);
  return r;
}

RunReport run_ched_warmup(const ExperimentConfig& config) {
  config.validate();
  auto start = Clock::now();
  RunReport r;
  r.command = "ched";
  if (config.eps <= 0 || config.eps >= 1) throw InvalidDomain("eps must lie in (0, 1)");
  if (config.volume <= 1) throw InvalidDomain("volume must exceed 1");
  if (config.k0_min < 0 || config.k0_min > config.k0_max) throw InvalidDomain("bad k0 range");
  if (config.weyl_constant <= 0) throw InvalidDomain("Weyl constant must be positive");

  const Rational& eps = config.eps;
  const Rational& V = config.volume;
  Integer m = ceil_of(2 * (V - Rational(1, 2)) / (eps * eps));
  WeightMultiset w({{Rational(1), Integer(1)}, {eps, m}});
  Rational model_area = w.area();

  r.inputs = common_inputs(config);
  r.inputs["eps"] = rational_to_json(eps);
  r.inputs["volume"] = rational_to_json(V);
  r.inputs["k0_range"] = {to_string(config.k0_min), to_string(config.k0_max)};
  r.inputs["weyl_constant"] = rational_to_json(config.weyl_constant);

  if (!config.k0_max.fits_ulong_p()) throw ResourceLimit("k0 range too large");
  std::vector<Rational> caps = multiset_capacity_sweep(w, config.k0_max.get_ui(), config.limits());

  r.csv.header = {"k0", "c_num", "c_den", "ball_num", "ball_den", "holds", "weyl_side"};
  bool all_hold = true;
  Json window = Json::array();
  double C = to_double(config.weyl_constant);
  for (Integer k = config.k0_min; k <= config.k0_max; ++k) {
    const Rational& c = caps[k.get_ui()];
    Rational ball = ball_capacity(1, k);
    bool holds = c <= ball + 1;
    all_hold = all_hold && holds;
    double weyl_side = std::sqrt(to_double(V * Rational(k))) / C;
    if (weyl_side > to_double(ball + 1)) window.push_back(to_string(k));
    auto cc = pair_cells(c), bc = pair_cells(ball);
    r.csv.rows.push_back({to_string(k), cc[0], cc[1], bc[0], bc[1], holds ? "1" : "0", format_double(weyl_side)});
  }

  r.results = {{"weights", to_json(w)}, {"m", to_string(m)}, {"area", rational_to_json(model_area)},
               {"contradiction_window", window}};
  try {
    r.results["profile"] = to_json(realize(w));
  } catch (const ResourceLimit& e) {
    r.results["profile"] = std::string("not realized: ") + e.what();
  }
  bool area_ok = model_area >= V && model_area <= V + 1;
  r.verdicts.push_back({"area", area_ok, "area " + to_string(model_area)});
  r.verdicts.push_back({"warm-up inequality", all_hold,
                        all_hold ? "c_k0 <= c_k0(B(1)) + 1 for every k0 in range" : "inequality fails for some k0"});
  finish(r, start);
  return r;
}

RunReport run_notsame(const ExperimentConfig& config) {
  config.validate();
  auto start = Clock::now();
  RunReport r;
  r.command = "notsame";
  const Rational& eps = config.eps;
  if (eps <= 0 || eps >= 1) throw InvalidDomain("eps must lie in (0, 1)");
  if (!config.kmax.fits_ulong_p()) throw ResourceLimit("kmax too large for a dense sweep");
  const std::uint64_t K = config.kmax.get_ui();

  WeightMultiset w = WeightMultiset({{Rational(1), Integer(1)}}).merged_with(ellipsoid_weights(Ellipsoid(eps, 1 / eps)));
  MomentProfile x2 = realize(w);
  Ellipsoid ball = Ellipsoid::ball(1);

  r.inputs = common_inputs(config);
  r.inputs["eps"] = rational_to_json(eps);
  r.inputs["kmax"] = K;

  InclusionBound incl = inclusion_distance(Domain{ball}, Domain{x2});
  Rational scale = std::max(incl.scale_uv, incl.scale_vu);

  std::vector<Rational> cx = domain_capacity_sweep(Domain{x2}, K, config.limits());
  r.csv.header = {"k", "c_x2_num", "c_x2_den", "c_ball_num", "c_ball_den", "log_ratio"};
  double sup = 0;
  Integer sup_k = 0;
  for (std::uint64_t k = 1; k <= K; ++k) {
    Rational cb = ball_capacity(1, Integer(k));
    double lr = ln_rounded(cx[k] / cb, MPFR_RNDU);
    if (lr > sup) {
      sup = lr;
      sup_k = k;
    }
    auto xc = pair_cells(cx[k]), bc = pair_cells(cb);
    r.csv.rows.push_back({std::to_string(k), xc[0], xc[1], bc[0], bc[1], format_double(lr)});
  }

  r.results = {{"profile", to_json(x2)},
               {"inclusion_scale", rational_to_json(scale)},
               {"inclusion_distance", incl.value},
               {"capacity_sup", sup},
               {"capacity_sup_k", to_string(sup_k)}};
  r.verdicts.push_back({"inclusion distance", scale == 1 + 1 / eps,
                        "max inclusion scale " + to_string(scale) + ", expected " + to_string(1 + 1 / eps)});
  double bound = std::log(2.0) + config.sup_slack;
  r.verdicts.push_back({"capacity sup", sup <= bound,
                        "sup " + format_double(sup) + " at k = " + to_string(sup_k) + ", bound " + format_double(bound)});
  r.verdicts.push_back({"ordering", incl.value >= sup,
                        "inclusion distance " + format_double(incl.value) + " >= capacity sup"});
  finish(r, start);
  return r;
}

RunReport run_chart(const ExperimentConfig& config) {
  config.validate();
  auto start = Clock::now();
  RunReport r;
  r.command = "chart";
  r.inputs = common_inputs(config);
  r.inputs["grid"] = rationals(config.grid);
  r.inputs["mode"] = config.mode == SnapMode::Exact ? "exact" : "approx";

  std::vector<ChartPoint> pts(config.grid.size());
  detail::parallel_for(pts.size(), config.threads,
                       [&](std::size_t i) { pts[i] = chart_embed({config.grid[i]}, config.mode, config.precision_bits); });

  r.csv.header = {"x", "y_1", "y_2", "B_1", "B_2", "snap_error_1", "snap_error_2"};
  double max_snap = 0;
  for (const auto& p : pts) {
    r.csv.rows.push_back({to_string(p.x[0]), to_string(p.y[0]), to_string(p.y[1]), to_string(p.B.B[0]),
                          to_string(p.B.B[1]), format_double(p.snap_error[0]), format_double(p.snap_error[1])});
    for (double e : p.snap_error) max_snap = std::max(max_snap, e);
  }

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) pairs.emplace_back(i, j);
  std::vector<SandwichSample> samples(pairs.size());
  detail::parallel_for(pairs.size(), config.threads, [&](std::size_t s) {
    auto [i, j] = pairs[s];
    Rational d = pts[i].x[0] - pts[j].x[0];
    MetricValue m = q_metric(pts[i].B.B, pts[j].B.B, config.precision_bits);
    samples[s] = {to_double(d < 0 ? Rational(-d) : d), m.lower.to_double(), m.upper.to_double()};
  });
  SandwichFit fit = fit_sandwich(samples);

  r.results = {{"points", pts.size()}, {"pairs", pairs.size()}, {"max_snap_error", max_snap},
               {"A", fit.A}, {"B", fit.B}};
  bool ok = fit.A <= config.max_A && fit.B <= config.max_B;
  r.verdicts.push_back({"sandwich constants", ok,
                        "A = " + format_double(fit.A) + ", B = " + format_double(fit.B) + " (limits " +
                            format_double(config.max_A) + ", " + format_double(config.max_B) + ")"});
  finish(r, start);
  return r;
}

RunReport run_certificate(const ExperimentConfig& config) {
  config.validate();
  auto start = Clock::now();
  RunReport r;
  r.command = "certificate";
  r.inputs = common_inputs(config);
  r.inputs["grid"] = rationals(config.grid);
  r.inputs["per_decade"] = config.per_decade;

  std::vector<ParameterVector> vs;
  for (const auto& x : config.grid) vs.push_back(chart_embed({x}, config.mode, config.precision_bits).B);
  std::vector<std::pair<ParameterVector, ParameterVector>> pairs;
  std::vector<std::pair<std::size_t, std::size_t>> index;
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (std::size_t j = 0; j < vs.size(); ++j) {
      pairs.emplace_back(vs[i], vs[j]);
      index.emplace_back(i, j);
    }

  CertificateOptions options;
  options.policy.per_decade = config.per_decade;
  options.limits.oracle_budget_limit = config.oracle_limit;
  options.precision_bits = config.precision_bits;
  options.threads = config.threads;
  QuasiFlatCertificate cert = certificate(pairs, options);

  r.csv.header = {"pair_id", "x_u", "x_v", "metric", "lower", "upper", "witness_k", "gap", "volume", "skipped"};
  bool lower_ok = true, upper_ok = true, ordered = true, covered = true;
  const double tol = 1e-9;
  Json notes = Json::array();
  for (const auto& row : cert.rows) {
    auto [i, j] = index[row.id];
    r.csv.rows.push_back({std::to_string(row.id), to_string(config.grid[i]), to_string(config.grid[j]),
                          format_double(row.metric), format_double(row.lower), format_double(row.upper),
                          to_string(row.witness_k), format_double(row.upper - row.lower), format_double(row.volume),
                          row.skipped ? "1" : "0"});
    if (!row.reason.empty()) notes.push_back({{"pair_id", row.id}, {"note", row.reason}});
    if (row.skipped) {
      covered = false;
      continue;
    }
    lower_ok = lower_ok && row.lower >= row.metric / 4 - 2;
    upper_ok = upper_ok && row.upper <= 2 * row.metric + 1 + tol;
    ordered = ordered && row.lower <= row.upper;
  }
  r.results = {{"pairs", cert.rows.size()}, {"A", cert.fit.A}, {"B", cert.fit.B}, {"notes", notes},
               {"parameters", Json::array()}};
  for (std::size_t i = 0; i < vs.size(); ++i)
    r.results["parameters"].push_back({{"x", rational_to_json(config.grid[i])}, {"B", to_json(vs[i])}});
  r.verdicts.push_back({"lower bound", lower_ok, "lower >= metric/4 - 2 on every pair"});
  r.verdicts.push_back({"upper bound", upper_ok, "upper <= 2 metric + 1 on every pair"});
  r.verdicts.push_back({"consistency", ordered && cert.consistent, "lower <= upper on every pair"});
  r.verdicts.push_back({"coverage", covered, "no pair skipped"});
  finish(r, start);
  return r;
}

std::string report_document(const RunReport& report) {
  Json doc = {{"command", report.command},
              {"inputs", report.inputs},
              {"results", report.results},
              {"verdicts", verdicts_json(report.verdicts)},
              {"passed", report.passed()}};
  return doc.dump(2) + "\n";
}

void emit_report(const RunReport& report, const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) throw Error("output directory does not exist: " + dir.string());
  write_text_file(dir / (report.command + ".json"), report_document(report));
  write_text_file(dir / (report.command + ".csv"), report.csv.str());
}

}  // namespace symcap
