// symcap: command-line front end for capacities, weights, quasi-flat
// families and the distance experiments.

#include <chrono>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "symcap/experiments.hpp"

using namespace symcap;

namespace {

struct Common {
  std::string kmax = "2000";
  std::string mode = "exact";
  long precision = kDefaultPrecisionBits;
  int threshold = 64;
  std::string oracle_limit = "400000";
  std::string out;
  std::uint64_t seed = 0;
  unsigned threads = 0;
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("--kmax", c.kmax, "Largest capacity index");
  app->add_option("--mode", c.mode, "Weight mode")->check(CLI::IsMember({"exact", "approx"}));
  app->add_option("--precision", c.precision, "Working precision in bits")->check(CLI::Range(53L, 1L << 20));
  app->add_option("--threshold", c.threshold, "Lower bound on parameters")->check(CLI::IsMember({8, 64}));
  app->add_option("--oracle-limit", c.oracle_limit, "Largest 2k handed to the dynamic-programming oracle");
  app->add_option("--out", c.out, "Directory for the JSON report and CSV");
  app->add_option("--seed", c.seed, "Recorded in the report");
  app->add_option("--threads", c.threads, "Worker threads (0: all cores)");
}

ExperimentConfig to_config(const std::string& command, const Common& c) {
  ExperimentConfig cfg;
  cfg.command = command;
  cfg.kmax = parse_integer(c.kmax);
  cfg.precision_bits = c.precision;
  cfg.threshold = c.threshold;
  cfg.oracle_limit = parse_integer(c.oracle_limit);
  cfg.out_dir = c.out;
  cfg.seed = c.seed;
  cfg.threads = c.threads;
  cfg.mode = c.mode == "exact" ? SnapMode::Exact : SnapMode::Approx;
  cfg.validate();
  return cfg;
}

std::vector<Rational> parse_list(const std::string& text) {
  std::vector<Rational> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(parse_rational(item));
  if (out.empty()) throw FormatError("empty list");
  return out;
}

// x-points from a CSV whose first column holds rationals; a non-numeric
// first line is taken as a header.
std::vector<Rational> read_grid_csv(const std::string& path) {
  std::stringstream in(read_text_file(path));
  std::vector<Rational> out;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    std::string cell = line.substr(0, line.find(','));
    if (cell.empty()) continue;
    try {
      out.push_back(parse_rational(cell));
    } catch (const FormatError&) {
      if (!first) throw FormatError(path + ": bad x value \"" + cell + "\"");
    }
    first = false;
  }
  return out;
}

DomainSpec spec_from(const std::string& file, const std::string& params) {
  if (!file.empty() && !params.empty()) throw FormatError("give either a domain file or --params, not both");
  if (!file.empty()) return load_domain_spec(file);
  if (params.empty()) throw FormatError("a domain file or --params is required");
  DomainSpec s;
  s.type = "quasiflat";
  s.params = parse_parameters(params);
  Admissibility a = validate_parameters(*s.params, 0);
  if (a.positive && a.integral && a.representable) s.domain = build_weights(*s.params);
  return s;
}

CapacitySource source_from(const DomainSpec& spec, const Common& c) {
  if (c.mode == "approx" && spec.params) return CapacitySource::from_parameters(*spec.params, c.precision);
  return capacity_source(spec, c.precision);
}

Domain exact_domain(const DomainSpec& spec) {
  if (!spec.domain) throw RepresentabilityError("this domain has irrational weights; only capacity brackets exist");
  return *spec.domain;
}

int finish_report(const RunReport& r, const Common& c) {
  std::cout << report_document(r);
  if (!c.out.empty()) emit_report(r, c.out);
  std::cout << "wall_seconds: " << r.wall_seconds << "\n";
  for (const auto& v : r.verdicts) std::cerr << (v.pass ? "PASS " : "FAIL ") << v.name << ": " << v.detail << "\n";
  return r.passed() ? 0 : 1;
}

int print_json(const Json& j, const Common& c, const std::string& name, const std::string& csv = {}) {
  std::string doc = j.dump(2) + "\n";
  std::cout << doc;
  if (!c.out.empty()) {
    write_text_file(std::filesystem::path(c.out) / (name + ".json"), doc);
    if (!csv.empty()) write_text_file(std::filesystem::path(c.out) / (name + ".csv"), csv);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ECH capacities of toric domains and symplectic distance bounds"};
  app.require_subcommand(1);
  Common common;

  std::string domain_file, params, k_text, engine = "auto";
  auto* capacity = app.add_subcommand("capacity", "c_k of a domain, or c_0..c_kmax with --sweep");
  bool sweep = false;
  capacity->add_option("domain", domain_file, "Domain description file");
  capacity->add_option("--params", params, "Quasi-flat parameters, e.g. 64,4096");
  capacity->add_option("--k", k_text, "Single index (default: kmax)");
  capacity->add_flag("--sweep", sweep, "All k from 0 to kmax");
  capacity->add_option("--engine", engine)->check(CLI::IsMember({"auto", "oracle", "fast"}));
  add_common(capacity, common);

  auto* weights = app.add_subcommand("weights", "Weight expansion of a domain");
  weights->add_option("domain", domain_file, "Domain description file")->required();
  add_common(weights, common);

  auto* realize_cmd = app.add_subcommand("realize", "Moment profile realizing a weight multiset");
  std::string realize_limit = "10000";
  realize_cmd->add_option("domain", domain_file, "Domain description file")->required();
  realize_cmd->add_option("--limit", realize_limit, "Largest total multiplicity to realize");
  add_common(realize_cmd, common);

  auto* build_flat = app.add_subcommand("build-flat", "Validate a parameter vector and build its weights");
  std::string pad_count, pad_bound;
  bool with_profile = false;
  build_flat->add_option("--params", params, "Parameters, e.g. 64,4096")->required();
  build_flat->add_option("--padding-count", pad_count);
  build_flat->add_option("--padding-bound", pad_bound);
  build_flat->add_flag("--realize", with_profile, "Also emit the moment profile");
  add_common(build_flat, common);

  auto* chart = app.add_subcommand("chart", "Chart embedding of points and its sandwich constants");
  std::string points, grid_file;
  chart->add_option("--points", points, "Comma-separated x values");
  chart->add_option("--grid", grid_file, "CSV of x values");
  add_common(chart, common);

  auto* distance = app.add_subcommand("distance", "Bounds on the distance between two domains");
  std::string u_file, v_file, u_params, v_params;
  distance->add_option("--u", u_file, "First domain file");
  distance->add_option("--v", v_file, "Second domain file");
  distance->add_option("--u-params", u_params);
  distance->add_option("--v-params", v_params);
  unsigned per_decade = 16;
  distance->add_option("--per-decade", per_decade);
  add_common(distance, common);

  auto* certificate_cmd = app.add_subcommand("certificate", "Distance certificate on a grid of charted points");
  std::string grid = "-4,-2,0,2,4";
  certificate_cmd->add_option("--grid", grid, "Comma-separated x values");
  certificate_cmd->add_option("--per-decade", per_decade);
  add_common(certificate_cmd, common);

  auto* lemma = app.add_subcommand("lemma-cap", "c_k / sqrt(k B_M) across the scaling range");
  std::string lemma_params = "64,4096", anchor;
  std::size_t M = 1;
  lemma->add_option("--params", lemma_params);
  lemma->add_option("--M", M, "Active index (1-based)");
  lemma->add_option("--per-decade", per_decade);
  lemma->add_option("--anchor", anchor, "k:value checked exactly, e.g. 4096:512");
  add_common(lemma, common);

  auto* ched = app.add_subcommand("ched", "Warm-up inequality for a domain with one unit weight and tiny ones");
  std::string eps = "1/1024", volume = "1000", k0 = "100", constant = "4";
  ched->add_option("--eps", eps);
  ched->add_option("--volume", volume);
  ched->add_option("--k0", k0, "Largest k0");
  ched->add_option("--constant", constant, "Weyl-side constant C");
  add_common(ched, common);

  auto* notsame = app.add_subcommand("notsame", "Inclusion distance against capacity bounds for B(1)");
  std::string ns_eps = "1/16";
  notsame->add_option("--eps", ns_eps);
  add_common(notsame, common);

  auto* weyl = app.add_subcommand("weyl", "c_k^2 / (4 k area)");
  weyl->add_option("domain", domain_file, "Domain description file");
  weyl->add_option("--params", params);
  weyl->add_option("--k", k_text);
  add_common(weyl, common);

  CLI11_PARSE(app, argc, argv);

  try {
    auto* cmd = app.get_subcommands().front();
    const std::string name = cmd->get_name();
    ExperimentConfig cfg = to_config(name, common);
    auto start = std::chrono::steady_clock::now();
    auto elapsed = [&] { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count(); };

    if (name == "capacity") {
      DomainSpec spec = spec_from(domain_file, params);
      Integer k = k_text.empty() ? cfg.kmax : parse_integer(k_text);
      if (sweep) {
        if (!cfg.kmax.fits_ulong_p()) throw ResourceLimit("kmax too large for a sweep");
        std::vector<Rational> cs = domain_capacity_sweep(exact_domain(spec), cfg.kmax.get_ui(), cfg.limits());
        CsvTable t{{"k", "c_num", "c_den"}, {}};
        for (std::size_t i = 0; i < cs.size(); ++i)
          t.rows.push_back({std::to_string(i), cs[i].get_num().get_str(10), cs[i].get_den().get_str(10)});
        std::cout << t.str();
        if (!common.out.empty()) write_text_file(std::filesystem::path(common.out) / "capacity.csv", t.str());
      } else if (engine == "auto" && (common.mode == "approx" || !spec.domain)) {
        CapacityInterval c = capacity_interval(source_from(spec, common), k, cfg.limits());
        Json j = to_json(c);
        j["k"] = to_string(k);
        print_json(j, common, "capacity");
      } else {
        Engine e = engine == "oracle" ? Engine::Oracle : engine == "fast" ? Engine::Fast : Engine::Auto;
        print_json(to_json(k, domain_capacity(exact_domain(spec), k, cfg.limits(), e)), common, "capacity");
      }
    } else if (name == "weights") {
      DomainSpec spec = load_domain_spec(domain_file);
      print_json(to_json(domain_weights(exact_domain(spec))), common, "weights");
    } else if (name == "realize") {
      DomainSpec spec = load_domain_spec(domain_file);
      print_json(to_json(realize(domain_weights(exact_domain(spec)), parse_integer(realize_limit))), common, "realize");
    } else if (name == "build-flat") {
      ParameterVector v = parse_parameters(params);
      Admissibility a = validate_parameters(v, cfg.threshold);
      Json j = {{"params", to_json(v)}, {"admissible", a.admissible()}, {"failures", a.failures}};
      std::optional<Padding> pad;
      if (!pad_count.empty()) pad = Padding{parse_integer(pad_count), pad_bound.empty() ? Rational(1) : parse_rational(pad_bound)};
      if (common.mode == "exact") {
        WeightMultiset w = build_weights(v, pad);
        j["weights"] = to_json(w);
        j["area"] = rational_to_json(w.area());
        if (with_profile) j["profile"] = to_json(realize(w));
      } else {
        WeightBounds b = build_weight_bounds(v, common.precision);
        j["weights_lower"] = to_json(b.lower);
        j["weights_upper"] = to_json(b.upper);
      }
      print_json(j, common, "build-flat");
      return a.admissible() ? 0 : 1;
    } else if (name == "chart") {
      if (!grid_file.empty()) cfg.grid = read_grid_csv(grid_file);
      else if (!points.empty()) cfg.grid = parse_list(points);
      else throw FormatError("chart needs --points or --grid");
      return finish_report(run_chart(cfg), common);
    } else if (name == "distance") {
      DomainSpec u = spec_from(u_file, u_params);
      DomainSpec v = spec_from(v_file, v_params);
      KPolicy policy;
      policy.per_decade = per_decade;
      DistanceReport r;
      CapacitySource su = source_from(u, common), sv = source_from(v, common);
      r.capacity = capacity_lower_bound(su, sv, cfg.kmax, policy, cfg.limits());
      r.volume = volume_lower_bound(su, sv);
      if (u.domain && v.domain) {
        try {
          r.inclusion = inclusion_distance(*u.domain, *v.domain);
        } catch (const ResourceLimit&) {
        }
      }
      if (u.params && v.params && u.params->size() == v.params->size())
        r.lemma = lemma_upper_bound(*u.params, *v.params, common.precision);
      finalize(r);
      Json j = {{"capacity_bound", r.capacity.value},
                {"witness_k", to_string(r.capacity.witness_k)},
                {"samples", r.capacity.samples},
                {"volume_bound", r.volume},
                {"lower", r.lower()},
                {"consistent", r.consistent}};
      if (r.inclusion) j["inclusion"] = {{"scale_uv", rational_to_json(r.inclusion->scale_uv)},
                                         {"scale_vu", rational_to_json(r.inclusion->scale_vu)},
                                         {"value", r.inclusion->value}};
      if (r.lemma) j["lemma_upper"] = *r.lemma;
      if (r.inclusion || r.lemma) j["upper"] = r.upper();
      print_json(j, common, "distance");
      std::cout << "wall_seconds: " << elapsed() << "\n";
      return r.consistent ? 0 : 1;
    } else if (name == "certificate") {
      cfg.grid = parse_list(grid);
      cfg.per_decade = per_decade;
      return finish_report(run_certificate(cfg), common);
    } else if (name == "lemma-cap") {
      cfg.params = parse_parameters(lemma_params);
      cfg.M = M;
      cfg.per_decade = per_decade;
      if (!anchor.empty()) {
        auto colon = anchor.find(':');
        if (colon == std::string::npos) throw FormatError("anchor must look like k:value");
        cfg.anchor = {{parse_integer(anchor.substr(0, colon)), parse_rational(anchor.substr(colon + 1))}};
      }
      return finish_report(run_lemma_cap_sweep(cfg), common);
    } else if (name == "ched") {
      cfg.eps = parse_rational(eps);
      cfg.volume = parse_rational(volume);
      cfg.k0_max = parse_integer(k0);
      cfg.weyl_constant = parse_rational(constant);
      return finish_report(run_ched_warmup(cfg), common);
    } else if (name == "notsame") {
      cfg.eps = parse_rational(ns_eps);
      return finish_report(run_notsame(cfg), common);
    } else if (name == "weyl") {
      DomainSpec spec = spec_from(domain_file, params);
      Integer k = k_text.empty() ? cfg.kmax : parse_integer(k_text);
      WeylRatio w = weyl_ratio(exact_domain(spec), k, cfg.limits());
      print_json({{"k", to_string(k)},
                  {"ratio", rational_to_json(w.value)},
                  {"ratio_upper", rational_to_json(w.upper)},
                  {"ratio_decimal", to_double(w.value)},
                  {"exact", w.exact}},
                 common, "weyl");
    }
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
