#pragma once

#include <cstdint>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "epsnet/bounds.hpp"
#include "epsnet/coverage.hpp"
#include "epsnet/io.hpp"
#include "epsnet/prm.hpp"
#include "epsnet/sampling.hpp"

namespace epsnet::cli {

enum ExitCode : int { kOk = 0, kNoResult = 1, kUsage = 2, kInputFile = 3, kDomain = 4 };

using io::Json;

namespace detail {

inline constexpr const char* kFormulas = R"(Formulas (alpha = eps / sqrt(1 + eps^2), alpha = 1 at eps = inf):
  necessary n   sqrt(e/2) (1 - 2 delta/(1 - 2 delta))^2 (sqrt((d-1)/(2 pi e)) (1 - 2 delta)/delta)^d, 0 for delta >= 1/4
  necessary r   (1 - 2 delta) (sqrt(pi d))^(1/d) sqrt(d/(2 pi e)) n^(-1/d)
  sufficient n  sqrt(pi d) (sqrt(2d/(pi e)) (1 - (2 - alpha) delta)/(alpha delta))^d
  sufficient r  2 (1 + 1/eps) (sqrt(pi d))^(1/d) sqrt(d/(2 pi e)) n^(-1/d)   [as stated]
                2 (1 + 1/eps) sqrt(2d/(pi e)) (sqrt(pi d)/n)^(1/d)          [as derived]
  grid size     (sqrt(d)/2 (1 - 2 delta)/(alpha delta))^d
  net size      vol(A) sqrt(pi d) (sqrt(d/(2 pi e))/eps)^d  <=  |net|  <=  vol(A + B(eps/2)) sqrt(pi d) (sqrt(2d/(pi e))/eps)^d
  net / grid    sqrt(pi d) (sqrt(8) (1 + eps)/sqrt(pi e))^d
  unit ball     c_d = pi^(d/2) / Gamma(d/2 + 1), Stirling: sqrt(2 pi x)(x/e)^x <= Gamma(x+1) <= e sqrt(x) (x/e)^x
  ENS           delta_min solves n_delta = sufficient n(delta_min), n_delta = min(sufficient n(delta), n);
                r = 2 (alpha + sqrt(1 - alpha^2)) delta_min; net of [delta_min, 1 - delta_min]^d
  template      greedy sqrt(d)/(2k)-net of dense uniform points; rho = |T| / k^d
Exit codes: 0 ok, 1 no result (adversary found no witness), 2 usage, 3 input file, 4 domain.)";

/// Every option of a subcommand with its effective value, for the config echo.
inline Json config_of(const CLI::App& sub) {
  Json cfg = Json::object();
  for (const auto* opt : sub.get_options()) {
    if (opt->get_lnames().empty()) continue;
    const auto& name = opt->get_lnames().front();
    if (name == "help") continue;
    if (opt->get_expected_max() == 0) {
      cfg[name] = opt->count() > 0;
    } else if (opt->count() > 0) {
      cfg[name] = opt->as<std::string>();
    } else if (!opt->get_default_str().empty()) {
      cfg[name] = opt->get_default_str();
    }
  }
  return cfg;
}

inline Json meta(const CLI::App& sub, std::optional<std::uint64_t> seed) {
  Json m = {{"tool", io::kToolName}, {"version", io::kToolVersion}, {"command", sub.get_name()},
            {"config", config_of(sub)}};
  m["seed"] = seed ? Json(*seed) : Json(nullptr);
  return m;
}

inline void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
  } else {
    io::write_text_file(path, text);
  }
}

inline std::string dump(Json j) { return j.dump(2) + "\n"; }

inline std::vector<std::uint64_t> parse_seeds(const std::string& text) {
  std::vector<std::uint64_t> seeds;
  std::stringstream in(text);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    if (tok.empty()) continue;
    try {
      std::size_t used = 0;
      seeds.push_back(std::stoull(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw CLI::ValidationError("--seeds", "not an integer: " + tok);
    }
  }
  if (seeds.empty()) throw CLI::ValidationError("--seeds", "at least one seed is required");
  return seeds;
}

inline std::string num(double x, int precision = 10) {
  std::ostringstream s;
  s << std::setprecision(precision) << x;
  return s.str();
}

// ---------------------------------------------------------------------------
// Sample-complexity table

inline Json table1_json() {
  Json rows = Json::array();
  const auto ref = table1_reference();
  const auto tab = table1();
  for (std::size_t i = 0; i < tab.size(); ++i) {
    Json cells = Json::array();
    for (std::size_t j = 0; j < 4; ++j) {
      const auto c = check_printed_cell(tab[i].raw[j], ref[i][j]);
      cells.push_back({{"raw", tab[i].raw[j]},
                       {"formatted", format_table_value(tab[i].raw[j], j == 0)},
                       {"published", ref[i][j]},
                       {"relative_error", c.relative_error},
                       {"directed_rounding", c.directed_rounding},
                       {"within_tolerance", c.within_tolerance}});
    }
    rows.push_back({{"delta", tab[i].delta}, {"d", tab[i].d}, {"cells", cells}});
  }
  return {{"columns", {"necessary", "sufficient_eps_inf", "sufficient_eps_1", "sufficient_eps_0.25"}},
          {"rows", rows}};
}

inline std::string table1_csv(const Json& header) {
  std::ostringstream s;
  s << "# " << header.dump() << "\n";
  s << "delta,d,thm1_lb,thm2_ub_inf,thm2_ub_1,thm2_ub_025,raw_thm1_lb,raw_thm2_ub_inf,raw_thm2_ub_1,raw_thm2_ub_025\n";
  for (const auto& row : table1()) {
    s << row.delta << "," << row.d;
    for (std::size_t j = 0; j < 4; ++j) s << "," << format_table_value(row.raw[j], j == 0);
    for (std::size_t j = 0; j < 4; ++j) s << "," << num(row.raw[j], 12);
    s << "\n";
  }
  return s.str();
}

inline std::string table1_summary() {
  const auto ref = table1_reference();
  const auto tab = table1();
  int directed = 0, tolerance = 0, formatted = 0;
  std::ostringstream s;
  for (std::size_t i = 0; i < tab.size(); ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      const auto c = check_printed_cell(tab[i].raw[j], ref[i][j]);
      directed += c.directed_rounding;
      tolerance += c.within_tolerance;
      formatted += format_table_value(tab[i].raw[j], j == 0) == ref[i][j];
      if (!c.directed_rounding || !c.within_tolerance) {
        s << "FAIL cell delta=" << tab[i].delta << " d=" << tab[i].d << " col=" << j << " raw=" << num(tab[i].raw[j])
          << " published=" << ref[i][j] << "\n";
      }
    }
  }
  s << (directed == 36 ? "PASS" : "FAIL") << " table1 published value is the computed value rounded up or down: "
    << directed << "/36\n";
  s << (tolerance == 36 ? "PASS" : "FAIL") << " table1 within 0.5% (3+ significant figures) or one printed unit: "
    << tolerance << "/36\n";
  s << "INFO table1 formatted cells identical to the published text: " << formatted << "/36\n";
  return s.str();
}

// ---------------------------------------------------------------------------
// Template-size table

inline std::string table2_csv(const Table2Report& rep, const Json& header) {
  std::ostringstream s;
  s << "# " << header.dump() << "\n";
  s << "d,k,seed,size,rho,p_hat,paper_size,paper_rho,paper_p_hat\n";
  s << std::setprecision(10);
  for (const auto& c : rep.cells) {
    const auto& r = c.reference;
    auto tail = [&] { s << "," << r.size << "," << r.rho << "," << r.p_hat << "\n"; };
    for (std::size_t i = 0; i < c.seeds.size(); ++i) {
      s << r.d << "," << r.k << "," << c.seeds[i] << "," << c.sizes[i] << "," << c.rhos[i] << "," << c.p_hats[i];
      tail();
    }
    s << r.d << "," << r.k << ",mean," << c.mean_size << "," << c.mean_rho << "," << c.mean_p_hat;
    tail();
    s << r.d << "," << r.k << ",std," << c.std_size << "," << c.std_rho << "," << c.std_p_hat;
    tail();
  }
  return s.str();
}

inline std::string table2_summary(const Table2Report& rep) {
  std::ostringstream s;
  for (const auto& c : rep.cells) {
    const auto& r = c.reference;
    s << (c.rho_ok() ? "PASS" : "FAIL") << " table2 d=" << r.d << " k=" << r.k << " mean rho " << num(c.mean_rho, 4)
      << " vs " << r.rho << " (+-" << kRhoTolerance << ")\n";
    s << (c.p_hat_ok() ? "PASS" : "FAIL") << " table2 d=" << r.d << " k=" << r.k << " mean p_hat "
      << num(c.mean_p_hat, 4) << " <= " << kPHatFactor << " x " << r.p_hat << "\n";
  }
  if (const auto trend = rep.rho_improves_with_dimension()) {
    s << (*trend ? "PASS" : "FAIL") << " table2 rho(d=9,k=3) < rho(d=4,k=3): " << num(rep.find(9, 3)->mean_rho, 4)
      << " < " << num(rep.find(4, 3)->mean_rho, 4) << "\n";
  }
  return s.str();
}

inline std::vector<std::pair<std::size_t, std::size_t>> parse_cells(const std::string& text) {
  std::vector<std::pair<std::size_t, std::size_t>> cells;
  std::stringstream in(text);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    const auto colon = tok.find(':');
    if (colon == std::string::npos) throw CLI::ValidationError("--cells", "expected d:k, got " + tok);
    try {
      cells.emplace_back(std::stoul(tok.substr(0, colon)), std::stoul(tok.substr(colon + 1)));
    } catch (const std::exception&) {
      throw CLI::ValidationError("--cells", "expected d:k, got " + tok);
    }
  }
  return cells;
}

inline Json error_json(int code, const std::string& kind, const std::string& message) {
  return {{"error", {{"code", code}, {"kind", kind}, {"message", message}}}};
}

}  // namespace detail

/// Runs one command line (args excludes the program name). Artifacts go to files or `out`;
/// diagnostics and error JSON go to `err`.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  using namespace detail;
  CLI::App app{"epsilon-net sampling for probabilistic roadmaps", "epsnet"};
  app.footer(kFormulas);
  app.require_subcommand(1);
  unsigned threads = 0;
  app.add_option("--threads", threads, "Worker threads, 0 = all cores; results do not depend on it");
  app.set_version_flag("--version", io::kToolVersion);

  // bounds
  auto* bounds = app.add_subcommand("bounds", "Evaluate every closed-form bound for (d, delta, eps)");
  int b_d = 0;
  double b_delta = 0.0;
  std::string b_eps = "inf";
  std::optional<double> b_n;
  bool b_json = false;
  bounds->add_option("--d", b_d, "Dimension")->required();
  bounds->add_option("--delta", b_delta, "Clearance delta in (0, 1/2)")->required();
  bounds->add_option("--eps", b_eps, "Stretch tolerance, a positive number or inf")->capture_default_str();
  bounds->add_option("--n", b_n, "Sample count at which to evaluate the radii (default: sufficient n)");
  bounds->add_flag("--json", b_json, "Emit JSON");

  // build-net
  auto* bnet = app.add_subcommand("build-net", "Greedy eps-net of a sample file or of a box");
  std::string bn_input, bn_out;
  double bn_eps = 0.0;
  std::size_t bn_d = 0, bn_dense = kDefaultDenseSamples;
  double bn_lo = 0.0, bn_hi = 1.0;
  std::uint64_t bn_seed = 0;
  bnet->add_option("--eps", bn_eps, "Net radius")->required();
  bnet->add_option("--input", bn_input, "SampleSet JSON to net (otherwise the box [lo,hi]^d)");
  bnet->add_option("--d", bn_d, "Dimension of the box");
  bnet->add_option("--lo", bn_lo, "Box lower corner coordinate")->capture_default_str();
  bnet->add_option("--hi", bn_hi, "Box upper corner coordinate")->capture_default_str();
  bnet->add_option("--dense", bn_dense, "Uniform points discretising the box")->capture_default_str();
  bnet->add_option("--seed", bn_seed, "Seed for the discretisation")->capture_default_str();
  bnet->add_option("--out", bn_out, "Output SampleSet JSON (default stdout)");

  // ens
  auto* ensc = app.add_subcommand("ens", "Epsilon Net Sampling: samples and connection radius");
  std::size_t e_n = 0, e_dense = kDefaultDenseSamples;
  int e_d = 0;
  std::string e_eps = "inf", e_out, e_net = "proof";
  double e_delta = 0.0;
  std::uint64_t e_seed = 0;
  ensc->add_option("--n", e_n, "Sample budget")->required();
  ensc->add_option("--d", e_d, "Dimension")->required();
  ensc->add_option("--eps", e_eps, "Stretch tolerance or inf")->capture_default_str();
  ensc->add_option("--delta", e_delta, "Clearance in (0, 1/2)")->required();
  ensc->add_option("--seed", e_seed, "Seed")->capture_default_str();
  ensc->add_option("--dense", e_dense, "Uniform points discretising the net region")->capture_default_str();
  ensc->add_option("--net-radius", e_net, "proof: alpha delta_min; alg2: delta_min as listed")
      ->check(CLI::IsMember({"proof", "alg2"}))
      ->capture_default_str();
  ensc->add_option("--out", e_out, "Output SampleSet JSON (default stdout)");

  // grid
  auto* gridc = app.add_subcommand("grid", "Cell-centre grid with spacing w");
  std::size_t g_d = 0;
  double g_w = 0.0, g_lo = 0.0, g_hi = 1.0;
  std::string g_out;
  gridc->add_option("--d", g_d, "Dimension")->required();
  gridc->add_option("--w", g_w, "Spacing; 1/w must be an integer on the unit cube")->required();
  gridc->add_option("--lo", g_lo, "Domain lower coordinate")->capture_default_str();
  gridc->add_option("--hi", g_hi, "Domain upper coordinate")->capture_default_str();
  gridc->add_option("--out", g_out, "Output SampleSet JSON (default stdout)");

  // template
  auto* tmpl = app.add_subcommand("template", "Greedy sqrt(d)/(2k)-net template of [0,1]^d");
  std::size_t t_d = 0, t_k = 0, t_dense = kDefaultDenseSamples, t_mc = kDefaultMcSamples;
  std::uint64_t t_seed = 0;
  bool t_periodic = false;
  std::string t_out;
  tmpl->add_option("--d", t_d, "Dimension")->required();
  tmpl->add_option("--k", t_k, "Grid benchmark factor")->required();
  tmpl->add_option("--dense", t_dense, "Uniform points netted")->capture_default_str();
  tmpl->add_option("--mc", t_mc, "Monte Carlo probes for p_hat (0 skips)")->capture_default_str();
  tmpl->add_option("--seed", t_seed, "Seed")->capture_default_str();
  tmpl->add_flag("--periodic", t_periodic, "Measure p_hat with the wrap-around metric");
  tmpl->add_option("--out", t_out, "Output Template JSON (default stdout)");

  // replicate
  auto* repl = app.add_subcommand("replicate", "Tile a template m^d times at scale 1/m");
  std::string r_template, r_out;
  std::size_t r_m = 1;
  repl->add_option("--template", r_template, "Template JSON")->required();
  repl->add_option("--m", r_m, "Replication factor")->required();
  repl->add_option("--out", r_out, "Output SampleSet JSON (default stdout)");

  // prm
  auto* prmc = app.add_subcommand("prm", "Build the roadmap and query start to goal");
  std::string p_env, p_samples, p_report;
  double p_radius = 0.0, p_tol = kDefaultTolerance;
  std::optional<double> p_opt;
  std::string p_eps = "inf";
  prmc->add_option("--env", p_env, "Environment JSON")->required();
  prmc->add_option("--samples", p_samples, "SampleSet JSON")->required();
  prmc->add_option("--radius", p_radius, "Connection radius")->required();
  prmc->add_option("--tol", p_tol, "Collision tolerance")->capture_default_str();
  prmc->add_option("--opt", p_opt, "Optimal delta-clear length, to evaluate completeness");
  prmc->add_option("--eps", p_eps, "Stretch tolerance used with --opt")->capture_default_str();
  prmc->add_option("--report", p_report, "Write the PathResult JSON here");

  // adversary
  auto* adv = app.add_subcommand("adversary", "Search for an environment the samples cannot solve");
  std::string a_samples, a_variant = "shell", a_out;
  double a_delta = 0.0;
  std::uint64_t a_seed = 0;
  std::size_t a_budget = kDefaultSearchBudget;
  adv->add_option("--samples", a_samples, "SampleSet JSON")->required();
  adv->add_option("--delta", a_delta, "Clearance in (0, 1/4)")->required();
  adv->add_option("--variant", a_variant, "shell or ring")->check(CLI::IsMember({"shell", "ring"}))->capture_default_str();
  adv->add_option("--seed", a_seed, "Seed")->capture_default_str();
  adv->add_option("--budget", a_budget, "Score evaluations")->capture_default_str();
  adv->add_option("--out", a_out, "Output Environment JSON (default stdout)");

  // coverage
  auto* cov = app.add_subcommand("coverage", "Monte Carlo uncovered fraction of [0,1]^d");
  std::string c_samples;
  double c_radius = 0.0;
  std::size_t c_mc = kDefaultMcSamples;
  std::uint64_t c_seed = 0;
  bool c_periodic = false;
  cov->add_option("--samples", c_samples, "SampleSet or Template JSON")->required();
  cov->add_option("--radius", c_radius, "Cover radius")->required();
  cov->add_option("--mc", c_mc, "Probes")->capture_default_str();
  cov->add_option("--seed", c_seed, "Seed")->capture_default_str();
  cov->add_flag("--periodic", c_periodic, "Wrap-around metric");

  // bench
  auto* bench = app.add_subcommand("bench", "Reproduce the sample-complexity or template tables");
  bench->require_subcommand(1);
  auto* t1 = bench->add_subcommand("table1", "Necessary and sufficient sample counts");
  std::string t1_out;
  bool t1_json = false;
  t1->add_option("--out", t1_out, "CSV path (default stdout)");
  t1->add_flag("--json", t1_json, "Emit JSON with raw values and published cells");
  auto* t2 = bench->add_subcommand("table2", "Template sizes for d = 4..9, k = 2, 3");
  std::size_t t2_dense = kDefaultDenseSamples, t2_mc = kDefaultMcSamples;
  std::string t2_seeds = "1,2,3", t2_out, t2_cells;
  bool t2_periodic = false;
  t2->add_option("--dense", t2_dense, "Uniform points netted per template")->capture_default_str();
  t2->add_option("--mc", t2_mc, "Monte Carlo probes per template")->capture_default_str();
  t2->add_option("--seeds", t2_seeds, "Comma-separated seeds")->capture_default_str();
  t2->add_option("--cells", t2_cells, "Restrict to cells, e.g. 4:2,9:3");
  t2->add_flag("--periodic", t2_periodic, "Measure p_hat with the wrap-around metric");
  t2->add_option("--out", t2_out, "CSV path (default stdout)");

  std::vector<std::string> argv_store{"epsnet"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());

  try {
    try {
      app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
      out << app.help();
      return kOk;
    } catch (const CLI::CallForAllHelp&) {
      out << app.help("", CLI::AppFormatMode::All);
      return kOk;
    } catch (const CLI::CallForVersion&) {
      out << io::kToolVersion << "\n";
      return kOk;
    }

    if (bounds->parsed()) {
      const auto eps = Epsilon::parse(b_eps);
      const auto r = bounds_report(b_d, b_delta, eps, b_n);
      if (b_json) {
        Json j = {{"meta", meta(*bounds, std::nullopt)},
                  {"d", r.d},
                  {"delta", r.delta},
                  {"eps", io::real(eps.value())},
                  {"alpha", r.alpha},
                  {"n", r.n},
                  {"n_necessary", r.n_necessary},
                  {"r_necessary", r.r_necessary},
                  {"n_sufficient", r.n_sufficient},
                  {"r_sufficient_stmt", r.r_sufficient_stmt},
                  {"r_sufficient_proof", r.r_sufficient_proof},
                  {"grid_size", r.grid_size},
                  {"net_lower", r.net_lower},
                  {"net_upper", r.net_upper},
                  {"ratio_bound", r.ratio_bound},
                  {"unit_ball_volume", r.unit_ball_volume}};
        out << dump(j);
      } else {
        out << "d=" << r.d << " delta=" << num(r.delta) << " eps=" << eps.to_string() << " alpha=" << num(r.alpha) << "\n"
            << "n_lb=" << format_table_value(r.n_necessary, true) << " (raw " << num(r.n_necessary) << ")\n"
            << "n_ub=" << format_table_value(r.n_sufficient, false) << " (raw " << num(r.n_sufficient) << ")\n"
            << "radii at n=" << num(r.n) << ": r_lb=" << num(r.r_necessary) << " r_ub_stated=" << num(r.r_sufficient_stmt)
            << " r_ub_derived=" << num(r.r_sufficient_proof) << " (derived/stated = "
            << num(r.r_sufficient_proof / r.r_sufficient_stmt) << ")\n"
            << "grid_size=" << num(r.grid_size) << "\n"
            << "net_size in [" << num(r.net_lower) << ", " << num(r.net_upper) << "] at radius alpha*delta\n"
            << "net_vs_grid_ratio_bound=" << num(r.ratio_bound) << "\n"
            << "unit_ball_volume=" << num(r.unit_ball_volume) << "\n";
      }
    } else if (bnet->parsed()) {
      SampleSet s;
      if (!bn_input.empty()) {
        const auto in = io::sample_set_from_json(io::read_json_file(bn_input));
        s = net_sample_set(build_net(in.points, bn_eps), bn_eps, bn_seed);
      } else {
        if (bn_d < 1) throw CLI::ValidationError("--d", "required (>= 1) when --input is absent");
        AxisBox box = AxisBox::cube(bn_d, bn_lo, bn_hi);
        s = net_sample_set(build_net_region(box, bn_eps, bn_dense, bn_seed), bn_eps, bn_seed, bn_dense);
      }
      Json j = {{"meta", meta(*bnet, bn_seed)}};
      j.update(io::to_json(s));
      emit(bn_out, dump(j), out);
    } else if (ensc->parsed()) {
      EnsOptions opt{e_net == "proof" ? NetRadius::Proof : NetRadius::Listing, e_dense};
      const auto r = ens(e_n, e_d, Epsilon::parse(e_eps), e_delta, e_seed, opt);
      Json j = {{"meta", meta(*ensc, e_seed)}};
      j.update(io::to_json(r.samples));
      j["radius"] = r.radius;
      j["alpha"] = r.alpha;
      j["n_delta"] = r.n_delta;
      j["delta_min"] = r.delta_min;
      j["delta_min_closed_form"] = r.delta_min_closed_form;
      j["net_radius"] = r.net_radius;
      emit(e_out, dump(j), out);
      err << "ens: " << r.samples.size() << " samples, delta_min=" << num(r.delta_min) << " r=" << num(r.radius) << "\n";
    } else if (gridc->parsed()) {
      const auto s = grid({g_w, AxisBox::cube(g_d, g_lo, g_hi)});
      Json j = {{"meta", meta(*gridc, std::nullopt)}};
      j.update(io::to_json(s));
      emit(g_out, dump(j), out);
    } else if (tmpl->parsed()) {
      const auto r = make_template(t_d, t_k, t_dense, t_seed, t_mc, t_periodic, threads);
      Json j = {{"meta", meta(*tmpl, t_seed)}};
      j.update(io::to_json(r.tmpl, t_seed, t_dense));
      j["rho"] = r.rho;
      if (t_mc > 0) j["p_hat"] = r.coverage.p_hat;
      emit(t_out, dump(j), out);
      err << "template: |T|=" << r.tmpl.points.size() << " rho=" << num(r.rho, 4);
      if (t_mc > 0) err << " p_hat=" << num(r.coverage.p_hat, 4);
      err << "\n";
    } else if (repl->parsed()) {
      const auto t = io::template_from_json(io::read_json_file(r_template));
      Json j = {{"meta", meta(*repl, std::nullopt)}};
      j.update(io::to_json(replicate_template(t, r_m)));
      emit(r_out, dump(j), out);
    } else if (prmc->parsed()) {
      const auto env = io::environment_from_json(io::read_json_file(p_env));
      const auto s = io::sample_set_from_json(io::read_json_file(p_samples));
      const auto g = build_prm(env, s.points, p_radius, p_tol, threads);
      const auto path = shortest_path(g);
      Json j = {{"meta", meta(*prmc, std::nullopt)}};
      j.update(io::to_json(path));
      j["vertices"] = g.vertices.size();
      j["edges"] = g.edges.size();
      if (p_opt) j["complete"] = completeness_check(path, *p_opt, Epsilon::parse(p_eps));
      if (!p_report.empty()) io::write_text_file(p_report, dump(j));
      out << "found=" << (path.found ? "true" : "false");
      if (path.found) out << " length=" << num(path.length);
      out << " vertices=" << g.vertices.size() << " edges=" << g.edges.size();
      if (p_opt) out << " complete=" << (j["complete"].get<bool>() ? "true" : "false");
      out << "\n";
    } else if (adv->parsed()) {
      const auto s = io::sample_set_from_json(io::read_json_file(a_samples));
      const auto inst = a_variant == "shell" ? adversarial_shell(s.points, s.dim(), a_delta, a_budget, a_seed)
                                             : adversarial_ring(s.points, s.dim(), a_delta, a_budget, a_seed);
      if (!inst) {
        err << dump(error_json(kNoResult, "no-witness", "no witness found within the search budget"));
        return kNoResult;
      }
      Json j = {{"meta", meta(*adv, a_seed)}};
      j.update(io::to_json(inst->env));
      j["variant"] = a_variant;
      j["delta"] = inst->delta;
      j["witness_center"] = io::to_json(inst->witness_center);
      j["witness_score"] = inst->witness_score;
      j["opt_delta"] = inst->opt_delta();
      emit(a_out, dump(j), out);
    } else if (cov->parsed()) {
      const auto s = io::sample_set_from_json(io::read_json_file(c_samples));
      const auto e = estimate_uncovered(s.points, c_radius, c_mc, c_seed, c_periodic, threads);
      Json j = {{"meta", meta(*cov, c_seed)},      {"p_hat", e.p_hat},           {"uncovered", e.uncovered},
                {"mc_samples", e.mc_samples},     {"cover_radius", e.cover_radius}, {"seed", e.seed},
                {"periodic", e.periodic}};
      out << dump(j);
    } else if (t1->parsed()) {
      const Json header = meta(*t1, std::nullopt);
      if (t1_json) {
        Json j = {{"meta", header}};
        j.update(table1_json());
        emit(t1_out, dump(j), out);
      } else {
        emit(t1_out, table1_csv(header), out);
      }
      (t1_out.empty() ? err : out) << table1_summary();
    } else if (t2->parsed()) {
      const auto seeds = parse_seeds(t2_seeds);
      const auto cells = t2_cells.empty() ? std::vector<std::pair<std::size_t, std::size_t>>{} : parse_cells(t2_cells);
      const auto rep = table2_bench(t2_dense, t2_mc, seeds, t2_periodic, threads, cells);
      emit(t2_out, table2_csv(rep, meta(*t2, std::nullopt)), out);
      (t2_out.empty() ? err : out) << table2_summary(rep);
    }
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << dump(error_json(kUsage, "usage", e.what()));
    return kUsage;
  } catch (const io::InputError& e) {
    err << dump(error_json(kInputFile, "input", e.what()));
    return kInputFile;
  } catch (const nlohmann::json::exception& e) {
    err << dump(error_json(kInputFile, "input", e.what()));
    return kInputFile;
  } catch (const InvalidNet& e) {
    err << dump(error_json(kDomain, "domain", e.what()));
    return kDomain;
  } catch (const DomainError& e) {
    err << dump(error_json(kDomain, "domain", e.what()));
    return kDomain;
  }
}

}  // namespace epsnet::cli
