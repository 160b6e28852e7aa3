// Experiment runner for the rectangle-measure library. Every subcommand
// writes a self-describing CSV (17 significant digits per numeric) plus a
// JSON run manifest, and echoes the CSV to stdout. Identical configurations
// produce byte-identical CSV files; only the manifest timestamp varies.
//
// Exit codes: 0 success, 2 validation error, 3 numeric non-convergence.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rinf/delta.hpp"
#include "rinf/equidist.hpp"
#include "rinf/functions.hpp"
#include "rinf/linmap.hpp"
#include "rinf/products.hpp"
#include "rinf/rectangle.hpp"
#include "rinf/riemann.hpp"
#include "rinf/version.hpp"

using nlohmann::json;
using namespace rinf;

namespace {

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

struct Csv {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void add_row(std::vector<std::string> row) { rows.push_back(std::move(row)); }

  std::string render() const {
    std::string out;
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (i) out += ',';
      out += header[i];
    }
    out += '\n';
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) out += ',';
        out += row[i];
      }
      out += '\n';
    }
    return out;
  }
};

std::string default_out_path(const std::string& subcommand) {
  const char* dir = std::getenv("RINF_OUT_DIR");
  std::string base = dir && *dir ? std::string(dir) : std::string(".");
  if (!base.empty() && base.back() != '/') base += '/';
  return base + subcommand + ".csv";
}

void write_outputs(const std::string& subcommand, const std::string& out_path,
                   const Csv& csv, const json& config,
                   std::chrono::steady_clock::time_point started) {
  const std::string body = csv.render();
  std::fputs(body.c_str(), stdout);

  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw DomainError("cannot write output file " + out_path);
  f << body;
  f.close();

  const double wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started)
          .count();
  json manifest;
  manifest["subcommand"] = subcommand;
  manifest["config"] = config;
  manifest["library_version"] = kVersion;
  manifest["wall_clock_ms"] = wall_ms;
  manifest["generated_at_unix_ms"] =
      std::chrono::duration_cast<std::chrono::milliseconds>(
          std::chrono::system_clock::now().time_since_epoch())
          .count();
  manifest["csv"] = out_path;

  std::string manifest_path = out_path;
  const auto dot = manifest_path.rfind(".csv");
  if (dot != std::string::npos && dot == manifest_path.size() - 4)
    manifest_path.erase(dot);
  manifest_path += ".manifest.json";
  std::ofstream mf(manifest_path, std::ios::binary);
  if (!mf) throw DomainError("cannot write manifest " + manifest_path);
  mf << manifest.dump(2) << '\n';
}

GroupingAlpha parse_alpha(const std::vector<std::int64_t>& sizes) {
  if (sizes.empty()) return GroupingAlpha::ones();
  std::vector<std::int64_t> prefix(sizes.begin(), sizes.end() - 1);
  return GroupingAlpha(std::move(prefix), sizes.back());
}

std::string alpha_label(const std::vector<std::int64_t>& sizes) {
  if (sizes.empty()) return "1";
  std::string s;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (i) s += ';';
    s += std::to_string(sizes[i]);
  }
  return s;
}

// ---- presets ---------------------------------------------------------------

struct ProductPreset {
  std::function<FactorSeq()> make;
  ProductOptions ordinary_opt;
  ProductOptions standard_opt;
};

const std::map<std::string, ProductPreset>& product_presets() {
  static const std::map<std::string, ProductPreset> presets = [] {
    std::map<std::string, ProductPreset> m;
    m["alternating_harmonic"] = {
        [] {
          return FactorSeq::from_logs([](std::int64_t k) {
            return (k % 2 == 0 ? 1.0 : -1.0) / static_cast<double>(k);
          });
        },
        {1e-6, 1'000'000},
        {0.2, 100'000}};
    m["two_half"] = {
        [] {
          const double ln2 = std::log(2.0);
          return FactorSeq::from_logs(
              [ln2](std::int64_t k) { return k % 2 != 0 ? ln2 : -ln2; });
        },
        {1e-10, 100'000},
        {1e-10, 100'000}};
    m["ones"] = {
        [] { return FactorSeq::from_logs([](std::int64_t) { return 0.0; }); },
        {1e-10, 1'000},
        {1e-10, 1'000}};
    m["geometric_decay"] = {
        [] {
          return FactorSeq::from_logs([](std::int64_t k) {
            return -std::ldexp(1.0, -static_cast<int>(std::min<std::int64_t>(k, 1074)));
          });
        },
        {1e-10, 100'000},
        {1e-10, 100'000}};
    m["half"] = {
        [] { return FactorSeq::from_values([](std::int64_t) { return 0.5; }); },
        {1e-10, 10'000},
        {1e-10, 10'000}};
    return m;
  }();
  return presets;
}

struct RectPreset {
  std::function<IntervalSeq(double eps)> make;
  bool needs_epsilon = false;
  ProductOptions ordinary_opt{1e-10, 1'000'000};
  ProductOptions standard_opt{1e-10, 1'000'000};
};

const std::map<std::string, RectPreset>& rect_presets() {
  static const std::map<std::string, RectPreset> presets = [] {
    std::map<std::string, RectPreset> m;
    m["unit_cube"] = {[](double) { return IntervalSeq::unit_cube(); },
                      false,
                      {1e-10, 1'000},
                      {1e-10, 1'000}};
    m["delta_box"] = {[](double eps) { return IntervalSeq::delta_box(eps); },
                      true,
                      {1e-13, 1'000'000},
                      {1e-13, 1'000'000}};
    m["x_counterexample"] = {[](double) { return IntervalSeq::alternating_harmonic(); },
                             false,
                             {1e-6, 1'000'000},
                             {0.2, 100'000}};
    return m;
  }();
  return presets;
}

IntervalSeq rect_from_json_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw DomainError("cannot read rectangle file " + path);
  json j = json::parse(f);

  std::vector<Interval> coords;
  if (j.contains("coords")) {
    for (const auto& pair : j.at("coords")) {
      if (!pair.is_array() || pair.size() != 2)
        throw DomainError("each coordinate must be a two-element array [a, b]");
      coords.push_back({pair[0].get<double>(), pair[1].get<double>()});
    }
  }
  if (j.contains("depth") &&
      j.at("depth").get<std::int64_t>() != static_cast<std::int64_t>(coords.size()))
    throw DomainError("depth disagrees with the number of coordinates");

  const std::string tail = j.value("tail", std::string("unit"));
  if (tail == "unit") return IntervalSeq::with_unit_tail(std::move(coords));
  if (tail == "delta_box") {
    if (!j.contains("epsilon")) throw DomainError("delta_box tail needs epsilon");
    const double eps = j.at("epsilon").get<double>();
    const DeltaBox box(eps);
    const auto n = static_cast<std::int64_t>(coords.size());
    auto intervals = [coords, box, n](std::int64_t k) {
      if (k <= n) return coords[static_cast<std::size_t>(k - 1)];
      const double a = box.half_width(k);
      return Interval{-a, a};
    };
    auto log_sides = [coords, box, n](std::int64_t k) {
      if (k <= n) return std::log(coords[static_cast<std::size_t>(k - 1)].length());
      return box.log_side(k);
    };
    return IntervalSeq::closed_form(std::move(intervals), std::move(log_sides));
  }
  throw DomainError("unknown tail kind '" + tail + "'");
}

struct RectChoice {
  IntervalSeq rect;
  ProductOptions ordinary_opt;
  ProductOptions standard_opt;
  std::string label;
};

RectChoice resolve_rect(const std::string& spec, double eps) {
  const auto& presets = rect_presets();
  const auto it = presets.find(spec);
  if (it != presets.end()) {
    if (it->second.needs_epsilon && !(eps > 0.0))
      throw DomainError("preset '" + spec + "' needs --epsilon");
    return {it->second.make(eps), it->second.ordinary_opt, it->second.standard_opt, spec};
  }
  if (spec.find('.') == std::string::npos)
    throw DomainError("unknown rectangle preset '" + spec + "'");
  return {rect_from_json_file(spec), {1e-10, 1'000'000}, {1e-10, 1'000'000}, spec};
}

// ---- subcommand payloads ---------------------------------------------------

struct Shared {
  std::string out;
  std::vector<std::int64_t> alpha{1};
  double tol = 0.0;  // 0 = use defaults
  std::int64_t max_terms = 0;
  double epsilon = 0.0;
  std::uint64_t seed = 20240405;
};

int run_products(const std::string& preset, const std::string& mode, Shared& sh,
                 std::chrono::steady_clock::time_point started) {
  const auto& presets = product_presets();
  const auto it = presets.find(preset);
  if (it == presets.end()) throw DomainError("unknown products preset '" + preset + "'");

  const GroupingAlpha alpha = parse_alpha(sh.alpha);
  std::vector<ProductMode> modes;
  if (mode == "ordinary") modes = {ProductMode::ordinary};
  else if (mode == "standard") modes = {ProductMode::standard};
  else if (mode == "both") modes = {ProductMode::ordinary, ProductMode::standard};
  else throw DomainError("mode must be ordinary, standard or both");

  Csv csv;
  csv.header = {"preset", "mode", "alpha", "status", "value", "log_value",
                "partials_inspected"};
  for (const ProductMode m : modes) {
    ProductOptions opt =
        m == ProductMode::ordinary ? it->second.ordinary_opt : it->second.standard_opt;
    if (sh.tol > 0.0) opt.tol = sh.tol;
    if (sh.max_terms > 0) opt.max_terms = sh.max_terms;
    const ProductResult r = grouped_product(it->second.make(), alpha, m, opt);
    csv.add_row({preset, m == ProductMode::ordinary ? "ordinary" : "standard",
                 alpha_label(sh.alpha), to_string(r.status), fmt17(r.value),
                 fmt17(r.log_value), std::to_string(r.partials_inspected)});
  }

  json config{{"preset", preset}, {"mode", mode}, {"alpha", sh.alpha},
              {"tol", sh.tol}, {"max_terms", sh.max_terms}};
  const std::string out = sh.out.empty() ? default_out_path("products") : sh.out;
  write_outputs("products", out, csv, config, started);
  return 0;
}

int run_measure(const std::string& rect_spec, const std::string& mode, Shared& sh,
                std::chrono::steady_clock::time_point started) {
  RectChoice rc = resolve_rect(rect_spec, sh.epsilon);
  const GroupingAlpha alpha = parse_alpha(sh.alpha);

  std::vector<ProductMode> modes;
  if (mode == "ordinary") modes = {ProductMode::ordinary};
  else if (mode == "standard") modes = {ProductMode::standard};
  else if (mode == "both") modes = {ProductMode::ordinary, ProductMode::standard};
  else throw DomainError("mode must be ordinary, standard or both");

  Csv csv;
  csv.header = {"rect", "mode", "alpha", "status", "log_value", "value"};
  for (const ProductMode m : modes) {
    ProductOptions opt = m == ProductMode::ordinary ? rc.ordinary_opt : rc.standard_opt;
    if (sh.tol > 0.0) opt.tol = sh.tol;
    if (sh.max_terms > 0) opt.max_terms = sh.max_terms;
    const MeasureValue mv = rect_measure(rc.rect, alpha, m, opt);
    csv.add_row({rc.label, m == ProductMode::ordinary ? "ordinary" : "standard",
                 alpha_label(sh.alpha), to_string(mv.status), fmt17(mv.log_value),
                 fmt17(mv.value())});
  }

  json config{{"rect", rect_spec}, {"mode", mode}, {"alpha", sh.alpha},
              {"tol", sh.tol}, {"max_terms", sh.max_terms}, {"epsilon", sh.epsilon}};
  const std::string out = sh.out.empty() ? default_out_path("measure") : sh.out;
  write_outputs("measure", out, csv, config, started);
  return 0;
}

std::map<std::int64_t, Interval> parse_overrides(const std::string& spec) {
  // "k:c:d[;k:c:d...]"
  std::map<std::int64_t, Interval> overrides;
  std::size_t pos = 0;
  while (pos < spec.size()) {
    const std::size_t end = spec.find(';', pos);
    const std::string item = spec.substr(pos, end == std::string::npos ? end : end - pos);
    const std::size_t c1 = item.find(':');
    const std::size_t c2 = item.find(':', c1 == std::string::npos ? c1 : c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
      throw DomainError("override syntax is k:c:d;k:c:d");
    overrides[std::stoll(item.substr(0, c1))] = {
        std::stod(item.substr(c1 + 1, c2 - c1 - 1)), std::stod(item.substr(c2 + 1))};
    if (end == std::string::npos) break;
    pos = end + 1;
  }
  if (overrides.empty()) throw DomainError("no overrides given");
  return overrides;
}

int run_equidist(const std::string& rect_spec, const std::vector<std::int64_t>& ns,
                 const std::string& u_spec, const std::string& seq_kind, Shared& sh,
                 std::chrono::steady_clock::time_point started) {
  RectChoice rc = resolve_rect(rect_spec, sh.epsilon);
  const ElementaryRect u(rc.rect, parse_overrides(u_spec));

  // target = lambda(U)/lambda(rect): the override ratios.
  double target = 1.0;
  for (const auto& [k, ov] : u.overrides())
    target *= ov.length() / rc.rect.interval(k).length();

  Csv csv;
  csv.header = {"n", "ratio", "target", "error"};
  for (const std::int64_t n : ns) {
    std::vector<CoordSequence> seqs;
    for (std::int64_t k = 1; k <= n; ++k) {
      const Interval iv = rc.rect.interval(k);
      if (seq_kind == "vdc") seqs.push_back(CoordSequence::van_der_corput(iv));
      else if (seq_kind == "weyl") seqs.push_back(CoordSequence::weyl(iv));
      else if (seq_kind == "random")
        seqs.push_back(CoordSequence::seeded(iv, sh.seed + static_cast<std::uint64_t>(k)));
      else throw DomainError("sequence kind must be vdc, weyl or random");
    }
    // Counting factorizes, so large n stay affordable even when n^n does not.
    const PointFamily fam =
        product_family(rc.rect, seqs, n, std::numeric_limits<std::int64_t>::max() / 8);
    const double ratio = equidist_ratio(fam, u);
    csv.add_row({std::to_string(n), fmt17(ratio), fmt17(target),
                 fmt17(std::abs(ratio - target))});
  }

  json config{{"rect", rect_spec}, {"n", ns}, {"u", u_spec},
              {"seq", seq_kind}, {"seed", sh.seed}};
  const std::string out = sh.out.empty() ? default_out_path("equidist") : sh.out;
  write_outputs("equidist", out, csv, config, started);
  return 0;
}

int run_integrate(const std::string& func, const std::string& rect_spec, Shared& sh,
                  std::chrono::steady_clock::time_point started) {
  RectChoice rc = resolve_rect(rect_spec, sh.epsilon);
  const CylinderFn& f = find_function(func);
  const double tol = sh.tol > 0.0 ? sh.tol : 1e-3;

  const MeasureValue mv =
      rect_measure(rc.rect, GroupingAlpha::ones(), ProductMode::ordinary, rc.ordinary_opt);
  const double scale = std::exp(mv.log_value);

  std::vector<RefineStep> trace;
  const double avg = box_average(f, rc.rect, tol, &trace);

  Csv csv;
  csv.header = {"cuts", "lower", "upper", "midpoint", "integral"};
  for (const RefineStep& st : trace)
    csv.add_row({std::to_string(st.cuts), fmt17(st.lower * scale),
                 fmt17(st.upper * scale), fmt17(st.midpoint * scale),
                 fmt17(st.midpoint * scale)});
  (void)avg;

  json config{{"func", func}, {"rect", rect_spec}, {"tol", tol}};
  const std::string out = sh.out.empty() ? default_out_path("integrate") : sh.out;
  write_outputs("integrate", out, csv, config, started);
  return 0;
}

int run_delta_eval(const std::string& func, std::vector<double> eps,
                   std::vector<std::int64_t> ns, const std::string& method, Shared& sh,
                   std::chrono::steady_clock::time_point started) {
  const CylinderFn& f = find_function(func);
  if (eps.empty()) eps = default_eps_schedule();
  if (ns.empty()) ns = default_n_schedule();
  const double tol = sh.tol > 0.0 ? sh.tol : 1e-3;
  const double target = f.at_zero();

  LimitEstimate est;
  if (method == "integral") est = delta_via_integral(f, eps, tol);
  else if (method == "families") est = delta_via_families(f, eps, ns, tol);
  else throw DomainError("method must be integral or families");

  Csv csv;
  csv.header = {"epsilon", "estimate", "error", "method"};
  for (std::size_t i = 0; i < est.eps_used.size(); ++i)
    csv.add_row({fmt17(est.eps_used[i]), fmt17(est.values[i]),
                 fmt17(std::abs(est.values[i] - target)), method});

  json config{{"func", func}, {"eps", eps}, {"n", ns},
              {"tol", tol}, {"method", method}};
  const std::string out = sh.out.empty() ? default_out_path("delta-eval") : sh.out;
  write_outputs("delta-eval", out, csv, config, started);
  return 0;
}

int run_sift(const std::string& func, const std::vector<double>& shift,
             std::vector<double> eps, Shared& sh,
             std::chrono::steady_clock::time_point started) {
  const CylinderFn& f = find_function(func);
  if (eps.empty()) eps = default_eps_schedule();
  const double tol = sh.tol > 0.0 ? sh.tol : 1e-3;

  std::vector<double> at(shift.begin(), shift.end());
  at.resize(std::max<std::size_t>(at.size(), static_cast<std::size_t>(f.effective_dim())),
            0.0);
  const double target = f(at);

  const LimitEstimate est = sifting(f, shift, eps, tol);

  Csv csv;
  csv.header = {"epsilon", "estimate", "error"};
  for (std::size_t i = 0; i < est.eps_used.size(); ++i)
    csv.add_row({fmt17(est.eps_used[i]), fmt17(est.values[i]),
                 fmt17(std::abs(est.values[i] - target))});

  json config{{"func", func}, {"shift", shift}, {"eps", eps}, {"tol", tol}};
  const std::string out = sh.out.empty() ? default_out_path("sift") : sh.out;
  write_outputs("sift", out, csv, config, started);
  return 0;
}

int run_scaling(const std::vector<double>& scales, const std::vector<std::int64_t>& depths,
                Shared& sh, std::chrono::steady_clock::time_point started) {
  const double eps = sh.epsilon > 0.0 ? sh.epsilon : 0.1;
  Csv csv;
  csv.header = {"alpha", "depth", "log_ratio", "status"};
  for (const double a : scales)
    for (const std::int64_t d : depths) {
      const ScalingResult r = scaling_ratio(a, d, eps);
      csv.add_row({fmt17(a), std::to_string(d), fmt17(r.log_ratio), to_string(r.status)});
    }

  json config{{"scale", scales}, {"depth", depths}, {"epsilon", eps}};
  const std::string out = sh.out.empty() ? default_out_path("scaling") : sh.out;
  write_outputs("scaling", out, csv, config, started);
  return 0;
}

int run_changevar(const std::string& blocks_path, const std::string& rect_spec,
                  Shared& sh, std::chrono::steady_clock::time_point started) {
  std::ifstream bf(blocks_path);
  if (!bf) throw DomainError("cannot read block file " + blocks_path);
  const json j = json::parse(bf);
  if (!j.is_array() || j.empty())
    throw DomainError("block file must be a non-empty JSON array of row-major matrices");

  std::vector<Mat> blocks;
  for (const auto& entry : j) {
    std::vector<double> a = entry.get<std::vector<double>>();
    const auto n = static_cast<std::int64_t>(std::llround(std::sqrt(static_cast<double>(a.size()))));
    if (n * n != static_cast<std::int64_t>(a.size()))
      throw DomainError("each block must be a square row-major matrix");
    blocks.push_back(Mat{n, std::move(a)});
  }
  const BlockLinearMap map(std::move(blocks));

  RectChoice rc = resolve_rect(rect_spec, sh.epsilon);
  const GroupingAlpha alpha =
      sh.alpha.size() == 1 && sh.alpha[0] == 1 ? map.natural_grouping() : parse_alpha(sh.alpha);

  ProductOptions opt = rc.ordinary_opt;
  if (sh.tol > 0.0) opt.tol = sh.tol;

  const JacobianProduct jac = block_determinants(map);
  const MeasureValue source = rect_measure(rc.rect, alpha, ProductMode::ordinary, opt);
  const MeasureValue image = map_rectangle_measure(map, rc.rect, alpha, opt);
  const double predicted = jac.log_abs_product + source.log_value;

  std::string dets;
  for (std::size_t i = 0; i < jac.determinants.size(); ++i) {
    if (i) dets += ';';
    dets += fmt17(jac.determinants[i]);
  }

  Csv csv;
  csv.header = {"blocks", "determinants", "log_jacobian", "source_log_measure",
                "predicted_log_measure", "image_log_measure", "abs_difference"};
  csv.add_row({std::to_string(jac.determinants.size()), dets, fmt17(jac.log_abs_product),
               fmt17(source.log_value), fmt17(predicted), fmt17(image.log_value),
               fmt17(std::abs(image.log_value - predicted))});

  json config{{"blocks", blocks_path}, {"rect", rect_spec}, {"alpha", sh.alpha},
              {"tol", sh.tol}};
  const std::string out = sh.out.empty() ? default_out_path("changevar-check") : sh.out;
  write_outputs("changevar-check", out, csv, config, started);
  return 0;
}

int run(int argc, char** argv) {
  const auto started = std::chrono::steady_clock::now();

  CLI::App app{"rinf: infinite-dimensional rectangle measures, Riemann averages and "
               "the delta functional"};
  app.require_subcommand(1);

  Shared sh;

  // products
  auto* products = app.add_subcommand("products", "evaluate an infinite-product preset");
  std::string preset = "alternating_harmonic";
  std::string mode = "ordinary";
  products->add_option("--preset", preset, "alternating_harmonic, two_half, ones, geometric_decay, half");
  products->add_option("--mode", mode, "ordinary, standard or both");
  products->add_option("--alpha", sh.alpha, "block sizes; the last entry repeats")->delimiter(',');
  products->add_option("--tol", sh.tol, "tolerance override");
  products->add_option("--max-terms", sh.max_terms, "term budget override");
  products->add_option("--out", sh.out, "output CSV path");

  // measure
  auto* measure = app.add_subcommand("measure", "rectangle measure");
  std::string rect_spec = "unit_cube";
  measure->add_option("--rect", rect_spec, "unit_cube, delta_box, x_counterexample or a JSON file");
  measure->add_option("--mode", mode, "ordinary, standard or both");
  measure->add_option("--alpha", sh.alpha, "block sizes; the last entry repeats")->delimiter(',');
  measure->add_option("--epsilon", sh.epsilon, "box epsilon for delta_box");
  measure->add_option("--tol", sh.tol, "tolerance override");
  measure->add_option("--max-terms", sh.max_terms, "term budget override");
  measure->add_option("--out", sh.out, "output CSV path");

  // equidist
  auto* equidist = app.add_subcommand("equidist", "counting ratios of point families");
  std::vector<std::int64_t> ns;
  std::string u_spec = "1:0:0.5";
  std::string seq_kind = "vdc";
  equidist->add_option("--rect", rect_spec, "rectangle preset or JSON file");
  equidist->add_option("--n", ns, "family indices")->delimiter(',')->required();
  equidist->add_option("--u", u_spec, "elementary rectangle overrides k:c:d;k:c:d");
  equidist->add_option("--seq", seq_kind, "vdc, weyl or random");
  equidist->add_option("--seed", sh.seed, "seed for random sequences");
  equidist->add_option("--epsilon", sh.epsilon, "box epsilon for delta_box");
  equidist->add_option("--out", sh.out, "output CSV path");

  // integrate
  auto* integrate = app.add_subcommand("integrate", "Riemann integral with refinement trace");
  std::string func = "proj_1";
  integrate->add_option("--func", func, "registry function name");
  integrate->add_option("--rect", rect_spec, "rectangle preset or JSON file");
  integrate->add_option("--epsilon", sh.epsilon, "box epsilon for delta_box");
  integrate->add_option("--tol", sh.tol, "bracket tolerance (default 1e-3)");
  integrate->add_option("--out", sh.out, "output CSV path");

  // delta-eval
  auto* delta_eval = app.add_subcommand("delta-eval", "delta functional along an epsilon schedule");
  std::vector<double> eps_list;
  std::string method = "integral";
  delta_eval->add_option("--func", func, "registry function name");
  delta_eval->add_option("--eps", eps_list, "epsilon schedule")->delimiter(',');
  delta_eval->add_option("--n", ns, "family schedule (families method)")->delimiter(',');
  delta_eval->add_option("--method", method, "integral or families");
  delta_eval->add_option("--tol", sh.tol, "Cauchy tolerance (default 1e-3)");
  delta_eval->add_option("--out", sh.out, "output CSV path");

  // sift
  auto* sift_cmd = app.add_subcommand("sift", "delta functional at a shifted point");
  std::vector<double> shift;
  sift_cmd->add_option("--func", func, "registry function name");
  sift_cmd->add_option("--shift", shift, "shift coordinates")->delimiter(',')->required();
  sift_cmd->add_option("--eps", eps_list, "epsilon schedule")->delimiter(',');
  sift_cmd->add_option("--tol", sh.tol, "Cauchy tolerance (default 1e-3)");
  sift_cmd->add_option("--out", sh.out, "output CSV path");

  // scaling
  auto* scaling = app.add_subcommand("scaling", "truncated scaling ratios of the delta box");
  std::vector<double> scales{2.0};
  std::vector<std::int64_t> depths{10};
  scaling->add_option("--scale", scales, "scaling factors")->delimiter(',');
  scaling->add_option("--depth", depths, "truncation depths")->delimiter(',');
  scaling->add_option("--epsilon", sh.epsilon, "box epsilon (default 0.1)");
  scaling->add_option("--out", sh.out, "output CSV path");

  // changevar-check
  auto* changevar = app.add_subcommand("changevar-check", "change-of-variables identity");
  std::string blocks_path;
  changevar->add_option("--blocks", blocks_path, "JSON array of row-major matrices")->required();
  changevar->add_option("--rect", rect_spec, "rectangle preset or JSON file");
  changevar->add_option("--alpha", sh.alpha, "block sizes; default follows the blocks")->delimiter(',');
  changevar->add_option("--epsilon", sh.epsilon, "box epsilon for delta_box");
  changevar->add_option("--tol", sh.tol, "tolerance override");
  changevar->add_option("--out", sh.out, "output CSV path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n\n" << app.help() << std::flush;
    return 2;
  }

  try {
    if (products->parsed()) return run_products(preset, mode, sh, started);
    if (measure->parsed()) return run_measure(rect_spec, mode, sh, started);
    if (equidist->parsed()) return run_equidist(rect_spec, ns, u_spec, seq_kind, sh, started);
    if (integrate->parsed()) return run_integrate(func, rect_spec, sh, started);
    if (delta_eval->parsed()) return run_delta_eval(func, eps_list, ns, method, sh, started);
    if (sift_cmd->parsed()) return run_sift(func, shift, eps_list, sh, started);
    if (scaling->parsed()) return run_scaling(scales, depths, sh, started);
    if (changevar->parsed()) return run_changevar(blocks_path, rect_spec, sh, started);
    std::cerr << app.help();
    return 2;
  } catch (const BudgetError& e) {
    std::cerr << "non-convergence: " << e.what() << '\n';
    return 3;
  } catch (const ConvergenceError& e) {
    std::cerr << "non-convergence: " << e.what() << '\n';
    return 3;
  } catch (const RectangleClassError& e) {
    std::cerr << "non-convergence: " << e.what() << '\n';
    return 3;
  } catch (const DomainError& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return 2;
  } catch (const json::exception& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
