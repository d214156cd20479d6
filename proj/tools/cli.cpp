#include "cli.hpp"

#include "buildvol/affine_weyl.hpp"
#include "buildvol/errors.hpp"
#include "buildvol/growth.hpp"
#include "buildvol/rootsystems.hpp"
#include "buildvol/tree.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

namespace buildvol::cli {

namespace {

using nlohmann::ordered_json;

struct RunConfig {
  std::string type = "A1";
  std::string target = "tree";
  std::int64_t q = 2;
  std::int64_t e = 1;
  std::int64_t f = 1;
  std::int64_t radius = -1;
  std::int64_t lmax = -1;
  std::string norm = "AlcoveDiameterOne";
  std::string format = "json";
  std::string out_path;
  std::size_t budget = 10'000'000;
  std::uint64_t seed = 0;
  double tolerance = 0.02;
  bool words = false;
  bool expand = false;
};

// Thrown by a command after it has written its output, when an internal
// cross-check disagrees.
struct Inconsistent : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string big(const BigInt& v) { return to_decimal(v); }

ordered_json big_array(const std::vector<BigInt>& v) {
  ordered_json a = ordered_json::array();
  for (const auto& x : v) a.push_back(big(x));
  return a;
}

std::string rational_string(const Rational& r) {
  std::ostringstream os;
  os << boost::multiprecision::numerator(r);
  if (boost::multiprecision::denominator(r) != 1) os << '/' << boost::multiprecision::denominator(r);
  return os.str();
}

double real(double v) { return round_sig15(v); }

void require_format(const RunConfig& cfg, std::initializer_list<const char*> allowed) {
  for (const char* a : allowed)
    if (cfg.format == a) return;
  throw UsageError("format '" + cfg.format + "' is not available for this command");
}

std::string join(const IntVector& v, char sep = ' ') {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? std::string(1, sep) : "") + std::to_string(v[i]);
  return s;
}

// ---------------------------------------------------------------------------

std::string cmd_roots(const RunConfig& cfg) {
  require_format(cfg, {"json", "csv"});
  const RootSystem rs = build_root_system(parse_cartan_type(cfg.type));
  const IntPolynomial poincare = weyl_poincare_polynomial(rs);
  if (cfg.format == "csv") {
    std::string s = "index,height,coeffs,coroot\n";
    for (std::size_t i = 0; i < rs.positive_roots().size(); ++i) {
      const Root& r = rs.positive_roots()[i];
      s += std::to_string(i) + "," + std::to_string(r.height) + "," + join(r.coeffs) + "," + join(r.coroot) + "\n";
    }
    return s;
  }
  ordered_json j;
  j["type"] = rs.type().to_string();
  j["rank"] = rs.rank();
  j["cartan"] = rs.cartan();
  ordered_json roots = ordered_json::array();
  for (const Root& r : rs.positive_roots())
    roots.push_back({{"coeffs", r.coeffs}, {"coroot", r.coroot}, {"height", r.height}});
  j["positive_roots"] = roots;
  j["num_positive_roots"] = rs.num_positive_roots();
  j["highest_root"] = rs.highest_root().coeffs;
  ordered_json rho = ordered_json::array();
  for (const auto& c : rs.rho()) rho.push_back(rational_string(c));
  j["rho"] = rho;
  j["exponents"] = rs.exponents();
  j["weyl_order"] = big(rs.weyl_order());
  j["poincare"] = big_array(poincare.coeffs());
  j["poincare_string"] = poincare.to_string();
  return j.dump(2) + "\n";
}

std::string cmd_weyl(const RunConfig& cfg) {
  require_format(cfg, {"json", "csv"});
  if (cfg.lmax < 0) throw UsageError("--lmax is required");
  const RootSystem rs = build_root_system(parse_cartan_type(cfg.type));
  const MetricNormalization norm = parse_normalization(cfg.norm);
  AffineEnumerator en(rs, cfg.budget);
  en.extend_to(static_cast<int>(cfg.lmax));
  const AffineCensus census = en.census(cfg.words);
  const IntSeries series = affine_poincare_coeffs(rs, static_cast<unsigned>(cfg.lmax));
  if (census.counts != series.coeffs())
    throw Inconsistent("BFS census of " + census.type + " disagrees with the Poincare series");

  if (cfg.format == "csv") {
    std::string s = "length,count\n";
    for (std::size_t l = 0; l < census.counts.size(); ++l) s += std::to_string(l) + "," + big(census.counts[l]) + "\n";
    return s;
  }
  ordered_json j;
  j["type"] = census.type;
  j["lmax"] = census.max_length;
  j["counts"] = big_array(census.counts);
  j["series_agrees"] = true;
  if (cfg.lmax > static_cast<std::int64_t>(rs.num_positive_roots())) {
    const DistanceBand band = fit_distance_band(en, norm);
    j["norm"] = to_string(norm);
    j["band"] = {{"c", real(band.c)}, {"C", real(band.C)}, {"b", real(band.b)}};
  }
  if (cfg.words) {
    ordered_json words = ordered_json::array();
    for (const auto& w : census.reduced_words) {
      std::string s;
      for (int g : w) s += std::to_string(g);
      words.push_back(s);
    }
    j["reduced_words"] = words;
  }
  return j.dump(2) + "\n";
}

std::string cmd_series(const RunConfig& cfg) {
  require_format(cfg, {"json", "csv"});
  if (cfg.lmax < 0) throw UsageError("--lmax is required");
  if (cfg.q < 2) throw Error(ErrorKind::DomainError, "q must be at least 2");
  const RootSystem rs = build_root_system(parse_cartan_type(cfg.type));
  const auto lmax = static_cast<unsigned>(cfg.lmax);
  const IntSeries series = affine_poincare_coeffs(rs, lmax);
  const auto s = s_of_q_r_sequence(rs, cfg.q, lmax);
  if (cfg.format == "csv") {
    std::string out = "length,coeff,S\n";
    for (unsigned l = 0; l <= lmax; ++l) out += std::to_string(l) + "," + big(series[l]) + "," + big(s[l]) + "\n";
    return out;
  }
  ordered_json j;
  j["type"] = rs.type().to_string();
  j["lmax"] = lmax;
  j["finite_poincare"] = big_array(weyl_poincare_polynomial(rs).coeffs());
  j["exponents"] = rs.exponents();
  j["coeffs"] = big_array(series.coeffs());
  j["q"] = cfg.q;
  j["S"] = big_array(s);
  return j.dump(2) + "\n";
}

std::string cmd_tree(const RunConfig& cfg) {
  require_format(cfg, {"json", "csv", "dot"});
  if (cfg.radius < 0) throw UsageError("--radius is required");
  const ExtensionParams params{cfg.q, cfg.e, cfg.f};
  params.validate();
  const bool dot = cfg.format == "dot";
  if (dot && cfg.radius > 6) throw Error(ErrorKind::DomainError, "DOT export is limited to radius 6");
  const TreeBall ball =
      build_extension_tree(params, cfg.radius, {.budget = cfg.budget, .expand_unramified = cfg.expand || dot});
  if (dot) return ball.to_dot();

  const auto profile = census_profile(ball);
  const RegularityScan scan = scan_regularity(ball);
  bool law = true;
  for (const auto& c : profile) law = law && c.in_F == ball_size(params.q, c.radius / params.e);
  if (!law) throw Inconsistent("intersection census disagrees with ball_size(q, floor(R/e))");
  if (!scan.ok()) throw Inconsistent(std::to_string(scan.violations) + " interior vertices are not regular");

  if (cfg.format == "csv") {
    std::string s = "R,in_F,in_Eprime,total,sphere_F\n";
    for (const auto& c : profile)
      s += std::to_string(c.radius) + "," + big(c.in_F) + "," + big(c.in_Eprime) + "," + big(c.total) + "," +
           big(c.sphere_F) + "\n";
    return s;
  }
  ordered_json j;
  j["q"] = params.q;
  j["e"] = params.e;
  j["f"] = params.f;
  j["radius"] = cfg.radius;
  ordered_json rows = ordered_json::array();
  for (const auto& c : profile)
    rows.push_back({{"q", params.q},
                    {"e", params.e},
                    {"f", params.f},
                    {"R", c.radius},
                    {"in_F", big(c.in_F)},
                    {"total", big(c.total)},
                    {"in_Eprime", big(c.in_Eprime)},
                    {"sphere_F", big(c.sphere_F)}});
  j["censuses"] = rows;
  j["generated_vertices"] = ball.size();
  j["interior_degree"] = params.q_E() + 1;
  j["interior_vertices_scanned"] = scan.scanned;
  j["regular"] = scan.ok();
  j["intersection_law"] = law;
  return j.dump(2) + "\n";
}

std::string cmd_verify(const RunConfig& cfg, bool& passed) {
  require_format(cfg, {"json", "csv"});
  const VerifyTarget target = parse_target(cfg.target);
  const std::int64_t rmax = cfg.radius >= 0 ? cfg.radius : cfg.lmax;
  if (rmax < 0) throw UsageError("--radius or --lmax is required");
  const ExtensionParams params{cfg.q, cfg.e, cfg.f};
  const Theorem1Report rep = verify_theorem1(target, params, static_cast<unsigned>(rmax), cfg.tolerance);
  passed = rep.passed();

  if (cfg.format == "csv") {
    std::string s = "R,volume_F,volume_E\n";
    for (std::size_t i = 0; i < rep.samples_F.size(); ++i)
      s += std::to_string(i + 1) + "," + big(rep.samples_F[i].second) + "," + big(rep.samples_E[i].second) + "\n";
    return s;
  }
  auto samples = [](const std::vector<std::pair<double, BigInt>>& v) {
    ordered_json a = ordered_json::array();
    for (const auto& [r, vol] : v) a.push_back({{"R", real(r)}, {"volume_digits", big(vol)}});
    return a;
  };
  auto entropy = [](const EntropyReport& h) {
    return ordered_json{{"slope", real(h.slope)},
                        {"residual_rms", real(h.residual_rms)},
                        {"window", {real(h.window_begin), real(h.window_end)}},
                        {"method", h.method == EntropyMethod::Regression ? "regression" : "closed_form"}};
  };
  ordered_json j;
  j["target"] = target.to_string();
  j["q"] = params.q;
  j["e"] = params.e;
  j["f"] = params.f;
  j["n"] = params.n();
  j["samples"] = samples(rep.samples_F);
  j["samples_E"] = samples(rep.samples_E);
  j["h_FF"] = real(rep.h_FF.slope);
  j["h_FE"] = real(rep.h_FE.slope);
  j["h_EE"] = real(rep.h_EE.slope);
  j["defect1"] = real(rep.defect1);
  j["defect2"] = real(rep.defect2);
  j["tolerance"] = real(rep.tolerance);
  j["pass"] = rep.passed();
  j["fits"] = {{"FF", entropy(rep.h_FF)}, {"FE", entropy(rep.h_FE)}, {"EE", entropy(rep.h_EE)}};
  if (rep.closed_form)
    j["closed_form"] = {{"h_FF", real((*rep.closed_form)[0])},
                        {"h_FE", real((*rep.closed_form)[1])},
                        {"h_EE", real((*rep.closed_form)[2])}};
  return j.dump(2) + "\n";
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ParseError:
    case ErrorKind::UnknownNormalization: return kUsage;
    case ErrorKind::BudgetExceeded: return kBudget;
    default: return kDomain;
  }
}

std::size_t default_budget() {
  if (const char* env = std::getenv(kBudgetEnv)) {
    try {
      const auto v = std::stoull(env);
      if (v > 0) return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
    }
  }
  return 10'000'000;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  cfg.budget = default_budget();

  CLI::App app{"Ball-volume censuses in Bruhat-Tits buildings and entropy checks under field extensions",
               "buildvol"};
  app.require_subcommand(1);

  auto common = [&](CLI::App* sub) {
    sub->add_option("--format", cfg.format, "json, csv or dot")->check(CLI::IsMember({"json", "csv", "dot"}));
    sub->add_option("--out", cfg.out_path, "write to this file instead of standard output");
    sub->add_option("--budget", cfg.budget, "maximum number of enumerated elements or vertices")
        ->check(CLI::PositiveNumber);
    sub->add_option("--seed", cfg.seed, "seed for randomized sampling");
  };

  auto* roots = app.add_subcommand("roots", "root system summary");
  roots->add_option("--type", cfg.type, "Cartan type, e.g. A2")->required();
  common(roots);

  auto* weyl = app.add_subcommand("weyl", "affine Weyl group census by length");
  weyl->add_option("--type", cfg.type, "Cartan type")->required();
  weyl->add_option("--lmax", cfg.lmax, "largest length")->required()->check(CLI::NonNegativeNumber);
  weyl->add_option("--norm", cfg.norm, "AlcoveDiameterOne or StandardEuclidean");
  weyl->add_flag("--words", cfg.words, "include shortlex reduced words");
  common(weyl);

  auto* series = app.add_subcommand("series", "affine Poincare series and S(q, R)");
  series->add_option("--type", cfg.type, "Cartan type")->required();
  series->add_option("--lmax", cfg.lmax, "truncation order")->required()->check(CLI::NonNegativeNumber);
  series->add_option("--q", cfg.q, "residue field size");
  common(series);

  auto* tree = app.add_subcommand("tree", "SL2 extension tree censuses");
  tree->add_option("--q", cfg.q, "residue field size of F");
  tree->add_option("--e", cfg.e, "ramification index");
  tree->add_option("--f", cfg.f, "residue degree");
  tree->add_option("--radius", cfg.radius, "radius in E-edges")->required()->check(CLI::NonNegativeNumber);
  tree->add_flag("--expand", cfg.expand, "generate unramified branches explicitly");
  common(tree);

  auto* verify = app.add_subcommand("verify", "compare entropies of B_F and B_E");
  verify->add_option("--target", cfg.target, "tree or weyl:<type>")->required();
  verify->add_option("--q", cfg.q, "residue field size of F");
  verify->add_option("--e", cfg.e, "ramification index");
  verify->add_option("--f", cfg.f, "residue degree");
  verify->add_option("--radius", cfg.radius, "largest radius")->check(CLI::NonNegativeNumber);
  verify->add_option("--lmax", cfg.lmax, "largest radius (alias of --radius)")->check(CLI::NonNegativeNumber);
  verify->add_option("--tolerance", cfg.tolerance, "allowed defect relative to h_FF")->check(CLI::PositiveNumber);
  common(verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    std::string text;
    int code = kOk;
    if (roots->parsed()) text = cmd_roots(cfg);
    else if (weyl->parsed()) text = cmd_weyl(cfg);
    else if (series->parsed()) text = cmd_series(cfg);
    else if (tree->parsed()) text = cmd_tree(cfg);
    else {
      bool passed = false;
      text = cmd_verify(cfg, passed);
      if (!passed) {
        err << "verify: a defect exceeds " << cfg.tolerance << " * h_FF\n";
        code = kInconsistent;
      }
    }
    if (cfg.out_path.empty()) {
      out << text;
    } else {
      std::ofstream file(cfg.out_path, std::ios::binary);
      if (!file) {
        err << "cannot write " << cfg.out_path << "\n";
        return kUsage;
      }
      file << text;
    }
    return code;
  } catch (const UsageError& e) {
    err << "usage: " << e.what() << "\n";
    return kUsage;
  } catch (const Inconsistent& e) {
    err << "internal consistency failure: " << e.what() << "\n";
    return kInconsistent;
  } catch (const Error& e) {
    err << e.what() << "\n";
    return exit_code_for(e.kind());
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"buildvol"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace buildvol::cli
