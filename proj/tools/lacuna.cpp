#include <CLI11.hpp>
#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "lacuna/direction_io.hpp"
#include "lacuna/errors.hpp"
#include "lacuna/experiments.hpp"
#include "lacuna/field_io.hpp"
#include "lacuna/multipliers.hpp"
#include "lacuna/operators.hpp"
#include "lacuna/vectorfield.hpp"

using namespace lacuna;

namespace {

// Exact when the denominator is a power of two.
Direction parse_direction(const std::string& text) {
  Rational r = Rational::parse(text);
  std::int64_t q = r.q;
  int l = 0;
  while (q > 1 && q % 2 == 0) {
    q /= 2;
    ++l;
  }
  Dyadic d = q == 1 ? Dyadic(r.p, l) : Dyadic::from_double(r.to_double());
  if (d < Dyadic() || Dyadic(1, 2) < d) throw ValidationError("direction angle must lie in [0, 1/4], got " + text);
  return Direction(d);
}

std::vector<int> parse_ints(const std::string& text, const char* what) {
  std::vector<int> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ValidationError(std::string("bad ") + what + " entry '" + item + "'");
    }
  }
  return out;
}

struct GenArgs {
  int order = 1;
  std::string lambda = "1/2";
  std::string counts = "4";
  std::string out;
};

struct ApplyArgs {
  std::string op;
  std::string set;
  std::string in;
  std::string out;
  std::string field;
  double eps = 1.0;
  std::string theta = "0";
  double tau = 0.0;
  int k = 0;
  std::string kind = "phi";
  std::string signs;
  int cone = 1;
};

struct ExpArgs {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  bool timing = false;
};

int run_gen(const GenArgs& a) {
  DirectionSet set = canonical_lacunary(a.order, Rational::parse(a.lambda),
                                        a.order == 0 ? std::vector<int>{} : parse_ints(a.counts, "count"));
  std::string text = direction_set_to_json(set);
  if (a.out.empty() || a.out == "-")
    std::cout << text;
  else
    write_file_atomic(a.out, text);
  return 0;
}

int run_check(const std::string& path) {
  DirectionSet set = direction_set_from_json(read_file(path));
  OrderReport report = verify_order(set);
  if (report.ok()) {
    std::cout << "order " << *report.order << ", OK (" << set.size() << " directions)\n";
    return 0;
  }
  const auto& v = *report.violation;
  std::cout << "violation at level " << v.level << ", node " << v.node << ": " << v.detail << '\n';
  return 1;
}

DirectionSet load_set(const ApplyArgs& a) {
  if (a.set.empty()) throw ValidationError("operator " + a.op + " needs --set");
  DirectionSet set = direction_set_from_json(read_file(a.set));
  if (set.empty()) throw ValidationError("direction set is empty");
  return set;
}

ComplexField apply_op(const ApplyArgs& a, const ComplexField& f) {
  const std::string& op = a.op;
  if (op == "identity") return f;
  if (op == "hilbert_dir") return hilbert_dir(f, parse_direction(a.theta));
  if (op == "half_plane") return half_plane(f, parse_direction(a.theta), a.tau);
  if (op == "trunc_hilbert_dir") return trunc_hilbert_dir(f, parse_direction(a.theta), a.eps);
  if (op == "directional_average") return directional_average(f, parse_direction(a.theta), a.eps);
  if (op == "lp_radial") return lp_radial(f, a.k);
  if (op == "lp_directional") return lp_directional(f, parse_direction(a.theta), a.k, parse_lp_kind(a.kind));
  if (op == "max_hilbert") return max_hilbert(f, load_set(a), false).value.to_complex();
  if (op == "max_hilbert_plus") return max_hilbert(f, load_set(a), true).value.to_complex();
  if (op == "max_average") return max_average(f, load_set(a), ScaleGrid::standard(f.size())).value.to_complex();
  if (op == "max_trunc_hilbert")
    return max_trunc_hilbert(f, load_set(a), ScaleGrid::standard(f.size())).value.to_complex();
  if (op == "cone_restrict") {
    auto cones = cones_of(load_set(a));
    if (a.cone < 1 || static_cast<std::size_t>(a.cone) > cones.size())
      throw ValidationError("--cone must lie in 1.." + std::to_string(cones.size()));
    return cone_restrict(f, cones[static_cast<std::size_t>(a.cone - 1)]);
  }
  if (op == "signed_cone_sum") return signed_cone_sum(f, load_set(a), parse_ints(a.signs, "sign"));
  if (op == "trunc_hilbert_field") {
    if (a.field.empty()) throw ValidationError("trunc_hilbert_field needs --field");
    VectorFieldLac vf = build_vd(f.size(), parse_field_spec(read_file(a.field)));
    return trunc_hilbert_field(f, vf, a.eps);
  }
  throw ValidationError("unknown operator '" + op + "'");
}

int run_apply(const ApplyArgs& a) {
  ComplexField f = read_f2d1(a.in);
  write_f2d1(a.out, apply_op(a, f));
  return 0;
}

int run_exp(const ExpArgs& a) {
  ExperimentConfig cfg = parse_experiment_config(read_file(a.config));
  if (a.seed) {
    if (cfg.growth) cfg.growth->seed = *a.seed;
    if (cfg.suite) cfg.suite->seed = *a.seed;
  }
  if (a.timing && cfg.growth) cfg.growth->timing = true;
  write_file_atomic(a.out, run_experiment(cfg));
  return 0;
}

int run_plot(const std::string& in, const std::string& out) {
  write_file_atomic(out, plot_svg(read_file(in)));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Directional singular integrals and lacunary direction sets on the periodic grid.\n"
               "Environment: LACUNA_THREADS caps the worker thread count."};
  app.require_subcommand(1);
  app.allow_extras(false);

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a canonical D-lacunary direction set as JSON");
  gen_cmd->add_option("--order,-D", gen.order, "Lacunary order D >= 0")->capture_default_str();
  gen_cmd->add_option("--lambda", gen.lambda, "Lacunarity ratio in (0, 1), as p/q or decimal")->capture_default_str();
  gen_cmd->add_option("--counts", gen.counts, "Children per level, comma separated (one value repeats)")
      ->capture_default_str();
  gen_cmd->add_option("--out,-o", gen.out, "Output JSON path (stdout if omitted)");

  std::string check_path;
  auto* check_cmd = app.add_subcommand("check", "Verify the lacunary order certificate of a direction set");
  check_cmd->add_option("set", check_path, "Direction set JSON")->required();

  ApplyArgs ap;
  auto* apply_cmd = app.add_subcommand("apply", "Apply an operator to an F2D1 field");
  apply_cmd
      ->add_option("--op", ap.op,
                   "identity | hilbert_dir | half_plane | trunc_hilbert_dir | directional_average | lp_radial | "
                   "lp_directional | max_hilbert | max_hilbert_plus | max_average | max_trunc_hilbert | "
                   "cone_restrict | signed_cone_sum | trunc_hilbert_field")
      ->required();
  apply_cmd->add_option("--in,-i", ap.in, "Input F2D1 field")->required();
  apply_cmd->add_option("--out,-o", ap.out, "Output F2D1 field")->required();
  apply_cmd->add_option("--set", ap.set, "Direction set JSON (set operators)");
  apply_cmd->add_option("--field,--field-op", ap.field, "Vector-field spec JSON (trunc_hilbert_field)");
  apply_cmd->add_option("--eps", ap.eps, "Truncation or averaging radius")->capture_default_str();
  apply_cmd->add_option("--theta", ap.theta, "Direction angle in revolutions, [0, 1/4]")->capture_default_str();
  apply_cmd->add_option("--tau", ap.tau, "Half-plane offset")->capture_default_str();
  apply_cmd->add_option("--k", ap.k, "Littlewood-Paley scale")->capture_default_str();
  apply_cmd->add_option("--kind", ap.kind, "Directional profile: phi | psi | psi2 | low | high")
      ->capture_default_str();
  apply_cmd->add_option("--signs", ap.signs, "Cone signs in {-1,0,1}, comma separated (signed_cone_sum)");
  apply_cmd->add_option("--cone", ap.cone, "1-based cone index (cone_restrict)")->capture_default_str();

  ExpArgs ex;
  auto* exp_cmd = app.add_subcommand("exp", "Run a growth or ratio experiment and write CSV");
  exp_cmd->add_option("--config,-c", ex.config, "Experiment config JSON")->required();
  exp_cmd->add_option("--out,-o", ex.out, "Output CSV")->required();
  exp_cmd->add_option("--seed", ex.seed, "Override the config seed");
  exp_cmd->add_flag("--timing", ex.timing, "Record wall-clock runtime_ms (breaks byte-identical reruns)");

  std::string plot_in, plot_out;
  auto* plot_cmd = app.add_subcommand("plot", "Render an experiment CSV as an SVG line chart");
  plot_cmd->add_option("--in,-i", plot_in, "Experiment CSV")->required();
  plot_cmd->add_option("--out,-o", plot_out, "Output SVG")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (*gen_cmd) return run_gen(gen);
    if (*check_cmd) return run_check(check_path);
    if (*apply_cmd) return run_apply(ap);
    if (*exp_cmd) return run_exp(ex);
    if (*plot_cmd) return run_plot(plot_in, plot_out);
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
