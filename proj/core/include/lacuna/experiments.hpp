#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lacuna/directions.hpp"
#include "lacuna/field.hpp"
#include "lacuna/operators.hpp"
#include "lacuna/vectorfield.hpp"

namespace lacuna {

// An operator from the registry together with its parameters.
struct OperatorSpec {
  std::string id;
  DirectionSet set;                     // set-based operators
  Direction dir;                        // hilbert_dir, half_plane
  double eps = 1.0;                     // trunc_hilbert_field
  std::optional<VectorFieldLac> field;  // trunc_hilbert_field
  std::vector<int> signs;               // signed_cone_sum
  std::optional<ScaleGrid> scales;      // defaults to ScaleGrid::standard(n)
};

// identity, hilbert_dir, half_plane, signed_cone_sum, trunc_hilbert_field,
// max_hilbert, max_hilbert_plus, max_average, max_trunc_hilbert.
const std::vector<std::string>& registered_operators();
bool is_registered(std::string_view id);

// T f written as L f for a linear L: the operator itself when linear, or
// the branch selected by the pointwise argmax (frozen) for sup operators,
// so that |image| = T f. Averages act on |f|.
struct Linearization {
  ComplexField image;
  std::function<ComplexField(const ComplexField&)> adjoint;
};
Linearization linearize(const OperatorSpec& op, const ComplexField& f);

struct NormEstimate {
  std::string op;
  double p = 2;
  std::size_t grid = 0;
  std::string set_descriptor;
  double value = 0;  // best ||T f||_p / ||f||_p seen
  std::size_t probes = 0;
  int iters = 0;  // ascent iterations per probe
  std::uint64_t seed = 0;
  std::vector<double> history;  // best value after each evaluation, nondecreasing
  ComplexField best_probe;
};

struct EstimateOptions {
  double p = 2;
  std::size_t random_probes = 4;
  int ascent_iters = 10;
  std::uint64_t seed = 0;
  bool second_quadrant = false;           // restrict probes and iterates to the open second quadrant
  std::vector<ComplexField> extra_probes;  // evaluated before the random ones
};

// Lower bound for ||T||_{p->p}: every probe is refined by the p-norm power
// iteration f <- psi_p'(L* psi_p(L f)) with L re-linearized at each step.
NormEstimate estimate_norm_lower(const OperatorSpec& op, std::size_t n, const EstimateOptions& options);

// Probe corpus.
// Gaussian coefficients on |xi|_inf <= n/4 (and the open second quadrant if asked).
ComplexField random_probe(std::size_t n, std::uint64_t seed, bool second_quadrant);
// One lattice frequency inside each cone of the set near radius n/4, found
// along the cone bisector; cones too thin for the lattice are skipped.
std::vector<std::pair<int, int>> cone_frequencies(std::size_t n, const DirectionSet& set);
// sum_j e(xi_j . x) and the packet with Hilbert-matrix weights
// 1/(j - c - 1/2), which makes partial sums over cones large near x = 0.
std::vector<ComplexField> structured_probes(std::size_t n, const DirectionSet& set);

struct GrowthFit {
  double alpha = 0;
  double c = 0;
  double residual = 0;  // RMS of the log residuals
};
// Least squares of log(value) against log log(n). Needs >= 3 rows with n > 1
// and value > 0.
GrowthFit fit_exponent(const std::vector<std::pair<double, double>>& rows);

// Direction set used by the experiments for (D, lambda, size): the canonical
// set with per-level counts splitting log2(size) evenly (later levels first),
// so increasing sizes give nested sets.
DirectionSet experiment_set(int order, const Rational& lambda, std::size_t size);

struct GrowthRow {
  std::string op;
  double p = 2;
  std::string order;  // D, or "eq" for equispaced contrast rows
  std::string lambda;
  std::size_t set_size = 0;
  std::size_t grid = 0;
  std::uint64_t seed = 0;
  double estimate = 0;
  int iters = 0;
  double runtime_ms = 0;
};

struct GrowthConfig {
  std::vector<int> orders{1};
  Rational lambda{1, 2};
  std::vector<std::size_t> sizes;
  std::size_t grid = 512;
  double p = 2;
  std::vector<std::string> operators{"max_hilbert"};
  bool equispaced = false;
  std::size_t random_probes = 2;
  bool structured = true;
  int ascent_iters = 8;
  std::uint64_t seed = 1;
  bool timing = false;
};

// Rows ordered by operator, then D (equispaced last), then increasing size.
// Within a series the best probe of each size is carried to the next.
std::vector<GrowthRow> growth_experiment(const GrowthConfig& config);

struct SuiteRow {
  std::string suite;
  std::string instance;
  std::size_t set_size = 0;
  double p = 2;
  std::uint64_t seed = 0;
  double lhs = 0;
  double rhs = 0;
  double ratio = 0;  // 0 when rhs = 0
};

struct SuiteConfig {
  std::string suite;  // sfe | ss_signs | cww | fs | t2
  std::vector<int> orders{1};
  Rational lambda{1, 2};
  std::vector<std::size_t> sizes;
  std::size_t grid = 256;
  std::vector<double> ps{2};
  std::size_t corpus = 4;
  std::size_t sign_patterns = 100;
  double q = 2;                     // fs inner exponent
  int ascent_iters = 4;             // t2
  std::vector<std::string> fields;  // t2: vector-field specs (JSON text)
  std::uint64_t seed = 1;
};

const std::vector<std::string>& registered_suites();
std::vector<SuiteRow> ratio_suite(const SuiteConfig& config);

// Experiment config documents: {"experiment": "growth" | "ratio", ...}.
struct ExperimentConfig {
  std::optional<GrowthConfig> growth;
  std::optional<SuiteConfig> suite;
};
ExperimentConfig parse_experiment_config(std::string_view json_text);
// Runs the experiment and returns the CSV text.
std::string run_experiment(const ExperimentConfig& config);

// CSV emission and parsing.
std::string format_number(double v);
std::string growth_csv(const std::vector<GrowthRow>& rows);
std::vector<GrowthRow> parse_growth_csv(std::string_view text);
std::string suite_csv(const std::vector<SuiteRow>& rows);
std::vector<SuiteRow> parse_suite_csv(std::string_view text);

// Standalone SVG line chart of a growth or suite CSV: value against log N,
// one series per (operator, D) or (suite, p), fitted curve overlaid when a
// series has >= 3 points.
std::string plot_svg(std::string_view csv_text);

}  // namespace lacuna
