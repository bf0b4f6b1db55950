// Config parsing, CSV emission and SVG charts for experiment results.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <json.hpp>
#include <map>
#include <set>
#include <sstream>

#include "lacuna/errors.hpp"
#include "lacuna/experiments.hpp"

namespace lacuna {

namespace {

using nlohmann::json;

const char* const kGrowthHeader = "operator,p,D,lambda,set_size,grid,seed,estimate,iters,runtime_ms";
const char* const kSuiteHeader = "suite,instance,set_size,p,seed,lhs,rhs,ratio";

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    std::size_t pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) return out;
    start = pos + 1;
  }
}

std::vector<std::string_view> csv_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  for (auto line : split(text, '\n')) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!line.empty()) lines.push_back(line);
  }
  return lines;
}

template <class T>
T parse_value(std::string_view s, std::size_t line, const char* column) {
  T v{};
  auto r = std::from_chars(s.data(), s.data() + s.size(), v);
  if (r.ec != std::errc{} || r.ptr != s.data() + s.size())
    throw ValidationError("CSV line " + std::to_string(line) + ": bad " + column + " '" + std::string(s) + "'");
  return v;
}

std::vector<std::string_view> checked_fields(std::string_view line, std::size_t number, std::size_t expected) {
  auto f = split(line, ',');
  if (f.size() != expected)
    throw ValidationError("CSV line " + std::to_string(number) + ": expected " + std::to_string(expected) +
                          " fields, got " + std::to_string(f.size()));
  return f;
}

// --- config ---------------------------------------------------------------

Rational lambda_of(const json& j) {
  Rational r;
  if (j.is_string())
    r = Rational::parse(j.get<std::string>());
  else if (j.is_number())
    r = Rational::from_double(j.get<double>());
  else
    throw ValidationError("lambda must be a number or a \"p/q\" string");
  if (!(r > Rational(0, 1)) || !(r < Rational(1, 1)))
    throw ValidationError("lambda must lie in (0, 1), got " + to_string(r));
  return r;
}

template <class T>
std::vector<T> list_of(const json& j) {
  if (j.is_array()) return j.get<std::vector<T>>();
  return {j.get<T>()};
}

void reject_unknown(const json& j, const std::set<std::string>& known) {
  for (const auto& [key, _] : j.items())
    if (!known.count(key)) throw ValidationError("unknown config key '" + key + "'");
}

GrowthConfig growth_from(const json& j) {
  reject_unknown(j, {"experiment", "D", "lambda", "sizes", "grid", "p", "operators", "equispaced", "probes",
                     "structured", "ascent_iters", "seed", "timing"});
  GrowthConfig c;
  if (j.contains("D")) c.orders = list_of<int>(j.at("D"));
  if (j.contains("lambda")) c.lambda = lambda_of(j.at("lambda"));
  if (j.contains("sizes")) c.sizes = j.at("sizes").get<std::vector<std::size_t>>();
  c.grid = j.value("grid", c.grid);
  c.p = j.value("p", c.p);
  if (j.contains("operators")) c.operators = list_of<std::string>(j.at("operators"));
  c.equispaced = j.value("equispaced", c.equispaced);
  c.random_probes = j.value("probes", c.random_probes);
  c.structured = j.value("structured", c.structured);
  c.ascent_iters = j.value("ascent_iters", c.ascent_iters);
  c.seed = j.value("seed", c.seed);
  c.timing = j.value("timing", c.timing);
  for (const auto& op : c.operators)
    if (!is_registered(op)) throw ValidationError("unknown operator '" + op + "'");
  return c;
}

SuiteConfig suite_from(const json& j) {
  reject_unknown(j, {"experiment", "suite", "D", "lambda", "sizes", "grid", "p", "corpus", "sign_patterns", "q",
                     "ascent_iters", "fields", "seed"});
  SuiteConfig c;
  c.suite = j.at("suite").get<std::string>();
  if (j.contains("D")) c.orders = list_of<int>(j.at("D"));
  if (j.contains("lambda")) c.lambda = lambda_of(j.at("lambda"));
  if (j.contains("sizes")) c.sizes = j.at("sizes").get<std::vector<std::size_t>>();
  c.grid = j.value("grid", c.grid);
  if (j.contains("p")) c.ps = list_of<double>(j.at("p"));
  c.corpus = j.value("corpus", c.corpus);
  c.sign_patterns = j.value("sign_patterns", c.sign_patterns);
  c.q = j.value("q", c.q);
  c.ascent_iters = j.value("ascent_iters", c.ascent_iters);
  if (j.contains("fields"))
    for (const auto& f : j.at("fields")) c.fields.push_back(f.dump());
  c.seed = j.value("seed", c.seed);
  const auto& suites = registered_suites();
  if (std::find(suites.begin(), suites.end(), c.suite) == suites.end())
    throw ValidationError("unknown suite '" + c.suite + "'");
  return c;
}

// --- plotting -------------------------------------------------------------

struct Series {
  std::string name;
  std::vector<std::pair<double, double>> points;  // (#Theta, value), increasing #Theta
};

std::string fixed(double v, int digits = 2) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string escape_xml(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '<') out += "&lt;";
    else if (c == '>') out += "&gt;";
    else if (c == '&') out += "&amp;";
    else if (c == '"') out += "&quot;";
    else out += c;
  }
  return out;
}

}  // namespace

GrowthFit fit_exponent(const std::vector<std::pair<double, double>>& rows) {
  if (rows.size() < 3) throw ValidationError("growth fit needs at least 3 rows, got " + std::to_string(rows.size()));
  std::vector<double> x, y;
  for (auto [n, v] : rows) {
    if (!(n > 1)) throw ValidationError("growth fit needs set sizes > 1");
    if (!(v > 0)) throw ValidationError("growth fit needs positive values");
    x.push_back(std::log(std::log(n)));
    y.push_back(std::log(v));
  }
  const double m = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i] / m;
    my += y[i] / m;
  }
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0) throw ValidationError("growth fit needs at least two distinct set sizes");
  GrowthFit fit;
  fit.alpha = sxy / sxx;
  const double intercept = my - fit.alpha * mx;
  fit.c = std::exp(intercept);
  double ss = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double r = y[i] - (intercept + fit.alpha * x[i]);
    ss += r * r;
  }
  fit.residual = std::sqrt(ss / m);
  return fit;
}

ExperimentConfig parse_experiment_config(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("experiment config is not valid JSON: ") + e.what());
  }
  try {
    if (!j.is_object()) throw ValidationError("experiment config must be a JSON object");
    const std::string kind = j.value("experiment", std::string("growth"));
    ExperimentConfig c;
    if (kind == "growth")
      c.growth = growth_from(j);
    else if (kind == "ratio")
      c.suite = suite_from(j);
    else
      throw ValidationError("unknown experiment '" + kind + "' (expected growth or ratio)");
    return c;
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed experiment config: ") + e.what());
  }
}

std::string format_number(double v) {
  if (v == 0) return "0";
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

std::string growth_csv(const std::vector<GrowthRow>& rows) {
  std::ostringstream os;
  os << kGrowthHeader << '\n';
  for (const auto& r : rows)
    os << r.op << ',' << format_number(r.p) << ',' << r.order << ',' << r.lambda << ',' << r.set_size << ','
       << r.grid << ',' << r.seed << ',' << format_number(r.estimate) << ',' << r.iters << ','
       << format_number(r.runtime_ms) << '\n';
  return os.str();
}

std::vector<GrowthRow> parse_growth_csv(std::string_view text) {
  auto lines = csv_lines(text);
  if (lines.empty() || lines[0] != kGrowthHeader) throw ValidationError("not a growth CSV (header mismatch)");
  std::vector<GrowthRow> rows;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    auto f = checked_fields(lines[i], i + 1, 10);
    GrowthRow r;
    r.op = std::string(f[0]);
    r.p = parse_value<double>(f[1], i + 1, "p");
    r.order = std::string(f[2]);
    r.lambda = std::string(f[3]);
    r.set_size = parse_value<std::size_t>(f[4], i + 1, "set_size");
    r.grid = parse_value<std::size_t>(f[5], i + 1, "grid");
    r.seed = parse_value<std::uint64_t>(f[6], i + 1, "seed");
    r.estimate = parse_value<double>(f[7], i + 1, "estimate");
    r.iters = parse_value<int>(f[8], i + 1, "iters");
    r.runtime_ms = parse_value<double>(f[9], i + 1, "runtime_ms");
    rows.push_back(std::move(r));
  }
  return rows;
}

std::string suite_csv(const std::vector<SuiteRow>& rows) {
  std::ostringstream os;
  os << kSuiteHeader << '\n';
  for (const auto& r : rows)
    os << r.suite << ',' << r.instance << ',' << r.set_size << ',' << format_number(r.p) << ',' << r.seed << ','
       << format_number(r.lhs) << ',' << format_number(r.rhs) << ',' << format_number(r.ratio) << '\n';
  return os.str();
}

std::vector<SuiteRow> parse_suite_csv(std::string_view text) {
  auto lines = csv_lines(text);
  if (lines.empty() || lines[0] != kSuiteHeader) throw ValidationError("not a suite CSV (header mismatch)");
  std::vector<SuiteRow> rows;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    auto f = checked_fields(lines[i], i + 1, 8);
    SuiteRow r;
    r.suite = std::string(f[0]);
    r.instance = std::string(f[1]);
    r.set_size = parse_value<std::size_t>(f[2], i + 1, "set_size");
    r.p = parse_value<double>(f[3], i + 1, "p");
    r.seed = parse_value<std::uint64_t>(f[4], i + 1, "seed");
    r.lhs = parse_value<double>(f[5], i + 1, "lhs");
    r.rhs = parse_value<double>(f[6], i + 1, "rhs");
    r.ratio = parse_value<double>(f[7], i + 1, "ratio");
    rows.push_back(std::move(r));
  }
  return rows;
}

std::string plot_svg(std::string_view csv_text) {
  auto lines = csv_lines(csv_text);
  if (lines.empty()) throw ValidationError("empty CSV");
  std::vector<Series> series;
  std::string y_label;
  if (lines[0] == kGrowthHeader) {
    y_label = "estimate";
    std::map<std::string, std::map<double, double>> by;
    for (const auto& r : parse_growth_csv(csv_text)) {
      auto& s = by[r.op + " D=" + r.order];
      double& v = s[static_cast<double>(r.set_size)];
      v = std::max(v, r.estimate);
    }
    for (auto& [name, pts] : by) series.push_back({name, {pts.begin(), pts.end()}});
  } else if (lines[0] == kSuiteHeader) {
    y_label = "max ratio";
    std::map<std::string, std::map<double, double>> by;
    for (const auto& r : parse_suite_csv(csv_text)) {
      auto& s = by[r.suite + " p=" + format_number(r.p)];
      double& v = s[static_cast<double>(r.set_size)];
      v = std::max(v, r.ratio);
    }
    for (auto& [name, pts] : by) series.push_back({name, {pts.begin(), pts.end()}});
  } else {
    throw ValidationError("unrecognised CSV header");
  }

  // x = log #Theta; sizes of 1 sit at x = 0.
  double x0 = kInfinity, x1 = -kInfinity, y0 = 0, y1 = -kInfinity;
  for (const auto& s : series)
    for (auto [n, v] : s.points) {
      double x = std::log(n);
      x0 = std::min(x0, x);
      x1 = std::max(x1, x);
      y1 = std::max(y1, v);
    }
  if (series.empty()) x0 = 0, x1 = 1, y1 = 1;
  if (x1 <= x0) x1 = x0 + 1;
  if (y1 <= y0) y1 = y0 + 1;
  y1 *= 1.1;

  const double W = 720, H = 440, left = 70, right = 200, top = 40, bottom = 60;
  const double pw = W - left - right, ph = H - top - bottom;
  auto sx = [&](double x) { return left + (x - x0) / (x1 - x0) * pw; };
  auto sy = [&](double y) { return top + ph - (y - y0) / (y1 - y0) * ph; };
  static const char* const palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf",
                                        "#8c564b", "#e377c2"};

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" viewBox=\"0 0 " << W
     << ' ' << H << "\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
     << "<text x=\"" << left + pw / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
     << "font-size=\"15\">" << y_label << " vs log N</text>\n"
     << "<g class=\"axes\" stroke=\"black\" stroke-width=\"1\">\n"
     << "<line x1=\"" << left << "\" y1=\"" << top + ph << "\" x2=\"" << left + pw << "\" y2=\"" << top + ph
     << "\"/>\n"
     << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << top + ph << "\"/>\n"
     << "</g>\n<g class=\"ticks\" font-family=\"sans-serif\" font-size=\"11\">\n";
  for (int i = 0; i <= 5; ++i) {
    double x = x0 + (x1 - x0) * i / 5, y = y0 + (y1 - y0) * i / 5;
    os << "<text x=\"" << fixed(sx(x)) << "\" y=\"" << top + ph + 18 << "\" text-anchor=\"middle\">" << fixed(x)
       << "</text>\n"
       << "<text x=\"" << left - 8 << "\" y=\"" << fixed(sy(y) + 4) << "\" text-anchor=\"end\">" << fixed(y)
       << "</text>\n";
  }
  os << "</g>\n"
     << "<text x=\"" << left + pw / 2 << "\" y=\"" << H - 16
     << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">log N (N = set size)</text>\n"
     << "<text x=\"18\" y=\"" << top + ph / 2 << "\" transform=\"rotate(-90 18 " << top + ph / 2
     << ")\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" << y_label << "</text>\n";

  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    const char* color = palette[k % std::size(palette)];
    os << "<g class=\"series\" data-name=\"" << escape_xml(s.name) << "\">\n<polyline fill=\"none\" stroke=\""
       << color << "\" stroke-width=\"2\" points=\"";
    for (std::size_t i = 0; i < s.points.size(); ++i)
      os << (i ? " " : "") << fixed(sx(std::log(s.points[i].first))) << ',' << fixed(sy(s.points[i].second));
    os << "\"/>\n";
    for (auto [n, v] : s.points)
      os << "<circle class=\"point\" cx=\"" << fixed(sx(std::log(n))) << "\" cy=\"" << fixed(sy(v))
         << "\" r=\"3.5\" fill=\"" << color << "\"/>\n";
    std::vector<std::pair<double, double>> fit_rows;
    for (auto pt : s.points)
      if (pt.first > 1 && pt.second > 0) fit_rows.push_back(pt);
    std::string legend = s.name;
    if (fit_rows.size() >= 3) {
      try {
        GrowthFit fit = fit_exponent(fit_rows);
        const double a = std::log(fit_rows.front().first), b = std::log(fit_rows.back().first);
        os << "<polyline class=\"fit\" fill=\"none\" stroke=\"" << color
           << "\" stroke-width=\"1\" stroke-dasharray=\"5,4\" points=\"";
        for (int i = 0; i <= 40; ++i) {
          double x = a + (b - a) * i / 40;
          os << (i ? " " : "") << fixed(sx(x)) << ',' << fixed(sy(fit.c * std::pow(x, fit.alpha)));
        }
        os << "\"/>\n";
        legend += " (alpha " + fixed(fit.alpha, 3) + ")";
      } catch (const ValidationError&) {
        // a series with a single size has no fit
      }
    }
    const double ly = top + 16 + 20.0 * static_cast<double>(k);
    os << "<line x1=\"" << left + pw + 14 << "\" y1=\"" << ly << "\" x2=\"" << left + pw + 34 << "\" y2=\"" << ly
       << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n"
       << "<text x=\"" << left + pw + 40 << "\" y=\"" << ly + 4 << "\" font-family=\"sans-serif\" font-size=\"11\">"
       << escape_xml(legend) << "</text>\n</g>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace lacuna
