// Copyright 2026 The qcross Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "core/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>
#include <system_error>

#include "core/analytic.hpp"
#include "core/errors.hpp"
#include "core/parallel.hpp"

namespace qcross {

namespace {

constexpr std::string_view kHeaderBegin = "# qcross simulate";
constexpr std::string_view kHeaderEnd = "# end-config";

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string shortest(double value) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, r.ptr);
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value,
                            const char* expected, int line) {
  throw Error(ErrorKind::ParseError,
              "invalid value '" + std::string(value) + "' for " +
                  std::string(key) + " (expected " + expected + ")",
              std::string(key), line);
}

std::optional<double> to_double(std::string_view text) {
  text = trim(text);
  if (text.starts_with("sqrt(") && text.ends_with(")")) {
    const auto inner = to_double(text.substr(5, text.size() - 6));
    if (!inner || *inner < 0.0) return std::nullopt;
    return std::sqrt(*inner);
  }
  if (text.starts_with("+")) text.remove_prefix(1);
  double value = 0.0;
  const auto r = std::from_chars(text.data(), text.data() + text.size(), value);
  if (r.ec != std::errc() || r.ptr != text.data() + text.size()) {
    return std::nullopt;
  }
  return value;
}

double parse_real(std::string_view key, std::string_view value, int line) {
  const auto v = to_double(value);
  if (!v) bad_value(key, value, "a real number", line);
  return *v;
}

template <class Int>
Int parse_integer(std::string_view key, std::string_view value, int line) {
  Int out{};
  const auto r = std::from_chars(value.data(), value.data() + value.size(), out);
  if (r.ec != std::errc() || r.ptr != value.data() + value.size()) {
    bad_value(key, value, "an integer", line);
  }
  return out;
}

bool parse_bool(std::string_view key, std::string_view value, int line) {
  if (value == "on" || value == "true" || value == "yes") return true;
  if (value == "off" || value == "false" || value == "no") return false;
  bad_value(key, value, "on or off", line);
}

// Accepts "a", "bi", "a+bi", "a-bi"; each part may be sqrt(x).
Complex parse_complex(std::string_view key, std::string_view value, int line) {
  std::string compact;
  for (char c : value) {
    if (c != ' ' && c != '\t') compact.push_back(c);
  }
  std::string_view text = compact;
  if (text.empty()) bad_value(key, value, "a complex number", line);
  if (!text.ends_with("i")) return {parse_real(key, text, line), 0.0};

  text.remove_suffix(1);
  std::size_t split = std::string_view::npos;
  int depth = 0;
  for (std::size_t k = 0; k < text.size(); ++k) {
    const char c = text[k];
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if ((c == '+' || c == '-') && k > 0 && depth == 0 && text[k - 1] != 'e' &&
        text[k - 1] != 'E') {
      split = k;
    }
  }
  const std::string_view re_text =
      split == std::string_view::npos ? std::string_view{} : text.substr(0, split);
  std::string im_text(split == std::string_view::npos ? text : text.substr(split));
  if (im_text.empty() || im_text == "+") im_text = "1";
  if (im_text == "-") im_text = "-1";
  if (im_text.starts_with("-sqrt(")) {
    im_text = "sqrt(" + im_text.substr(6);
    const auto v = to_double(im_text);
    if (!v) bad_value(key, value, "a complex number", line);
    return {re_text.empty() ? 0.0 : parse_real(key, re_text, line), -*v};
  }
  const auto im = to_double(im_text);
  if (!im) bad_value(key, value, "a complex number", line);
  return {re_text.empty() ? 0.0 : parse_real(key, re_text, line), *im};
}

std::string format_complex(Complex z) {
  if (z.imag() == 0.0) return shortest(z.real());
  const std::string im = shortest(z.imag());
  return shortest(z.real()) + (im.starts_with("-") ? "" : "+") + im + "i";
}

Mode parse_mode(std::string_view value, int line) {
  static const std::map<std::string_view, Mode> modes = {
      {"rabi-analytic", Mode::RabiAnalytic}, {"jc-analytic", Mode::JcAnalytic},
      {"schrodinger", Mode::Schrodinger},    {"master", Mode::Master},
      {"qsd", Mode::Qsd},                    {"qsd-ensemble", Mode::QsdEnsemble}};
  const auto it = modes.find(value);
  if (it == modes.end()) {
    bad_value("mode", value,
              "rabi-analytic, jc-analytic, schrodinger, master, qsd or "
              "qsd-ensemble",
              line);
  }
  return it->second;
}

Scheme parse_scheme(std::string_view value, int line) {
  if (value == "rk4") return Scheme::Rk4;
  if (value == "euler-maruyama") return Scheme::EulerMaruyama;
  if (value == "heun") return Scheme::Heun;
  bad_value("scheme", value, "rk4, euler-maruyama or heun", line);
}

AnalysisMode parse_analysis(std::string_view value, int line) {
  if (value == "auto") return AnalysisMode::Auto;
  if (value == "on") return AnalysisMode::On;
  if (value == "off") return AnalysisMode::Off;
  bad_value("analysis", value, "auto, on or off", line);
}

const char* to_string(AnalysisMode mode) {
  switch (mode) {
    case AnalysisMode::Auto: return "auto";
    case AnalysisMode::On: return "on";
    case AnalysisMode::Off: return "off";
  }
  return "auto";
}

std::vector<double> parse_sweep(std::string_view value, int line) {
  if (value == "default") return default_sweep();
  if (value.starts_with("[") && value.ends_with("]")) {
    value = value.substr(1, value.size() - 2);
  }
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= value.size()) {
    const auto comma = value.find(',', pos);
    const auto item =
        trim(value.substr(pos, comma == std::string_view::npos ? std::string_view::npos
                                                               : comma - pos));
    if (!item.empty()) {
      out.push_back(parse_real("sweep", item, line));
    } else if (comma != std::string_view::npos) {
      bad_value("sweep", value, "a comma-separated list of gamma values", line);
    }
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

using Setter = std::function<void(ScenarioConfig&, std::string_view, int)>;

const std::map<std::string, Setter, std::less<>>& setters() {
  static const std::map<std::string, Setter, std::less<>> table = {
      {"mode", [](ScenarioConfig& c, std::string_view v, int l) { c.mode = parse_mode(v, l); }},
      {"omega0_over_omega",
       [](ScenarioConfig& c, std::string_view v, int l) {
         c.params.omega0 = parse_real("omega0_over_omega", v, l);
       }},
      {"nu_over_omega",
       [](ScenarioConfig& c, std::string_view v, int l) {
         c.params.nu = parse_real("nu_over_omega", v, l);
       }},
      {"lambda_over_omega",
       [](ScenarioConfig& c, std::string_view v, int l) {
         c.params.lambda = parse_real("lambda_over_omega", v, l);
       }},
      {"gamma_over_omega",
       [](ScenarioConfig& c, std::string_view v, int l) {
         c.params.gamma = parse_real("gamma_over_omega", v, l);
       }},
      {"alpha",
       [](ScenarioConfig& c, std::string_view v, int l) {
         c.params.alpha = parse_complex("alpha", v, l);
       }},
      {"drive",
       [](ScenarioConfig& c, std::string_view v, int l) {
         c.params.drive_enabled = parse_bool("drive", v, l);
       }},
      {"shift",
       [](ScenarioConfig& c, std::string_view v, int l) {
         c.params.shift_enabled = parse_bool("shift", v, l);
       }},
      {"drive_phase",
       [](ScenarioConfig& c, std::string_view v, int l) {
         if (v == "matched") {
           c.params.drive_convention = DriveConvention::PhaseMatched;
         } else if (v == "literal") {
           c.params.drive_convention = DriveConvention::Literal;
         } else {
           bad_value("drive_phase", v, "matched or literal", l);
         }
       }},
      {"qubit_initial",
       [](ScenarioConfig& c, std::string_view v, int l) {
         if (v == "up") {
           c.qubit_up = true;
         } else if (v == "down") {
           c.qubit_up = false;
         } else {
           bad_value("qubit_initial", v, "up or down", l);
         }
       }},
      {"n_max",
       [](ScenarioConfig& c, std::string_view v, int l) {
         c.n_max = parse_integer<int>("n_max", v, l);
       }},
      {"leakage_tol",
       [](ScenarioConfig& c, std::string_view v, int l) {
         c.leakage_tol = parse_real("leakage_tol", v, l);
       }},
      {"scheme",
       [](ScenarioConfig& c, std::string_view v, int l) {
         c.integrator.scheme = parse_scheme(v, l);
       }},
      {"dt",
       [](ScenarioConfig& c, std::string_view v, int l) {
         c.integrator.dt = parse_real("dt", v, l);
       }},
      {"t_end",
       [](ScenarioConfig& c, std::string_view v, int l) {
         c.integrator.t_end = parse_real("t_end", v, l);
       }},
      {"sample_stride",
       [](ScenarioConfig& c, std::string_view v, int l) {
         c.integrator.sample_stride = parse_integer<int>("sample_stride", v, l);
       }},
      {"n_traj",
       [](ScenarioConfig& c, std::string_view v, int l) {
         c.n_traj = parse_integer<int>("n_traj", v, l);
       }},
      {"seed",
       [](ScenarioConfig& c, std::string_view v, int l) {
         c.seed = parse_integer<std::uint64_t>("seed", v, l);
       }},
      {"threads",
       [](ScenarioConfig& c, std::string_view v, int l) {
         c.threads = parse_integer<int>("threads", v, l);
       }},
      {"csv", [](ScenarioConfig& c, std::string_view v, int) { c.outputs.csv = v; }},
      {"wigner_dir",
       [](ScenarioConfig& c, std::string_view v, int) { c.outputs.wigner_dir = v; }},
      {"frame_stride",
       [](ScenarioConfig& c, std::string_view v, int l) {
         c.outputs.frame_stride = parse_integer<int>("frame_stride", v, l);
       }},
      {"wigner_x_min",
       [](ScenarioConfig& c, std::string_view v, int l) {
         c.outputs.grid.x_min = parse_real("wigner_x_min", v, l);
       }},
      {"wigner_x_max",
       [](ScenarioConfig& c, std::string_view v, int l) {
         c.outputs.grid.x_max = parse_real("wigner_x_max", v, l);
       }},
      {"wigner_p_min",
       [](ScenarioConfig& c, std::string_view v, int l) {
         c.outputs.grid.p_min = parse_real("wigner_p_min", v, l);
       }},
      {"wigner_p_max",
       [](ScenarioConfig& c, std::string_view v, int l) {
         c.outputs.grid.p_max = parse_real("wigner_p_max", v, l);
       }},
      {"wigner_resolution",
       [](ScenarioConfig& c, std::string_view v, int l) {
         c.outputs.grid.resolution = parse_integer<int>("wigner_resolution", v, l);
       }},
      {"analysis",
       [](ScenarioConfig& c, std::string_view v, int l) {
         c.analysis = parse_analysis(v, l);
       }},
      {"collapse_threshold",
       [](ScenarioConfig& c, std::string_view v, int l) {
         c.thresholds.collapse_max = parse_real("collapse_threshold", v, l);
       }},
      {"revival_threshold",
       [](ScenarioConfig& c, std::string_view v, int l) {
         c.thresholds.revival_min = parse_real("revival_threshold", v, l);
       }},
      {"dip_fraction",
       [](ScenarioConfig& c, std::string_view v, int l) {
         c.thresholds.dip_fraction = parse_real("dip_fraction", v, l);
       }},
      {"regime_margin",
       [](ScenarioConfig& c, std::string_view v, int l) {
         c.regime_margin = parse_real("regime_margin", v, l);
       }},
      {"sweep",
       [](ScenarioConfig& c, std::string_view v, int l) {
         c.sweep = parse_sweep(v, l);
         c.has_sweep = true;
       }},
  };
  return table;
}

// Rounds down to two significant digits.
double round_down_2sig(double x) {
  const int e = static_cast<int>(std::floor(std::log10(x)));
  const int shift = 1 - e;
  if (shift >= 0) {
    const double scale = std::pow(10.0, shift);
    return std::floor(x * scale) / scale;
  }
  const double scale = std::pow(10.0, -shift);
  return std::floor(x / scale) * scale;
}

bool is_analytic(Mode mode) {
  return mode == Mode::RabiAnalytic || mode == Mode::JcAnalytic;
}

bool is_stochastic(Mode mode) {
  return mode == Mode::Qsd || mode == Mode::QsdEnsemble;
}

void require(bool ok, const char* key, const std::string& message) {
  if (!ok) throw Error(ErrorKind::ValidationError, message, key);
}

bool has_timescales(const ScenarioConfig& c) {
  return c.mode != Mode::RabiAnalytic && c.params.lambda > 0.0 &&
         c.params.mean_photons() > 0.0;
}

double last_sample_time(const IntegratorConfig& ic) {
  const std::int64_t steps = ic.steps();
  return static_cast<double>(steps - steps % ic.sample_stride) * ic.dt;
}

bool analysis_applies(const ScenarioConfig& c) {
  if (c.analysis == AnalysisMode::Off || !has_timescales(c)) return false;
  if (c.analysis == AnalysisMode::On) return true;
  return last_sample_time(c.integrator) >= timescales(c.params).revival_time;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::error_code ec;
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw Error(ErrorKind::IoError, "cannot open " + path.string() + " for writing",
                path.string());
  }
  out << text;
  out.flush();
  if (!out) {
    throw Error(ErrorKind::IoError, "failed writing " + path.string(), path.string());
  }
}

std::string frame_name(std::size_t index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "frame_%06zu.txt", index);
  return buf;
}

StateVector initial_state(const ScenarioConfig& c) {
  const FockCutoff cutoff = c.cutoff();
  return product_state(c.qubit_up ? qubit_up() : qubit_down(),
                       coherent_state(c.params.alpha, cutoff));
}

}  // namespace

const char* to_string(Mode mode) noexcept {
  switch (mode) {
    case Mode::RabiAnalytic: return "rabi-analytic";
    case Mode::JcAnalytic: return "jc-analytic";
    case Mode::Schrodinger: return "schrodinger";
    case Mode::Master: return "master";
    case Mode::Qsd: return "qsd";
    case Mode::QsdEnsemble: return "qsd-ensemble";
  }
  return "unknown";
}

std::vector<double> default_sweep() {
  return {0.0, 1e-5, 1e-4, 3e-4, 1e-3, 3e-3, 1e-2, 3e-2};
}

void resolve_defaults(ScenarioConfig& c) {
  SystemParams& p = c.params;
  if (!c.is_explicit("nu_over_omega")) {
    p.nu = c.mode == Mode::RabiAnalytic ? 8.0 : 0.0;
  }
  if (!c.is_explicit("n_max")) {
    c.n_max = FockCutoff::for_mean_photons(p.mean_photons(), c.leakage_tol).n_max();
  }

  IntegratorConfig& ic = c.integrator;
  if (!c.is_explicit("t_end")) {
    ic.t_end = has_timescales(c) ? 1.25 * timescales(p).revival_time
                                 : 20.0 * std::numbers::pi / p.omega;
  }
  if (!c.is_explicit("dt")) {
    double dt = 0.0;
    if (is_analytic(c.mode)) {
      const double scale = std::max({std::abs(p.omega0), p.omega, p.nu,
                                     p.lambda * std::sqrt(p.mean_photons())});
      dt = std::min(0.01, IntegratorConfig::kStabilityBound / scale);
    } else {
      const FockCutoff cutoff(std::max(c.n_max, 1), c.leakage_tol);
      const double n_top = static_cast<double>(c.n_max);
      const double spectral = p.omega * (n_top + 1.0) + 0.5 * std::abs(p.omega0) +
                              p.lambda * std::sqrt(n_top + 1.0) +
                              0.5 * p.gamma * n_top;
      // Bounds the RK4 phase error on the highest retained level; keeps the
      // undamped energy drift near 1e-7 relative for n around 15.
      dt = std::min(IntegratorConfig::kStabilityBound / stability_scale(p, cutoff),
                    0.1 / spectral);
      if (is_stochastic(c.mode) && p.gamma > 0.0) {
        dt = std::min(dt, 0.01 / (p.gamma * n_top));
      }
    }
    ic.dt = round_down_2sig(dt);
  }
  if (!c.is_explicit("sample_stride")) {
    const double spacing = std::max(0.01, ic.t_end / 20000.0);
    ic.sample_stride =
        std::max(1, static_cast<int>(std::floor(spacing / ic.dt + 1e-9)));
  }
  if (!c.is_explicit("frame_stride")) {
    const double sample_dt = ic.dt * ic.sample_stride;
    c.outputs.frame_stride =
        std::max(1, static_cast<int>(std::llround(1.0 / (p.omega * sample_dt))));
  }
  const double half = std::ceil(std::sqrt(2.0) * std::abs(p.alpha) + 4.0);
  GridSpec& g = c.outputs.grid;
  if (!c.is_explicit("wigner_x_min")) g.x_min = -half;
  if (!c.is_explicit("wigner_x_max")) g.x_max = half;
  if (!c.is_explicit("wigner_p_min")) g.p_min = -half;
  if (!c.is_explicit("wigner_p_max")) g.p_max = half;
  if (!c.is_explicit("wigner_resolution")) g.resolution = 41;
}

void validate(const ScenarioConfig& c) {
  const SystemParams& p = c.params;
  require(c.is_explicit("mode"), "mode", "mode is required");
  p.validate();

  require(!c.is_explicit("nu_over_omega") || c.mode == Mode::RabiAnalytic,
          "nu_over_omega", "nu_over_omega is only valid with mode = rabi-analytic");
  require(!c.is_explicit("n_traj") || c.mode == Mode::QsdEnsemble, "n_traj",
          "n_traj is only valid with mode = qsd-ensemble");
  require(c.n_traj >= 2, "n_traj", "n_traj must be >= 2");
  require(c.threads >= 0, "threads", "threads must be >= 0");

  switch (c.mode) {
    case Mode::Schrodinger:
      require(p.gamma == 0.0, "gamma_over_omega",
              "mode = schrodinger requires gamma_over_omega = 0");
      break;
    case Mode::JcAnalytic:
      require(p.omega0 == p.omega, "omega0_over_omega",
              "mode = jc-analytic requires zero detuning (omega0_over_omega = 1)");
      require(p.gamma == 0.0, "gamma_over_omega",
              "mode = jc-analytic requires gamma_over_omega = 0");
      break;
    case Mode::Master:
      require(c.integrator.scheme == Scheme::Rk4, "scheme",
              "mode = master supports scheme = rk4 only");
      break;
    default:
      break;
  }
  require(c.outputs.wigner_dir.empty() ||
              (c.mode != Mode::RabiAnalytic && c.mode != Mode::QsdEnsemble),
          "wigner_dir",
          std::string("Wigner frames are not available with mode = ") +
              to_string(c.mode));

  if (c.has_sweep) {
    require(c.mode == Mode::Master || c.mode == Mode::Qsd ||
                c.mode == Mode::QsdEnsemble,
            "sweep", "sweep requires mode = master, qsd or qsd-ensemble");
    require(!c.sweep.empty(), "sweep", "sweep list is empty");
    for (double g : c.sweep) {
      require(std::isfinite(g) && g >= 0.0 && g < 2.0 * p.omega, "sweep",
              "sweep values must satisfy 0 <= gamma < 2 omega");
    }
  }

  require(c.leakage_tol > 0.0 && c.leakage_tol < 1.0, "leakage_tol",
          "leakage_tol must be in (0, 1)");
  require(c.n_max >= 1, "n_max", "n_max must be >= 1");
  if (c.mode != Mode::RabiAnalytic) {
    const double tail = coherent_tail_weight(p.alpha, c.n_max);
    require(tail <= c.leakage_tol, "n_max",
            "n_max = " + std::to_string(c.n_max) + " leaves coherent tail weight " +
                shortest(tail) + " above leakage_tol");
  }

  const IntegratorConfig& ic = c.integrator;
  if (is_analytic(c.mode)) {
    require(ic.dt > 0.0 && std::isfinite(ic.dt), "dt", "dt must be > 0");
    require(ic.t_end > 0.0 && std::isfinite(ic.t_end), "t_end", "t_end must be > 0");
    require(ic.sample_stride >= 1, "sample_stride", "sample_stride must be >= 1");
  } else {
    ic.validate(p, c.cutoff());
  }

  require(c.outputs.csv.size() > 0, "csv", "csv must name a file");
  require(c.outputs.frame_stride >= 1, "frame_stride", "frame_stride must be >= 1");
  if (!c.outputs.wigner_dir.empty()) c.outputs.grid.validate();

  const FeatureThresholds& t = c.thresholds;
  require(t.collapse_max > 0.0 && t.collapse_max <= 1.0, "collapse_threshold",
          "collapse_threshold must be in (0, 1]");
  require(t.revival_min > 0.0 && t.revival_min <= 1.0, "revival_threshold",
          "revival_threshold must be in (0, 1]");
  require(t.dip_fraction > 0.0 && t.dip_fraction < 1.0, "dip_fraction",
          "dip_fraction must be in (0, 1)");
  require(c.regime_margin >= 1.0, "regime_margin", "regime_margin must be >= 1");

  if (c.analysis == AnalysisMode::On) {
    require(has_timescales(c), "analysis",
            "analysis = on needs lambda > 0, alpha != 0 and a field mode");
    require(last_sample_time(ic) >= timescales(p).revival_time, "analysis",
            "analysis = on needs samples out to the revival time " +
                shortest(timescales(p).revival_time));
  }
}

ScenarioConfig parse_config(std::string_view text) {
  std::vector<std::pair<int, std::string_view>> lines;
  {
    std::size_t pos = 0;
    int number = 0;
    while (pos <= text.size()) {
      const auto nl = text.find('\n', pos);
      const auto end = nl == std::string_view::npos ? text.size() : nl;
      lines.emplace_back(++number, text.substr(pos, end - pos));
      if (nl == std::string_view::npos) break;
      pos = nl + 1;
    }
  }

  // A result file carries its config between the header markers.
  if (!lines.empty() && trim(lines.front().second) == kHeaderBegin) {
    std::vector<std::pair<int, std::string_view>> body;
    bool closed = false;
    for (std::size_t k = 1; k < lines.size(); ++k) {
      const auto line = trim(lines[k].second);
      if (line == kHeaderEnd) {
        closed = true;
        break;
      }
      if (!line.starts_with("#")) {
        throw Error(ErrorKind::ParseError, "config header is not terminated", "",
                    lines[k].first);
      }
      body.emplace_back(lines[k].first, line.substr(1));
    }
    if (!closed) {
      throw Error(ErrorKind::ParseError, "config header is not terminated", "",
                  lines.back().first);
    }
    lines = std::move(body);
  }

  ScenarioConfig cfg;
  for (const auto& [number, raw] : lines) {
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorKind::ParseError, "expected 'key = value'", "", number);
    }
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    if (key.empty()) {
      throw Error(ErrorKind::ParseError, "missing key before '='", "", number);
    }
    const auto it = setters().find(key);
    if (it == setters().end()) {
      throw Error(ErrorKind::ParseError, "unknown key '" + key + "'", key, number);
    }
    if (cfg.is_explicit(key)) {
      throw Error(ErrorKind::ParseError, "duplicate key '" + key + "'", key, number);
    }
    if (value.empty() && key != "sweep" && key != "wigner_dir") {
      throw Error(ErrorKind::ParseError, "missing value for '" + key + "'", key,
                  number);
    }
    it->second(cfg, value, number);
    cfg.explicit_keys.insert(key);
  }
  resolve_defaults(cfg);
  validate(cfg);
  return cfg;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorKind::IoError, "cannot read config file " + path.string(),
                path.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

std::string resolved_text(const ScenarioConfig& c) {
  std::ostringstream out;
  auto put = [&](std::string_view key, const std::string& value) {
    out << key << " = " << value << '\n';
  };
  const SystemParams& p = c.params;
  put("mode", to_string(c.mode));
  put("omega0_over_omega", shortest(p.omega0));
  if (c.mode == Mode::RabiAnalytic) put("nu_over_omega", shortest(p.nu));
  put("lambda_over_omega", shortest(p.lambda));
  put("gamma_over_omega", shortest(p.gamma));
  put("alpha", format_complex(p.alpha));
  put("drive", p.drive_enabled ? "on" : "off");
  put("shift", p.shift_enabled ? "on" : "off");
  put("drive_phase",
      p.drive_convention == DriveConvention::PhaseMatched ? "matched" : "literal");
  put("qubit_initial", c.qubit_up ? "up" : "down");
  put("n_max", std::to_string(c.n_max));
  put("leakage_tol", shortest(c.leakage_tol));
  put("scheme", to_string(c.integrator.scheme));
  put("dt", shortest(c.integrator.dt));
  put("t_end", shortest(c.integrator.t_end));
  put("sample_stride", std::to_string(c.integrator.sample_stride));
  if (c.mode == Mode::QsdEnsemble) put("n_traj", std::to_string(c.n_traj));
  put("seed", std::to_string(c.seed));
  put("csv", c.outputs.csv);
  if (!c.outputs.wigner_dir.empty()) {
    put("wigner_dir", c.outputs.wigner_dir);
    put("frame_stride", std::to_string(c.outputs.frame_stride));
    put("wigner_x_min", shortest(c.outputs.grid.x_min));
    put("wigner_x_max", shortest(c.outputs.grid.x_max));
    put("wigner_p_min", shortest(c.outputs.grid.p_min));
    put("wigner_p_max", shortest(c.outputs.grid.p_max));
    put("wigner_resolution", std::to_string(c.outputs.grid.resolution));
  }
  put("analysis", to_string(c.analysis));
  put("collapse_threshold", shortest(c.thresholds.collapse_max));
  put("revival_threshold", shortest(c.thresholds.revival_min));
  put("dip_fraction", shortest(c.thresholds.dip_fraction));
  put("regime_margin", shortest(c.regime_margin));
  if (c.has_sweep) {
    std::string list;
    for (std::size_t k = 0; k < c.sweep.size(); ++k) {
      if (k > 0) list += ", ";
      list += shortest(c.sweep[k]);
    }
    put("sweep", list);
  }
  return out.str();
}

std::string format_number(double value) {
  char buf[64];
  const auto r =
      std::to_chars(buf, buf + sizeof buf, value, std::chars_format::scientific, 16);
  return std::string(buf, r.ptr);
}

std::string config_header(const ScenarioConfig& cfg) {
  std::string out(kHeaderBegin);
  out += '\n';
  std::istringstream lines(resolved_text(cfg));
  for (std::string line; std::getline(lines, line);) out += "# " + line + '\n';
  out += kHeaderEnd;
  out += '\n';
  return out;
}

std::string csv_text(const ScenarioConfig& cfg, const TimeSeries& series) {
  std::string out = config_header(cfg);
  out += "omega_t";
  for (const std::string& name : series.names()) out += ", " + name;
  out += '\n';
  const std::size_t channels = series.names().size();
  for (std::size_t s = 0; s < series.size(); ++s) {
    out += format_number(series.time()[s]);
    for (std::size_t c = 0; c < channels; ++c) {
      out += ", ";
      out += format_number(series.channel(c)[s]);
    }
    out += '\n';
  }
  return out;
}

std::string frame_text(const ScenarioConfig& cfg, const WignerFrame& frame) {
  const GridSpec& g = frame.grid.spec;
  std::string out = config_header(cfg);
  out += "time = " + format_number(frame.time) + '\n';
  out += "x_range = " + format_number(g.x_min) + ' ' + format_number(g.x_max) + '\n';
  out += "p_range = " + format_number(g.p_min) + ' ' + format_number(g.p_max) + '\n';
  out += "resolution = " + std::to_string(g.resolution) + '\n';
  const Eigen::MatrixXd& v = frame.grid.values;
  for (Index j = 0; j < v.rows(); ++j) {
    for (Index i = 0; i < v.cols(); ++i) {
      if (i > 0) out += ' ';
      out += format_number(v(j, i));
    }
    out += '\n';
  }
  return out;
}

std::string feature_text(const ScenarioConfig& cfg, const ScenarioResult& result) {
  std::string out = config_header(cfg);
  auto put = [&](std::string_view key, const std::string& value) {
    out += std::string(key) + " = " + value + '\n';
  };
  auto flag = [](bool b) { return std::string(b ? "true" : "false"); };
  if (result.regime) put("regime", to_string(*result.regime));
  if (result.features) {
    const FeatureReport& f = *result.features;
    put("collapse", flag(f.collapse));
    put("revival", flag(f.revival));
    put("attractor_dip", flag(f.attractor_dip));
    put("collapse_window_max", format_number(f.collapse_window_max));
    put("revival_window_max", format_number(f.revival_window_max));
    put("revival_peak_time", format_number(f.revival_peak_time));
    put("entropy_peak", format_number(f.entropy_peak));
    put("entropy_peak_time", format_number(f.entropy_peak_time));
    put("entropy_dip", format_number(f.entropy_dip));
    put("entropy_dip_time", format_number(f.entropy_dip_time));
  }
  if (has_timescales(cfg)) {
    const Timescales s = timescales(cfg.params);
    put("rabi_period", format_number(s.rabi_period));
    put("collapse_time", format_number(s.collapse_time));
    put("revival_time", format_number(s.revival_time));
    put("attractor_time", format_number(s.attractor_time));
  }
  return out;
}

ScenarioResult execute(const ScenarioConfig& c) {
  const SystemParams& p = c.params;
  const IntegratorConfig& ic = c.integrator;
  const int threads = static_cast<int>(resolve_threads(c.threads));
  const bool frames_on = !c.outputs.wigner_dir.empty();
  const auto frame_stride = static_cast<std::size_t>(c.outputs.frame_stride);
  const std::vector<Observer> observers = standard_observers();

  ScenarioResult result;
  auto capture = [&](std::size_t sample, double t, const DensityMatrix& rho_field) {
    if (!frames_on || sample % frame_stride != 0) return;
    result.frames.push_back(
        WignerFrame{sample, t, wigner(rho_field, c.outputs.grid, threads)});
  };

  switch (c.mode) {
    case Mode::RabiAnalytic: {
      TimeSeries series({"sigma_z", "entropy_nats", "photon_number",
                         std::string(kNormErrorChannel)});
      const std::int64_t steps = ic.steps();
      for (std::int64_t k = 0; k <= steps; k += ic.sample_stride) {
        const double t = static_cast<double>(k) * ic.dt;
        const double row[] = {analytic_rabi_inversion(t, p), 0.0, 0.0, 0.0};
        series.append(t, row);
      }
      result.series = std::move(series);
      break;
    }
    case Mode::JcAnalytic: {
      TimeSeries series({"sigma_z", "entropy_nats", "photon_number",
                         std::string(kNormErrorChannel)});
      const FockCutoff cutoff = c.cutoff();
      const int n_terms = jc_terms_required(p);
      const std::int64_t steps = ic.steps();
      std::size_t sample = 0;
      for (std::int64_t k = 0; k <= steps; k += ic.sample_stride, ++sample) {
        const double t = static_cast<double>(k) * ic.dt;
        const StateVector psi = analytic_jc_state(t, p, cutoff);
        const double row[] = {analytic_jc_inversion(t, p, n_terms),
                              entropy_nats(reduce_qubit(psi)), photon_number(psi),
                              std::abs(psi.norm() - 1.0)};
        series.append(t, row);
        capture(sample, t, reduce_field(psi));
      }
      result.series = std::move(series);
      break;
    }
    case Mode::Schrodinger:
    case Mode::Qsd: {
      const Model model(p, c.cutoff());
      NoiseStream stream(c.seed, 0);
      StateHook hook;
      if (frames_on) {
        hook = [&](std::size_t sample, double t, const StateVector& psi) {
          if (sample % frame_stride == 0) capture(sample, t, reduce_field(psi));
        };
      }
      result.series =
          run_trajectory(initial_state(c), ic, model, stream, observers, hook);
      break;
    }
    case Mode::Master: {
      const Model model(p, c.cutoff());
      DensityHook hook;
      if (frames_on) {
        hook = [&](std::size_t sample, double t, const DensityMatrix& rho) {
          if (sample % frame_stride == 0) capture(sample, t, reduce_field(rho));
        };
      }
      result.series = run_master(DensityMatrix::pure(initial_state(c)), ic, model,
                                 observers, hook);
      break;
    }
    case Mode::QsdEnsemble: {
      const Model model(p, c.cutoff());
      EnsembleResult ens = run_ensemble(initial_state(c), ic, model, c.n_traj,
                                        c.seed, observers, threads);
      result.series = std::move(ens.mean);
      result.series.add_channel("sigma_z_stderr",
                                ens.standard_error.channel("sigma_z"));
      break;
    }
  }

  if (has_timescales(c)) result.regime = classify_regime(p.gamma, p, c.regime_margin);
  if (analysis_applies(c)) {
    result.features = detect_features(result.series, timescales(p), c.thresholds);
  }
  return result;
}

namespace {

RunArtifacts write_single(const ScenarioConfig& cfg,
                          const std::filesystem::path& out_dir,
                          std::optional<Regime>* regime = nullptr) {
  ScenarioResult result = execute(cfg);
  RunArtifacts artifacts;
  const auto csv_path = out_dir / cfg.outputs.csv;
  write_file(csv_path, csv_text(cfg, result.series));
  artifacts.files.push_back(csv_path);
  for (std::size_t k = 0; k < result.frames.size(); ++k) {
    const auto path = out_dir / cfg.outputs.wigner_dir / frame_name(k);
    write_file(path, frame_text(cfg, result.frames[k]));
    artifacts.files.push_back(path);
  }
  if (result.features || result.regime) {
    const auto path = out_dir / "features.txt";
    write_file(path, feature_text(cfg, result));
    artifacts.files.push_back(path);
  }
  artifacts.features = result.features;
  if (regime) *regime = result.regime;
  return artifacts;
}

}  // namespace

RunArtifacts run_scenario(const ScenarioConfig& cfg,
                          const std::filesystem::path& out_dir) {
  if (!cfg.has_sweep) return write_single(cfg, out_dir);
  RunArtifacts artifacts;
  const std::vector<SweepEntry> entries = run_sweep(cfg, out_dir);
  artifacts.files.push_back(out_dir / "sweep_summary.csv");
  std::size_t failed = 0;
  for (const SweepEntry& e : entries) failed += e.status == "ok" ? 0 : 1;
  if (failed > 0) {
    throw Error(ErrorKind::StabilityViolation,
                std::to_string(failed) + " of " + std::to_string(entries.size()) +
                    " sweep entries failed; see sweep_summary.csv");
  }
  return artifacts;
}

std::vector<SweepEntry> run_sweep(const ScenarioConfig& cfg,
                                  const std::filesystem::path& out_dir) {
  std::vector<SweepEntry> entries;
  for (std::size_t k = 0; k < cfg.sweep.size(); ++k) {
    SweepEntry entry;
    entry.gamma = cfg.sweep[k];
    char index[16];
    std::snprintf(index, sizeof index, "%02zu", k);
    entry.directory = "gamma_" + std::string(index) + "_" + shortest(entry.gamma);

    ScenarioConfig sub = cfg;
    sub.has_sweep = false;
    sub.sweep.clear();
    sub.explicit_keys.erase("sweep");
    sub.params.gamma = entry.gamma;
    sub.explicit_keys.insert("gamma_over_omega");
    try {
      resolve_defaults(sub);
      validate(sub);
      const RunArtifacts a = write_single(sub, out_dir / entry.directory, &entry.regime);
      entry.features = a.features;
      entry.status = "ok";
    } catch (const Error& e) {
      entry.status = e.what();
    }
    entries.push_back(std::move(entry));
  }

  std::string text = config_header(cfg);
  text += "gamma_over_omega, regime, collapse, revival, attractor_dip, status\n";
  auto flag = [](const std::optional<FeatureReport>& f, bool FeatureReport::*m) {
    return f ? std::string((*f).*m ? "true" : "false") : std::string("n/a");
  };
  for (const SweepEntry& e : entries) {
    std::string status = e.status;
    std::replace(status.begin(), status.end(), ',', ';');
    std::replace(status.begin(), status.end(), '\n', ' ');
    text += format_number(e.gamma) + ", " +
            (e.regime ? to_string(*e.regime) : "n/a") + ", " +
            flag(e.features, &FeatureReport::collapse) + ", " +
            flag(e.features, &FeatureReport::revival) + ", " +
            flag(e.features, &FeatureReport::attractor_dip) + ", " + status + '\n';
  }
  write_file(out_dir / "sweep_summary.csv", text);
  return entries;
}

}  // namespace qcross
