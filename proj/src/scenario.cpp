#include "decolab/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>
#include <vector>

#include "decolab/format.hpp"

namespace decolab {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    const std::size_t b = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t') ++i;
    if (i > b) out.push_back(s.substr(b, i - b));
  }
  return out;
}

bool parse_double(std::string_view s, double& out) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size() && std::isfinite(out);
}

struct Entry {
  std::string value;
  int line = 0;
};

class Reader {
 public:
  explicit Reader(std::map<std::string, Entry> entries) : entries_(std::move(entries)) {}

  bool has(const std::string& key) const { return entries_.count(key) > 0; }

  int line(const std::string& key) const { return has(key) ? entries_.at(key).line : 0; }

  const std::string& text(const std::string& key) const { return entries_.at(key).value; }

  [[noreturn]] void fail(const std::string& key, const std::string& what) const {
    throw ScenarioError(key, line(key), what);
  }

  double number(const std::string& key, double fallback) const {
    if (!has(key)) return fallback;
    double v = 0.0;
    if (!parse_double(text(key), v)) fail(key, "unparsable number '" + text(key) + "'");
    return v;
  }

  double required_number(const std::string& key) const {
    if (!has(key)) throw ScenarioError(key, 0, "missing required key");
    return number(key, 0.0);
  }

  std::uint64_t integer(const std::string& key, std::uint64_t fallback) const {
    if (!has(key)) return fallback;
    const auto& s = text(key);
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) fail(key, "unparsable integer '" + s + "'");
    return v;
  }

  std::string word(const std::string& key, const std::string& fallback,
                   std::initializer_list<std::string_view> allowed) const {
    if (!has(key)) return fallback;
    std::string v = text(key);
    std::transform(v.begin(), v.end(), v.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (std::find(allowed.begin(), allowed.end(), v) == allowed.end()) {
      std::string msg = "unknown value '" + text(key) + "', expected one of:";
      for (auto a : allowed) msg += " " + std::string(a);
      fail(key, msg);
    }
    return v;
  }

 private:
  std::map<std::string, Entry> entries_;
};

Axis parse_axis(const std::string& s) { return s == "x" ? Axis::X : s == "y" ? Axis::Y : Axis::Z; }
Qubit parse_qubit(const std::string& s) { return s == "s" ? Qubit::S : Qubit::E; }

DensityMatrix2 parse_state(const Reader& r, const std::string& key, const DensityMatrix2& fallback, bool env) {
  if (!r.has(key)) return fallback;
  const auto tokens = split_ws(r.text(key));
  if (tokens.empty()) r.fail(key, "empty state");
  std::string head(tokens[0]);
  std::transform(head.begin(), head.end(), head.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (tokens.size() == 1) {
    if (head == "zero") return states::zero();
    if (!env && head == "plus") return states::plus();
    if (env && head == "thermal-z") return states::thermal_z();
  }
  if (head != "custom") {
    r.fail(key, env ? "expected zero, thermal-z or custom <4 complex entries>"
                    : "expected plus, zero or custom <4 complex entries>");
  }
  if (tokens.size() != 5) r.fail(key, "custom state needs exactly 4 complex entries");
  Mat2 m;
  for (int i = 0; i < 4; ++i) {
    try {
      m(i / 2, i % 2) = parse_complex(tokens[static_cast<std::size_t>(i) + 1]);
    } catch (const InvalidArgument& e) {
      r.fail(key, e.what());
    }
  }
  try {
    return DensityMatrix2(m);
  } catch (const InvariantViolation& e) {
    r.fail(key, std::string("not a valid density matrix: ") + e.what());
  }
}

std::string format_state(const DensityMatrix2& rho, bool env) {
  const Mat2& m = rho.matrix();
  if (m == states::zero().matrix()) return "zero";
  if (!env && m == states::plus().matrix()) return "plus";
  std::string out = "custom";
  for (int i = 0; i < 4; ++i) out += " " + format_complex(m(i / 2, i % 2));
  return out;
}

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      "coupling", "omega_half", "nu_s", "nu_e", "alpha", "gamma", "kondo", "kondo_delta_max",
      "kondo_gap_max", "kondo_target", "kondo_axis", "dd_freq", "dd_axis", "dd_target", "rho_s0",
      "rho_e0", "T", "grid_points", "realizations", "seed"};
  return keys;
}

}  // namespace

double parse_real(std::string_view token) {
  double v = 0.0;
  if (!parse_double(trim(token), v)) throw InvalidArgument("unparsable number '" + std::string(token) + "'");
  return v;
}

Complex parse_complex(std::string_view token) {
  const std::string_view t = trim(token);
  if (t.empty()) throw InvalidArgument("empty complex number");
  if (t.back() != 'i') {
    double re = 0.0;
    if (!parse_double(t, re)) throw InvalidArgument("unparsable complex number '" + std::string(t) + "'");
    return {re, 0.0};
  }
  const std::string_view body = t.substr(0, t.size() - 1);
  // split at the last sign that is not a leading sign or an exponent sign
  std::size_t split = std::string_view::npos;
  for (std::size_t i = body.size(); i-- > 1;) {
    if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  const std::string_view re_part = split == std::string_view::npos ? std::string_view{} : body.substr(0, split);
  std::string_view im_part = split == std::string_view::npos ? body : body.substr(split);
  double re = 0.0, im = 0.0;
  if (!re_part.empty() && !parse_double(re_part, re)) throw InvalidArgument("unparsable complex number '" + std::string(t) + "'");
  if (im_part.empty() || im_part == "+") {
    im = 1.0;
  } else if (im_part == "-") {
    im = -1.0;
  } else if (!parse_double(im_part, im)) {
    throw InvalidArgument("unparsable complex number '" + std::string(t) + "'");
  }
  return {re, im};
}

std::string format_complex(Complex c) {
  std::string im = precise(c.imag());
  if (im.front() != '-') im.insert(im.begin(), '+');
  return precise(c.real()) + im + "i";
}

ScenarioDocument parse_scenario_document(std::string_view text, const std::set<std::string>& extra_keys) {
  std::map<std::string, Entry> entries;
  ScenarioDocument doc;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ScenarioError("", line_no, "expected 'key = value'");
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (key.empty()) throw ScenarioError("", line_no, "missing key before '='");
    if (value.empty()) throw ScenarioError(key, line_no, "missing value");
    if (entries.count(key) || doc.extras.count(key)) throw ScenarioError(key, line_no, "duplicate key");
    if (extra_keys.count(key)) {
      doc.extras[key] = {value, line_no};
      continue;
    }
    if (!known_keys().count(key)) throw ScenarioError(key, line_no, "unknown key");
    entries[key] = {value, line_no};
  }

  const Reader r(std::move(entries));
  Scenario& s = doc.scenario;

  s.model.coupling = r.word("coupling", "zz", {"zz", "xx"}) == "zz" ? Coupling::ZZ : Coupling::XX;
  s.model.omega_half = r.required_number("omega_half");
  if (!(s.model.omega_half > 0.0)) r.fail("omega_half", "omega_half must be positive");
  s.model.nu_s = r.number("nu_s", 0.0);
  s.model.nu_e = r.number("nu_e", 0.0);

  s.horizon = r.required_number("T");
  if (!(s.horizon > 0.0)) r.fail("T", "T must be positive");

  if (r.has("gamma")) {
    KickParams k;
    k.gamma = r.number("gamma", 0.0);
    if (!(k.gamma > 0.0)) r.fail("gamma", "gamma must be positive");
    k.alpha = r.number("alpha", k.alpha);
    if (!(k.alpha >= 0.0)) r.fail("alpha", "alpha must be non-negative");
    if (k.gamma * s.horizon < 1.0) r.fail("gamma", "gamma * T must be at least 1");
    s.kicks = k;
  } else if (r.has("alpha")) {
    r.fail("alpha", "alpha given without gamma");
  }

  if (r.word("kondo", "off", {"on", "off"}) == "on") {
    KondoParams k = KondoParams::for_model(s.model);
    k.delta_max = r.number("kondo_delta_max", k.delta_max);
    if (!(k.delta_max > 0.0)) r.fail("kondo_delta_max", "kondo_delta_max must be positive");
    k.gap_max = r.number("kondo_gap_max", k.delta_max);
    if (!(k.gap_max >= 0.0)) r.fail("kondo_gap_max", "kondo_gap_max must be non-negative");
    k.target = parse_qubit(r.word("kondo_target", "e", {"s", "e"}));
    k.axis = parse_axis(r.word("kondo_axis", "x", {"x", "y", "z"}));
    if (!(s.horizon > k.delta_max)) r.fail("T", "T must exceed kondo_delta_max");
    s.kondo = k;
  } else {
    for (const char* key : {"kondo_delta_max", "kondo_gap_max", "kondo_target", "kondo_axis"}) {
      if (r.has(key)) r.fail(key, "requires kondo = on");
    }
  }

  const double dd_freq = r.number("dd_freq", 0.0);
  if (dd_freq < 0.0) r.fail("dd_freq", "dd_freq must be non-negative (0 = off)");
  const std::string default_axis(to_string(default_dd_axis(s.model.coupling)));
  const Axis dd_axis = parse_axis(r.word("dd_axis", default_axis, {"x", "y", "z"}));
  const Qubit dd_target = parse_qubit(r.word("dd_target", "s", {"s", "e"}));
  if (dd_freq > 0.0) {
    if (dd_freq * s.horizon < 1.0) r.fail("dd_freq", "dd_freq * T must be at least 1");
    s.dd = DDParams{dd_freq, dd_target, dd_axis};
  }

  s.system_frame = s.model.coupling == Coupling::XX ? Frame::PlusMinus : Frame::Computational;
  s.rho_s0 = parse_state(r, "rho_s0", states::plus(), false);
  s.rho_e0 = parse_state(r, "rho_e0", states::thermal_z(), true);

  const auto points = r.integer("grid_points", 200);
  if (points < 2) r.fail("grid_points", "grid_points must be at least 2");
  s.grid = uniform_grid(s.horizon, points);
  s.realizations = r.integer("realizations", 500);
  if (s.realizations < 1) r.fail("realizations", "realizations must be at least 1");
  s.seed = r.integer("seed", 1);

  try {
    s.validate();
  } catch (const InvalidArgument& e) {
    throw ScenarioError("", 0, e.what());
  }
  return doc;
}

Scenario parse_scenario(std::string_view text) { return parse_scenario_document(text).scenario; }

std::string format_scenario(const Scenario& s) {
  std::ostringstream os;
  os << "coupling = " << to_string(s.model.coupling) << '\n';
  os << "omega_half = " << precise(s.model.omega_half) << '\n';
  os << "nu_s = " << precise(s.model.nu_s) << '\n';
  os << "nu_e = " << precise(s.model.nu_e) << '\n';
  if (s.kicks) {
    os << "alpha = " << precise(s.kicks->alpha) << '\n';
    os << "gamma = " << precise(s.kicks->gamma) << '\n';
  }
  os << "kondo = " << (s.kondo ? "on" : "off") << '\n';
  if (s.kondo) {
    os << "kondo_delta_max = " << precise(s.kondo->delta_max) << '\n';
    os << "kondo_gap_max = " << precise(s.kondo->gap_max) << '\n';
    os << "kondo_target = " << to_string(s.kondo->target) << '\n';
    os << "kondo_axis = " << to_string(s.kondo->axis) << '\n';
  }
  os << "dd_freq = " << (s.dd ? precise(s.dd->freq) : "0") << '\n';
  if (s.dd) {
    os << "dd_axis = " << to_string(s.dd->axis) << '\n';
    os << "dd_target = " << to_string(s.dd->target) << '\n';
  }
  os << "rho_s0 = " << format_state(s.rho_s0, false) << '\n';
  os << "rho_e0 = " << format_state(s.rho_e0, true) << '\n';
  os << "T = " << precise(s.horizon) << '\n';
  os << "grid_points = " << s.grid.size() << '\n';
  os << "realizations = " << s.realizations << '\n';
  os << "seed = " << s.seed << '\n';
  return os.str();
}

Scenario scenario_from_echo(std::string_view csv_text) {
  std::string body;
  std::size_t pos = 0;
  while (pos < csv_text.size()) {
    auto nl = csv_text.find('\n', pos);
    if (nl == std::string_view::npos) nl = csv_text.size();
    std::string_view line = csv_text.substr(pos, nl - pos);
    pos = nl + 1;
    if (line.size() >= 2 && line.substr(0, 2) == "# " && line.find(" = ") != std::string_view::npos) {
      body.append(line.substr(2));
      body.push_back('\n');
    }
  }
  return parse_scenario(body);
}

bool operator==(const Scenario& a, const Scenario& b) {
  return a.model == b.model && a.kicks == b.kicks && a.kondo == b.kondo && a.dd == b.dd &&
         a.rho_s0.matrix() == b.rho_s0.matrix() && a.rho_e0.matrix() == b.rho_e0.matrix() &&
         a.system_frame == b.system_frame && a.horizon == b.horizon && a.grid == b.grid &&
         a.realizations == b.realizations && a.seed == b.seed;
}

}  // namespace decolab
