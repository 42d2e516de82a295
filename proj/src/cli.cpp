#include "corostab/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "corostab/pathsim.hpp"
#include "corostab/report.hpp"
#include "corostab/stability.hpp"

namespace corostab {

namespace {

using nlohmann::json;

constexpr const char* kVersion = "1.0.0";

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string command;
  std::string law;
  Params params;
  std::string rate = "zj";
  double lo = 0.01;
  double hi = 100.0;
  long long samples = 1000;
  std::optional<std::uint64_t> seed;
  std::string path = "shear";
  Params path_params;
  std::optional<double> gamma;
  double dt = 1e-3;
  double t_end = 1.0;
  std::string stiffness;  // empty: induced with a law, none without
  std::string expect = "none";
  std::string out;
  int jobs = 0;
  long long budget = 100000;
  std::string target = "csp";
  std::optional<Sym3> sigma0;
};

// Raw flag values; an option only overrides the config when it was given.
struct Flags {
  std::string config;
  std::string law;
  std::vector<std::string> params;
  std::string rate;
  std::string region;
  long long samples = 0;
  std::string seed;
  std::string path;
  std::vector<std::string> path_params;
  double gamma = 0.0;
  double dt = 0.0;
  double t_end = 0.0;
  std::string stiffness;
  std::string expect;
  std::string out;
  int jobs = 0;
  long long budget = 0;
  std::string target;
  std::string sigma0;
};

std::uint64_t parse_seed(const std::string& text, const std::string& origin) {
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    if (text.empty() || text[0] == '-') throw std::invalid_argument("negative");
    v = std::stoull(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size())
    throw UsageError(origin + ": seed must be a nonnegative integer, got '" + text + "'");
  return v;
}

std::pair<double, double> parse_region(const std::string& text, const std::string& origin) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw UsageError(origin + ": region must be 'lo:hi'");
  try {
    std::size_t u1 = 0, u2 = 0;
    const std::string a = text.substr(0, colon), b = text.substr(colon + 1);
    const double lo = std::stod(a, &u1);
    const double hi = std::stod(b, &u2);
    if (u1 != a.size() || u2 != b.size()) throw std::invalid_argument("trailing");
    return {lo, hi};
  } catch (const std::exception&) {
    throw UsageError(origin + ": region must be 'lo:hi' with numeric bounds, got '" + text + "'");
  }
}

Params parse_kv(const std::vector<std::string>& items, const std::string& origin) {
  Params out;
  for (const auto& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0)
      throw UsageError(origin + ": expected key=value, got '" + item + "'");
    const std::string key = item.substr(0, eq), val = item.substr(eq + 1);
    try {
      std::size_t used = 0;
      out[key] = std::stod(val, &used);
      if (used != val.size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw UsageError(origin + ": value of '" + key + "' is not a number");
    }
  }
  return out;
}

Sym3 parse_sigma0(const std::string& text, const std::string& origin) {
  std::array<double, 6> v{};
  std::istringstream in(text);
  std::string tok;
  int k = 0;
  while (std::getline(in, tok, ',')) {
    if (k >= 6) throw UsageError(origin + ": sigma0 needs exactly 6 Voigt entries");
    try {
      std::size_t used = 0;
      v[k] = std::stod(tok, &used);
      if (used != tok.size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw UsageError(origin + ": sigma0 entry '" + tok + "' is not a number");
    }
    ++k;
  }
  if (k != 6) throw UsageError(origin + ": sigma0 needs exactly 6 Voigt entries");
  return Sym3(v);
}

// ---- config file ----

std::string field(const std::string& key) { return "config field '" + key + "'"; }

double num(const json& j, const std::string& key) {
  if (!j.is_number()) throw UsageError(field(key) + ": expected a number");
  return j.get<double>();
}

long long integer(const json& j, const std::string& key) {
  if (!j.is_number_integer()) throw UsageError(field(key) + ": expected an integer");
  return j.get<long long>();
}

std::string str(const json& j, const std::string& key) {
  if (!j.is_string()) throw UsageError(field(key) + ": expected a string");
  return j.get<std::string>();
}

Params num_map(const json& j, const std::string& key) {
  if (!j.is_object()) throw UsageError(field(key) + ": expected an object of numbers");
  Params p;
  for (const auto& [k, v] : j.items()) {
    if (!v.is_number()) throw UsageError(field(key + "." + k) + ": expected a number");
    p[k] = v.get<double>();
  }
  return p;
}

void load_config(const std::string& file, RunConfig& cfg) {
  std::ifstream in(file);
  if (!in) throw UsageError("cannot read config file '" + file + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();

  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw UsageError("config " + file + ":" + std::to_string(line) + ":" + std::to_string(col) +
                     ": " + e.what());
  }
  if (!j.is_object()) throw UsageError("config " + file + ": top level must be an object");

  static const std::set<std::string> known = {
      "command", "law",   "params",    "rate",   "region", "samples", "seed",
      "path",    "path_params", "gamma", "dt",   "t_end",  "stiffness", "expect",
      "out",     "jobs",  "budget",    "target", "sigma0"};
  for (const auto& [key, val] : j.items()) {
    if (!known.count(key)) throw UsageError(field(key) + ": unknown key");
  }
  if (j.contains("command") && str(j["command"], "command") != cfg.command)
    throw UsageError(field("command") + ": config is for '" + j["command"].get<std::string>() +
                     "', not '" + cfg.command + "'");
  if (j.contains("law")) cfg.law = str(j["law"], "law");
  if (j.contains("params")) cfg.params = num_map(j["params"], "params");
  if (j.contains("rate")) cfg.rate = str(j["rate"], "rate");
  if (j.contains("region")) {
    const json& r = j["region"];
    if (r.is_string()) {
      std::tie(cfg.lo, cfg.hi) = parse_region(r.get<std::string>(), field("region"));
    } else if (r.is_array() && r.size() == 2) {
      cfg.lo = num(r[0], "region[0]");
      cfg.hi = num(r[1], "region[1]");
    } else {
      throw UsageError(field("region") + ": expected 'lo:hi' or [lo, hi]");
    }
  }
  if (j.contains("samples")) cfg.samples = integer(j["samples"], "samples");
  if (j.contains("seed")) {
    const json& s = j["seed"];
    if (s.is_number_unsigned() || (s.is_number_integer() && s.get<long long>() >= 0))
      cfg.seed = s.get<std::uint64_t>();
    else if (s.is_string())
      cfg.seed = parse_seed(s.get<std::string>(), field("seed"));
    else
      throw UsageError(field("seed") + ": expected a nonnegative integer");
  }
  if (j.contains("path")) cfg.path = str(j["path"], "path");
  if (j.contains("path_params")) cfg.path_params = num_map(j["path_params"], "path_params");
  if (j.contains("gamma")) cfg.gamma = num(j["gamma"], "gamma");
  if (j.contains("dt")) cfg.dt = num(j["dt"], "dt");
  if (j.contains("t_end")) cfg.t_end = num(j["t_end"], "t_end");
  if (j.contains("stiffness")) cfg.stiffness = str(j["stiffness"], "stiffness");
  if (j.contains("expect")) cfg.expect = str(j["expect"], "expect");
  if (j.contains("out")) cfg.out = str(j["out"], "out");
  if (j.contains("jobs")) cfg.jobs = static_cast<int>(integer(j["jobs"], "jobs"));
  if (j.contains("budget")) cfg.budget = integer(j["budget"], "budget");
  if (j.contains("target")) cfg.target = str(j["target"], "target");
  if (j.contains("sigma0")) {
    const json& s = j["sigma0"];
    if (!s.is_array() || s.size() != 6)
      throw UsageError(field("sigma0") + ": expected 6 Voigt entries");
    std::array<double, 6> v{};
    for (int k = 0; k < 6; ++k) v[k] = num(s[k], "sigma0");
    cfg.sigma0 = Sym3(v);
  }
}

// ---- option wiring ----

struct Wired {
  CLI::App* app = nullptr;
  std::map<std::string, CLI::Option*> opts;
  bool given(const std::string& name) const {
    auto it = opts.find(name);
    return it != opts.end() && it->second->count() > 0;
  }
};

Wired wire(CLI::App& parent, const std::string& name, const std::string& help, Flags& f,
           const std::vector<std::string>& which) {
  Wired w;
  w.app = parent.add_subcommand(name, help);
  auto has = [&](const char* n) { return std::find(which.begin(), which.end(), n) != which.end(); };
  auto& o = w.opts;
  o["config"] = w.app->add_option("--config", f.config, "JSON run configuration");
  if (has("law")) o["law"] = w.app->add_option("--law", f.law, "constitutive law name");
  if (has("params"))
    o["params"] = w.app->add_option("--params", f.params, "law or stiffness parameters k=v");
  if (has("rate"))
    o["rate"] = w.app->add_option("--rate", f.rate, "zj | gn | log | spin:n1,n2,n3 | oldroyd | truesdell");
  if (has("region")) o["region"] = w.app->add_option("--region", f.region, "eigenvalue region lo:hi");
  if (has("samples")) o["samples"] = w.app->add_option("--samples", f.samples, "number of samples");
  if (has("seed")) o["seed"] = w.app->add_option("--seed", f.seed, "RNG seed (or COROSTAB_SEED)");
  if (has("path")) o["path"] = w.app->add_option("--path", f.path, "deformation path");
  if (has("path_params"))
    o["path_params"] = w.app->add_option("--path-param", f.path_params, "path parameters k=v");
  if (has("gamma")) o["gamma"] = w.app->add_option("--gamma", f.gamma, "shear rate");
  if (has("dt")) o["dt"] = w.app->add_option("--dt", f.dt, "time step");
  if (has("t_end")) o["t_end"] = w.app->add_option("--t-end", f.t_end, "final time");
  if (has("stiffness"))
    o["stiffness"] = w.app->add_option("--stiffness", f.stiffness, "induced | zero-grade | none");
  if (has("sigma0"))
    o["sigma0"] = w.app->add_option("--sigma0", f.sigma0, "initial stress, 6 Voigt entries");
  if (has("expect")) o["expect"] = w.app->add_option("--expect", f.expect, "expected verdict");
  if (has("target")) o["target"] = w.app->add_option("--target", f.target, "csp | tsts");
  if (has("budget")) o["budget"] = w.app->add_option("--budget", f.budget, "probe budget");
  if (has("jobs")) o["jobs"] = w.app->add_option("--jobs", f.jobs, "worker threads (0 = all)");
  o["out"] = w.app->add_option("--out", f.out, "output path prefix");
  return w;
}

RunConfig resolve(const Wired& w, const Flags& f, const std::string& command) {
  RunConfig cfg;
  cfg.command = command;
  if (w.given("config")) load_config(f.config, cfg);
  if (w.given("law")) cfg.law = f.law;
  if (w.given("params")) {
    for (const auto& [k, v] : parse_kv(f.params, "--params")) cfg.params[k] = v;
  }
  if (w.given("rate")) cfg.rate = f.rate;
  if (w.given("region")) std::tie(cfg.lo, cfg.hi) = parse_region(f.region, "--region");
  if (w.given("samples")) cfg.samples = f.samples;
  if (w.given("seed")) cfg.seed = parse_seed(f.seed, "--seed");
  if (w.given("path")) cfg.path = f.path;
  if (w.given("path_params")) {
    for (const auto& [k, v] : parse_kv(f.path_params, "--path-param")) cfg.path_params[k] = v;
  }
  if (w.given("gamma")) cfg.gamma = f.gamma;
  if (w.given("dt")) cfg.dt = f.dt;
  if (w.given("t_end")) cfg.t_end = f.t_end;
  if (w.given("stiffness")) cfg.stiffness = f.stiffness;
  if (w.given("sigma0")) cfg.sigma0 = parse_sigma0(f.sigma0, "--sigma0");
  if (w.given("expect")) cfg.expect = f.expect;
  if (w.given("target")) cfg.target = f.target;
  if (w.given("budget")) cfg.budget = f.budget;
  if (w.given("jobs")) cfg.jobs = f.jobs;
  if (w.given("out")) cfg.out = f.out;
  if (!cfg.seed) {
    if (const char* env = std::getenv("COROSTAB_SEED")) cfg.seed = parse_seed(env, "COROSTAB_SEED");
  }
  if (cfg.jobs < 0) throw UsageError("--jobs must be >= 0");
  return cfg;
}

void require_law(const RunConfig& cfg) {
  if (cfg.law.empty()) throw UsageError("--law is required");
}

void require_seed(const RunConfig& cfg) {
  if (!cfg.seed) throw UsageError("a seed is required (--seed, config 'seed' or COROSTAB_SEED)");
}

ConstitutiveLaw law_of(const RunConfig& cfg) {
  try {
    return make_law(cfg.law, cfg.params);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

RateKind rate_of(const RunConfig& cfg) {
  try {
    return parse_rate(cfg.rate);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

SampleRegion region_of(const RunConfig& cfg) {
  if (cfg.samples < 1) throw UsageError("--samples must be >= 1 (N >= 1)");
  SampleRegion r{cfg.lo, cfg.hi, static_cast<std::size_t>(cfg.samples), *cfg.seed};
  try {
    r.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return r;
}

json params_json(const Params& p) {
  json j = json::object();
  for (const auto& [k, v] : p) j[k] = v;
  return j;
}

json envelope(const std::string& command, json config, json result) {
  return {{"schema_version", kSchemaVersion},
          {"command", command},
          {"config", std::move(config)},
          {"result", std::move(result)}};
}

json metadata(const RunConfig& cfg) {
  return {{"timestamp", utc_timestamp()}, {"tool", "corostab"}, {"version", kVersion},
          {"jobs", cfg.jobs}};
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write '" + path + "'");
  f << content;
  if (!f) throw std::runtime_error("failed writing '" + path + "'");
}

std::string prefix(const RunConfig& cfg, const std::string& fallback) {
  return cfg.out.empty() ? fallback : cfg.out;
}

// ---- commands ----

int cmd_check(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  require_law(cfg);
  require_seed(cfg);
  const ConstitutiveLaw law = law_of(cfg);
  const RateKind kind = rate_of(cfg);
  if (!kind.corotational()) throw UsageError("check needs a corotational rate");
  const SampleRegion region = region_of(cfg);
  static const std::set<std::string> expectations = {
      "none", "csp-positive", "csp-negative", "tsts-positive", "tsts-negative", "equivalent",
      "invertible"};
  if (!expectations.count(cfg.expect)) throw UsageError("unknown expectation '" + cfg.expect + "'");
  if (cfg.budget < 1) throw UsageError("--budget must be >= 1");

  const Exec exec = cfg.jobs == 1 ? Exec::Serial : Exec::Parallel;
  const StabilityReport eq = equivalence_scan(law, kind, region, exec, cfg.jobs);
  const InvertibilityReport inv = invertibility_scan(law, {kind}, region, exec, cfg.jobs);

  std::optional<SearchResult> search;
  if ((cfg.expect == "csp-positive" || cfg.expect == "csp-negative") && eq.csp_negative == 0)
    search = counterexample_search(law, kind, region.lo, region.hi, region.seed,
                                   static_cast<std::size_t>(cfg.budget));
  const bool witness = search && search->witness;

  bool pass = true;
  if (cfg.expect == "csp-positive") pass = eq.csp_negative == 0 && !witness;
  if (cfg.expect == "csp-negative") pass = eq.csp_negative > 0 || witness;
  if (cfg.expect == "tsts-positive") pass = eq.tsts_negative == 0;
  if (cfg.expect == "tsts-negative") pass = eq.tsts_negative > 0;
  if (cfg.expect == "equivalent") pass = eq.disagreements.empty();
  if (cfg.expect == "invertible") pass = inv.inconsistent == 0 && inv.singular == 0;

  json config = {{"law", law.name},       {"params", params_json(law.params)},
                 {"rate", kind.name()},   {"region", {region.lo, region.hi}},
                 {"samples", region.n},   {"seed", region.seed},
                 {"expect", cfg.expect},  {"budget", cfg.budget}};
  json result = {{"equivalence", to_json(eq)},
                 {"invertibility", to_json(inv)},
                 {"expectation_met", pass}};
  if (search) result["search"] = to_json(*search);
  json doc = envelope("check", config, result);
  doc["metadata"] = metadata(cfg);

  const std::string base = prefix(cfg, "corostab-check");
  write_file(base + ".json", doc.dump(2) + "\n");
  write_file(base + ".csv", stability_csv(eq));

  out << "check " << law.name << " " << kind.name() << ": agreement " << eq.agreement()
      << ", csp negative " << eq.csp_negative << ", tsts negative " << eq.tsts_negative
      << ", disagreements " << eq.disagreements.size();
  if (search) out << ", search " << (witness ? "witness" : "none-found");
  out << "\n";
  if (!pass) {
    err << "verdict mismatch: expected " << cfg.expect << "\n";
    return kExitMismatch;
  }
  return kExitOk;
}

std::optional<Overlay> overlay_for(const StiffnessSource& src,
                                   const RateKind& kind, const DeformationPath& path,
                                   const Sym3& sigma0) {
  if (path.name != "shear") return std::nullopt;
  const double gamma = path.params.at("gamma");
  if (src.tag == StiffnessSource::Tag::ZeroGrade && kind.tag == RateKind::Tag::ZJ &&
      sigma0 == Sym3()) {
    const double mu = src.mu;
    return Overlay([mu, gamma](double t) { return mu * std::sin(gamma * t); });
  }
  if (src.tag == StiffnessSource::Tag::Induced &&
      (src.law->name == "linear-finger" || src.law->name == "mu-b-binv")) {
    const double mu = src.law->params.at("mu");
    return Overlay([mu, gamma](double t) { return mu * gamma * t; });
  }
  return std::nullopt;
}

int cmd_simulate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const RateKind kind = rate_of(cfg);
  Params pp = cfg.path_params;
  if (cfg.gamma) {
    if (cfg.path != "shear" && cfg.path != "rotation-shear")
      throw UsageError("--gamma applies to the shear paths only");
    pp["gamma"] = *cfg.gamma;
  }
  DeformationPath path;
  try {
    path = make_path(cfg.path, pp);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (!(cfg.dt > 0.0)) throw UsageError("--dt must be positive");
  if (!(cfg.t_end >= 0.0)) throw UsageError("--t-end must be nonnegative");

  const std::string stiffness =
      !cfg.stiffness.empty() ? cfg.stiffness : (cfg.law.empty() ? "none" : "induced");
  StiffnessSource src;
  json config = {{"stiffness", stiffness}, {"rate", kind.name()}, {"path", path.name},
                 {"path_params", params_json(path.params)}, {"dt", cfg.dt},
                 {"t_end", cfg.t_end}};
  Sym3 sigma0 = cfg.sigma0.value_or(Sym3());
  if (stiffness == "induced") {
    if (cfg.law.empty()) throw UsageError("--law is required for induced stiffness");
    src = StiffnessSource::induced(law_of(cfg));
    config["law"] = src.law->name;
    config["params"] = params_json(src.law->params);
    const Sym3 consistent = src.law->stress(state_at(path, 0.0).B);
    if (cfg.sigma0 && (*cfg.sigma0 - consistent).norm() > 1e-12 * (1.0 + consistent.norm()))
      throw UsageError("induced runs start at sigma0 = sigma(B(0))");
    sigma0 = consistent;
  } else if (stiffness == "zero-grade") {
    for (const auto& [k, v] : cfg.params)
      if (k != "mu" && k != "lambda")
        throw UsageError("zero-grade stiffness: unknown parameter '" + k + "'");
    const double mu = cfg.params.count("mu") ? cfg.params.at("mu") : 1.0;
    const double lam = cfg.params.count("lambda") ? cfg.params.at("lambda") : 1.0;
    try {
      src = StiffnessSource::zero_grade(mu, lam);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    config["params"] = {{"mu", mu}, {"lambda", lam}};
  } else if (stiffness == "none") {
    src = StiffnessSource::none();
  } else {
    throw UsageError("unknown stiffness '" + stiffness + "'");
  }
  config["sigma0"] = to_json(sigma0);

  const std::string base = prefix(cfg, "corostab-simulate");
  Trajectory tr;
  try {
    tr = integrate(src, kind, path, cfg.t_end, cfg.dt, sigma0);
  } catch (const DivergenceError& e) {
    json result = {{"status", "diverged"},
                   {"last_step", e.last_step()},
                   {"last_t", e.last_t()},
                   {"last_sigma", to_json(e.last_sigma())}};
    json doc = envelope("simulate", config, result);
    doc["metadata"] = metadata(cfg);
    write_file(base + ".json", doc.dump(2) + "\n");
    err << "diverged after step " << e.last_step() << " at t = " << e.last_t()
        << ", last sigma " << to_json(e.last_sigma()).dump() << "\n";
    return kExitError;
  }

  const auto overlay = overlay_for(src, kind, path, sigma0);
  const json meta = {{"schema_version", kSchemaVersion}, {"command", "simulate"},
                     {"config", config}};
  write_file(base + ".csv", trajectory_csv(tr, meta, overlay));

  const InvariantDrift drift = invariant_drift(tr);
  double asym = 0.0;
  for (const auto& d : tr.diag) asym = std::max(asym, d.asymmetry);
  json result = {{"status", "ok"},
                 {"steps", tr.t.size() - 1},
                 {"final_t", tr.t.back()},
                 {"final_sigma", to_json(tr.sigma.back())},
                 {"invariant_drift", {{"trace", drift.trace}, {"norm", drift.norm}, {"det", drift.det}}},
                 {"max_asymmetry", asym}};
  if (overlay) {
    double e = 0.0;
    for (std::size_t i = 0; i < tr.t.size(); ++i)
      e = std::max(e, std::abs(tr.sigma[i](0, 1) - (*overlay)(tr.t[i])));
    result["max_overlay_error"] = e;
  }
  json doc = envelope("simulate", config, result);
  doc["metadata"] = metadata(cfg);
  write_file(base + ".json", doc.dump(2) + "\n");
  out << "simulate " << src.name() << " " << kind.name() << " " << path.name << ": "
      << tr.t.size() - 1 << " steps, final s12 " << tr.sigma.back()(0, 1) << "\n";
  return kExitOk;
}

int cmd_search(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  require_law(cfg);
  require_seed(cfg);
  if (cfg.budget < 1) throw UsageError("--budget must be >= 1");
  const ConstitutiveLaw law = law_of(cfg);
  const RateKind kind = rate_of(cfg);
  if (!kind.corotational()) throw UsageError("search needs a corotational rate");
  if (!(cfg.lo > 0.0 && cfg.lo < cfg.hi)) throw UsageError("region: need 0 < lo < hi");
  SearchTarget target;
  if (cfg.target == "csp")
    target = SearchTarget::CSP;
  else if (cfg.target == "tsts")
    target = SearchTarget::TSTS;
  else
    throw UsageError("unknown target '" + cfg.target + "'");
  if (cfg.expect != "none" && cfg.expect != "witness" && cfg.expect != "none-found")
    throw UsageError("unknown expectation '" + cfg.expect + "'");

  const SearchResult res = counterexample_search(law, kind, cfg.lo, cfg.hi, *cfg.seed,
                                                 static_cast<std::size_t>(cfg.budget), target);
  json config = {{"law", law.name},   {"params", params_json(law.params)},
                 {"rate", kind.name()}, {"region", {cfg.lo, cfg.hi}},
                 {"seed", *cfg.seed}, {"budget", cfg.budget},
                 {"target", cfg.target}, {"expect", cfg.expect}};
  json doc = envelope("search", config, to_json(res));
  doc["metadata"] = metadata(cfg);
  write_file(prefix(cfg, "corostab-search") + ".json", doc.dump(2) + "\n");

  out << "search " << law.name << " " << kind.name() << ": "
      << (res.witness ? "witness" : "none-found") << " after " << res.probes << " probes\n";
  const bool found = res.witness.has_value();
  if ((cfg.expect == "witness" && !found) || (cfg.expect == "none-found" && found)) {
    err << "verdict mismatch: expected " << cfg.expect << "\n";
    return kExitMismatch;
  }
  return kExitOk;
}

int cmd_catalog(std::ostream& out) {
  json laws = json::array();
  for (const auto& law : law_catalog()) {
    laws.push_back({{"name", law.name},
                    {"description", law.description},
                    {"params", params_json(law.params)},
                    {"claims_invertible", law.claims_invertible}});
  }
  json doc = {{"schema_version", kSchemaVersion},
              {"laws", laws},
              {"rates", {"zj", "gn", "log", "spin:nu1,nu2,nu3", "oldroyd", "truesdell"}},
              {"paths", path_names()},
              {"stiffness", {"induced", "zero-grade", "none"}}};
  out << doc.dump(2) << "\n";
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"corotational stress rates and constitutive stability checks", "corostab"};
  app.require_subcommand(1);
  Flags f;
  const Wired check = wire(app, "check", "equivalence and invertibility scan", f,
                           {"law", "params", "rate", "region", "samples", "seed", "expect",
                            "budget", "jobs"});
  const Wired simulate = wire(app, "simulate", "integrate a hypo-elastic rate equation", f,
                              {"law", "params", "rate", "path", "path_params", "gamma", "dt",
                               "t_end", "stiffness", "sigma0"});
  const Wired search = wire(app, "search", "counterexample search", f,
                            {"law", "params", "rate", "region", "seed", "budget", "target",
                             "expect"});
  CLI::App* catalog = app.add_subcommand("catalog", "list laws, rates and paths");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (check.app->parsed()) return cmd_check(resolve(check, f, "check"), out, err);
    if (simulate.app->parsed()) return cmd_simulate(resolve(simulate, f, "simulate"), out, err);
    if (search.app->parsed()) return cmd_search(resolve(search, f, "search"), out, err);
    if (catalog->parsed()) return cmd_catalog(out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}

}  // namespace corostab
