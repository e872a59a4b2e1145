#include "rmtjac/cli/app.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <locale>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "rmtjac/cli/format.hpp"
#include "rmtjac/cli/manifest.hpp"
#include "rmtjac/constructions.hpp"
#include "rmtjac/errors.hpp"
#include "rmtjac/jacobi_density.hpp"
#include "rmtjac/stats.hpp"
#include "rmtjac/version.hpp"

namespace rmtjac::cli {
namespace {

using Clock = std::chrono::steady_clock;

constexpr double kPassThreshold = 1e-3;

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return {};
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

// "--seed" / "--seed=5" -> "seed"; anything else -> "".
std::string long_flag_name(const std::string& token) {
  if (token.size() < 3 || token.compare(0, 2, "--") != 0) return {};
  return token.substr(2, token.find('=') == std::string::npos ? std::string::npos : token.find('=') - 2);
}

struct MergedArgs {
  std::vector<std::string> args;
  std::set<std::string> cli_flags;
  std::set<std::string> config_flags;
};

// Config entries are appended as ordinary flags unless the command line
// already sets that flag.
MergedArgs merge_config(const std::vector<std::string>& raw) {
  MergedArgs merged;
  std::optional<std::string> config_path;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const std::string& token = raw[i];
    if (token == "--config") {
      if (i + 1 >= raw.size()) throw PreconditionError("--config needs a file name");
      config_path = raw[++i];
      continue;
    }
    if (token.rfind("--config=", 0) == 0) {
      config_path = token.substr(9);
      continue;
    }
    merged.args.push_back(token);
    if (const auto name = long_flag_name(token); !name.empty()) merged.cli_flags.insert(name);
  }
  if (!config_path) return merged;

  std::ifstream in(*config_path);
  if (!in) throw PreconditionError("cannot read config file '" + *config_path + "'");
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw PreconditionError(*config_path + ":" + std::to_string(line_no) + ": expected key=value");
    }
    std::string key = trim(line.substr(0, eq));
    while (!key.empty() && key.front() == '-') key.erase(key.begin());
    if (key.empty() || key == "config") {
      throw PreconditionError(*config_path + ":" + std::to_string(line_no) + ": bad key");
    }
    if (merged.cli_flags.count(key) != 0) continue;
    merged.args.push_back("--" + key);
    merged.args.push_back(trim(line.substr(eq + 1)));
    merged.config_flags.insert(key);
  }
  return merged;
}

struct SeedChoice {
  std::uint64_t value = kDefaultSeed;
  std::string source = "default";
};

SeedChoice resolve_seed(const std::optional<std::uint64_t>& flag, const MergedArgs& merged) {
  if (flag) return {*flag, merged.config_flags.count("seed") != 0 ? "config" : "flag"};
  if (const char* env = std::getenv(kSeedEnvVar); env != nullptr && *env != '\0') {
    const std::string text = trim(env);
    std::uint64_t value = 0;
    const auto result = std::from_chars(text.data(), text.data() + text.size(), value);
    if (result.ec != std::errc() || result.ptr != text.data() + text.size()) {
      throw PreconditionError(std::string(kSeedEnvVar) + " is not an unsigned integer: '" + text + "'");
    }
    return {value, "env"};
  }
  return {};
}

unsigned resolve_threads(unsigned requested) {
  if (requested != 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

std::string num(double v, int precision = 6) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os << std::setprecision(precision) << v;
  return os.str();
}

// Every option that was given or carries a default, keyed by long name.
// `seed` and `out` are handled separately; `skip_if_unset` drops matching options left at their default.
std::map<std::string, std::vector<std::string>> collect_parameters(
    const CLI::App& sub, const std::function<bool(const std::string&)>& skip_if_unset = {}) {
  std::map<std::string, std::vector<std::string>> params;
  for (const CLI::Option* opt : sub.get_options()) {
    const std::string name = opt->get_single_name();
    if (name == "help" || name == "out" || name == "seed" || name.empty()) continue;
    if (opt->count() > 0) {
      params[name] = opt->results();
    } else if (!opt->get_default_str().empty()) {
      if (skip_if_unset && skip_if_unset(name)) continue;
      params[name] = {opt->get_default_str()};
    }
  }
  return params;
}

void emit(const std::string& body, const std::string& out_path, RunManifest& manifest,
          Clock::time_point started, std::ostream& out) {
  manifest.duration_seconds = std::chrono::duration<double>(Clock::now() - started).count();
  if (out_path.empty()) {
    out << body;
    return;
  }
  {
    std::ofstream file(out_path, std::ios::binary);
    if (!file) throw PreconditionError("cannot write '" + out_path + "'");
    file << body;
  }
  write_sidecar(out_path, manifest);
}

// ---- dimension flags ---------------------------------------------------

struct Dims {
  std::optional<int> N, n1, n2, n, m, N1, N2, N3;
};

void add_dimension_flags(CLI::App* sub, Dims& d) {
  sub->add_option("--N", d.N, "Total size N (haar-block, wishart, projection, mcmc)");
  sub->add_option("--n1", d.n1, "Block rows n1");
  sub->add_option("--n2", d.n2, "Block columns n2 (number of eigenvalues)");
  sub->add_option("--n", d.n, "Left channels n (circular)");
  sub->add_option("--m", d.m, "Right channels m (circular)");
  sub->add_option("--N1", d.N1, "Lead 1 channels (three-lead)");
  sub->add_option("--N2", d.N2, "Lead 2 channels (three-lead)");
  sub->add_option("--N3", d.N3, "Lead 3 channels (three-lead)");
}

const std::vector<std::string> kAllDimFlags{"N", "n1", "n2", "n", "m", "N1", "N2", "N3"};

std::optional<int> dim_value(const Dims& d, const std::string& name) {
  if (name == "N") return d.N;
  if (name == "n1") return d.n1;
  if (name == "n2") return d.n2;
  if (name == "n") return d.n;
  if (name == "m") return d.m;
  if (name == "N1") return d.N1;
  if (name == "N2") return d.N2;
  return d.N3;
}

void require_dimension_group(const Dims& d, const std::vector<std::string>& group, const std::string& what) {
  std::string expected;
  for (const auto& g : group) expected += (expected.empty() ? "--" : " --") + g;
  for (const auto& name : kAllDimFlags) {
    const bool in_group = std::find(group.begin(), group.end(), name) != group.end();
    if (!in_group && dim_value(d, name)) {
      throw PreconditionError("inconsistent dimension flags: --" + name + " does not apply to " + what +
                              " (expects " + expected + ")");
    }
    if (in_group && !dim_value(d, name)) {
      throw PreconditionError(what + " needs " + expected + " (missing --" + name + ")");
    }
  }
}

const std::vector<std::string>& dimension_group(ConstructionKind kind) {
  static const std::vector<std::string> jacobi{"N", "n1", "n2"};
  static const std::vector<std::string> transmission{"n", "m"};
  static const std::vector<std::string> three{"N1", "N2", "N3"};
  switch (kind) {
    case ConstructionKind::CircularTransmission: return transmission;
    case ConstructionKind::ThreeLead: return three;
    default: return jacobi;
  }
}

// ---- MCMC flags -----------------------------------------------------------

struct McmcFlags {
  std::size_t thin = 10;
  double sigma = 0.5;
  std::size_t chains = 4;
  std::optional<std::size_t> burn_in;
};

void add_mcmc_flags(CLI::App* sub, McmcFlags& f) {
  sub->add_option("--mcmc-thin", f.thin, "Keep every k-th state per chain")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  sub->add_option("--mcmc-sigma", f.sigma, "Proposal step in logit space")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  sub->add_option("--mcmc-chains", f.chains, "Independent chains")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  sub->add_option("--mcmc-burn-in", f.burn_in, "Burn-in steps per chain (default: max(1000, kept*thin/4))");
}

void apply_mcmc_flags(const McmcFlags& f, SpectrumRequest& req) {
  req.mcmc.thin = f.thin;
  req.mcmc.proposal_sigma = f.sigma;
  req.mcmc.burn_in = f.burn_in;
  req.chains = f.chains;
}

bool is_mcmc_flag(const std::string& name) { return name.rfind("mcmc-", 0) == 0; }

// ---- sample ---------------------------------------------------------------

struct SampleOpts {
  std::string construction;
  int beta = 2;
  Dims dims;
  std::size_t samples = 1000;
  std::optional<std::uint64_t> seed;
  unsigned threads = 1;
  std::string format = "csv";
  std::string out;
  McmcFlags mcmc;
};

int cmd_sample(const SampleOpts& o, const CLI::App& sub, const MergedArgs& merged, std::ostream& out) {
  const auto started = Clock::now();
  const ConstructionKind kind = parse_construction_kind(o.construction);
  require_dimension_group(o.dims, dimension_group(kind), std::string(kind_name(kind)));
  if (o.samples == 0) throw PreconditionError("--samples must be >= 1");

  SpectrumRequest req;
  req.kind = kind;
  req.beta = beta_from_int(o.beta);
  req.N = o.dims.N.value_or(0);
  req.n1 = o.dims.n1.value_or(0);
  req.n2 = o.dims.n2.value_or(0);
  req.n = o.dims.n.value_or(0);
  req.m = o.dims.m.value_or(0);
  req.N1 = o.dims.N1.value_or(0);
  req.N2 = o.dims.N2.value_or(0);
  req.N3 = o.dims.N3.value_or(0);
  apply_mcmc_flags(o.mcmc, req);

  const SeedChoice seed = resolve_seed(o.seed, merged);
  const unsigned threads = resolve_threads(o.threads);
  const auto spectra = sample_spectra(req, o.samples, seed.value, threads);

  RunManifest manifest;
  manifest.command = "sample";
  manifest.parameters = collect_parameters(sub, [&](const std::string& name) {
    return kind != ConstructionKind::MCMC && is_mcmc_flag(name);
  });
  manifest.parameters["seed"] = {std::to_string(seed.value)};
  manifest.master_seed = seed.value;
  manifest.seed_source = seed.source;
  manifest.replicas = o.samples;
  manifest.threads = threads;
  manifest.version = kVersion;

  std::ostringstream body;
  body.imbue(std::locale::classic());
  if (o.format == "csv") {
    write_spectra_csv(body, spectra);
  } else {
    nlohmann::ordered_json doc;
    doc["manifest"] = manifest.to_json(false);
    auto rows = nlohmann::ordered_json::array();
    for (const auto& s : spectra) rows.push_back(s.values);
    doc["samples"] = std::move(rows);
    body << doc.dump() << '\n';
  }
  emit(body.str(), o.out, manifest, started, out);
  return kExitSuccess;
}

// ---- verify ---------------------------------------------------------------

struct VerifyOpts {
  int beta = 2;
  Dims dims;
  std::size_t samples = 5000;
  std::optional<std::uint64_t> seed;
  unsigned threads = 1;
  std::optional<std::string> pairs;
  std::string out;
  McmcFlags mcmc;
};

struct Endpoint {
  std::string label;
  ConstructionKind kind = ConstructionKind::HaarBlock;
  int N = 0, n1 = 0, n2 = 0;
};

const std::vector<std::string> kVerifyConstructions{"haar-block", "wishart", "projection", "mcmc"};

std::vector<std::string> split_top_level(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string current;
  int depth = 0;
  for (const char c : text) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == sep && depth == 0) {
      parts.push_back(current);
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  parts.push_back(current);
  return parts;
}

int parse_int(const std::string& text, const std::string& what) {
  int value = 0;
  const auto result = std::from_chars(text.data(), text.data() + text.size(), value);
  if (result.ec != std::errc() || result.ptr != text.data() + text.size()) {
    throw PreconditionError(what + ": not an integer: '" + text + "'");
  }
  return value;
}

// "wishart" or "wishart(n1=5,N=9)"; overrides replace the shared N/n1/n2.
Endpoint parse_endpoint(const std::string& raw, int N, int n1, int n2) {
  const std::string text = trim(raw);
  Endpoint e{text, ConstructionKind::HaarBlock, N, n1, n2};
  std::string name = text;
  if (const auto open = text.find('('); open != std::string::npos) {
    if (text.back() != ')') throw PreconditionError("bad construction '" + text + "'");
    name = trim(text.substr(0, open));
    const std::string inner = text.substr(open + 1, text.size() - open - 2);
    for (const auto& item : split_top_level(inner, ',')) {
      const auto eq = item.find('=');
      if (eq == std::string::npos) throw PreconditionError("bad override '" + item + "' in '" + text + "'");
      const std::string key = trim(item.substr(0, eq));
      const int value = parse_int(trim(item.substr(eq + 1)), text);
      if (key == "N") {
        e.N = value;
      } else if (key == "n1") {
        e.n1 = value;
      } else if (key == "n2") {
        e.n2 = value;
      } else {
        throw PreconditionError("unknown override '" + key + "' in '" + text + "' (allowed: N, n1, n2)");
      }
    }
  }
  if (std::find(kVerifyConstructions.begin(), kVerifyConstructions.end(), name) == kVerifyConstructions.end()) {
    throw PreconditionError("cannot verify construction '" + name +
                            "' (choose from haar-block, wishart, projection, mcmc)");
  }
  e.kind = parse_construction_kind(name);
  return e;
}

std::vector<std::pair<Endpoint, Endpoint>> parse_pairs(const std::optional<std::string>& pairs_text, int N, int n1,
                                                       int n2) {
  std::vector<std::pair<Endpoint, Endpoint>> pairs;
  if (!pairs_text) {
    for (std::size_t i = 0; i < kVerifyConstructions.size(); ++i) {
      for (std::size_t j = i + 1; j < kVerifyConstructions.size(); ++j) {
        pairs.emplace_back(parse_endpoint(kVerifyConstructions[i], N, n1, n2),
                           parse_endpoint(kVerifyConstructions[j], N, n1, n2));
      }
    }
    return pairs;
  }
  for (const auto& item : split_top_level(*pairs_text, ',')) {
    if (trim(item).empty()) continue;
    const auto sides = split_top_level(item, ':');
    if (sides.size() != 2) throw PreconditionError("bad pair '" + trim(item) + "' (expected a:b)");
    pairs.emplace_back(parse_endpoint(sides[0], N, n1, n2), parse_endpoint(sides[1], N, n1, n2));
  }
  if (pairs.empty()) throw PreconditionError("nothing to compare");
  return pairs;
}

int cmd_verify(const VerifyOpts& o, const CLI::App& sub, const MergedArgs& merged, std::ostream& out) {
  const auto started = Clock::now();
  require_dimension_group(o.dims, {"N", "n1", "n2"}, "verify");
  if (o.samples < 8) throw PreconditionError("--samples must be >= 8");
  const Beta beta = beta_from_int(o.beta);
  const auto pairs = parse_pairs(o.pairs, *o.dims.N, *o.dims.n1, *o.dims.n2);
  const SeedChoice seed = resolve_seed(o.seed, merged);
  const unsigned threads = resolve_threads(o.threads);

  // Each distinct endpoint is drawn once, on a seed derived from its label.
  std::map<std::string, std::vector<double>> pooled;
  auto draw = [&](const Endpoint& e) -> const std::vector<double>& {
    auto it = pooled.find(e.label);
    if (it != pooled.end()) return it->second;
    SpectrumRequest req;
    req.kind = e.kind;
    req.beta = beta;
    req.N = e.N;
    req.n1 = e.n1;
    req.n2 = e.n2;
    apply_mcmc_flags(o.mcmc, req);
    const auto spectra = sample_spectra(req, o.samples, derive_seed(seed.value, e.label), threads);
    return pooled.emplace(e.label, pooled_values(spectra)).first->second;
  };
  for (const auto& [a, b] : pairs) {
    draw(a);
    draw(b);
  }

  std::ostringstream body;
  body.imbue(std::locale::classic());
  std::size_t width = 4;
  for (const auto& [a, b] : pairs) width = std::max(width, a.label.size() + b.label.size() + 1);
  body << "beta=" << o.beta << " N=" << *o.dims.N << " n1=" << *o.dims.n1 << " n2=" << *o.dims.n2
       << " samples=" << o.samples << " seed=" << seed.value << '\n';
  body << std::left << std::setw(static_cast<int>(width) + 2) << "pair" << std::setw(14) << "d" << std::setw(14)
       << "p" << "result\n";
  std::size_t passed = 0;
  for (const auto& [a, b] : pairs) {
    const KSResult ks = ks_two_sample(pooled.at(a.label), pooled.at(b.label));
    const bool ok = ks.p_value > kPassThreshold;
    passed += ok ? 1 : 0;
    body << std::left << std::setw(static_cast<int>(width) + 2) << (a.label + ":" + b.label) << std::setw(14)
         << num(ks.d_statistic) << std::setw(14) << num(ks.p_value) << (ok ? "PASS" : "FAIL") << '\n';
  }
  const bool all = passed == pairs.size();
  body << (all ? "PASS" : "FAIL") << ": " << passed << "/" << pairs.size() << " pairs with p > "
       << num(kPassThreshold) << '\n';

  RunManifest manifest;
  manifest.command = "verify";
  manifest.parameters = collect_parameters(sub);
  manifest.parameters["seed"] = {std::to_string(seed.value)};
  manifest.master_seed = seed.value;
  manifest.seed_source = seed.source;
  manifest.replicas = o.samples;
  manifest.threads = threads;
  manifest.version = kVersion;
  emit(body.str(), o.out, manifest, started, out);
  return all ? kExitSuccess : kExitStatisticalFail;
}

// ---- conductance ------------------------------------------------------------

struct ConductanceOpts {
  std::string cls;
  int n = 0;
  int m = 0;
  std::size_t samples = 10000;
  std::optional<std::uint64_t> seed;
  unsigned threads = 1;
  std::string out;
};

int cmd_conductance(const ConductanceOpts& o, const CLI::App& sub, const MergedArgs& merged,
                    std::ostream& out) {
  const auto started = Clock::now();
  const CircularClass cls = parse_circular_class(o.cls);
  const SeedChoice seed = resolve_seed(o.seed, merged);
  const unsigned threads = resolve_threads(o.threads);
  const ConductanceReport report = conductance_experiment(cls, o.n, o.m, o.samples, seed.value, threads);

  std::ostringstream body;
  body.imbue(std::locale::classic());
  const auto line = [&](const std::string& key, const std::string& value) {
    body << std::left << std::setw(28) << key << value << '\n';
  };
  line("class", std::string(class_name(cls)));
  line("n", std::to_string(o.n));
  line("m", std::to_string(o.m));
  line("draws", std::to_string(o.samples));
  line("mean", format_double(report.summary.mean));
  line("se_mean", format_double(report.summary.se_mean));
  line("variance", format_double(report.summary.variance));
  line("se_variance", format_double(report.summary.se_variance));
  line("reference_variance", format_double(report.reference_variance));
  if (o.n == 1 && o.m == 1) {
    const double ref_mean = cls == CircularClass::COE ? 1.0 / 3.0 : cls == CircularClass::CUE ? 0.5 : 2.0 / 3.0;
    line("single_channel_mean", format_double(ref_mean));
    line("single_channel_mean_z", num((report.summary.mean - ref_mean) / report.summary.se_mean, 4));
    if (cls == CircularClass::CUE) {
      line("single_channel_variance", format_double(1.0 / 12.0));
      line("single_channel_variance_z",
           num((report.summary.variance - 1.0 / 12.0) / report.summary.se_variance, 4));
    }
  }

  RunManifest manifest;
  manifest.command = "conductance";
  manifest.parameters = collect_parameters(sub);
  manifest.parameters["seed"] = {std::to_string(seed.value)};
  manifest.master_seed = seed.value;
  manifest.seed_source = seed.source;
  manifest.replicas = o.samples;
  manifest.threads = threads;
  manifest.version = kVersion;
  emit(body.str(), o.out, manifest, started, out);
  return kExitSuccess;
}

// ---- density --------------------------------------------------------------

struct DensityOpts {
  std::string law;
  int beta = 2;
  Dims dims;
  std::vector<std::string> at;
  std::string from_file;
  std::string out;
};

std::vector<std::vector<double>> read_points_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("cannot read points file '" + path + "'");
  std::vector<std::vector<double>> points;
  std::string line;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    std::replace_if(line.begin(), line.end(), [](char c) { return c == ' ' || c == '\t'; }, ',');
    std::string compact;
    for (const char c : line) {
      if (c != ',' || (!compact.empty() && compact.back() != ',')) compact.push_back(c);
    }
    points.push_back(parse_number_list(compact));
  }
  return points;
}

int cmd_density(const DensityOpts& o, const CLI::App& sub, std::ostream& out) {
  const auto started = Clock::now();
  const Beta beta = beta_from_int(o.beta);
  std::vector<std::vector<double>> points;
  for (const auto& text : o.at) points.push_back(parse_number_list(text));
  if (!o.from_file.empty()) {
    const auto more = read_points_file(o.from_file);
    points.insert(points.end(), more.begin(), more.end());
  }
  if (points.empty()) throw PreconditionError("no points: give --at or --from-file");

  std::function<double(std::span<const double>)> f;
  std::size_t dim = 0;
  if (o.law == "transmission") {
    require_dimension_group(o.dims, {"n", "m"}, "transmission");
    const auto p = TransmissionParams::make(beta, *o.dims.n, *o.dims.m);
    dim = static_cast<std::size_t>(p.m);
    f = [p](std::span<const double> x) { return log_density_transmission(x, p); };
  } else {
    require_dimension_group(o.dims, {"N", "n1", "n2"}, "jacobi");
    const auto p = JacobiParams::make(beta, *o.dims.n1, *o.dims.n2, *o.dims.N);
    dim = static_cast<std::size_t>(p.n2);
    f = [p](std::span<const double> x) { return log_density_jacobi(x, p); };
  }

  std::ostringstream body;
  body.imbue(std::locale::classic());
  std::vector<std::string> recorded;
  for (const auto& point : points) {
    if (point.size() != dim) {
      throw PreconditionError("point has " + std::to_string(point.size()) + " coordinates, expected " +
                              std::to_string(dim));
    }
    body << format_double(f(point)) << '\n';
    std::string text;
    for (const double v : point) text += (text.empty() ? "" : ",") + format_double(v);
    recorded.push_back(text);
  }

  RunManifest manifest;
  manifest.command = "density";
  manifest.parameters = collect_parameters(sub);
  manifest.parameters.erase("from-file");
  manifest.parameters["at"] = recorded;
  manifest.seed_source = "none";
  manifest.replicas = points.size();
  manifest.version = kVersion;
  emit(body.str(), o.out, manifest, started, out);
  return kExitSuccess;
}

// ---- replay -----------------------------------------------------------------

int cmd_replay(const std::string& manifest_path, const std::string& out_path, std::ostream& out,
               std::ostream& err) {
  std::ifstream in(manifest_path);
  if (!in) throw PreconditionError("cannot read manifest '" + manifest_path + "'");
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw PreconditionError("manifest '" + manifest_path + "' is not JSON: " + e.what());
  }
  if (doc.contains("manifest")) doc = doc["manifest"];
  const RunManifest manifest = RunManifest::from_json(doc);
  if (manifest.command == "replay") throw PreconditionError("cannot replay a replay");
  if (!manifest.version.empty() && manifest.version != kVersion) {
    err << "warning: manifest written by version " << manifest.version << ", running " << kVersion << '\n';
  }
  std::vector<std::string> args = manifest.replay_arguments();
  if (!out_path.empty()) {
    args.push_back("--out");
    args.push_back(out_path);
  }
  return run(args, out, err);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    const MergedArgs merged = merge_config(args);

    CLI::App app{"Monte Carlo sampler and checker for Jacobi-ensemble and scattering-matrix spectra", "rmtjac"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);
    app.footer(std::string("Any flag may also come from --config FILE (key=value lines); the command line wins.\n") +
               "Default seed: $" + kSeedEnvVar + " if set, else " + std::to_string(kDefaultSeed) + ".");

    SampleOpts sample_opts;
    CLI::App* sample = app.add_subcommand("sample", "Draw spectra from one construction");
    sample->add_option("--construction", sample_opts.construction, "Construction")
        ->required()
        ->check(CLI::IsMember({"haar-block", "wishart", "projection", "three-lead", "circular", "mcmc"}));
    sample->add_option("--beta", sample_opts.beta, "Dyson index")->capture_default_str()->check(CLI::IsMember({1, 2, 4}));
    add_dimension_flags(sample, sample_opts.dims);
    sample->add_option("--samples", sample_opts.samples, "Number of draws")->capture_default_str();
    sample->add_option("--seed", sample_opts.seed, "Master seed");
    sample->add_option("--threads", sample_opts.threads, "Worker threads (0 = all cores)")->capture_default_str();
    sample->add_option("--format", sample_opts.format, "Output format")
        ->capture_default_str()
        ->check(CLI::IsMember({"csv", "json"}));
    sample->add_option("--out", sample_opts.out, "Output file (default: stdout)");
    add_mcmc_flags(sample, sample_opts.mcmc);

    VerifyOpts verify_opts;
    CLI::App* verify = app.add_subcommand("verify", "Pairwise two-sample KS tests between constructions");
    verify->add_option("--beta", verify_opts.beta, "Dyson index")->capture_default_str()->check(CLI::IsMember({1, 2, 4}));
    verify->add_option("--N", verify_opts.dims.N, "Total size N");
    verify->add_option("--n1", verify_opts.dims.n1, "Block rows n1");
    verify->add_option("--n2", verify_opts.dims.n2, "Block columns n2");
    verify->add_option("--samples", verify_opts.samples, "Draws per construction")->capture_default_str();
    verify->add_option("--seed", verify_opts.seed, "Master seed");
    verify->add_option("--threads", verify_opts.threads, "Worker threads (0 = all cores)")->capture_default_str();
    verify->add_option("--pairs", verify_opts.pairs,
                       "Pairs to compare, e.g. haar-block:wishart,haar-block:mcmc(n1=4) (default: all)");
    verify->add_option("--out", verify_opts.out, "Report file (default: stdout)");
    add_mcmc_flags(verify, verify_opts.mcmc);

    ConductanceOpts cond_opts;
    CLI::App* conductance = app.add_subcommand("conductance", "Conductance mean and variance for a circular ensemble");
    conductance->add_option("--class", cond_opts.cls, "Ensemble")->required()->check(CLI::IsMember({"coe", "cue", "cse"}));
    conductance->add_option("--n", cond_opts.n, "Left channels")->required();
    conductance->add_option("--m", cond_opts.m, "Right channels")->required();
    conductance->add_option("--samples", cond_opts.samples, "Number of draws")->capture_default_str();
    conductance->add_option("--seed", cond_opts.seed, "Master seed");
    conductance->add_option("--threads", cond_opts.threads, "Worker threads (0 = all cores)")->capture_default_str();
    conductance->add_option("--out", cond_opts.out, "Report file (default: stdout)");

    DensityOpts density_opts;
    CLI::App* density = app.add_subcommand("density", "Evaluate an unnormalized joint log-density");
    density->add_option("--law", density_opts.law, "Law")->required()->check(CLI::IsMember({"transmission", "jacobi"}));
    density->add_option("--beta", density_opts.beta, "Dyson index")->capture_default_str()->check(CLI::IsMember({1, 2, 4}));
    density->add_option("--N", density_opts.dims.N, "Total size N (jacobi)");
    density->add_option("--n1", density_opts.dims.n1, "n1 (jacobi)");
    density->add_option("--n2", density_opts.dims.n2, "n2 (jacobi)");
    density->add_option("--n", density_opts.dims.n, "n (transmission)");
    density->add_option("--m", density_opts.dims.m, "m (transmission)");
    density->add_option("--at", density_opts.at, "One point, comma separated (repeatable)");
    density->add_option("--from-file", density_opts.from_file, "File with one point per line");
    density->add_option("--out", density_opts.out, "Output file (default: stdout)");

    std::string replay_manifest;
    std::string replay_out;
    CLI::App* replay = app.add_subcommand("replay", "Rerun the command recorded in a manifest");
    replay->add_option("--manifest", replay_manifest, "Manifest file or JSON output")->required();
    replay->add_option("--out", replay_out, "Output file for the rerun");

    try {
      std::vector<std::string> reversed(merged.args.rbegin(), merged.args.rend());
      app.parse(reversed);
    } catch (const CLI::ParseError& e) {
      const int code = app.exit(e, out, err);
      return code == 0 ? kExitSuccess : kExitUsage;
    }

    if (sample->parsed()) return cmd_sample(sample_opts, *sample, merged, out);
    if (verify->parsed()) return cmd_verify(verify_opts, *verify, merged, out);
    if (conductance->parsed()) return cmd_conductance(cond_opts, *conductance, merged, out);
    if (density->parsed()) return cmd_density(density_opts, *density, out);
    return cmd_replay(replay_manifest, replay_out, out, err);
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}

}  // namespace rmtjac::cli
