#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "edgecache/harness.hpp"

namespace edgecache {

std::string scheme_name(Scheme s) {
  switch (s) {
    case Scheme::mpso: return "mpso";
    case Scheme::random_scheme: return "random";
    case Scheme::equal: return "equal";
  }
  return "?";
}

Scheme scheme_from_name(const std::string& name) {
  if (name == "mpso") return Scheme::mpso;
  if (name == "random") return Scheme::random_scheme;
  if (name == "equal") return Scheme::equal;
  throw std::invalid_argument("unknown scheme: " + name);
}

void ExperimentSpec::validate() const {
  network.validate();
  catalog.validate();
  phy.validate();
  pso.validate();
  if (capacities.c_d < 0 || capacities.c_b < 0 || capacities.c_m < 0)
    throw std::invalid_argument("ExperimentSpec: capacities must be >= 0");
  if (seeds.empty()) throw std::invalid_argument("ExperimentSpec: seeds must be non-empty");
  if (schemes.empty()) throw std::invalid_argument("ExperimentSpec: schemes must be non-empty");
  if (sweep) {
    static const char* names[] = {"F", "alpha", "cd", "cb", "cm"};
    if (std::find(std::begin(names), std::end(names), sweep->param) == std::end(names))
      throw std::invalid_argument("ExperimentSpec: unknown sweep parameter " + sweep->param);
    if (sweep->values.empty())
      throw std::invalid_argument("ExperimentSpec: sweep values must be non-empty");
    if (!iter_schedule.empty() && iter_schedule.size() != sweep->values.size())
      throw std::invalid_argument("ExperimentSpec: iter_schedule must match sweep values");
  }
}

ExperimentSpec preset_paper_sec5() {
  ExperimentSpec spec;
  spec.network.lambda_u = 1e-4;
  spec.network.lambda_b = 1e-5;
  spec.network.lambda_m = 1.5e-7;
  spec.network.r_u = 15.0;
  spec.network.r_b = 150.0;
  spec.network.r_m = 500.0;
  spec.network.alpha = 0.2;
  // the MBS intensity above puts less than one MBS in any desk-sized window,
  // so the preset conditions the MBS draw on being non-empty
  spec.network.region_side = 1500.0;
  spec.network.min_mbs = 1;
  spec.network.torus = false;

  spec.catalog.catalog_size = 30;
  spec.catalog.gamma_min = 0.1;
  spec.catalog.gamma_max = 2.5;

  spec.phy = PhyParams::from_db(23.0, 26.0, 43.0, 4.0, 1e-8, -174.0, 0.01);

  spec.capacities = {2, 4, 8};

  spec.pso.n_particles = 40;
  spec.pso.inertia = 0.9;
  spec.pso.psi1 = 0.4;
  spec.pso.psi2 = 0.4;
  spec.pso.max_iters = 100;
  spec.pso.stall_iters = 0;
  spec.pso.seed = 1;

  spec.schemes = {Scheme::mpso, Scheme::random_scheme, Scheme::equal};
  spec.seeds.clear();
  for (std::uint64_t s = 1; s <= 20; ++s) spec.seeds.push_back(s);
  return spec;
}

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

using Section = std::map<std::string, std::string>;
using ConfigMap = std::map<std::string, Section>;

ConfigMap parse_key_values(const std::string& text) {
  ConfigMap config;
  std::string section;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw std::invalid_argument("config line " + std::to_string(line_no) +
                                    ": malformed section header");
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(line_no) +
                                  ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw std::invalid_argument("config line " + std::to_string(line_no) +
                                                 ": empty key");
    config[section][key] = value;
  }
  return config;
}

double to_double(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    double v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("config: bad numeric value for " + key + ": '" + value + "'");
  }
}

long to_long(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    long v = std::stol(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("config: bad integer value for " + key + ": '" + value + "'");
  }
}

bool to_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw std::invalid_argument("config: bad boolean value for " + key + ": '" + value + "'");
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  std::istringstream ss(value);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    tok = trim(tok);
    if (!tok.empty()) out.push_back(tok);
  }
  return out;
}

// Seed lists accept both "1,2,7" and the range form "1..20".
std::vector<std::uint64_t> parse_seeds(const std::string& value) {
  std::vector<std::uint64_t> seeds;
  const std::size_t dots = value.find("..");
  if (dots != std::string::npos) {
    const long lo = to_long("seeds", trim(value.substr(0, dots)));
    const long hi = to_long("seeds", trim(value.substr(dots + 2)));
    if (lo > hi) throw std::invalid_argument("config: seed range is empty");
    for (long s = lo; s <= hi; ++s) seeds.push_back(static_cast<std::uint64_t>(s));
    return seeds;
  }
  for (const std::string& tok : split_list(value))
    seeds.push_back(static_cast<std::uint64_t>(to_long("seeds", tok)));
  return seeds;
}

template <typename F>
void with_key(const ConfigMap& config, const std::string& section, const std::string& key,
              const F& apply) {
  auto sit = config.find(section);
  if (sit == config.end()) return;
  auto kit = sit->second.find(key);
  if (kit == sit->second.end()) return;
  apply(kit->second);
}

}  // namespace

ExperimentSpec parse_spec(const std::string& text) {
  const ConfigMap config = parse_key_values(text);

  ExperimentSpec spec;
  bool from_preset = false;
  with_key(config, "", "preset", [&](const std::string& v) {
    if (v != "paper-sec5") throw std::invalid_argument("config: unknown preset " + v);
    spec = preset_paper_sec5();
    from_preset = true;
  });
  if (!from_preset) spec = preset_paper_sec5();

  with_key(config, "network", "lambda_u", [&](const std::string& v) {
    spec.network.lambda_u = to_double("lambda_u", v);
  });
  with_key(config, "network", "lambda_b", [&](const std::string& v) {
    spec.network.lambda_b = to_double("lambda_b", v);
  });
  with_key(config, "network", "lambda_m", [&](const std::string& v) {
    spec.network.lambda_m = to_double("lambda_m", v);
  });
  with_key(config, "network", "r_u",
           [&](const std::string& v) { spec.network.r_u = to_double("r_u", v); });
  with_key(config, "network", "r_b",
           [&](const std::string& v) { spec.network.r_b = to_double("r_b", v); });
  with_key(config, "network", "r_m",
           [&](const std::string& v) { spec.network.r_m = to_double("r_m", v); });
  with_key(config, "network", "alpha",
           [&](const std::string& v) { spec.network.alpha = to_double("alpha", v); });
  with_key(config, "network", "region_side", [&](const std::string& v) {
    spec.network.region_side = to_double("region_side", v);
  });
  with_key(config, "network", "torus",
           [&](const std::string& v) { spec.network.torus = to_bool("torus", v); });
  with_key(config, "network", "min_mbs", [&](const std::string& v) {
    spec.network.min_mbs = static_cast<int>(to_long("min_mbs", v));
  });

  with_key(config, "catalog", "contents", [&](const std::string& v) {
    spec.catalog.catalog_size = static_cast<int>(to_long("contents", v));
  });
  with_key(config, "catalog", "gamma_min", [&](const std::string& v) {
    spec.catalog.gamma_min = to_double("gamma_min", v);
  });
  with_key(config, "catalog", "gamma_max", [&](const std::string& v) {
    spec.catalog.gamma_max = to_double("gamma_max", v);
  });

  {
    double p_u = spec.phy.p_u_dbm, p_b = spec.phy.p_b_dbm, p_m = spec.phy.p_m_dbm;
    double beta = spec.phy.beta, phi = spec.phy.phi_db, sigma2 = spec.phy.sigma2_dbm;
    double zeta = spec.phy.zeta, zeta_bar = -1.0;
    with_key(config, "phy", "p_u_dbm", [&](const std::string& v) { p_u = to_double("p_u_dbm", v); });
    with_key(config, "phy", "p_b_dbm", [&](const std::string& v) { p_b = to_double("p_b_dbm", v); });
    with_key(config, "phy", "p_m_dbm", [&](const std::string& v) { p_m = to_double("p_m_dbm", v); });
    with_key(config, "phy", "beta", [&](const std::string& v) { beta = to_double("beta", v); });
    with_key(config, "phy", "phi_db", [&](const std::string& v) { phi = to_double("phi_db", v); });
    with_key(config, "phy", "sigma2_dbm",
             [&](const std::string& v) { sigma2 = to_double("sigma2_dbm", v); });
    with_key(config, "phy", "zeta", [&](const std::string& v) { zeta = to_double("zeta", v); });
    with_key(config, "phy", "zeta_bar",
             [&](const std::string& v) { zeta_bar = to_double("zeta_bar", v); });
    spec.phy = PhyParams::from_db(p_u, p_b, p_m, beta, phi, sigma2, zeta, zeta_bar);
  }

  with_key(config, "capacities", "c_d", [&](const std::string& v) {
    spec.capacities.c_d = static_cast<int>(to_long("c_d", v));
  });
  with_key(config, "capacities", "c_b", [&](const std::string& v) {
    spec.capacities.c_b = static_cast<int>(to_long("c_b", v));
  });
  with_key(config, "capacities", "c_m", [&](const std::string& v) {
    spec.capacities.c_m = static_cast<int>(to_long("c_m", v));
  });

  with_key(config, "pso", "particles", [&](const std::string& v) {
    spec.pso.n_particles = static_cast<int>(to_long("particles", v));
  });
  with_key(config, "pso", "inertia",
           [&](const std::string& v) { spec.pso.inertia = to_double("inertia", v); });
  with_key(config, "pso", "psi1",
           [&](const std::string& v) { spec.pso.psi1 = to_double("psi1", v); });
  with_key(config, "pso", "psi2",
           [&](const std::string& v) { spec.pso.psi2 = to_double("psi2", v); });
  with_key(config, "pso", "max_iters", [&](const std::string& v) {
    spec.pso.max_iters = static_cast<int>(to_long("max_iters", v));
  });
  with_key(config, "pso", "stall_iters", [&](const std::string& v) {
    spec.pso.stall_iters = static_cast<int>(to_long("stall_iters", v));
  });

  with_key(config, "experiment", "schemes", [&](const std::string& v) {
    spec.schemes.clear();
    for (const std::string& tok : split_list(v)) spec.schemes.push_back(scheme_from_name(tok));
  });
  with_key(config, "experiment", "seeds",
           [&](const std::string& v) { spec.seeds = parse_seeds(v); });
  with_key(config, "experiment", "report_runtime", [&](const std::string& v) {
    spec.report_runtime = to_bool("report_runtime", v);
  });
  with_key(config, "experiment", "iter_schedule", [&](const std::string& v) {
    spec.iter_schedule.clear();
    for (const std::string& tok : split_list(v))
      spec.iter_schedule.push_back(static_cast<int>(to_long("iter_schedule", tok)));
  });

  with_key(config, "sweep", "param", [&](const std::string& v) {
    if (!spec.sweep) spec.sweep.emplace();
    spec.sweep->param = v;
  });
  with_key(config, "sweep", "values", [&](const std::string& v) {
    if (!spec.sweep) spec.sweep.emplace();
    for (const std::string& tok : split_list(v))
      spec.sweep->values.push_back(to_double("sweep values", tok));
  });

  // Environment fallback when a config clears the seed list.
  if (spec.seeds.empty()) {
    if (const char* env = std::getenv("EDGECACHE_SEED"))
      spec.seeds.push_back(static_cast<std::uint64_t>(to_long("EDGECACHE_SEED", env)));
  }

  spec.validate();
  return spec;
}

ExperimentSpec load_spec(const std::string& path_or_preset) {
  if (path_or_preset == "paper-sec5") return preset_paper_sec5();
  std::ifstream in(path_or_preset);
  if (!in) throw std::runtime_error("cannot open config file: " + path_or_preset);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_spec(buf.str());
}

}  // namespace edgecache
