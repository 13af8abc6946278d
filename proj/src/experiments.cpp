// Copyright 2026 The qround Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qround/experiments.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "qround/disjointness.hpp"
#include "qround/pointer_jumping.hpp"
#include "qround/protocols.hpp"
#include "qround/qsim.hpp"
#include "report_util.hpp"

namespace qround::exp {

namespace detail {

Json echo(const ExperimentConfig& c) {
  Json j;
  j["suite"] = c.suite;
  j["seed"] = c.seed ? Json(*c.seed) : Json(nullptr);
  j["trials"] = c.trials ? Json(*c.trials) : Json(nullptr);
  j["n"] = c.n;
  j["k"] = c.k;
  j["eps"] = c.eps;
  j["dims"] = c.dims;
  j["protocol"] = c.protocol;
  j["function"] = c.function;
  j["table"] = c.table;
  j["rounds"] = c.rounds;
  j["starter"] = c.starter;
  j["specs"] = c.specs;
  j["spec"] = c.spec_file;
  return j;
}

Report start_report(const std::string& suite, const ExperimentConfig& config,
                    const std::vector<std::string>& columns) {
  Report r;
  r.suite = suite;
  r.seed = require_seed(config);
  r.config = echo(config);
  r.config_hash = fnv1a_hex(r.config.dump());
  r.columns = {"suite", "seed", "config_hash"};
  r.columns.insert(r.columns.end(), columns.begin(), columns.end());
  return r;
}

void add_row(Report& report, Row cells) {
  Row row = {report.suite, report.seed, report.config_hash};
  row.insert(row.end(), cells.begin(), cells.end());
  if (row.size() != report.columns.size()) throw std::logic_error("row does not match the report columns");
  report.rows.push_back(std::move(row));
}

std::uint64_t require_seed(const ExperimentConfig& config) {
  if (!config.seed) throw ConfigError("--seed is required");
  return *config.seed;
}

std::size_t trials_or(const ExperimentConfig& config, std::size_t fallback) {
  const std::size_t t = config.trials.value_or(fallback);
  if (t == 0) throw ConfigError("trials must be at least 1");
  return t;
}

void MarginTracker::add(double margin) {
  if (samples == 0 || margin < min_margin) min_margin = margin;
  ++samples;
  if (!(margin >= -tolerance)) ++violations;
}

}  // namespace detail

using detail::add_row;
using detail::or_default;
using detail::start_report;
using detail::trials_or;

namespace {

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

std::string csv_cell(const Json& v) {
  if (v.is_null()) return "";
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_integer()) return v.dump();
  if (v.is_number()) return format_number(v.get<double>());
  std::string s = v.is_string() ? v.get<std::string>() : v.dump();
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) quoted += c == '"' ? std::string("\"\"") : std::string(1, c);
  return quoted + "\"";
}

// Non-finite doubles have no JSON literal; they are written as strings.
Json json_cell(const Json& v) {
  if (v.is_number_float() && !std::isfinite(v.get<double>())) return format_number(v.get<double>());
  return v;
}

// Rounding noise around exact zeros is reported as 0.
double snap(double x) { return std::abs(x) < 1e-12 ? 0.0 : x; }

std::string join(const std::vector<double>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? ";" : "") + format_number(snap(xs[i]));
  return out;
}

std::vector<std::size_t> as_sizes(const Json& j, const char* key) {
  if (!j.is_array()) return {j.get<std::size_t>()};
  (void)key;
  return j.get<std::vector<std::size_t>>();
}

cc::Side parse_starter(const std::string& s) {
  if (s == "A") return cc::Side::A;
  if (s == "B") return cc::Side::B;
  throw ConfigError("starter must be A or B");
}

// --- run-pj --------------------------------------------------------------------

Report run_pj_impl(const ExperimentConfig& config) {
  const auto ns = or_default(config.n, {256, 1024, 4096});
  const auto ks = or_default(config.k, {4, 8, 16});
  const auto epss = or_default(config.eps, {0.125});
  const std::size_t trials = trials_or(config, 2000);
  if (config.protocol != "all" && config.protocol != "nw" && config.protocol != "trivial")
    throw ConfigError("protocol must be nw, trivial or all");
  for (auto n : ns)
    if (n < 2 || (n & (n - 1)) != 0) throw ConfigError("n must be a power of two >= 2");
  for (auto k : ks)
    if (k == 0) throw ConfigError("k must be at least 1");
  for (auto e : epss)
    if (!(e > 0.0 && e < 0.5)) throw ConfigError("eps must lie in (0, 1/2)");
  const bool nw = config.protocol != "trivial";
  if (nw)
    for (auto k : ks)
      if (k < 4) throw ConfigError("the nw protocol needs k >= 4");

  Report r = start_report("run-pj", config,
                          {"protocol", "n", "k", "eps", "trials", "error", "error_stderr", "error_limit",
                           "mean_bits", "max_bits", "bit_bound", "mean_rounds", "max_rounds", "pass"});
  const std::uint64_t seed = r.seed;
  std::uint64_t cell = 0;
  for (auto n : ns)
    for (auto k : ks) {
      if (config.protocol != "nw") {
        const auto st = cc::estimate_error(cc::trivial_alice_start(k), cc::AnswerKind::kParityBit, n, k,
                                           trials, cc::derive_seed(seed, cell++));
        const double exact = static_cast<double>(k * pj::code_width(n));
        const bool pass = st.error_rate == 0.0 && static_cast<double>(st.max_bits) == exact &&
                          st.mean_bits == exact;
        add_row(r, {"trivial", n, k, nullptr, trials, st.error_rate, st.error_stderr, 0.0, st.mean_bits,
                    st.max_bits, exact, st.mean_rounds, st.max_rounds, pass});
        if (!pass) r.exit_code = kExitViolation;
      }
      if (nw)
        for (auto e : epss) {
          const auto st = cc::estimate_error(cc::nw_protocol(n, k, e), cc::AnswerKind::kEndpointIndex, n, k,
                                             trials, cc::derive_seed(seed, cell++));
          const double limit = e + 3.0 * std::sqrt(e * (1.0 - e) / static_cast<double>(trials));
          const double bound = cc::nw_bit_bound(n, k, e);
          const bool pass = st.error_rate <= limit && static_cast<double>(st.max_bits) <= bound;
          add_row(r, {"nw", n, k, e, trials, st.error_rate, st.error_stderr, limit, st.mean_bits, st.max_bits,
                      bound, st.mean_rounds, st.max_rounds, pass});
          if (!pass) r.exit_code = kExitViolation;
        }
    }
  return r;
}

// --- reduce-disj -------------------------------------------------------------------

Report reduce_disj_impl(const ExperimentConfig& config) {
  const auto ns = or_default(config.n, {2, 4});
  const auto ks = or_default(config.k, {1, 2, 3});
  const std::size_t trials = trials_or(config, 10000);
  for (auto n : ns)
    if (n < 1) throw ConfigError("n must be at least 1");
  for (auto k : ks)
    if (k == 0) throw ConfigError("k must be at least 1");

  Report r = start_report("reduce-disj", config,
                          {"n", "k", "mode", "universe", "instances", "matches", "max_intersection",
                           "summary", "pass"});
  std::uint64_t cell = 0;
  for (auto n : ns)
    for (auto k : ks) {
      double universe = std::pow(static_cast<double>(n), static_cast<double>(k));
      if (universe > static_cast<double>(std::uint64_t{1} << 26)) throw ConfigError("universe n^k too large");
      // Exhaustive when the instance space is small enough; 2^16 instances at most.
      const double space = std::pow(static_cast<double>(n), 2.0 * static_cast<double>(n));
      const bool exhaustive = space <= 65536.0 && space * universe <= 4e7;
      std::size_t instances = 0, matches = 0, max_inter = 0;
      auto check = [&](const pj::PointerInstance& inst) {
        const auto x = disj::reduce_pj_to_disj(inst, k);
        ++instances;
        matches += disj::disj(x) == pj::f_k(inst, k);
        max_inter = std::max(max_inter, disj::intersection_size(x));
      };
      if (exhaustive) {
        for (const auto& inst : pj::all_instances(n)) check(inst);
      } else {
        std::mt19937_64 rng(cc::derive_seed(r.seed, cell));
        for (std::size_t i = 0; i < trials; ++i) check(pj::random_instance(n, rng));
      }
      ++cell;
      const bool pass = matches == instances && max_inter <= 1;
      add_row(r, {n, k, exhaustive ? "exhaustive" : "random", static_cast<std::uint64_t>(universe), instances,
                  matches, max_inter,
                  std::to_string(matches) + "/" + std::to_string(instances) + " match", pass});
      if (!pass) r.exit_code = kExitViolation;
    }
  return r;
}

// --- exact-cc ---------------------------------------------------------------------

struct NamedTable {
  std::string function;
  std::size_t n = 0;
  std::optional<std::size_t> k;
  cc::BoolTable table;
};

std::vector<NamedTable> build_tables(const ExperimentConfig& config) {
  std::vector<NamedTable> out;
  const std::string& f = config.function;
  if (f == "table") {
    if (config.table.empty()) throw ConfigError("function table needs --table");
    try {
      out.push_back({"table", 0, std::nullopt, cc::parse_table(config.table)});
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
    return out;
  }
  if (f == "const" || f == "eq") {
    for (auto n : or_default(config.n, {2, 4, 8})) {
      if (n == 0 || n > cc::kMaxTableSide) throw ConfigError("table side must be in [1, 16]");
      cc::BoolTable t(n, std::vector<bool>(n, false));
      if (f == "eq")
        for (std::size_t i = 0; i < n; ++i) t[i][i] = true;
      out.push_back({f, n, std::nullopt, t});
    }
    return out;
  }
  if (f == "disj") {
    for (auto m : or_default(config.n, {1, 2, 3})) {
      if (m == 0 || m > 4) throw ConfigError("disj universe must be in [1, 4]");
      const std::size_t side = std::size_t{1} << m;
      cc::BoolTable t(side, std::vector<bool>(side));
      for (std::size_t a = 0; a < side; ++a)
        for (std::size_t b = 0; b < side; ++b) t[a][b] = (a & b) != 0;
      out.push_back({f, m, std::nullopt, t});
    }
    return out;
  }
  if (f == "pj") {
    for (auto n : or_default(config.n, {2}))
      for (auto k : or_default(config.k, {1, 2, 3})) {
        if (n != 2) throw ConfigError("pointer jumping tables are limited to n = 2");
        if (k == 0) throw ConfigError("k must be at least 1");
        out.push_back({f, n, k, cc::pointer_jumping_table(n, k)});
      }
    return out;
  }
  throw ConfigError("function must be const, eq, pj, disj or table");
}

std::size_t ceil_log2(std::size_t x) {
  std::size_t b = 0;
  while ((std::size_t{1} << b) < x) ++b;
  return b;
}

// Metered cost of correct concrete protocols that fit the round limit and starter.
std::optional<std::size_t> reference_bits(const NamedTable& t, std::optional<std::size_t> rounds, cc::Side starter) {
  std::optional<std::size_t> best;
  auto offer = [&](std::size_t bits) { best = best ? std::min(*best, bits) : bits; };
  const std::size_t side = starter == cc::Side::A ? t.table.size() : t.table.front().size();
  // The starter sends its whole input index; the other player announces.
  if (!rounds || *rounds >= 1) offer(ceil_log2(side));
  if (t.function == "pj" && starter == cc::Side::A && (!rounds || *rounds >= *t.k)) {
    const auto protocol = cc::trivial_alice_start(*t.k);
    std::size_t worst = 0;
    for (const auto& inst : pj::all_instances(t.n)) {
      const auto tr = cc::run_protocol(protocol, inst.fa(), inst.fb(), cc::PublicCoins(0));
      if (tr.answer.value_or(2) != pj::f_k(inst, *t.k)) throw std::logic_error("trivial protocol answered wrongly");
      worst = std::max(worst, tr.total_bits());
    }
    offer(worst);
  }
  return best;
}

Report exact_cc_impl(const ExperimentConfig& config) {
  const cc::Side starter = parse_starter(config.starter);
  const auto tables = build_tables(config);
  std::vector<std::optional<std::size_t>> limits;
  for (auto l : config.rounds) limits.emplace_back(l);
  if (limits.empty()) limits.emplace_back(std::nullopt);

  Report r = start_report("exact-cc", config,
                          {"function", "n", "k", "rows", "cols", "rounds_limit", "starter", "dcc_bits",
                           "verified", "tree_max_bits", "tree_max_rounds", "reference_bits", "pass"});
  for (const auto& t : tables)
    for (const auto& limit : limits) {
      const auto res = cc::exact_dcc(t.table, limit, starter);
      const auto ref = reference_bits(t, limit, starter);
      Json bits = nullptr, verified = nullptr, max_bits = nullptr, max_rounds = nullptr;
      bool pass = true;
      if (res) {
        std::size_t mb = 0, mr = 0;
        bool ok = true;
        for (std::size_t i = 0; i < t.table.size(); ++i)
          for (std::size_t j = 0; j < t.table[i].size(); ++j) {
            const auto run = cc::run_tree(res->tree, i, j);
            ok = ok && run.value == t.table[i][j] && (!limit || run.rounds <= *limit);
            mb = std::max(mb, run.bits);
            mr = std::max(mr, run.rounds);
          }
        ok = ok && mb == res->bits;
        bits = res->bits;
        verified = ok;
        max_bits = mb;
        max_rounds = mr;
        pass = ok && (!ref || res->bits <= *ref);
      } else {
        // Infeasible only when no concrete protocol fits either.
        pass = !ref && t.table.size() <= cc::kMaxTableSide;
      }
      add_row(r, {t.function, t.n ? Json(t.n) : Json(nullptr), t.k ? Json(*t.k) : Json(nullptr), t.table.size(),
                  t.table.front().size(), limit ? Json(*limit) : Json("none"), config.starter, bits, verified,
                  max_bits, max_rounds, ref ? Json(*ref) : Json(nullptr), pass});
      if (!pass) r.exit_code = kExitViolation;
    }
  return r;
}

// --- qsim ---------------------------------------------------------------------------

std::string verdict(bool applicable, bool holds) { return !applicable ? "n/a" : holds ? "pass" : "fail"; }

Report qsim_impl(const ExperimentConfig& config) {
  std::vector<qsim::QProtocolSpec> specs;
  if (!config.spec_file.empty()) {
    std::ifstream in(config.spec_file);
    if (!in) throw ConfigError("cannot read spec file " + config.spec_file);
    std::stringstream buf;
    buf << in.rdbuf();
    try {
      specs.push_back(qsim::spec_from_json(buf.str()));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }
  auto names = config.specs;
  if (names.empty() && specs.empty()) {
    names = qsim::toy_protocol_names();
    names.push_back("random");
  }
  Report r = start_report("qsim", config,
                          {"spec", "n", "k", "starter", "t", "d", "mean_gamma", "mean_beta", "gamma", "beta",
                           "info_unmeasured", "info_measured", "info_bound", "delta", "error", "recursion_check",
                           "gamma_check", "beta_check", "info_check", "endpoint_check"});
  const std::size_t random_count = trials_or(config, 5);
  std::mt19937_64 rng(cc::derive_seed(r.seed, 0));
  for (const auto& name : names) {
    if (name == "random") {
      for (std::size_t i = 0; i < random_count; ++i) {
        auto s = qsim::random_protocol(1 + i % 2, rng);
        s.name += "_" + std::to_string(i);
        specs.push_back(std::move(s));
      }
      continue;
    }
    try {
      specs.push_back(qsim::toy_protocol(name));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }

  for (const auto& spec : specs) {
    qsim::SimulationResult sim;
    try {
      sim = qsim::run_superposed(spec);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(spec.name + ": " + e.what());
    }
    const auto diag = qsim::diagnose(sim);
    const auto rep = qsim::check_induction(diag, sim.delta, sim.error, spec.starter);
    if (!rep.all_required()) r.exit_code = kExitViolation;
    for (const auto& row : diag) {
      const bool has_step = row.t <= spec.k;
      const qsim::InductionCheck* step = has_step && rep.rounds_applicable ? &rep.rounds[row.t - 1] : nullptr;
      const bool last = row.t == spec.k + 1;
      const bool start_ok = row.t != 1 || rep.start_is_zero;
      add_row(r, {spec.name, spec.n, spec.k, std::string(1, pj::side_name(spec.starter)), row.t, snap(row.d),
                  has_step ? Json(snap(row.mean_gamma)) : Json(nullptr),
                  has_step ? Json(snap(row.mean_beta)) : Json(nullptr), join(row.gamma), join(row.beta),
                  snap(row.info_unmeasured), snap(row.info_measured), row.info_bound,
                  row.delta, sim.error, verdict(step != nullptr, step && step->recursion_holds && start_ok),
                  verdict(step != nullptr, step && step->gamma_holds),
                  verdict(step != nullptr, step && step->beta_holds),
                  verdict(true, row.info_unmeasured <= row.info_bound + qsim::kSimTolerance &&
                                    row.info_measured <= row.info_bound + qsim::kSimTolerance),
                  verdict(last && rep.endpoint_applicable, rep.endpoint_holds)});
    }
  }
  return r;
}

}  // namespace

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

void apply_config_json(ExperimentConfig& c, const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  try {
    for (const auto& [key, v] : j.items()) {
      if (key == "suite") c.suite = v.get<std::string>();
      else if (key == "seed") c.seed = v.get<std::uint64_t>();
      else if (key == "trials") c.trials = v.get<std::size_t>();
      else if (key == "n") c.n = as_sizes(v, "n");
      else if (key == "k") c.k = as_sizes(v, "k");
      else if (key == "dims") c.dims = as_sizes(v, "dims");
      else if (key == "rounds") c.rounds = as_sizes(v, "rounds");
      else if (key == "eps") c.eps = v.is_array() ? v.get<std::vector<double>>() : std::vector<double>{v.get<double>()};
      else if (key == "out") c.out = v.get<std::string>();
      else if (key == "format") {
        const auto f = v.get<std::string>();
        if (f != "csv" && f != "json") throw ConfigError("format must be csv or json");
        c.format = f == "csv" ? Format::kCsv : Format::kJson;
      } else if (key == "protocol") c.protocol = v.get<std::string>();
      else if (key == "function") c.function = v.get<std::string>();
      else if (key == "table") c.table = v.get<std::string>();
      else if (key == "starter") c.starter = v.get<std::string>();
      else if (key == "specs") c.specs = v.get<std::vector<std::string>>();
      else if (key == "spec") c.spec_file = v.get<std::string>();
      else throw ConfigError("unknown config key '" + key + "'");
    }
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("bad config value: ") + e.what());
  }
}

std::string render(const Report& report, Format format) {
  if (format == Format::kJson) {
    Json rows = Json::array();
    for (const auto& row : report.rows) {
      Json obj = Json::object();
      for (std::size_t i = 0; i < row.size(); ++i) obj[report.columns[i]] = json_cell(row[i]);
      rows.push_back(std::move(obj));
    }
    Json out = {{"suite", report.suite},
                {"seed", report.seed},
                {"config_hash", report.config_hash},
                {"config", report.config},
                {"status", report.exit_code == kExitPass ? "pass" : "violation"},
                {"rows", std::move(rows)}};
    return out.dump(2) + "\n";
  }
  std::string out = "# config " + report.config.dump() + "\n";
  for (std::size_t i = 0; i < report.columns.size(); ++i) out += (i ? "," : "") + report.columns[i];
  out += "\n";
  for (const auto& row : report.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + csv_cell(row[i]);
    out += "\n";
  }
  return out;
}

Report cmd_run_pj(const ExperimentConfig& config) { return run_pj_impl(config); }
Report cmd_reduce_disj(const ExperimentConfig& config) { return reduce_disj_impl(config); }
Report cmd_exact_cc(const ExperimentConfig& config) { return exact_cc_impl(config); }
Report cmd_qsim(const ExperimentConfig& config) { return qsim_impl(config); }

Report run_suite(const ExperimentConfig& config) {
  detail::require_seed(config);
  if (config.suite == "verify-qit") return cmd_verify_qit(config);
  if (config.suite == "run-pj") return cmd_run_pj(config);
  if (config.suite == "reduce-disj") return cmd_reduce_disj(config);
  if (config.suite == "exact-cc") return cmd_exact_cc(config);
  if (config.suite == "qsim") return cmd_qsim(config);
  throw ConfigError("unknown suite '" + config.suite + "'");
}

}  // namespace qround::exp
