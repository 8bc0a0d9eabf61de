#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <boost/version.hpp>

#include "irrdec/edge_list.hpp"
#include "irrdec/generators.hpp"
#include "irrdec/json_io.hpp"

using namespace irrdec;

namespace {

constexpr int kOk = 0, kDiagnostic = 2, kUsage = 64, kDataFormat = 65;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex(std::uint64_t x) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(x));
  return buf;
}

struct Options {
  std::optional<std::uint64_t> seed;
  double slack = 1.0;
  std::string mode = "heuristic";
  long long budget = 2'000'000;
  bool strict = false;
  int kmax = 3;
  bool json_out = false;
  std::string out;
};

// Wraps a result with its manifest; the digest covers command, parameters,
// seed and result, never timing.
json manifest(const std::string& command, const json& params, const Options& o, const json& result,
              std::chrono::steady_clock::time_point t0) {
  json m;
  m["command"] = command;
  m["parameters"] = params;
  m["seed"] = o.seed ? json(*o.seed) : json(nullptr);
  m["versions"] = {{"irrdec", "0.1.0"}, {"compiler", __VERSION__}, {"boost", BOOST_LIB_VERSION}};
  json keyed = {{"command", command}, {"parameters", params}, {"seed", m["seed"]}, {"result", result}};
  m["result_digest"] = hex(fnv1a(keyed.dump()));
  m["elapsed_ms"] =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return m;
}

void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out);
  if (!f) throw UsageError("cannot write " + o.out);
  f << text;
}

Graph read_graph(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw DataError("cannot read " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  try {
    return parse_edge_list(ss.str());
  } catch (const ParseError& e) {
    throw DataError(path + ": " + e.what());
  } catch (const GraphError& e) {
    throw DataError(path + ": " + e.what());
  }
}

std::uint64_t need_seed(const Options& o, const std::string& what) {
  if (!o.seed) throw UsageError(what + " is randomized; --seed is required");
  return *o.seed;
}

int to_int(const std::string& s) {
  try {
    std::size_t pos = 0;
    int v = std::stoi(s, &pos);
    if (pos != s.size()) throw UsageError("not an integer: " + s);
    return v;
  } catch (const std::logic_error&) {
    throw UsageError("not an integer: " + s);
  }
}

// "attach:length[:t]" steps separated by commas; t glues a triangle
std::vector<TStep> parse_script(const std::string& s) {
  std::vector<TStep> out;
  std::stringstream ss(s);
  std::string step;
  while (std::getline(ss, step, ',')) {
    if (step.empty()) continue;
    auto a = step.find(':');
    if (a == std::string::npos) throw UsageError("bad t_family step " + step);
    auto b = step.find(':', a + 1);
    TStep t;
    t.attach = to_int(step.substr(0, a));
    t.length = to_int(step.substr(a + 1, b == std::string::npos ? std::string::npos : b - a - 1));
    if (b != std::string::npos) {
      if (step.substr(b + 1) != "t") throw UsageError("bad t_family step " + step);
      t.glue_triangle = true;
    }
    out.push_back(t);
  }
  return out;
}

Graph generate(const std::string& family, const std::vector<std::string>& p, const Options& o) {
  auto need = [&](std::size_t k) {
    if (p.size() != k) throw UsageError(family + " takes " + std::to_string(k) + " parameter(s)");
  };
  if (family == "path") return need(1), path_graph(to_int(p[0]));
  if (family == "cycle") return need(1), cycle_graph(to_int(p[0]));
  if (family == "complete") return need(1), complete_graph(to_int(p[0]));
  if (family == "complete_bipartite") return need(2), complete_bipartite_graph(to_int(p[0]), to_int(p[1]));
  if (family == "star") return need(1), star_graph(to_int(p[0]));
  if (family == "spider") return need(1), spider_graph(to_int(p[0]));
  if (family == "random_regular")
    return need(2), random_regular_graph(to_int(p[0]), to_int(p[1]), need_seed(o, family));
  if (family == "gnp") {
    need(2);
    double prob = 0;
    try {
      prob = std::stod(p[1]);
    } catch (const std::logic_error&) {
      throw UsageError("bad probability " + p[1]);
    }
    return gnp_graph(to_int(p[0]), prob, need_seed(o, family));
  }
  if (family == "t_family") {
    if (p.size() > 1) throw UsageError("t_family takes one script argument");
    return t_family_graph(p.empty() ? std::vector<TStep>{} : parse_script(p[0]));
  }
  throw UsageError("unknown family " + family);
}

SolverMode parse_mode(const std::string& m) {
  if (m == "exact") return SolverMode::Exact;
  if (m == "heuristic") return SolverMode::Heuristic;
  throw UsageError("mode must be exact or heuristic");
}

RiskEvent parse_event(const std::string& t) {
  if (t == "1") return RiskEvent::Type1;
  if (t == "2") return RiskEvent::Type2;
  if (t == "3") return RiskEvent::Type3;
  if (t == "F" || t == "f" || t == "23") return RiskEvent::Type2and3;
  throw UsageError("type must be 1, 2, 3 or F");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Locally irregular decompositions: generation, construction, search and audits"};
  app.require_subcommand(1);
  Options o;
  auto add_common = [&](CLI::App* c) {
    c->add_option("--seed", o.seed, "master seed (u64)");
    c->add_flag("--json", o.json_out, "print the JSON record");
    c->add_option("--out", o.out, "write output to a file");
  };

  std::string family;
  std::vector<std::string> gen_params;
  auto* gen = app.add_subcommand("gen", "generate a graph as an edge list");
  gen->add_option("family", family, "path|cycle|complete|complete_bipartite|star|spider|random_regular|gnp|t_family")
      ->required();
  gen->add_option("params", gen_params, "family parameters");
  add_common(gen);

  std::string in_path;
  auto* dec = app.add_subcommand("decompose", "run the three-part construction");
  dec->add_option("graph", in_path, "edge-list file")->required();
  dec->add_option("--slack", o.slack, "multiplier on the label bounds");
  dec->add_option("--mode", o.mode, "exact|heuristic");
  dec->add_option("--budget", o.budget, "heuristic flip budget");
  dec->add_flag("--strict", o.strict, "enforce the asymptotic preconditions");
  add_common(dec);

  auto* orc = app.add_subcommand("oracle", "least number of locally irregular parts");
  orc->add_option("graph", in_path, "edge-list file")->required();
  orc->add_option("--kmax", o.kmax, "largest k to try");
  add_common(orc);

  std::string claim;
  auto* aud = app.add_subcommand("audit", "recompute the printed numeric constants");
  aud->add_option("--claim", claim, "single claim id");
  add_common(aud);

  std::int64_t du = 0, dv = 0;
  std::string type = "1";
  std::optional<std::int64_t> c1u, c2u, c1v, c2v;
  auto* rp = app.add_subcommand("riskprob", "exact risk probability of an edge");
  rp->add_option("du", du, "degree of u")->required();
  rp->add_option("dv", dv, "degree of v")->required();
  rp->add_option("--type", type, "1|2|3|F");
  rp->add_option("--c1u", c1u);
  rp->add_option("--c2u", c2u);
  rp->add_option("--c1v", c1v);
  rp->add_option("--c2v", c2v);
  add_common(rp);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  const auto t0 = std::chrono::steady_clock::now();
  try {
    if (*gen) {
      Graph g = generate(family, gen_params, o);
      const std::string text = serialize_edge_list(g);
      if (o.json_out) {
        json params = {{"family", family}, {"params", gen_params}};
        json result = {{"vertices", g.vertex_count()}, {"edges", g.edge_count()}, {"edge_list", text}};
        json rec = {{"manifest", manifest("gen", params, o, result, t0)}, {"result", result}};
        emit(o, rec.dump(2) + "\n");
      } else {
        emit(o, text);
      }
      return kOk;
    }

    if (*dec) {
      Graph g = read_graph(in_path);
      PipelineConfig cfg;
      cfg.seed = need_seed(o, "decompose");
      cfg.slack = o.slack;
      cfg.solver_mode = parse_mode(o.mode);
      cfg.solver_budget = o.budget;
      cfg.strict = o.strict;
      if (!(cfg.slack > 0)) throw UsageError("--slack must be positive");
      auto r = decompose3(g, cfg);
      json result;
      if (r.success()) {
        result = to_json(*r.decomposition);
        result["valid"] = is_locally_irregular_decomposition(*r.decomposition);
      } else {
        result = to_json(*r.diagnostic);
      }
      result["trace"] = to_json(r.trace);
      json params = {{"graph", in_path}, {"slack", o.slack}, {"mode", o.mode}, {"budget", o.budget}, {"strict", o.strict}};
      json rec = {{"manifest", manifest("decompose", params, o, result, t0)}, {"result", result}};
      if (o.json_out) {
        emit(o, rec.dump(2) + "\n");
      } else if (r.success()) {
        emit(o, "decomposed into 3 locally irregular parts (valid: " + std::string(result["valid"] ? "true" : "false") +
                    "), edges per part " + std::to_string(mask_size(r.trace.h1)) + "/" +
                    std::to_string(mask_size(r.trace.h2_prime)) + "/" + std::to_string(mask_size(r.trace.h3_prime)) +
                    "\n");
      } else {
        emit(o, std::string("diagnostic ") + to_string(r.diagnostic->kind) + " at stage " + r.diagnostic->stage +
                    ": " + r.diagnostic->message + "\n");
      }
      return r.success() ? kOk : kDiagnostic;
    }

    if (*orc) {
      Graph g = read_graph(in_path);
      if (o.kmax < 1) throw UsageError("--kmax must be at least 1");
      OracleResult r;
      try {
        r = min_parts(g, o.kmax);
      } catch (const OracleLimitError& e) {
        throw DataError(e.what());
      }
      json result = to_json(r);
      json params = {{"graph", in_path}, {"kmax", o.kmax}};
      json rec = {{"manifest", manifest("oracle", params, o, result, t0)}, {"result", result}};
      if (o.json_out)
        emit(o, rec.dump(2) + "\n");
      else
        emit(o, r.feasible_k ? "k = " + std::to_string(*r.feasible_k) + "\n"
                             : "no locally irregular decomposition with k <= " + std::to_string(o.kmax) + "\n");
      return r.feasible_k ? kOk : kDiagnostic;
    }

    if (*aud) {
      auto entries = audit_constants();
      if (!claim.empty()) {
        std::erase_if(entries, [&](const AuditEntry& e) { return e.claim_id != claim; });
        if (entries.empty()) throw UsageError("unknown claim " + claim);
      }
      json list = json::array();
      bool all = true;
      for (const auto& e : entries) {
        list.push_back(to_json(e));
        all = all && e.pass;
      }
      json rec = {{"manifest", manifest("audit", {{"claim", claim}}, o, list, t0)}, {"result", list}};
      if (o.json_out) {
        emit(o, rec.dump(2) + "\n");
      } else {
        std::ostringstream os;
        for (const auto& e : entries)
          os << (e.pass ? "ok   " : "FAIL ") << e.claim_id << "  " << e.formula << " = " << e.computed << " (printed "
             << e.printed << ")\n";
        emit(o, os.str());
      }
      return all ? kOk : kDiagnostic;
    }

    if (*rp) {
      const auto ev = parse_event(type);
      LabelCondition cond{c1u, c2u, c1v, c2v};
      Rational p;
      try {
        p = exact_edge_risk_probability(du, dv, ev, cond);
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      json checks = json::array();
      for (const auto& c : check_risk_bounds(du, dv)) checks.push_back(to_json(c));
      json result = {{"probability", p.str()}, {"value", static_cast<double>(p.value())}, {"bounds", checks}};
      json params = {{"du", du}, {"dv", dv}, {"type", type}};
      json rec = {{"manifest", manifest("riskprob", params, o, result, t0)}, {"result", result}};
      if (o.json_out) {
        emit(o, rec.dump(2) + "\n");
      } else {
        std::ostringstream os;
        os << "P = " << p.str() << " (" << static_cast<double>(p.value()) << ")\n";
        for (const auto& c : check_risk_bounds(du, dv))
          os << (c.pass ? "ok   " : "FAIL ") << c.name << " worst " << c.worst.str() << " <= "
             << static_cast<double>(c.bound_value) << "\n";
        emit(o, os.str());
      }
      return kOk;
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kDataFormat;
  } catch (const GraphError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const PreconditionError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
