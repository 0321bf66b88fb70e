#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <thread>

#include "olt/errors.hpp"
#include "olt/geometry.hpp"
#include "olt/og_oracle.hpp"
#include "olt/orbit_tree.hpp"
#include "olt/spinor.hpp"
#include "olt/strata.hpp"

using json = nlohmann::ordered_json;
using namespace olt;

namespace {

constexpr const char* kVersion = "0.1.0";

struct Config {
  std::string command;
  std::string space = "fano";
  std::size_t depth = 3;
  std::string oracle = "none";
  int ext = 1;
  int genus = 0;
  std::string stratum;
  std::uint64_t seed = 1;
  unsigned workers = 0;
  int k_max = 5;
  std::uint64_t threshold = 12;
  std::size_t trials = 200;
  int max_ext = 0;
  std::size_t table_budget = std::size_t{1} << 21;
  std::size_t refinement_limit = std::size_t{1} << 22;
  std::size_t point_budget = std::size_t{1} << 22;
  std::vector<int> sizes;
  std::vector<int> cubics;
  bool include_improper = false;
  std::size_t class_limit = SIZE_MAX;
  bool transporters = false;
  std::string out;
  std::string manifest;
  bool quiet = false;

  json to_json() const {
    json j;
    j["command"] = command;
    if (command.rfind("tree", 0) == 0 || command == "geometry points") j["space"] = space;
    if (command.rfind("tree", 0) == 0) {
      j["depth"] = depth;
      j["oracle"] = oracle;
    }
    if (command == "tree verify") j["trials"] = trials;
    if (command == "geometry points") j["ext"] = ext;
    if (command == "strata precheck") {
      j["genus"] = genus;
      j["stratum"] = stratum;
    }
    if (command == "strata run") j["stratum"] = stratum;
    if (command.rfind("strata run", 0) == 0 || command == "strata genus7-generic") {
      j["max_ext"] = max_ext;
      j["table_budget"] = table_budget;
      j["refinement_limit"] = refinement_limit;
      j["sizes"] = sizes;
      j["cubics"] = cubics;
      j["include_improper"] = include_improper;
      if (class_limit != SIZE_MAX) j["class_limit"] = class_limit;
    }
    j["seed"] = seed;
    j["k_max"] = k_max;
    j["threshold"] = threshold;
    j["version"] = kVersion;
    return j;
  }
};

std::string manifest_hash(const json& config) {
  // FNV-1a over the canonical dump
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : config.dump()) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream os;
  os << std::hex;
  os.width(16);
  os.fill('0');
  os << h;
  return os.str();
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty() && path != "-") {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw DomainError("cannot open " + path);
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

std::size_t env_size(const char* name, std::size_t fallback) {
  const char* v = std::getenv(name);
  if (!v || !*v) return fallback;
  char* end = nullptr;
  const auto x = std::strtoull(v, &end, 10);
  if (*end) throw DomainError(std::string(name) + " is not a number");
  return static_cast<std::size_t>(x);
}

json point_json(const ProjPoint& p) {
  json a = json::array();
  for (auto c : p.coords) a.push_back(static_cast<int>(c));
  return a;
}

std::string bits(const BitVec& v) {
  std::string s(v.size(), '0');
  for (std::size_t k = 0; k < v.size(); ++k)
    if (v.get(k)) s[k] = '1';
  return s;
}

json candidate_json(const CandidateScheme& c, const std::string& hash) {
  json j;
  j["stratum"] = c.stratum;
  j["ambient"] = c.ambient;
  const auto space = AmbientSpace::parse(c.ambient);
  json forms = json::array();
  for (const auto& f : c.forms) {
    const FormSpace fs(space, f.degree);
    forms.push_back({{"degree", f.degree}, {"order", fs.order_id()}, {"coeffs", bits(f.coeffs)}});
  }
  j["forms"] = forms;
  json pts = json::array();
  for (const auto& p : c.points) pts.push_back(point_json(p));
  j["points"] = pts;
  j["counts"] = c.counts;
  j["flags"] = c.flags;
  j["manifest"] = hash;
  return j;
}

StratumOptions stratum_options(const Config& c) {
  StratumOptions o;
  o.seed = c.seed;
  o.workers = c.workers;
  o.max_extension = c.max_ext;
  o.table_budget = c.table_budget;
  o.refinement_limit = c.refinement_limit;
  o.subset_sizes = c.sizes;
  o.cubics = c.cubics;
  o.include_improper = c.include_improper;
  o.class_limit = c.class_limit;
  o.og.k_max = c.k_max;
  o.og.threshold = c.threshold;
  if (!c.quiet) o.log = [](const std::string& m) { std::cerr << m << '\n'; };
  return o;
}

struct TreeSetup {
  PermGroup group;
  std::size_t domain = 0;
  EligibilityOracle oracle;
};

TreeSetup tree_setup(const Config& c) {
  const auto space = AmbientSpace::parse(c.space);
  TreeSetup t;
  if (space.kind() == SpaceKind::OgPlus) {
    t.group = so_generators(c.seed).group;
    t.domain = OgPlus::get().size();
  } else {
    auto aut = automorphism_generators(space);
    t.domain = aut.points.size();
    t.group = std::move(aut.group);
  }
  if (c.oracle == "og") {
    if (space.kind() != SpaceKind::OgPlus) throw DomainError("the og oracle needs --space og+");
    OgOracleOptions oo;
    oo.k_max = c.k_max;
    oo.threshold = c.threshold;
    auto oracle = std::make_shared<OgOracle>(oo);
    t.oracle = [oracle](std::span<const Point> s) { return (*oracle)(s); };
  } else if (c.oracle != "none") {
    throw DomainError("unknown oracle: " + c.oracle);
  }
  return t;
}

using Timings = std::vector<std::pair<std::string, double>>;

int run(const Config& c, const std::string& hash, Timings& timings, json& summary) {
  using Clock = std::chrono::steady_clock;
  const auto t0 = Clock::now();
  auto stage = [&](const std::string& name, Clock::time_point from) {
    timings.emplace_back(name, std::chrono::duration<double>(Clock::now() - from).count());
  };
  Output out(c.out);
  auto& os = out.stream();

  if (c.command == "tree build" || c.command == "tree verify") {
    auto setup = tree_setup(c);
    TreeOptions topt;
    topt.seed = c.seed;
    topt.workers = c.workers;
    if (!c.quiet) topt.log = [](const std::string& m) { std::cerr << m << '\n'; };
    OrbitTree tree(setup.group, setup.domain, setup.oracle, topt);
    tree.extend_to(c.depth);
    stage("tree", t0);
    json greens = json::array();
    for (std::size_t k = 0; k <= c.depth; ++k) greens.push_back(tree.green_count(k));
    summary["nodes"] = tree.node_count();
    summary["greens"] = greens;
    if (c.command == "tree build") {
      os << "# manifest " << hash << '\n';
      tree.write(os, c.transporters);
      return 0;
    }
    bool ok = true;
    json reports = json::array();
    const auto t1 = Clock::now();
    for (std::size_t k = 1; k <= c.depth; ++k) {
      const auto r = tree.verify(k, c.trials, c.seed + k);
      json j{{"depth", k}, {"trials", r.trials}, {"resolved", r.resolved}, {"ineligible", r.ineligible}, {"ok", r.ok}};
      if (r.index_sum) j["index_sum"] = *r.index_sum;
      if (r.expected) j["expected"] = *r.expected;
      if (!r.ok) j["failure"] = r.failure;
      j["manifest"] = hash;
      os << j.dump() << '\n';
      ok = ok && r.ok;
    }
    stage("verify", t1);
    return ok ? 0 : 1;
  }

  if (c.command == "geometry points") {
    const auto space = AmbientSpace::parse(c.space);
    const auto pts = enumerate_points(space, c.ext, c.point_budget);
    for (const auto& p : pts) os << json{{"point", point_json(p)}, {"manifest", hash}}.dump() << '\n';
    summary["points"] = pts.size();
    stage("points", t0);
    return 0;
  }

  if (c.command == "strata precheck") {
    std::vector<int> genera = c.genus ? std::vector<int>{c.genus} : std::vector<int>{6, 7};
    for (int g : genera) {
      std::vector<std::string> names = c.stratum.empty() ? precheck_strata(g) : std::vector<std::string>{c.stratum};
      for (const auto& n : names) {
        const auto r = stratum_precheck(g, n);
        json checks = json::array();
        for (const auto& e : r.checks) checks.push_back({{"claim", e.claim}, {"holds", e.holds}});
        os << json{{"genus", g},          {"stratum", n},      {"excluded", r.excluded},
                   {"external", r.external}, {"checks", checks}, {"surviving", r.surviving},
                   {"manifest", hash}}
                  .dump()
           << '\n';
      }
    }
    stage("precheck", t0);
    return 0;
  }

  if (c.command == "strata run" || c.command == "strata genus7-generic") {
    const auto o = stratum_options(c);
    StratumReport rep;
    json extra;
    if (c.command == "strata run") {
      rep = run_stratum(stratum_spec(c.stratum), o);
    } else {
      auto g = genus7_generic_pipeline(o);
      rep.stratum = "g7-generic";
      rep.ok = g.ok;
      rep.failure = g.failure;
      for (const auto& [k, v] : g.stats) rep.stats.emplace_back(k, v);
      rep.timings = g.timings;
      rep.candidates = std::move(g.candidates);
      extra["representatives"] = g.greens;
      json dims;
      for (const auto& [d, n] : g.span_dimensions) dims[std::to_string(d)] = n;
      extra["span_dimensions"] = dims;
      extra["span_property"] = g.span_property;
    }
    for (const auto& t : rep.timings) timings.push_back(t);
    for (const auto& cand : rep.candidates) os << candidate_json(cand, hash).dump() << '\n';
    json stats;
    for (const auto& [k, v] : rep.stats) stats[k] = v;
    json r{{"report", rep.stratum}, {"ok", rep.ok}, {"stats", stats}, {"notes", rep.notes}};
    for (auto it = extra.begin(); it != extra.end(); ++it) r[it.key()] = it.value();
    if (!rep.ok) r["failure"] = rep.failure;
    r["manifest"] = hash;
    summary = r;
    if (!c.out.empty() && c.out != "-") std::cout << r.dump() << '\n';
    else os << r.dump() << '\n';
    return rep.ok ? 0 : 1;
  }
  throw DomainError("no command");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Orbit lookup trees and Brill-Noether strata over F_2"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);
  Config c;
  c.workers = std::max(1u, std::thread::hardware_concurrency());

  auto common = [&](CLI::App* s) {
    s->add_option("--seed", c.seed, "seed for group generators and tie-breaks");
    s->add_option("--workers", c.workers, "worker threads")->check(CLI::PositiveNumber);
    s->add_option("--out", c.out, "artifact path (default stdout)");
    s->add_option("--manifest", c.manifest, "write the run manifest here");
    s->add_flag("--quiet", c.quiet, "no progress on stderr");
  };
  auto og_flags = [&](CLI::App* s) {
    s->add_option("--k-max", c.k_max, "extension degrees scanned by the OG+ oracle")->check(CLI::Range(1, 8));
    s->add_option("--threshold", c.threshold, "points above which a span meets OG+ in positive dimension");
  };
  auto strata_flags = [&](CLI::App* s) {
    s->add_option("--max-ext", c.max_ext, "count points up to F_{2^i} (0: the genus)")->check(CLI::Range(0, 8));
    s->add_option("--table-budget", c.table_budget, "largest ambient point table");
    s->add_option("--refinement-limit", c.refinement_limit, "largest solution set of one refinement");
    s->add_option("--sizes", c.sizes, "point subset sizes")->delimiter(',');
    s->add_option("--cubics", c.cubics, "self-adjoint: cubic indices 0,1,2")->delimiter(',');
    s->add_flag("--include-improper", c.include_improper, "genus-6 generic: also the improper classes");
    s->add_option("--class-limit", c.class_limit, "genus-6 generic: run this many classes");
  };

  auto* tree = app.add_subcommand("tree", "orbit lookup trees");
  tree->require_subcommand(1);
  for (const char* name : {"build", "verify"}) {
    auto* s = tree->add_subcommand(name, std::string(name) + " a tree");
    s->add_option("--space", c.space, "P<n>, fano, P<a>xP<b>, X21, X11, Gr25, og+")->required();
    s->add_option("--depth", c.depth, "tree depth")->required()->check(CLI::Range(0, 12));
    s->add_option("--oracle", c.oracle, "none or og")->check(CLI::IsMember({"none", "og"}));
    if (std::string(name) == "build") s->add_flag("--transporters", c.transporters, "write transporters");
    if (std::string(name) == "verify") s->add_option("--trials", c.trials, "random lookups per depth");
    common(s);
    og_flags(s);
    s->callback([&c, name] { c.command = std::string("tree ") + name; });
  }

  auto* geo = app.add_subcommand("geometry", "ambient spaces");
  geo->require_subcommand(1);
  auto* pts = geo->add_subcommand("points", "list F_{2^i}-points");
  pts->add_option("--space", c.space, "ambient space id")->required();
  pts->add_option("--ext", c.ext, "extension degree i")->check(CLI::Range(1, 8));
  common(pts);
  pts->callback([&] { c.command = "geometry points"; });

  auto* strata = app.add_subcommand("strata", "Brill-Noether strata");
  strata->require_subcommand(1);
  auto* pre = strata->add_subcommand("precheck", "point-count exclusions");
  pre->add_option("--genus", c.genus, "6 or 7 (default both)")->check(CLI::IsMember({6, 7}));
  pre->add_option("--stratum", c.stratum, "stratum name");
  common(pre);
  pre->callback([&] { c.command = "strata precheck"; });
  auto* runc = strata->add_subcommand("run", "enumerate candidates of one stratum");
  std::vector<std::string> ids;
  for (const auto& s : stratum_specs()) ids.push_back(s.id);
  runc->add_option("--stratum", c.stratum, "stratum id")->required()->check(CLI::IsMember(ids));
  common(runc);
  og_flags(runc);
  strata_flags(runc);
  runc->callback([&] { c.command = "strata run"; });
  auto* g7 = strata->add_subcommand("genus7-generic", "the genus-7 generic pipeline on OG+");
  common(g7);
  og_flags(g7);
  strata_flags(g7);
  g7->callback([&] { c.command = "strata genus7-generic"; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cout << json{{"error", "usage"}, {"message", e.what()}}.dump() << '\n';
    return 2;
  }

  int status = 0;
  Timings timings;
  json summary = json::object();
  std::string hash;
  try {
    c.table_budget = env_size("OLT_TABLE_BUDGET", c.table_budget);
    c.refinement_limit = env_size("OLT_REFINEMENT_LIMIT", c.refinement_limit);
    c.point_budget = env_size("OLT_POINT_BUDGET", c.point_budget);
    hash = manifest_hash(c.to_json());
    status = run(c, hash, timings, summary);
  } catch (const ResourceError& e) {
    std::cout << json{{"error", "resource"}, {"message", e.what()}, {"checkpoint", c.out.empty() ? "-" : c.out},
                      {"manifest", hash}}
                     .dump()
              << '\n';
    status = 3;
  } catch (const DomainError& e) {
    std::cout << json{{"error", "usage"}, {"message", e.what()}, {"manifest", hash}}.dump() << '\n';
    status = 2;
  } catch (const std::exception& e) {
    std::cout << json{{"error", "failure"}, {"message", e.what()}, {"manifest", hash}}.dump() << '\n';
    status = 4;
  }
  if (!c.manifest.empty()) {
    json m{{"manifest", hash}, {"config", c.to_json()}, {"workers", c.workers}, {"status", status}};
    json t = json::object();
    for (const auto& [k, v] : timings) t[k] = v;
    m["timings"] = t;
    m["summary"] = summary;
    std::ofstream(c.manifest) << m.dump(2) << '\n';
  }
  return status;
}
