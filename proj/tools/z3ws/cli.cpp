// Copyright 2026 The z3ws Authors
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

#include "cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <memory>
#include <optional>
#include <random>
#include <sstream>

#include "serialize.hpp"
#include "suites.hpp"
#include "z3ws/autgroup.hpp"
#include "z3ws/polyfam.hpp"
#include "z3ws/series.hpp"
#include "z3ws/weier.hpp"

namespace z3ws::cli {
namespace {

using curve::ClassKind;
using curve::Curve;
using curve::Place;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Config {
  int t = 2;
  std::string format = "json";
  std::uint64_t seed = 1;
  int prec = 0;
  std::string out_path;
  int max_q = 27;

  // Selectors shared by several subcommands.
  std::string place;
  std::string cls;
  int index = 0;
  std::uint64_t beta_order = 0;
  int count = 3;
  bool certify = false;

  std::string scope = "all";
  int samples = 3;
  int betas = 20;

  std::string beta;
  int n = 10;
  bool symbolic = false;
};

Format parse_format(const std::string& s) {
  if (s == "json") return Format::Json;
  if (s == "csv") return Format::Csv;
  if (s == "text") return Format::Text;
  throw UsageError("unknown format " + s);
}

std::unique_ptr<Curve> make_curve(const Config& cfg) {
  if (cfg.t < 2) throw UsageError("t must be >= 2: for t = 1 the curve Z_3 is elliptic");
  if (cfg.max_q > 81) throw UsageError("--max-q cannot exceed 81");
  long q = 1;
  for (int k = 0; k < cfg.t && q <= 81; ++k) q *= 3;
  if (q > cfg.max_q) {
    throw UsageError("q = 3^" + std::to_string(cfg.t) + " exceeds the configured cap " + std::to_string(cfg.max_q) +
                     " (raise it with --max-q, at most 81)");
  }
  if (cfg.prec != 0 && (cfg.prec < static_cast<int>(q) + 1 || cfg.prec > series::kMaxPrecision)) {
    throw UsageError("--prec must lie in [q + 1, 4096]");
  }
  return std::make_unique<Curve>(cfg.t);
}

ff::FieldElement element_from_index(const Curve& c, const std::string& s) {
  std::size_t pos = 0;
  unsigned long long idx = 0;
  try {
    idx = std::stoull(s, &pos);
  } catch (const std::exception&) {
    throw UsageError("not an element index: " + s);
  }
  if (pos != s.size() || idx >= c.base().size()) throw UsageError("element index out of range: " + s);
  return c.base().from_index(idx);
}

std::optional<ClassKind> parse_class(const std::string& s) {
  if (s.empty()) return std::nullopt;
  auto k = curve::class_kind_from_string(s);
  if (!k) throw UsageError("unknown class " + s);
  return k;
}

bool nonrational(ClassKind k) { return k == ClassKind::NonRationalGeneric || k == ClassKind::NonRationalSpecial; }

/// Sampled places of a non-rational kind, taking gamma orders in default order.
std::vector<Place> sample_kind(const Curve& c, ClassKind kind, int count, std::mt19937_64& rng) {
  std::vector<Place> out;
  for (std::uint64_t n : weier::default_gamma_orders(c.q())) {
    if (static_cast<int>(out.size()) >= count) break;
    const auto probe = c.sample_place(n, rng);
    if (!probe || probe->cls.kind != kind) continue;
    out.push_back(*probe);
    while (static_cast<int>(out.size()) < count) {
      const auto more = c.sample_place(n, rng);
      if (!more) break;
      out.push_back(*more);
    }
  }
  return out;
}

Place sample_gamma(const Curve& c, std::uint64_t n, std::mt19937_64& rng) {
  if (n < 4 || n % 3 == 0) throw UsageError("--beta-order must be >= 4 and prime to 3");
  const auto pl = c.sample_place(n, rng);
  if (!pl) throw UsageError("no place with gamma order " + std::to_string(n) + " within the field tower");
  return *pl;
}

Place select_place(const Curve& c, const Config& cfg, std::mt19937_64& rng) {
  if (cfg.beta_order != 0) return sample_gamma(c, cfg.beta_order, rng);
  if (!cfg.place.empty()) {
    if (cfg.place == "infinity") return c.infinity();
    const auto colon = cfg.place.find(':');
    if (colon != std::string::npos) {
      const auto a = element_from_index(c, cfg.place.substr(0, colon));
      const auto b = element_from_index(c, cfg.place.substr(colon + 1));
      if (!c.on_curve(a, b)) throw UsageError("(" + cfg.place + ") is not on the curve");
      return c.place_from_coords(a, b);
    }
    const auto places = c.enumerate_rational();
    std::size_t pos = 0;
    unsigned long idx = 0;
    try {
      idx = std::stoul(cfg.place, &pos);
    } catch (const std::exception&) {
      throw UsageError("bad --place selector " + cfg.place);
    }
    if (pos != cfg.place.size() || idx >= places.size()) throw UsageError("bad --place selector " + cfg.place);
    return places[idx];
  }
  if (const auto kind = parse_class(cfg.cls)) {
    if (nonrational(*kind)) {
      const auto found = sample_kind(c, *kind, cfg.index + 1, rng);
      if (static_cast<int>(found.size()) <= cfg.index) throw UsageError("no sampled place of class " + cfg.cls);
      return found[static_cast<std::size_t>(cfg.index)];
    }
    int seen = 0;
    for (const auto& pl : c.enumerate_rational()) {
      if (pl.cls.kind == *kind && seen++ == cfg.index) return pl;
    }
    throw UsageError("class " + cfg.cls + " has no rational place with index " + std::to_string(cfg.index));
  }
  throw UsageError("select a place with --place, --class or --beta-order");
}

json assignment_json(const Curve& c, const weier::SemigroupAssignment& a, LevelLog& log) {
  json row;
  row["place"] = place_json(c, a.place, log);
  row["theorem_tag"] = curve::to_string(a.tag);
  row["theorem"] = weier::theorem_statement(a.tag);
  if (a.rational()) {
    row["generators"] = a.generators;
  } else {
    row["generators"] = nullptr;
  }
  row["gaps"] = gaps_json(a.gaps);
  row["genus"] = a.gaps.genus();
  row["conductor"] = a.gaps.conductor();
  if (!a.replacements.empty()) {
    json rep = json::array();
    for (const auto& [from, to] : a.replacements) rep.push_back({from, to});
    row["replaced"] = rep;
  }
  if (!a.certificate.empty()) {
    json entries = json::array();
    for (const auto& e : a.certificate) {
      entries.push_back({{"kind", weier::to_string(e.kind)},
                         {"value", e.value},
                         {"witness", e.witness},
                         {"v_at_p", e.v_at_p},
                         {"pole_bound", e.pole_bound},
                         {"verified", e.verified}});
    }
    row["certificate"] = entries;
  }
  return row;
}

int cmd_places(const Config& cfg, json& doc) {
  const auto c = make_curve(cfg);
  LevelLog log;
  std::mt19937_64 rng(cfg.seed);
  const auto kind = parse_class(cfg.cls);
  std::vector<Place> places;
  std::string source = "rational";
  if (cfg.beta_order != 0) {
    for (int k = 0; k < cfg.count; ++k) places.push_back(sample_gamma(*c, cfg.beta_order, rng));
    source = "sampled";
  } else if (kind && nonrational(*kind)) {
    places = sample_kind(*c, *kind, cfg.count, rng);
    source = "sampled";
  } else {
    places = c->enumerate_rational();
  }
  json rows = json::array();
  std::size_t idx = 0;
  for (const auto& pl : places) {
    const std::size_t here = idx++;
    if (kind && pl.cls.kind != *kind) continue;
    json row;
    row["index"] = here;
    const json fields = place_json(*c, pl, log);
    for (const auto& [k, v] : fields.items()) row[k] = v;
    rows.push_back(std::move(row));
  }
  json summary;
  summary["source"] = source;
  summary["rows"] = rows.size();
  if (source == "rational") summary["rational_places"] = c->rational_place_count();
  doc = make_document(*c, "places", log, summary, rows);
  return kExitOk;
}

int cmd_semigroup(const Config& cfg, json& doc) {
  const auto c = make_curve(cfg);
  LevelLog log;
  std::mt19937_64 rng(cfg.seed);
  const auto pl = select_place(*c, cfg, rng);
  auto a = weier::semigroup_at(*c, pl);
  int code = kExitOk;
  std::string status = "not requested";
  if (cfg.certify) {
    try {
      weier::certify(*c, a, 0, cfg.prec);
      status = "verified";
    } catch (const weier::VerificationError& ex) {
      status = ex.what();
      code = kExitVerificationFailed;
    }
  }
  json summary;
  summary["theorem_tag"] = curve::to_string(a.tag);
  summary["genus"] = a.gaps.genus();
  summary["certificate"] = status;
  doc = make_document(*c, "semigroup", log, summary, json::array({assignment_json(*c, a, log)}));
  return code;
}

int cmd_verify(const Config& cfg, json& doc) {
  const auto c = make_curve(cfg);
  LevelLog log;
  SuiteOptions opt;
  opt.seed = cfg.seed;
  opt.samples = cfg.samples;
  opt.betas = cfg.betas;
  opt.prec = cfg.prec;
  std::vector<Check> checks;
  auto append = [&](std::vector<Check> more) {
    for (auto& ch : more) checks.push_back(std::move(ch));
  };
  const std::string& s = cfg.scope;
  if (s == "polyfam" || s == "all") append(run_polyfam(*c, opt, log));
  if (s == "valuations" || s == "all") append(run_valuations(*c, opt, log));
  if (s == "semigroups" || s == "all") append(run_semigroups(*c, opt, log));
  if (s == "autgroup" || s == "all") append(run_autgroup(*c, opt, log));
  json rows = json::array();
  std::size_t failed = 0;
  for (const auto& ch : checks) {
    failed += ch.passed ? 0 : 1;
    rows.push_back(check_json(ch));
  }
  json summary;
  summary["scope"] = s;
  summary["checks"] = checks.size();
  summary["failed"] = failed;
  summary["passed"] = failed == 0;
  doc = make_document(*c, "verify", log, summary, rows);
  return failed == 0 ? kExitOk : kExitVerificationFailed;
}

int cmd_polyfam(const Config& cfg, json& doc) {
  const auto c = make_curve(cfg);
  LevelLog log;
  if (cfg.n < 0 || cfg.n > 4096) throw UsageError("--n must lie in [0, 4096]");
  json rows = json::array();
  json summary;
  if (cfg.symbolic) {
    const auto fam = polyfam::symbolic_families(cfg.n);
    for (std::size_t i = 0; i < fam.size(); ++i) {
      rows.push_back({{"index", i}, {"P", fam[i].p.to_string()}, {"Q", fam[i].q.to_string()}, {"R", fam[i].r.to_string()}});
    }
    summary["mode"] = "symbolic";
    doc = make_document(*c, "polyfam", log, summary, rows);
    return kExitOk;
  }
  std::mt19937_64 rng(cfg.seed);
  ff::FieldElement beta;
  if (!cfg.beta.empty()) {
    beta = element_from_index(*c, cfg.beta);
  } else if (cfg.beta_order != 0) {
    beta = sample_gamma(*c, cfg.beta_order, rng).beta;
  } else {
    throw UsageError("polyfam needs --beta, --beta-order or --symbolic");
  }
  if (beta.is_zero() || beta.is_one()) throw UsageError("beta must not be 0 or 1");
  const auto fam = polyfam::eval_recursive_upto(cfg.n, beta);
  for (const auto& tr : fam) {
    rows.push_back({{"index", tr.index},
                    {"P", element_json(tr.p, log)},
                    {"Q", element_json(tr.q, log)},
                    {"R", element_json(tr.r, log)}});
  }
  const auto ord = polyfam::orders(beta, c->tower());
  summary["mode"] = "values";
  summary["beta"] = element_json(beta, log);
  summary["gamma_order"] = ord.gamma_order;
  summary["p_order"] = ord.p_order;
  summary["r_order"] = ord.r_order;
  doc = make_document(*c, "polyfam", log, summary, rows);
  return kExitOk;
}

int cmd_aut(const Config& cfg, json& doc) {
  const auto c = make_curve(cfg);
  LevelLog log;
  const autgroup::AutGroup g(*c);
  std::mt19937_64 rng(cfg.seed);
  json rows = json::array();
  json summary;
  summary["order"] = g.order();
  json gens = json::array();
  for (const auto& s : g.generators()) {
    gens.push_back({{"a", element_json(s.a, log)}, {"b", element_json(s.b, log)}, {"sign", s.sign}});
  }
  summary["generators"] = gens;
  if (!cfg.place.empty() || !cfg.cls.empty() || cfg.beta_order != 0) {
    const auto pl = select_place(*c, cfg, rng);
    const auto orbit = g.orbit(pl);
    summary["orbit_size"] = orbit.size();
    for (const auto& p : orbit) rows.push_back(place_json(*c, p, log));
  } else {
    const auto orbits = g.orbits(c->enumerate_rational());
    std::map<std::size_t, std::size_t> sizes;
    for (std::size_t k = 0; k < orbits.size(); ++k) {
      ++sizes[orbits[k].size()];
      json row;
      row["orbit"] = k;
      row["size"] = orbits[k].size();
      row["class"] = curve::to_string(orbits[k].front().cls.kind);
      row["i"] = orbits[k].front().cls.i;
      row["representative"] = place_json(*c, orbits[k].front(), log);
      rows.push_back(std::move(row));
    }
    json hist = json::array();
    for (const auto& [size, count] : sizes) hist.push_back({{"size", size}, {"orbits", count}});
    summary["orbit_sizes"] = hist;
  }
  doc = make_document(*c, "aut", log, summary, rows);
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config cfg;
  CLI::App app{"Weierstrass semigroups and automorphisms of Z_3: x^q + x + (y + y^3 + ... + y^(q/3))^2 = 0"};
  app.name("z3ws");
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--t", cfg.t, "q = 3^t")->capture_default_str();
  app.add_option("--format", cfg.format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}))->capture_default_str();
  app.add_option("--seed", cfg.seed, "seed for sampled places")->capture_default_str();
  app.add_option("--prec", cfg.prec, "series precision (0: 2q + 1)")->capture_default_str();
  app.add_option("--out", cfg.out_path, "write output to this file");
  app.add_option("--max-q", cfg.max_q, "largest q accepted (at most 81)")->capture_default_str();

  auto add_selectors = [&](CLI::App* sub) {
    sub->add_option("--place", cfg.place, "infinity, a rational place index, or A:B element indices in F_{q^2}");
    sub->add_option("--class", cfg.cls, "class name, e.g. beta-one or nonrational-special");
    sub->add_option("--index", cfg.index, "which place of the class")->capture_default_str();
    sub->add_option("--beta-order", cfg.beta_order, "sample a place whose gamma has this order");
  };
  auto* places = app.add_subcommand("places", "list rational places or sample non-rational ones");
  places->add_option("--class", cfg.cls, "class name filter");
  places->add_option("--beta-order", cfg.beta_order, "sample places whose gamma has this order");
  places->add_option("--count", cfg.count, "number of sampled places")->capture_default_str();
  auto* semigroup = app.add_subcommand("semigroup", "Weierstrass semigroup or gap set at a place");
  add_selectors(semigroup);
  semigroup->add_flag("--certify", cfg.certify, "attach and check witnesses");
  auto* verify = app.add_subcommand("verify", "run invariant suites");
  verify->add_option("--scope", cfg.scope, "polyfam, valuations, semigroups, autgroup or all")
      ->check(CLI::IsMember({"polyfam", "valuations", "semigroups", "autgroup", "all"}))
      ->capture_default_str();
  verify->add_option("--samples", cfg.samples, "sampled places per gamma order")->capture_default_str();
  verify->add_option("--betas", cfg.betas, "random beta values for polynomial checks")->capture_default_str();
  auto* poly = app.add_subcommand("polyfam", "P_i, Q_i, R_i at beta, or symbolically");
  poly->add_option("--beta", cfg.beta, "index of beta in F_{q^2}");
  poly->add_option("--beta-order", cfg.beta_order, "use beta of a sampled place with this gamma order");
  poly->add_option("--n", cfg.n, "largest index")->capture_default_str();
  poly->add_flag("--symbolic", cfg.symbolic, "Laurent polynomials in s instead of values");
  auto* aut = app.add_subcommand("aut", "automorphism group, orbits of rational places or of one place");
  add_selectors(aut);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  json doc;
  int code = kExitOk;
  try {
    const Format format = parse_format(cfg.format);
    if (places->parsed()) code = cmd_places(cfg, doc);
    if (semigroup->parsed()) code = cmd_semigroup(cfg, doc);
    if (verify->parsed()) code = cmd_verify(cfg, doc);
    if (poly->parsed()) code = cmd_polyfam(cfg, doc);
    if (aut->parsed()) code = cmd_aut(cfg, doc);
    if (cfg.out_path.empty()) {
      render(out, doc, format);
    } else {
      std::ofstream f(cfg.out_path);
      if (!f) throw UsageError("cannot open " + cfg.out_path);
      render(f, doc, format);
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "verification error: " << e.what() << '\n';
    return kExitVerificationFailed;
  }
  return code;
}

}  // namespace z3ws::cli
