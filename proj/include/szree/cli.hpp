#pragma once

// Command drivers behind tools/szree: identities, suborbits, bg, sweep.
// Each returns a Report (exact numbers as strings) and an exit status.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "szree/formulas.hpp"
#include "szree/identities.hpp"
#include "szree/saxl.hpp"

namespace szree::cli {

using json = nlohmann::ordered_json;

enum ExitCode : int { kPass = 0, kVerdictFail = 2, kConfigError = 3, kGammaEmpty = 4 };

struct RunConfig {
  std::string command;
  std::string family = "sz";
  std::uint64_t q = 8;
  std::string model;
  std::uint64_t extend = 1;  // degree m1 of the field automorphism adjoined to M
  std::string grid = "default";
  std::uint64_t memory_budget = std::uint64_t{8} << 30;
  unsigned threads = 1;
  std::string output;  // empty: stdout
  std::string format = "json";
  bool timing = false;
  std::uint64_t trials = 1000;
  std::uint64_t seed = 1;
  std::uint64_t class_cap = 600000;  // cap on G-class enumeration in the normalizer-sum check
};

struct Report {
  json body;
  int status = kPass;
};

class config_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline std::string str(const rational& x) {
  if (denominator(x) == 1) return numerator(x).str();
  return numerator(x).str() + "/" + denominator(x).str();
}
inline std::string str(const bigint& x) { return x.str(); }
inline std::string str(std::uint64_t x) { return std::to_string(x); }

inline Family parse_family(const std::string& s) {
  if (s == "sz") return Family::Sz;
  if (s == "ree") return Family::Ree;
  throw config_error("unknown family " + s + " (sz, ree)");
}

inline json config_echo(const RunConfig& c) {
  json j;
  j["command"] = c.command;
  j["family"] = c.family;
  if (c.command != "sweep") j["q"] = str(c.q);
  if (!c.model.empty()) j["model"] = c.model;
  if (c.command == "bg") j["extend"] = str(c.extend);
  if (c.command == "sweep") j["grid"] = c.grid;
  if (c.command == "identities") {
    j["trials"] = str(c.trials);
    j["seed"] = str(c.seed);
  }
  return j;
}

inline json discrepancy(const std::string& anchor, const std::string& expected, const std::string& computed,
                        const std::string& verdict) {
  return json{{"anchor", anchor}, {"expected", expected}, {"computed", computed}, {"verdict", verdict}};
}

// field check for q, in the family's characteristic with odd exponent >= 3
inline FieldPtr checked_field(Family fam, std::uint64_t q) {
  try {
    FieldPtr F = family_field(fam, q);
    if (F->m() < 3 || F->m() % 2 == 0) throw config_error("");
    return F;
  } catch (const std::exception&) {
    throw config_error("q = " + std::to_string(q) + " is not " + (fam == Family::Sz ? "2" : "3") +
                       "^m with m odd >= 3 among supported fields");
  }
}

// ------------------------------------------------------------- identities

inline json items_json(const std::vector<IdentityItem>& items) {
  json a = json::array();
  for (const auto& i : items) {
    json j{{"name", i.name}, {"trials", str(i.trials)}, {"failures", str(i.failures)}};
    if (i.failures) j["counterexample"] = i.counterexample;
    a.push_back(j);
  }
  return a;
}

inline Report cmd_identities(const RunConfig& c) {
  const Family fam = parse_family(c.family);
  FieldPtr F = checked_field(fam, c.q);
  Report r;
  r.body["config"] = config_echo(c);
  const auto rep = identity_suite(fam, c.q, c.trials, c.seed);
  json p;
  p["items"] = items_json(rep.items);
  p["all_pass"] = rep.all_pass();
  json disc = json::array();
  if (!rep.printed_items.empty()) {
    p["printed_generators"] = items_json(rep.printed_items);
    for (const auto& i : rep.printed_items)
      if (i.failures)
        disc.push_back(discrepancy("printed ree generators: " + i.name, "0 failures",
                                   str(i.failures) + "/" + str(i.trials) + " failures", "corrected set used"));
  }
  json fc = json::array();
  for (const auto& rb : distinct_prime_factors(bigint(F->m()))) {
    const auto rr = static_cast<std::uint64_t>(rb);
    json j{{"r", str(rr)}};
    try {
      const auto res = field_conjugacy_check(fam, c.q, rr);
      j["coset_size"] = str(res.coset_size);
      j["order_r_elements"] = str(res.order_r);
      j["class_size"] = str(res.class_size);
      j["outside_class"] = str(res.outside);
      j["pass"] = res.pass;
      if (!res.pass) r.status = kVerdictFail;
    } catch (const group_error& e) {
      j["skipped"] = e.what();
    }
    fc.push_back(j);
  }
  p["field_conjugacy"] = fc;
  if (!rep.all_pass()) r.status = kVerdictFail;
  r.body["payload"] = p;
  r.body["discrepancies"] = disc;
  return r;
}

// ------------------------------------------------------------- suborbits

struct Built {
  SeedInfo seed;
  OmegaIndex om;
  SuborbitReport rep;
};

inline Built build_model(const RunConfig& c) {
  const Family fam = parse_family(c.family);
  checked_field(fam, c.q);
  if (c.model.empty()) throw config_error("--model is required");
  Model model;
  try {
    model = parse_model(c.model);
  } catch (const std::exception& e) {
    throw config_error(e.what());
  }
  SeedInfo s = [&] {
    try {
      return seed_catalog(fam, c.q, model);
    } catch (const points_error& e) {
      throw config_error(e.what());
    }
  }();
  BuildOptions o;
  o.expected_size = s.degree;
  o.memory_budget = c.memory_budget;
  o.threads = c.threads;
  OmegaIndex om = OmegaIndex::build(s.socle, s.seed, o);
  SuborbitReport rep = decompose(om, s.stabilizer, c.threads);
  return {std::move(s), std::move(om), std::move(rep)};
}

inline json suborbit_json(const SuborbitReport& rep) {
  json a = json::array();
  for (const auto& s : rep.suborbits)
    a.push_back({{"rep", str(std::uint64_t{s.rep})},
                 {"length", str(s.length)},
                 {"stabilizer_order", str(s.stabilizer_order)},
                 {"regular", s.regular}});
  return a;
}

inline Report cmd_suborbits(const RunConfig& c) {
  Report r;
  r.body["config"] = config_echo(c);
  Built b = build_model(c);
  const Family fam = b.seed.family;
  json p;
  p["structure"] = b.seed.structure;
  p["degree"] = str(b.rep.degree);
  p["m_order"] = str(b.rep.m_order);
  p["suborbit_count"] = str(std::uint64_t{b.rep.suborbits.size()});
  p["regular_count"] = str(std::uint64_t{b.rep.regular_count});
  p["gamma_size"] = str(b.rep.gamma_size);
  p["suborbits"] = suborbit_json(b.rep);
  std::uint64_t total = 0;
  for (const auto& s : b.rep.suborbits) total += s.length;
  const bool partition = total == b.rep.degree;
  p["partition_ok"] = partition;
  if (!partition) r.status = kVerdictFail;

  // fixed points of the prime classes of M, with the normalizer-index sum
  const auto classes = prime_subgroup_classes(b.seed.stabilizer);
  const bigint g_order = group_order(fam, bigint(c.q));
  json fx = json::array();
  json disc = json::array();
  for (const auto& cl : classes) {
    json j{{"label", cl.label},
           {"prime", str(cl.prime)},
           {"class_size", str(cl.class_size)},
           {"normalizer_order", str(cl.normalizer_order)}};
    try {
      const NormalizerSumCheck mc = normalizer_sum_check(cl.rep, classes, b.seed.socle, g_order, b.om, c.threads, c.class_cap);
      j["fix"] = str(mc.brute);
      j["normalizer_sum"] = str(mc.formula);
      j["agree"] = mc.equal;
      json terms = json::array();
      for (const auto& t : mc.terms) terms.push_back({{"class", t.label}, {"index", str(t.index)}});
      j["terms"] = terms;
      if (!mc.equal) r.status = kVerdictFail;
    } catch (const points_error& e) {
      j["fix"] = str(fixed_points({cl.rep}, b.om, c.threads).count);
      j["normalizer_sum"] = std::string("skipped: ") + e.what();
    }
    fx.push_back(j);
  }
  p["prime_classes"] = fx;

  if (fam == Family::Ree) {
    const FieldSpec& F = *b.seed.field;
    const std::uint64_t q = c.q;
    const auto fix_eta = fixed_points({ExtendedElement(ree_eta(F))}, b.om, c.threads).count;
    const auto fix_z = fixed_points({ExtendedElement(ree_chi(F, 0, 1, 0))}, b.om, c.threads).count;
    const auto fix_f = fixed_points({ExtendedElement::twist_only(&F, 7, 1)}, b.om, c.threads).count;
    p["fix_eta"] = str(fix_eta);
    p["fix_chi010"] = str(fix_z);
    p["fix_frobenius"] = str(fix_f);
    const std::uint64_t printed_eta = (q * q - q + 2) / 2;
    if (fix_eta != printed_eta)
      disc.push_back(discrepancy("Fix(<eta>)", "(q^2-q+2)/2 = " + str(printed_eta), str(fix_eta),
                                 "brute count equals the normalizer-index sum over the three involution classes"));
  }
  r.body["payload"] = p;
  r.body["discrepancies"] = disc;
  return r;
}

// ------------------------------------------------------------- bg

inline json bg_json(const BgResult& bg) {
  json j{{"holds", bg.holds}, {"min_intersection", str(bg.min_intersection)}};
  json a = json::array();
  for (const auto& it : bg.per_suborbit)
    a.push_back({{"suborbit", str(std::uint64_t{it.suborbit})}, {"size", str(it.size)}});
  j["per_suborbit"] = a;
  return j;
}

inline json q_json(const QResult& qr) {
  json j{{"total", str(qr.total)}, {"below_half", qr.below_half}};
  json a = json::array();
  for (const auto& t : qr.terms)
    a.push_back({{"class", t.label},
                 {"prime", str(t.prime)},
                 {"fix", str(t.fix)},
                 {"normalizer_order", str(t.normalizer_order)},
                 {"term", str(t.term)}});
  j["terms"] = a;
  return j;
}

inline Report cmd_bg(const RunConfig& c) {
  Report r;
  r.body["config"] = config_echo(c);
  Built b = build_model(c);
  const FieldSpec& F = *b.seed.field;
  if (c.extend == 0 || F.m() % c.extend != 0) throw config_error("--extend must divide m");
  json p;
  json disc = json::array();
  p["degree"] = str(b.rep.degree);
  p["m0_order"] = str(b.rep.m_order);
  p["regular_count"] = str(std::uint64_t{b.rep.regular_count});
  const Bitmap G0 = gamma(b.rep);
  if (G0.count() == 0) {
    p["base_two"] = false;
    p["gamma_empty"] = true;
    r.body["payload"] = p;
    r.body["discrepancies"] = disc;
    r.status = kGammaEmpty;
    return r;
  }
  p["base_two"] = true;
  const BgResult bg = bg_verify(b.om, b.rep, G0, c.threads);
  p["socle"] = bg_json(bg);
  if (!bg.holds) r.status = kVerdictFail;
  if (b.seed.family == Family::Ree) {
    // at least 3.8 |M0|
    const bigint need = (bigint(38) * b.rep.m_order + 9) / 10;
    p["socle"]["threshold"] = str(need);
    const bool ok = bigint(bg.min_intersection) >= need;
    p["socle"]["above_threshold"] = ok;
    if (!ok) r.status = kVerdictFail;
  }

  SubgroupHandle M(b.seed.stabilizer.generators());
  if (b.seed.stabilizer.has_order() && c.extend == 1) M.set_order(b.seed.stabilizer.order());
  if (c.extend > 1) M.add_generator(ExtendedElement::twist_only(&F, family_dim(b.seed.family), F.m() / c.extend));
  const bool small = require_order(M) <= bigint(SubgroupHandle::kClosureCap);
  if (c.extend > 1) {
    SuborbitReport repM = decompose(b.om, M, c.threads);
    const auto sp = spoiled_regular_count(b.rep, repM);
    json e{{"m_order", str(repM.m_order)},
           {"regular_count", str(std::uint64_t{repM.regular_count})},
           {"spoiled", str(sp.spoiled)},
           {"regular_m0", str(sp.regular_m0)},
           {"gamma_inclusion", gamma_inclusion_check(b.rep, repM)}};
    if (b.seed.family == Family::Ree && sp.spoiled > 2)
      disc.push_back(discrepancy("spoiled regular suborbits", "<= 21/8", str(sp.spoiled), "exceeds displayed bound"));
    const Bitmap G1 = gamma(repM);
    if (G1.count() == 0) {
      e["gamma_empty"] = true;
    } else {
      const BgResult bgM = bg_verify(b.om, repM, G1, c.threads);
      e["bg"] = bg_json(bgM);
      if (!bgM.holds) r.status = kVerdictFail;
    }
    p["extension"] = e;
  }
  if (small) {
    const auto classes = prime_subgroup_classes(M);
    p["q_check"] = q_json(q_check(b.om, M.order(), classes, c.threads));
  }
  r.body["payload"] = p;
  r.body["discrepancies"] = disc;
  return r;
}

// ------------------------------------------------------------- sweep

inline std::map<std::string, std::vector<long long>> parse_grid(const std::string& g) {
  std::map<std::string, std::vector<long long>> out;
  if (g == "default") return out;
  if (g == "empty") {
    out["empty"] = {};
    return out;
  }
  std::stringstream ss(g);
  std::string part;
  while (std::getline(ss, part, ';')) {
    const auto eq = part.find('=');
    if (eq == std::string::npos) throw config_error("grid entries look like key=v1,v2");
    const std::string key = part.substr(0, eq);
    std::stringstream vs(part.substr(eq + 1));
    std::string v;
    auto& vec = out[key];
    while (std::getline(vs, v, ',')) {
      if (v.empty()) continue;
      try {
        vec.push_back(std::stoll(v));
      } catch (const std::exception&) {
        throw config_error("bad grid value " + v);
      }
    }
  }
  return out;
}

inline json ledger_json(const ParamLedger& L) {
  json j;
  j["label"] = L.label;
  json v, d, b;
  for (const auto& e : L.values) v[e.name] = str(e.value);
  for (const auto& e : L.verdicts) d[e.name] = e.pass;
  for (const auto& e : L.bounds) b[e.name] = e.pass;
  j["values"] = v;
  j["verdicts"] = d;
  j["displayed_bounds"] = b;
  j["all_pass"] = L.all_pass();
  return j;
}

inline Report cmd_sweep(const RunConfig& c) {
  const Family fam = parse_family(c.family);
  Report r;
  r.body["config"] = config_echo(c);
  auto grid = parse_grid(c.grid);
  std::vector<ParamLedger> ledgers;
  auto pick = [&](const std::string& k, std::vector<long long> dflt) {
    if (grid.count("empty")) return std::vector<long long>{};
    auto it = grid.find(k);
    return it == grid.end() ? dflt : it->second;
  };
  try {
    if (fam == Family::Sz) {
      SzGrid g;
      g.ls = pick("l", g.ls);
      g.es = pick("e", g.es);
      ledgers = sz_sweep(g);
    } else {
      for (long long m : pick("m", {5, 7, 9, 11})) ledgers.push_back(ree_psl_qsum(m));
      ReeGrid g;
      g.mps = pick("mp", g.mps);
      g.es = pick("e", g.es);
      for (auto& L : ree_sweep(g)) ledgers.push_back(std::move(L));
    }
  } catch (const formula_error& e) {
    throw config_error(e.what());
  }
  json a = json::array();
  json disc = json::array();
  for (const auto& L : ledgers) {
    a.push_back(ledger_json(L));
    if (!L.all_pass()) r.status = kVerdictFail;
    for (const auto& d : L.discrepancies) disc.push_back(discrepancy(L.label, "displayed bound", d, "approximation"));
  }
  r.body["payload"] = json{{"ledgers", a}};
  r.body["discrepancies"] = disc;
  return r;
}

// ------------------------------------------------------------- output

inline void flatten(const json& j, const std::string& path, std::vector<std::pair<std::string, std::string>>& rows) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) flatten(it.value(), path.empty() ? it.key() : path + "." + it.key(), rows);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], path + "." + std::to_string(i), rows);
  } else if (j.is_string()) {
    rows.emplace_back(path, j.get<std::string>());
  } else {
    rows.emplace_back(path, j.dump());
  }
}

inline std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string o = "\"";
  for (char ch : s) o += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return o + "\"";
}

inline std::string render(const Report& r, const std::string& format) {
  if (format == "json") return r.body.dump(2) + "\n";
  std::vector<std::pair<std::string, std::string>> rows;
  flatten(r.body, "", rows);
  std::string out = "key,value\n";
  for (const auto& [k, v] : rows) out += csv_quote(k) + "," + csv_quote(v) + "\n";
  return out;
}

inline Report dispatch(const RunConfig& c) {
  if (c.format != "json" && c.format != "csv") throw config_error("format must be json or csv");
  if (c.command == "identities") return cmd_identities(c);
  if (c.command == "suborbits") return cmd_suborbits(c);
  if (c.command == "bg") return cmd_bg(c);
  if (c.command == "sweep") return cmd_sweep(c);
  throw config_error("unknown command " + c.command);
}

// Runs one command and writes the report. Returns the exit status.
inline int execute(RunConfig c, std::ostream& out, std::ostream& err) {
  const auto t0 = std::chrono::steady_clock::now();
  Report r;
  try {
    c.threads = resolve_threads(c.threads);
    r = dispatch(c);
  } catch (const config_error& e) {
    r.body = json{{"config", config_echo(c)}, {"error", e.what()}};
    r.status = kConfigError;
  } catch (const std::bad_alloc&) {
    r.body = json{{"config", config_echo(c)}, {"error", "out of memory"}};
    r.status = kConfigError;
  } catch (const std::exception& e) {
    // resource limits (memory budget, closure caps) surface here
    r.body = json{{"config", config_echo(c)}, {"error", e.what()}};
    r.status = kConfigError;
  }
  if (c.timing)
    r.body["timing_seconds"] =
        std::to_string(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  r.body["status"] = r.status;
  const std::string text = render(r, c.format == "csv" ? "csv" : "json");
  if (c.output.empty()) {
    out << text;
  } else {
    std::ofstream f(c.output, std::ios::binary);
    if (!f) {
      err << "cannot write " << c.output << "\n";
      return kConfigError;
    }
    f << text;
  }
  if (r.body.contains("error")) err << "error: " << r.body["error"].get<std::string>() << "\n";
  return r.status;
}

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Base-two and common-neighbour checks for Suzuki and Ree groups"};
  app.require_subcommand(1);
  RunConfig c;
  auto common = [&](CLI::App* s, bool model) {
    s->add_option("--family", c.family, "sz or ree")->check(CLI::IsMember({"sz", "ree"}));
    s->add_option("--q", c.q, "field order");
    if (model) s->add_option("--model", c.model, "ovoid, pair, hall1, hall2, sz2, involution");
    s->add_option("--threads", c.threads, "worker threads (0: hardware)");
    s->add_option("--memory-budget", c.memory_budget, "bytes allowed for the point index");
    s->add_option("--output", c.output, "report path (default stdout)");
    s->add_option("--format", c.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    s->add_flag("--timing", c.timing, "include wall time in the report");
  };
  auto* ids = app.add_subcommand("identities", "symbolic formula checks and field conjugacy");
  common(ids, false);
  ids->add_option("--trials", c.trials, "random tuples per formula");
  ids->add_option("--seed", c.seed, "random seed");
  auto* sub = app.add_subcommand("suborbits", "suborbit decomposition and fixed points");
  common(sub, true);
  sub->add_option("--class-cap", c.class_cap, "cap on conjugacy-class enumeration");
  auto* bg = app.add_subcommand("bg", "regular-suborbit union and the common-neighbour check");
  common(bg, true);
  bg->add_option("--extend", c.extend, "adjoin the field automorphism of this order");
  auto* sw = app.add_subcommand("sweep", "closed-form ledgers over a parameter grid");
  common(sw, false);
  sw->add_option("--grid", c.grid, "default, empty, or key=v1,v2;key=...");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kPass : kConfigError;
  }
  for (auto* s : {ids, sub, bg, sw})
    if (s->parsed()) c.command = s->get_name();
  return execute(c, out, err);
}

}  // namespace szree::cli
