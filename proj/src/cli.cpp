#include "hallforge/cli.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <memory>
#include <random>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "hallforge/cache.hpp"
#include "hallforge/checks.hpp"

namespace hallforge::cli {

using nlohmann::json;
using cpx::GradedObject;
using cpx::PeriodSpec;
using repcat::DimVec;
using repcat::IsoClassId;

namespace {

struct RunConfig {
  std::string command;
  std::string quiver_path;
  std::uint32_t q = 2;
  int t = 0;
  int max_dim = 2;
  std::string dim;
  std::string lhs;
  std::string rhs;
  std::uint64_t seed = 0;
  std::size_t sample = 0;
  int width = 2;
  std::string family;
  std::string csv;
  bool no_timing = false;
};

class UsageError : public Error {
 public:
  using Error::Error;
};

struct Outcome {
  json results = json::object();
  json counterexamples = json::array();
  bool ok = true;
  std::vector<std::vector<std::string>> csv;
};

struct Session {
  repcat::RepCategory category;
  repcat::ClassRegistry registry;
  hall::HallEngine hall;

  Session(repcat::Quiver quiver, std::uint32_t q)
      : category(std::move(quiver), falg::FieldSpec(q)), registry(category), hall(registry) {}

  std::size_t vertices() const { return category.quiver().vertex_count(); }
};

DimVec parse_dim(const std::string& text, std::size_t nv) {
  std::vector<int> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const int x = std::stoi(item, &used);
      if (used != item.size() || x < 0) throw std::invalid_argument(item);
      v.push_back(x);
    } catch (const std::exception&) {
      throw UsageError("--dim expects nonnegative integers separated by commas, got '" + text + "'");
    }
  }
  if (v.size() != nv)
    throw UsageError("--dim has " + std::to_string(v.size()) + " entries but the quiver has " + std::to_string(nv) +
                     " vertices");
  return DimVec(std::move(v));
}

/// The box given by --dim, or every vector of total at most --max-dim.
std::vector<DimVec> dim_domain(const RunConfig& cfg, std::size_t nv) {
  if (!cfg.dim.empty()) return repcat::sub_dimvecs(parse_dim(cfg.dim, nv));
  return repcat::dimvecs_up_to_total(nv, cfg.max_dim);
}

std::vector<IsoClassId> class_domain(const RunConfig& cfg, const Session& s) {
  std::vector<IsoClassId> out;
  for (const DimVec& d : dim_domain(cfg, s.vertices())) {
    if (d.is_zero()) continue;
    for (const auto& info : s.registry.classes(d)) out.push_back(info.id);
  }
  return out;
}

std::string require(const std::string& value, const char* flag) {
  if (value.empty()) throw UsageError(std::string("this command needs ") + flag);
  return value;
}

json rep_to_json(const repcat::Rep& r) {
  json maps = json::array();
  for (const auto& m : r.maps) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(std::vector<std::uint32_t>(m.row(i).begin(), m.row(i).end()));
    maps.push_back(std::move(rows));
  }
  return maps;
}

void absorb(Outcome& o, const dha::SweepReport& r) {
  o.results["checked"] = r.checked;
  o.results["passed"] = r.passed;
  if (!r.notes.empty()) o.results["notes"] = r.notes;
  for (const auto& c : r.counterexamples) o.counterexamples.push_back(c);
  o.ok = o.ok && r.ok();
  o.csv = {{"checked", "passed"}, {std::to_string(r.checked), std::to_string(r.passed)}};
}

/// The first `sample` index tuples drawn uniformly, or all of them.
std::vector<std::vector<std::size_t>> index_tuples(std::size_t n, std::size_t arity, std::size_t sample,
                                                   std::uint64_t seed) {
  std::vector<std::vector<std::size_t>> out;
  if (n == 0) return out;
  if (sample > 0) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    for (std::size_t k = 0; k < sample; ++k) {
      std::vector<std::size_t> t(arity);
      for (auto& x : t) x = pick(rng);
      out.push_back(std::move(t));
    }
    return out;
  }
  std::vector<std::size_t> t(arity, 0);
  while (true) {
    out.push_back(t);
    std::size_t k = arity;
    while (k > 0 && ++t[k - 1] == n) t[--k] = 0;
    if (k == 0) break;
  }
  return out;
}

std::vector<GradedObject> graded_domain(const RunConfig& cfg, const Session& s, PeriodSpec period) {
  if (period.t() == 0) {
    const DimVec box = cfg.dim.empty() ? DimVec(std::vector<int>(s.vertices(), cfg.max_dim))
                                       : parse_dim(cfg.dim, s.vertices());
    return dha::bounded_objects(dha::classes_in_box(s.registry, box), 0, cfg.width, cfg.width);
  }
  return dha::periodic_objects(s.registry, period, cfg.max_dim);
}

Outcome cmd_classes(const RunConfig& cfg, Session& s) {
  Outcome o;
  json list = json::array();
  o.csv.push_back({"id", "dims", "aut", "orbit_size"});
  std::size_t count = 0;
  const std::vector<DimVec> dims =
      cfg.dim.empty() ? repcat::dimvecs_up_to_total(s.vertices(), cfg.max_dim)
                      : std::vector<DimVec>{parse_dim(cfg.dim, s.vertices())};
  for (const DimVec& d : dims) {
    for (const auto& info : s.registry.classes(d)) {
      list.push_back(json{{"id", repcat::to_string(info.id)},
                          {"dims", d.v},
                          {"aut", info.aut.get_str()},
                          {"orbit_size", info.orbit_size.get_str()},
                          {"maps", rep_to_json(info.rep)}});
      o.csv.push_back({repcat::to_string(info.id), d.to_string(), info.aut.get_str(), info.orbit_size.get_str()});
      ++count;
    }
  }
  o.results["count"] = count;
  o.results["classes"] = std::move(list);
  return o;
}

Outcome cmd_hall(const RunConfig& cfg, Session& s) {
  Outcome o;
  const std::size_t nv = s.vertices();
  o.csv.push_back({"C", "A", "B", "g"});
  if (!cfg.lhs.empty() || !cfg.rhs.empty()) {
    const IsoClassId a = repcat::parse_class_id(require(cfg.lhs, "--lhs"), nv);
    const IsoClassId b = repcat::parse_class_id(require(cfg.rhs, "--rhs"), nv);
    json product = json::object();
    for (const auto& [c, g] : s.hall.hall_product(a, b)) {
      product[repcat::to_string(c)] = g.get_str();
      o.csv.push_back({repcat::to_string(c), cfg.lhs, cfg.rhs, g.get_str()});
    }
    o.results["product"] = std::move(product);
    return o;
  }
  json table = json::array();
  for (const IsoClassId& c : class_domain(cfg, s)) {
    for (const auto& [k, g] : s.hall.subobject_table(c)) {
      table.push_back(json{{"C", repcat::to_string(c)},
                           {"A", repcat::to_string(k.first)},
                           {"B", repcat::to_string(k.second)},
                           {"g", g.get_str()}});
      o.csv.push_back({repcat::to_string(c), repcat::to_string(k.first), repcat::to_string(k.second), g.get_str()});
    }
  }
  o.results["table"] = std::move(table);
  return o;
}

Outcome cmd_green(const RunConfig& cfg, Session& s) {
  Outcome o;
  absorb(o, dha::green_sweep(s.hall, dim_domain(cfg, s.vertices())));
  return o;
}

Outcome cmd_gamma(const RunConfig& cfg, Session& s) {
  Outcome o;
  const std::size_t nv = s.vertices();
  std::vector<std::pair<IsoClassId, IsoClassId>> pairs;
  if (!cfg.lhs.empty() || !cfg.rhs.empty()) {
    pairs.emplace_back(repcat::parse_class_id(require(cfg.lhs, "--lhs"), nv),
                       repcat::parse_class_id(require(cfg.rhs, "--rhs"), nv));
  } else {
    const auto classes = class_domain(cfg, s);
    for (const auto& a : classes)
      for (const auto& b : classes) pairs.emplace_back(a, b);
  }
  o.csv.push_back({"A", "B", "M", "N", "gamma"});
  json table = json::array();
  for (const auto& [a, b] : pairs) {
    std::set<IsoClassId> subs, quots;
    for (const auto& [k, g] : s.hall.subobject_table(b)) subs.insert(k.second);
    for (const auto& [k, g] : s.hall.subobject_table(a)) quots.insert(k.first);
    for (const auto& m : subs) {
      for (const auto& n : quots) {
        const mpq_class gamma = s.hall.gamma(a, b, m, n);
        if (gamma == 0) continue;
        const std::vector<std::string> row{repcat::to_string(a), repcat::to_string(b), repcat::to_string(m),
                                           repcat::to_string(n), gamma.get_str()};
        table.push_back(json{{"A", row[0]}, {"B", row[1]}, {"M", row[2]}, {"N", row[3]}, {"gamma", row[4]}});
        o.csv.push_back(row);
      }
    }
  }
  o.results["table"] = std::move(table);
  return o;
}

Outcome cmd_dha_mul(const RunConfig& cfg, Session& s) {
  Outcome o;
  const PeriodSpec period(cfg.t);
  const GradedObject a = cpx::parse_graded(require(cfg.lhs, "--lhs"), period, s.vertices());
  const GradedObject b = cpx::parse_graded(require(cfg.rhs, "--rhs"), period, s.vertices());
  const dha::DerivedHallAlgebra alg(s.hall, period);
  const dha::HallVector product = alg.multiply(a, b);
  o.results["coefficients"] = dha::to_json(product);
  o.csv.push_back({"object", "coefficient"});
  for (const auto& [g, c] : product) o.csv.push_back({cpx::to_string(g), c.to_string()});
  return o;
}

Outcome cmd_dha_assoc(const RunConfig& cfg, Session& s) {
  Outcome o;
  const PeriodSpec period(cfg.t);
  const dha::DerivedHallAlgebra alg(s.hall, period);
  const auto objects = graded_domain(cfg, s, period);
  dha::SweepReport report;
  for (const auto& t : index_tuples(objects.size(), 3, cfg.sample, cfg.seed)) {
    const auto& a = objects[t[0]];
    const auto& b = objects[t[1]];
    const auto& c = objects[t[2]];
    dha::record(report, json::array({cpx::to_string(a), cpx::to_string(b), cpx::to_string(c)}),
                dha::assoc_check(alg, a, b, c));
  }
  absorb(o, report);
  o.results["objects"] = objects.size();
  return o;
}

Outcome cmd_relations(const RunConfig& cfg, Session& s) {
  Outcome o;
  const PeriodSpec period(cfg.t);
  const dha::DerivedHallAlgebra alg(s.hall, period);
  std::vector<dha::RelationFamily> families;
  if (cfg.family.empty()) {
    families = dha::families_for_period(cfg.t);
  } else {
    try {
      families.push_back(dha::parse_relation_family(cfg.family));
    } catch (const ParseError& e) {
      throw UsageError(e.what());
    }
  }
  std::unique_ptr<cpx::ComplexCategory> ct;
  if (cfg.t == 1) ct = std::make_unique<cpx::ComplexCategory>(s.hall, period);
  json names = json::array();
  for (auto f : families) names.push_back(dha::to_string(f));
  absorb(o, dha::relation_sweep(alg, class_domain(cfg, s), ct.get(), families));
  o.results["families"] = std::move(names);
  return o;
}

Outcome cmd_crosscheck(const RunConfig& cfg, Session& s) {
  Outcome o;
  if (cfg.t != 0 && cfg.t != 1) throw UsageError("crosscheck supports --t 0 and --t 1");
  const PeriodSpec period(cfg.t);
  const dha::DerivedHallAlgebra alg(s.hall, period);
  const auto objects = graded_domain(cfg, s, period);
  std::unique_ptr<cpx::ComplexCategory> ct;
  if (cfg.t == 1) ct = std::make_unique<cpx::ComplexCategory>(s.hall, period);
  dha::SweepReport report;
  for (const auto& t : index_tuples(objects.size(), 2, cfg.sample, cfg.seed)) {
    const auto& a = objects[t[0]];
    const auto& b = objects[t[1]];
    const json label = json::array({cpx::to_string(a), cpx::to_string(b)});
    dha::record(report, label, cfg.t == 0 ? dha::crosscheck_t0(alg, a, b) : dha::crosscheck_t1(*ct, alg, a, b));
  }
  absorb(o, report);
  o.results["objects"] = objects.size();
  if (cfg.t == 1) {
    const dha::SweepReport alt = dha::alt_hom_sweep(s.hall, objects);
    o.results["alt_hom"] = json{{"checked", alt.checked}, {"passed", alt.passed}};
    for (const auto& c : alt.counterexamples) o.counterexamples.push_back(c);
    o.ok = o.ok && alt.ok();
    o.csv.push_back({std::to_string(alt.checked), std::to_string(alt.passed)});
  }
  return o;
}

Outcome dispatch(const RunConfig& cfg, Session& s) {
  if (cfg.command == "classes") return cmd_classes(cfg, s);
  if (cfg.command == "hall") return cmd_hall(cfg, s);
  if (cfg.command == "green") return cmd_green(cfg, s);
  if (cfg.command == "gamma") return cmd_gamma(cfg, s);
  if (cfg.command == "dha-mul") return cmd_dha_mul(cfg, s);
  if (cfg.command == "dha-assoc") return cmd_dha_assoc(cfg, s);
  if (cfg.command == "relations") return cmd_relations(cfg, s);
  return cmd_crosscheck(cfg, s);
}

std::string csv_field(const std::string& x) {
  if (x.find_first_of(",\"\n") == std::string::npos) return x;
  std::string out = "\"";
  for (char c : x) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  return out + "\"";
}

void write_csv(const std::string& path, const std::vector<std::vector<std::string>>& rows) {
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write " + path);
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_field(row[i]);
    out << '\n';
  }
}

repcat::Quiver load_quiver(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read quiver file " + path);
  try {
    return repcat::validate_quiver(repcat::Quiver::from_json(json::parse(in)));
  } catch (const json::exception& e) {
    throw UsageError("malformed quiver file " + path + ": " + e.what());
  }
}

json config_json(const RunConfig& cfg, const repcat::Quiver& quiver) {
  return json{{"command", cfg.command}, {"quiver", quiver.to_json()}, {"q", cfg.q},       {"t", cfg.t},
              {"max_dim", cfg.max_dim}, {"dim", cfg.dim},             {"lhs", cfg.lhs},   {"rhs", cfg.rhs},
              {"seed", cfg.seed},       {"sample", cfg.sample},       {"width", cfg.width}, {"family", cfg.family}};
}

void add_options(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--quiver", cfg.quiver_path, "quiver JSON file")->required();
  sub->add_option("--q", cfg.q, "field size (a prime)");
  sub->add_option("--t", cfg.t, "period: 0 or odd");
  sub->add_option("--max-dim", cfg.max_dim, "bound on total dimension")->check(CLI::NonNegativeNumber);
  sub->add_option("--dim", cfg.dim, "dimension vector, comma separated");
  sub->add_option("--lhs", cfg.lhs, "left operand");
  sub->add_option("--rhs", cfg.rhs, "right operand");
  sub->add_option("--seed", cfg.seed, "seed for sampled sweeps");
  sub->add_option("--sample", cfg.sample, "number of random cases instead of all");
  sub->add_option("--width", cfg.width, "support width of bounded objects")->check(CLI::PositiveNumber);
  sub->add_option("--family", cfg.family, "single relation family");
  sub->add_option("--csv", cfg.csv, "also write a CSV table here");
  sub->add_flag("--no-timing", cfg.no_timing, "report timing_ms as 0");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Hall algebras of quiver representations and their derived versions", "hallforge"};
  app.require_subcommand(1);
  const std::vector<std::pair<const char*, const char*>> commands{
      {"classes", "isomorphism classes of one or more dimension vectors"},
      {"hall", "Hall numbers"},
      {"green", "check Green's formula"},
      {"gamma", "normalized four-term exact sequence counts"},
      {"dha-mul", "product of two graded objects in the derived Hall algebra"},
      {"dha-assoc", "associativity sweep"},
      {"relations", "check the generator relations"},
      {"crosscheck", "compare the closed-form product with an independent route"}};
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    add_options(sub, cfg);
    sub->callback([&cfg, n = std::string(name)] { cfg.command = n; });
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return pass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return usage;
  }

  const auto start = std::chrono::steady_clock::now();
  json report{{"command", cfg.command}};
  auto emit = [&](int code) {
    const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
    report["timing_ms"] = cfg.no_timing ? 0 : elapsed.count();
    out << report.dump(2) << '\n';
    return code;
  };

  try {
    const repcat::Quiver quiver = load_quiver(cfg.quiver_path);
    if (!falg::is_prime(cfg.q)) throw UsageError("--q must be a prime, got " + std::to_string(cfg.q));
    const PeriodSpec period(cfg.t);
    report["fingerprint"] = cache::sha256_hex(config_json(cfg, quiver).dump());

    auto session = std::make_unique<Session>(quiver, cfg.q);
    const std::string key = cache::fingerprint(quiver, cfg.q, period.t());
    const auto store = cache::CacheStore::from_env();
    if (store) {
      try {
        store->load(session->registry, session->hall, key);
      } catch (const CacheInvalid& e) {
        err << "warning: ignoring cache: " << e.what() << '\n';
        session = std::make_unique<Session>(quiver, cfg.q);
      }
    }

    Outcome outcome = dispatch(cfg, *session);
    if (store) store->store(session->hall, key);
    if (!cfg.csv.empty()) write_csv(cfg.csv, outcome.csv);

    report["results"] = std::move(outcome.results);
    report["counterexamples"] = std::move(outcome.counterexamples);
    return emit(outcome.ok ? pass : mismatch);
  } catch (const EnumerationTooLarge& e) {
    report["error"] = e.what();
    report["bound"] = e.bound();
    err << "error: " << e.what() << '\n';
    return emit(resource_bound);
  } catch (const RewriteBudgetExceeded& e) {
    report["error"] = e.what();
    report["bound"] = "rewrite_budget";
    err << "error: " << e.what() << '\n';
    return emit(resource_bound);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return usage;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return usage;
  } catch (const UnsupportedPeriod& e) {
    err << "error: " << e.what() << '\n';
    return usage;
  } catch (const InvalidField& e) {
    err << "error: " << e.what() << '\n';
    return usage;
  } catch (const NotHereditarySetup& e) {
    err << "error: " << e.what() << '\n';
    return usage;
  } catch (const IncompatibleObjects& e) {
    err << "error: " << e.what() << '\n';
    return usage;
    } catch (const std::exception& e) {
    report["error"] = e.what();
    err << "error: " << e.what() << '\n';
    return emit(mismatch);
  }
}

}  // namespace hallforge::cli
