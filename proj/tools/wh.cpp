// wh: command-line front end for the whitehead library.
//
// Exit codes: 0 success, 1 domain error, 2 usage error.

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "wh/autos.hpp"
#include "wh/cluster_lab.hpp"
#include "wh/core.hpp"
#include "wh/currents.hpp"
#include "wh/graph.hpp"
#include "wh/ideal.hpp"
#include "wh/minimizer.hpp"

namespace {

using nlohmann::json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Globals {
  int k = 2;
  std::uint64_t seed = 1;
  bool json = false;
};

Globals g;

void notice(const std::string& msg) { std::cerr << "wh: note: " << msg << '\n'; }

void require_nonempty(const std::string& text, const char* what) {
  if (text.empty()) throw UsageError(std::string("empty ") + what);
}

wh::Word read_word(const std::string& text) {
  require_nonempty(text, "word");
  const auto raw = wh::parse_letters(text);
  const wh::Word w = wh::free_reduce(raw);
  if (w.max_generator() > g.k) {
    throw UsageError("word '" + text + "' uses generators beyond --k " + std::to_string(g.k));
  }
  if (w.size() != raw.size()) notice("input '" + text + "' free-reduced to '" + w.str() + "'");
  return w;
}

wh::CyclicWord read_cyclic(const std::string& text) {
  const wh::Word w = read_word(text);
  if (w.size() == 0) throw wh::DomainError("'" + text + "' reduces to the trivial word");
  auto d = wh::cyclic_reduce(w);
  if (d.cyclic.size() != w.size()) notice("'" + w.str() + "' cyclically reduced to '" + d.cyclic.str() + "'");
  return d.cyclic;
}

wh::Automorphism read_automorphism(const std::string& text) {
  require_nonempty(text, "automorphism literal");
  try {
    return wh::parse_automorphism(text, g.k);
  } catch (const wh::DomainError&) {
    // Distinguish a rank mismatch (usage) from a malformed literal (domain).
    bool fits_larger_rank = false;
    try {
      (void)wh::parse_automorphism(text, wh::kMaxRank);
      fits_larger_rank = true;
    } catch (const wh::DomainError&) {
    }
    if (fits_larger_rank) throw UsageError("'" + text + "' uses generators beyond --k " + std::to_string(g.k));
    throw;
  }
}

std::string fmt(double x) {
  std::ostringstream os;
  os << std::setprecision(12) << x;
  return os.str();
}

void emit(const json& j) { std::cout << j.dump(2) << '\n'; }

// ---- subcommands ----

void cmd_reduce(const std::string& w_text) {
  const wh::Word w = read_word(w_text);
  if (g.json) {
    emit({{"input", w_text}, {"reduced", w.str()}, {"length", w.size()}});
  } else {
    std::cout << w.str() << '\n';
  }
}

void cmd_cyclic(const std::string& w_text) {
  const wh::Word w = read_word(w_text);
  if (w.size() == 0) throw wh::DomainError("the trivial word has no cyclic reduction");
  const auto d = wh::cyclic_reduce(w);
  if (g.json) {
    emit({{"input", w_text}, {"cyclic", d.cyclic.str()}, {"conjugator", d.conjugator.str()}, {"length", d.cyclic.size()}});
  } else {
    std::cout << d.cyclic.str() << '\n' << "conjugator: " << d.conjugator.str() << '\n';
  }
}

void cmd_count(const std::string& v_text, const std::string& w_text) {
  const wh::Word v = read_word(v_text);
  const wh::CyclicWord w = read_cyclic(w_text);
  const std::size_t n = wh::count_occurrences(v, w);
  if (g.json) {
    emit({{"v", v.str()}, {"w", w.str()}, {"count", n}});
  } else {
    std::cout << n << '\n';
  }
}

void cmd_minimize(const std::string& w_text) {
  const auto trace = wh::minimize(g.k, read_cyclic(w_text));
  if (g.json) {
    emit(trace.to_json());
    return;
  }
  std::cout << trace.result.str() << '\n';
  std::string prev = trace.start.str();
  for (const auto& s : trace.steps) {
    std::cout << "  " << s.move.str() << ": " << prev << " -> " << s.result.str() << '\n';
    prev = s.result.str();
  }
}

void cmd_equiv(const std::string& u_text, const std::string& v_text, std::size_t cap) {
  const auto r = wh::automorphic_equivalence(g.k, read_cyclic(u_text), read_cyclic(v_text), cap);
  if (g.json) {
    emit({{"verdict", wh::to_string(r.verdict)},
          {"min_u", r.min_u.str()},
          {"min_v", r.min_v.str()},
          {"explored", r.explored}});
  } else {
    std::cout << wh::to_string(r.verdict) << '\n'
              << "min_u: " << r.min_u.str() << '\n'
              << "min_v: " << r.min_v.str() << '\n'
              << "explored: " << r.explored << '\n';
  }
}

void cmd_whgraph(const std::string& w_text, bool normalized) {
  const wh::CyclicWord w = read_cyclic(w_text);
  const wh::WhiteheadGraph graph = wh::whitehead_graph(g.k, w);
  const wh::NormalizedWhiteheadGraph ng = wh::normalize(graph, static_cast<std::int64_t>(w.size()));
  if (g.json) {
    emit(normalized ? ng.to_json() : graph.to_json());
    return;
  }
  for (std::size_t i = 0; i < wh::edge_count(g.k); ++i) {
    const auto [p, q] = wh::edge_endpoints(g.k, i);
    std::cout << p.to_char() << ' ' << q.to_char() << ' ';
    if (normalized) {
      std::cout << fmt(ng.labels()[i]) << '\n';
    } else {
      std::cout << graph.labels()[i] << '\n';
    }
  }
}

void cmd_dist(const std::string& u_text, const std::string& v_text) {
  const double d = wh::graph_distance(wh::normalized_graph(g.k, read_cyclic(u_text)),
                                      wh::normalized_graph(g.k, read_cyclic(v_text)));
  if (g.json) {
    emit({{"distance", d}});
  } else {
    std::cout << fmt(d) << '\n';
  }
}

void cmd_euler(int m) {
  const wh::EulerWord e = wh::euler_word(g.k, m);
  if (g.json) {
    emit({{"k", e.rank}, {"m", e.degree}, {"length", e.word.size()}, {"word", e.word.str()}});
  } else {
    std::cout << e.word.str() << '\n';
  }
}

void cmd_stretch(const std::string& phi_text, bool allow_unstabilized) {
  const auto r = wh::stretch_factor(read_automorphism(phi_text), allow_unstabilized);
  if (g.json) {
    emit(r.to_json());
  } else {
    std::cout << r.lambda.reduced().str() << '\n' << "m: " << r.m_used << '\n';
    if (!r.stabilized) std::cout << "warning: not stabilized; next degree gives " << r.next.reduced().str() << '\n';
  }
}

void cmd_ideal_step(const std::string& phi_text) {
  const auto s = wh::ideal_step(read_automorphism(phi_text));
  if (g.json) {
    emit({{"tau", s.move.str()}, {"lambda_before", s.lambda_before.to_json()}, {"lambda_after", s.lambda_after.to_json()}});
  } else {
    std::cout << s.move.str() << '\n'
              << "lambda: " << s.lambda_before.reduced().str() << " -> " << s.lambda_after.reduced().str() << '\n';
  }
}

void cmd_factorize(const std::string& phi_text, int max_steps) {
  const auto f = wh::factorize(read_automorphism(phi_text), max_steps);
  if (g.json) {
    emit(f.to_json());
    return;
  }
  for (std::size_t i = 0; i < f.sigmas.size(); ++i) std::cout << "sigma_" << i + 1 << ": " << f.sigmas[i].str() << '\n';
  std::cout << "alpha: " << f.alpha.str() << '\n' << "L:";
  for (const auto& l : f.lengths) std::cout << ' ' << l.reduced().str();
  std::cout << '\n';
}

void print_current(const wh::TruncatedCurrent& nu) {
  if (g.json) {
    emit(nu.to_json());
    return;
  }
  for (const auto& [v, x] : nu.coords()) std::cout << v.str() << ' ' << fmt(x) << '\n';
}

void cmd_current_check(const std::string& path, double tolerance) {
  std::ifstream in(path);
  if (!in) throw wh::DomainError("cannot read " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw wh::DomainError(std::string("malformed current file: ") + e.what());
  }
  const auto nu = wh::TruncatedCurrent::from_json(j);
  const auto violations = wh::check_invariance(nu, tolerance);
  const double len = wh::length(nu);
  auto side = [](wh::InvarianceViolation::Side s) { return s == wh::InvarianceViolation::Side::kRight ? "right" : "left"; };
  if (g.json) {
    json vs = json::array();
    for (const auto& v : violations) {
      vs.push_back({{"v", v.v.str()}, {"side", side(v.side)}, {"expected", v.expected}, {"actual", v.actual}});
    }
    emit({{"length", len}, {"violations", std::move(vs)}});
    return;
  }
  std::cout << "length: " << fmt(len) << '\n' << "violations: " << violations.size() << '\n';
  for (const auto& v : violations) {
    std::cout << "  " << v.v.str() << ' ' << side(v.side) << ' ' << fmt(v.expected) << ' ' << fmt(v.actual) << '\n';
  }
}

void cmd_limit_check(const std::string& phi_text, std::size_t n, std::size_t samples, int radius) {
  wh::Rng rng(g.seed);
  const auto r = wh::empirical_limit_check(read_automorphism(phi_text), n, samples, rng, radius);
  if (g.json) {
    emit(r.to_json());
  } else {
    std::cout << "max_deviation: " << fmt(r.max_deviation) << " at " << r.worst_word.str() << '\n'
              << "mean_length_ratio: " << fmt(r.mean_length_ratio) << '\n'
              << "reference_degree: " << r.reference_degree << '\n';
  }
}

void cmd_genericity(const std::string& predicate, const std::string& domain, const std::vector<std::size_t>& lengths,
                    std::size_t samples, double eps, int m) {
  const int k = g.k;
  wh::WordPredicate pred;
  if (predicate == "strictly-minimal") {
    pred = [k](const wh::CyclicWord& w) { return wh::is_strictly_minimal(k, w); };
  } else if (predicate == "minimal") {
    pred = [k](const wh::CyclicWord& w) { return wh::is_minimal(k, w); };
  } else if (predicate == "true") {
    pred = [](const wh::CyclicWord&) { return true; };
  } else {
    pred = [k, eps, m](const wh::CyclicWord& w) { return wh::in_uniform_neighborhood(k, w, eps, m); };
  }
  wh::Rng rng(g.seed);
  const auto rows = wh::estimate_genericity(
      pred, k, domain == "F" ? wh::SampleDomain::kReduced : wh::SampleDomain::kCyclicallyReduced, lengths, samples, rng);
  if (g.json) {
    json out = json::array();
    for (const auto& r : rows) out.push_back({{"n", r.n}, {"samples", r.samples}, {"hits", r.hits}, {"frequency", r.frequency()}});
    emit({{"predicate", predicate}, {"domain", domain}, {"rows", std::move(out)}});
    return;
  }
  std::cout << "n samples hits frequency\n";
  for (const auto& r : rows) std::cout << r.n << ' ' << r.samples << ' ' << r.hits << ' ' << fmt(r.frequency()) << '\n';
}

void cmd_run(const std::string& config_path, std::string out_dir) {
  std::ifstream in(config_path);
  if (!in) throw wh::DomainError("cannot read " + config_path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw wh::DomainError(std::string("malformed config: ") + e.what());
  }
  const auto cfg = wh::ExperimentConfig::from_json(j);
  if (out_dir.empty()) out_dir = cfg.out;
  if (out_dir.empty()) throw UsageError("no output directory; pass --out or set \"out\" in the config");
  const auto report = wh::run_experiment(cfg);
  wh::write_report(report, out_dir);

  json summary = report.to_json();
  summary.erase("records");
  if (g.json) {
    emit(summary);
    return;
  }
  std::cout << "samples: " << report.records.size() << ", transformed: " << report.transformed()
            << ", nonminimal in W1: " << report.nonminimal_in_w1
            << ", rejected applications: " << report.rejected_applications << '\n';
  for (const auto& c : report.clusters) {
    std::cout << c.automorphism << ": lambda " << c.lambda.reduced().str() << ", tau " << c.tau << ", members "
              << c.members << ", mean " << fmt(c.mean_distance) << ", p95 " << fmt(c.p95_distance) << ", reduced "
              << fmt(c.fraction_reduced) << '\n';
  }
  if (report.transformed() > 0) std::cout << "accuracy: " << fmt(wh::nearest_centroid_classify(report)) << '\n';
  std::cout << "wrote " << (std::filesystem::path(out_dir) / "report.json").string() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
#ifdef WH_CLUSTER_LAB
  CLI::App app{"Whitehead-graph clustering experiments", "cluster-lab"};
#else
  CLI::App app{"Whitehead automorphisms, Whitehead graphs and currents on free groups", "wh"};
#endif
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--k", g.k, "rank of the free group")->check(CLI::Range(1, wh::kMaxRank));
  app.add_option("--seed", g.seed, "random seed");
  app.add_flag("--json", g.json, "machine-readable output");

  std::function<void()> action;
  std::string a, b;
  std::size_t cap = wh::kDefaultNodeCap;
  bool normalized = false, allow_unstabilized = false;
  int m = 2, radius = wh::kDefaultRadius, max_steps = wh::kDefaultMaxSteps;
  double tolerance = wh::kCurrentTolerance, eps = 0.01;
  std::size_t n = 10000, samples = 100;
  std::string predicate = "strictly-minimal", domain = "C";
  std::vector<std::size_t> lengths{50, 100, 200, 500};
  std::string config, out;

  auto sub = [&](const char* name, const char* help, std::function<void()> fn) {
    auto* s = app.add_subcommand(name, help);
    s->callback([&action, fn] { action = fn; });
    return s;
  };

  sub("reduce", "free reduction", [&] { cmd_reduce(a); })->add_option("word", a)->required();
  sub("cyclic", "cyclic reduction and conjugator", [&] { cmd_cyclic(a); })->add_option("word", a)->required();
  {
    auto* s = sub("count", "occurrences of v in the cyclic word w", [&] { cmd_count(a, b); });
    s->add_option("v", a)->required();
    s->add_option("w", b)->required();
  }
  sub("minimize", "greedy Whitehead minimization", [&] { cmd_minimize(a); })->add_option("word", a)->required();
  {
    auto* s = sub("equiv", "automorphic equivalence of two cyclic words", [&] { cmd_equiv(a, b, cap); });
    s->add_option("u", a)->required();
    s->add_option("v", b)->required();
    s->add_option("--cap", cap, "node cap for the level-set search")->check(CLI::PositiveNumber);
  }
  {
    auto* s = sub("whgraph", "Whitehead graph of a cyclic word", [&] { cmd_whgraph(a, normalized); });
    s->add_option("word", a)->required();
    s->add_flag("--normalized", normalized, "divide labels by the word length");
  }
  {
    auto* s = sub("dist", "distance between normalized Whitehead graphs", [&] { cmd_dist(a, b); });
    s->add_option("u", a)->required();
    s->add_option("v", b)->required();
  }
  sub("euler", "Euler word of degree m", [&] { cmd_euler(m); })->add_option("m", m)->required()->check(CLI::PositiveNumber);
  {
    auto* s = sub("stretch", "generic stretching factor", [&] { cmd_stretch(a, allow_unstabilized); });
    s->add_option("phi", a)->required();
    s->add_flag("--allow-unstabilized", allow_unstabilized, "report the last value when the size cap is reached");
  }
  sub("ideal-step", "a Whitehead move decreasing the stretching factor", [&] { cmd_ideal_step(a); })
      ->add_option("phi", a)
      ->required();
  {
    auto* s = sub("factorize", "factor into Whitehead moves and a simple automorphism", [&] { cmd_factorize(a, max_steps); });
    s->add_option("phi", a)->required();
    s->add_option("--max-steps", max_steps)->check(CLI::PositiveNumber);
  }
  {
    auto* s = app.add_subcommand("current", "truncated currents");
    s->require_subcommand(1);
    auto* u = s->add_subcommand("uniform", "the uniform current");
    u->add_option("--radius", radius)->check(CLI::Range(1, 12));
    u->callback([&] { action = [&] { print_current(wh::uniform_current(g.k, radius)); }; });
    auto* r = s->add_subcommand("rational", "counting current of a conjugacy class");
    r->add_option("word", a)->required();
    r->add_option("--radius", radius)->check(CLI::Range(1, 12));
    r->callback([&] { action = [&] { print_current(wh::rational_current(g.k, read_word(a), radius)); }; });
    auto* c = s->add_subcommand("check", "invariance check of a current stored as JSON");
    c->add_option("file", a)->required();
    c->add_option("--tol", tolerance)->check(CLI::PositiveNumber);
    c->callback([&] { action = [&] { cmd_current_check(a, tolerance); }; });
  }
  {
    auto* s = sub("limit-check", "random prefixes against phi(n_A)", [&] { cmd_limit_check(a, n, samples, radius); });
    s->add_option("phi", a)->required();
    s->add_option("--n", n, "prefix length")->check(CLI::PositiveNumber);
    s->add_option("--samples", samples)->check(CLI::PositiveNumber);
    s->add_option("--radius", radius)->check(CLI::Range(1, 12));
  }
  {
    auto* s = sub("genericity", "frequency of a property among random words",
                  [&] { cmd_genericity(predicate, domain, lengths, samples, eps, m); });
    s->add_option("--predicate", predicate)->check(CLI::IsMember({"strictly-minimal", "minimal", "true", "uniform"}));
    s->add_option("--domain", domain, "F (reduced) or C (cyclically reduced)")->check(CLI::IsMember({"F", "C"}));
    s->add_option("--lengths", lengths)->delimiter(',')->check(CLI::PositiveNumber);
    s->add_option("--samples", samples)->check(CLI::PositiveNumber);
    s->add_option("--eps", eps, "neighborhood radius for the uniform predicate")->check(CLI::PositiveNumber);
    s->add_option("--m", m, "word length for the uniform predicate")->check(CLI::PositiveNumber);
  }
  {
    auto* s = sub("run", "run a clustering experiment", [&] { cmd_run(config, out); });
    s->add_option("--config", config)->required();
    s->add_option("--out", out);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n' << app.help();
    return 2;
  }

  try {
    action();
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n' << app.help();
    return 2;
  } catch (const wh::DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
