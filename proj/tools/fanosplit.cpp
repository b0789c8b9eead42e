// fanosplit: command line front end. Exit codes: 0 ok, 1 check failed, 2 usage or input error.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fanosplit/io.hpp"
#include "fanosplit/repro.hpp"

using namespace fanosplit;
using io::json;

namespace {

constexpr int kOk = 0, kCheckFailed = 1, kUsage = 2;

struct Config {
  std::string field = "101";
  std::string format = "json";
  unsigned jobs = 1;
  std::uint64_t seed = 1;
  std::uint64_t ceiling = 100'000'000;
};

/// Accepts "2", "q=2", "GF(2)", "rational", "Q".
Field parse_field(std::string t) {
  if (t.size() > 4 && (t.rfind("GF(", 0) == 0 || t.rfind("gf(", 0) == 0) && t.back() == ')') t = t.substr(3, t.size() - 4);
  return Field::parse(t);
}

json read_input(const std::string& path, const std::string& what) {
  if (path.empty() || path == "-") return io::read_json(std::cin, what + " (stdin)");
  return io::read_json_file(path);
}

int emit(json j, const Config& cfg, int code = kOk) {
  if (j.is_object()) j["seed"] = cfg.seed;
  std::cout << j.dump(2) << "\n";
  return code;
}

std::vector<std::size_t> one_based(std::vector<std::size_t> v) {
  for (auto& x : v) ++x;
  return v;
}

std::string census_text(const ComponentTable& t) {
  std::ostringstream os;
  os << "F_" << t.k << "(X_{" << t.r << "," << t.d << "})  [" << to_string(t.status) << "]\n";
  os << "type  count  dimension\n";
  for (const auto& row : t.rows) os << to_string(row.type) << "     " << row.count.str() << "  " << row.dimension.str() << "\n";
  if (t.rows.empty()) os << "(no rows)\n";
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Linear subspaces of X_{r,d} = V(sum of r products of d linear forms): splitting, searches, census, product rank"};
  app.require_subcommand(1);
  app.fallthrough();
  Config cfg;
  app.add_option("--field", cfg.field, "field: prime p, GF(p) or rational")->capture_default_str();
  app.add_option("--format", cfg.format, "output format for tables: json, csv, table")->check(CLI::IsMember({"json", "csv", "table"}));
  app.add_option("--jobs,-j", cfg.jobs, "worker threads for hunts and sampling")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--seed", cfg.seed, "seed for randomized work")->capture_default_str();
  app.add_option("--ceiling", cfg.ceiling, "largest search space to enumerate")->capture_default_str();

  std::function<int()> action;

  // member / split / profile read a plane (file or stdin)
  std::string plane_path;
  auto* member = app.add_subcommand("member", "is the plane contained in X_{r,d}");
  member->add_option("--plane", plane_path, "plane JSON, '-' or omitted for stdin");
  member->callback([&] {
    action = [&] {
      const KPlane L = io::plane_from_json(read_input(plane_path, "plane"));
      const bool ok = membership(L);
      return emit({{"member", ok}, {"r", L.r()}, {"d", L.d()}, {"k", L.k()}}, cfg, ok ? kOk : kCheckFailed);
    };
  });

  std::size_t lambda_max = 2;
  auto* split = app.add_subcommand("split", "row subsets whose products sum to zero");
  split->add_option("--plane", plane_path, "plane JSON, '-' or omitted for stdin");
  split->add_option("--lambda-max", lambda_max, "largest subset size")->capture_default_str();
  split->callback([&] {
    action = [&] {
      const KPlane L = io::plane_from_json(read_input(plane_path, "plane"));
      if (!membership(L)) return emit({{"member", false}}, cfg, kCheckFailed);
      json subsets = json::array();
      for (const auto& s : splitting_subsets(L, lambda_max)) subsets.push_back(one_based(s));
      return emit({{"member", true}, {"lambda_max", lambda_max}, {"subsets", subsets}, {"one_split", is_one_split(L)},
                   {"two_split", is_two_split(L)}, {"min_splitting", min_splitting(L)}},
                  cfg);
    };
  });

  std::string tie = "smallest";
  std::optional<std::size_t> audit_s;
  auto* profile = app.add_subcommand("profile", "greedy lambda profile of a plane that is not one-split");
  profile->add_option("--plane", plane_path, "plane JSON, '-' or omitted for stdin");
  profile->add_option("--tie", tie, "tie-break: smallest or largest row index")->check(CLI::IsMember({"smallest", "largest"}));
  profile->add_option("--audit", audit_s, "also audit the lambda lemma at this s");
  profile->callback([&] {
    action = [&] {
      const KPlane L = io::plane_from_json(read_input(plane_path, "plane"));
      try {
        const auto p = lambda_profile(L, tie == "largest" ? TieBreak::largest_index : TieBreak::smallest_index);
        json out = io::to_json(p);
        out["ordering"] = one_based(p.ordering);
        if (audit_s) {
          const auto a = audit_profile(p, L.r(), L.d(), L.k(), *audit_s);
          out["audit"] = io::to_json(a);
          if (a.outcome != AuditOutcome::consistent) return emit(out, cfg, kCheckFailed);
        }
        return emit(out, cfg);
      } catch (const OneSplitDetected& e) {
        return emit({{"one_split", true}, {"detail", e.what()}}, cfg, kCheckFailed);
      }
    };
  });

  // hunt c / hunt split
  auto* hunt = app.add_subcommand("hunt", "exhaustive or sampled searches");
  hunt->require_subcommand(1);
  SearchSpace sp;
  std::string pattern_s, constraint = "strict", mode = "exhaustive";
  double time_limit = 0;
  auto* hunt_c = hunt->add_subcommand("c", "counterexamples to the vanishing-coefficient property");
  hunt_c->add_option("--d", sp.d, "degree")->required();
  hunt_c->add_option("--pattern", pattern_s, "monomial degrees, e.g. 2,3")->required();
  hunt_c->add_option("--nvars", sp.nvars, "number of variables (default: sum of the pattern)");
  hunt_c->add_option("--m", sp.m, "number of products")->capture_default_str();
  hunt_c->add_option("--k", sp.k, "leading unconstrained coefficients")->capture_default_str();
  hunt_c->add_option("--constraint", constraint, "strict (pairwise >= d+2) or relaxed (>= d+1)")->check(CLI::IsMember({"strict", "relaxed"}));
  hunt_c->add_option("--mode", mode, "exhaustive or randomized")->check(CLI::IsMember({"exhaustive", "randomized"}));
  hunt_c->add_option("--trials", sp.trials, "samples in randomized mode");
  hunt_c->add_option("--time-limit", time_limit, "seconds before stopping with incomplete=true (0 = none)");
  hunt_c->callback([&] {
    action = [&] {
      sp.field = parse_field(app.get_option("--field")->count() ? cfg.field : "2");
      sp.pattern.clear();
      std::stringstream ss(pattern_s);
      for (std::string t; std::getline(ss, t, ',');) sp.pattern.push_back(static_cast<unsigned>(std::stoul(t)));
      sp.constraint = parse_constraint(constraint);
      sp.mode = mode == "randomized" ? SearchMode::randomized : SearchMode::exhaustive;
      sp.seed = cfg.seed;
      sp.jobs = cfg.jobs;
      sp.ceiling = cfg.ceiling;
      sp.time_limit_seconds = time_limit;
      const auto rep = hunt_counterexamples(sp);
      return emit(io::to_json(rep, sp), cfg, rep.counterexamples && sp.constraint == DegreeConstraint::strict ? kCheckFailed : kOk);
    };
  });

  std::size_t hr = 0, hd = 0, hk = 0, trials = 100, inject_every = 0;
  auto* hunt_split = hunt->add_subcommand("split", "sample member planes and test one- and two-splitting");
  hunt_split->add_option("--r", hr)->required();
  hunt_split->add_option("--d", hd)->required();
  hunt_split->add_option("--k", hk)->required();
  hunt_split->add_option("--trials", trials)->capture_default_str();
  hunt_split->add_option("--inject-every", inject_every, "mix in a witness-family plane every N trials");
  hunt_split->callback([&] {
    action = [&] {
      const auto rep = hunt_split_violations(hr, hd, hk, parse_field(cfg.field), trials, cfg.seed, cfg.jobs, inject_every);
      return emit(io::to_json(rep, cfg.seed), cfg, rep.one_split_violations || rep.two_split_violations ? kCheckFailed : kOk);
    };
  });

  // census / fixedplanes
  std::size_t cr = 0, cd = 0, ck = 0;
  auto* census = app.add_subcommand("census", "irreducible components of F_k(X_{r,d})");
  census->add_option("--r", cr)->required();
  census->add_option("--d", cd)->required();
  census->add_option("--k", ck)->required();
  census->callback([&] {
    action = [&] {
      const auto t = component_census(cr, cd, ck);
      if (cfg.format == "csv") {
        std::cout << census_csv(t);
        return kOk;
      }
      if (cfg.format == "table") {
        std::cout << census_text(t);
        return kOk;
      }
      json out = io::to_json(t);
      out["nonempty"] = fano_nonempty(cr, cd, ck);
      out["connected"] = fano_connected(cr, cd, ck);
      out["splitting"] = io::to_json(splitting_status(cr, cd, ck));
      return emit(out, cfg);
    };
  });

  bool list = false;
  auto* fixed = app.add_subcommand("fixedplanes", "coordinate k-planes of X_{r,d}");
  fixed->add_option("--r", cr)->required();
  fixed->add_option("--d", cd)->required();
  fixed->add_option("--k", ck)->required();
  fixed->add_flag("--list", list, "list zero sets (1-based columns x_11..x_rd)");
  fixed->callback([&] {
    action = [&] {
      json out{{"r", cr}, {"d", cd}, {"k", ck}, {"count", torus_fixed_count(cr, cd, ck).str()}};
      if (ck + 1 == cr * (cd - 1)) out["d_pow_r"] = detail::ipow(cd, cr).str();
      if (list) {
        json zs = json::array();
        for (const auto& p : torus_fixed_planes(cr, cd, ck, cfg.ceiling)) zs.push_back(one_based(p.zeros));
        out["zero_sets"] = zs;
      }
      return emit(out, cfg);
    };
  });

  // rank bound / verify / cert / example
  auto* rank = app.add_subcommand("rank", "product rank bounds, decomposition checks, certificates");
  rank->require_subcommand(1);
  std::string target;
  std::size_t rr = 0;
  std::optional<std::size_t> rd, rk, rn, rm;
  auto* bound = rank->add_subcommand("bound", "can the target be a sum of r products");
  bound->add_option("--target", target, "det3, det4, pf6 or perm4");
  bound->add_option("--r", rr, "number of products")->required();
  bound->add_option("--d", rd, "degree (without --target)");
  bound->add_option("--k", rk, "covering dimension (without --target)");
  bound->add_option("--n", rn, "ambient P^n (without --target)");
  bound->add_option("--m", rm, "dimension of the covering family");
  bound->callback([&] {
    action = [&] {
      std::size_t d = 0, k = 0, n = 0;
      if (!target.empty()) {
        const Target t = target_by_name(target);
        if (!t.k) throw InvalidArgument(target + " has no covering family; use rank cert");
        d = t.d, k = *t.k, n = t.n;
      } else {
        if (!rd || !rk || !rn) throw InvalidArgument("give --target or all of --d, --k, --n");
        d = *rd, k = *rk, n = *rn;
      }
      json out = io::to_json(theorem_bound(rr, d, k, n, rm));
      out.update({{"r", rr}, {"d", d}, {"k", k}, {"n", n}});
      if (!target.empty()) out["target"] = target;
      return emit(out, cfg);
    };
  });

  std::string dec_path;
  auto* verify = rank->add_subcommand("verify", "check a decomposition exactly");
  verify->add_option("--decomposition", dec_path, "decomposition JSON, '-' or omitted for stdin");
  verify->callback([&] {
    action = [&] {
      const auto dec = io::decomposition_from_json(read_input(dec_path, "decomposition"));
      const bool ok = verify_decomposition(dec);
      return emit({{"verified", ok}, {"r", dec.r()}, {"ambient_ok", dec.ambient_ok()}}, cfg, ok ? kOk : kCheckFailed);
    };
  });

  auto* rank_cert = rank->add_subcommand("cert", "emit the lower-bound certificate for a target");
  rank_cert->add_option("--target", target, "det3, det4, pf6 or perm4")->required();
  rank_cert->callback([&] { action = [&] { return emit(io::to_json(certificate_by_name(target)), cfg); }; });

  auto* example = rank->add_subcommand("example", "emit a known decomposition (det3: Leibniz, perm4: Glynn)");
  example->add_option("--target", target, "det3, det4 or perm4")->required();
  example->callback([&] {
    action = [&] {
      const Field f = parse_field(app.get_option("--field")->count() ? cfg.field : "rational");
      if (target == "perm4") return emit(io::to_json(glynn_decomposition(f, 4), target), cfg);
      if (target == "det3") return emit(io::to_json(leibniz_decomposition(f, 3), target), cfg);
      if (target == "det4") return emit(io::to_json(leibniz_decomposition(f, 4), target), cfg);
      throw InvalidArgument("no example decomposition for '" + target + "'");
    };
  });

  // cert replay
  auto* cert = app.add_subcommand("cert", "certificate tools");
  cert->require_subcommand(1);
  std::string cert_path;
  auto* replay = cert->add_subcommand("replay", "re-run every check of a certificate");
  replay->add_option("--cert", cert_path, "certificate JSON, '-' or omitted for stdin");
  replay->callback([&] {
    action = [&] {
      const auto c = io::certificate_from_json(read_input(cert_path, "certificate"));
      const auto rep = replay_certificate(c);
      const auto derived = derived_bound(c);
      json imported = json::array();
      for (const auto& s : c.steps)
        if (s.kind == StepKind::imported) imported.push_back(s.statement);
      return emit({{"target", c.target},
                   {"ok", rep.ok},
                   {"checked", rep.checked},
                   {"imported", imported},
                   {"failed_steps", rep.failed},
                   {"bound_follows", rep.bound_follows},
                   {"derived_lower_bound", derived ? json(*derived) : json(nullptr)},
                   {"claimed_lower_bound", c.lower_bound}},
                  cfg, rep.ok ? kOk : kCheckFailed);
    };
  });

  // witness sharp
  auto* witness = app.add_subcommand("witness", "explicit planes");
  witness->require_subcommand(1);
  std::optional<std::size_t> wk;
  auto* sharp = witness->add_subcommand("sharp", "member plane that is not one-split at the largest such k");
  sharp->add_option("--r", cr)->required();
  sharp->add_option("--d", cd)->required();
  sharp->add_option("--k", wk, "take a generic k-subplane instead");
  sharp->callback([&] {
    action = [&] {
      const Field f = parse_field(cfg.field);
      const KPlane L = wk ? witness_subplane(cr, cd, *wk, f, cfg.seed) : sharp_witness(cr, cd, f);
      return emit(io::to_json(L), cfg);
    };
  });

  // repro
  bool verbose = false;
  auto* repro = app.add_subcommand("repro", "run every acceptance criterion and report");
  repro->add_flag("-v,--verbose", verbose, "per-run detail");
  repro->callback([&] {
    action = [&] {
      repro::Options opt{cfg.jobs, cfg.seed};
      json results = json::array();
      bool all = true;
      repro::run_all(opt, [&](const repro::CriterionResult& r) {
        all = all && r.passed;
        if (cfg.format == "json") {
          results.push_back({{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"detail", r.detail}, {"seconds", r.seconds}, {"lines", r.lines}});
          return;
        }
        std::printf("%s %2d %s: %s (%.2fs)\n", r.passed ? "PASS" : "FAIL", r.id, r.name.c_str(), r.detail.c_str(), r.seconds);
        if (verbose || !r.passed)
          for (const auto& l : r.lines) std::printf("      %s\n", l.c_str());
        std::fflush(stdout);
      });
      if (cfg.format == "json") return emit({{"criteria", results}, {"passed", all}, {"jobs", cfg.jobs}}, cfg, all ? kOk : kCheckFailed);
      std::printf("seed %llu\n", static_cast<unsigned long long>(cfg.seed));
      return all ? kOk : kCheckFailed;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }
  try {
    return action();
  } catch (const ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kUsage;
  } catch (const CeilingExceeded& e) {
    std::cerr << "ceiling: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
}
