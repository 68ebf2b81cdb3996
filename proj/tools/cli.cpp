#include "cli.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <json.hpp>
#include <map>
#include <charconv>
#include <sstream>

#include "vspart/artifacts.hpp"
#include "vspart/construct.hpp"
#include "vspart/dioph.hpp"
#include "vspart/error.hpp"
#include "vspart/partition_io.hpp"
#include "vspart/search.hpp"

namespace vspart::cli {

namespace {

using nlohmann::json;

std::uint64_t default_budget() {
  if (const char* env = std::getenv("VSPART_BUDGET")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw Error(ErrorCode::InvalidArgument, std::string("VSPART_BUDGET is not a number: ") + env);
    }
  }
  return kDefaultNodeBudget;
}

std::vector<unsigned> parse_dims(const std::string& text) { return parse_tspec(text).dims; }

json type_json(const PartitionType& t) {
  json a = json::array();
  for (const auto& e : t.entries) a.push_back({e.count, e.dim});
  return a;
}

json flags_json(const std::vector<ConditionFlag>& flags) {
  json a = json::array();
  for (const auto& f : flags)
    a.push_back({{"condition", to_string(f.condition)}, {"verdict", to_string(f.verdict)}, {"detail", f.detail}});
  return a;
}

json summary_json(const Partition& p) {
  const auto rep = verify(p);
  return {{"q", p.ambient().q()},
          {"n", p.ambient().n},
          {"components", p.size()},
          {"type", to_string(type_of(p))},
          {"type_entries", type_json(type_of(p))},
          {"valid", rep.valid},
          {"method", rep.method},
          {"message", rep.message},
          {"provenance", to_json(p.provenance())}};
}

void print_summary(std::ostream& out, const Partition& p) {
  const auto rep = verify(p);
  out << "space      V_" << p.ambient().n << "(" << p.ambient().q() << ")\n"
      << "type       " << to_string(type_of(p)) << "\n"
      << "components " << p.size() << "\n";
  if (!p.provenance().rule.empty()) out << "rule       " << p.provenance().rule << "\n";
  out << "valid      " << (rep.valid ? "yes" : "no") << " (" << rep.method << ")\n";
  if (!rep.valid) out << "reason     " << rep.message << "\n";
}

/// Write to --out when given; print the file itself otherwise, unless JSON
/// output was requested.
void emit_partition(std::ostream& out, const Partition& p, const std::string& path, bool as_json) {
  if (!path.empty()) write_partition_file(path, p);
  if (as_json) {
    json j = summary_json(p);
    if (!path.empty()) j["file"] = path;
    out << j.dump(2) << "\n";
  } else if (!path.empty()) {
    print_summary(out, p);
    out << "written    " << path << "\n";
  } else {
    write_partition(out, p);
  }
}

// Subcommand options; only one subcommand runs per call.
struct Options {
  std::string dims, filters = "all";
  unsigned depth = 1;
  unsigned d = 0, k = 0;
  std::string tspec, type;
  unsigned threads = 1;
  bool hyperplane = false;
  std::string basis;
  std::uint64_t seed = 0;
  bool seeded = false, no_prefilter = false;
  bool check = false;
};

int exit_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::BudgetExceeded:
    case ErrorCode::TooLarge:
    case ErrorCode::InvalidArgument:
    case ErrorCode::ParseError:
    case ErrorCode::NonCanonicalInput:
    case ErrorCode::NotPrime:
    case ErrorCode::FieldTooLarge:
    case ErrorCode::DimensionMismatch:
    case ErrorCode::Internal:
      return kUsage;
    default:
      return kNegative;
  }
}

FieldPtr field_of(std::uint64_t q) { return make_field_of_order(q); }

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Vector space partitions over finite fields", "vspart"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  std::function<int()> action;
  Options opt;
  bool as_json = false;
  auto json_flag = [&](CLI::App* sub) { sub->add_flag("--json", as_json, "Machine-readable output"); };

  std::uint64_t q = 0;
  unsigned n = 0;
  std::uint64_t budget = 0;
  bool budget_set = false;
  auto budget_opt = [&](CLI::App* sub) {
    sub->add_option_function<std::uint64_t>(
        "--budget", [&](std::uint64_t b) { budget = b, budget_set = true; },
        "Node budget (default: $VSPART_BUDGET or 50000000)");
  };
  auto get_budget = [&] { return budget_set ? budget : default_budget(); };
  bool force = false;
  std::string file;
  std::string out_path;

  // solve
  {
    auto* sub = app.add_subcommand("solve", "Non-negative solutions of the counting equation");
    auto& dims = opt.dims;
    auto& filters = opt.filters;
    auto& depth = opt.depth;
    sub->add_option("--q", q, "Field order")->required();
    sub->add_option("--n", n, "Dimension of the space")->required();
    sub->add_option("--dims", dims, "Component dimensions, e.g. 2,3")->required();
    sub->add_option("--filters", filters, "all: annotate every solution; pass: keep passing ones; none")
        ->check(CLI::IsMember({"all", "pass", "none"}));
    sub->add_option("--depth", depth, "Hyperplane depth for the split condition");
    budget_opt(sub);
    json_flag(sub);
    sub->callback([&] {
      action = [&] {
        const auto d = parse_dims(dims);
        const std::uint64_t solution_budget = budget_set ? budget : kDefaultSolutionBudget;
        auto sols = solve_eq1(q, n, d, solution_budget);
        json arr = json::array();
        std::size_t shown = 0;
        for (auto& s : sols) {
          if (filters != "none") s = annotate(s, q, n, AnnotateOptions{depth});
          if (filters == "pass" && !s.passes_all()) continue;
          ++shown;
          if (as_json) {
            json j = {{"x", s.x}, {"type", to_string(s.as_type())}};
            if (filters != "none") {
              j["passes"] = s.passes_all();
              j["flags"] = flags_json(s.flags);
            }
            arr.push_back(j);
            continue;
          }
          out << "x = (";
          for (std::size_t i = 0; i < s.x.size(); ++i) out << (i ? "," : "") << s.x[i];
          out << ")  " << to_string(s.as_type());
          if (filters != "none") {
            const auto fails = s.failures();
            if (fails.empty()) {
              out << "  passes";
            } else {
              out << "  fails:";
              for (auto c : fails) out << " " << to_string(c);
            }
          }
          out << "\n";
        }
        if (as_json)
          out << json{{"q", q}, {"n", n}, {"dims", d}, {"filters", filters}, {"solutions", arr}}.dump(2) << "\n";
        else
          out << shown << " solution" << (shown == 1 ? "" : "s") << "\n";
        return kOk;
      };
    });
  }

  // construct
  {
    auto* sub = app.add_subcommand("construct", "Explicit constructions");
    sub->require_subcommand(1);
    auto& d = opt.d;
    auto& k = opt.k;
    auto& tspec = opt.tspec;
    auto& type = opt.type;
    auto& threads = opt.threads;

    auto* sp = sub->add_subcommand("spread", "d-spread of V_n(q)");
    sp->add_option("--q", q)->required();
    sp->add_option("--n", n)->required();
    sp->add_option("--d", d)->required();
    auto* ns = sub->add_subcommand("near-spread", "Type [(q^{n-d},d),(1,n-d)]");
    ns->add_option("--q", q)->required();
    ns->add_option("--n", n)->required();
    ns->add_option("--d", d)->required();
    auto* hs = sub->add_subcommand("hsection", "Hyperplane section of the d-spread of V_{kd}(q)");
    hs->add_option("--q", q)->required();
    hs->add_option("--k", k)->required();
    hs->add_option("--d", d)->required();
    auto* ty = sub->add_subcommand("typed", "A partition of a given type (one dimension, or two summing to n)");
    ty->add_option("--q", q)->required();
    ty->add_option("--n", n)->required();
    ty->add_option("--type", type, "COUNTxDIM list, e.g. 8x2,1x3")->required();
    auto* tp = sub->add_subcommand("tpartition", "A partition whose dimension set is exactly T");
    tp->add_option("--q", q)->required();
    tp->add_option("--n", n)->required();
    tp->add_option("--T", tspec, "Dimension set, e.g. 1,2,3")->required();
    tp->add_option("--threads", threads, "Worker threads for the search fallback");
    budget_opt(tp);

    for (auto* c : {sp, ns, hs, ty, tp}) {
      c->add_option("--out", out_path, "Write the partition file here");
      json_flag(c);
    }
    sp->callback([&] { action = [&] { return emit_partition(out, spread(field_of(q), n, d), out_path, as_json), kOk; }; });
    ns->callback(
        [&] { action = [&] { return emit_partition(out, near_spread(field_of(q), n, d), out_path, as_json), kOk; }; });
    hs->callback([&] {
      action = [&] { return emit_partition(out, hyperplane_section(field_of(q), k, d), out_path, as_json), kOk; };
    });
    ty->callback([&] {
      action = [&] {
        return emit_partition(out, typed_construct(field_of(q), n, parse_type(type)), out_path, as_json), kOk;
      };
    });
    tp->callback([&] {
      action = [&] {
        BuildOptions o;
        o.search_budget = get_budget();
        o.threads = threads;
        return emit_partition(out, build_T_partition(field_of(q), parse_tspec(tspec), n, o), out_path, as_json), kOk;
      };
    });
  }

  auto file_command = [&](const std::string& name, const std::string& help) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("file", file, "Partition file")->required();
    sub->add_flag("--force", force, "Accept and re-canonicalize non-canonical input");
    json_flag(sub);
    return sub;
  };
  auto load = [&] {
    auto res = read_partition_file(file, ReadOptions{force});
    for (const auto& w : res.warnings) err << "warning: " << w << "\n";
    return std::move(res.partition);
  };

  // verify
  file_command("verify", "Check that a file holds a partition")->callback([&] {
    action = [&] {
      const Partition p = load();
      const auto rep = verify(p);
      if (as_json) {
        json j = summary_json(p);
        j["pairwise_trivial"] = rep.pairwise_trivial;
        j["full_cover"] = rep.full_cover;
        j["counting_identity"] = rep.counting_identity;
        if (rep.overlap) j["overlap"] = {rep.overlap->first, rep.overlap->second};
        if (rep.doubly_covered) j["doubly_covered"] = *rep.doubly_covered;
        if (rep.uncovered) j["uncovered"] = *rep.uncovered;
        out << j.dump(2) << "\n";
      } else {
        print_summary(out, p);
      }
      return rep.valid ? kOk : kNegative;
    };
  });

  // bounds
  file_command("bounds", "Minimum-dimension statistics and their necessary conditions")->callback([&] {
    action = [&] {
      const Partition p = load();
      const auto rep = bound_report(p);
      if (as_json) {
        json checks = json::array();
        for (const auto& c : rep.checks) checks.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
        out << json{{"t", rep.t},
                    {"s", rep.s},
                    {"r", rep.r},
                    {"upper", rep.upper},
                    {"r_mod_q_pow_t", rep.r_mod_q_pow_t},
                    {"s_prime", rep.s_prime},
                    {"w_basis", rep.w_basis},
                    {"checks", checks},
                    {"all_pass", rep.all_pass()}}
                   .dump(2)
            << "\n";
      } else {
        out << "t = " << rep.t << ", s = " << rep.s << ", r = " << rep.r << ", s' = " << rep.s_prime << "\n";
        for (const auto& c : rep.checks)
          out << (c.pass ? "  pass  " : "  FAIL  ") << c.name << "  (" << c.detail << ")\n";
      }
      return rep.all_pass() ? kOk : kNegative;
    };
  });

  // induce
  {
    auto& hyperplane = opt.hyperplane;
    auto& basis = opt.basis;
    auto* sub = file_command("induce", "Partition induced on a subspace");
    auto* h = sub->add_flag("--hyperplane", hyperplane, "Use the hyperplane x_n = 0");
    auto* b = sub->add_option("--basis", basis, "Rows separated by ';', entries by ',', e.g. \"1,0,0;0,1,0\"");
    h->excludes(b);
    sub->add_option("--out", out_path, "Write the induced partition here");
    sub->callback([&] {
      action = [&] {
        const Partition p = load();
        const Space& space = p.ambient();
        Subspace w = Subspace::zero(space);
        if (hyperplane) {
          w = Subspace::coordinate(space, 0, space.n - 1);
        } else if (!basis.empty()) {
          std::vector<Vector> rows;
          std::stringstream rs(basis);
          std::string row;
          while (std::getline(rs, row, ';')) {
            Vector v;
            std::stringstream es(row);
            std::string e;
            while (std::getline(es, e, ',')) {
              Elem x = 0;
              const auto [end, ec] = std::from_chars(e.data(), e.data() + e.size(), x);
              if (ec != std::errc{} || end != e.data() + e.size() || e.empty())
                throw Error(ErrorCode::ParseError, "bad basis entry '" + e + "'");
              v.push_back(x);
            }
            rows.push_back(std::move(v));
          }
          w = Subspace::span(space, rows);
        } else {
          throw Error(ErrorCode::InvalidArgument, "give --hyperplane or --basis");
        }
        emit_partition(out, induce(p, w), out_path, as_json);
        return kOk;
      };
    });
  }

  // search
  {
    auto& type = opt.type;
    auto& tspec = opt.tspec;
    auto& threads = opt.threads;
    auto& seed = opt.seed;
    auto& seeded = opt.seeded;
    auto& no_prefilter = opt.no_prefilter;
    auto* sub = app.add_subcommand("search", "Exact-cover search for a partition of a type or dimension set");
    sub->add_option("--q", q)->required();
    sub->add_option("--n", n)->required();
    auto* ty = sub->add_option("--type", type, "COUNTxDIM list, e.g. 1x2,4x3");
    auto* t = sub->add_option("--T", tspec, "Dimension set, e.g. 2,3");
    ty->excludes(t);
    budget_opt(sub);
    sub->add_option("--threads", threads, "Worker threads");
    sub->add_option_function<std::uint64_t>(
        "--seed", [&](std::uint64_t s) { seed = s, seeded = true; }, "Shuffle candidate order");
    sub->add_flag("--no-prefilter", no_prefilter, "Let the search refute types that fail the pairwise rule");
    sub->add_option("--out", out_path, "Write a found partition here");
    json_flag(sub);
    sub->callback([&] {
      action = [&] {
        SearchGoal goal;
        if (!type.empty())
          goal = parse_type(type);
        else if (!tspec.empty())
          goal = parse_tspec(tspec);
        else
          throw Error(ErrorCode::InvalidArgument, "give --type or --T");
        SearchOptions o;
        o.node_budget = get_budget();
        o.threads = threads;
        o.prefilter = !no_prefilter;
        if (seeded) o.shuffle_seed = seed;
        const auto res = find_partition(field_of(q), n, goal, o);
        if (res.partition && !out_path.empty()) write_partition_file(out_path, *res.partition);
        if (as_json) {
          json j = {{"status", to_string(res.status)}, {"nodes", res.nodes}, {"note", res.note}};
          if (res.partition) j["partition"] = summary_json(*res.partition);
          if (!out_path.empty() && res.partition) j["file"] = out_path;
          out << j.dump(2) << "\n";
        } else {
          out << to_string(res.status) << " after " << res.nodes << " nodes";
          if (!res.note.empty() && !res.partition) out << ": " << res.note;
          out << "\n";
          if (res.partition) {
            if (out_path.empty())
              write_partition(out, *res.partition);
            else
              print_summary(out, *res.partition);
          }
        }
        switch (res.status) {
          case SearchStatus::Found: return kOk;
          case SearchStatus::Exhausted: return kNegative;
          case SearchStatus::BudgetExceeded: return kUsage;
        }
        return kUsage;
      };
    });
  }

  // enumerate
  {
    auto* sub = app.add_subcommand("enumerate", "Every partition of a small space (q^n <= 4096)");
    sub->add_option("--q", q)->required();
    sub->add_option("--n", n)->required();
    budget_opt(sub);
    json_flag(sub);
    sub->callback([&] {
      action = [&] {
        const auto all = enumerate_all(field_of(q), n, get_budget());
        std::map<std::string, std::uint64_t> by_type;
        for (const auto& p : all) ++by_type[to_string(type_of(p))];
        if (as_json) {
          out << json{{"q", q}, {"n", n}, {"count", all.size()}, {"types", by_type}}.dump(2) << "\n";
        } else {
          out << all.size() << " partitions of V_" << n << "(" << q << ")\n";
          for (const auto& [t, c] : by_type) out << "  " << c << "  " << t << "\n";
        }
        return kOk;
      };
    });
  }

  // classify-23
  {
    auto& check = opt.check;
    auto* sub = app.add_subcommand("classify-23", "Solutions of 3 x_1 + 7 x_2 = 2^n - 1 and which partitions exist");
    sub->add_option("--n", n)->required();
    sub->add_flag("--check", check, "Confirm each verdict by search");
    budget_opt(sub);
    json_flag(sub);
    sub->callback([&] {
      action = [&] {
        const auto sols = classify_q2_23(n);
        json arr = json::array();
        bool agree = true;
        for (const auto& c : sols) {
          json j = {{"x", c.solution.x}, {"type", to_string(c.solution.as_type())}, {"exists", c.exists}};
          std::string verdict;
          if (check) {
            SearchOptions o;
            o.node_budget = get_budget();
            const auto res = find_partition(make_field(2, 1), n, c.solution.as_type().without_zeros(), o);
            verdict = std::string(to_string(res.status));
            j["search"] = verdict;
            if (res.status == SearchStatus::BudgetExceeded || (res.status == SearchStatus::Found) != c.exists)
              agree = false;
          }
          if (as_json) {
            arr.push_back(j);
          } else {
            out << "x = (" << c.solution.x[0] << "," << c.solution.x[1] << ")  " << (c.exists ? "exists" : "none");
            if (check) out << "  search: " << verdict;
            out << "\n";
          }
        }
        if (as_json) out << json{{"n", n}, {"solutions", arr}, {"agree", agree}}.dump(2) << "\n";
        return agree ? kOk : kNegative;
      };
    });
  }

  // conjecture-scan
  {
    auto* sub = app.add_subcommand("conjecture-scan", "Least minimum-dimension count over every partition");
    sub->add_option("--q", q)->required();
    sub->add_option("--n", n)->required();
    budget_opt(sub);
    json_flag(sub);
    sub->callback([&] {
      action = [&] {
        const auto rep = conjecture_scan(field_of(q), n, get_budget());
        if (as_json) {
          json mins = json::object(), eq = json::object();
          for (const auto& [t, s] : rep.min_s) mins[std::to_string(t)] = s;
          for (const auto& [t, c] : rep.equality_witnesses) eq[std::to_string(t)] = c;
          out << json{{"q", rep.q},
                      {"n", rep.n},
                      {"examined", rep.examined},
                      {"nontrivial", rep.nontrivial},
                      {"min_s", mins},
                      {"equality_witnesses", eq},
                      {"counterexamples", rep.counterexamples.size()},
                      {"holds", rep.holds()}}
                         .dump(2)
                  << "\n";
        } else {
          out << rep.examined << " partitions, " << rep.nontrivial << " non-trivial\n";
          for (const auto& [t, s] : rep.min_s) {
            const auto it = rep.equality_witnesses.find(t);
            out << "  t = " << t << ": least s = " << s << " (q^t + 1 = " << checked_pow(q, t) + 1 << ", "
                << (it == rep.equality_witnesses.end() ? 0 : it->second) << " attain it)\n";
          }
          out << (rep.holds() ? "no counterexample\n" : "COUNTEREXAMPLE FOUND\n");
        }
        return rep.holds() ? kOk : kNegative;
      };
    });
  }

  // code
  {
    auto& check = opt.check;
    auto* sub = file_command("code", "The mixed linear code of a partition");
    sub->add_flag("--check", check, "Verify sphere packing and minimum distance");
    sub->callback([&] {
      action = [&] {
        const Partition p = load();
        const auto code = code_from_partition(p);
        json j = {{"length", code.length()},
                  {"alphabet", code.alphabet},
                  {"dimension", code.kernel_dim},
                  {"size", code.size()},
                  {"materialized", code.materialized}};
        bool ok = true;
        if (check) {
          const auto rep = verify_perfect(code);
          ok = rep.perfect;
          j["sphere_packing"] = rep.sphere_packing;
          j["sphere_detail"] = rep.sphere_detail;
          j["min_distance"] = rep.min_distance ? json(*rep.min_distance) : json(nullptr);
          j["distance_method"] = rep.distance_method;
          j["perfect"] = rep.perfect;
        }
        if (as_json) {
          out << j.dump(2) << "\n";
        } else {
          out << "length " << code.length() << ", |W| = " << code.size() << " (q^" << code.kernel_dim << ")\n";
          if (check) {
            out << "sphere packing " << (j["sphere_packing"].get<bool>() ? "holds" : "FAILS") << ": "
                << j["sphere_detail"].get<std::string>() << "\n";
            out << "min distance "
                << (j["min_distance"].is_null() ? std::string("none") : std::to_string(j["min_distance"].get<unsigned>()))
                << " (" << j["distance_method"].get<std::string>() << ")\n";
            out << (ok ? "perfect\n" : "NOT perfect\n");
          }
        }
        return ok ? kOk : kNegative;
      };
    });
  }

  // design
  {
    auto& check = opt.check;
    auto* sub = file_command("design", "The coset design of a partition");
    sub->add_flag("--check", check, "Verify resolution classes, lambda = 1 and translation invariance");
    sub->callback([&] {
      action = [&] {
        const Partition p = load();
        const auto d = design_from_partition(p);
        json j = {{"points", d.points()}, {"blocks", d.blocks.size()}, {"classes", d.components.size()}};
        bool ok = true;
        if (check) {
          const auto rep = verify_design(d);
          ok = rep.valid;
          json classes = json::array();
          for (const auto& c : rep.classes)
            classes.push_back(
                {{"dim", c.dim}, {"blocks", c.blocks}, {"block_size", c.block_size}, {"resolves", c.resolves}});
          j["class_summary"] = classes;
          j["classes_ok"] = rep.classes_ok;
          j["lambda_one"] = rep.lambda_one;
          j["lambda_method"] = rep.lambda_method;
          j["pairs"] = rep.pairs;
          j["translation_ok"] = rep.translation_ok;
          j["valid"] = rep.valid;
          j["message"] = rep.message;
        }
        if (as_json) {
          out << j.dump(2) << "\n";
        } else {
          out << d.points() << " points, " << d.blocks.size() << " blocks, " << d.components.size() << " classes\n";
          if (check) out << j["message"].get<std::string>() << "\n";
        }
        return ok ? kOk : kNegative;
      };
    });
  }

  std::vector<std::string> rev(args.rbegin(), args.rend() - 1);
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    // Subcommand help requests surface here too.
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kOk;
    }
    err << "usage error: " << e.what() << "\n";
    err << "run with --help for usage\n";
    return kUsage;
  }

  try {
    return action ? action() : kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace vspart::cli
