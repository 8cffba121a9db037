// Command-line front end: sequence generation, bound computation,
// composition, amplification, tango runs, and the verification/experiment
// harness. Exit codes: 0 success, 1 usage/input error, 2 internal-consistency
// failure, 3 property violation found by verify.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "wilber/amplification.hpp"
#include "wilber/bounds.hpp"
#include "wilber/composition.hpp"
#include "wilber/sequences.hpp"
#include "wilber/tango.hpp"
#include "wilber/tree.hpp"
#include "wilber/verify.hpp"

using ordered_json = nlohmann::ordered_json;
using namespace wilber;

namespace {

constexpr const char* kVersion = "0.1.0";

// The only environment knob: WILBER_OUT_DIR prefixes relative output paths.
std::string resolve_out(const std::string& path) {
  if (path.empty()) return path;
  std::filesystem::path p(path);
  if (const char* dir = std::getenv("WILBER_OUT_DIR"); dir && *dir && p.is_relative())
    p = std::filesystem::path(dir) / p;
  return p.string();
}

void emit_text(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::fputs(text.c_str(), stdout);
    return;
  }
  const std::string resolved = resolve_out(out_path);
  std::ofstream f(resolved, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + resolved + " for writing");
  f << text;
  if (!f) throw std::runtime_error("write failed: " + resolved);
}

void emit_json(const ordered_json& j, const std::string& out_path) {
  emit_text(j.dump(2) + "\n", out_path);
}

ordered_json report_skeleton(const std::string& command, ordered_json inputs) {
  ordered_json j;
  j["command"] = command;
  j["inputs"] = std::move(inputs);
  j["results"] = ordered_json::object();
  j["measured_constants"] = ordered_json::object();
  j["version"] = kVersion;
  return j;
}

std::string decimal(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

BaseGenerator base_by_name(const std::string& name) {
  if (name == "bitrev") return [](int n) { return gen_bit_reversal(n); };
  if (name == "sequential") return [](int n) { return gen_sequential(n); };
  throw std::invalid_argument("unknown base generator: " + name);
}

std::vector<int> parse_int_list(const std::string& csv) {
  std::vector<int> vals;
  std::size_t pos = 0;
  while (pos < csv.size()) {
    std::size_t comma = csv.find(',', pos);
    if (comma == std::string::npos) comma = csv.size();
    vals.push_back(std::stoi(csv.substr(pos, comma - pos)));
    pos = comma + 1;
  }
  return vals;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "wilber: alternation and funnel lower bounds for BST access sequences,\n"
      "sequence composition and hardness amplification, and a parameterized\n"
      "tango-style BST with exact cost accounting"};
  app.require_subcommand(1);
  std::function<int()> action;

  // --- gen ---
  {
    auto* cmd = app.add_subcommand("gen", "generate an access sequence file");
    auto kind = std::make_shared<std::string>();
    auto n = std::make_shared<int>(0);
    auto m = std::make_shared<long long>(-1);
    auto seed = std::make_shared<unsigned long long>(0);
    auto out = std::make_shared<std::string>();
    cmd->add_option("--kind", *kind, "sequential|bitrev|random|padded-random")
        ->required()
        ->check(CLI::IsMember({"sequential", "bitrev", "random", "padded-random"}));
    cmd->add_option("--n", *n, "universe size")->required();
    cmd->add_option("--m", *m, "accesses for random kinds (default n)");
    cmd->add_option("--seed", *seed, "seed for random kinds");
    cmd->add_option("--out", *out, "output sequence file")->required();
    cmd->callback([=, &action] {
      action = [=] {
        AccessSequence seq;
        const std::size_t mm = std::size_t(*m < 0 ? *n : *m);
        if (*kind == "sequential")
          seq = gen_sequential(*n);
        else if (*kind == "bitrev")
          seq = gen_bit_reversal(*n);
        else if (*kind == "random")
          seq = gen_random(*n, mm, *seed);
        else
          seq = pad_uniform(gen_random(*n, mm, *seed));
        write_sequence_file(resolve_out(*out), seq);
        return 0;
      };
    });
  }

  // --- bound ---
  {
    auto* cmd = app.add_subcommand("bound", "compute lower bounds of a sequence");
    auto in = std::make_shared<std::string>();
    auto mode = std::make_shared<std::string>("all");
    auto tree_path = std::make_shared<std::string>();
    auto oracle = std::make_shared<bool>(false);
    auto out = std::make_shared<std::string>();
    cmd->add_option("--in", *in, "sequence file")->required();
    cmd->add_option("--mode", *mode, "alt-exact|alt-tree|funnel|all")
        ->check(CLI::IsMember({"alt-exact", "alt-tree", "funnel", "all"}));
    cmd->add_option("--tree", *tree_path, "reference tree file (alt-tree mode)");
    cmd->add_flag("--oracle", *oracle, "cross-check against the brute-force oracles");
    cmd->add_option("--out", *out, "write the JSON report here instead of stdout");
    cmd->callback([=, &action] {
      action = [=] {
        const AccessSequence seq = read_sequence_file(*in);
        if (seq.accesses.empty())
          throw std::invalid_argument("bound: empty sequence");
        const PointSet P = geometric_view(seq);
        const long long m = (long long)seq.length();

        ordered_json rep = report_skeleton(
            "bound", {{"in", *in}, {"mode", *mode}, {"oracle", *oracle}});
        ordered_json& res = rep["results"];
        res["m"] = m;

        if (*mode == "alt-tree") {
          if (tree_path->empty())
            throw std::invalid_argument("bound: --tree is required for alt-tree mode");
          if (*oracle)
            throw std::invalid_argument(
                "bound: --oracle applies to alt-exact, funnel, or all");
          const ReferenceTree T = read_tree_file(*tree_path);
          const long long v = alt_for_tree(P, T);
          res["alt_tree_value"] = v;
          res["amortized_alt_tree"] = Rational(v, m).str();
          emit_json(rep, *out);
          return 0;
        }

        if (*mode == "alt-exact" || *mode == "all") {
          const long long v = alt_exact(P).value;
          res["alt_value"] = v;
          res["amortized_alt"] = Rational(v, m).str();
          if (*oracle) {
            const long long ov = alt_bruteforce(P);
            res["alt_oracle"] = ov;
            if (ov != v)
              throw consistency_error("alt_exact = " + std::to_string(v) +
                                      " disagrees with the enumeration oracle = " +
                                      std::to_string(ov));
          }
        }
        if (*mode == "funnel" || *mode == "all") {
          const long long v = funnel_bound(P);
          res["funnel_value"] = v;
          res["amortized_funnel"] = Rational(v, m).str();
          if (*oracle) {
            const long long ov = funnel_bound_oracle(P);
            res["funnel_oracle"] = ov;
            if (ov != v)
              throw consistency_error("funnel_bound = " + std::to_string(v) +
                                      " disagrees with the rectangle oracle = " +
                                      std::to_string(ov));
          }
        }
        emit_json(rep, *out);
        return 0;
      };
    });
  }

  // --- compose ---
  {
    auto* cmd = app.add_subcommand("compose", "interleave component sequences");
    auto spec_path = std::make_shared<std::string>();
    auto out = std::make_shared<std::string>();
    cmd->add_option("--spec", *spec_path, "composition spec file")->required();
    cmd->add_option("--out", *out, "output sequence file")->required();
    cmd->callback([=, &action] {
      action = [=] {
        const CompositionSpec spec = read_composition_file(*spec_path);
        write_sequence_file(resolve_out(*out), compose(spec));
        return 0;
      };
    });
  }

  // --- verify ---
  {
    auto* cmd = app.add_subcommand("verify", "randomized property verification");
    auto what = std::make_shared<std::string>();
    auto params = std::make_shared<VerifyParams>();
    auto n_opt = std::make_shared<int>(-1);
    auto out = std::make_shared<std::string>();
    cmd->add_option("--what", *what, "directsum|claim23|lemma31")
        ->required()
        ->check(CLI::IsMember({"directsum", "claim23", "lemma31"}));
    cmd->add_option("--trials", params->trials, "number of randomized trials");
    cmd->add_option("--n", *n_opt, "universe / component width parameter");
    cmd->add_option("--m", params->m, "accesses per trial (0 = default)");
    cmd->add_option("--l", params->l, "max component count");
    cmd->add_option("--seed", params->seed, "base seed");
    cmd->add_option("--out", *out, "write the JSON report here instead of stdout");
    cmd->callback([=, &action] {
      action = [=] {
        VerifyParams p = *params;
        p.n = *n_opt > 0 ? *n_opt
                         : (*what == "directsum" ? 6 : (*what == "claim23" ? 8 : 16));
        VerifyReport r;
        if (*what == "directsum")
          r = verify_directsum(p);
        else if (*what == "claim23")
          r = verify_claim23(p);
        else
          r = verify_lemma31(p);

        ordered_json rep = report_skeleton(
            "verify", {{"what", *what},
                       {"trials", p.trials},
                       {"n", p.n},
                       {"m", p.m},
                       {"l", p.l},
                       {"seed", p.seed}});
        ordered_json& res = rep["results"];
        res["trials"] = r.trials;
        res["failures"] = r.failures;
        res["max_alt_slack_per_m"] = r.max_alt_slack_per_m.str();
        res["min_funnel_margin"] = r.min_funnel_margin;
        res["unclassified_alternations"] = r.unclassified;
        if (!r.first_failure.empty()) res["first_failure"] = r.first_failure;
        rep["measured_constants"]["max_cost_ratio"] = decimal(r.max_cost_ratio);
        emit_json(rep, *out);
        return (r.failures > 0 || r.unclassified > 0) ? 3 : 0;
      };
    });
  }

  // --- amplify ---
  {
    auto* cmd = app.add_subcommand("amplify", "build a recursively composed sequence");
    auto base = std::make_shared<std::string>("bitrev");
    auto n = std::make_shared<int>(0);
    auto r = std::make_shared<int>(1);
    auto min_leaf = std::make_shared<int>(16);
    auto out = std::make_shared<std::string>();
    cmd->add_option("--base", *base, "base generator: bitrev|sequential")
        ->check(CLI::IsMember({"bitrev", "sequential"}));
    cmd->add_option("--n", *n, "universe size, of the form 2^(2^r)")->required();
    cmd->add_option("--R", *r, "power-of-two recursion parameter")->required();
    cmd->add_option("--min-leaf", *min_leaf, "smallest permitted leaf universe");
    cmd->add_option("--out", *out, "output sequence file")->required();
    cmd->callback([=, &action] {
      action = [=] {
        AmplifierConfig cfg{*n, *r, base_by_name(*base), *min_leaf};
        write_sequence_file(resolve_out(*out), amplify(cfg));
        return 0;
      };
    });
  }

  // --- tango ---
  {
    auto* cmd = app.add_subcommand("tango", "run the level-partitioned BST");
    auto in = std::make_shared<std::string>();
    auto k = std::make_shared<int>(1);
    auto per_access = std::make_shared<bool>(false);
    auto out = std::make_shared<std::string>();
    cmd->add_option("--in", *in, "sequence file")->required();
    cmd->add_option("--k", *k, "level height, in [1, log2 n]")->required();
    cmd->add_flag("--per-access", *per_access, "include per-access stats");
    cmd->add_option("--out", *out, "write the JSON report here instead of stdout");
    cmd->callback([=, &action] {
      action = [=] {
        const AccessSequence seq = read_sequence_file(*in);
        TangoTreeK tree(seq.universe_size, *k);
        const CostReport rep = tree.run(seq);

        ordered_json j = report_skeleton(
            "tango", {{"in", *in}, {"n", seq.universe_size}, {"k", *k}});
        ordered_json& res = j["results"];
        res["m"] = seq.length();
        res["total_flips"] = rep.total_a;
        res["flips_per_level"] = rep.total_per_level;
        res["total_node_touches"] = rep.total_touches;
        res["total_restructure_ops"] = rep.total_restructures;
        res["alt_value"] = rep.alt_reference;
        if (*per_access) {
          ordered_json arr = ordered_json::array();
          for (const AccessStats& st : rep.per_access)
            arr.push_back({{"flips", st.a},
                           {"node_touches", st.node_touches},
                           {"restructure_ops", st.restructure_ops}});
          res["per_access"] = std::move(arr);
        }
        j["measured_constants"]["cost_budget"] = decimal(rep.cost_budget);
        j["measured_constants"]["measured_constant"] = decimal(rep.measured_constant);
        emit_json(j, *out);
        return 0;
      };
    });
  }

  // --- experiment ---
  {
    auto* cmd = app.add_subcommand(
        "experiment", "amortized bounds of amplified sequences, as CSV");
    auto what = std::make_shared<std::string>("tradeoff");
    auto base = std::make_shared<std::string>("bitrev");
    auto n = std::make_shared<int>(0);
    auto r_list = std::make_shared<std::string>();
    auto min_leaf = std::make_shared<int>(16);
    auto out = std::make_shared<std::string>();
    cmd->add_option("--what", *what, "experiment kind")
        ->check(CLI::IsMember({"tradeoff"}));
    cmd->add_option("--base", *base, "base generator: bitrev|sequential")
        ->check(CLI::IsMember({"bitrev", "sequential"}));
    cmd->add_option("--n", *n, "universe size, of the form 2^(2^r)")->required();
    cmd->add_option("--R", *r_list, "comma-separated recursion parameters")->required();
    cmd->add_option("--min-leaf", *min_leaf, "smallest permitted leaf universe");
    cmd->add_option("--out", *out, "output CSV file")->required();
    cmd->callback([=, &action] {
      action = [=] {
        AmplifierConfig cfg{*n, 1, base_by_name(*base), *min_leaf};
        const auto rows = amplification_report(cfg, parse_int_list(*r_list));
        std::string csv = "R,m,alt,funnel,amortized_alt,amortized_funnel\n";
        for (const AmplificationRow& row : rows) {
          csv += std::to_string(row.R) + "," + std::to_string(row.m) + "," +
                 std::to_string(row.alt) + "," + std::to_string(row.funnel) + "," +
                 decimal(row.amortized_alt.approx()) + "," +
                 decimal(row.amortized_funnel.approx()) + "\n";
        }
        emit_text(csv, *out);
        return 0;
      };
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    return action();
  } catch (const consistency_error& e) {
    std::fprintf(stderr, "internal consistency failure: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
