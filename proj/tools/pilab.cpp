// pilab: command-line front end for prime-implicant enumeration and bound checks.
//
// Exit codes: 0 ok, 1 usage, 2 input, 3 size limit, 4 verification failure.

#include <CLI11.hpp>
#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "pilab/dimacs.hpp"
#include "pilab/errors.hpp"
#include "pilab/generators.hpp"
#include "pilab/harness.hpp"
#include "pilab/implication_graph.hpp"
#include "pilab/structural.hpp"

namespace fs = std::filesystem;
using namespace pilab;

namespace {

enum Exit { kOk = 0, kUsage = 1, kInput = 2, kSize = 3, kVerify = 4 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Source {
  std::string input;
  std::string family;

  void attach(CLI::App* cmd) {
    cmd->add_option("--input,-i", input, "DIMACS file, or - for stdin (default)");
    cmd->add_option("--family,-f", family, "generator spec instead of a file, e.g. scheder-t:m=2");
  }

  CnfFormula load() const {
    if (!family.empty()) {
      if (!input.empty()) throw UsageError("--input and --family are mutually exclusive");
      return generate(family).formula;
    }
    if (input.empty() || input == "-") return parse_dimacs(std::cin);
    std::ifstream in(input);
    if (!in) throw InputError("cannot read " + input);
    return parse_dimacs(in);
  }
};

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw InputError("cannot write " + out_path);
  out << text;
}

Method parse_method(const std::string& name, const CnfFormula& formula) {
  if (name.empty()) return default_method(formula);
  if (name == "structural") {
    if (formula.width() > 2)
      throw UsageError("structural method needs a 2-CNF; input has width " + std::to_string(formula.width()));
    return Method::Structural;
  }
  if (name == "oracle") return Method::Oracle;
  throw UsageError("unknown method '" + name + "'");
}

std::vector<std::pair<std::string, CnfFormula>> load_corpus(const std::string& dir) {
  if (!fs::is_directory(dir)) throw InputError("corpus directory " + dir + " not found");
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".cnf") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  std::vector<std::pair<std::string, CnfFormula>> out;
  for (const auto& path : files) {
    std::ifstream in(path);
    try {
      out.emplace_back(path.filename().string(), parse_dimacs(in));
    } catch (const ParseError& e) {
      throw InputError(path.string() + ": " + e.what());
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Prime-implicant enumeration and bound verification for CNF formulas"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "write a generated formula as DIMACS");
  std::string gen_family;
  long long gen_m = 0, gen_n = 0, gen_k = 0;
  std::uint64_t gen_seed = 0;
  bool gen_degenerate = false;
  std::string gen_out;
  gen->add_option("family", gen_family, "scheder-t | cm-block | cm | random")->required();
  gen->add_option("--m", gen_m, "blocks (scheder-t) or clauses (random)");
  gen->add_option("--n", gen_n, "variables (cm, random)");
  gen->add_option("--k", gen_k, "block size (cm-block, cm)");
  gen->add_option("--seed", gen_seed, "seed (random)");
  gen->add_flag("--degenerate", gen_degenerate, "random: allow both literals on one variable");
  gen->add_option("--out,-o", gen_out, "output file (default stdout)");

  // enumerate
  auto* enumerate = app.add_subcommand("enumerate", "list prime implicants in canonical order");
  Source enum_src;
  enum_src.attach(enumerate);
  std::string enum_method, enum_format = "text", enum_out;
  enumerate->add_option("--method,-m", enum_method, "structural | oracle (default by width)");
  enumerate->add_option("--format", enum_format, "text | json")->check(CLI::IsMember({"text", "json"}));
  enumerate->add_option("--out,-o", enum_out, "output file");

  // count
  auto* count = app.add_subcommand("count", "report prime-implicant counts against the bounds");
  Source count_src;
  count_src.attach(count);
  std::string count_method, count_format = "text", count_out;
  count->add_option("--method,-m", count_method, "structural | oracle");
  count->add_option("--format", count_format, "text | json")->check(CLI::IsMember({"text", "json"}));
  count->add_option("--out,-o", count_out, "output file");

  // diff
  auto* diff = app.add_subcommand("diff", "compare structural and oracle enumerations");
  Source diff_src;
  diff_src.attach(diff);

  // verify
  auto* verify = app.add_subcommand("verify", "run the invariant suite over formulas");
  std::vector<std::string> verify_families;
  std::string verify_corpus;
  verify->add_option("--family,-f", verify_families, "generator spec (repeatable)");
  verify->add_option("--corpus", verify_corpus, "directory of .cnf files");

  // graph
  auto* graph = app.add_subcommand("graph", "export the implication or variable graph as DOT");
  Source graph_src;
  graph_src.attach(graph);
  std::string graph_which = "implication", graph_out;
  bool graph_dot = true;
  graph->add_option("--which", graph_which, "implication | variable")
      ->check(CLI::IsMember({"implication", "variable"}));
  graph->add_flag("--dot", graph_dot, "DOT output (the only format)");
  graph->add_option("--out,-o", graph_out, "output file");

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

  const OracleLimits limits = [] {
    try {
      return OracleLimits::from_env();
    } catch (const PreconditionError& e) {
      std::cerr << "error: " << e.what() << '\n';
      std::exit(kUsage);
    }
  }();

  try {
    if (*gen) {
      Generated g = [&] {
        if (gen_family == "scheder-t") return gen_scheder_t(gen_m);
        if (gen_family == "cm-block") return gen_cm_block(gen_k);
        if (gen_family == "cm") return gen_cm_formula(gen_n, gen_k);
        if (gen_family == "random")
          return gen_random_2cnf(gen_n, gen_m, gen_seed, RandomOptions{gen_degenerate});
        throw UsageError("unknown family '" + gen_family + "'");
      }();
      emit(g.to_dimacs(), gen_out);
      return kOk;
    }

    if (*enumerate) {
      const CnfFormula formula = enum_src.load();
      const auto pis = enumerate_with(formula, parse_method(enum_method, formula), limits);
      emit(enum_format == "json" ? format_json(pis) : format_text(pis), enum_out);
      return kOk;
    }

    if (*count) {
      const CnfFormula formula = count_src.load();
      const BoundReport report = make_bound_report(formula, parse_method(count_method, formula), limits);
      emit(count_format == "json" ? report_json(report) : report_text(report), count_out);
      return report.violations.empty() ? kOk : kVerify;
    }

    if (*diff) {
      const CnfFormula formula = diff_src.load();
      if (formula.width() > 2) throw UsageError("diff needs a 2-CNF");
      const auto structural = enumerate_prime_implicants(formula, limits);
      const auto oracle = oracle_prime_implicants(formula, limits);
      const SetDiff d = set_difference(structural, oracle);
      for (const auto& rho : d.only_left) std::cout << "+ " << rho.to_string() << "  (structural only)\n";
      for (const auto& rho : d.only_right) std::cout << "- " << rho.to_string() << "  (oracle only)\n";
      std::cerr << structural.size() << " structural, " << oracle.size() << " oracle, "
                << d.only_left.size() + d.only_right.size() << " differing\n";
      return d.empty() ? kOk : kVerify;
    }

    if (*verify) {
      std::vector<std::pair<std::string, CnfFormula>> inputs;
      for (const auto& spec : verify_families) inputs.emplace_back(spec, generate(spec).formula);
      if (!verify_corpus.empty())
        for (auto& item : load_corpus(verify_corpus)) inputs.push_back(std::move(item));
      if (inputs.empty()) throw UsageError("verify needs --family or --corpus");

      std::vector<VerifyResult> results(inputs.size());
      std::vector<std::string> errors(inputs.size());
#pragma omp parallel for schedule(dynamic, 1)
      for (std::size_t i = 0; i < inputs.size(); ++i) {
        try {
          results[i] = verify_formula(inputs[i].second, limits);
        } catch (const std::exception& e) {
          errors[i] = e.what();
        }
      }

      std::size_t failed = 0;
      for (std::size_t i = 0; i < inputs.size(); ++i) {
        const auto& r = results[i];
        const bool ok = errors[i].empty() && r.ok();
        failed += !ok;
        std::cout << (ok ? "ok   " : "FAIL ") << inputs[i].first << "  checks=" << r.checks;
        if (!r.skipped.empty()) std::cout << " skipped=" << r.skipped.size();
        std::cout << '\n';
        if (!errors[i].empty()) std::cout << "  error: " << errors[i] << '\n';
        for (const auto& v : r.violations) std::cout << "  violation: " << v << '\n';
        for (const auto& s : r.skipped) std::cout << "  skipped: " << s << '\n';
        for (const auto& s : r.notes) std::cout << "  note: " << s << '\n';
      }
      std::cout << inputs.size() - failed << "/" << inputs.size() << " formulas passed\n";
      return failed == 0 ? kOk : kVerify;
    }

    if (*graph) {
      const CnfFormula formula = graph_src.load();
      const auto pre = preprocess(formula);
      if (!pre) throw InputError("formula is refuted by unit propagation; no digraph to draw");
      const ImplicationDigraph digraph = ImplicationDigraph::build(pre->residual);
      emit(graph_which == "variable" ? variable_dot(build_variable_graph(digraph)) : implication_dot(digraph),
           graph_out);
      return kOk;
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInput;
  } catch (const ParseError& e) {
    std::cerr << "error: input " << e.what() << '\n';
    return kInput;
  } catch (const SizeLimitError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kSize;
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
