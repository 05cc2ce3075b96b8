// Command-line surface for the bounded-arithmetic toolkit: term evaluation,
// Δ₀* decisions, prenex classification, tableaux proving/checking, cuts,
// numeral and Gödel encodings, the axiom-system lab, and the chain benchmark.

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "lstar/chain_bench.hpp"
#include "lstar/checker.hpp"
#include "lstar/enrichment.hpp"
#include "lstar/godel.hpp"
#include "lstar/prenex.hpp"
#include "lstar/proof_io.hpp"
#include "lstar/search.hpp"
#include "lstar/semantics.hpp"
#include "lstar/systems.hpp"

using namespace lstar;

namespace {

constexpr int kExitTrue = 0;
constexpr int kExitFalse = 1;
constexpr int kExitUsage = 2;

std::uint64_t default_budget() {
  if (const char* env = std::getenv("LSTAR_BUDGET")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw Error("LSTAR_BUDGET is not a number");
    }
  }
  return 100'000;
}

// A basis is a registered name or a file of sentences (one per line,
// '#' comments allowed).
systems::AxiomBasis resolve_basis(const std::string& spec) {
  if (spec.empty() || spec == "empty") return systems::AxiomBasis("empty");
  if (spec == "relational_arith") return systems::relational_arith_basis();
  if (spec.rfind("chain", 0) == 0 && spec.size() > 5 &&
      spec.find_first_not_of("0123456789", 5) == std::string::npos) {
    return bench::chain_basis(std::stoi(spec.substr(5)));
  }
  std::string content = io::read_file(spec);
  systems::AxiomBasis basis(spec);
  int lineno = 0, count = 0;
  std::string line;
  std::istringstream in(content);
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      basis.add("line" + std::to_string(lineno), lang::parse_formula(line));
      ++count;
    } catch (const Error& e) {
      throw Error(spec + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  if (count == 0) throw Error("basis file '" + spec + "' contains no axioms");
  return basis;
}

struct Output {
  bool structured = false;
  void emit(const std::string& text_form, const nlohmann::ordered_json& machine) const {
    if (structured)
      std::cout << machine.dump(2) << "\n";
    else
      std::cout << text_form << "\n";
  }
};

int cmd_eval(const std::string& term_text, const Output& out) {
  auto t = lang::parse_term(term_text);
  semantics::Environment env;
  auto value = semantics::eval_term(t, env);
  out.emit(value.str(), {{"value", value.str()}});
  return kExitTrue;
}

int cmd_decide(const std::string& text, std::uint64_t ceiling, const Output& out) {
  auto f = lang::parse_formula(text);
  bool value = semantics::decide_delta0(f, ceiling);
  out.emit(value ? "true" : "false", {{"value", value}});
  return value ? kExitTrue : kExitFalse;
}

int cmd_classify(const std::string& text, const Output& out) {
  auto f = lang::parse_formula(text);
  auto c = prenex::classify(f);
  out.emit(c.to_string(), {{"class", c.to_string()}, {"minimal", c.minimal}});
  return kExitTrue;
}

int cmd_prenex(const std::string& text, const Output& out) {
  auto f = lang::parse_formula(text);
  auto p = prenex::to_prenex(f);
  out.emit(lang::print_formula(p),
           {{"prenex", lang::print_formula(p)}, {"class", prenex::classify(p).to_string()}});
  return kExitTrue;
}

int cmd_encode(const std::string& n_text, const Output& out) {
  semantics::BigNat n;
  try {
    n = semantics::BigNat(n_text);
  } catch (const std::exception&) {
    throw Error("not a natural number: '" + n_text + "'");
  }
  if (n < 0) throw Error("encode expects a non-negative integer");
  auto t = semantics::encode_nat(n);
  out.emit(lang::print_term(t),
           {{"term", lang::print_term(t)},
            {"function_symbols", semantics::function_symbol_count(t)}});
  return kExitTrue;
}

int cmd_godel(const std::string& text, const Output& out) {
  auto f = lang::parse_formula(text);
  auto g = godel::godel_number(f);
  out.emit(g.to_string(), {{"godel", g.to_string()}});
  return kExitTrue;
}

int cmd_prove(const std::string& goal_text, const std::string& basis_spec,
              const std::string& level_text, std::uint64_t budget,
              const std::string& out_file, const Output& out) {
  auto goal = lang::parse_formula(goal_text);
  auto basis = resolve_basis(basis_spec);
  auto level = enrichment::EnrichmentLevel::parse(level_text);
  auto r = tableaux::prove(goal, basis, level, budget);
  if (!r.found()) {
    out.emit("not found within budget (" + std::to_string(r.expansions) + " expansions)",
             {{"found", false}, {"expansions", r.expansions}});
    return kExitFalse;
  }
  nlohmann::ordered_json machine = {{"found", true},
                                    {"size", tableaux::proof_size(*r.proof)},
                                    {"expansions", r.expansions}};
  std::string text = "proof found: " + std::to_string(tableaux::proof_size(*r.proof)) +
                     " nodes, " + std::to_string(r.expansions) + " expansions";
  if (!out_file.empty()) {
    io::save_proof(*r.proof, out_file);
    machine["file"] = out_file;
    out.emit(text + " -> " + out_file, machine);
  } else {
    machine["proof"] = nlohmann::ordered_json::parse(io::proof_to_text(*r.proof));
    out.emit(text + "\n" + io::proof_to_text(*r.proof), machine);
  }
  return kExitTrue;
}

int cmd_check(const std::string& file, std::string basis_spec, std::string level_text,
              const Output& out) {
  auto p = io::load_proof(file);
  if (basis_spec.empty()) basis_spec = p.basis_id;
  if (level_text.empty()) level_text = p.level.to_string();
  auto basis = resolve_basis(basis_spec);
  auto level = enrichment::EnrichmentLevel::parse(level_text);
  auto v = tableaux::check_proof(p, basis, level);
  if (v.valid) {
    out.emit("Valid", {{"verdict", "Valid"}});
    return kExitTrue;
  }
  out.emit("Invalid: " + v.reason + " (node " + std::to_string(v.node) + ")",
           {{"verdict", "Invalid"}, {"reason", v.reason}, {"node", v.node}});
  return kExitFalse;
}

int cmd_cut(const std::string& psi_file, const std::string& impl_file,
            const std::string& basis_spec, const std::string& out_file, const Output& out) {
  auto p1 = io::load_proof(psi_file);
  auto p2 = io::load_proof(impl_file);
  auto basis = resolve_basis(basis_spec.empty() ? p1.basis_id : basis_spec);
  auto cut = enrichment::cut_combine(p1, p2, basis);
  std::string text = "cut proof: " + std::to_string(tableaux::proof_size(cut)) +
                     " nodes, level " + cut.level.to_string();
  if (!out_file.empty()) {
    io::save_proof(cut, out_file);
    out.emit(text + " -> " + out_file,
             {{"size", tableaux::proof_size(cut)},
              {"level", cut.level.to_string()},
              {"file", out_file}});
  } else if (out.structured) {
    out.emit("", nlohmann::ordered_json::parse(io::proof_to_text(cut)));
  } else {
    out.emit(text + "\n" + io::proof_to_text(cut), {});
  }
  return kExitTrue;
}

int cmd_system_classify(const std::string& basis_spec, const std::string& level_text,
                        std::uint64_t budget, const Output& out) {
  systems::GeneralizedArithmetic g{resolve_basis(basis_spec),
                                   enrichment::EnrichmentLevel::parse(level_text)};
  auto tc = systems::classify_type(g, budget);
  nlohmann::ordered_json machine = {{"class", tc.name()}, {"budget", budget}};
  std::string text = tc.name();
  machine["evidence"] = nlohmann::ordered_json::array();
  for (const auto& ev : tc.evidence) {
    const char* which = ev.which == systems::Totality::Successor   ? "successor"
                        : ev.which == systems::Totality::Addition ? "addition"
                                                                  : "multiplication";
    nlohmann::ordered_json je = {{"sentence", which}, {"expansions", ev.expansions}};
    if (ev.proof) {
      je["proof_size"] = tableaux::proof_size(*ev.proof);
      text += std::string("\n  ") + which + ": proved, " +
              std::to_string(tableaux::proof_size(*ev.proof)) + " nodes";
    } else {
      je["proof_size"] = nullptr;
      text += std::string("\n  ") + which + ": unproven within budget";
    }
    machine["evidence"].push_back(std::move(je));
  }
  out.emit(text, machine);
  return kExitTrue;
}

int cmd_system_selfref(const std::string& basis_spec, const std::string& level_text,
                       const Output& out) {
  systems::GeneralizedArithmetic g{resolve_basis(basis_spec),
                                   enrichment::EnrichmentLevel::parse(level_text)};
  auto ext = systems::self_ref_extend(g);
  auto rec = systems::selfref_record_of(ext);
  const auto& sr = *rec.selfref;
  std::string text = "system: " + sr.system_name + "\naxioms: " +
                     std::to_string(ext.basis.size()) + "\nnumber: " + sr.number.to_string() +
                     "\n" + rec.display + "\nnote: " + rec.realization_note;
  out.emit(text, {{"system", sr.system_name},
                  {"axioms", ext.basis.size()},
                  {"number", sr.number.to_string()},
                  {"display", rec.display},
                  {"note", rec.realization_note}});
  return kExitTrue;
}

int cmd_system_consearch(const std::string& basis_spec, const std::string& level_text,
                         const std::string& mode_text, std::uint64_t budget,
                         const std::string& record_file, const Output& out) {
  systems::GeneralizedArithmetic g{resolve_basis(basis_spec),
                                   enrichment::EnrichmentLevel::parse(level_text)};
  systems::ConsistencyMode mode;
  int n = 0;
  if (mode_text == "level0minus") {
    mode = systems::ConsistencyMode::Level0Minus;
  } else if (mode_text.rfind("level:", 0) == 0) {
    mode = systems::ConsistencyMode::LevelN;
    try {
      n = std::stoi(mode_text.substr(6));
    } catch (const std::exception&) {
      throw Error("bad mode '" + mode_text + "'");
    }
  } else {
    throw Error("mode must be level0minus or level:n");
  }

  auto t0 = std::chrono::steady_clock::now();
  auto v = systems::consistency_search(g, mode, n, budget);
  double wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();

  io::RunRecord rec;
  rec.system_name = g.basis.name();
  rec.mode = mode_text;
  rec.budget = budget;
  rec.expansions = v.expansions;
  rec.verdict = v.refutation_found ? "RefutationFound" : "NoRefutationFound";
  rec.wall_ms = wall_ms;
  if (v.refutation_found && !record_file.empty()) {
    if (v.proof_contradiction) {
      std::string w = record_file + ".witness.json";
      io::save_proof(*v.proof_contradiction, w);
      rec.witness_files.push_back(w);
    }
    if (v.proof_pos) {
      std::string w = record_file + ".witness_pos.json";
      io::save_proof(*v.proof_pos, w);
      rec.witness_files.push_back(w);
    }
    if (v.proof_neg) {
      std::string w = record_file + ".witness_neg.json";
      io::save_proof(*v.proof_neg, w);
      rec.witness_files.push_back(w);
    }
  }
  if (!record_file.empty()) io::write_file(record_file, io::run_record_to_text(rec));

  nlohmann::ordered_json machine = {{"verdict", rec.verdict},
                                    {"budget", budget},
                                    {"expansions", v.expansions},
                                    {"wall_ms", wall_ms}};
  std::string text = rec.verdict + " (budget " + std::to_string(budget) + ", " +
                     std::to_string(v.expansions) + " expansions)";
  if (v.upsilon) {
    machine["upsilon"] = lang::print_formula(*v.upsilon);
    machine["pair_x"] = v.pair_x->to_string();
    machine["pair_y"] = v.pair_y->to_string();
    text += "\n  upsilon: " + lang::print_formula(*v.upsilon);
  }
  out.emit(text, machine);
  return v.refutation_found ? kExitTrue : kExitFalse;
}

int cmd_bench_chain(int n_max, const std::string& level_text, std::uint64_t budget,
                    const std::string& out_file, const Output& out) {
  auto level = enrichment::EnrichmentLevel::parse(level_text);
  auto report = bench::run_chain_bench(n_max, level, budget);
  std::string rendered = out.structured ? report.to_structured() : report.to_text();
  if (!out_file.empty()) {
    io::write_file(out_file, rendered);
    std::cout << "report -> " << out_file << "\n";
  } else {
    std::cout << rendered;
  }
  return kExitTrue;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"toolkit for the bounded-arithmetic language, tableaux deduction and the "
               "self-justification laboratory"};
  app.require_subcommand(1);

  std::string format = "text";
  app.add_option("--format", format, "output format")
      ->check(CLI::IsMember({"text", "structured"}));
  std::uint64_t seed = 20240501;
  app.add_option("--seed", seed, "seed for randomized harnesses");

  std::string arg_text, arg_basis = "empty", arg_level = "none", arg_out;
  std::string arg_mode = "level0minus", arg_record, arg_file2;
  std::uint64_t arg_budget = 0;
  std::uint64_t arg_ceiling = 1'000'000;
  int arg_nmax = 10;

  auto* c_eval = app.add_subcommand("eval", "evaluate a closed term");
  c_eval->add_option("term", arg_text, "term text")->required();

  auto* c_decide = app.add_subcommand("decide", "decide a closed Δ₀* sentence");
  c_decide->add_option("sentence", arg_text)->required();
  c_decide->add_option("--ceiling", arg_ceiling, "assignment ceiling");

  auto* c_classify = app.add_subcommand("classify", "prenex class of a sentence");
  c_classify->add_option("sentence", arg_text)->required();

  auto* c_prenex = app.add_subcommand("prenex", "prenex normal form of a sentence");
  c_prenex->add_option("sentence", arg_text)->required();

  auto* c_encode = app.add_subcommand("encode", "binary-like numeral for an integer");
  c_encode->add_option("n", arg_text)->required();

  auto* c_godel = app.add_subcommand("godel", "Gödel number of a sentence");
  c_godel->add_option("sentence", arg_text)->required();

  auto* c_prove = app.add_subcommand("prove", "search for a tableaux proof");
  c_prove->add_option("goal", arg_text)->required();
  c_prove->add_option("--basis", arg_basis, "basis name or file");
  c_prove->add_option("--level", arg_level, "enrichment level");
  c_prove->add_option("--budget", arg_budget, "node-expansion budget");
  c_prove->add_option("--out", arg_out, "write the proof file here");

  auto* c_check = app.add_subcommand("check", "check a proof file");
  c_check->add_option("proof-file", arg_text)->required();
  std::string check_basis, check_level;
  c_check->add_option("--basis", check_basis, "basis name or file (default: from the file)");
  c_check->add_option("--level", check_level, "enrichment level (default: from the file)");

  auto* c_cut = app.add_subcommand("cut", "combine proofs of Ψ and Ψ->Φ into a proof of Φ");
  c_cut->add_option("psi-proof", arg_text)->required();
  c_cut->add_option("impl-proof", arg_file2)->required();
  std::string cut_basis;
  c_cut->add_option("--basis", cut_basis, "basis name or file (default: from the first file)");
  c_cut->add_option("--out", arg_out, "write the combined proof here");

  auto* c_system = app.add_subcommand("system", "axiom-system laboratory");
  c_system->require_subcommand(1);
  auto* c_sys_classify = c_system->add_subcommand("classify", "Type-S/A/M/NS classification");
  c_sys_classify->add_option("--basis", arg_basis);
  c_sys_classify->add_option("--level", arg_level);
  c_sys_classify->add_option("--budget", arg_budget);
  auto* c_sys_selfref = c_system->add_subcommand("selfref", "extend with the SelfRef axiom");
  c_sys_selfref->add_option("--basis", arg_basis);
  c_sys_selfref->add_option("--level", arg_level);
  auto* c_sys_consearch = c_system->add_subcommand("consearch", "bounded refutation search");
  c_sys_consearch->add_option("--basis", arg_basis);
  c_sys_consearch->add_option("--level", arg_level);
  c_sys_consearch->add_option("--mode", arg_mode, "level0minus or level:n");
  c_sys_consearch->add_option("--budget", arg_budget);
  c_sys_consearch->add_option("--record", arg_record, "write the run record here");

  auto* c_bench = app.add_subcommand("bench", "benchmark harnesses");
  c_bench->require_subcommand(1);
  auto* c_bench_chain = c_bench->add_subcommand("chain", "implication-chain proof lengths");
  c_bench_chain->add_option("--n-max", arg_nmax)->required();
  c_bench_chain->add_option("--level", arg_level);
  c_bench_chain->add_option("--budget", arg_budget);
  c_bench_chain->add_option("--out", arg_out, "write the report here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitUsage;
  }

  Output out{format == "structured"};
  (void)seed;
  try {
    if (arg_budget == 0) arg_budget = default_budget();
    if (c_eval->parsed()) return cmd_eval(arg_text, out);
    if (c_decide->parsed()) return cmd_decide(arg_text, arg_ceiling, out);
    if (c_classify->parsed()) return cmd_classify(arg_text, out);
    if (c_prenex->parsed()) return cmd_prenex(arg_text, out);
    if (c_encode->parsed()) return cmd_encode(arg_text, out);
    if (c_godel->parsed()) return cmd_godel(arg_text, out);
    if (c_prove->parsed())
      return cmd_prove(arg_text, arg_basis, arg_level, arg_budget, arg_out, out);
    if (c_check->parsed()) return cmd_check(arg_text, check_basis, check_level, out);
    if (c_cut->parsed()) return cmd_cut(arg_text, arg_file2, cut_basis, arg_out, out);
    if (c_sys_classify->parsed())
      return cmd_system_classify(arg_basis, arg_level, arg_budget, out);
    if (c_sys_selfref->parsed()) return cmd_system_selfref(arg_basis, arg_level, out);
    if (c_sys_consearch->parsed())
      return cmd_system_consearch(arg_basis, arg_level, arg_mode, arg_budget, arg_record, out);
    if (c_bench_chain->parsed())
      return cmd_bench_chain(arg_nmax, arg_level, arg_budget, arg_out, out);
    std::cerr << "no subcommand\n";
    return kExitUsage;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}
