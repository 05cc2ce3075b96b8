#include "lstar/proof_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace lstar::io {

using json = nlohmann::ordered_json;
using tableaux::JustKind;
using tableaux::Proof;
using tableaux::ProofNode;

namespace {

json justification_to_json(const tableaux::Justification& j) {
  json out;
  switch (j.kind) {
    case JustKind::Root:
      out["kind"] = "root";
      break;
    case JustKind::ProperAxiom:
      out["kind"] = "axiom";
      if (!j.axiom_id.empty()) out["axiom"] = j.axiom_id;
      break;
    case JustKind::LogicalAxiom:
      out["kind"] = "logical";
      out["tag"] = j.lem_tag.empty() ? "lem" : j.lem_tag;
      break;
    case JustKind::RuleApp:
      out["kind"] = "rule";
      out["rule"] = j.rule;
      out["ancestor"] = j.ancestor;
      if (j.rule == 5 || j.rule == 6) out["param"] = j.param;
      if (j.rule == 7 || j.rule == 8) out["term"] = lang::print_term(j.term);
      break;
  }
  return out;
}

tableaux::Justification justification_from_json(const json& in) {
  tableaux::Justification j;
  std::string kind = in.at("kind").get<std::string>();
  if (kind == "root") {
    j.kind = JustKind::Root;
  } else if (kind == "axiom") {
    j.kind = JustKind::ProperAxiom;
    if (in.contains("axiom")) j.axiom_id = in.at("axiom").get<std::string>();
  } else if (kind == "logical") {
    j.kind = JustKind::LogicalAxiom;
    j.lem_tag = in.value("tag", "lem");
  } else if (kind == "rule") {
    j.kind = JustKind::RuleApp;
    j.rule = in.at("rule").get<int>();
    j.ancestor = in.at("ancestor").get<int>();
    if (j.rule == 5 || j.rule == 6) j.param = in.at("param").get<std::string>();
    if (j.rule == 7 || j.rule == 8)
      j.term = lang::parse_term(in.at("term").get<std::string>(), /*allow_parameters=*/true);
  } else {
    throw Error("unknown justification kind '" + kind + "' in proof file");
  }
  return j;
}

}  // namespace

std::string proof_to_text(const Proof& p) {
  json out;
  out["goal"] = lang::print_formula(p.goal);
  out["basis"] = p.basis_id;
  out["level"] = p.level.to_string();
  out["nodes"] = json::array();
  for (const ProofNode& n : p.nodes) {
    json jn;
    jn["id"] = n.id;
    if (n.parent < 0)
      jn["parent"] = nullptr;
    else
      jn["parent"] = n.parent;
    jn["sentence"] = lang::print_formula(n.sentence);
    jn["justification"] = justification_to_json(n.just);
    out["nodes"].push_back(std::move(jn));
  }
  return out.dump(2) + "\n";
}

Proof proof_from_text(const std::string& text) {
  json in;
  try {
    in = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(std::string("malformed proof file: ") + e.what());
  }
  Proof p;
  try {
    p.goal = lang::parse_formula(in.at("goal").get<std::string>(), /*allow_parameters=*/true);
    p.basis_id = in.at("basis").get<std::string>();
    p.level = enrichment::EnrichmentLevel::parse(in.at("level").get<std::string>());
    for (const auto& jn : in.at("nodes")) {
      ProofNode n;
      n.id = jn.at("id").get<int>();
      n.parent = jn.at("parent").is_null() ? -1 : jn.at("parent").get<int>();
      n.sentence = lang::parse_formula(jn.at("sentence").get<std::string>(),
                                       /*allow_parameters=*/true);
      n.just = justification_from_json(jn.at("justification"));
      p.nodes.push_back(std::move(n));
    }
  } catch (const json::exception& e) {
    throw Error(std::string("malformed proof file: ") + e.what());
  }
  return p;
}

void save_proof(const Proof& p, const std::string& path) { write_file(path, proof_to_text(p)); }

Proof load_proof(const std::string& path) { return proof_from_text(read_file(path)); }

std::string run_record_to_text(const RunRecord& r) {
  json out;
  out["system"] = r.system_name;
  out["mode"] = r.mode;
  out["budget"] = r.budget;
  out["expansions"] = r.expansions;
  out["verdict"] = r.verdict;
  out["witness_files"] = r.witness_files;
  out["wall_ms"] = r.wall_ms;
  return out.dump(2) + "\n";
}

RunRecord run_record_from_text(const std::string& text) {
  json in;
  try {
    in = json::parse(text);
    RunRecord r;
    r.system_name = in.at("system").get<std::string>();
    r.mode = in.at("mode").get<std::string>();
    r.budget = in.at("budget").get<std::uint64_t>();
    r.expansions = in.at("expansions").get<std::uint64_t>();
    r.verdict = in.at("verdict").get<std::string>();
    r.witness_files = in.at("witness_files").get<std::vector<std::string>>();
    r.wall_ms = in.at("wall_ms").get<double>();
    return r;
  } catch (const json::exception& e) {
    throw Error(std::string("malformed run record: ") + e.what());
  }
}

std::string schema_record_to_text(const systems::SchemaRecord& r) {
  json out;
  using Kind = systems::SchemaRecord::Kind;
  out["kind"] = r.kind == Kind::Group2 ? "group2" : r.kind == Kind::Group3 ? "group3" : "selfref";
  out["system"] = r.system_name;
  out["display"] = r.display;
  out["note"] = r.realization_note;
  if (r.phi_number) out["phi_number"] = r.phi_number->to_string();
  if (r.phi) out["phi"] = lang::print_formula(*r.phi);
  if (r.witness_proof) out["witness"] = json::parse(proof_to_text(*r.witness_proof));
  if (r.selfref) {
    out["selfref"] = {{"system", r.selfref->system_name},
                      {"level", r.selfref->level.to_string()},
                      {"fingerprint", r.selfref->basis_fingerprint},
                      {"number", r.selfref->number.to_string()}};
  }
  return out.dump(2) + "\n";
}

systems::SchemaRecord schema_record_from_text(const std::string& text) {
  using Kind = systems::SchemaRecord::Kind;
  try {
    json in = json::parse(text);
    systems::SchemaRecord r;
    std::string kind = in.at("kind").get<std::string>();
    r.kind = kind == "group2" ? Kind::Group2 : kind == "group3" ? Kind::Group3 : Kind::SelfRef;
    if (kind != "group2" && kind != "group3" && kind != "selfref")
      throw Error("unknown schema record kind '" + kind + "'");
    r.system_name = in.at("system").get<std::string>();
    r.display = in.at("display").get<std::string>();
    r.realization_note = in.at("note").get<std::string>();
    if (in.contains("phi_number"))
      r.phi_number = godel::GodelNumber{semantics::BigNat(in.at("phi_number").get<std::string>())};
    if (in.contains("phi")) r.phi = lang::parse_formula(in.at("phi").get<std::string>());
    if (in.contains("witness")) r.witness_proof = proof_from_text(in.at("witness").dump(2) + "\n");
    if (in.contains("selfref")) {
      godel::SelfRefRecord sr;
      const auto& js = in.at("selfref");
      sr.system_name = js.at("system").get<std::string>();
      sr.level = enrichment::EnrichmentLevel::parse(js.at("level").get<std::string>());
      sr.basis_fingerprint = js.at("fingerprint").get<std::uint64_t>();
      sr.number = godel::GodelNumber{semantics::BigNat(js.at("number").get<std::string>())};
      r.selfref = sr;
    }
    return r;
  } catch (const json::exception& e) {
    throw Error(std::string("malformed schema record: ") + e.what());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  out << content;
}

}  // namespace lstar::io
