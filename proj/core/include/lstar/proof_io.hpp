#pragma once

// Structured text formats: proof files (the checker's exchange format),
// consistency-search run records, and chain-bench reports. Writers are
// canonical (fixed field order, two-space indentation, LF endings) so that
// read-then-write reproduces a written file byte for byte.

#include <string>

#include "lstar/proof.hpp"
#include "lstar/systems.hpp"

namespace lstar::io {

std::string proof_to_text(const tableaux::Proof& p);
tableaux::Proof proof_from_text(const std::string& text);

void save_proof(const tableaux::Proof& p, const std::string& path);
tableaux::Proof load_proof(const std::string& path);

struct RunRecord {
  std::string system_name;
  std::string mode;  // "level0minus" or "level:n"
  std::uint64_t budget = 0;
  std::uint64_t expansions = 0;
  std::string verdict;  // "RefutationFound" or "NoRefutationFound"
  std::vector<std::string> witness_files;
  double wall_ms = 0;
};

std::string run_record_to_text(const RunRecord& r);
RunRecord run_record_from_text(const std::string& text);

std::string schema_record_to_text(const systems::SchemaRecord& r);
systems::SchemaRecord schema_record_from_text(const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace lstar::io
