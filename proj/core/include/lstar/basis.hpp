#pragma once

// Axiom bases: named generators of proper axioms with a membership test and a
// fair enumerator (finite bases enumerate in listed order).

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "lstar/godel.hpp"
#include "lstar/lang.hpp"

namespace lstar::systems {

struct Axiom {
  std::string id;
  lang::FormulaPtr sentence;
};

class AxiomBasis {
 public:
  AxiomBasis() = default;
  explicit AxiomBasis(std::string name) : name_(std::move(name)) {}

  const std::string& name() const { return name_; }

  // Axioms must be closed sentences; ids unique within the basis.
  void add(std::string id, lang::FormulaPtr sentence);

  std::size_t size() const { return axioms_.size(); }
  const Axiom& at(std::size_t i) const { return axioms_[i]; }
  const std::vector<Axiom>& axioms() const { return axioms_; }

  // Membership up to alpha-renaming of bound variables.
  bool contains(const lang::FormulaPtr& sentence) const;
  const Axiom* find(const std::string& id) const;

  void set_flag(const std::string& flag) { flags_.push_back(flag); }
  const std::vector<std::string>& flags() const { return flags_; }

  // SelfRef records attached by self_ref_extend (newest last).
  void attach_selfref(godel::SelfRefRecord r) { selfrefs_.push_back(std::move(r)); }
  const std::vector<godel::SelfRefRecord>& selfrefs() const { return selfrefs_; }

  // Order-sensitive digest of the basis contents; feeds SelfRef numbering.
  std::uint64_t fingerprint() const;

 private:
  std::string name_;
  std::vector<Axiom> axioms_;
  std::unordered_map<std::string, std::size_t> by_key_;  // canonical form -> index
  std::unordered_map<std::string, std::size_t> by_id_;
  std::vector<std::string> flags_;
  std::vector<godel::SelfRefRecord> selfrefs_;
};

}  // namespace lstar::systems
