#include "lstar/basis.hpp"

namespace lstar::systems {

void AxiomBasis::add(std::string id, lang::FormulaPtr sentence) {
  if (!sentence) throw Error("null axiom");
  if (!lang::is_closed(sentence))
    throw Error("axiom '" + id + "' has free variables");
  if (by_id_.count(id)) throw Error("duplicate axiom id '" + id + "'");
  std::string key = lang::canonical_key(sentence);
  by_id_[id] = axioms_.size();
  by_key_.emplace(std::move(key), axioms_.size());
  axioms_.push_back(Axiom{std::move(id), std::move(sentence)});
}

bool AxiomBasis::contains(const lang::FormulaPtr& sentence) const {
  return by_key_.count(lang::canonical_key(sentence)) > 0;
}

const Axiom* AxiomBasis::find(const std::string& id) const {
  auto it = by_id_.find(id);
  return it == by_id_.end() ? nullptr : &axioms_[it->second];
}

std::uint64_t AxiomBasis::fingerprint() const {
  std::uint64_t h = 1469598103934665603ULL;  // FNV offset basis
  auto feed = [&h](const std::string& s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 1099511628211ULL;
    }
    h ^= 0xff;
    h *= 1099511628211ULL;
  };
  feed(name_);
  for (const auto& a : axioms_) {
    feed(a.id);
    feed(lang::canonical_key(a.sentence));
  }
  return h;
}

}  // namespace lstar::systems
