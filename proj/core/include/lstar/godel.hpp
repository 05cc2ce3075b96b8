#pragma once

// Gödel numbering for formulas, proofs and self-reference records: a
// deterministic prefix-free pairing of a symbol tag stream (Elias-gamma per
// token under a leading sentinel bit). Injective and stable across runs.

#include <cstdint>
#include <string>
#include <variant>

#include "lstar/proof.hpp"
#include "lstar/semantics.hpp"

namespace lstar::godel {

struct GodelNumber {
  semantics::BigNat value;
  friend bool operator==(const GodelNumber&, const GodelNumber&) = default;
  friend auto operator<=>(const GodelNumber& a, const GodelNumber& b) {
    return a.value < b.value ? std::strong_ordering::less
           : a.value > b.value ? std::strong_ordering::greater
                               : std::strong_ordering::equal;
  }
  std::string to_string() const { return value.str(); }
};

// A SelfRef(α,d) record: the "I am consistent" axiom object. Its number is a
// fixed point of the numbering (the number field is not part of the encoded
// stream, so decode(g).number = g by construction).
struct SelfRefRecord {
  std::string system_name;
  enrichment::EnrichmentLevel level;
  std::uint64_t basis_fingerprint = 0;
  GodelNumber number;
};

GodelNumber godel_number(const lang::FormulaPtr& f);
GodelNumber godel_number(const tableaux::Proof& p);
GodelNumber godel_number(const SelfRefRecord& r);

using Decoded = std::variant<lang::FormulaPtr, tableaux::Proof, SelfRefRecord>;

// Inverse of godel_number; throws DecodeError on anything it did not produce.
Decoded godel_decode(const GodelNumber& g);

// Convenience: decode expecting a formula (nullptr when g codes something else
// or is invalid).
lang::FormulaPtr decode_formula(const GodelNumber& g);

}  // namespace lstar::godel
