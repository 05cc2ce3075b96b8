#pragma once

#include <compare>
#include <string>

#include "lstar/error.hpp"

namespace lstar::enrichment {

// Which excluded-middle instances count as logical axioms. Totally ordered:
// None < RankZero < RankZeroPlus < RankK(1) < RankK(2) < ... < Infinite.
struct EnrichmentLevel {
  enum class Tag : int { None = 0, RankZero = 1, RankZeroPlus = 2, RankK = 3, Infinite = 4 };

  Tag tag = Tag::None;
  int k = 0;  // meaningful for RankK only, k >= 1

  static EnrichmentLevel none() { return {Tag::None, 0}; }
  static EnrichmentLevel rank_zero() { return {Tag::RankZero, 0}; }
  static EnrichmentLevel rank_zero_plus() { return {Tag::RankZeroPlus, 0}; }
  static EnrichmentLevel rank_k(int k) {
    if (k < 1) throw Error("Rank-k enrichment needs k >= 1");
    return {Tag::RankK, k};
  }
  static EnrichmentLevel infinite() { return {Tag::Infinite, 0}; }

  friend auto operator<=>(const EnrichmentLevel& a, const EnrichmentLevel& b) {
    if (auto c = static_cast<int>(a.tag) <=> static_cast<int>(b.tag); c != 0) return c;
    return a.k <=> b.k;
  }
  friend bool operator==(const EnrichmentLevel&, const EnrichmentLevel&) = default;

  std::string to_string() const;
  static EnrichmentLevel parse(const std::string& text);  // none|rank0|rank0plus|rankK:k|inf
};

}  // namespace lstar::enrichment
