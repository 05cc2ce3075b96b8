#include "lstar/proof.hpp"

namespace lstar::enrichment {

std::string EnrichmentLevel::to_string() const {
  switch (tag) {
    case Tag::None: return "none";
    case Tag::RankZero: return "rank0";
    case Tag::RankZeroPlus: return "rank0plus";
    case Tag::RankK: return "rankK:" + std::to_string(k);
    case Tag::Infinite: return "inf";
  }
  return "?";
}

EnrichmentLevel EnrichmentLevel::parse(const std::string& text) {
  if (text == "none") return none();
  if (text == "rank0") return rank_zero();
  if (text == "rank0plus") return rank_zero_plus();
  if (text == "inf") return infinite();
  if (text.rfind("rankK:", 0) == 0) {
    try {
      int k = std::stoi(text.substr(6));
      return rank_k(k);
    } catch (const std::exception&) {
      throw Error("bad rank in enrichment level '" + text + "'");
    }
  }
  throw Error("unknown enrichment level '" + text + "' (expected none|rank0|rank0plus|rankK:k|inf)");
}

}  // namespace lstar::enrichment
