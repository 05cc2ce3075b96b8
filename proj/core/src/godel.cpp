#include "lstar/godel.hpp"

#include <boost/multiprecision/integer.hpp>

namespace lstar::godel {

using lang::Formula;
using lang::FormulaPtr;
using lang::Term;
using lang::TermPtr;
using semantics::BigNat;
using tableaux::JustKind;
using tableaux::Proof;

namespace {

constexpr std::uint64_t kKindFormula = 0;
constexpr std::uint64_t kKindProof = 1;
constexpr std::uint64_t kKindSelfRef = 2;

class BitWriter {
 public:
  BitWriter() : acc_(1) {}  // sentinel bit keeps leading zeros significant

  void put_bit(bool b) { acc_ = (acc_ << 1) | (b ? 1 : 0); }

  // Elias-gamma of token+1: prefix-free over arbitrary non-negative tokens.
  void put_token(std::uint64_t token) {
    std::uint64_t v = token + 1;
    int len = 64 - __builtin_clzll(v);
    for (int i = 0; i < len - 1; ++i) put_bit(false);
    for (int i = len - 1; i >= 0; --i) put_bit((v >> i) & 1);
  }

  void put_string(const std::string& s) {
    put_token(s.size());
    for (unsigned char c : s) put_token(c);
  }

  GodelNumber finish() { return GodelNumber{acc_}; }

 private:
  BigNat acc_;
};

class BitReader {
 public:
  explicit BitReader(const BigNat& value) : value_(value) {
    if (value < 1) throw DecodeError("not a valid code: value below sentinel");
    pos_ = static_cast<long>(boost::multiprecision::msb(value_));  // skip sentinel
  }

  bool done() const { return pos_ == 0; }

  bool get_bit() {
    if (pos_ <= 0) throw DecodeError("not a valid code: truncated stream");
    --pos_;
    return boost::multiprecision::bit_test(value_, static_cast<unsigned>(pos_));
  }

  std::uint64_t get_token() {
    int zeros = 0;
    while (!get_bit()) {
      if (++zeros > 63) throw DecodeError("not a valid code: token too wide");
    }
    std::uint64_t v = 1;
    for (int i = 0; i < zeros; ++i) v = (v << 1) | (get_bit() ? 1 : 0);
    return v - 1;
  }

  std::string get_string() {
    std::uint64_t n = get_token();
    if (n > 1'000'000) throw DecodeError("not a valid code: string too long");
    std::string s;
    s.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i) {
      std::uint64_t c = get_token();
      if (c > 255) throw DecodeError("not a valid code: bad character");
      s.push_back(static_cast<char>(c));
    }
    return s;
  }

  void expect_done() const {
    if (!done()) throw DecodeError("not a valid code: trailing bits");
  }

 private:
  BigNat value_;
  long pos_;
};

// term tags: 0..2 constants, 3 variable, 4 parameter, 5+fn function app
void write_term(BitWriter& w, const TermPtr& t) {
  switch (t->kind()) {
    case Term::Kind::Constant:
      w.put_token(t->constant_value());
      break;
    case Term::Kind::Variable:
      w.put_token(3);
      w.put_string(t->name());
      break;
    case Term::Kind::Parameter:
      w.put_token(4);
      w.put_string(t->name());
      break;
    case Term::Kind::FunctionApp:
      w.put_token(5 + static_cast<std::uint64_t>(t->fn()));
      for (const auto& a : t->args()) write_term(w, a);
      break;
  }
}

TermPtr read_term(BitReader& r) {
  std::uint64_t tag = r.get_token();
  if (tag <= 2) return Term::constant(static_cast<int>(tag));
  if (tag == 3) return Term::variable(r.get_string());
  if (tag == 4) return Term::parameter(r.get_string());
  if (tag >= 5 && tag <= 14) {
    auto fn = static_cast<lang::Fn>(tag - 5);
    std::vector<TermPtr> args;
    for (int i = 0; i < lang::fn_arity(fn); ++i) args.push_back(read_term(r));
    return Term::apply(fn, std::move(args));
  }
  throw DecodeError("not a valid code: unknown term tag");
}

// formula tags: 0/1 atoms, 2 not, 3 and, 4 or, 5 implies, 6 forall, 7 exists,
// 8 bounded forall, 9 bounded exists
void write_formula(BitWriter& w, const FormulaPtr& f) {
  switch (f->kind()) {
    case Formula::Kind::Atom:
      w.put_token(f->rel() == lang::Rel::Eq ? 0 : 1);
      write_term(w, f->lhs());
      write_term(w, f->rhs());
      break;
    case Formula::Kind::Not:
      w.put_token(2);
      write_formula(w, f->child());
      break;
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Implies:
      w.put_token(f->kind() == Formula::Kind::And ? 3
                  : f->kind() == Formula::Kind::Or ? 4
                                                   : 5);
      write_formula(w, f->left());
      write_formula(w, f->right());
      break;
    case Formula::Kind::ForAll:
    case Formula::Kind::Exists:
      w.put_token(f->kind() == Formula::Kind::ForAll ? 6 : 7);
      w.put_string(f->var());
      write_formula(w, f->child());
      break;
    case Formula::Kind::BoundedForAll:
    case Formula::Kind::BoundedExists:
      w.put_token(f->kind() == Formula::Kind::BoundedForAll ? 8 : 9);
      w.put_string(f->var());
      write_term(w, f->bound());
      write_formula(w, f->child());
      break;
  }
}

FormulaPtr read_formula(BitReader& r) {
  std::uint64_t tag = r.get_token();
  switch (tag) {
    case 0:
    case 1: {
      auto l = read_term(r);
      auto rr = read_term(r);
      return Formula::atom(tag == 0 ? lang::Rel::Eq : lang::Rel::Le, std::move(l), std::move(rr));
    }
    case 2:
      return Formula::negation(read_formula(r));
    case 3:
    case 4:
    case 5: {
      auto a = read_formula(r);
      auto b = read_formula(r);
      if (tag == 3) return Formula::conj(std::move(a), std::move(b));
      if (tag == 4) return Formula::disj(std::move(a), std::move(b));
      return Formula::implies(std::move(a), std::move(b));
    }
    case 6:
    case 7: {
      std::string v = r.get_string();
      auto body = read_formula(r);
      return tag == 6 ? Formula::forall(std::move(v), std::move(body))
                      : Formula::exists(std::move(v), std::move(body));
    }
    case 8:
    case 9: {
      std::string v = r.get_string();
      auto bound = read_term(r);
      auto body = read_formula(r);
      try {
        return tag == 8 ? Formula::bounded_forall(std::move(v), std::move(bound), std::move(body))
                        : Formula::bounded_exists(std::move(v), std::move(bound), std::move(body));
      } catch (const Error& e) {
        throw DecodeError(std::string("not a valid code: ") + e.what());
      }
    }
    default:
      throw DecodeError("not a valid code: unknown formula tag");
  }
}

void write_level(BitWriter& w, const enrichment::EnrichmentLevel& lvl) {
  w.put_token(static_cast<std::uint64_t>(lvl.tag));
  if (lvl.tag == enrichment::EnrichmentLevel::Tag::RankK) w.put_token(lvl.k);
}

enrichment::EnrichmentLevel read_level(BitReader& r) {
  std::uint64_t tag = r.get_token();
  switch (tag) {
    case 0: return enrichment::EnrichmentLevel::none();
    case 1: return enrichment::EnrichmentLevel::rank_zero();
    case 2: return enrichment::EnrichmentLevel::rank_zero_plus();
    case 3: {
      std::uint64_t k = r.get_token();
      if (k < 1 || k > 1'000'000) throw DecodeError("not a valid code: bad rank");
      return enrichment::EnrichmentLevel::rank_k(static_cast<int>(k));
    }
    case 4: return enrichment::EnrichmentLevel::infinite();
    default: throw DecodeError("not a valid code: unknown level tag");
  }
}

void write_proof(BitWriter& w, const Proof& p) {
  write_formula(w, p.goal);
  w.put_string(p.basis_id);
  write_level(w, p.level);
  w.put_token(p.nodes.size());
  for (const auto& n : p.nodes) {
    w.put_token(static_cast<std::uint64_t>(n.parent + 1));
    write_formula(w, n.sentence);
    w.put_token(static_cast<std::uint64_t>(n.just.kind));
    switch (n.just.kind) {
      case JustKind::Root:
        break;
      case JustKind::ProperAxiom:
        w.put_string(n.just.axiom_id);
        break;
      case JustKind::LogicalAxiom:
        w.put_string(n.just.lem_tag);
        break;
      case JustKind::RuleApp:
        w.put_token(n.just.rule);
        w.put_token(static_cast<std::uint64_t>(n.just.ancestor + 1));
        if (n.just.rule == 5 || n.just.rule == 6) w.put_string(n.just.param);
        if (n.just.rule == 7 || n.just.rule == 8) write_term(w, n.just.term);
        break;
    }
  }
}

Proof read_proof(BitReader& r) {
  Proof p;
  p.goal = read_formula(r);
  p.basis_id = r.get_string();
  p.level = read_level(r);
  std::uint64_t count = r.get_token();
  if (count > 10'000'000) throw DecodeError("not a valid code: oversized proof");
  for (std::uint64_t i = 0; i < count; ++i) {
    tableaux::ProofNode n;
    n.id = static_cast<int>(i);
    n.parent = static_cast<int>(r.get_token()) - 1;
    n.sentence = read_formula(r);
    std::uint64_t kind = r.get_token();
    if (kind > 3) throw DecodeError("not a valid code: unknown justification");
    n.just.kind = static_cast<JustKind>(kind);
    switch (n.just.kind) {
      case JustKind::Root:
        break;
      case JustKind::ProperAxiom:
        n.just.axiom_id = r.get_string();
        break;
      case JustKind::LogicalAxiom:
        n.just.lem_tag = r.get_string();
        break;
      case JustKind::RuleApp:
        n.just.rule = static_cast<int>(r.get_token());
        n.just.ancestor = static_cast<int>(r.get_token()) - 1;
        if (n.just.rule == 5 || n.just.rule == 6) n.just.param = r.get_string();
        if (n.just.rule == 7 || n.just.rule == 8) n.just.term = read_term(r);
        break;
    }
    p.nodes.push_back(std::move(n));
  }
  return p;
}

}  // namespace

GodelNumber godel_number(const lang::FormulaPtr& f) {
  BitWriter w;
  w.put_token(kKindFormula);
  write_formula(w, f);
  return w.finish();
}

GodelNumber godel_number(const tableaux::Proof& p) {
  BitWriter w;
  w.put_token(kKindProof);
  write_proof(w, p);
  return w.finish();
}

GodelNumber godel_number(const SelfRefRecord& r) {
  // The number field is deliberately absent from the stream: the record's
  // number is the number of its own description, so the diagonal identity
  // decode(g).number == g holds by construction.
  BitWriter w;
  w.put_token(kKindSelfRef);
  w.put_string(r.system_name);
  write_level(w, r.level);
  w.put_token(r.basis_fingerprint);
  return w.finish();
}

Decoded godel_decode(const GodelNumber& g) {
  BitReader r(g.value);
  std::uint64_t kind = r.get_token();
  switch (kind) {
    case kKindFormula: {
      FormulaPtr f = read_formula(r);
      r.expect_done();
      return f;
    }
    case kKindProof: {
      Proof p = read_proof(r);
      r.expect_done();
      return p;
    }
    case kKindSelfRef: {
      SelfRefRecord rec;
      rec.system_name = r.get_string();
      rec.level = read_level(r);
      rec.basis_fingerprint = r.get_token();
      r.expect_done();
      rec.number = g;
      return rec;
    }
    default:
      throw DecodeError("not a valid code: unknown top-level kind");
  }
}

lang::FormulaPtr decode_formula(const GodelNumber& g) {
  try {
    Decoded d = godel_decode(g);
    if (auto* f = std::get_if<lang::FormulaPtr>(&d)) return *f;
  } catch (const DecodeError&) {
  }
  return nullptr;
}

}  // namespace lstar::godel
