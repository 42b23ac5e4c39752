#include "lpw/classical.hpp"

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "lpw/error.hpp"
#include "lpw/levels.hpp"
#include "lpw/syntax.hpp"

namespace lpw {

namespace {

// The formula DAG flattened into straight-line code; children precede parents.
struct Program {
  struct Op {
    Kind kind;
    int a = -1, b = -1;  // operand slots, or the atom index for PropAtom
  };
  std::vector<Op> ops;
  std::vector<std::string> atoms;
};

class Compiler {
 public:
  Program prog;

  int compile(const Formula& f) {
    if (auto it = slot_.find(f.identity()); it != slot_.end()) return it->second;
    Program::Op op{f.kind()};
    switch (f.kind()) {
      case Kind::PropAtom: {
        auto [it, fresh] = atom_index_.emplace(f.symbol(), static_cast<int>(prog.atoms.size()));
        if (fresh) prog.atoms.push_back(f.symbol());
        op.a = it->second;
        break;
      }
      case Kind::Not: op.a = compile(f.operand()); break;
      case Kind::And:
      case Kind::Or:
      case Kind::Imp:
      case Kind::Iff:
        op.a = compile(f.lhs());
        op.b = compile(f.rhs());
        break;
      default:
        throw Error(ErrorCode::NotPropositional, print_formula(f));
    }
    prog.ops.push_back(op);
    int s = static_cast<int>(prog.ops.size()) - 1;
    slot_.emplace(f.identity(), s);
    return s;
  }

 private:
  std::unordered_map<const Formula::Node*, int> slot_;
  std::unordered_map<std::string, int> atom_index_;
};

Program compile(const Formula& f) {
  Compiler c;
  c.compile(expand_levels(f));
  return std::move(c.prog);
}

// Evaluates 64 valuations at once; bit k of atom_bits[i] is atom i's value in row k.
std::uint64_t run(const Program& p, const std::vector<std::uint64_t>& atom_bits, std::vector<std::uint64_t>& regs) {
  regs.resize(p.ops.size());
  for (std::size_t i = 0; i < p.ops.size(); ++i) {
    const auto& op = p.ops[i];
    switch (op.kind) {
      case Kind::PropAtom: regs[i] = atom_bits[op.a]; break;
      case Kind::Not: regs[i] = ~regs[op.a]; break;
      case Kind::And: regs[i] = regs[op.a] & regs[op.b]; break;
      case Kind::Or: regs[i] = regs[op.a] | regs[op.b]; break;
      case Kind::Imp: regs[i] = ~regs[op.a] | regs[op.b]; break;
      case Kind::Iff: regs[i] = ~(regs[op.a] ^ regs[op.b]); break;
      default: break;
    }
  }
  return regs.back();
}

// Calls visit(result_bits, valid_mask) for every block of 64 rows.
template <class Visit>
void for_all_rows(const Program& p, Visit visit) {
  const std::size_t k = p.atoms.size();
  if (k > kMaxOracleAtoms)
    throw Error(ErrorCode::AtomLimitExceeded, std::to_string(k) + " atoms (limit " + std::to_string(kMaxOracleAtoms) + ")");
  static constexpr std::uint64_t low_patterns[6] = {0xAAAAAAAAAAAAAAAAULL, 0xCCCCCCCCCCCCCCCCULL,
                                                    0xF0F0F0F0F0F0F0F0ULL, 0xFF00FF00FF00FF00ULL,
                                                    0xFFFF0000FFFF0000ULL, 0xFFFFFFFF00000000ULL};
  const std::uint64_t rows = std::uint64_t{1} << k;
  const std::uint64_t valid = rows >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << rows) - 1;
  std::vector<std::uint64_t> bits(k), regs;
  for (std::uint64_t block = 0; block * 64 < rows; ++block) {
    for (std::size_t i = 0; i < k; ++i)
      bits[i] = i < 6 ? low_patterns[i] : (((block >> (i - 6)) & 1) ? ~std::uint64_t{0} : 0);
    if (!visit(run(p, bits, regs), valid)) return;
  }
}

}  // namespace

bool eval_classical(const Formula& f, const Valuation& v) {
  Program p = compile(f);
  std::vector<std::uint64_t> bits, regs;
  for (const std::string& a : p.atoms) {
    auto it = v.find(a);
    if (it == v.end()) throw Error(ErrorCode::UnknownName, "no value for atom " + a);
    bits.push_back(it->second ? ~std::uint64_t{0} : 0);
  }
  return run(p, bits, regs) & 1;
}

bool is_tautology(const Formula& f) {
  Program p = compile(f);
  bool all = true;
  for_all_rows(p, [&](std::uint64_t r, std::uint64_t valid) {
    all = (r & valid) == valid;
    return all;
  });
  return all;
}

bool is_satisfiable(const Formula& f) {
  Program p = compile(f);
  bool any = false;
  for_all_rows(p, [&](std::uint64_t r, std::uint64_t valid) {
    any = (r & valid) != 0;
    return !any;
  });
  return any;
}

}  // namespace lpw
