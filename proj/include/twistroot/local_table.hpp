#pragma once

#include <array>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "twistroot/local.hpp"

namespace twistroot {

/// W_p(E_t) for p in {2, 3} as a function of (v_p(t) mod v_mod, t_(p) mod unit_mod),
/// where t_(p) is the signed prime-to-p part of t.
///
/// File grammar:
///   rootnum-local-table 1
///   # comment
///   p, v_mod, unit_mod, v_class, unit_class -> sign
/// with p in {2,3}, unit_mod a positive power of p, sign one of +1 / -1.
class UserLocalTable {
 public:
  struct Block {
    unsigned vMod = 0;
    std::uint64_t unitMod = 0;
    unsigned unitExp = 0;
    std::map<std::pair<unsigned, std::uint64_t>, Sign> entries;
  };

  static UserLocalTable parse(std::istream& in, const std::string& source = "<table>") {
    UserLocalTable table;
    std::string line;
    unsigned lineNo = 0;
    bool sawHeader = false;
    auto fail = [&](ErrorKind kind, const std::string& msg) {
      throw DomainError(kind, source + ":" + std::to_string(lineNo) + ": " + msg);
    };
    while (std::getline(in, line)) {
      ++lineNo;
      if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
      const auto first = line.find_first_not_of(" \t\r");
      if (first == std::string::npos) continue;
      line = line.substr(first, line.find_last_not_of(" \t\r") - first + 1);
      if (!sawHeader) {
        if (line != "rootnum-local-table 1") {
          fail(ErrorKind::malformedTable, "expected header 'rootnum-local-table 1'");
        }
        sawHeader = true;
        continue;
      }
      const auto arrow = line.find("->");
      if (arrow == std::string::npos) fail(ErrorKind::malformedTable, "missing '->'");
      std::vector<std::uint64_t> fields;
      std::stringstream lhs(line.substr(0, arrow));
      std::string field;
      while (std::getline(lhs, field, ',')) {
        const auto b = field.find_first_not_of(" \t");
        const auto e = field.find_last_not_of(" \t");
        if (b == std::string::npos) fail(ErrorKind::malformedTable, "empty field");
        field = field.substr(b, e - b + 1);
        if (field.find_first_not_of("0123456789") != std::string::npos || field.size() > 18) {
          fail(ErrorKind::malformedTable, "field '" + field + "' is not a nonnegative integer");
        }
        fields.push_back(std::stoull(field));
      }
      if (fields.size() != 5) fail(ErrorKind::malformedTable, "expected 5 fields before '->'");
      std::string rhs = line.substr(arrow + 2);
      rhs.erase(0, rhs.find_first_not_of(" \t"));
      Sign sign;
      if (rhs == "+1" || rhs == "1") {
        sign = Sign::plus;
      } else if (rhs == "-1") {
        sign = Sign::minus;
      } else {
        fail(ErrorKind::malformedTable, "sign must be +1 or -1, got '" + rhs + "'");
      }
      const auto p = fields[0];
      if (p != 2 && p != 3) fail(ErrorKind::malformedTable, "p must be 2 or 3");
      const auto vMod = fields[1], unitMod = fields[2], vClass = fields[3], unitClass = fields[4];
      if (vMod == 0 || vMod > 64) fail(ErrorKind::malformedTable, "v_mod must be in [1, 64]");
      unsigned unitExp = 0;
      for (std::uint64_t m = unitMod; m > 1 && m % p == 0; m /= p) ++unitExp;
      if (unitMod < p || ipow(Integer(p), unitExp) != unitMod || unitExp > 12) {
        fail(ErrorKind::malformedTable, "unit_mod must be p^e with 1 <= e <= 12");
      }
      if (vClass >= vMod) fail(ErrorKind::malformedTable, "v_class out of range");
      if (unitClass >= unitMod || unitClass % p == 0) {
        fail(ErrorKind::malformedTable, "unit_class must be a unit residue below unit_mod");
      }
      auto& slot = table.blocks_[p == 2 ? 0 : 1];
      if (!slot) {
        slot = Block{static_cast<unsigned>(vMod), unitMod, unitExp, {}};
      } else if (slot->vMod != vMod || slot->unitMod != unitMod) {
        fail(ErrorKind::malformedTable, "inconsistent moduli for p = " + std::to_string(p));
      }
      const auto key = std::make_pair(static_cast<unsigned>(vClass), unitClass);
      if (!slot->entries.emplace(key, sign).second) {
        fail(ErrorKind::duplicateTableEntry, "duplicate entry for (" + std::to_string(vClass) +
                                                 ", " + std::to_string(unitClass) + ")");
      }
    }
    if (!sawHeader) {
      throw DomainError(ErrorKind::malformedTable, source + ": empty table");
    }
    for (unsigned i = 0; i < 2; ++i) {
      const auto& slot = table.blocks_[i];
      if (!slot) continue;
      const unsigned p = i == 0 ? 2 : 3;
      for (unsigned v = 0; v < slot->vMod; ++v) {
        for (std::uint64_t u = 1; u < slot->unitMod; ++u) {
          if (u % p != 0 && !slot->entries.count({v, u})) {
            throw DomainError(ErrorKind::incompleteTable,
                              source + ": p = " + std::to_string(p) + " has no entry for (" +
                                  std::to_string(v) + ", " + std::to_string(u) + ")");
          }
        }
      }
    }
    return table;
  }

  static UserLocalTable load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError(ErrorKind::invalidArgument, "cannot open table '" + path + "'");
    return parse(in, path);
  }

  bool covers(unsigned p) const { return block(p) != nullptr; }

  const Block* block(unsigned p) const {
    if (p == 2 && blocks_[0]) return &*blocks_[0];
    if (p == 3 && blocks_[1]) return &*blocks_[1];
    return nullptr;
  }

  std::optional<Sign> lookup(unsigned p, const Integer& t) const {
    const Block* b = block(p);
    if (!b) return std::nullopt;
    detail::requireNonzero(t, "table lookup");
    const auto [v, unit] = detail::valuationUnchecked(t, p);
    return b->entries.at({v % b->vMod, residue(unit, b->unitMod)});
  }

  /// A modulus N = p^(1+e) such that squarefree t = t' mod N share the entry.
  std::optional<std::uint64_t> period(unsigned p) const {
    const Block* b = block(p);
    if (!b) return std::nullopt;
    return b->unitMod * p;
  }

 private:
  std::array<std::optional<Block>, 2> blocks_;
};

struct TableDiscrepancy {
  unsigned p = 0;
  Integer t;
  Sign table = Sign::plus;
  Sign law = Sign::plus;
};

/// Compares the table against the special laws on `samples` squarefree t per
/// covered special prime. Deterministic sample set.
inline std::vector<TableDiscrepancy> auditTable(const UserLocalTable& table, const Curve& base,
                                                unsigned samples = 100) {
  std::vector<TableDiscrepancy> out;
  const auto two = specialTwoVerdict(base);
  const auto three = specialThreeVerdict(base);
  for (unsigned p : {2u, 3u}) {
    if (!table.covers(p)) continue;
    if ((p == 2 && !two.isSpecial) || (p == 3 && !three.isSpecial)) continue;
    unsigned seen = 0;
    for (std::int64_t n = 1; seen < samples; ++n) {
      const std::int64_t t = (n % 2 ? 1 : -1) * ((n + 1) / 2);
      if (!isPowerfree(factor(t), 2)) continue;
      ++seen;
      const Sign law = p == 2 ? w2QuadraticSpecial(two, t) : w3QuadraticSpecial(three, t);
      const Sign got = *table.lookup(p, t);
      if (got != law) out.push_back({p, t, got, law});
    }
  }
  return out;
}

}  // namespace twistroot
