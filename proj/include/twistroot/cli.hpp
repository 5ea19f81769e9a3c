#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "twistroot/report.hpp"

namespace twistroot::cli {

enum class Output { human, json, csv };

struct Request {
  std::string subcommand;
  FamilyKind family = FamilyKind::sextic;
  Integer a = 0, b = 0;
  std::optional<Integer> t;
  std::optional<std::pair<Integer, Integer>> range;
  std::optional<std::uint64_t> bound;
  Output output = Output::human;
  std::optional<std::string> localTable;
  std::optional<std::uint64_t> effort;
  bool modulusSearch = false;
  bool relative = false;
};

enum ExitCode { ok = 0, domainError = 2, falsified = 3 };

namespace detail {

struct RawOptions {
  std::vector<std::string> quadratic;
  std::string quartic, sextic, t, bound, effort, localTable;
  std::vector<std::string> range;
  bool json = false, csv = false, modulusSearch = false, relative = false;
};

inline void addCommon(CLI::App* sub, RawOptions& o) {
  auto* fam = sub->add_option_group("family");
  fam->add_option("--quadratic", o.quadratic, "y^2 = x^3 + A x + B, twisted by t")
      ->expected(2)
      ->type_name("A B")
      ->allow_extra_args(false);
  fam->add_option("--quartic", o.quartic, "y^2 = x^3 + A t x")->type_name("A");
  fam->add_option("--sextic,--sextic-b", o.sextic, "y^2 = x^3 + B t")->type_name("B");
  fam->require_option(1);
  sub->add_option("--t", o.t, "twist parameter")->type_name("N");
  sub->add_option("--range", o.range, "parameter range")->expected(2)->type_name("LO HI");
  sub->add_option("--bound", o.bound, "scan bound")->type_name("N");
  sub->add_option("--local-table", o.localTable, "W2/W3 table file")->type_name("PATH");
  sub->add_option("--effort", o.effort, "Pollard rho iteration budget")->type_name("N");
  auto* j = sub->add_flag("--json", o.json, "JSON output");
  auto* c = sub->add_flag("--csv", o.csv, "CSV output");
  j->excludes(c);
  sub->add_flag("--modulus-search", o.modulusSearch, "search smaller period moduli");
  sub->add_flag("--relative", o.relative, "report W(E_t)/W(E)");
}

inline std::uint64_t parseCount(const std::string& s, const char* what) {
  const Integer v = parseInteger(s);
  if (v <= 0 || !fitsUint64(v)) {
    throw DomainError(ErrorKind::invalidArgument, std::string(what) + " must be a positive integer");
  }
  return static_cast<std::uint64_t>(v);
}

inline Integer parseNonzero(const std::string& s, const char* what) {
  Integer v = parseInteger(s);
  if (v == 0) throw DomainError(ErrorKind::zeroInput, std::string(what) + " must be nonzero");
  return v;
}

}  // namespace detail

/// Parses argv (argv[0] is the program name). Throws CLI::ParseError for
/// grammar errors (including --help) and DomainError for bad values.
inline Request parse(int argc, const char* const* argv) {
  CLI::App app{"Root numbers of quadratic, quartic and sextic twist families"};
  app.require_subcommand(1);
  detail::RawOptions o;
  for (const char* sc : {"root", "profile", "constancy", "scan", "audit"}) {
    detail::addCommon(app.add_subcommand(sc), o);
  }
  app.get_subcommand("root")->description("root number of one fiber");
  app.get_subcommand("profile")->description("(square-)periodicity profile");
  app.get_subcommand("constancy")->description("sign-determined constancy criterion");
  app.get_subcommand("scan")->description("count signs over a parameter range");
  app.get_subcommand("audit")->description("closed form against the per-prime oracle");
  std::vector<std::string> args;
  for (int i = argc - 1; i > 0; --i) args.emplace_back(argv[i]);
  app.parse(args);

  Request r;
  r.subcommand = app.get_subcommands().front()->get_name();
  if (!o.quadratic.empty()) {
    r.family = FamilyKind::quadratic;
    r.a = detail::parseNonzero(o.quadratic[0], "A");
    r.b = detail::parseNonzero(o.quadratic[1], "B");
  } else if (!o.quartic.empty()) {
    r.family = FamilyKind::quartic;
    r.a = detail::parseNonzero(o.quartic, "A");
  } else {
    r.family = FamilyKind::sextic;
    r.b = detail::parseNonzero(o.sextic, "B");
  }
  if (!o.t.empty()) r.t = detail::parseNonzero(o.t, "t");
  if (!o.range.empty()) r.range = std::make_pair(parseInteger(o.range[0]), parseInteger(o.range[1]));
  if (!o.bound.empty()) r.bound = detail::parseCount(o.bound, "--bound");
  if (!o.effort.empty()) r.effort = detail::parseCount(o.effort, "--effort");
  if (!o.localTable.empty()) r.localTable = o.localTable;
  r.output = o.json ? Output::json : o.csv ? Output::csv : Output::human;
  r.modulusSearch = o.modulusSearch;
  r.relative = o.relative;
  if (r.subcommand == "root" && !r.t) {
    throw DomainError(ErrorKind::invalidArgument, "root needs --t");
  }
  if (r.subcommand == "scan" && !r.range) {
    throw DomainError(ErrorKind::invalidArgument, "scan needs --range LO HI");
  }
  if (r.subcommand == "constancy" && r.family != FamilyKind::quadratic) {
    throw DomainError(ErrorKind::wrongFamily, "constancy applies to quadratic families");
  }
  if (r.localTable && r.family != FamilyKind::quadratic) {
    throw DomainError(ErrorKind::wrongFamily, "--local-table applies to quadratic families");
  }
  return r;
}

namespace detail {

inline TwistFamily makeFamily(const Request& r, const FactorOptions& fo) {
  switch (r.family) {
    case FamilyKind::sextic: return TwistFamily::sextic(r.b, fo);
    case FamilyKind::quartic: return TwistFamily::quartic(r.a, fo);
    case FamilyKind::quadratic: {
      std::optional<UserLocalTable> table;
      if (r.localTable) table = UserLocalTable::load(*r.localTable);
      return TwistFamily::quadratic(QuadraticBase(Curve(r.a, r.b), std::move(table), fo));
    }
  }
  throw DomainError(ErrorKind::invalidArgument, "unknown family");
}

inline void emit(std::ostream& out, const Json& j) { out << j.dump(2) << '\n'; }

inline int runRoot(const Request& r, const TwistFamily& fam, std::ostream& out) {
  const FactorOptions& fo = fam.options();
  const Integer& t = *r.t;
  if (fam.kind() != FamilyKind::quadratic) {
    const auto br = fam.kind() == FamilyKind::sextic ? rootNumberSextic(r.b, t, fo)
                                                      : rootNumberQuartic(r.a, t, fo);
    const Sign oracle = oracleRootNumber(fam.kind(), fam.curve(), t, fo);
    if (r.output == Output::json) {
      Json j = toJson(br);
      j["oracle"] = toInt(oracle);
      emit(out, j);
    } else {
      writeHuman(out, br);
      out << "oracle = " << oracle << '\n';
    }
    return oracle == br.total ? ok : falsified;
  }
  const QuadraticBase& base = *fam.quadratic();
  std::optional<CFactorReport> rel;
  try {
    rel = rootNumberQuadraticRelative(base, t);
  } catch (const DomainError& e) {
    if (e.kind() != ErrorKind::insufficientLocalData) throw;
  }
  if (!base.hasLocalData() || r.relative) {
    if (!rel) rel = rootNumberQuadraticRelative(base, t);  // rethrows with the missing data
    if (r.output == Output::json) {
      Json j{{"family", "quadratic"}, {"a", r.a.str()}, {"b", r.b.str()}, {"t", t.str()}};
      j["relative"] = toJson(*rel);
      emit(out, j);
    } else {
      out << "W(E_t)/W(E) = " << rel->product << "  (C2 " << rel->c2 << ", C3 " << rel->c3
          << ", CM " << rel->cM << ", C0 " << rel->c0 << ", CDelta " << rel->cDelta << ")\n";
    }
    return ok;
  }
  const auto br = rootNumberQuadraticAbsolute(base, t);
  const Sign oracle = oracleRootNumber(base, t);
  const Sign w1 = rootNumberQuadraticAbsolute(base, 1).total;
  const bool consistent = oracle == br.total && rel->product * w1 == br.total;
  if (r.output == Output::json) {
    Json j = toJson(br);
    j["oracle"] = toInt(oracle);
    j["relative"] = toJson(*rel);
    emit(out, j);
  } else {
    writeHuman(out, br);
    out << "oracle = " << oracle << ", C = " << rel->product << ", W(E) = " << w1 << '\n';
  }
  return consistent ? ok : falsified;
}

inline int runProfile(const Request& r, const TwistFamily& fam, std::ostream& out) {
  std::uint64_t modulus = 0, square = 1;
  switch (fam.kind()) {
    case FamilyKind::sextic: modulus = sexticModulus; square = 3; break;
    case FamilyKind::quartic: modulus = quarticModulus; square = 4; break;
    case FamilyKind::quadratic: modulus = quadraticModulus(*fam.quadratic()); break;
  }
  const auto p = profileFamily(fam, r.bound.value_or(3 * modulus), modulus, square);
  std::vector<ModulusCheck> checks;
  if (r.modulusSearch) {
    if (fam.kind() == FamilyKind::sextic) checks.push_back(checkModulus(p, 46656, 3));
    if (fam.kind() == FamilyKind::quartic) checks.push_back(checkModulus(p, 16, 4));
    checks.push_back(searchMinimalModulus(p));
  }
  if (r.output == Output::csv) {
    writeProfileCsv(out, p);
  } else if (r.output == Output::json) {
    Json j = toJson(p);
    if (r.modulusSearch) {
      j["modulus_checks"] = Json::array();
      for (const auto& c : checks) j["modulus_checks"].push_back(toJson(c));
    }
    emit(out, j);
  } else {
    out << name(p.kind) << " profile: modulus " << p.modulus << ", square modulus "
        << p.squareModulus << ", " << p.samples.size() << " parameters, " << p.classes.size()
        << " classes\n";
    out << "  +1: " << p.count(ClassState::plus) << "  -1: " << p.count(ClassState::minus)
        << "  mixed: " << p.mixedCount() << "  undetermined: " << p.count(ClassState::undetermined)
        << '\n';
    for (const auto& [k, e] : p.classes) {
      if (e.state == ClassState::mixed) {
        out << "  MIXED class " << classText(k) << " sq " << k.sqClass << ": " << witnessText(e)
            << '\n';
      }
    }
    for (std::size_t i = 0; i < checks.size(); ++i) {
      const bool last = i + 1 == checks.size();
      out << (last ? "  minimal modulus found: (" : "  statement modulus (") << checks[i].modulus
          << ", " << checks[i].squareModulus << "): " << checks[i].mixed << " mixed of "
          << checks[i].classes << " classes\n";
    }
  }
  return p.mixedCount() == 0 ? ok : falsified;
}

inline int runConstancy(const Request& r, const TwistFamily& fam, std::ostream& out) {
  const auto v = constancyCriterion(fam.curve(), fam.options());
  std::optional<FlipWitness> witness;
  if (v.overall == ConstancyOverall::notSignDetermined) witness = flipWitness(*fam.quadratic());
  if (r.output == Output::json) {
    Json j = toJson(v);
    if (witness) j["flip_witness"] = {{"t", witness->t.str()}, {"relative", toJson(witness->factors)}};
    emit(out, j);
  } else {
    out << fam.curve().str() << ": " << name(v.overall) << '\n';
    out << "  (a) " << v.holdsA << "  (b) " << v.holdsB << "  (c) " << v.holdsC << "  (d) "
        << v.holdsD << '\n';
    for (const auto& d : v.diagnostics) out << "  " << d << '\n';
    if (witness) out << "  W(E_t) = -W(E) at t = " << witness->t << '\n';
  }
  return ok;
}

inline int runScan(const Request& r, const TwistFamily& fam, std::ostream& out) {
  const auto s = scanSigns(fam, r.range->first, r.range->second,
                           r.relative ? ScanMode::relative : ScanMode::absolute);
  if (r.output == Output::json) {
    emit(out, toJson(s));
  } else {
    auto list = [](const std::vector<Integer>& v) {
      std::string o;
      for (const auto& x : v) o += (o.empty() ? "" : " ") + x.str();
      return o;
    };
    out << (r.relative ? "W(E_t)/W(E)" : "W(E_t)") << " over [" << r.range->first << ", "
        << r.range->second << "]\n";
    out << "  +1: " << s.plusCount << "  e.g. " << list(s.plusSamples) << '\n';
    out << "  -1: " << s.minusCount << "  e.g. " << list(s.minusSamples) << '\n';
    out << "  undetermined: " << s.undetermined << "  skipped (not powerfree): " << s.skipped
        << '\n';
  }
  return ok;
}

inline int runAudit(const Request& r, const TwistFamily& fam, std::ostream& out) {
  const auto bound = static_cast<std::int64_t>(std::min<std::uint64_t>(r.bound.value_or(10000), 1ull << 40));
  struct Mismatch {
    std::int64_t t;
    int closed, oracle;
  };
  std::uint64_t checked = 0;
  std::vector<Mismatch> mismatches;
  std::vector<TableDiscrepancy> tableIssues;
  const QuadraticBase* qb = fam.quadratic();
  if (qb && qb->table()) tableIssues = auditTable(*qb->table(), qb->curve());
  const bool evaluable = !qb || qb->hasLocalData();
  if (evaluable) {
    for (std::int64_t t = -bound; t <= bound; ++t) {
      if (t == 0) continue;
      const Factored ft = factor(t, fam.options());
      if (!isPowerfree(ft, fam.degree())) continue;
      ++checked;
      const Sign closed = *fam.rootNumber(ft);
      const Sign oracle = qb ? oracleRootNumber(*qb, t) : oracleRootNumber(fam.kind(), fam.curve(), t, fam.options());
      if (closed != oracle) mismatches.push_back({t, toInt(closed), toInt(oracle)});
    }
  }
  if (r.output == Output::json) {
    Json j{{"checked", checked}, {"mismatches", Json::array()}, {"table_discrepancies", Json::array()},
           {"evaluable", evaluable}};
    for (const auto& m : mismatches) j["mismatches"].push_back({{"t", m.t}, {"closed", m.closed}, {"oracle", m.oracle}});
    for (const auto& d : tableIssues) {
      j["table_discrepancies"].push_back({{"p", d.p}, {"t", d.t.str()}, {"table", toInt(d.table)}, {"law", toInt(d.law)}});
    }
    emit(out, j);
  } else {
    if (!evaluable) out << "no W2/W3 data for this base: closed form not audited\n";
    out << "checked " << checked << " parameters, " << mismatches.size() << " mismatches\n";
    for (const auto& m : mismatches) {
      out << "  t = " << m.t << ": closed form " << m.closed << ", oracle " << m.oracle << '\n';
    }
    if (qb && qb->table()) out << "table audit: " << tableIssues.size() << " discrepancies\n";
    for (const auto& d : tableIssues) {
      out << "  p = " << d.p << ", t = " << d.t << ": table " << d.table << ", law " << d.law << '\n';
    }
  }
  return mismatches.empty() && tableIssues.empty() ? ok : falsified;
}

}  // namespace detail

/// Executes a parsed request. Domain errors are reported on err with their
/// structured name and exit status 2.
inline int run(const Request& r, std::ostream& out, std::ostream& err) {
  try {
    FactorOptions fo;
    if (r.effort) fo.rhoIterations = *r.effort;
    const TwistFamily fam = detail::makeFamily(r, fo);
    if (r.subcommand == "root") return detail::runRoot(r, fam, out);
    if (r.subcommand == "profile") return detail::runProfile(r, fam, out);
    if (r.subcommand == "constancy") return detail::runConstancy(r, fam, out);
    if (r.subcommand == "scan") return detail::runScan(r, fam, out);
    if (r.subcommand == "audit") return detail::runAudit(r, fam, out);
    throw DomainError(ErrorKind::invalidArgument, "unknown subcommand " + r.subcommand);
  } catch (const DomainError& e) {
    err << "error: " << name(e.kind()) << ": " << e.what() << '\n';
    return domainError;
  }
}

/// parse + run with the exit-code contract applied to parse failures.
inline int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Request r;
  try {
    r = parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << "usage: twistroot {root|profile|constancy|scan|audit} "
           "(--quadratic A B | --quartic A | --sextic B) [--t N | --range LO HI] [--bound N]\n"
           "       [--local-table PATH] [--json | --csv] [--modulus-search] [--relative] [--effort N]\n";
    return ok;
  } catch (const CLI::ParseError& e) {
    err << "error: invalid-argument: " << e.what() << '\n';
    return domainError;
  } catch (const DomainError& e) {
    err << "error: " << name(e.kind()) << ": " << e.what() << '\n';
    return domainError;
  }
  return run(r, out, err);
}

}  // namespace twistroot::cli
