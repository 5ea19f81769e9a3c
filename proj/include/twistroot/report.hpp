#pragma once

#include <ostream>
#include <sstream>
#include <string>

#include "json.hpp"
#include "twistroot/analysis.hpp"

namespace twistroot {

using Json = nlohmann::json;

namespace detail {

inline Sign signFromJson(const Json& j) { return signFromInt(j.get<int>()); }

template <class Enum, std::size_t N>
Enum enumFromName(const std::string& text, const Enum (&all)[N]) {
  for (Enum e : all) {
    if (name(e) == text) return e;
  }
  throw DomainError(ErrorKind::invalidArgument, "unknown name '" + text + "'");
}

inline FamilyKind familyFromName(const std::string& text) {
  static constexpr FamilyKind all[] = {FamilyKind::quadratic, FamilyKind::quartic,
                                       FamilyKind::sextic};
  return enumFromName(text, all);
}

}  // namespace detail

inline Json toJson(const LocalRootResult& r) {
  return {{"p", r.p.str()}, {"sign", toInt(r.sign)}, {"rule", std::string(name(r.rule))}};
}

inline LocalRootResult localRootFromJson(const Json& j) {
  return {parseInteger(j.at("p").get<std::string>()), detail::signFromJson(j.at("sign")),
          parseLocalRule(j.at("rule").get<std::string>())};
}

inline Json toJson(const RootNumberBreakdown& r) {
  Json j;
  j["family"] = std::string(name(r.kind));
  j["a"] = r.a.str();
  j["b"] = r.b.str();
  j["t"] = r.t.str();
  j["parameter"] = r.parameter.str();
  j["W"] = toInt(r.total);
  j["W_infinity"] = toInt(r.leadingInfinity);
  j["W2"] = toJson(r.w2);
  j["W3"] = toJson(r.w3);
  j["jacobi"] = Json::array();
  for (const auto& f : r.jacobiFactors) {
    j["jacobi"].push_back({{"symbol", f.symbol}, {"sign", toInt(f.sign)}});
  }
  j["large_primes"] = Json::array();
  for (const auto& f : r.largePrimeFactors) {
    j["large_primes"].push_back({{"p", f.p.str()}, {"sign", toInt(f.sign)}, {"type", f.type.str()}});
  }
  j["notices"] = r.notices;
  return j;
}

inline RootNumberBreakdown breakdownFromJson(const Json& j) {
  RootNumberBreakdown r;
  r.kind = detail::familyFromName(j.at("family").get<std::string>());
  r.a = parseInteger(j.at("a").get<std::string>());
  r.b = parseInteger(j.at("b").get<std::string>());
  r.t = parseInteger(j.at("t").get<std::string>());
  r.parameter = parseInteger(j.at("parameter").get<std::string>());
  r.total = detail::signFromJson(j.at("W"));
  r.leadingInfinity = detail::signFromJson(j.at("W_infinity"));
  r.w2 = localRootFromJson(j.at("W2"));
  r.w3 = localRootFromJson(j.at("W3"));
  for (const auto& f : j.at("jacobi")) {
    r.jacobiFactors.push_back({f.at("symbol").get<std::string>(), detail::signFromJson(f.at("sign"))});
  }
  for (const auto& f : j.at("large_primes")) {
    r.largePrimeFactors.push_back({parseInteger(f.at("p").get<std::string>()),
                                   detail::signFromJson(f.at("sign")),
                                   KodairaType::parse(f.at("type").get<std::string>())});
  }
  r.notices = j.at("notices").get<std::vector<std::string>>();
  return r;
}

inline Json toJson(const CFactorReport& c) {
  Json j{{"C2", toInt(c.c2)},         {"C3", toInt(c.c3)},         {"CM", toInt(c.cM)},
         {"C0", toInt(c.c0)},         {"CDelta", toInt(c.cDelta)}, {"C", toInt(c.product)},
         {"D2", toInt(c.d2)},         {"D3", toInt(c.d3)},         {"D2_source", c.d2Source},
         {"D3_source", c.d3Source}};
  j["D"] = Json::array();
  for (const auto& f : c.factors) {
    j["D"].push_back({{"p", f.p.str()}, {"sign", toInt(f.dp)}, {"reason", std::string(name(f.reason))}});
  }
  return j;
}

inline std::string stateText(ClassState s) {
  switch (s) {
    case ClassState::plus: return "+1";
    case ClassState::minus: return "-1";
    case ClassState::mixed: return "mixed";
    case ClassState::undetermined: return "?";
  }
  return "?";
}

inline std::string classText(const ClassKey& k) {
  return (k.sign < 0 ? "-" : "+") + std::to_string(k.residue);
}

inline std::string witnessText(const ClassEntry& e) {
  std::string w = std::to_string(e.witness);
  if (e.conflict) w += ";" + std::to_string(*e.conflict);
  return w;
}

/// Header plus one row per class: t_class,sq_class,sign,witness.
inline void writeProfileCsv(std::ostream& os, const PeriodicityProfile& p) {
  os << "t_class,sq_class,sign,witness\n";
  for (const auto& [k, e] : p.classes) {
    os << classText(k) << ',' << k.sqClass << ',' << stateText(e.state) << ',' << witnessText(e)
       << '\n';
  }
}

inline Json toJson(const ModulusCheck& c) {
  return {{"modulus", c.modulus}, {"square_modulus", c.squareModulus}, {"classes", c.classes},
          {"mixed", c.mixed}};
}

inline Json toJson(const PeriodicityProfile& p) {
  Json j;
  j["family"] = std::string(name(p.kind));
  j["a"] = p.a.str();
  j["b"] = p.b.str();
  j["modulus"] = p.modulus;
  j["square_modulus"] = p.squareModulus;
  j["scan_bound"] = p.scanBound;
  j["scanned"] = p.samples.size();
  j["counts"] = {{"plus", p.count(ClassState::plus)},
                 {"minus", p.count(ClassState::minus)},
                 {"mixed", p.count(ClassState::mixed)},
                 {"undetermined", p.count(ClassState::undetermined)}};
  j["classes"] = Json::array();
  for (const auto& [k, e] : p.classes) {
    j["classes"].push_back({{"t_class", classText(k)},
                            {"sq_class", k.sqClass},
                            {"sign", stateText(e.state)},
                            {"witness", witnessText(e)},
                            {"count", e.count}});
  }
  return j;
}

inline Json toJson(const ConstancyVerdict& v) {
  return {{"overall", std::string(name(v.overall))},
          {"a", v.holdsA},
          {"b", v.holdsB},
          {"c", v.holdsC},
          {"d", v.holdsD},
          {"diagnostics", v.diagnostics}};
}

inline Json toJson(const SignScan& s) {
  auto strs = [](const std::vector<Integer>& v) {
    Json a = Json::array();
    for (const auto& x : v) a.push_back(x.str());
    return a;
  };
  return {{"mode", s.mode == ScanMode::absolute ? "absolute" : "relative"},
          {"plus", {{"count", s.plusCount}, {"samples", strs(s.plusSamples)}}},
          {"minus", {{"count", s.minusCount}, {"samples", strs(s.minusSamples)}}},
          {"undetermined", s.undetermined},
          {"skipped", s.skipped}};
}

inline void writeHuman(std::ostream& os, const RootNumberBreakdown& r) {
  os << name(r.kind) << " twist, t = " << r.t << " (parameter " << r.parameter << ")\n";
  for (const auto& n : r.notices) os << "  note: " << n << '\n';
  os << "  W_inf = " << r.leadingInfinity << '\n';
  os << "  W_2 = " << r.w2.sign << " [" << name(r.w2.rule) << "]\n";
  os << "  W_3 = " << r.w3.sign << " [" << name(r.w3.rule) << "]\n";
  for (const auto& f : r.jacobiFactors) os << "  " << f.symbol << " = " << f.sign << '\n';
  for (const auto& f : r.largePrimeFactors) {
    os << "  W_" << f.p << " = " << f.sign << " [" << f.type << "]\n";
  }
  os << "W = " << r.total << '\n';
}

}  // namespace twistroot
