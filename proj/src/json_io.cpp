#include "simprox/json_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "json.hpp"

namespace simprox {

namespace {

using json = nlohmann::ordered_json;

void dump_to(const json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << j.dump(2) << '\n';
  if (!out) throw std::runtime_error("write to " + path + " failed");
}

json load_from(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

Int parse_int(const json& v, const std::string& what) {
  if (!v.is_string())
    throw std::runtime_error(what + " must be a decimal string");
  try {
    return Int(v.get<std::string>());
  } catch (const std::invalid_argument&) {
    throw std::runtime_error(what + ": bad integer literal \"" +
                             v.get<std::string>() + "\"");
  }
}

long parse_long(const json& v, const std::string& what) {
  if (!v.is_number_integer())
    throw std::runtime_error(what + " must be an integer");
  return v.get<long>();
}

// %.17g round-trips doubles exactly; enough for plotting, and deterministic
std::string csv_double(const Rational& r) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", r.approx());
  return buf;
}

}  // namespace

void write_cf_json(const CFNumber& cf, const std::string& path,
                   const std::string& provenance) {
  json j;
  j["kind"] = "cf";
  j["b0"] = cf.b0().get_str();
  json qs = json::array();
  for (const Int& q : cf.quotients()) qs.push_back(q.get_str());
  j["quotients"] = std::move(qs);
  j["provenance"] = provenance;
  dump_to(j, path);
}

void write_digits_json(const DigitNumber& d, const std::string& path,
                       const std::string& provenance) {
  json j;
  j["kind"] = "digits";
  j["base"] = d.base();
  j["amplitude"] = d.amplitude();
  j["positions"] = d.positions();
  json bs = json::array();
  for (const auto& [e, f] : d.blocks()) bs.push_back(json::array({e, f}));
  j["blocks"] = std::move(bs);
  j["provenance"] = provenance;
  dump_to(j, path);
}

LoadedNumber read_number_json(const std::string& path) {
  const json j = load_from(path);
  if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string())
    throw std::runtime_error(path + ": missing \"kind\" tag");
  const std::string kind = j.at("kind").get<std::string>();

  LoadedNumber out;
  out.provenance = j.value("provenance", std::string{});
  if (kind == "cf") {
    if (!j.contains("b0") || !j.contains("quotients") ||
        !j.at("quotients").is_array())
      throw std::runtime_error(path + ": cf needs \"b0\" and \"quotients\"");
    Int b0 = parse_int(j.at("b0"), path + ": b0");
    std::vector<Int> qs;
    qs.reserve(j.at("quotients").size());
    for (const auto& q : j.at("quotients"))
      qs.push_back(parse_int(q, path + ": quotient"));
    out.cf = std::make_unique<CFNumber>(std::move(b0), std::move(qs));
    return out;
  }
  if (kind == "digits") {
    for (const char* key : {"base", "amplitude", "positions", "blocks"})
      if (!j.contains(key))
        throw std::runtime_error(path + ": digits needs \"" + std::string(key) +
                                 "\"");
    long base = parse_long(j.at("base"), path + ": base");
    long amp = parse_long(j.at("amplitude"), path + ": amplitude");
    std::vector<long> positions;
    for (const auto& p : j.at("positions"))
      positions.push_back(parse_long(p, path + ": position"));
    std::vector<DigitNumber::Block> blocks;
    for (const auto& b : j.at("blocks")) {
      if (!b.is_array() || b.size() != 2)
        throw std::runtime_error(path + ": each block must be a pair [e, f]");
      blocks.emplace_back(parse_long(b.at(0), path + ": block bound"),
                          parse_long(b.at(1), path + ": block bound"));
    }
    out.digits = std::make_unique<DigitNumber>(base, amp, std::move(positions),
                                               std::move(blocks));
    return out;
  }
  throw std::runtime_error(path + ": unknown kind \"" + kind + "\"");
}

std::string report_to_json(const VerificationReport& rep) {
  json j;
  j["schema"] = "report_v1";
  j["subject"] = rep.subject;
  j["psi"] = rep.psi;
  j["k"] = rep.k;
  j["base"] = rep.base;
  j["verdict"] = to_string(rep.verdict());
  j["vacuous"] = rep.vacuous;
  j["note"] = rep.note;

  json specials = json::array();
  for (const SpecialCheck& s : rep.special_checks) {
    json e;
    e["z"] = s.z.get_str();
    e["n"] = s.n;
    e["lower"] = to_string(s.lower);
    e["upper"] = to_string(s.upper);
    e["err_lo"] = s.err.lo().str();
    e["err_hi"] = s.err.hi().str();
    e["counted"] = s.counted;
    specials.push_back(std::move(e));
  }
  j["special_checks"] = std::move(specials);

  json sweep;
  sweep["run"] = rep.sweep.run;
  sweep["z_lo"] = rep.sweep.z_lo.get_str();
  sweep["z_hi"] = rep.sweep.z_hi.get_str();
  sweep["c"] = rep.sweep.c.str();
  json viol = json::array();
  for (const Int& v : rep.sweep.violations) viol.push_back(v.get_str());
  sweep["violations"] = std::move(viol);
  sweep["inconclusive"] = rep.sweep.inconclusive;
  j["sweep"] = std::move(sweep);

  json thresholds;  // object; insertion order preserved
  for (const auto& [key, v] : rep.thresholds) thresholds[key] = v.get_str();
  j["thresholds"] = std::move(thresholds);
  j["precisions"] = rep.precisions;
  return j.dump(2) + "\n";
}

void write_report_json(const VerificationReport& rep, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << report_to_json(rep);
  if (!out) throw std::runtime_error("write to " + path + " failed");
}

void write_sweep_csv(const std::vector<SimError>& rows,
                     const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << "z,err_lo,err_hi,argmax_j,decided\n";
  for (const SimError& r : rows)
    out << r.z.get_str() << ',' << csv_double(r.err.lo()) << ','
        << csv_double(r.err.hi()) << ',' << r.argmax_j << ','
        << (r.decided ? 1 : 0) << '\n';
  if (!out) throw std::runtime_error("write to " + path + " failed");
}

}  // namespace simprox
