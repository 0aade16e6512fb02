#include "cli.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <unistd.h>

#include <json.hpp>

#include "curvebound/bounds.hpp"
#include "curvebound/coverproof.hpp"
#include "curvebound/eliminate.hpp"
#include "curvebound/enumerate.hpp"
#include "curvebound/ffcurve.hpp"
#include "curvebound/serialize.hpp"

namespace curvebound::cli {

namespace {

using nlohmann::ordered_json;

class UsageError : public std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

std::string resolve_format(const RunConfig& c, const std::string& fallback, std::initializer_list<const char*> allowed) {
  const std::string f = c.format.empty() ? fallback : c.format;
  for (const char* a : allowed) {
    if (f == a) return f;
  }
  std::string list;
  for (const char* a : allowed) list += (list.empty() ? "" : ", ") + std::string(a);
  throw UsageError("format '" + f + "' is not available for " + c.command + " (choose " + list + ")");
}

ConstraintSet constraints(const RunConfig& c) {
  ConstraintSet cs;
  cs.q = c.q;
  cs.g = c.g;
  cs.prescribed = c.prescribed;
  try {
    cs.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return cs;
}

KummerCover load_cover(const RunConfig& c) {
  if (!c.curve) return KummerCover();
  std::ifstream in(*c.curve);
  if (!in) throw UsageError("cannot read curve config " + c.curve->string());
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return KummerCover(KummerCoverSpec::parse(ss.str()));
  } catch (const std::invalid_argument& e) {
    throw UsageError(c.curve->string() + ": " + e.what());
  }
}

std::string now_utc() {
  const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

std::string stamp(const std::string& text, const std::string& format, bool json_lines) {
  const std::string when = now_utc();
  if (format == "csv") return "# generated " + when + "\n" + text;
  if (format == "markdown") return "<!-- generated " + when + " -->\n" + text;
  if (json_lines) return ordered_json{{"generated", when}}.dump() + "\n" + text;
  ordered_json doc = ordered_json::parse(text);
  ordered_json out;
  out["generated"] = when;
  for (auto& [k, v] : doc.items()) out[k] = v;
  return out.dump(2) + "\n";
}

void emit(const RunConfig& c, std::string text, const std::string& format, bool json_lines, std::ostream& out) {
  if (c.timestamp) text = stamp(text, format, json_lines);
  if (!c.output) {
    out << text;
    return;
  }
  namespace fs = std::filesystem;
  const fs::path tmp = c.output->string() + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream f(tmp, std::ios::binary);
    if (!f) throw UsageError("cannot write " + tmp.string());
    f << text;
    f.close();
    if (!f) {
      fs::remove(tmp);
      throw std::runtime_error("write to " + tmp.string() + " failed");
    }
  }
  fs::rename(tmp, *c.output);
}

BoundsTable load_bounds(const RunConfig& c) {
  return c.bounds ? BoundsTable::load(*c.bounds) : BoundsTable::load_default();
}

int cmd_enumerate(const RunConfig& c, std::ostream& out) {
  resolve_format(c, "json", {"json"});
  const auto polys = enumerate_real_weil(constraints(c), c.threads);
  emit(c, polys_to_json_lines(polys), "json", true, out);
  return kSuccess;
}

int cmd_eliminate(const RunConfig& c, std::ostream& out) {
  const std::string fmt = resolve_format(c, "csv", {"csv", "json", "markdown"});
  const auto polys = enumerate_real_weil(constraints(c), c.threads);
  std::vector<Verdict> verdicts;
  try {
    verdicts = eliminate_all(polys, c.q, c.threads);
  } catch (const NotASquare& e) {
    throw UsageError(e.what());
  }
  std::string text = fmt == "csv" ? verdicts_to_csv(verdicts)
                                  : (fmt == "json" ? verdicts_to_json(verdicts, c.q) : verdicts_to_markdown(verdicts));
  emit(c, text, fmt, false, out);
  return kSuccess;
}

int cmd_replay(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const std::string fmt = resolve_format(c, "json", {"json", "markdown"});
  ReplayOptions opts;
  opts.threads = c.threads;
  if (c.p7_override) opts.p7_override = mpz_class(*c.p7_override);
  try {
    const Certificate cert = replay_theorem2(c.q, load_bounds(c), opts);
    emit(c, fmt == "json" ? cert.to_json() : cert.to_markdown(), fmt, false, out);
    return kSuccess;
  } catch (const StepFailed& e) {
    err << "error: " << e.what() << "\n";
    for (const auto& [k, v] : e.step().values) err << "  " << k << " = " << v << "\n";
    return kStepFailed;
  }
}

std::string divisor_string(const std::vector<std::pair<PlaceRecord, int>>& div) {
  std::string s;
  for (const auto& [p, v] : div) {
    const int a = std::abs(v);
    std::string term = (a == 1 ? "" : std::to_string(a)) + p.name();
    if (s.empty()) s = (v < 0 ? "-" : "") + term;
    else s += (v < 0 ? " - " : " + ") + term;
  }
  return s;
}

int cmd_count_curve(const RunConfig& c, std::ostream& out) {
  const std::string fmt = resolve_format(c, "markdown", {"markdown", "json", "csv"});
  const KummerCover cover = load_cover(c);
  if (fmt == "csv") {
    if (c.max_degree < 1 || c.max_degree > 8) throw UsageError("--max-degree must be in [1, 8]");
    emit(c, places_to_csv(cover.places_D(c.max_degree)), fmt, false, out);
    return kSuccess;
  }
  auto div = cover.divisor_of_f();
  std::stable_sort(div.begin(), div.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
  const long n1 = cover.count_points_C(1);
  const int genus = cover.genus_C_rh();
  std::string text;
  if (fmt == "json") {
    ordered_json j;
    j["N_1"] = n1;
    j["genus"] = genus;
    ordered_json d = ordered_json::array();
    for (const auto& [p, v] : div) d.push_back({{"place", p.name()}, {"degree", p.degree}, {"valuation", v}});
    j["divisor_of_f"] = std::move(d);
    text = j.dump(2) + "\n";
  } else {
    text = "N_1 = " + std::to_string(n1) + ", genus = " + std::to_string(genus) + "\n\ndiv(f) = " +
           divisor_string(div) + "\n";
  }
  emit(c, text, fmt, false, out);
  return kSuccess;
}

int cmd_zeta_curve(const RunConfig& c, std::ostream& out) {
  const std::string fmt = resolve_format(c, "json", {"json", "markdown"});
  const KummerCover cover = load_cover(c);
  const auto counts = cover.point_counts_C(8);
  const IntPoly h = cover.real_weil_of_C();
  std::string text;
  if (fmt == "json") {
    ordered_json j;
    j["q"] = KummerCover::kBaseField;
    j["genus"] = h.degree();
    j["N"] = counts;
    j["h"] = ordered_json::parse(poly_to_json(h));
    text = j.dump(2) + "\n";
  } else {
    text = "| n | N_n(C) |\n|---|---|\n";
    for (size_t n = 0; n < counts.size(); ++n) text += "| " + std::to_string(n + 1) + " | " + std::to_string(counts[n]) + " |\n";
    text += "\nh = " + h.to_string() + "\n";
  }
  emit(c, text, fmt, false, out);
  return kSuccess;
}

}  // namespace

bool is_prime_power(long q) {
  if (q < 2) return false;
  long p = 2;
  while (p * p <= q && q % p != 0) ++p;
  if (q % p != 0) return true;  // q prime
  while (q % p == 0) q /= p;
  return q == 1;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    if (!is_prime_power(config.q)) throw UsageError("--q must be a prime power, got " + std::to_string(config.q));
    if (config.threads == 0) throw UsageError("--threads must be positive");
    if (config.command == "enumerate") return cmd_enumerate(config, out);
    if (config.command == "eliminate") return cmd_eliminate(config, out);
    if (config.command == "replay-theorem2") return cmd_replay(config, out, err);
    if (config.command == "count-curve") return cmd_count_curve(config, out);
    if (config.command == "zeta-curve") return cmd_zeta_curve(config, out);
    throw UsageError("unknown command '" + config.command + "'");
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace curvebound::cli
