#include <iostream>

#include <CLI11.hpp>

#include "cli.hpp"

int main(int argc, char** argv) {
  using curvebound::cli::RunConfig;
  CLI::App app{"Weil polynomial enumeration and point-bound certificates"};
  app.require_subcommand(1);
  RunConfig config;
  std::optional<long> p1, p2, p3;
  std::vector<std::string> prescribe;
  std::string output, bounds, curve;

  auto common = [&](CLI::App* sub, bool search) {
    sub->add_option("--q", config.q, "Base field size (prime power)")->capture_default_str();
    sub->add_option("--format", config.format, "json | csv | markdown");
    sub->add_option("--output,-o", output, "Write the artifact here instead of stdout");
    sub->add_option("--threads,-j", config.threads, "Worker threads")->capture_default_str();
    sub->add_flag("--timestamp", config.timestamp, "Add a generation timestamp header");
    if (search) {
      sub->add_option("--g", config.g, "Genus")->capture_default_str();
      sub->add_option("--p1", p1, "Prescribed number of degree-1 places");
      sub->add_option("--p2", p2, "Prescribed number of degree-2 places");
      sub->add_option("--p3", p3, "Prescribed number of degree-3 places");
      sub->add_option("--prescribe", prescribe, "Prescribed place count n:P_n (repeatable)");
    }
  };
  auto* en = app.add_subcommand("enumerate", "List real Weil polynomials as JSON lines");
  common(en, true);
  auto* el = app.add_subcommand("eliminate", "Enumerate and classify candidates by elimination argument");
  common(el, true);
  auto* rp = app.add_subcommand("replay-theorem2", "Replay the genus-8 nonexistence certificate");
  common(rp, false);
  rp->add_option("--bounds", bounds, "Point-bound table (JSON); defaults to $CURVEBOUND_BOUNDS or the installed table");
  rp->add_option("--p7-override", config.p7_override, "Replace the computed P_7(C) (fault injection)");
  auto* cc = app.add_subcommand("count-curve", "Point count, genus and divisor of f for the Kummer cover");
  common(cc, false);
  cc->add_option("--curve", curve, "Curve config file (h, g, f_y, f_0 coefficient lists)");
  cc->add_option("--max-degree", config.max_degree, "Place table degree for --format csv")->capture_default_str();
  auto* zc = app.add_subcommand("zeta-curve", "N_1..N_8 and the real Weil polynomial of the cover");
  common(zc, false);
  zc->add_option("--curve", curve, "Curve config file (h, g, f_y, f_0 coefficient lists)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : curvebound::cli::kUsage;
  }
  config.command = app.get_subcommands().front()->get_name();
  if (p1) config.prescribed[1] = *p1;
  if (p2) config.prescribed[2] = *p2;
  if (p3) config.prescribed[3] = *p3;
  for (const auto& s : prescribe) {
    const auto colon = s.find(':');
    try {
      if (colon == std::string::npos) throw std::invalid_argument(s);
      config.prescribed[std::stoi(s.substr(0, colon))] = std::stol(s.substr(colon + 1));
    } catch (const std::exception&) {
      std::cerr << "usage error: --prescribe expects n:P_n, got '" << s << "'\n";
      return curvebound::cli::kUsage;
    }
  }
  if (!output.empty()) config.output = output;
  if (!bounds.empty()) config.bounds = bounds;
  if (!curve.empty()) config.curve = curve;
  return curvebound::cli::run(config, std::cout, std::cerr);
}
