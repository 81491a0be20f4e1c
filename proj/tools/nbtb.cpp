// nbtb: tension, bitension and tangential biharmonicity of normal bundles.
//
//   nbtb classify --surface torus:R=2,r=0.5 --grid 9x9 --t 0,0.5,1
//   nbtb verify-oracle --config run.ini --out report.json
//
// Exit status: 0 ok, 1 inconclusive verdict, 2 config or input error,
// 3 numeric degeneracy.

#include <cstdio>
#include <exception>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "nbtb/report.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;

int fail(int code, const char* kind, const std::exception& e) {
  std::fprintf(stderr, "nbtb: %s: %s\n", kind, e.what());
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tension and bitension of surface normal bundles", "nbtb"};
  app.set_version_flag("--version", nbtb::tool_version());
  app.require_subcommand(0, 1);

  std::string surface, domain, grid, fiber, out, format, config;
  double tol = 0.0;
  bool fd = false;
  bool quiet = false;
  auto* o_surface = app.add_option("--surface", surface, "surface tag, e.g. torus:R=2,r=0.5");
  auto* o_domain = app.add_option("--domain", domain, "u0,u1,v0,v1");
  auto* o_grid = app.add_option("--grid", grid, "n_u x n_v, e.g. 9x9");
  auto* o_t = app.add_option("--t", fiber, "fiber values, comma separated");
  auto* o_tol = app.add_option("--tol", tol, "classification tolerance");
  auto* o_out = app.add_option("--out", out, "report file (stdout when absent)");
  auto* o_format = app.add_option("--format", format, "json or csv");
  app.add_option("--config", config, "INI config; flags override it");
  auto* o_fd = app.add_flag("--fd-check", fd, "also compare against finite differences (verify-oracle)");
  app.add_flag("-q,--quiet", quiet, "no human-readable summary");

  app.add_subcommand("analyze", "per-sample tension, residuals and verdict")->fallthrough();
  app.add_subcommand("classify", "verdict only")->fallthrough();
  app.add_subcommand("verify-oracle", "closed forms against the chart oracle")->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  nbtb::Report report;
  std::string text;
  try {
    nbtb::RunConfig rc;
    if (!config.empty()) rc = nbtb::load_config(config, rc);
    if (!app.get_subcommands().empty()) {
      rc.mode = nbtb::parse_mode(app.get_subcommands().front()->get_name());
    } else if (config.empty()) {
      throw nbtb::ConfigParseError("no mode given: analyze, classify or verify-oracle");
    }
    if (o_surface->count()) rc.surface = surface;
    if (o_domain->count()) rc.domain = nbtb::parse_domain(domain);
    if (o_grid->count()) std::tie(rc.n_u, rc.n_v) = nbtb::parse_grid(grid);
    if (o_t->count()) rc.fiber = nbtb::parse_real_list(fiber);
    if (o_tol->count()) rc.tol = tol;
    if (o_out->count()) rc.out = out;
    if (o_format->count()) rc.format = nbtb::parse_format(format);
    if (o_fd->count()) rc.fd_check = fd;

    report = nbtb::run(rc);
    text = nbtb::render(report, rc.format);
    if (rc.out.empty()) {
      std::cout << text << std::flush;
    } else {
      nbtb::write_atomic(rc.out, text);
    }
  } catch (const nbtb::InputError& e) {
    return fail(kExitConfig, "input error", e);
  } catch (const nbtb::NumericError& e) {
    return fail(kExitNumeric, "numeric error", e);
  } catch (const std::exception& e) {
    return fail(kExitNumeric, "error", e);
  }

  if (!quiet) std::cerr << nbtb::render_summary(report);
  return nbtb::exit_code(report);
}
