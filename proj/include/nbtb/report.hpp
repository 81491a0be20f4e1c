#pragma once

// Run configuration, the three run modes and the JSON / CSV report writers
// behind the nbtb command line tool.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nbtb/bitension.hpp"

namespace nbtb {

inline constexpr int kSchemaVersion = 1;

const char* tool_version();

enum class Mode { analyze, classify, verify_oracle };
enum class Format { json, csv };

const char* mode_name(Mode m);
Mode parse_mode(std::string_view s);
Format parse_format(std::string_view s);

struct RunConfig {
  std::string surface = "sphere:r=1";
  std::optional<Domain> domain;  // the catalog default when empty
  int n_u = 9;
  int n_v = 9;
  std::vector<double> fiber = GridSpec{}.fiber;
  double fiber_bound = kDefaultFiberBound;
  double tol = kDefaultTolerance;
  Mode mode = Mode::analyze;
  Format format = Format::json;
  std::string out;  // stdout when empty
  bool fd_check = false;

  /// Throws ConfigParseError: grid below 3x3, tol <= 0, non-finite or
  /// out-of-bound fiber values, unparsable surface tag.
  void validate() const;
  SurfacePatch patch() const;
};

/// "name" or "name:key=value,key=value". Names: plane, sphere (r),
/// cylinder (r), catenoid (c), helicoid (c), enneper, torus (R, r),
/// ellipsoid (p, q, s), cone (alpha), graph (cIJ for the u^I v^J term).
/// Missing parameters take the value 1 (graph: 0; cone: pi/4).
SurfacePatch parse_surface_tag(std::string_view tag);

/// "u0,u1,v0,v1".
Domain parse_domain(std::string_view s);
/// "9x9" or "9".
std::pair<int, int> parse_grid(std::string_view s);
/// Comma separated reals.
std::vector<double> parse_real_list(std::string_view s);

/// Reads an INI-style file with sections [surface], [domain], [grid] and
/// [run] on top of base. Unknown sections or keys are errors.
RunConfig load_config(const std::filesystem::path& file, RunConfig base = {});
RunConfig parse_config(std::string_view text, RunConfig base = {});

struct SampleRecord {
  UV uv;
  double t = 0.0;
  double a = 0.0;
  double b = 0.0;
  bool umbilic = false;
  bool skipped = false;  // umbilic without curvature derivatives
  double P = 0.0, Q = 0.0, R = 0.0;
  double tau_norm = 0.0;
  double c1 = 0.0, c2 = 0.0, c3 = 0.0, c4 = 0.0;
  double e3comp = 0.0;          // <tau_2, te3>
  double e3comp_literal = 0.0;  // the frame expansion without metric terms
  // verify-oracle only
  std::optional<double> tension_delta;
  std::optional<double> bitension_delta;
  std::optional<double> e3_delta;
  std::optional<double> fd_delta;
};

struct Summary {
  double max_c1 = 0.0, max_c2 = 0.0, max_c3 = 0.0, max_c4 = 0.0;
  double mean_c1 = 0.0, mean_c2 = 0.0, mean_c3 = 0.0, mean_c4 = 0.0;
  double max_tau = 0.0;
  double max_e3comp = 0.0;
  std::optional<double> max_tension_delta;
  std::optional<double> max_bitension_delta;
  std::optional<double> max_e3_delta;
  std::optional<double> max_fd_delta;
};

struct Report {
  RunConfig config;
  std::string surface;  // canonical tag
  Domain domain;
  std::vector<SampleRecord> samples;  // grid order, then fiber order
  Verdict verdict;
  Summary summary;
};

Report run(const RunConfig& config);

/// 0 for a conclusive verdict, 1 for Inconclusive.
int exit_code(const Report& r);

std::string render_json(const Report& r);
std::string render_csv(const Report& r);
std::string render(const Report& r, Format f);
std::string render_summary(const Report& r);

/// Writes to a temporary sibling and renames it into place.
void write_atomic(const std::filesystem::path& file, std::string_view content);

}  // namespace nbtb
