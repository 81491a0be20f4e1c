#include "nbtb/report.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>
#include <system_error>

#include <unistd.h>

#include "json.hpp"
#include "nbtb/oracle.hpp"
#include "nbtb/parallel.hpp"

#ifndef NBTB_VERSION
#define NBTB_VERSION "0.0.0"
#endif

namespace nbtb {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  for (;;) {
    const auto k = s.find(sep);
    parts.push_back(trim(s.substr(0, k)));
    if (k == std::string_view::npos) break;
    s.remove_prefix(k + 1);
  }
  return parts;
}

double parse_real(std::string_view s, std::string_view what) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double x = 0.0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec != std::errc{} || end != s.data() + s.size() || !std::isfinite(x)) {
    throw ConfigParseError("bad number '" + std::string(s) + "' for " +
                           std::string(what));
  }
  return x;
}

int parse_int(std::string_view s, std::string_view what) {
  s = trim(s);
  int x = 0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec != std::errc{} || end != s.data() + s.size()) {
    throw ConfigParseError("bad integer '" + std::string(s) + "' for " +
                           std::string(what));
  }
  return x;
}

bool parse_bool(std::string_view s, std::string_view what) {
  s = trim(s);
  if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
  if (s == "false" || s == "0" || s == "no" || s == "off") return false;
  throw ConfigParseError("bad boolean '" + std::string(s) + "' for " +
                         std::string(what));
}

std::string fmt17(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

const char* tool_version() { return NBTB_VERSION; }

const char* mode_name(Mode m) {
  switch (m) {
    case Mode::analyze:
      return "analyze";
    case Mode::classify:
      return "classify";
    case Mode::verify_oracle:
      return "verify-oracle";
  }
  return "analyze";
}

Mode parse_mode(std::string_view s) {
  s = trim(s);
  if (s == "analyze") return Mode::analyze;
  if (s == "classify") return Mode::classify;
  if (s == "verify-oracle") return Mode::verify_oracle;
  throw ConfigParseError("unknown mode '" + std::string(s) + "'");
}

Format parse_format(std::string_view s) {
  s = trim(s);
  if (s == "json") return Format::json;
  if (s == "csv") return Format::csv;
  throw ConfigParseError("unknown format '" + std::string(s) + "'");
}

SurfacePatch parse_surface_tag(std::string_view tag) {
  tag = trim(tag);
  const auto colon = tag.find(':');
  const std::string name(trim(tag.substr(0, colon)));
  std::map<std::string, double, std::less<>> kv;
  if (colon != std::string_view::npos) {
    for (std::string_view item : split(tag.substr(colon + 1), ',')) {
      const auto eq = item.find('=');
      if (eq == std::string_view::npos) {
        throw ConfigParseError("surface parameter '" + std::string(item) +
                               "' is not key=value");
      }
      const std::string key(trim(item.substr(0, eq)));
      if (key.empty() || kv.count(key)) {
        throw ConfigParseError("empty or repeated surface parameter '" + key + "'");
      }
      kv[key] = parse_real(item.substr(eq + 1), key);
    }
  }

  auto take = [&](std::initializer_list<const char*> allowed) {
    for (const auto& [k, v] : kv) {
      bool known = false;
      for (const char* a : allowed) known = known || k == a;
      if (!known) {
        throw ConfigParseError("unknown parameter '" + k + "' for " + name);
      }
    }
  };
  auto get = [&](const char* key, double fallback) {
    const auto it = kv.find(key);
    return it == kv.end() ? fallback : it->second;
  };

  try {
    if (name == "plane") {
      take({});
      return SurfacePatch::plane();
    }
    if (name == "sphere") {
      take({"r"});
      return SurfacePatch::sphere(get("r", 1.0));
    }
    if (name == "cylinder") {
      take({"r"});
      return SurfacePatch::cylinder(get("r", 1.0));
    }
    if (name == "catenoid") {
      take({"c"});
      return SurfacePatch::catenoid(get("c", 1.0));
    }
    if (name == "helicoid") {
      take({"c"});
      return SurfacePatch::helicoid(get("c", 1.0));
    }
    if (name == "enneper") {
      take({});
      return SurfacePatch::enneper();
    }
    if (name == "torus") {
      take({"R", "r"});
      return SurfacePatch::torus(get("R", 2.0), get("r", 0.5));
    }
    if (name == "ellipsoid") {
      take({"p", "q", "s"});
      return SurfacePatch::ellipsoid(get("p", 1.0), get("q", 1.0), get("s", 1.0));
    }
    if (name == "cone") {
      take({"alpha"});
      return SurfacePatch::cone(get("alpha", std::numbers::pi / 4));
    }
    if (name == "graph") {
      GraphPoly c{};
      for (const auto& [k, v] : kv) {
        if (k.size() != 3 || k[0] != 'c' || k[1] < '0' || k[1] > '4' ||
            k[2] < '0' || k[2] > '4' || (k[1] - '0') + (k[2] - '0') > 4) {
          throw ConfigParseError("graph coefficient '" + k +
                                 "' must be cIJ with I + J <= 4");
        }
        c[simd::jet_index(k[1] - '0', k[2] - '0')] = v;
      }
      return SurfacePatch::graph(c);
    }
  } catch (const ConfigParseError&) {
    throw;
  } catch (const InputError& e) {
    throw ConfigParseError("surface '" + std::string(tag) + "': " + e.what());
  }
  throw ConfigParseError("unknown surface '" + name + "'");
}

Domain parse_domain(std::string_view s) {
  const auto parts = split(s, ',');
  if (parts.size() != 4) throw ConfigParseError("domain needs u0,u1,v0,v1");
  Domain d{parse_real(parts[0], "u0"), parse_real(parts[1], "u1"),
           parse_real(parts[2], "v0"), parse_real(parts[3], "v1")};
  if (!(d.u0 < d.u1 && d.v0 < d.v1)) {
    throw ConfigParseError("domain bounds must satisfy u0 < u1 and v0 < v1");
  }
  return d;
}

std::pair<int, int> parse_grid(std::string_view s) {
  s = trim(s);
  const auto x = s.find('x');
  if (x == std::string_view::npos) {
    const int n = parse_int(s, "grid");
    return {n, n};
  }
  return {parse_int(s.substr(0, x), "grid"), parse_int(s.substr(x + 1), "grid")};
}

std::vector<double> parse_real_list(std::string_view s) {
  std::vector<double> out;
  for (std::string_view item : split(s, ',')) out.push_back(parse_real(item, "list"));
  return out;
}

void RunConfig::validate() const {
  if (n_u < 3 || n_v < 3) throw ConfigParseError("grid must be at least 3x3");
  if (!(tol > 0.0) || !std::isfinite(tol)) {
    throw ConfigParseError("tolerance must be positive");
  }
  if (!(fiber_bound > 0.0)) throw ConfigParseError("fiber bound must be positive");
  if (fiber.empty()) throw ConfigParseError("fiber sample list is empty");
  for (double t : fiber) {
    if (!std::isfinite(t) || std::abs(t) > fiber_bound) {
      throw ConfigParseError("fiber value " + fmt17(t) + " outside the fiber bound");
    }
  }
  if (domain && !(domain->u0 < domain->u1 && domain->v0 < domain->v1)) {
    throw ConfigParseError("domain bounds must satisfy u0 < u1 and v0 < v1");
  }
  patch();
}

SurfacePatch RunConfig::patch() const {
  SurfacePatch p = parse_surface_tag(surface);
  return domain ? p.with_domain(*domain) : p;
}

RunConfig parse_config(std::string_view text, RunConfig base) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  std::istringstream in{std::string(text)};
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigParseError(std::string("config: ") + e.what());
  }

  RunConfig c = std::move(base);
  std::optional<std::pair<double, double>> u_range, v_range;
  for (const auto& [section, body] : tree) {
    if (body.empty() && !body.data().empty()) {
      throw ConfigParseError("config key '" + section + "' outside a section");
    }
    for (const auto& [key, node] : body) {
      const std::string& val = node.data();
      const std::string where = section + "." + key;
      if (section == "surface" && key == "tag") {
        c.surface = val;
      } else if (section == "domain" && (key == "u" || key == "v")) {
        const auto range = parse_real_list(val);
        if (range.size() != 2) throw ConfigParseError(where + " needs two values");
        (key == "u" ? u_range : v_range) = std::pair{range[0], range[1]};
      } else if (section == "grid" && key == "n_u") {
        c.n_u = parse_int(val, where);
      } else if (section == "grid" && key == "n_v") {
        c.n_v = parse_int(val, where);
      } else if (section == "grid" && key == "size") {
        std::tie(c.n_u, c.n_v) = parse_grid(val);
      } else if (section == "grid" && key == "fiber") {
        c.fiber = parse_real_list(val);
      } else if (section == "grid" && key == "fiber_bound") {
        c.fiber_bound = parse_real(val, where);
      } else if (section == "run" && key == "mode") {
        c.mode = parse_mode(val);
      } else if (section == "run" && key == "tolerance") {
        c.tol = parse_real(val, where);
      } else if (section == "run" && key == "format") {
        c.format = parse_format(val);
      } else if (section == "run" && key == "out") {
        c.out = val;
      } else if (section == "run" && key == "fd_check") {
        c.fd_check = parse_bool(val, where);
      } else {
        throw ConfigParseError("unknown config key '" + where + "'");
      }
    }
  }
  if (u_range || v_range) {
    Domain d = c.domain.value_or(parse_surface_tag(c.surface).domain());
    if (u_range) std::tie(d.u0, d.u1) = *u_range;
    if (v_range) std::tie(d.v0, d.v1) = *v_range;
    c.domain = d;
  }
  return c;
}

RunConfig load_config(const std::filesystem::path& file, RunConfig base) {
  std::ifstream in(file);
  if (!in) throw ConfigParseError("cannot read config " + file.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str(), std::move(base));
}

namespace {

std::vector<SampleRecord> sample_grid(const SurfacePatch& patch,
                                      const RunConfig& c,
                                      const std::vector<UV>& pts) {
  const std::size_t nt = c.fiber.size();
  std::vector<SampleRecord> records(pts.size() * nt);
  const bool oracle = c.mode == Mode::verify_oracle;
  parallel_for(pts.size(), [&](std::size_t i) {
    const SurfaceSample s = sample_surface(patch, pts[i]);
    const TangentialResiduals res = tangential_conditions(s.pd);
    for (std::size_t k = 0; k < nt; ++k) {
      const double t = c.fiber[k];
      SampleRecord& r = records[i * nt + k];
      r.uv = pts[i];
      r.t = t;
      r.a = s.pd.a.value();
      r.b = s.pd.b.value();
      r.umbilic = s.pd.umbilic;
      r.skipped = !s.pd.derivatives_reliable();
      r.c1 = res.c1;
      r.c2 = res.c2;
      r.c3 = res.c3;
      r.c4 = res.c4;
      const NBPoint np(patch, s, t, c.fiber_bound);
      if (!r.skipped) {
        const TensionValue tv = tension(np, oracle);
        r.P = tv.P;
        r.Q = tv.Q;
        r.R = tv.R;
        r.tau_norm = norm(tv.tau);
        r.e3comp = e3_component_exact(np);
        r.e3comp_literal = e3_component(np);
        if (oracle) r.tension_delta = norm(tv.tau - oracle_tension(np));
      }
      if (!oracle) continue;
      if (t == 0.0) {
        const Vec6d ob = oracle_bitension(np);
        r.bitension_delta = norm(res.bitension_t0 - ob);
        if (c.fd_check) r.fd_delta = norm(ob - fd_bitension(patch, pts[i], t));
      } else if (!r.skipped) {
        r.e3_delta = std::abs(r.e3comp - oracle_e3(np));
      }
    }
  });
  return records;
}

void fold_max(std::optional<double>& acc, const std::optional<double>& x) {
  if (x) acc = std::max(acc.value_or(0.0), *x);
}

Summary summarize(const std::vector<SampleRecord>& samples, const Verdict& v,
                  std::size_t n_fiber) {
  Summary s;
  s.max_c1 = v.max_residuals.c1;
  s.max_c2 = v.max_residuals.c2;
  s.max_c3 = v.max_residuals.c3;
  s.max_c4 = v.max_residuals.c4;
  s.max_tau = v.max_tension;
  s.max_e3comp = v.max_e3;
  if (samples.empty()) return s;
  double n = 0.0;
  for (std::size_t i = 0; i < samples.size(); i += n_fiber) {
    s.mean_c1 += samples[i].c1;
    s.mean_c2 += samples[i].c2;
    s.mean_c3 += samples[i].c3;
    s.mean_c4 += samples[i].c4;
    n += 1.0;
  }
  s.mean_c1 /= n;
  s.mean_c2 /= n;
  s.mean_c3 /= n;
  s.mean_c4 /= n;
  for (const SampleRecord& r : samples) {
    fold_max(s.max_tension_delta, r.tension_delta);
    fold_max(s.max_bitension_delta, r.bitension_delta);
    fold_max(s.max_e3_delta, r.e3_delta);
    fold_max(s.max_fd_delta, r.fd_delta);
  }
  return s;
}

}  // namespace

Report run(const RunConfig& config) {
  config.validate();
  Report r;
  r.config = config;
  const SurfacePatch patch = config.patch();
  r.surface = patch.tag();
  r.domain = patch.domain();

  GridSpec grid;
  grid.n_u = config.n_u;
  grid.n_v = config.n_v;
  grid.fiber = config.fiber;
  grid.fiber_bound = config.fiber_bound;
  const std::vector<UV> pts = grid.points(r.domain);

  if (config.mode != Mode::classify) r.samples = sample_grid(patch, config, pts);
  r.verdict = classify(patch, grid, config.tol);
  r.summary = summarize(r.samples, r.verdict, config.fiber.size());
  return r;
}

int exit_code(const Report& r) {
  return r.verdict.cls == SurfaceClass::inconclusive ? 1 : 0;
}

namespace {

using Json = nlohmann::ordered_json;

Json opt_json(const std::optional<double>& x) {
  return x ? Json(*x) : Json(nullptr);
}

Json sample_json(const SampleRecord& s) {
  Json j;
  j["u"] = s.uv.u;
  j["v"] = s.uv.v;
  j["t"] = s.t;
  j["a"] = s.a;
  j["b"] = s.b;
  j["umbilic"] = s.umbilic;
  j["skipped"] = s.skipped;
  auto live = [&](double x) { return s.skipped ? Json(nullptr) : Json(x); };
  j["P"] = live(s.P);
  j["Q"] = live(s.Q);
  j["R"] = live(s.R);
  j["tau"] = live(s.tau_norm);
  j["c1"] = s.c1;
  j["c2"] = s.c2;
  j["c3"] = s.c3;
  j["c4"] = s.c4;
  j["e3comp"] = live(s.e3comp);
  j["e3comp_literal"] = live(s.e3comp_literal);
  j["tension_delta"] = opt_json(s.tension_delta);
  j["bitension_delta"] = opt_json(s.bitension_delta);
  j["e3_delta"] = opt_json(s.e3_delta);
  j["fd_delta"] = opt_json(s.fd_delta);
  return j;
}

const char* kCsvColumns[] = {
    "u",  "v",  "t",  "a",      "b",              "umbilic",       "skipped",
    "P",  "Q",  "R",  "tau",    "c1",             "c2",            "c3",
    "c4", "e3comp", "e3comp_literal", "tension_delta", "bitension_delta",
    "e3_delta", "fd_delta"};

}  // namespace

std::string render_json(const Report& r) {
  const RunConfig& c = r.config;
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["tool"] = "nbtb";
  j["version"] = tool_version();

  Json& cfg = j["config"];
  cfg["surface"] = c.surface;
  cfg["domain"] = {r.domain.u0, r.domain.u1, r.domain.v0, r.domain.v1};
  cfg["grid"] = {c.n_u, c.n_v};
  cfg["fiber"] = c.fiber;
  cfg["fiber_bound"] = c.fiber_bound;
  cfg["tolerance"] = c.tol;
  cfg["mode"] = mode_name(c.mode);
  cfg["fd_check"] = c.fd_check;

  j["surface"] = r.surface;

  const Verdict& v = r.verdict;
  Json& jv = j["verdict"];
  jv["class"] = class_name(v.cls);
  jv["curvature"] = v.curvature;
  jv["biharmonic"] = v.biharmonic;
  jv["max_tension"] = v.max_tension;
  jv["max_e3comp"] = v.max_e3;
  jv["max_bitension"] = v.max_bitension;
  jv["residuals"] = {{"c1", v.max_residuals.c1},
                     {"c2", v.max_residuals.c2},
                     {"c3", v.max_residuals.c3},
                     {"c4", v.max_residuals.c4}};
  jv["skipped_umbilics"] = v.skipped_umbilics;
  jv["note"] = v.note;
  jv["evidence"] = Json::array();
  for (const Witness& w : v.evidence) {
    jv["evidence"].push_back(
        {{"condition", w.condition}, {"u", w.uv.u}, {"v", w.uv.v}, {"t", w.t}, {"value", w.value}});
  }

  const Summary& s = r.summary;
  Json& js = j["summary"];
  js["max"] = {{"c1", s.max_c1}, {"c2", s.max_c2}, {"c3", s.max_c3}, {"c4", s.max_c4}};
  js["mean"] = {{"c1", s.mean_c1}, {"c2", s.mean_c2}, {"c3", s.mean_c3}, {"c4", s.mean_c4}};
  js["max_tau"] = s.max_tau;
  js["max_e3comp"] = s.max_e3comp;
  js["max_tension_delta"] = opt_json(s.max_tension_delta);
  js["max_bitension_delta"] = opt_json(s.max_bitension_delta);
  js["max_e3_delta"] = opt_json(s.max_e3_delta);
  js["max_fd_delta"] = opt_json(s.max_fd_delta);

  j["samples"] = Json::array();
  for (const SampleRecord& rec : r.samples) j["samples"].push_back(sample_json(rec));
  return j.dump(2) + "\n";
}

std::string render_csv(const Report& r) {
  std::string out;
  out += "# schema_version=" + std::to_string(kSchemaVersion) + "\n";
  out += std::string("# version=") + tool_version() + "\n";
  out += "# surface=" + r.surface + "\n";
  out += std::string("# mode=") + mode_name(r.config.mode) + "\n";
  out += "# tolerance=" + fmt17(r.config.tol) + "\n";
  out += std::string("# verdict=") + class_name(r.verdict.cls) + "\n";
  out += std::string("# biharmonic=") + (r.verdict.biharmonic ? "true" : "false") + "\n";
  for (std::size_t k = 0; k < std::size(kCsvColumns); ++k) {
    out += (k ? "," : "") + std::string(kCsvColumns[k]);
  }
  out += '\n';
  for (const SampleRecord& s : r.samples) {
    auto num = [&](double x) { out += ',' + fmt17(x); };
    auto live = [&](double x) { out += ','; if (!s.skipped) out += fmt17(x); };
    auto opt = [&](const std::optional<double>& x) { out += ','; if (x) out += fmt17(*x); };
    out += fmt17(s.uv.u);
    num(s.uv.v);
    num(s.t);
    num(s.a);
    num(s.b);
    out += s.umbilic ? ",1" : ",0";
    out += s.skipped ? ",1" : ",0";
    live(s.P);
    live(s.Q);
    live(s.R);
    live(s.tau_norm);
    num(s.c1);
    num(s.c2);
    num(s.c3);
    num(s.c4);
    live(s.e3comp);
    live(s.e3comp_literal);
    opt(s.tension_delta);
    opt(s.bitension_delta);
    opt(s.e3_delta);
    opt(s.fd_delta);
    out += '\n';
  }
  return out;
}

std::string render(const Report& r, Format f) {
  return f == Format::json ? render_json(r) : render_csv(r);
}

std::string render_summary(const Report& r) {
  const Verdict& v = r.verdict;
  std::ostringstream os;
  os.precision(6);
  os << "surface     " << r.surface << "\n"
     << "grid        " << r.config.n_u << "x" << r.config.n_v << ", "
     << r.config.fiber.size() << " fiber values\n"
     << "verdict     " << class_name(v.cls);
  if (v.cls == SurfaceClass::round_sphere || v.cls == SurfaceClass::circular_cylinder) {
    os << " (curvature " << v.curvature << ")";
  }
  os << "\nbiharmonic  " << (v.biharmonic ? "yes" : "no") << "\n"
     << "max |tau|   " << v.max_tension << "\n"
     << "max c1..c4  " << v.max_residuals.c1 << " " << v.max_residuals.c2 << " "
     << v.max_residuals.c3 << " " << v.max_residuals.c4 << "\n"
     << "max |e3|    " << v.max_e3 << "\n";
  const Summary& s = r.summary;
  if (s.max_tension_delta) os << "oracle |dtau|   " << *s.max_tension_delta << "\n";
  if (s.max_bitension_delta) os << "oracle |dtau2|  " << *s.max_bitension_delta << " (t = 0)\n";
  if (s.max_e3_delta) os << "oracle |de3|    " << *s.max_e3_delta << "\n";
  if (s.max_fd_delta) os << "fd |dtau2|      " << *s.max_fd_delta << "\n";
  for (const Witness& w : v.evidence) {
    os << "witness     " << w.condition << " = " << w.value << " at (" << w.uv.u
       << ", " << w.uv.v << "), t = " << w.t << "\n";
  }
  if (!v.note.empty()) os << "note        " << v.note << "\n";
  return os.str();
}

void write_atomic(const std::filesystem::path& file, std::string_view content) {
  namespace fs = std::filesystem;
  fs::path tmp = file;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw InputError("failed writing " + tmp.string());
    }
  }
  std::error_code ec;
  fs::rename(tmp, file, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw InputError("cannot move report into place at " + file.string());
  }
}

}  // namespace nbtb
