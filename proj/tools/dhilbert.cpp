// dhilbert: kernels, extensions, transforms and the verification suite from
// the command line.
//
// Exit codes: 0 ok, 1 a verification check failed, 2 invalid arguments or
// input, 3 computation failure, 4 no kernel radius meets the tolerance.

#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dhilbert/dhilbert.hpp"

namespace {

using json = nlohmann::json;
using namespace dhilbert;

enum Exit { kOk = 0, kCheckFailed = 1, kBadInput = 2, kComputeFailed = 3, kRadius = 4 };

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

long parse_index(const std::string& text, int line) {
  long v = 0;
  const char* first = text.data();
  const char* last = first + text.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last)
    throw InputError("line " + std::to_string(line) + ": bad index '" + text + "'");
  return v;
}

double parse_value(const std::string& text, int line) {
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (text.empty() || *end != '\0' || errno == ERANGE || !std::isfinite(v))
    throw InputError("line " + std::to_string(line) + ": bad value '" + text + "'");
  return v;
}

/// Lines `n[,m[,p]],value` in any order; '#' starts a comment line.
BoundarySequence read_boundary(const std::string& path, int s) {
  check_dimension(s);
  std::unique_ptr<std::ifstream> file;
  std::istream* in = &std::cin;
  if (path != "-") {
    file = std::make_unique<std::ifstream>(path);
    if (!*file) throw InputError("cannot open boundary file '" + path + "'");
    in = file.get();
  }
  std::map<Index, double> entries;
  std::string raw;
  int line = 0;
  while (std::getline(*in, raw)) {
    ++line;
    const std::string t = trim(raw);
    if (t.empty() || t[0] == '#') continue;
    std::vector<std::string> fields;
    std::stringstream ss(t);
    std::string f;
    while (std::getline(ss, f, ',')) fields.push_back(trim(f));
    if (static_cast<int>(fields.size()) != s + 1)
      throw InputError("line " + std::to_string(line) + ": expected " + std::to_string(s + 1) + " fields, got " +
                       std::to_string(fields.size()));
    Index x{};
    for (int a = 0; a < s; ++a) x[a] = parse_index(fields[static_cast<std::size_t>(a)], line);
    const double v = parse_value(fields.back(), line);
    if (!entries.emplace(x, v).second) throw InputError("line " + std::to_string(line) + ": duplicate index");
  }
  if (entries.empty()) throw InputError("boundary file has no entries");
  Box b{s, entries.begin()->first, entries.begin()->first};
  for (const auto& [x, v] : entries) {
    for (int a = 0; a < s; ++a) {
      b.lo[a] = std::min(b.lo[a], x[a]);
      b.hi[a] = std::max(b.hi[a], x[a]);
    }
  }
  std::vector<double> vals(b.size(), 0.0);
  for (const auto& [x, v] : entries) vals[b.linear(x)] = v;
  return {b, std::move(vals)};
}

const char* kAxisNames[] = {"n", "m", "p"};

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string index_csv(const Index& x, int s) {
  std::string out;
  for (int a = 0; a < s; ++a) out += std::to_string(x[a]) + ",";
  return out;
}

json index_json(const Index& x, int s) {
  json j = json::object();
  for (int a = 0; a < s; ++a) j[kAxisNames[a]] = x[a];
  return j;
}

std::string header(int s, bool with_k) {
  std::string h;
  for (int a = 0; a < s; ++a) h += std::string(kAxisNames[a]) + ",";
  if (with_k) h += "k,";
  return h + "value";
}

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

// ---------------------------------------------------------------------------

struct KernelArgs {
  std::string kind = "poisson";
  int k = 0;
  int j = 1;
  int s = 1;
  long radius = 10;
  double tol = 1e-12;
  std::string format = "csv";
  std::string cache_dir;
};

int cmd_kernel(const KernelArgs& a) {
  const KernelKind kind = kind_from_name(a.kind);
  quad::QuadratureSpec spec;
  spec.abs_tol = a.tol;
  std::optional<KernelCache> cache;
  if (!a.cache_dir.empty()) cache.emplace(a.cache_dir);
  const KernelTable t = build_table(kind, KernelParams{a.s, a.k, a.j}, a.radius, spec, cache ? &*cache : nullptr);
  const Box w = t.window();
  if (a.format == "json") {
    json j;
    j["kind"] = kind_name(t.kind);
    j["s"] = t.s;
    j["k"] = t.k;
    j["j"] = t.j;
    j["radius"] = t.radius;
    j["abs_tol"] = t.abs_tol;
    j["tail_bound"] = finite_or_null(t.tail_bound);
    j["values"] = t.values;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << header(t.s, false) << "\n";
    for (std::size_t i = 0; i < w.size(); ++i) std::cout << index_csv(w.point(i), t.s) << num(t.values[i]) << "\n";
  }
  return kOk;
}

struct ExtendArgs {
  std::string boundary;
  bool conjugate = false;
  int k_max = 3;
  long margin = 10;
  int s = 1;
  int j = 1;
  std::string format = "csv";
  std::string cache_dir;
};

int cmd_extend(const ExtendArgs& a) {
  const BoundarySequence b = read_boundary(a.boundary, a.s);
  std::optional<KernelCache> cache;
  if (!a.cache_dir.empty()) cache.emplace(a.cache_dir);
  ExtensionOptions opt;
  opt.k_max = a.k_max;
  opt.margin = a.margin;
  opt.cache = cache ? &*cache : nullptr;
  LatticeField f;
  if (!a.conjugate) {
    f = extend_poisson_s(b, opt);
  } else if (a.s == 1) {
    f = extend_conjugate(b, opt);
  } else {
    if (a.j < 1 || a.j > a.s) throw InvalidArgument("--j must lie in [1, s]");
    f = extend_conjugate_s(b, opt)[static_cast<std::size_t>(a.j - 1)];
  }
  if (a.format == "json") {
    json rows = json::array();
    for (int k = f.k_min; k <= f.k_max; ++k)
      f.window.for_each([&](const Index& x) {
        json r = index_json(x, a.s);
        r["k"] = k;
        r["value"] = f(x, k);
        rows.push_back(std::move(r));
      });
    json j;
    j["s"] = a.s;
    j["staggered"] = f.staggered;
    j["k_max"] = f.k_max;
    j["truncation_bound"] = f.truncation_bound;
    j["rows"] = std::move(rows);
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << header(a.s, true) << "\n";
    for (int k = f.k_min; k <= f.k_max; ++k)
      f.window.for_each(
          [&](const Index& x) { std::cout << index_csv(x, a.s) << k << "," << num(f(x, k)) << "\n"; });
  }
  return kOk;
}

struct TransformArgs {
  std::string boundary;
  std::string op = "hd";
  int j = 1;
  int s = 1;
  double tol = 1e-8;
  long margin = 64;
  long max_radius = 65536;
  std::string format = "csv";
  std::string cache_dir;
};

int cmd_transform(const TransformArgs& a) {
  const BoundarySequence b = read_boundary(a.boundary, a.s);
  std::optional<KernelCache> cache;
  if (!a.cache_dir.empty()) cache.emplace(a.cache_dir);
  TransformOptions opt;
  opt.tol = a.tol;
  opt.margin = a.margin;
  opt.max_radius = a.max_radius;
  opt.cache = cache ? &*cache : nullptr;
  if (a.op != "tj" && a.s != 1) throw InvalidArgument("--op " + a.op + " is one-dimensional; use --s 1");
  TransformResult r;
  if (a.op == "hd")
    r = hilbert_transform(b, opt);
  else if (a.op == "hplus")
    r = riesz_titchmarsh_transform(b, opt);
  else if (a.op == "diff")
    r = difference_transform(b, opt);
  else
    r = tj_transform(a.j, b, opt);
  const Box& w = r.output.support;
  if (a.format == "json") {
    json rows = json::array();
    for (std::size_t i = 0; i < w.size(); ++i) {
      json row = index_json(w.point(i), a.s);
      row["value"] = r.output.values[i];
      rows.push_back(std::move(row));
    }
    json j;
    j["op"] = a.op;
    j["radius"] = r.radius;
    j["truncation_bound"] = r.truncation_bound;
    j["rows"] = std::move(rows);
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "# op=" << a.op << " radius=" << r.radius << " truncation_bound=" << num(r.truncation_bound) << "\n";
    std::cout << header(a.s, false) << "\n";
    for (std::size_t i = 0; i < w.size(); ++i) std::cout << index_csv(w.point(i), a.s) << num(r.output.values[i]) << "\n";
  }
  return kOk;
}

struct VerifyArgs {
  std::string profile = "fast";
  std::vector<std::string> checks;
  std::vector<std::string> params;
  std::uint64_t seed = verify::kDefaultSeed;
  std::string format = "text";
};

json report_json(const verify::Report& r) {
  json j;
  j["check_name"] = r.name;
  j["params"] = r.params;
  j["max_residual"] = finite_or_null(r.max_residual);
  j["threshold"] = finite_or_null(r.threshold);
  j["passed"] = r.passed;
  j["samples"] = r.samples;
  j["runtime_ms"] = r.runtime_ms;
  if (!r.notes.empty()) j["notes"] = r.notes;
  if (!r.info.empty()) {
    json info = json::object();
    for (const auto& [k, v] : r.info) info[k] = finite_or_null(v);
    j["info"] = std::move(info);
  }
  return j;
}

int cmd_verify(const VerifyArgs& a) {
  verify::Params params;
  for (const auto& kv : a.params) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw InvalidParams("--param expects key=value, got '" + kv + "'");
    params[kv.substr(0, eq)] = parse_value(kv.substr(eq + 1), 0);
  }
  if (!params.empty() && a.checks.size() != 1) throw InvalidParams("--param needs exactly one --check");

  std::vector<verify::Report> reports;
  if (a.checks.empty()) {
    reports = verify::run_suite(a.profile == "full" ? verify::Profile::Full : verify::Profile::Fast, a.seed);
  } else {
    for (const auto& name : a.checks) reports.push_back(verify::run_check(name, params, a.seed));
  }
  if (a.format == "json") {
    json arr = json::array();
    for (const auto& r : reports) arr.push_back(report_json(r));
    std::cout << arr.dump(2) << "\n";
  } else {
    std::cout << verify::format_text(reports);
  }
  for (const auto& r : reports)
    if (!r.passed) return kCheckFailed;
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lattice Poisson and conjugate-Poisson extensions and the discrete Hilbert transform"};
  app.require_subcommand(1);

  const auto formats = CLI::IsMember({"csv", "json"});

  KernelArgs ka;
  auto* kernel = app.add_subcommand("kernel", "Tabulate a kernel on [-R, R]^s");
  kernel->add_option("--kind", ka.kind, "poisson|conjugate|hilbert|riesz|difference|poisson-s|tj-s")
      ->check(CLI::IsMember({"poisson", "conjugate", "hilbert", "riesz", "difference", "poisson-s", "tj-s"}));
  kernel->add_option("--k", ka.k, "Height")->check(CLI::NonNegativeNumber);
  kernel->add_option("--j", ka.j, "Axis (tj-s)");
  kernel->add_option("--s", ka.s, "Dimension (poisson-s, tj-s)");
  kernel->add_option("--radius", ka.radius, "Window radius R")->check(CLI::NonNegativeNumber);
  kernel->add_option("--tol", ka.tol, "Quadrature absolute tolerance")->check(CLI::PositiveNumber);
  kernel->add_option("--format", ka.format)->check(formats);
  kernel->add_option("--cache-dir", ka.cache_dir, "Directory for cached tables");

  ExtendArgs ea;
  auto* extend = app.add_subcommand("extend", "Harmonic (or conjugate) extension of boundary data");
  extend->add_option("boundary", ea.boundary, "Boundary file, '-' for stdin")->required();
  extend->add_flag("--conjugate", ea.conjugate, "Conjugate extension V (staggered)");
  extend->add_option("--k-max", ea.k_max, "Largest height")->check(CLI::PositiveNumber);
  extend->add_option("--margin", ea.margin, "Window margin around the support")->check(CLI::NonNegativeNumber);
  extend->add_option("--s", ea.s, "Dimension of the boundary data");
  extend->add_option("--j", ea.j, "Axis of the conjugate field for s > 1");
  extend->add_option("--format", ea.format)->check(formats);
  extend->add_option("--cache-dir", ea.cache_dir);

  TransformArgs ta;
  auto* transform = app.add_subcommand("transform", "Apply H_d, H+, H_d - H+ or T_j");
  transform->add_option("boundary", ta.boundary, "Boundary file, '-' for stdin")->required();
  transform->add_option("--op", ta.op)->check(CLI::IsMember({"hd", "hplus", "diff", "tj"}));
  transform->add_option("--j", ta.j, "Axis for tj");
  transform->add_option("--s", ta.s, "Dimension of the boundary data");
  transform->add_option("--tol", ta.tol, "Allowed truncation error")->check(CLI::PositiveNumber);
  transform->add_option("--margin", ta.margin, "Output window margin")->check(CLI::NonNegativeNumber);
  transform->add_option("--max-radius", ta.max_radius, "Largest kernel radius")->check(CLI::NonNegativeNumber);
  transform->add_option("--format", ta.format)->check(formats);
  transform->add_option("--cache-dir", ta.cache_dir);

  VerifyArgs va;
  auto* ver = app.add_subcommand("verify", "Run verification checks");
  ver->add_option("--profile", va.profile)->check(CLI::IsMember({"fast", "full"}));
  ver->add_option("--check", va.checks, "Run only this check (repeatable)");
  ver->add_option("--param", va.params, "key=value override for a single --check (repeatable)");
  ver->add_option("--seed", va.seed, "Seed for randomised checks");
  ver->add_option("--format", va.format)->check(CLI::IsMember({"text", "json"}));
  ver->add_flag_callback("--list", [] {
    for (const auto& n : verify::check_names()) std::cout << n << "\n";
    std::exit(kOk);
  }, "List check names and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kBadInput;
  }

  try {
    if (*kernel) return cmd_kernel(ka);
    if (*extend) return cmd_extend(ea);
    if (*transform) return cmd_transform(ta);
    if (*ver) return cmd_verify(va);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const RadiusInsufficient& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRadius;
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const InvalidParams& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const UnknownCheck& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const DimensionTooLarge& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kComputeFailed;
  }
  return kBadInput;
}
