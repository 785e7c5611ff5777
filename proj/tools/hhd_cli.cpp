// Copyright 2026 The hhd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// hhd: generate test fields, decompose them, run the identity checks, export slices.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <system_error>
#include <vector>

#include "hhd/decomposition.hpp"
#include "hhd/errors.hpp"
#include "hhd/field_io.hpp"
#include "hhd/fixtures.hpp"
#include "hhd/norms.hpp"
#include "hhd/verify.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitData = 3;

// Thrown for bad flag values that CLI11 cannot catch by itself.
struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream is(text);
  while (std::getline(is, item, sep)) {
    out.push_back(item);
  }
  return out;
}

double parse_double(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) {
    throw UsageError("not a number: '" + s + "'");
  }
  return v;
}

std::size_t parse_size(const std::string& s) {
  const double v = parse_double(s);
  if (v < 0 || v != std::floor(v)) {
    throw UsageError("not a non-negative integer: '" + s + "'");
  }
  return static_cast<std::size_t>(v);
}

hhd::GridSpec parse_grid(const std::string& dims_text, const std::string& bounds_text) {
  std::vector<std::size_t> dims;
  for (const auto& d : split(dims_text, ',')) {
    dims.push_back(parse_size(d));
  }
  const auto pairs = split(bounds_text, ',');
  if (pairs.size() != 1 && pairs.size() != dims.size()) {
    throw UsageError("--bounds needs one lo:hi pair or one per axis");
  }
  std::vector<double> lo, hi;
  for (std::size_t k = 0; k < dims.size(); ++k) {
    const auto lh = split(pairs[pairs.size() == 1 ? 0 : k], ':');
    if (lh.size() != 2) {
      throw UsageError("bounds must look like lo:hi");
    }
    lo.push_back(parse_double(lh[0]));
    hi.push_back(parse_double(lh[1]));
  }
  return hhd::GridSpec(dims, lo, hi);
}

// One-based "i,j" on the command line, zero-based pair inside.
std::pair<std::size_t, std::size_t> parse_plane(const std::string& text) {
  const auto parts = split(text, ',');
  if (parts.size() != 2) {
    throw UsageError("--plane needs two axes i,j");
  }
  const std::size_t i = parse_size(parts[0]);
  const std::size_t j = parse_size(parts[1]);
  if (i == 0 || j == 0 || i == j) {
    throw UsageError("--plane axes are one-based and distinct");
  }
  return {std::min(i, j) - 1, std::max(i, j) - 1};
}

json grid_json(const hhd::GridSpec& g) {
  return {{"dims", std::vector<std::size_t>(g.dims().begin(), g.dims().end())},
          {"lower", std::vector<double>(g.lower().begin(), g.lower().end())},
          {"upper", std::vector<double>(g.upper().begin(), g.upper().end())}};
}

json config_json(const hhd::QuadratureConfig& cfg) {
  return {{"self_cell", hhd::to_string(cfg.self_cell)},
          {"backend", hhd::to_string(cfg.backend)},
          {"counterterm", cfg.counterterm}};
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::system_error(errno, std::generic_category(), "cannot open " + path.string() + " for writing");
  }
  out << text;
}

class Manifest {
public:
  explicit Manifest(std::string command) { doc_["command"] = std::move(command); }

  json& operator[](const char* key) { return doc_[key]; }

  void output(const fs::path& p) { doc_["outputs"].push_back(p.string()); }

  void write(const fs::path& dir) {
    doc_["version"] = HHD_VERSION;
    doc_["wall_clock_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    write_text(dir / "manifest.json", doc_.dump(2) + "\n");
  }

private:
  json doc_;
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

fs::path prepare_dir(const std::string& dir) {
  fs::path p(dir);
  fs::create_directories(p);
  return p;
}

// --- generate ---------------------------------------------------------------

struct GenerateArgs {
  std::string fixture = "mixed";
  std::string grid = "129,129";
  std::string bounds = "-6:6";
  std::string plane = "1,2";
  std::uint64_t seed = 1;
  std::string out;
};

int run_generate(const GenerateArgs& a) {
  const hhd::GridSpec grid = parse_grid(a.grid, a.bounds);
  const hhd::Fixture fx = hhd::make_fixture(a.fixture, grid, parse_plane(a.plane), a.seed);
  const fs::path dir = prepare_dir(a.out);
  Manifest m("generate");
  m["fixture"] = a.fixture;
  m["seed"] = a.seed;
  m["plane"] = a.plane;
  m["grid"] = grid_json(grid);
  auto put = [&](const hhd::AnyField& f, const char* name) {
    const fs::path p = dir / name;
    hhd::write_field(f, p);
    m.output(p);
  };
  put(fx.f, "f.hhnf");
  put(fx.gamma, "gamma_ref.hhnf");
  put(fx.rho, "rho_ref.hhnf");
  put(fx.g, "g_ref.hhnf");
  put(fx.r, "r_ref.hhnf");
  m.write(dir);
  std::cout << "wrote fixture '" << a.fixture << "' on " << grid.describe() << " to " << dir.string() << "\n";
  return kExitOk;
}

// --- decompose --------------------------------------------------------------

struct DecomposeArgs {
  std::string input;
  std::string out;
  std::string self_cell = "ball";
  std::string backend = "direct";
  std::string tolerance_class = "quadrature";
  double tolerance = hhd::kQuadratureTolerance;
  double padding = 1.0;
  bool skip_rotation = false;
};

int run_decompose(const DecomposeArgs& a) {
  if (a.tolerance_class != "stencil" && a.tolerance_class != "quadrature") {
    throw UsageError("--tolerance-class must be 'stencil' or 'quadrature'");
  }
  if (a.padding < 1.0) {
    throw UsageError("--padding must be >= 1");
  }
  hhd::QuadratureConfig cfg;
  cfg.self_cell = hhd::parse_self_cell(a.self_cell);
  cfg.backend = hhd::parse_backend(a.backend);
  hhd::DecompositionOptions opt;
  opt.skip_rotation = a.skip_rotation;

  const hhd::AnyField any = hhd::read_field(a.input);
  const auto* fp = std::get_if<hhd::VectorField>(&any);
  if (fp == nullptr) {
    throw hhd::DataError("decompose needs a vector field, got " + std::string(hhd::kind_name(any)));
  }
  const hhd::GridSpec grid = fp->grid();

  hhd::DecompositionResult d = [&] {
    if (a.padding > 1.0) {
      return hhd::decompose(hhd::zero_extend(*fp, grid.padded(a.padding)), cfg, opt);
    }
    return hhd::decompose(*fp, cfg, opt);
  }();
  hhd::VectorField g = a.padding > 1.0 ? hhd::crop(d.g, grid) : d.g;
  hhd::VectorField r = a.padding > 1.0 ? hhd::crop(d.r, grid) : d.r;
  hhd::ScalarField G = a.padding > 1.0 ? hhd::crop(d.F.G, grid) : d.F.G;
  std::vector<hhd::ScalarField> R_slices;
  for (const auto& s : d.F.R.stored()) {
    R_slices.push_back(a.padding > 1.0 ? hhd::crop(s, grid) : s);
  }
  const hhd::AntisymMatrixField R(grid, std::move(R_slices));

  const fs::path dir = prepare_dir(a.out);
  Manifest m("decompose");
  m["input"] = a.input;
  m["grid"] = grid_json(grid);
  m["config"] = config_json(cfg);
  m["skip_rotation"] = a.skip_rotation;
  m["padding"] = a.padding;
  m["tolerance_class"] = a.tolerance_class;
  for (const auto& [field, name] : {std::pair<hhd::AnyField, const char*>{g, "g.hhnf"}, {r, "r.hhnf"},
                                    {G, "G.hhnf"}, {R, "R.hhnf"}}) {
    hhd::write_field(field, dir / name);
    m.output(dir / name);
  }

  const double rel = hhd::relative_l2(g + r, *fp, hhd::kComposedMargin);
  const double div_ulp = d.report.count("div_r_ulp") ? d.report.at("div_r_ulp") : 0.0;
  const double rb_ulp = d.report.at("rotbar_g_ulp");
  bool pass = div_ulp <= hhd::kStencilUlps && rb_ulp <= hhd::kStencilUlps;
  if (a.tolerance_class == "quadrature") {
    pass = pass && rel <= a.tolerance;
  }

  json report;
  for (const auto& [k, v] : d.report) {
    report[k] = v;
  }
  report["reconstruction_l2_rel"] = rel;
  report["tolerance_class"] = a.tolerance_class;
  report["tolerance"] = a.tolerance;
  report["pass"] = pass;
  write_text(dir / "report.json", report.dump(2) + "\n");
  m.output(dir / "report.json");
  m["pass"] = pass;
  m.write(dir);

  std::cout << "reconstruction " << rel << ", div r " << div_ulp << " ulp, rot_bar g " << rb_ulp << " ulp: "
            << (pass ? "pass" : "FAIL") << "\n";
  return pass ? kExitOk : kExitCheckFailed;
}

// --- verify -----------------------------------------------------------------

struct VerifyArgs {
  std::string grid = "129,129";
  std::string bounds = "-6:6";
  std::string fixtures = "pure-gradient,pure-rotation,mixed,random-smooth,linear-rotation";
  std::string checks;
  std::string plane = "1,2";
  std::string self_cell = "ball";
  std::string backend = "direct";
  std::uint64_t seed = 1;
  bool no_refine = false;
  double tolerance = hhd::kQuadratureTolerance;
  double padding = 1.0;
  std::string out;
};

int run_verify(const VerifyArgs& a) {
  const hhd::GridSpec grid = parse_grid(a.grid, a.bounds);
  hhd::QuadratureConfig cfg;
  cfg.self_cell = hhd::parse_self_cell(a.self_cell);
  cfg.backend = hhd::parse_backend(a.backend);
  hhd::RunOptions opt;
  if (!a.checks.empty()) {
    opt.checks = split(a.checks, ',');
  }
  opt.refine = !a.no_refine;
  opt.seed = a.seed;
  opt.plane = parse_plane(a.plane);
  opt.quadrature_tolerance = a.tolerance;
  opt.padding = a.padding;
  const std::vector<std::string> fixtures = split(a.fixtures, ',');
  for (const auto& f : fixtures) {
    hhd::make_fixture(f, hhd::GridSpec::cube(grid.n(), 3, -1.0, 1.0), opt.plane, opt.seed);
  }

  const std::array grids{grid};
  const auto reports = hhd::run_all(grids, fixtures, cfg, opt);
  for (const auto& r : reports) {
    std::cout << (r.pass ? "pass " : "FAIL ") << r.name << " [" << r.fixture << "] residual " << r.residual
              << " (tolerance " << r.tolerance << ", " << hhd::to_string(r.tolerance_class) << ")";
    if (r.observed_order) {
      std::cout << " order " << *r.observed_order;
    }
    std::cout << "\n";
  }
  const std::string doc = hhd::reports_to_json(reports);
  if (!a.out.empty()) {
    const fs::path p(a.out);
    if (p.has_parent_path()) {
      fs::create_directories(p.parent_path());
    }
    write_text(p, doc + "\n");
  }
  return hhd::all_passed(reports) ? kExitOk : kExitCheckFailed;
}

// --- export-csv -------------------------------------------------------------

struct ExportArgs {
  std::string input;
  std::string plane = "1,2";
  std::string at;
  std::string out;
};

std::vector<std::string> component_names(const hhd::AnyField& f) {
  const std::size_t n = hhd::grid_of(f).n();
  std::vector<std::string> names;
  if (std::holds_alternative<hhd::ScalarField>(f)) {
    names.emplace_back("value");
  } else if (std::holds_alternative<hhd::VectorField>(f)) {
    for (std::size_t k = 1; k <= n; ++k) {
      names.push_back("c" + std::to_string(k));
    }
  } else {
    for (std::size_t i = 1; i <= n; ++i) {
      for (std::size_t j = i + 1; j <= n; ++j) {
        names.push_back("c" + std::to_string(i) + std::to_string(j));
      }
    }
  }
  return names;
}

std::vector<const hhd::ScalarField*> component_fields(const hhd::AnyField& f) {
  std::vector<const hhd::ScalarField*> out;
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, hhd::ScalarField>) {
          out.push_back(&v);
        } else if constexpr (std::is_same_v<T, hhd::VectorField>) {
          for (const auto& c : v.components()) {
            out.push_back(&c);
          }
        } else {
          for (const auto& c : v.stored()) {
            out.push_back(&c);
          }
        }
      },
      f);
  return out;
}

int run_export(const ExportArgs& a) {
  const hhd::AnyField any = hhd::read_field(a.input);
  const hhd::GridSpec& g = hhd::grid_of(any);
  const auto [pi, pj] = parse_plane(a.plane);
  if (pj >= g.n()) {
    throw UsageError("--plane axis exceeds the field dimension");
  }
  // Fixed coordinates for the other axes: nearest node to the requested value (default 0).
  std::vector<double> at(g.n(), 0.0);
  if (!a.at.empty()) {
    const auto parts = split(a.at, ',');
    if (parts.size() != g.n()) {
      throw UsageError("--at needs one coordinate per axis");
    }
    for (std::size_t k = 0; k < g.n(); ++k) {
      at[k] = parse_double(parts[k]);
    }
  }
  std::vector<std::size_t> idx(g.n(), 0);
  for (std::size_t k = 0; k < g.n(); ++k) {
    const double t = std::round((at[k] - g.lower()[k]) / g.spacing()[k]);
    idx[k] = static_cast<std::size_t>(std::clamp(t, 0.0, static_cast<double>(g.dim(k) - 1)));
  }

  std::ostringstream os;
  os.precision(17);
  os << "x" << pi + 1 << ",x" << pj + 1;
  for (const auto& name : component_names(any)) {
    os << "," << name;
  }
  os << "\n";
  const auto comps = component_fields(any);
  for (std::size_t i = 0; i < g.dim(pi); ++i) {
    for (std::size_t j = 0; j < g.dim(pj); ++j) {
      idx[pi] = i;
      idx[pj] = j;
      const std::size_t p = g.flat_index(idx);
      os << g.coordinate(pi, i) << "," << g.coordinate(pj, j);
      for (const auto* c : comps) {
        os << "," << (*c)[p];
      }
      os << "\n";
    }
  }
  if (a.out.empty()) {
    std::cout << os.str();
  } else {
    write_text(a.out, os.str());
  }
  return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"n-dimensional Helmholtz decomposition on regular grids"};
  app.set_version_flag("--version", std::string(HHD_VERSION));
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* g = app.add_subcommand("generate", "sample a fixture and its analytic references");
  g->add_option("--fixture", gen.fixture, "zero, pure-gradient, pure-rotation, mixed, linear-rotation, random-smooth")
      ->capture_default_str();
  g->add_option("--grid", gen.grid, "nodes per axis d1,d2,...")->capture_default_str();
  g->add_option("--bounds", gen.bounds, "lo:hi for all axes or one pair per axis")->capture_default_str();
  g->add_option("--plane", gen.plane, "rotation plane i,j (one-based)")->capture_default_str();
  g->add_option("--seed", gen.seed)->capture_default_str();
  g->add_option("--out", gen.out, "output directory")->required();

  DecomposeArgs dec;
  auto* d = app.add_subcommand("decompose", "split a vector field into gradient and rotation parts");
  d->add_option("--input", dec.input, "HHNF1 vector field")->required();
  d->add_option("--out", dec.out, "output directory")->required();
  d->add_option("--self-cell", dec.self_cell, "ball or exclude")->capture_default_str();
  d->add_option("--backend", dec.backend, "direct or fft")->capture_default_str();
  d->add_option("--tolerance-class", dec.tolerance_class, "stencil or quadrature")->capture_default_str();
  d->add_option("--tolerance", dec.tolerance, "relative L2 bound for the reconstruction")->capture_default_str();
  d->add_option("--padding", dec.padding, "zero-extend the domain by this factor before decomposing")
      ->capture_default_str();
  d->add_flag("--skip-rotation", dec.skip_rotation, "set r = f - g and skip the rotation potentials");

  VerifyArgs ver;
  auto* v = app.add_subcommand("verify", "run the identity checks on fixtures");
  v->add_option("--grid", ver.grid)->capture_default_str();
  v->add_option("--bounds", ver.bounds)->capture_default_str();
  v->add_option("--fixtures", ver.fixtures)->capture_default_str();
  v->add_option("--checks", ver.checks, "comma-separated check names (default: all)");
  v->add_option("--plane", ver.plane)->capture_default_str();
  v->add_option("--self-cell", ver.self_cell)->capture_default_str();
  v->add_option("--backend", ver.backend)->capture_default_str();
  v->add_option("--seed", ver.seed)->capture_default_str();
  v->add_option("--tolerance", ver.tolerance, "quadrature-class relative L2 bound")->capture_default_str();
  v->add_option("--padding", ver.padding, "sample fixtures on a larger domain, measure on the grid")
      ->capture_default_str();
  v->add_flag("--no-refine", ver.no_refine, "skip the refinement step of quadrature checks");
  v->add_option("--out", ver.out, "report document path");

  ExportArgs exp;
  auto* e = app.add_subcommand("export-csv", "write a two-dimensional slice as CSV");
  e->add_option("--input", exp.input)->required();
  e->add_option("--plane", exp.plane, "axes i,j of the slice (one-based)")->capture_default_str();
  e->add_option("--at", exp.at, "coordinates fixing the other axes (default: origin)");
  e->add_option("--out", exp.out, "CSV path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*g) {
      return run_generate(gen);
    }
    if (*d) {
      return run_decompose(dec);
    }
    if (*v) {
      return run_verify(ver);
    }
    return run_export(exp);
  } catch (const hhd::FormatError& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitData;
  } catch (const hhd::DataError& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitData;
  } catch (const std::system_error& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitData;
  } catch (const std::invalid_argument& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitUsage;
  } catch (const std::out_of_range& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitData;
  }
}
