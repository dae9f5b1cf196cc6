// Copyright 2026 The Pentaweave Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// pentaweave command-line tool. Uses the C API only.
//
//   pentaweave subdivide --gen pentagon --scheme snub --steps 4 --svg out.svg
//   pentaweave weave --gen grid:8x8 --mode snub-glue --steps 2 --json w.json --svg w.svg
//   pentaweave fractal --gen pentagon --steps 6 --raster 256 --lsystem 3
//
// Standard output is tab-separated; --pretty aligns it for reading.
// Exit codes: 0 success, 2 invalid input, 3 internal failure.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pentaweave/pentaweave.h"

namespace fs = std::filesystem;

namespace {

// Paths are UTF-8 on the command line and in messages.
fs::path from_utf8(const std::string& s) { return fs::path(std::u8string(s.begin(), s.end())); }
std::string utf8(const fs::path& p) {
  const std::u8string s = p.u8string();
  return std::string(s.begin(), s.end());
}

constexpr int kExitValidation = 2;
constexpr int kExitInternal = 3;

struct Failure {
  int exit_code;
  std::string message;
};

void check(pw_status s) {
  if (s == PW_OK) return;
  throw Failure{pw_status_is_validation(s) ? kExitValidation : kExitInternal, pw_last_error_message()};
}

struct MeshDeleter {
  void operator()(pw_mesh* m) const { pw_mesh_destroy(m); }
};
struct StringDeleter {
  void operator()(pw_string* s) const { pw_string_destroy(s); }
};
struct SubdivisionDeleter {
  void operator()(pw_subdivision* r) const { pw_subdivision_destroy(r); }
};
struct WeaveDeleter {
  void operator()(pw_weave* w) const { pw_weave_destroy(w); }
};
struct RasterDeleter {
  void operator()(pw_raster* r) const { pw_raster_destroy(r); }
};
using MeshPtr = std::unique_ptr<pw_mesh, MeshDeleter>;
using StringPtr = std::unique_ptr<pw_string, StringDeleter>;

std::string take(pw_string* s) {
  StringPtr owned(s);
  return std::string(pw_string_data(s), pw_string_size(s));
}

// Tab-separated rows; --pretty pads the columns.
class Table {
 public:
  void row(std::vector<std::string> cells) { rows_.push_back(std::move(cells)); }

  void print(std::ostream& out, bool pretty) const {
    std::vector<std::size_t> width;
    for (const auto& r : rows_)
      for (std::size_t i = 0; i < r.size(); ++i) {
        if (width.size() <= i) width.push_back(0);
        width[i] = std::max(width[i], r[i].size());
      }
    for (const auto& r : rows_) {
      for (std::size_t i = 0; i < r.size(); ++i) {
        if (i > 0) out << (pretty ? "  " : "\t");
        out << r[i];
        if (pretty && i + 1 < r.size()) out << std::string(width[i] - r[i].size(), ' ');
      }
      out << '\n';
    }
  }

 private:
  std::vector<std::vector<std::string>> rows_;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

struct Common {
  std::string gen;
  std::string input;
  std::string out_dir;
  bool no_smoothing = false;
  bool mirror = false;
  int seed_edge = 0;
  bool pretty = false;

  void add_to(CLI::App* app) {
    auto* g = app->add_option("--gen", gen, "generator: pentagon, ngon:N, fan:N, grid:WxH, trigrid:WxH, flower");
    auto* i = app->add_option("--input,-i", input, "pmesh input file");
    g->excludes(i);
    i->excludes(g);
    app->add_option("--out-dir", out_dir, "directory for relative output paths (default $PENTAWEAVE_OUT_DIR or .)");
    app->add_flag("--no-smoothing", no_smoothing, "skip the smoothing of inner vertices (snub)");
    app->add_flag("--mirror", mirror, "mirror-image orientation seed (snub)");
    app->add_option("--seed-edge", seed_edge, "edge carrying the orientation seed (snub)")->check(CLI::NonNegativeNumber);
    app->add_flag("--pretty", pretty, "aligned columns instead of tabs");
  }

  MeshPtr load(const std::string& fallback_gen = "") const {
    pw_mesh* m = nullptr;
    if (!input.empty()) {
      check(pw_mesh_read_file(input.c_str(), &m));
    } else {
      const std::string spec = gen.empty() ? fallback_gen : gen;
      if (spec.empty()) throw Failure{kExitValidation, "InvalidParameter: one of --gen or --input is required"};
      check(pw_mesh_generate(spec.c_str(), &m));
    }
    return MeshPtr(m);
  }

  pw_snub_options options() const {
    pw_snub_options o = pw_snub_options_default();
    o.smoothing = no_smoothing ? 0 : 1;
    o.seed_edge = seed_edge;
    o.seed_flag = mirror ? -1 : 1;
    return o;
  }

  fs::path resolve(const std::string& path) const {
    fs::path p = from_utf8(path);
    if (p.is_absolute()) return p;
    std::string dir = out_dir;
    if (dir.empty()) {
      const char* env = std::getenv("PENTAWEAVE_OUT_DIR");
      if (env != nullptr) dir = env;
    }
    return dir.empty() ? p : from_utf8(dir) / p;
  }

  void write(const std::string& path, const std::string& content) const {
    const fs::path p = resolve(path);
    if (p.has_parent_path()) {
      std::error_code ec;
      fs::create_directories(p.parent_path(), ec);
    }
    std::ofstream out(p, std::ios::binary);
    if (!out) throw Failure{kExitValidation, "Io: cannot open '" + utf8(p) + "' for writing"};
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw Failure{kExitValidation, "Io: write to '" + utf8(p) + "' failed"};
  }
};

std::string with_step(const std::string& path, std::size_t t) {
  const fs::path p = from_utf8(path);
  fs::path out = p.parent_path() / from_utf8(utf8(p.stem()) + "_t" + std::to_string(t) + utf8(p.extension()));
  return utf8(out);
}

// ---- subdivide ----

struct SubdivideArgs {
  Common common;
  std::string scheme = "snub";
  int steps = 1;
  std::string output;
  bool all_steps = false;
  std::string svg;
  std::string fill = "none";
  bool highlight = false;
};

int run_subdivide(const SubdivideArgs& a) {
  MeshPtr in = a.common.load();
  const pw_snub_options o = a.common.options();
  pw_subdivision* raw = nullptr;
  check(pw_subdivide(in.get(), a.scheme.c_str(), a.steps, &o, &raw));
  std::unique_ptr<pw_subdivision, SubdivisionDeleter> run(raw);

  Table table;
  table.row({"step", "V", "E", "F", "euler", "count_check"});
  bool counts_ok = true;
  const std::size_t n = pw_subdivision_steps(run.get());
  for (std::size_t t = 0; t <= n; ++t) {
    size_t v = 0, e = 0, f = 0;
    long long chi = 0;
    int c = -1;
    check(pw_subdivision_counts(run.get(), t, &v, &e, &f, &chi, &c));
    counts_ok = counts_ok && c != 0;
    table.row({std::to_string(t), std::to_string(v), std::to_string(e), std::to_string(f), std::to_string(chi),
               c < 0 ? "-" : (c ? "ok" : "FAIL")});
  }
  table.print(std::cout, a.common.pretty);

  auto mesh_at = [&](std::size_t t) {
    pw_mesh* m = nullptr;
    check(pw_subdivision_mesh(run.get(), t, &m));
    return MeshPtr(m);
  };
  if (!a.output.empty()) {
    for (std::size_t t = a.all_steps ? 0 : n; t <= n; ++t) {
      MeshPtr m = mesh_at(t);
      pw_string* s = nullptr;
      check(pw_mesh_write(m.get(), &s));
      a.common.write(a.all_steps ? with_step(a.output, t) : a.output, take(s));
    }
  }
  if (!a.svg.empty()) {
    for (std::size_t t = a.all_steps ? 0 : n; t <= n; ++t) {
      pw_string* s = nullptr;
      check(pw_subdivision_svg(run.get(), t, a.fill.c_str(), a.highlight ? 1 : 0, &s));
      a.common.write(a.all_steps ? with_step(a.svg, t) : a.svg, take(s));
    }
  }
  if (!counts_ok) throw Failure{kExitInternal, "Internal: vertex/edge/face counts differ from the step prediction"};
  return 0;
}

// ---- weave ----

struct WeaveArgs {
  Common common;
  std::string mode = "snub-glue";
  int steps = 1;
  std::string json;
  std::string svg;
  std::string tiles;
  std::string cut_template;
  int sectors = 0;
  double width = 0.3;
  std::string palette = "paper-maritime-12";
};

int run_weave(const WeaveArgs& a) {
  MeshPtr in = a.common.load();
  const pw_snub_options o = a.common.options();
  pw_weave* raw = nullptr;
  check(pw_weave_create(in.get(), a.mode.c_str(), a.steps, &o, &raw));
  std::unique_ptr<pw_weave, WeaveDeleter> w(raw);

  pw_string* problem = nullptr;
  check(pw_weave_check(w.get(), &problem));
  const std::string issue = take(problem);
  if (!issue.empty()) throw Failure{kExitInternal, "Internal: inconsistent weave: " + issue};

  size_t strands = 0, crossings = 0, visits = 0;
  check(pw_weave_counts(w.get(), &strands, &crossings, &visits));
  Table table;
  table.row({"mode", a.mode});
  table.row({"steps", std::to_string(a.steps)});
  table.row({"strands", std::to_string(strands)});
  table.row({"crossings", std::to_string(crossings)});
  table.row({"visits", std::to_string(visits)});

  pw_string* s = nullptr;
  if (!a.json.empty()) {
    check(pw_weave_json(w.get(), &s));
    a.common.write(a.json, take(s));
  }
  if (!a.svg.empty()) {
    check(pw_weave_ribbon_svg(w.get(), a.width, a.palette.c_str(), &s));
    a.common.write(a.svg, take(s));
  }
  if (!a.tiles.empty()) {
    check(pw_weave_tiles_svg(w.get(), a.palette.c_str(), &s));
    a.common.write(a.tiles, take(s));
  }
  if (!a.cut_template.empty()) {
    int groups = 0;
    check(pw_weave_cut_template_svg(w.get(), a.width, a.sectors, &s, &groups));
    a.common.write(a.cut_template, take(s));
    table.row({"cut_groups", std::to_string(groups)});
  }
  table.print(std::cout, a.common.pretty);
  return 0;
}

// ---- fractal ----

struct FractalArgs {
  Common common;
  int steps = 6;
  bool box_counting = false;
  int raster = 0;
  int raster_steps = 16;
  std::string raster_out = "first_hit.ppm";
  int lsystem = -1;
  std::string lsystem_out;
};

int run_fractal(const FractalArgs& a) {
  MeshPtr in = a.common.load("pentagon");
  const pw_snub_options o = a.common.options();
  Table table;

  if (a.steps > 0) {
    pw_subdivision* raw = nullptr;
    check(pw_subdivide(in.get(), "snub", a.steps, &o, &raw));
    std::unique_ptr<pw_subdivision, SubdivisionDeleter> run(raw);
    std::vector<double> lengths(pw_subdivision_steps(run.get()) + 1);
    check(pw_subdivision_boundary_lengths(run.get(), lengths.data(), lengths.size(), nullptr));
    table.row({"step", "boundary_length", "ratio"});
    for (std::size_t t = 0; t < lengths.size(); ++t)
      table.row({std::to_string(t), fmt("%.12f", lengths[t]),
                 t == 0 ? "-" : fmt("%.12f", lengths[t] / lengths[t - 1])});
    if (lengths.size() >= 3) {
      double d = 0.0, r = 0.0;
      check(pw_fractal_dimension(lengths.data(), lengths.size(), 0.0, &d, &r));
      table.row({"dimension", fmt("%.9f", d), fmt("%.3g", r)});
    }
    if (a.box_counting) {
      pw_mesh* last = nullptr;
      check(pw_subdivision_mesh(run.get(), pw_subdivision_steps(run.get()), &last));
      MeshPtr owned(last);
      double d = 0.0, r = 0.0;
      check(pw_box_counting_dimension(last, 4, 10, &d, &r));
      table.row({"box_counting_dimension", fmt("%.6f", d), fmt("%.3g", r)});
    }
  }

  if (a.raster > 0) {
    pw_raster* raw = nullptr;
    check(pw_raster_first_hit(in.get(), a.raster, a.raster_steps, &o, nullptr, &raw));
    std::unique_ptr<pw_raster, RasterDeleter> r(raw);
    int width = 0, height = 0, exhausted = 0, saturation = -1;
    check(pw_raster_info(r.get(), &width, &height, &exhausted, &saturation, nullptr));
    size_t count = 0;
    check(pw_raster_new_pixels(r.get(), nullptr, 0, &count));
    std::vector<size_t> fresh(count);
    check(pw_raster_new_pixels(r.get(), fresh.data(), fresh.size(), nullptr));
    table.row({"raster_step", "new_pixels"});
    for (std::size_t t = 0; t < fresh.size(); ++t) table.row({std::to_string(t), std::to_string(fresh[t])});
    table.row({"raster_resolution", std::to_string(width) + "x" + std::to_string(height)});
    table.row({"saturation_step", saturation < 0 ? "-" : std::to_string(saturation)});
    pw_string* s = nullptr;
    check(pw_raster_ppm(r.get(), &s));
    a.common.write(a.raster_out, take(s));
    if (!exhausted)
      std::cerr << "warning: raster not saturated after " << a.raster_steps << " steps\n";
  }

  if (a.lsystem >= 0) {
    pw_string* symbols = nullptr;
    pw_string* svg = nullptr;
    size_t segments = 0;
    check(pw_lsystem(a.lsystem, &symbols, &svg, &segments));
    const std::string sym = take(symbols);
    const std::string image = take(svg);
    table.row({"lsystem_depth", std::to_string(a.lsystem)});
    table.row({"lsystem_segments", std::to_string(segments)});
    if (a.lsystem <= 3) table.row({"lsystem_word", sym});
    a.common.write(a.lsystem_out.empty() ? "lsystem_d" + std::to_string(a.lsystem) + ".svg" : a.lsystem_out, image);
  }

  table.print(std::cout, a.common.pretty);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pentaweave: pentagon snub subdivision, weaving patterns and boundary fractals"};
  app.set_version_flag("--version", std::string(pw_version()));
  app.require_subcommand(1);

  SubdivideArgs sub;
  auto* c_sub = app.add_subcommand("subdivide", "apply subdivision steps and report V/E/F per step");
  sub.common.add_to(c_sub);
  c_sub->add_option("--scheme", sub.scheme, "snub, loop, butterfly, sqrt3, midedge, catmull-clark, doo-sabin");
  c_sub->add_option("--steps", sub.steps, "number of steps")->check(CLI::NonNegativeNumber);
  c_sub->add_option("--output,-o", sub.output, "pmesh file of the final mesh");
  c_sub->add_flag("--all-steps", sub.all_steps, "write every step (name_tN.ext)");
  c_sub->add_option("--svg", sub.svg, "SVG drawing of the final mesh");
  c_sub->add_option("--fill", sub.fill, "none, face or coloring");
  c_sub->add_flag("--highlight", sub.highlight, "draw Z-middle edges of snub steps in red");

  WeaveArgs wv;
  auto* c_wv = app.add_subcommand("weave", "refine and build a weaving pattern");
  wv.common.add_to(c_wv);
  c_wv->add_option("--mode", wv.mode, "snub-glue, quad-2color, tri-glue, sqrt3-quadize, face-split");
  c_wv->add_option("--steps", wv.steps, "refinement steps before weaving")->check(CLI::NonNegativeNumber);
  c_wv->add_option("--json", wv.json, "weave document");
  c_wv->add_option("--svg", wv.svg, "ribbon drawing");
  c_wv->add_option("--tiles", wv.tiles, "crossing tiles coloured by the strand on top");
  c_wv->add_option("--cut-template", wv.cut_template, "ribbon outlines grouped by sector");
  c_wv->add_option("--sectors", wv.sectors, "sector count for the cut template (0: symmetry of the input)");
  c_wv->add_option("--width", wv.width, "ribbon width as a fraction of the edge length");
  c_wv->add_option("--palette", wv.palette, "paper-maritime-12, paper-maritime-4, jigsaw-20");

  FractalArgs fr;
  auto* c_fr = app.add_subcommand("fractal", "boundary lengths, dimension estimate, first-hit raster, L-system");
  fr.common.add_to(c_fr);
  c_fr->add_option("--steps", fr.steps, "snub steps for the length table (input defaults to pentagon)")
      ->check(CLI::NonNegativeNumber);
  c_fr->add_flag("--box-counting", fr.box_counting, "box-counting dimension of the last boundary");
  c_fr->add_option("--raster", fr.raster, "first-hit raster resolution")->check(CLI::Range(16, 8192));
  c_fr->add_option("--raster-steps", fr.raster_steps, "step limit for the raster")->check(CLI::NonNegativeNumber);
  c_fr->add_option("--raster-out", fr.raster_out, "raster file (binary PPM)");
  c_fr->add_option("--lsystem", fr.lsystem, "L-system depth")->check(CLI::NonNegativeNumber);
  c_fr->add_option("--lsystem-out", fr.lsystem_out, "L-system SVG (default lsystem_d<depth>.svg)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  try {
    if (c_sub->parsed()) return run_subdivide(sub);
    if (c_wv->parsed()) return run_weave(wv);
    if (c_fr->parsed()) return run_fractal(fr);
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << '\n';
    return f.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "error: Internal: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitValidation;
}
