#include "qwsnm/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qwsnm/degradation.hpp"
#include "qwsnm/image_io.hpp"
#include "qwsnm/metrics.hpp"
#include "qwsnm/solver.hpp"

namespace qwsnm {

namespace {

namespace fs = std::filesystem;

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// Shared solver/weight flags; individual subcommands decide the defaults,
// so overrides are applied only for options the user actually set.
struct SolverOpts {
  std::string mode;
  double p = 0.0;
  double lambda = 0.0;
  double beta0 = 0.0;
  double mu = 0.0;
  int iters = 0;
  int gst_iters = 0;
  int patch_size = 0;
  int group_size = 0;
  int window = 0;
  int stride = 0;
  double c = 0.0;
  double eps = 0.0;
  bool weight_sqrt_m = false;
  bool noise_compensate = false;
  double stop_tol = -1.0;
  int threads = 0;
};

void add_solver_flags(CLI::App* cmd, SolverOpts& o) {
  cmd->add_option("--mode", o.mode, "Shrinkage mode: wnnm or wsnm")
      ->check(CLI::IsMember({"wnnm", "wsnm"}));
  cmd->add_option("--p", o.p, "Schatten power in (0,1]");
  cmd->add_option("--lambda", o.lambda, "Data fidelity weight");
  cmd->add_option("--beta0", o.beta0, "Initial penalty parameter");
  cmd->add_option("--mu", o.mu, "Continuation factor (> 1)");
  cmd->add_option("--iters", o.iters, "Outer iterations");
  cmd->add_option("--gst-iters", o.gst_iters, "GST inner iterations");
  cmd->add_option("--patch-size", o.patch_size, "Patch side w");
  cmd->add_option("--group-size", o.group_size, "Similar patches per group");
  cmd->add_option("--window", o.window, "Search window side W");
  cmd->add_option("--stride", o.stride, "Key patch spacing");
  cmd->add_option("--c", o.c, "Weight compromise constant");
  cmd->add_option("--eps", o.eps, "Weight stabilizer");
  cmd->add_flag("--weight-sqrt-m", o.weight_sqrt_m,
                "Scale weights by sqrt(group size)");
  cmd->add_flag("--noise-compensate", o.noise_compensate,
                "Weights from noise-compensated singular values");
  cmd->add_option("--stop-tol", o.stop_tol,
                  "Early stop on relative X change (0 disables)");
  cmd->add_option("--threads", o.threads, "Worker threads for the Z-update");
}

void apply_overrides(const CLI::App* cmd, const SolverOpts& o,
                     SolverConfig& cfg) {
  if (cmd->count("--mode"))
    cfg.mode = o.mode == "wnnm" ? ShrinkMode::Wnnm : ShrinkMode::Wsnm;
  if (cmd->count("--p")) cfg.p = o.p;
  if (cmd->count("--lambda")) cfg.lambda = o.lambda;
  if (cmd->count("--beta0")) cfg.beta0 = o.beta0;
  if (cmd->count("--mu")) cfg.mu = o.mu;
  if (cmd->count("--iters")) cfg.iters = o.iters;
  if (cmd->count("--gst-iters")) cfg.gst_iters = o.gst_iters;
  if (cmd->count("--patch-size")) cfg.patch.patch = o.patch_size;
  if (cmd->count("--group-size")) cfg.patch.group = o.group_size;
  if (cmd->count("--window")) cfg.patch.window = o.window;
  if (cmd->count("--stride"))
    cfg.patch.stride = o.stride;
  else if (cmd->count("--patch-size"))
    cfg.patch.stride = std::max(1, o.patch_size / 2);
  if (cmd->count("--c")) cfg.weight_c = o.c;
  if (cmd->count("--eps")) cfg.weight_eps = o.eps;
  if (cmd->count("--weight-sqrt-m")) cfg.weight_sqrt_m = o.weight_sqrt_m;
  if (cmd->count("--noise-compensate"))
    cfg.noise_compensate = o.noise_compensate;
  if (cmd->count("--stop-tol")) cfg.stop_rel_change = o.stop_tol;
  if (cmd->count("--threads")) cfg.threads = o.threads;
}

std::string mode_name(ShrinkMode m) {
  return m == ShrinkMode::Wnnm ? "wnnm" : "wsnm";
}

// Provenance block echoed into every CSV this tool writes.
std::vector<std::string> config_echo(const SolverConfig& cfg,
                                     const std::string& kernel_spec,
                                     double sigma, std::uint64_t seed) {
  std::vector<std::string> lines;
  auto add = [&](const std::string& k, const std::string& v) {
    lines.push_back("# " + k + " = " + v);
  };
  add("kernel", kernel_spec);
  add("sigma", fmt_double(sigma));
  add("seed", std::to_string(seed));
  add("mode", mode_name(cfg.mode));
  add("p", fmt_double(cfg.p));
  add("lambda", fmt_double(cfg.lambda));
  add("beta0", fmt_double(cfg.beta0));
  add("mu", fmt_double(cfg.mu));
  add("iters", std::to_string(cfg.iters));
  add("gst_iters", std::to_string(cfg.gst_iters));
  add("patch_size", std::to_string(cfg.patch.patch));
  add("group_size", std::to_string(cfg.patch.group));
  add("window", std::to_string(cfg.patch.window));
  add("stride", std::to_string(cfg.patch.stride));
  add("c", fmt_double(cfg.weight_c));
  add("eps", fmt_double(cfg.weight_eps));
  add("weight_sqrt_m", cfg.weight_sqrt_m ? "1" : "0");
  add("noise_compensate", cfg.noise_compensate ? "1" : "0");
  add("stop_tol", fmt_double(cfg.stop_rel_change));
  return lines;
}

BlurKind blur_kind_from_spec(const std::string& spec) {
  if (spec.rfind("uniform", 0) == 0) return BlurKind::Uniform;
  if (spec.rfind("gaussian", 0) == 0) return BlurKind::Gaussian;
  if (spec.rfind("motion", 0) == 0) return BlurKind::Motion;
  throw CLI::ValidationError("--kernel",
                             "deblur needs uniform:/gaussian:/motion: kernel");
}

struct RestoreCmdOpts {
  std::string input, out, clean, kernel_spec = "identity", trace_path;
  double sigma = 0.0;
  std::uint64_t seed = 0;
  bool save_float = false;
  bool no_timing = false;
  SolverOpts solver;
};

int do_restore(const RestoreCmdOpts& o, const CLI::App* cmd, bool deblur) {
  Kernel kernel = parse_kernel_spec(o.kernel_spec);
  SolverConfig cfg = deblur
                         ? default_deblur_config(
                               blur_kind_from_spec(o.kernel_spec))
                         : default_denoise_config(o.sigma > 0 ? o.sigma : 25.0);
  apply_overrides(cmd, o.solver, cfg);
  cfg.seed = o.seed;
  validate(cfg);

  PureQImage y = read_image(o.input);
  std::optional<PureQImage> clean;
  if (!o.clean.empty()) clean = read_image(o.clean);

  DegradationModel model{kernel, o.sigma, o.seed};
  RestoreResult res =
      restore(y, model, cfg, clean ? &*clean : nullptr);

  write_png(o.out, res.image);
  if (o.save_float) write_sidecar(o.out + ".qimg", res.image);

  if (!o.trace_path.empty()) {
    std::ofstream tf(o.trace_path);
    if (!tf) throw std::runtime_error("cannot write " + o.trace_path);
    for (const auto& line :
         config_echo(cfg, o.kernel_spec, o.sigma, o.seed))
      tf << line << '\n';
    res.trace.write_csv(tf, !o.no_timing);
  }
  if (clean) {
    QualityReport q = quality(*clean, quantize_8bit(res.image));
    std::printf("PSNR: %.4f dB\nSSIM: %.6f\n", q.psnr, q.ssim);
  }
  return 0;
}

struct BenchRow {
  std::string image, scenario;
  double psnr_in, ssim_in, psnr_out, ssim_out, seconds;
};

void write_bench_csv(std::ostream& os, const std::vector<std::string>& echo,
                     const std::vector<BenchRow>& rows, bool with_timing) {
  for (const auto& line : echo) os << line << '\n';
  os << "image,scenario,psnr_in,ssim_in,psnr_out,ssim_out,seconds\n";
  for (const BenchRow& r : rows) {
    os << r.image << ',' << r.scenario << ',' << fmt_double(r.psnr_in) << ','
       << fmt_double(r.ssim_in) << ',' << fmt_double(r.psnr_out) << ','
       << fmt_double(r.ssim_out) << ','
       << fmt_double(with_timing ? r.seconds : 0.0) << '\n';
  }
}

BenchRow average_row(const std::vector<BenchRow>& rows,
                     const std::string& scenario) {
  BenchRow avg{"Average", scenario, 0, 0, 0, 0, 0};
  for (const BenchRow& r : rows) {
    avg.psnr_in += r.psnr_in;
    avg.ssim_in += r.ssim_in;
    avg.psnr_out += r.psnr_out;
    avg.ssim_out += r.ssim_out;
    avg.seconds += r.seconds;
  }
  const double n = static_cast<double>(rows.size());
  avg.psnr_in /= n;
  avg.ssim_in /= n;
  avg.psnr_out /= n;
  avg.ssim_out /= n;
  avg.seconds /= n;
  return avg;
}

std::vector<double> parse_sweep(const std::string& spec) {
  double a, b, step;
  if (std::sscanf(spec.c_str(), "%lf:%lf:%lf", &a, &b, &step) != 3 ||
      step <= 0)
    throw CLI::ValidationError("--sweep-p", "expected a:b:step");
  std::vector<double> out;
  for (double p = a; p <= b + 1e-12; p += step) out.push_back(std::min(p, 1.0));
  return out;
}

struct BenchCmdOpts {
  std::string input_dir, csv_path, kernel_spec = "identity", sweep;
  double sigma = 25.0;
  std::uint64_t seed = 0;
  bool no_timing = false;
  SolverOpts solver;
};

int do_bench(const BenchCmdOpts& o, const CLI::App* cmd) {
  std::vector<fs::path> files;
  if (fs::is_directory(o.input_dir)) {
    for (const auto& e : fs::directory_iterator(o.input_dir))
      if (e.path().extension() == ".png") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) {
    std::cerr << "bench: no PNG images in " << o.input_dir << "\n";
    return 1;
  }

  Kernel kernel = parse_kernel_spec(o.kernel_spec);
  const bool is_blur = !kernel.is_identity;
  SolverConfig base =
      is_blur ? default_deblur_config(blur_kind_from_spec(o.kernel_spec))
              : default_denoise_config(o.sigma);
  apply_overrides(cmd, o.solver, base);
  base.seed = o.seed;
  validate(base);

  std::vector<double> sweep = o.sweep.empty()
                                  ? std::vector<double>{base.p}
                                  : parse_sweep(o.sweep);
  const std::string scenario_base =
      o.kernel_spec + "/sigma=" + fmt_double(o.sigma);

  std::vector<BenchRow> all_rows;
  for (double p : sweep) {
    SolverConfig cfg = base;
    cfg.p = p;
    validate(cfg);
    std::string scenario = scenario_base;
    if (!o.sweep.empty()) scenario += ";p=" + fmt_double(p);

    std::vector<BenchRow> rows;
    for (size_t idx = 0; idx < files.size(); ++idx) {
      PureQImage clean = read_png(files[idx].string());
      const std::uint64_t img_seed = o.seed ^ static_cast<std::uint64_t>(idx);
      DegradationModel model{kernel, o.sigma, img_seed};
      PureQImage degraded =
          add_noise(blur_periodic(clean, kernel), o.sigma, img_seed);
      QualityReport qin = quality(clean, quantize_8bit(degraded));

      SolverConfig run_cfg = cfg;
      run_cfg.seed = img_seed;
      const auto t0 = std::chrono::steady_clock::now();
      RestoreResult res = restore(degraded, model, run_cfg);
      const double secs =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
              .count();
      QualityReport qout = quality(clean, quantize_8bit(res.image));
      rows.push_back({files[idx].stem().string(), scenario, qin.psnr,
                      qin.ssim, qout.psnr, qout.ssim, secs});
    }
    rows.push_back(average_row(rows, scenario));
    all_rows.insert(all_rows.end(), rows.begin(), rows.end());
  }

  std::ofstream os(o.csv_path);
  if (!os) throw std::runtime_error("cannot write " + o.csv_path);
  write_bench_csv(os, config_echo(base, o.kernel_spec, o.sigma, o.seed),
                  all_rows, !o.no_timing);
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{
      "Quaternion low-rank color image restoration: nonlocal weighted "
      "Schatten p-norm / nuclear norm shrinkage under ADMM with "
      "continuation"};
  app.require_subcommand(1);

  // degrade
  struct {
    std::string input, out, kernel_spec = "identity";
    double sigma = 0.0;
    std::uint64_t seed = 0;
    bool save_float = false;
  } dg;
  CLI::App* degrade = app.add_subcommand("degrade", "Blur and add noise");
  degrade->add_option("--input", dg.input, "Clean 8-bit RGB PNG")->required();
  degrade->add_option("--out", dg.out, "Degraded PNG path")->required();
  degrade->add_option("--kernel", dg.kernel_spec,
                      "identity | uniform:S | gaussian:S:STD | motion:L:A");
  degrade->add_option("--sigma", dg.sigma, "Noise std-dev on [0,255]");
  degrade->add_option("--seed", dg.seed, "Noise seed");
  degrade->add_flag("--save-float", dg.save_float,
                    "Also write a lossless .qimg sidecar");
  degrade->set_config("--config");

  // denoise / deblur
  RestoreCmdOpts dn, db;
  CLI::App* denoise = app.add_subcommand("denoise", "Remove Gaussian noise");
  denoise->add_option("--input", dn.input, "Degraded PNG or .qimg")
      ->required();
  denoise->add_option("--out", dn.out, "Restored PNG path")->required();
  denoise->add_option("--sigma", dn.sigma, "Noise std-dev on [0,255]")
      ->required();
  denoise->add_option("--clean", dn.clean, "Reference image for scoring");
  denoise->add_option("--seed", dn.seed, "Seed recorded in outputs");
  denoise->add_option("--trace", dn.trace_path, "Write per-iteration CSV");
  denoise->add_flag("--save-float", dn.save_float, "Also write .qimg");
  denoise->add_flag("--no-timing", dn.no_timing,
                    "Zero the seconds column (reproducible CSVs)");
  add_solver_flags(denoise, dn.solver);
  denoise->set_config("--config");

  CLI::App* deblur = app.add_subcommand("deblur", "Remove blur and noise");
  deblur->add_option("--input", db.input, "Degraded PNG or .qimg")
      ->required();
  deblur->add_option("--out", db.out, "Restored PNG path")->required();
  deblur
      ->add_option("--kernel", db.kernel_spec,
                   "uniform:S | gaussian:S:STD | motion:L:A")
      ->required();
  deblur->add_option("--sigma", db.sigma, "Noise std-dev on [0,255]");
  deblur->add_option("--clean", db.clean, "Reference image for scoring");
  deblur->add_option("--seed", db.seed, "Seed recorded in outputs");
  deblur->add_option("--trace", db.trace_path, "Write per-iteration CSV");
  deblur->add_flag("--save-float", db.save_float, "Also write .qimg");
  deblur->add_flag("--no-timing", db.no_timing,
                   "Zero the seconds column (reproducible CSVs)");
  add_solver_flags(deblur, db.solver);
  deblur->set_config("--config");

  // bench
  BenchCmdOpts bn;
  CLI::App* bench =
      app.add_subcommand("bench", "Degrade + restore a directory of PNGs");
  bench->add_option("--input", bn.input_dir, "Directory of clean PNGs")
      ->required();
  bench->add_option("--csv", bn.csv_path, "Output CSV path")->required();
  bench->add_option("--kernel", bn.kernel_spec, "Degradation kernel spec");
  bench->add_option("--sigma", bn.sigma, "Noise std-dev on [0,255]");
  bench->add_option("--seed", bn.seed, "Base seed; image i uses seed^i");
  bench->add_option("--sweep-p", bn.sweep, "Sweep Schatten power, a:b:step");
  bench->add_flag("--no-timing", bn.no_timing,
                  "Zero the seconds column (reproducible CSVs)");
  add_solver_flags(bench, bn.solver);
  bench->set_config("--config");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (degrade->parsed()) {
      Kernel kernel = parse_kernel_spec(dg.kernel_spec);
      PureQImage img = read_png(dg.input);
      PureQImage out = add_noise(blur_periodic(img, kernel), dg.sigma, dg.seed);
      write_png(dg.out, out);
      if (dg.save_float) write_sidecar(dg.out + ".qimg", out);
      return 0;
    }
    if (denoise->parsed()) return do_restore(dn, denoise, false);
    if (deblur->parsed()) return do_restore(db, deblur, true);
    if (bench->parsed()) return do_bench(bn, bench);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace qwsnm
