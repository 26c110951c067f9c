#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "qwsnm/degradation.hpp"
#include "qwsnm/patch.hpp"
#include "qwsnm/qmatrix.hpp"
#include "qwsnm/shrinkage.hpp"

namespace qwsnm {

// All tunables of the ADMM loop. Intensities are normalized to [0, 1]
// inside restore(), and lambda/beta0/c are calibrated for that scale.
struct SolverConfig {
  ShrinkMode mode = ShrinkMode::Wsnm;
  double p = 0.95;
  double lambda = 1.0;
  double beta0 = 0.5;
  double mu = 1.05;  // continuation factor, > 1
  int iters = 12;
  int gst_iters = 3;
  PatchParams patch;
  double weight_c = 1.4142135623730951;       // sqrt(2)
  double weight_eps = 2.220446049250313e-16;  // machine epsilon
  bool weight_sqrt_m = false;      // scale weights by sqrt(group size)
  bool noise_compensate = false;   // sqrt(max(s^2 - M sn^2, 0)) weight source
  double stop_rel_change = 0.0;    // early stop on ||dX||/||X||; 0 disables
  int threads = 1;
  std::uint64_t seed = 0;
};

void validate(const SolverConfig& cfg);

// Per-iteration diagnostics mirroring the fixed-point convergence
// quantities: successive-iterate changes, the splitting residual, the
// penalty value, optional PSNR against a reference, and wall time.
struct IterationStats {
  int iter = 0;
  double dx = 0.0;   // ||X^{k+1} - X^k||_F
  double dz = 0.0;   // ||Z^{k+1} - Z^k||_F
  double dxz = 0.0;  // ||X^{k+1} - Z^{k+1}||_F
  double beta = 0.0;
  std::optional<double> psnr;
  double seconds = 0.0;
};

struct ConvergenceTrace {
  std::vector<IterationStats> iterations;

  // CSV with columns iter,dx,dz,dxz,beta,psnr,seconds. with_timing=false
  // zeroes the seconds column so outputs are byte-reproducible.
  void write_csv(std::ostream& os, bool with_timing = true) const;
};

struct RestoreResult {
  PureQImage image;
  ConvergenceTrace trace;
};

// One Z-update: groups the current estimate, shrinks each group's singular
// values (weights from that group's spectrum), reconstructs and aggregates.
// beta and sigma_n are on the internal [0, 1] scale.
PureQImage shrink_image_groups(const PureQImage& v, const SolverConfig& cfg,
                               double beta, double sigma_n);

// ADMM with continuation: X-updates via the Fourier solve, Z-updates via
// nonlocal low-rank shrinkage, multiplier step, beta <- mu * beta.
// `reference`, when given, adds per-iteration PSNR to the trace.
RestoreResult restore(const PureQImage& y, const DegradationModel& model,
                      const SolverConfig& cfg,
                      const PureQImage* reference = nullptr);

// Parameter schedules. Denoising: sigma-bracketed patch settings with
// p = 0.95, lambda = 1, c = sqrt(2). sigma > 50 falls back to the top
// bracket with a warning on stderr.
SolverConfig default_denoise_config(double sigma);

enum class BlurKind { Uniform, Gaussian, Motion };

// Deblurring: W = 30, M = 155, w = 6, p = 0.95, c = 2.2*sqrt(2), with
// per-kernel (lambda, beta0).
SolverConfig default_deblur_config(BlurKind kind);

}  // namespace qwsnm
