#include "qwsnm/solver.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <stdexcept>
#include <thread>

#include "qwsnm/metrics.hpp"
#include "qwsnm/qsvd.hpp"

namespace qwsnm {

namespace {

constexpr double kScale = 255.0;

bool all_finite(const QMatrix& m) {
  for (int l = 0; l < 4; ++l)
    if (!m.plane(l).allFinite()) return false;
  return true;
}

void append_csv_double(std::ostream& os, double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  os << buf;
}

}  // namespace

void validate(const SolverConfig& cfg) {
  if (cfg.p <= 0.0 || cfg.p > 1.0)
    throw std::invalid_argument("config: p must be in (0, 1]");
  if (cfg.lambda <= 0.0) throw std::invalid_argument("config: lambda must be > 0");
  if (cfg.beta0 <= 0.0) throw std::invalid_argument("config: beta0 must be > 0");
  if (cfg.mu <= 1.0) throw std::invalid_argument("config: mu must be > 1");
  if (cfg.iters < 1) throw std::invalid_argument("config: iters must be >= 1");
  if (cfg.gst_iters < 1)
    throw std::invalid_argument("config: gst-iters must be >= 1");
  if (cfg.weight_c <= 0.0) throw std::invalid_argument("config: c must be > 0");
  if (cfg.weight_eps <= 0.0)
    throw std::invalid_argument("config: eps must be > 0");
  if (cfg.patch.patch < 1 || cfg.patch.group < 1 || cfg.patch.stride < 1 ||
      cfg.patch.window < cfg.patch.patch)
    throw std::invalid_argument("config: bad patch parameters");
  if (cfg.threads < 1) throw std::invalid_argument("config: threads must be >= 1");
}

void ConvergenceTrace::write_csv(std::ostream& os, bool with_timing) const {
  os << "iter,dx,dz,dxz,beta,psnr,seconds\n";
  for (const IterationStats& it : iterations) {
    os << it.iter << ',';
    append_csv_double(os, it.dx);
    os << ',';
    append_csv_double(os, it.dz);
    os << ',';
    append_csv_double(os, it.dxz);
    os << ',';
    append_csv_double(os, it.beta);
    os << ',';
    if (it.psnr) append_csv_double(os, *it.psnr);
    os << ',';
    append_csv_double(os, with_timing ? it.seconds : 0.0);
    os << '\n';
  }
}

PureQImage shrink_image_groups(const PureQImage& v, const SolverConfig& cfg,
                               double beta, double sigma_n) {
  const int m = static_cast<int>(v.rows());
  const int n = static_cast<int>(v.cols());
  const std::vector<Coord> keys = select_keys(m, n, cfg.patch);
  const double c_eff = cfg.weight_sqrt_m
                           ? cfg.weight_c * std::sqrt(cfg.patch.group)
                           : cfg.weight_c;
  const ShrinkageSpec spec{cfg.mode, cfg.p, cfg.gst_iters};

  std::vector<std::pair<std::vector<Coord>, QMatrix>> results(keys.size());
  auto worker = [&](size_t begin, size_t step) {
    for (size_t g = begin; g < keys.size(); g += step) {
      PatchGroup group = match_group(v, keys[g], cfg.patch);
      QSvdResult svd = qsvd(group.data);
      Eigen::VectorXd sig_est = svd.S;
      if (cfg.noise_compensate) {
        const double bias = cfg.patch.group * sigma_n * sigma_n;
        sig_est = (svd.S.array().square() - bias).max(0.0).sqrt();
      }
      WeightVector w = make_weights(sig_est, c_eff, cfg.weight_eps);
      Eigen::VectorXd delta = shrink_singular_values(svd.S, w, spec, beta);
      results[g] = {std::move(group.members),
                    scale_cols(svd.U, delta) * conj_transpose(svd.V)};
    }
  };

  const size_t nthreads =
      std::min<size_t>(std::max(cfg.threads, 1), keys.size());
  if (nthreads <= 1) {
    worker(0, 1);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (size_t t = 0; t < nthreads; ++t)
      pool.emplace_back(worker, t, nthreads);
    for (auto& th : pool) th.join();
  }
  // Aggregation order is the fixed key order, independent of threading.
  return aggregate(results, m, n, cfg.patch.patch);
}

RestoreResult restore(const PureQImage& y, const DegradationModel& model,
                      const SolverConfig& cfg, const PureQImage* reference) {
  validate(cfg);
  if (!all_finite(y.qmat()))
    throw std::invalid_argument("restore: non-finite input");
  const int m = static_cast<int>(y.rows());
  const int n = static_cast<int>(y.cols());
  if (m < cfg.patch.patch || n < cfg.patch.patch)
    throw std::invalid_argument("restore: image smaller than patch");

  // Work on [0, 1]: the parameter schedules assume unit dynamic range.
  PureQImage yn = y;
  for (int ch = 0; ch < 3; ++ch) yn.channel(ch) /= kScale;
  const double sigma_n = model.sigma / kScale;

  PureQImage x = yn;
  PureQImage z = x;
  QMatrix eta(m, n);
  double beta = cfg.beta0;

  RestoreResult out;
  out.trace.iterations.reserve(cfg.iters);

  for (int k = 0; k < cfg.iters; ++k) {
    const auto t0 = std::chrono::steady_clock::now();

    QMatrix x_new =
        solve_x_subproblem(yn, z.qmat(), eta, model.kernel, cfg.lambda, beta);
    PureQImage x_img(std::move(x_new));

    PureQImage v(x_img.qmat() + (1.0 / beta) * eta);
    PureQImage z_new = shrink_image_groups(v, cfg, beta, sigma_n);

    eta = eta + beta * (x_img.qmat() - z_new.qmat());

    if (!all_finite(x_img.qmat()) || !all_finite(z_new.qmat()) ||
        !all_finite(eta))
      throw std::runtime_error("restore: NaN/Inf in iterate at iteration " +
                               std::to_string(k + 1));

    IterationStats st;
    st.iter = k + 1;
    st.dx = frobenius(x_img.qmat() - x.qmat());
    st.dz = frobenius(z_new.qmat() - z.qmat());
    st.dxz = frobenius(x_img.qmat() - z_new.qmat());
    st.beta = beta;
    if (reference) {
      PureQImage scored = x_img;
      for (int ch = 0; ch < 3; ++ch) scored.channel(ch) *= kScale;
      st.psnr = psnr(*reference, quantize_8bit(scored));
    }
    st.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();

    const double x_norm = frobenius(x.qmat());
    x = std::move(x_img);
    z = std::move(z_new);
    beta *= cfg.mu;
    out.trace.iterations.push_back(st);

    if (cfg.stop_rel_change > 0.0 && x_norm > 0.0 &&
        st.dx / x_norm < cfg.stop_rel_change)
      break;
  }

  for (int ch = 0; ch < 3; ++ch) x.channel(ch) *= kScale;
  x.purify();
  out.image = std::move(x);
  return out;
}

SolverConfig default_denoise_config(double sigma) {
  if (sigma <= 0.0)
    throw std::invalid_argument("default_denoise_config: sigma must be > 0");
  SolverConfig cfg;
  cfg.mode = ShrinkMode::Wsnm;
  cfg.p = 0.95;
  cfg.lambda = 1.0;
  cfg.beta0 = 0.5;
  cfg.mu = 1.05;
  if (sigma > 50.0)
    std::cerr << "warning: sigma > 50 has no tuned schedule; using the "
                 "40-50 bracket\n";
  if (sigma <= 20.0) {
    cfg.patch = {4, 70, 30, 2};
    cfg.iters = 8;
  } else if (sigma <= 40.0) {
    cfg.patch = {5, 90, 30, 2};
    cfg.iters = 12;
  } else {
    cfg.patch = {5, 120, 40, 2};
    cfg.iters = 14;
  }
  return cfg;
}

SolverConfig default_deblur_config(BlurKind kind) {
  SolverConfig cfg;
  cfg.mode = ShrinkMode::Wsnm;
  cfg.p = 0.95;
  cfg.patch = {6, 155, 30, 3};
  cfg.weight_c = 2.2 * std::sqrt(2.0);
  cfg.iters = 30;
  cfg.mu = 1.05;
  cfg.stop_rel_change = 1e-4;
  switch (kind) {
    case BlurKind::Gaussian:
      cfg.lambda = 65.0;
      cfg.beta0 = 7.5;
      break;
    case BlurKind::Motion:
      cfg.lambda = 115.0;
      cfg.beta0 = 7.5;
      break;
    case BlurKind::Uniform:
      cfg.lambda = 115.0;
      cfg.beta0 = 8.5;
      break;
  }
  return cfg;
}

}  // namespace qwsnm
