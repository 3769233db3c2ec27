#include "tension2d/spectra.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <limits>
#include <mutex>
#include <numbers>
#include <sstream>
#include <thread>

#include <Eigen/Dense>

#include "tension2d/errors.hpp"
#include "tension2d/tension.hpp"

namespace tension2d::spectra {

namespace {

Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> symmetric_eigen(const OperatorMatrix& m,
                                                               bool vectors) {
  const Eigen::MatrixXd sym = 0.5 * (m.entries + m.entries.transpose());
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(
      sym, vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
}

/// Runs body(i) for i in [0, count) on up to `threads` workers. Each index is
/// independent, so output order never depends on scheduling.
void parallel_for(int count, int threads, const std::function<void(int)>& body) {
  threads = std::clamp(threads, 1, std::max(count, 1));
  if (threads == 1) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::jthread> workers;
  for (int t = 0; t < threads; ++t) {
    workers.emplace_back([&] {
      for (int i = next++; i < count; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  workers.clear();
  if (error) std::rethrow_exception(error);
}

}  // namespace

SpectrumReport spectrum(const ClosedCurve& curve, double epsilon) {
  const OperatorMatrix m = tension::assemble_L(curve);
  const auto solver = symmetric_eigen(m, false);
  SpectrumReport report;
  const auto& ev = solver.eigenvalues();
  report.eigenvalues.assign(ev.data(), ev.data() + ev.size());
  std::sort(report.eigenvalues.begin(), report.eigenvalues.end(), std::greater<>());
  report.leading = report.eigenvalues.front();
  report.asymmetry = m.asymmetry;
  report.epsilon = epsilon;
  report.n_points = curve.size();
  return report;
}

double lambda2(const PerturbationSpec& spec) {
  double sum = 0.0;
  const int modes = spec.max_mode();
  for (int i = 1; i < modes; ++i) {  // i = n - 1, n >= 2
    const double n = i + 1.0;
    const double a = i < static_cast<int>(spec.g_cos.size()) ? spec.g_cos[i] : 0.0;
    const double b = i < static_cast<int>(spec.g_sin.size()) ? spec.g_sin[i] : 0.0;
    sum += n * (n * n - 1.0) * (a * a + b * b);
  }
  return sum == 0.0 ? 0.0 : -sum / 8.0;
}

SweepResult eigenvalue_sweep(const PerturbationSpec& shape, std::span<const double> epsilons,
                             int n_points, const SweepOptions& options) {
  const PeriodicGrid grid(n_points);
  SweepResult result;
  result.rows.resize(epsilons.size());
  parallel_for(static_cast<int>(epsilons.size()), options.threads, [&](int i) {
    PerturbationSpec spec = shape;
    spec.epsilon = epsilons[i];
    const double lambda = spectrum(perturbed_circle(spec, grid), spec.epsilon).leading;
    const double e = spec.epsilon;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    result.rows[i] = {e, lambda, e != 0.0 ? lambda / (e * e) : nan,
                      e != 0.0 ? lambda / (e * e * e * e) : nan};
  });
  result.fit = fit_lambda(result.rows, options.fit_window);
  return result;
}

std::optional<SweepFit> fit_lambda(std::span<const SweepRow> rows, int window) {
  std::vector<SweepRow> positive;
  for (const auto& r : rows) {
    if (r.epsilon > 0.0) positive.push_back(r);
  }
  std::sort(positive.begin(), positive.end(),
            [](const SweepRow& a, const SweepRow& b) { return a.epsilon < b.epsilon; });
  if (static_cast<int>(positive.size()) > window) positive.resize(window);
  if (positive.size() < 2) return std::nullopt;

  // Ordinary least squares of y = lambda/eps^2 against x = eps.
  const double m = static_cast<double>(positive.size());
  double sx = 0.0, sy = 0.0;
  for (const auto& r : positive) {
    sx += r.epsilon;
    sy += r.lambda_over_eps2;
  }
  const double mx = sx / m;
  const double my = sy / m;
  double sxx = 0.0, sxy = 0.0;
  for (const auto& r : positive) {
    sxx += (r.epsilon - mx) * (r.epsilon - mx);
    sxy += (r.epsilon - mx) * (r.lambda_over_eps2 - my);
  }
  if (sxx == 0.0) return std::nullopt;
  const double slope = sxy / sxx;
  return SweepFit{my - slope * mx, slope, static_cast<int>(positive.size())};
}

GridFunction nullspace_vector(const ClosedCurve& curve, double rank_tol) {
  const OperatorMatrix m = tension::assemble_L(curve);
  const auto solver = symmetric_eigen(m, true);
  const auto& ev = solver.eigenvalues();  // ascending
  const int last = static_cast<int>(ev.size()) - 1;
  const double radius = ev.cwiseAbs().maxCoeff();
  if (std::abs(ev[last]) > rank_tol * radius) {
    std::ostringstream msg;
    msg << "operator is not singular: leading eigenvalue " << ev[last] << " exceeds " << rank_tol
        << " * " << radius;
    throw NotSingularError(msg.str());
  }
  Eigen::VectorXd v = solver.eigenvectors().col(last);
  const double n = static_cast<double>(v.size());
  v *= std::sqrt(n / v.squaredNorm());
  if (v.sum() < 0.0) v = -v;
  return GridFunction::from_vector(curve.grid(), v);
}

}  // namespace tension2d::spectra
