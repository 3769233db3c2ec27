#include "tension2d/oracles.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace tension2d::oracles {

namespace {

constexpr double kPi = std::numbers::pi;

double coeff(const std::vector<double>& v, std::size_t n) { return n < v.size() ? v[n] : 0.0; }

Vec2 xc(double t) { return {std::cos(t), std::sin(t)}; }
Vec2 dxc(double t) { return {-std::sin(t), std::cos(t)}; }

VectorGridFunction apply_componentwise(const HilbertFn& h, const VectorGridFunction& f) {
  return {h(f.component(0)), h(f.component(1))};
}

}  // namespace

GridFunction circle_sigma(const FrameFourierForce& f, const PeriodicGrid& grid) {
  const double c1 = 0.5 * (coeff(f.a, 1) + coeff(f.d, 1));
  const double s1 = 0.5 * (coeff(f.b, 1) - coeff(f.c, 1));
  const int n_max = f.max_mode();
  return GridFunction::sample(grid, [&](double t) {
    double s = c1 * std::cos(t) + s1 * std::sin(t);
    for (int n = 2; n <= n_max; ++n) {
      s += (coeff(f.d, n) * std::cos(n * t) - coeff(f.c, n) * std::sin(n * t)) / n;
    }
    return s;
  });
}

GridFunction Q0_closed_form(const VectorGridFunction& force) {
  const auto& grid = force.grid();
  const VectorGridFunction hf = spectral::hilbert_transform(force);
  const VectorGridFunction x = VectorGridFunction::sample(grid, xc);
  const VectorGridFunction dx = VectorGridFunction::sample(grid, dxc);
  const double mean_part = spectral::integrate(dot(x, force)) / (8.0 * kPi);
  GridFunction q = -0.25 * dot(dx, hf);
  for (int j = 0; j < grid.size(); ++j) q[j] -= mean_part;
  return q;
}

TolandSides toland_check(const GridFunction& g) {
  const auto& grid = g.grid();
  const int n = grid.size();
  const double h = grid.spacing();

  GridFunction lhs = g * spectral::hilbert_dtheta(g) - 0.5 * spectral::hilbert_dtheta(g * g);

  const GridFunction dg = spectral::fourier_derivative(g);
  GridFunction rhs(grid);
  for (int i = 0; i < n; ++i) {
    double acc = 4.0 * dg[i] * dg[i];  // limit of |g - g'|^2 / sin^2(delta/2)
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      const double diff = g[i] - g[j];
      const double s = std::sin(0.5 * (grid.node(i) - grid.node(j)));
      acc += diff * diff / (s * s);
    }
    rhs[i] = h * acc / (8.0 * kPi);
  }
  return {std::move(lhs), std::move(rhs)};
}

GridFunction split_Q_check(const ClosedCurve& curve, const VectorGridFunction& force) {
  const auto& grid = curve.grid();
  if (!(grid == force.grid())) throw std::invalid_argument("force and curve grids differ");
  const int n = grid.size();
  const double h = grid.spacing();
  const auto& x = curve.position();
  const auto& xt = curve.dposition();
  const auto& xtt = curve.d2position();

  const VectorGridFunction hf = spectral::hilbert_transform(force);
  GridFunction q(grid);
  for (int i = 0; i < n; ++i) {
    const Vec2& a = xt[i];
    const double a2 = a.squaredNorm();
    Vec2 fc = Vec2::Zero();
    Vec2 ft = Vec2::Zero();
    for (int j = 0; j < n; ++j) {
      double kc;
      Mat2 dgt;
      if (j == i) {
        const Vec2& b = xtt[i];
        const double ab = a.dot(b);
        kc = -ab / (2.0 * a2);
        dgt = (a * b.transpose() + b * a.transpose()) / (2.0 * a2) -
              ab * (a * a.transpose()) / (a2 * a2);
      } else {
        // delta wrapped to (-pi, pi] so 1/delta matches the cot singularity.
        double delta = std::remainder(grid.node(i) - grid.node(j), 2.0 * kPi);
        if (delta <= -kPi) delta += 2.0 * kPi;
        const Vec2 r = x[i] - x[j];
        const double r2 = r.squaredNorm();
        const double rc = 0.5 / std::tan(0.5 * delta) - 1.0 / delta;
        const double kl = 1.0 / delta - r.dot(a) / r2;
        kc = rc + kl;
        dgt = (a * r.transpose() + r * a.transpose()) / r2 -
              2.0 * r.dot(a) * (r * r.transpose()) / (r2 * r2);
      }
      fc += kc * force[j];
      ft += dgt * force[j];
    }
    const Vec2 total = -0.25 * hf[i] + (h / (4.0 * kPi)) * (fc + ft);
    q[i] = curve.tangent()[i].dot(total);
  }
  return q;
}

TrigCoefficients trig_coefficients(const GridFunction& f, int n_max) {
  const int n = f.size();
  if (n_max < 0 || 2 * n_max >= n) throw std::invalid_argument("n_max must satisfy 0 <= n_max < N/2");
  const auto c = spectral::forward_fft(f.values());
  TrigCoefficients out{std::vector<double>(n_max + 1), std::vector<double>(n_max + 1)};
  out.cos[0] = c[0].real() / n;
  for (int k = 1; k <= n_max; ++k) {
    out.cos[k] = 2.0 * c[k].real() / n;
    out.sin[k] = -2.0 * c[k].imag() / n;
  }
  return out;
}

FrameFourierForce frame_from_components(const GridFunction& f_normal,
                                        const GridFunction& f_tangent, int n_max) {
  auto normal = trig_coefficients(f_normal, n_max);
  auto tangent = trig_coefficients(f_tangent, n_max);
  return {std::move(normal.cos), std::move(normal.sin), std::move(tangent.cos),
          std::move(tangent.sin)};
}

std::vector<HilbertIdentity> hilbert_identities() {
  std::vector<HilbertIdentity> out;
  auto add = [&](std::string name, std::string table, bool diff, std::function<Vec2(double)> in,
                 std::function<Vec2(double)> ex) {
    out.push_back({std::move(name), std::move(table), diff, std::move(in), std::move(ex)});
  };

  for (int n : {2, 3, 5}) {
    const std::string m = std::to_string(n);
    auto c = [n](double t) { return std::cos(n * t); };
    auto s = [n](double t) { return std::sin(n * t); };
    const double nd = n;

    add("H[cos" + m + "t Xc]", "hilbert_01", false, [=](double t) { return Vec2(c(t) * xc(t)); },
        [=](double t) { return Vec2(s(t) * xc(t)); });
    add("H[cos" + m + "t dXc]", "hilbert_01", false, [=](double t) { return Vec2(c(t) * dxc(t)); },
        [=](double t) { return Vec2(s(t) * dxc(t)); });
    add("H[sin" + m + "t Xc]", "hilbert_01", false, [=](double t) { return Vec2(s(t) * xc(t)); },
        [=](double t) { return Vec2(-c(t) * xc(t)); });
    add("H[sin" + m + "t dXc]", "hilbert_01", false, [=](double t) { return Vec2(s(t) * dxc(t)); },
        [=](double t) { return Vec2(-c(t) * dxc(t)); });

    add("H[d(cos" + m + "t Xc)]", "hilbert_02", true, [=](double t) { return Vec2(c(t) * xc(t)); },
        [=](double t) { return Vec2(nd * c(t) * xc(t) + s(t) * dxc(t)); });
    add("H[d(sin" + m + "t Xc)]", "hilbert_02", true, [=](double t) { return Vec2(s(t) * xc(t)); },
        [=](double t) { return Vec2(nd * s(t) * xc(t) - c(t) * dxc(t)); });
    add("H[d(cos" + m + "t dXc)]", "hilbert_02", true,
        [=](double t) { return Vec2(c(t) * dxc(t)); },
        [=](double t) { return Vec2(-s(t) * xc(t) + nd * c(t) * dxc(t)); });
    add("H[d(sin" + m + "t dXc)]", "hilbert_02", true,
        [=](double t) { return Vec2(s(t) * dxc(t)); },
        [=](double t) { return Vec2(c(t) * xc(t) + nd * s(t) * dxc(t)); });
  }

  auto c2 = [](double t) { return std::cos(2.0 * t); };
  auto s2 = [](double t) { return std::sin(2.0 * t); };
  add("H[cost Xc]", "hilbert_01", false, [](double t) { return Vec2(std::cos(t) * xc(t)); },
      [=](double t) { return Vec2(0.5 * s2(t), -0.5 * c2(t)); });
  add("H[cost dXc]", "hilbert_01", false, [](double t) { return Vec2(std::cos(t) * dxc(t)); },
      [=](double t) { return Vec2(0.5 * c2(t), 0.5 * s2(t)); });
  add("H[sint Xc]", "hilbert_01", false, [](double t) { return Vec2(std::sin(t) * xc(t)); },
      [=](double t) { return Vec2(-0.5 * c2(t), -0.5 * s2(t)); });
  // sin t dXc = (-1/2 + cos 2t / 2, sin 2t / 2), whose transform has -cos 2t / 2
  // in the second slot.
  add("H[sint dXc]", "hilbert_01", false, [](double t) { return Vec2(std::sin(t) * dxc(t)); },
      [=](double t) { return Vec2(0.5 * s2(t), -0.5 * c2(t)); });
  add("H[Xc]", "hilbert_01", false, xc, [](double t) { return Vec2(-dxc(t)); });
  add("H[dXc]", "hilbert_01", false, dxc, xc);

  add("H[d(cost Xc)]", "hilbert_02", true, [](double t) { return Vec2(std::cos(t) * xc(t)); },
      [=](double t) { return Vec2(c2(t), s2(t)); });
  add("H[d(cost dXc)]", "hilbert_02", true, [](double t) { return Vec2(std::cos(t) * dxc(t)); },
      [=](double t) { return Vec2(-s2(t), c2(t)); });
  add("H[d(sint Xc)]", "hilbert_02", true, [](double t) { return Vec2(std::sin(t) * xc(t)); },
      [=](double t) { return Vec2(s2(t), -c2(t)); });
  add("H[d(sint dXc)]", "hilbert_02", true, [](double t) { return Vec2(std::sin(t) * dxc(t)); },
      [=](double t) { return Vec2(c2(t), s2(t)); });
  return out;
}

std::vector<IdentityResidual> hilbert_residuals(const PeriodicGrid& grid, const HilbertFn& hilbert) {
  const HilbertFn h = hilbert ? hilbert : HilbertFn([](const GridFunction& f) {
    return spectral::hilbert_transform(f);
  });
  std::vector<IdentityResidual> out;
  for (const auto& id : hilbert_identities()) {
    VectorGridFunction in = VectorGridFunction::sample(grid, id.input);
    if (id.differentiate) in = spectral::fourier_derivative(in);
    const VectorGridFunction got = apply_componentwise(h, in);
    const VectorGridFunction want = VectorGridFunction::sample(grid, id.expected);
    out.push_back({id.name, id.table, (got - want).max_norm()});
  }
  return out;
}

}  // namespace tension2d::oracles
