#pragma once

// Small derivative-free minimiser for the 2-real-variable searches in this
// library (sup of |Psi_z| over the disc, the fibre search in lift_to_ball,
// hyperplane clearance). Written here rather than pulled from GSL to keep the
// library free of GPL linkage.

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>

namespace pentageom::detail {

using Point2 = std::array<double, 2>;

struct MinimizeResult {
  Point2 x{};
  double f = 0.0;
  int evaluations = 0;
};

struct NelderMeadOptions {
  double initial_step = 0.05;
  double xtol = 1e-12;
  double ftol = 1e-15;
  int max_evaluations = 4000;
  int restarts = 2;
};

inline MinimizeResult nelder_mead(const std::function<double(const Point2&)>& f, Point2 start,
                                  const NelderMeadOptions& opt = {}) {
  MinimizeResult best{start, f(start), 1};
  double step = opt.initial_step;
  for (int round = 0; round <= opt.restarts; ++round) {
    std::array<Point2, 3> s{best.x, best.x, best.x};
    s[1][0] += step;
    s[2][1] += step;
    std::array<double, 3> v{best.f, f(s[1]), f(s[2])};
    int evals = 2;

    while (evals < opt.max_evaluations) {
      std::array<int, 3> idx{0, 1, 2};
      std::sort(idx.begin(), idx.end(), [&](int a, int b) { return v[a] < v[b]; });
      const Point2 xb = s[idx[0]];
      const Point2 xm = s[idx[1]];
      const Point2 xw = s[idx[2]];
      const double fb = v[idx[0]];
      const double fm = v[idx[1]];
      const double fw = v[idx[2]];

      const double size = std::max(std::hypot(xm[0] - xb[0], xm[1] - xb[1]),
                                   std::hypot(xw[0] - xb[0], xw[1] - xb[1]));
      if (size < opt.xtol || fw - fb <= opt.ftol * std::max(1.0, std::abs(fb))) break;

      const Point2 c{0.5 * (xb[0] + xm[0]), 0.5 * (xb[1] + xm[1])};
      auto along = [&](double t) { return Point2{c[0] + t * (xw[0] - c[0]), c[1] + t * (xw[1] - c[1])}; };

      const Point2 xr = along(-1.0);
      const double fr = f(xr);
      ++evals;
      if (fr < fb) {
        const Point2 xe = along(-2.0);
        const double fe = f(xe);
        ++evals;
        if (fe < fr) {
          s[idx[2]] = xe;
          v[idx[2]] = fe;
        } else {
          s[idx[2]] = xr;
          v[idx[2]] = fr;
        }
        continue;
      }
      if (fr < fm) {
        s[idx[2]] = xr;
        v[idx[2]] = fr;
        continue;
      }
      const bool outside = fr < fw;
      const Point2 xc = outside ? along(-0.5) : along(0.5);
      const double fc = f(xc);
      ++evals;
      if (fc < std::min(fr, fw)) {
        s[idx[2]] = xc;
        v[idx[2]] = fc;
        continue;
      }
      // Shrink towards the best vertex.
      for (int k : {idx[1], idx[2]}) {
        s[k] = {xb[0] + 0.5 * (s[k][0] - xb[0]), xb[1] + 0.5 * (s[k][1] - xb[1])};
        v[k] = f(s[k]);
        ++evals;
      }
    }
    best.evaluations += evals;
    const int k = static_cast<int>(std::min_element(v.begin(), v.end()) - v.begin());
    const bool improved = v[k] < best.f;
    if (v[k] <= best.f) {
      best.x = s[k];
      best.f = v[k];
    }
    if (!improved && round > 0) break;
    step = std::max(step * 0.1, 100.0 * opt.xtol);
  }
  return best;
}

}  // namespace pentageom::detail
