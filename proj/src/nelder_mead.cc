// Copyright 2026 The platonic-rb Authors
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


#include "platonic/nelder_mead.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace platonic {

namespace {

using Point = std::vector<double>;

Point lerp(const Point& from, const Point& to, double t) {
  Point out(from.size());
  for (size_t i = 0; i < from.size(); ++i) out[i] = from[i] + t * (to[i] - from[i]);
  return out;
}

}  // namespace

NelderMeadResult nelder_mead(const Objective& f, Point x0, Point scale, int budget) {
  const size_t n = x0.size();
  if (n == 0) throw std::invalid_argument("nelder_mead needs at least one dimension");
  if (scale.size() != n) throw std::invalid_argument("nelder_mead scale size mismatch");
  if (budget < 1) throw std::invalid_argument("nelder_mead budget must be >= 1");
  for (size_t i = 0; i < n; ++i) {
    if (!std::isfinite(x0[i])) throw std::invalid_argument("nelder_mead start is not finite");
    if (!(scale[i] > 0)) throw std::invalid_argument("nelder_mead scale must be positive");
  }

  NelderMeadResult res;
  auto eval = [&](const Point& x) {
    double v = f(x);
    if (std::isnan(v)) v = INFINITY;
    ++res.evaluations;
    res.trace.push_back(v);
    if (res.x.empty() || v < res.value) {
      res.x = x;
      res.value = v;
    }
    return v;
  };
  auto spent = [&] { return res.evaluations >= budget; };

  const double dn = static_cast<double>(n);
  const double reflect = 1.0;
  const double expand = 1.0 + 2.0 / dn;
  const double contract = 0.75 - 1.0 / (2.0 * dn);
  const double shrink = 1.0 - 1.0 / dn;

  std::vector<Point> simplex{x0};
  std::vector<double> values{eval(x0)};
  for (size_t i = 0; i < n && !spent(); ++i) {
    Point v = x0;
    v[i] += scale[i];
    simplex.push_back(v);
    values.push_back(eval(v));
  }
  if (simplex.size() < n + 1) return res;

  std::vector<size_t> order(n + 1);
  auto small_enough = [&](size_t best) {
    for (size_t v = 0; v <= n; ++v) {
      for (size_t i = 0; i < n; ++i) {
        if (std::abs(simplex[v][i] - simplex[best][i]) >= 1e-6 * scale[i]) return false;
      }
    }
    return true;
  };

  while (!spent()) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](size_t a, size_t b) { return values[a] < values[b]; });
    const size_t best = order.front();
    const size_t worst = order.back();
    const size_t second = order[n - 1];
    if (small_enough(best)) {
      res.converged = true;
      break;
    }

    Point centroid(n, 0.0);
    for (size_t v = 0; v <= n; ++v) {
      if (v == worst) continue;
      for (size_t i = 0; i < n; ++i) centroid[i] += simplex[v][i] / dn;
    }

    Point xr = lerp(centroid, simplex[worst], -reflect);
    double fr = eval(xr);
    if (fr < values[best]) {
      if (spent()) break;
      Point xe = lerp(centroid, simplex[worst], -expand);
      double fe = eval(xe);
      if (fe < fr) {
        simplex[worst] = xe;
        values[worst] = fe;
      } else {
        simplex[worst] = xr;
        values[worst] = fr;
      }
      continue;
    }
    if (fr < values[second]) {
      simplex[worst] = xr;
      values[worst] = fr;
      continue;
    }
    if (spent()) break;
    bool outside = fr < values[worst];
    Point xc = outside ? lerp(centroid, xr, contract) : lerp(centroid, simplex[worst], contract);
    double fc = eval(xc);
    if (fc < (outside ? fr : values[worst])) {
      simplex[worst] = xc;
      values[worst] = fc;
      continue;
    }
    for (size_t v = 0; v <= n && !spent(); ++v) {
      if (v == best) continue;
      simplex[v] = lerp(simplex[best], simplex[v], shrink);
      values[v] = eval(simplex[v]);
    }
  }
  return res;
}

}  // namespace platonic
