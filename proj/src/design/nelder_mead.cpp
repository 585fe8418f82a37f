#include "omav/design/nelder_mead.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

namespace omav::design {

NelderMeadResult nelderMead(const std::function<double(const VecX&)>& f, const VecX& x0,
                            const NelderMeadOptions& options) {
  const int n = static_cast<int>(x0.size());
  const double dn = n;
  const double alpha = 1.0;
  const double beta = 1.0 + 2.0 / dn;
  const double gamma = 0.75 - 1.0 / (2.0 * dn);
  const double delta = 1.0 - 1.0 / dn;

  std::vector<VecX> simplex(n + 1, x0);
  std::vector<double> values(n + 1);
  for (int i = 0; i < n; ++i) simplex[i + 1][i] += options.initial_step;
  int evals = 0;
  auto eval = [&](const VecX& x) {
    ++evals;
    return f(x);
  };
  for (int i = 0; i <= n; ++i) values[i] = eval(simplex[i]);

  std::vector<int> order(n + 1);
  while (evals < options.max_evaluations) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return values[a] < values[b]; });
    std::vector<VecX> s(n + 1);
    std::vector<double> v(n + 1);
    for (int i = 0; i <= n; ++i) {
      s[i] = simplex[order[i]];
      v[i] = values[order[i]];
    }
    simplex = std::move(s);
    values = std::move(v);

    double spread = 0.0;
    for (int i = 1; i <= n; ++i) {
      spread = std::max(spread, (simplex[i] - simplex[0]).cwiseAbs().maxCoeff());
    }
    if (values[n] - values[0] <= options.f_tolerance && spread <= options.x_tolerance) break;
    if (spread <= options.x_tolerance * 1e-3) break;

    VecX centroid = VecX::Zero(n);
    for (int i = 0; i < n; ++i) centroid += simplex[i];
    centroid /= dn;

    const VecX xr = centroid + alpha * (centroid - simplex[n]);
    const double fr = eval(xr);
    if (fr < values[0]) {
      const VecX xe = centroid + beta * (xr - centroid);
      const double fe = eval(xe);
      if (fe < fr) {
        simplex[n] = xe;
        values[n] = fe;
      } else {
        simplex[n] = xr;
        values[n] = fr;
      }
    } else if (fr < values[n - 1]) {
      simplex[n] = xr;
      values[n] = fr;
    } else {
      const bool outside = fr < values[n];
      const VecX xc = outside ? VecX(centroid + gamma * (xr - centroid))
                              : VecX(centroid - gamma * (centroid - simplex[n]));
      const double fc = eval(xc);
      if (fc < std::min(fr, values[n])) {
        simplex[n] = xc;
        values[n] = fc;
      } else {
        for (int i = 1; i <= n; ++i) {
          simplex[i] = simplex[0] + delta * (simplex[i] - simplex[0]);
          values[i] = eval(simplex[i]);
        }
      }
    }
  }
  const auto best = std::min_element(values.begin(), values.end()) - values.begin();
  return {simplex[best], values[best], evals};
}

}  // namespace omav::design
