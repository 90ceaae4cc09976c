#include "hp/quadrature.hpp"

#include <algorithm>
#include <cmath>

#include "hp/parallel.hpp"
#include "hp/types.hpp"

namespace hp {

namespace {

constexpr double kX[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                          0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                          0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                          0.207784955007898467600689403773245, 0.0};
constexpr double kWK[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                           0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                           0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                           0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights on the odd-indexed Kronrod nodes (1, 3, 5) and the centre.
constexpr double kWG[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                           0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  std::vector<double> k, err;
  std::size_t evals = 0;
};

// One GK15 panel; on rejection, recurse into halves.
void panel(const VecFn& f, std::size_t dim, double a, double b, double tol, unsigned depth,
           unsigned max_depth, Panel& acc, std::vector<double>& buf) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  std::vector<double> K(dim, 0.0), G(dim, 0.0);
  buf.resize(dim);
  for (int i = 0; i < 15; ++i) {
    const int j = i < 8 ? i : 14 - i;
    const double x = i < 8 ? -kX[j] : kX[j];
    f(c + h * x, buf.data());
    for (std::size_t d = 0; d < dim; ++d) {
      K[d] += kWK[j] * buf[d];
      if (j % 2 == 1) G[d] += kWG[j / 2] * buf[d];
      else if (j == 7) G[d] += kWG[3] * buf[d];
    }
  }
  acc.evals += 15;
  double e = 0;
  for (std::size_t d = 0; d < dim; ++d) {
    K[d] *= h;
    G[d] *= h;
    e = std::max(e, std::abs(K[d] - G[d]));
  }
  if (e > tol * (b - a) && depth < max_depth && (b - a) > 1e-12) {
    panel(f, dim, a, c, tol, depth + 1, max_depth, acc, buf);
    panel(f, dim, c, b, tol, depth + 1, max_depth, acc, buf);
    return;
  }
  for (std::size_t d = 0; d < dim; ++d) {
    acc.k[d] += K[d];
    acc.err[d] += std::abs(K[d] - G[d]);
  }
}

}  // namespace

QuadResult gk15_adaptive(const VecFn& f, std::size_t dim, double a, double b, double step,
                         double tol_per_length, unsigned max_depth, unsigned threads) {
  if (!(b > a) || !(step > 0)) throw DomainError("gk15_adaptive: need b > a and step > 0");
  const std::size_t panels = std::max<std::size_t>(1, std::size_t(std::ceil((b - a) / step)));
  const double w = (b - a) / double(panels);
  const unsigned workers = std::max(1u, std::min<unsigned>(threads, unsigned(panels)));
  // Per-panel results are stored by index and summed in order, so the result
  // does not depend on the worker count.
  std::vector<Panel> res(panels);
  parallel_chunks(panels, workers, [&](std::size_t lo, std::size_t hi, unsigned) {
    std::vector<double> buf;
    for (std::size_t i = lo; i < hi; ++i) {
      res[i].k.assign(dim, 0.0);
      res[i].err.assign(dim, 0.0);
      const double pa = a + w * double(i), pb = (i + 1 == panels) ? b : a + w * double(i + 1);
      panel(f, dim, pa, pb, tol_per_length, 0, max_depth, res[i], buf);
    }
  });
  QuadResult out;
  out.value.assign(dim, 0.0);
  std::vector<double> err(dim, 0.0);
  for (const auto& p : res) {
    for (std::size_t d = 0; d < dim; ++d) {
      out.value[d] += p.k[d];
      err[d] += p.err[d];
    }
    out.evaluations += p.evals;
  }
  out.error = dim ? *std::max_element(err.begin(), err.end()) : 0;
  return out;
}

double gk15_adaptive(const std::function<double(double)>& f, double a, double b, double step,
                     double tol_per_length, double* error) {
  QuadResult r = gk15_adaptive([&](double t, double* o) { o[0] = f(t); }, 1, a, b, step,
                               tol_per_length);
  if (error) *error = r.error;
  return r.value[0];
}

}  // namespace hp
