#include "gsp/weyl.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>

namespace gsp {

namespace detail {

namespace {
std::mutex plan2_mutex;
std::map<std::tuple<int, int, int>, fftw_plan> plan2_cache;
}  // namespace

void dft_core2(cplx* data, int n1, int n2, int sign) {
  fftw_plan p;
  {
    std::lock_guard<std::mutex> lock(plan2_mutex);
    auto key = std::make_tuple(n1, n2, sign);
    auto it = plan2_cache.find(key);
    if (it == plan2_cache.end()) {
      std::vector<cplx> tmp(std::int64_t(n1) * n2);
      fftw_complex* buf = reinterpret_cast<fftw_complex*>(tmp.data());
      p = fftw_plan_dft_2d(n1, n2, buf, buf,
                           sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD,
                           FFTW_ESTIMATE | FFTW_UNALIGNED);
      require(p != nullptr, "fftw: failed to create plan");
      plan2_cache.emplace(key, p);
    } else {
      p = it->second;
    }
  }
  fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(data),
                   reinterpret_cast<fftw_complex*>(data));
}

}  // namespace detail

WeylSymbol sample_symbol(const Grid& g,
                         const std::function<cplx(double, double)>& a) {
  WeylSymbol sym(g);
  for (int s = 0; s < 2 * g.n; ++s)
    for (int m = 0; m < g.n; ++m) sym.vals(s, m) = a(sym.x(s), g.xi(m));
  return sym;
}

WeylSymbol tensor_symbol(const Grid& g, const Eigen::VectorXd& mult) {
  require(mult.size() == g.n, "tensor_symbol: length mismatch");
  WeylSymbol sym(g);
  for (int s = 0; s < 2 * g.n; ++s)
    for (int m = 0; m < g.n; ++m) sym.vals(s, m) = mult[m];
  return sym;
}

namespace {

// kt[s][d] = (2pi)^{-1} dxi sum_m a(s,m) e^{i d h xi_m} for d = 0..n-1
// (d read mod n; the value at d and d-n coincide because e^{i d h xi_m} is
// n-periodic in d).
Eigen::MatrixXcd partial_inverse_rows(const WeylSymbol& a) {
  const int n = a.grid.n;
  Eigen::MatrixXcd kt(2 * n, n);
  std::vector<cplx> row(n);
  const double scale = a.grid.freq_step() / (2.0 * pi);
  for (int s = 0; s < 2 * n; ++s) {
    for (int m = 0; m < n; ++m) row[m] = a.vals(s, m);
    detail::dft_core(row.data(), n, 1, +1);  // sum_m row[m] e^{+2pi i dm/n}
    for (int d = 0; d < n; ++d) {
      double sgn = (d % 2 == 0) ? 1.0 : -1.0;  // e^{-i pi d} from xi centering
      kt(s, d) = scale * sgn * row[d];
    }
  }
  return kt;
}

}  // namespace

Eigen::MatrixXcd weyl_quantize(const WeylSymbol& a) {
  const int n = a.grid.n;
  require(a.vals.rows() == 2 * n && a.vals.cols() == n,
          "weyl_quantize: shape mismatch");
  Eigen::MatrixXcd kt = partial_inverse_rows(a);
  Eigen::MatrixXcd K(n, n);
  for (int ia = 0; ia < n; ++ia) {
    for (int ib = 0; ib < n; ++ib) {
      int d0 = ((ia - ib) % n + n) % n;
      if (d0 != n / 2) {
        int delta = d0 < n / 2 ? d0 : d0 - n;
        int s = ((2 * ib + delta) % (2 * n) + 2 * n) % (2 * n);
        K(ia, ib) = kt(s, d0);
      } else {
        // antipodal pair: average the two torus midpoints
        int s1 = (2 * ib + n / 2) % (2 * n);
        int s2 = ((2 * ib - n / 2) % (2 * n) + 2 * n) % (2 * n);
        K(ia, ib) = 0.5 * (kt(s1, n / 2) + kt(s2, n / 2));
      }
    }
  }
  return K;
}

namespace {

// Band-limited refinement of an n x n kernel to the 2n x 2n half-step grid.
// The per-axis Nyquist bin is split half-and-half between +-n/2 so the
// interpolation kernel is real; the corner bin (-n/2, -n/2) is assigned to
// the difference directions (-n/2, +n/2) and (+n/2, -n/2), which keeps
// circulant kernels exactly circulant on the refined grid.
Eigen::MatrixXcd refine_kernel(const Eigen::MatrixXcd& K) {
  const int n = int(K.rows());
  const int n2 = 2 * n;
  std::vector<cplx> buf(std::int64_t(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) buf[std::int64_t(a) * n + b] = K(a, b);
  detail::dft_core2(buf.data(), n, n, -1);

  // centered spectrum c[p,q], p,q in [-n/2, n/2)
  auto cbin = [n](int p) { return ((p % n) + n) % n; };
  std::vector<cplx> spec(std::int64_t(n2) * n2, cplx(0, 0));
  auto put = [&](int p, int q, cplx v) {
    // accumulate into the refined spectral array with centered-2n binning
    int pb = ((p % n2) + n2) % n2;
    int qb = ((q % n2) + n2) % n2;
    double sgn = ((p + q) % 2 == 0) ? 1.0 : -1.0;  // e^{i pi (p+q)} origin phase
    spec[std::int64_t(pb) * n2 + qb] += sgn * v;
  };
  const double inv = 1.0 / (double(n) * n);
  for (int p = -n / 2; p < n / 2; ++p) {
    for (int q = -n / 2; q < n / 2; ++q) {
      double sgn = ((p + q) % 2 == 0) ? 1.0 : -1.0;
      cplx c = inv * sgn * buf[std::int64_t(cbin(p)) * n + cbin(q)];
      bool pe = (p == -n / 2), qe = (q == -n / 2);
      if (!pe && !qe) {
        put(p, q, c);
      } else if (pe && qe) {
        put(-n / 2, n / 2, 0.5 * c);
        put(n / 2, -n / 2, 0.5 * c);
      } else if (pe) {
        put(-n / 2, q, 0.5 * c);
        put(n / 2, q, 0.5 * c);
      } else {
        put(p, -n / 2, 0.5 * c);
        put(p, n / 2, 0.5 * c);
      }
    }
  }
  detail::dft_core2(spec.data(), n2, n2, +1);
  Eigen::MatrixXcd Kt(n2, n2);
  for (int t1 = 0; t1 < n2; ++t1)
    for (int t2 = 0; t2 < n2; ++t2) Kt(t1, t2) = spec[std::int64_t(t1) * n2 + t2];
  return Kt;
}

}  // namespace

WeylSymbol symbol_from_operator(const Grid& g, const Eigen::MatrixXcd& k) {
  const int n = g.n;
  require(k.rows() == n && k.cols() == n, "symbol_from_operator: shape mismatch");
  Eigen::MatrixXcd Kt = refine_kernel(k);
  WeylSymbol a(g);
  const int n2 = 2 * n;
  std::vector<cplx> row(n);
  for (int s = 0; s < n2; ++s) {
    // g_s[delta] = Kt[s+delta, s-delta], delta in [-n/2, n/2)
    for (int d = -n / 2; d < n / 2; ++d) {
      int t1 = ((s + d) % n2 + n2) % n2;
      int t2 = ((s - d) % n2 + n2) % n2;
      double sgn = (d % 2 == 0) ? 1.0 : -1.0;  // e^{-i pi delta}
      row[(d + n) % n] = sgn * Kt(t1, t2);
    }
    // a[s,m] = h sum_d [(-1)^d g_s[d]] e^{-2pi i dm/n}; the (-1)^d factor is
    // the centered-frequency phase e^{-i d h xi} = (-1)^d omega^{-dm}
    detail::dft_core(row.data(), n, 1, -1);
    for (int m = 0; m < n; ++m) a.vals(s, m) = g.h() * row[m];
  }
  return a;
}

TfDistribution cross_wigner(const GridFunction& g_fn, const GridFunction& f_fn,
                            bool refined) {
  require(g_fn.grid == f_fn.grid && g_fn.grid.dim == 1,
          "cross_wigner: matching d = 1 grids required");
  const Grid& g = g_fn.grid;
  const int n = g.n;
  TfDistribution W;
  W.grid = g;
  W.x_count = refined ? 2 * n : n;
  W.vals.resize(W.x_count, n);
  const double c0 = 2.0 * g.h() * std::pow(2.0 * pi, -0.5);
  std::vector<cplx> prof(n);
  for (int r = 0; r < W.x_count; ++r) {
    int s = refined ? r : 2 * r;
    std::fill(prof.begin(), prof.end(), cplx(0, 0));
    // y = delta h over one period, delta matching the parity of s; the two
    // half-weight endpoints delta = +-n/2 land in the same bin
    int par = ((s % 2) + 2) % 2;
    for (int d = -n / 2; d <= n / 2; ++d) {
      if (((d % 2) + 2) % 2 != par) continue;
      int ja = (((s + d) / 2) % n + n) % n;
      int jb = (((s - d) / 2) % n + n) % n;
      double w = (d == -n / 2 || d == n / 2) ? 0.5 : 1.0;
      double sgn = (d % 2 == 0) ? 1.0 : -1.0;  // e^{-i pi delta}
      prof[((d % n) + n) % n] += w * sgn * g_fn.v[ja] * std::conj(f_fn.v[jb]);
    }
    detail::dft_core(prof.data(), n, 1, -1);
    for (int m = 0; m < n; ++m) W.vals(r, m) = c0 * prof[m];
  }
  return W;
}

cplx ps_inner(const Eigen::MatrixXcd& A, const Eigen::MatrixXcd& B, const Grid& g) {
  require(A.rows() == B.rows() && A.cols() == B.cols(), "ps_inner: shape mismatch");
  cplx acc = (B.conjugate().cwiseProduct(A)).sum();
  return acc * (0.5 * g.h() * g.freq_step());
}

TfDistribution stft(const GridFunction& u, const GridFunction& phi) {
  require(u.grid == phi.grid && u.grid.dim == 1, "stft: matching d = 1 grids");
  const Grid& g = u.grid;
  const int n = g.n;
  TfDistribution V;
  V.grid = g;
  V.x_count = n;
  V.vals.resize(n, n);
  const double scale = std::pow(2.0 * pi, -0.5) * g.h();
  std::vector<cplx> w(n);
  for (int j = 0; j < n; ++j) {
    int sj = j - n / 2;  // shift amount moving the window center to x_j
    for (int a = 0; a < n; ++a)
      w[a] = u.v[a] * std::conj(phi.v[((a - sj) % n + n) % n]);
    detail::dft_core(w.data(), n, 1, -1);
    for (int m = 0; m < n; ++m) {
      int k = m - n / 2;
      double sgn = (k % 2 == 0) ? 1.0 : -1.0;
      V.vals(j, m) = scale * sgn * w[((k % n) + n) % n];
    }
  }
  return V;
}

GridFunction stft_inverse(const TfDistribution& V, const GridFunction& phi) {
  const Grid& g = V.grid;
  require(phi.grid == g, "stft_inverse: grids differ");
  require(V.x_count == g.n, "stft_inverse: base-grid transforms only");
  require(std::abs(norm2(phi) - 1.0) <= 1e-10, "stft_inverse: window must be unit norm");
  const int n = g.n;
  GridFunction u(g);
  std::vector<cplx> row(n);
  const double scale = std::pow(2.0 * pi, -0.5) * g.freq_step();
  for (int j = 0; j < n; ++j) {
    for (int m = 0; m < n; ++m) {
      int k = m - n / 2;
      double sgn = (k % 2 == 0) ? 1.0 : -1.0;
      row[((k % n) + n) % n] = sgn * V.vals(j, m);
    }
    detail::dft_core(row.data(), n, 1, +1);
    int sj = j - n / 2;
    for (int a = 0; a < n; ++a)
      u.v[a] += g.h() * scale * row[a] * phi.v[((a - sj) % n + n) % n];
  }
  return u;
}

GridFunction gaussian_window(const Grid& g) {
  GridFunction phi = sample_function(
      g, [](double x) { return cplx(std::exp(-0.5 * x * x), 0.0); });
  phi.v /= norm2(phi);
  return phi;
}

namespace {

struct Axis {
  int n;        // samples
  double step;  // grid step
  double origin() const { return -0.5 * n * step; }
  double dual_step() const { return 2.0 * pi / (n * step); }
};

// Streaming mixed-norm accumulator over a rectangular torus. For each dual
// node Xi the windowed transform V(., Xi) is one FFT; the inner p-norm over
// position is folded into the outer q-accumulation immediately.
double mixed_norm_2d(const Eigen::MatrixXcd& u, Axis a1, Axis a2, MixedNorm pq,
                     const std::function<double(double, double, double, double)>& omega) {
  const int n1 = a1.n, n2 = a2.n;
  // product Gaussian window, unit L2 norm, stored in correlation layout:
  // index t holds the value at displacement t*step wrapped into [-P/2, P/2)
  auto wrap = [](int t, int nn, double step) {
    return (t < nn / 2 ? t : t - nn) * step;
  };
  std::vector<cplx> wspec(std::int64_t(n1) * n2);
  double nrm = 0.0;
  for (int i = 0; i < n1; ++i)
    for (int j = 0; j < n2; ++j) {
      double x1 = wrap(i, n1, a1.step);
      double x2 = wrap(j, n2, a2.step);
      double w = std::exp(-0.5 * (x1 * x1 + x2 * x2));
      wspec[std::int64_t(i) * n2 + j] = w;
      nrm += w * w * a1.step * a2.step;
    }
  for (auto& w : wspec) w /= std::sqrt(nrm);
  detail::dft_core2(wspec.data(), n1, n2, -1);

  const double dx = a1.step * a2.step;
  const double dxi = a1.dual_step() * a2.dual_step();
  const double scale = dx / (2.0 * pi);  // (2pi)^{-d/2} with d = 2 and quadrature
  const double invn = 1.0 / (double(n1) * n2);

  double acc = 0.0;  // q-accumulator
  std::vector<cplx> buf(std::int64_t(n1) * n2);
  for (int p = 0; p < n1; ++p) {
    for (int q = 0; q < n2; ++q) {
      double xi1 = (p - n1 / 2) * a1.dual_step();
      double xi2 = (q - n2 / 2) * a2.dual_step();
      for (int i = 0; i < n1; ++i)
        for (int j = 0; j < n2; ++j) {
          double x1 = a1.origin() + i * a1.step;
          double x2 = a2.origin() + j * a2.step;
          buf[std::int64_t(i) * n2 + j] =
              u(i, j) * std::exp(-iunit * (x1 * xi1 + x2 * xi2));
        }
      detail::dft_core2(buf.data(), n1, n2, -1);
      for (std::int64_t t = 0; t < std::int64_t(n1) * n2; ++t)
        buf[t] *= std::conj(wspec[t]);
      detail::dft_core2(buf.data(), n1, n2, +1);
      // buf now holds sum_Z u(Z) e^{-i<Z,Xi>} conj(win(Z - x)) at each x
      double inner2 = 0.0, innersup = 0.0;
      for (int i = 0; i < n1; ++i)
        for (int j = 0; j < n2; ++j) {
          double x1 = a1.origin() + i * a1.step;
          double x2 = a2.origin() + j * a2.step;
          double v = std::abs(buf[std::int64_t(i) * n2 + j]) * invn * scale *
                     omega(x1, x2, xi1, xi2);
          inner2 += v * v * dx;
          innersup = std::max(innersup, v);
        }
      switch (pq) {
        case MixedNorm::P2Q2: acc += inner2 * dxi; break;
        case MixedNorm::PInfQ1: acc += innersup * dxi; break;
        case MixedNorm::PInfQInf: acc = std::max(acc, innersup); break;
      }
    }
  }
  return pq == MixedNorm::P2Q2 ? std::sqrt(acc) : acc;
}

}  // namespace

double mod_norm(const GridFunction& u, MixedNorm pq,
                const std::function<double(double, double)>& omega) {
  require(u.grid.dim == 1, "mod_norm: d = 1; use mod_norm2 for d = 2");
  GridFunction phi = gaussian_window(u.grid);
  TfDistribution V = stft(u, phi);
  const Grid& g = u.grid;
  double acc = 0.0;
  for (int m = 0; m < g.n; ++m) {
    double inner2 = 0.0, innersup = 0.0;
    for (int j = 0; j < g.n; ++j) {
      double v = std::abs(V.vals(j, m)) * omega(g.x(j), g.xi(m));
      inner2 += v * v * g.h();
      innersup = std::max(innersup, v);
    }
    switch (pq) {
      case MixedNorm::P2Q2: acc += inner2 * g.freq_step(); break;
      case MixedNorm::PInfQ1: acc += innersup * g.freq_step(); break;
      case MixedNorm::PInfQInf: acc = std::max(acc, innersup); break;
    }
  }
  return pq == MixedNorm::P2Q2 ? std::sqrt(acc) : acc;
}

double mod_norm2(const GridFunction& u, MixedNorm pq,
                 const std::function<double(double, double, double, double)>& omega) {
  require(u.grid.dim == 2, "mod_norm2: d = 2 grids");
  const int n = u.grid.n;
  Eigen::MatrixXcd m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = u.at(i, j);
  Axis ax{n, u.grid.h()};
  return mixed_norm_2d(m, ax, ax, pq, omega);
}

double mod_norm_symbol(const WeylSymbol& a, MixedNorm pq,
                       const std::function<double(double, double, double, double)>& omega) {
  Axis ax1{2 * a.grid.n, 0.5 * a.grid.h()};
  Axis ax2{a.grid.n, a.grid.freq_step()};
  return mixed_norm_2d(a.vals, ax1, ax2, pq, omega);
}

}  // namespace gsp
