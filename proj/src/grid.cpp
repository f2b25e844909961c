#include "gsp/grid.hpp"

#include <fftw3.h>

#include <cstdlib>
#include <cstring>
#include <iostream>
#include <map>
#include <mutex>

namespace gsp {

int max_threads() {
  static const int cached = [] {
    int hw = int(std::thread::hardware_concurrency());
    if (hw <= 0) hw = 1;
    if (const char* env = std::getenv("GSP_THREADS")) {
      int v = std::atoi(env);
      if (v > 0) hw = v;
    }
    return hw;
  }();
  return cached;
}

void parallel_for(std::int64_t count, const std::function<void(std::int64_t)>& fn) {
  if (count <= 0) return;
  int nt = max_threads();
  if (nt <= 1 || count == 1) {
    for (std::int64_t i = 0; i < count; ++i) fn(i);
    return;
  }
  if (std::int64_t(nt) > count) nt = int(count);
  std::vector<std::thread> pool;
  pool.reserve(nt);
  for (int t = 0; t < nt; ++t) {
    pool.emplace_back([&, t] {
      for (std::int64_t i = t; i < count; i += nt) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

namespace detail {

namespace {

struct PlanKey {
  int n, dim, sign;
  bool operator<(const PlanKey& o) const {
    return std::tie(n, dim, sign) < std::tie(o.n, o.dim, o.sign);
  }
};

std::mutex plan_mutex;
std::map<PlanKey, fftw_plan> plan_cache;

fftw_plan get_plan(int n, int dim, int sign) {
  std::lock_guard<std::mutex> lock(plan_mutex);
  PlanKey key{n, dim, sign};
  auto it = plan_cache.find(key);
  if (it != plan_cache.end()) return it->second;
  std::vector<cplx> tmp(dim == 1 ? n : std::int64_t(n) * n);
  fftw_complex* buf = reinterpret_cast<fftw_complex*>(tmp.data());
  fftw_plan p;
  if (dim == 1) {
    p = fftw_plan_dft_1d(n, buf, buf, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
  } else {
    p = fftw_plan_dft_2d(n, n, buf, buf, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
  }
  require(p != nullptr, "fftw: failed to create plan");
  plan_cache.emplace(key, p);
  return p;
}

}  // namespace

void dft_core(cplx* data, int n, int dim, int sign) {
  fftw_plan p = get_plan(n, dim, sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD);
  fftw_complex* buf = reinterpret_cast<fftw_complex*>(data);
  fftw_execute_dft(p, buf, buf);
}

}  // namespace detail

GridFunction sample_function(const Grid& g, const std::function<cplx(double)>& f) {
  require(g.dim == 1, "sample_function: d = 1 grids only");
  GridFunction out(g);
  for (int j = 0; j < g.n; ++j) out.v[j] = f(g.x(j));
  return out;
}

GridFunction sample_function2(const Grid& g,
                              const std::function<cplx(double, double)>& f) {
  require(g.dim == 2, "sample_function2: d = 2 grids only");
  GridFunction out(g);
  for (int a = 0; a < g.n; ++a)
    for (int b = 0; b < g.n; ++b) out.at(a, b) = f(g.x(a), g.x(b));
  return out;
}

namespace {

// Centered-index reshuffle plus the (-1)^k phase that accounts for the grid
// origin at -L on both sides of the pairing <x_j, xi_k>.
void center_forward(const Grid& g, Eigen::VectorXcd& v, double scale) {
  const int n = g.n;
  if (g.dim == 1) {
    Eigen::VectorXcd out(n);
    for (int m = 0; m < n; ++m) {
      int k = m - n / 2;
      int bin = ((k % n) + n) % n;
      double sgn = (k % 2 == 0) ? 1.0 : -1.0;
      out[m] = scale * sgn * v[bin];
    }
    v.swap(out);
  } else {
    Eigen::VectorXcd out(std::int64_t(n) * n);
    for (int ma = 0; ma < n; ++ma) {
      int ka = ma - n / 2;
      int bina = ((ka % n) + n) % n;
      double sa = (ka % 2 == 0) ? 1.0 : -1.0;
      for (int mb = 0; mb < n; ++mb) {
        int kb = mb - n / 2;
        int binb = ((kb % n) + n) % n;
        double sb = (kb % 2 == 0) ? 1.0 : -1.0;
        out[std::int64_t(ma) * n + mb] =
            scale * sa * sb * v[std::int64_t(bina) * n + binb];
      }
    }
    v.swap(out);
  }
}

void center_backward(const Grid& g, const Eigen::VectorXcd& F, Eigen::VectorXcd& v) {
  const int n = g.n;
  if (g.dim == 1) {
    v.setZero(n);
    for (int m = 0; m < n; ++m) {
      int k = m - n / 2;
      int bin = ((k % n) + n) % n;
      double sgn = (k % 2 == 0) ? 1.0 : -1.0;
      v[bin] = sgn * F[m];
    }
  } else {
    v.setZero(std::int64_t(n) * n);
    for (int ma = 0; ma < n; ++ma) {
      int ka = ma - n / 2;
      int bina = ((ka % n) + n) % n;
      double sa = (ka % 2 == 0) ? 1.0 : -1.0;
      for (int mb = 0; mb < n; ++mb) {
        int kb = mb - n / 2;
        int binb = ((kb % n) + n) % n;
        double sb = (kb % 2 == 0) ? 1.0 : -1.0;
        v[std::int64_t(bina) * n + binb] = sa * sb * F[std::int64_t(ma) * n + mb];
      }
    }
  }
}

}  // namespace

GridFunction fourier(const GridFunction& f) {
  const Grid& g = f.grid;
  require(f.v.size() == g.size(), "fourier: length mismatch");
  GridFunction out(g, f.v);
  detail::dft_core(out.v.data(), g.n, g.dim, -1);
  double scale = std::pow(2.0 * pi, -0.5 * g.dim) * g.cell();
  center_forward(g, out.v, scale);
  return out;
}

GridFunction inverse_fourier(const GridFunction& F) {
  const Grid& g = F.grid;
  require(F.v.size() == g.size(), "inverse_fourier: length mismatch");
  GridFunction out(g);
  center_backward(g, F.v, out.v);
  detail::dft_core(out.v.data(), g.n, g.dim, +1);
  out.v *= std::pow(2.0 * pi, -0.5 * g.dim) * g.freq_cell();
  return out;
}

GridFunction convolve(const GridFunction& f, const GridFunction& g) {
  require(f.grid == g.grid, "convolve: grids differ");
  GridFunction F = fourier(f);
  GridFunction G = fourier(g);
  F.v = F.v.cwiseProduct(G.v) * std::pow(2.0 * pi, 0.5 * f.grid.dim);
  return inverse_fourier(F);
}

int aligned_offset(const Grid& g, double x0) {
  double q = x0 / g.h();
  double r = std::round(q);
  require(std::abs(q - r) <= 1e-9 * (1.0 + std::abs(q)),
          "shift is not a multiple of the grid step");
  return int(std::llround(r));
}

int aligned_freq_index(const Grid& g, double xi0) {
  double q = xi0 / g.freq_step();
  double r = std::round(q);
  require(std::abs(q - r) <= 1e-9 * (1.0 + std::abs(q)),
          "frequency is not a multiple of the frequency step");
  return int(std::llround(r));
}

GridFunction translate(const GridFunction& f, double x0) {
  require(f.grid.dim == 1, "translate: d = 1; use translate2 for d = 2");
  int s = aligned_offset(f.grid, x0);
  const int n = f.grid.n;
  GridFunction out(f.grid);
  for (int j = 0; j < n; ++j) out.v[j] = f.v[((j - s) % n + n) % n];
  return out;
}

GridFunction translate2(const GridFunction& f, double x0, double x1) {
  require(f.grid.dim == 2, "translate2: d = 2 grids only");
  int s0 = aligned_offset(f.grid, x0);
  int s1 = aligned_offset(f.grid, x1);
  const int n = f.grid.n;
  GridFunction out(f.grid);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      out.at(a, b) = f.at(((a - s0) % n + n) % n, ((b - s1) % n + n) % n);
  return out;
}

GridFunction modulate(const GridFunction& f, double xi0) {
  require(f.grid.dim == 1, "modulate: d = 1; use modulate2 for d = 2");
  aligned_freq_index(f.grid, xi0);
  GridFunction out(f.grid);
  for (int j = 0; j < f.grid.n; ++j)
    out.v[j] = f.v[j] * std::exp(iunit * (f.grid.x(j) * xi0));
  return out;
}

GridFunction modulate2(const GridFunction& f, double xi0, double xi1) {
  require(f.grid.dim == 2, "modulate2: d = 2 grids only");
  aligned_freq_index(f.grid, xi0);
  aligned_freq_index(f.grid, xi1);
  GridFunction out(f.grid);
  for (int a = 0; a < f.grid.n; ++a)
    for (int b = 0; b < f.grid.n; ++b)
      out.at(a, b) =
          f.at(a, b) * std::exp(iunit * (f.grid.x(a) * xi0 + f.grid.x(b) * xi1));
  return out;
}

cplx inner(const GridFunction& f, const GridFunction& g) {
  require(f.grid == g.grid, "inner: grids differ");
  // h^d sum f conj(g); Eigen's dot conjugates its first argument.
  return f.grid.cell() * g.v.dot(f.v);
}

double norm2(const GridFunction& f) { return std::sqrt(std::abs(inner(f, f))); }

double boundary_mass(const GridFunction& f) {
  const Grid& g = f.grid;
  double edge = g.L - 2.5 * g.h();
  double mx = 0.0, bd = 0.0;
  if (g.dim == 1) {
    for (int j = 0; j < g.n; ++j) {
      double a = std::abs(f.v[j]);
      mx = std::max(mx, a);
      if (std::abs(g.x(j)) >= edge) bd = std::max(bd, a);
    }
  } else {
    for (int a0 = 0; a0 < g.n; ++a0)
      for (int a1 = 0; a1 < g.n; ++a1) {
        double a = std::abs(f.at(a0, a1));
        mx = std::max(mx, a);
        if (std::abs(g.x(a0)) >= edge || std::abs(g.x(a1)) >= edge)
          bd = std::max(bd, a);
      }
  }
  return mx > 0 ? bd / mx : 0.0;
}

void write_csv(const GridFunction& f, std::ostream& os) {
  char buf[160];
  if (f.grid.dim == 1) {
    os << "x,re,im\n";
    for (int j = 0; j < f.grid.n; ++j) {
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", f.grid.x(j),
                    f.v[j].real(), f.v[j].imag());
      os << buf;
    }
  } else {
    os << "x0,x1,re,im\n";
    for (int a = 0; a < f.grid.n; ++a)
      for (int b = 0; b < f.grid.n; ++b) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", f.grid.x(a),
                      f.grid.x(b), f.at(a, b).real(), f.at(a, b).imag());
        os << buf;
      }
  }
}

void write_binary(const GridFunction& f, std::ostream& os) {
  std::int64_t dim = f.grid.dim, n = f.grid.n;
  double L = f.grid.L;
  os.write(reinterpret_cast<const char*>(&dim), 8);
  os.write(reinterpret_cast<const char*>(&n), 8);
  os.write(reinterpret_cast<const char*>(&L), 8);
  os.write(reinterpret_cast<const char*>(f.v.data()), 16 * f.v.size());
}

GridFunction read_binary(std::istream& is) {
  std::int64_t dim = 0, n = 0;
  double L = 0;
  is.read(reinterpret_cast<char*>(&dim), 8);
  is.read(reinterpret_cast<char*>(&n), 8);
  is.read(reinterpret_cast<char*>(&L), 8);
  require(bool(is), "binary read: truncated header");
  Grid g(int(n), L, int(dim));
  GridFunction f(g);
  is.read(reinterpret_cast<char*>(f.v.data()), 16 * f.v.size());
  require(bool(is), "binary read: truncated payload");
  return f;
}

}  // namespace gsp
