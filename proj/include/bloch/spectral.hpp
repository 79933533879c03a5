#pragma once

// Numeric spectral layer.  Everything here works on the torus parametrization
// z_j = exp(2*pi*i*k_j); on the torus D(z, lambda) is real, so the critical
// point equations D = dD/dz_1 = ... = dD/dz_d = 0 reduce to d+1 real
// equations in (k, lambda).  Floating point enters only here; all seeds and
// cross-checks come from the exact layer.

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <numbers>
#include <thread>
#include <vector>

#include "bloch/floquet.hpp"

namespace bloch {

struct SpectralTolerances {
  double hermitianDeviation = 1e-12;  // relative, evaluated H(z) vs adjoint
  double eigenOffdiagonal = 1e-13;    // eigensolver convergence target
  double residual = 1e-10;            // CPE residual acceptance
  double hessianSingular = 1e-6;      // relative eigenvalue threshold
  double dedupRadius = 1e-6;          // torus distance for deduplication
  double cornerMatch = 1e-8;          // per-coordinate distance to a corner
  double bandMatch = 1e-8;            // |lambda - eigenvalue| for attribution
  double fdStep = 1e-4;               // finite-difference Hessian step
  double fdAgreement = 1e-4;          // relative agreement with the FD Hessian
  double smoothness = 1e-8;           // relative |dD/dlambda| for smoothness
  double nonSmoothResidual = 1e-5;    // acceptance near band touchings; such
                                      // candidates carry only square-root
                                      // accuracy (the system degenerates
                                      // quadratically there)
  int newtonMaxIterations = 50;
};

inline int defaultGridResolution(int d) {
  if (d <= 2) return 64;
  if (d == 3) return 16;
  return 8;
}

namespace detail {

inline void parallelFor(int total, int threads, const std::function<void(int, int)>& chunk) {
  if (threads <= 1 || total < 2) {
    chunk(0, total);
    return;
  }
  threads = std::min(threads, total);
  std::vector<std::thread> pool;
  int per = (total + threads - 1) / threads;
  for (int t = 0; t < threads; ++t) {
    int lo = t * per, hi = std::min(total, lo + per);
    if (lo >= hi) break;
    pool.emplace_back(chunk, lo, hi);
  }
  for (auto& th : pool) th.join();
}

inline double torusCoordDist(double a, double b) {
  double d = std::fabs(a - b);
  d -= std::floor(d);
  return std::min(d, 1.0 - d);
}

inline double torusDist(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, torusCoordDist(a[i], b[i]));
  return m;
}

inline double wrap01(double x) {
  double y = x - std::floor(x);
  return (y >= 1.0) ? 0.0 : y;
}

}  // namespace detail

inline std::vector<std::complex<double>> torusPoint(const std::vector<double>& k) {
  std::vector<std::complex<double>> z(k.size());
  for (std::size_t i = 0; i < k.size(); ++i)
    z[i] = std::polar(1.0, 2.0 * std::numbers::pi * k[i]);
  return z;
}

// H evaluated at z = e^{2 pi i k}, validated against its adjoint
inline Eigen::MatrixXcd floquetAt(const FloquetMatrix& H, const std::vector<double>& k,
                                  const SpectralTolerances& tol = {}) {
  if (static_cast<int>(k.size()) != H.dim)
    throw std::invalid_argument("floquetAt: quasi-momentum dimension mismatch");
  const int n = H.size();
  auto z = torusPoint(k);
  Eigen::MatrixXcd A(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) A(i, j) = H.entries[i][j].eval(z, 0.0);
  double scale = std::max(1.0, A.cwiseAbs().maxCoeff());
  double dev = (A - A.adjoint()).cwiseAbs().maxCoeff();
  if (dev > tol.hermitianDeviation * scale)
    throw std::runtime_error("floquetAt: evaluated matrix is not Hermitian to tolerance");
  return A;
}

// sorted (ascending) real eigenvalues of the Hermitian Floquet matrix
inline std::vector<double> eigenvaluesAt(const FloquetMatrix& H, const std::vector<double>& k,
                                         const SpectralTolerances& tol = {}) {
  Eigen::MatrixXcd A = floquetAt(H, k, tol);
  Eigen::MatrixXcd S = 0.5 * (A + A.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(S, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("eigenvaluesAt: eigensolver failed to converge");
  std::vector<double> out(solver.eigenvalues().data(),
                          solver.eigenvalues().data() + H.size());
  return out;
}

struct BandGridSample {
  std::vector<double> k;
  std::vector<double> lambda;  // all bands, ascending
};

inline std::vector<BandGridSample> bandGrid(const FloquetMatrix& H, int n,
                                            const SpectralTolerances& tol = {},
                                            int threads = 1) {
  if (n < 1) throw std::invalid_argument("bandGrid: resolution must be positive");
  const int d = H.dim;
  long long total = 1;
  for (int i = 0; i < d; ++i) total *= n;
  std::vector<BandGridSample> out(total);
  detail::parallelFor(static_cast<int>(total), threads, [&](int lo, int hi) {
    for (int idx = lo; idx < hi; ++idx) {
      std::vector<double> k(d);
      int rest = idx;
      for (int i = d - 1; i >= 0; --i) {
        k[i] = static_cast<double>(rest % n) / n;
        rest /= n;
      }
      out[idx].lambda = eigenvaluesAt(H, k, tol);
      out[idx].k = std::move(k);
    }
  });
  return out;
}

// ---------------------------------------------------------------------------
// dispersion-side machinery

// Precomputed derivatives of D for CPE evaluation on the torus.
class DispersionSystem {
public:
  explicit DispersionSystem(LaurentPoly D) : D_(std::move(D)), d_(D_.dimension()) {
    Dl_ = D_.derivativeLambda();
    Dll_ = Dl_.derivativeLambda();
    Dz_.reserve(d_);
    Dzl_.reserve(d_);
    for (int i = 0; i < d_; ++i) {
      Dz_.push_back(D_.derivativeZ(i));
      Dzl_.push_back(Dz_.back().derivativeLambda());
    }
    Dzz_.assign(d_, std::vector<LaurentPoly>());
    for (int i = 0; i < d_; ++i) {
      Dzz_[i].reserve(d_);
      for (int j = 0; j < d_; ++j) Dzz_[i].push_back(Dz_[i].derivativeZ(j));
    }
  }

  int dimension() const { return d_; }
  const LaurentPoly& dispersion() const { return D_; }

  // max(|D|, max_i |dD/dz_i|) at z = e^{2 pi i k}, each divided by its
  // coefficient bound so the residual is a backward error independent of the
  // determinant's scale
  double residual(const std::vector<double>& k, double lambda) const {
    auto z = torusPoint(k);
    double r = std::abs(D_.eval(z, lambda)) / std::max(1.0, absBound(D_, lambda));
    for (int i = 0; i < d_; ++i)
      r = std::max(r, std::abs(Dz_[i].eval(z, lambda)) /
                          std::max(1.0, absBound(Dz_[i], lambda)));
    return r;
  }

  double dLambda(const std::vector<double>& k, double lambda) const {
    return Dl_.eval(torusPoint(k), lambda).real();
  }

  // scale-aware smoothness test on dD/dlambda
  bool isSmoothAt(const std::vector<double>& k, double lambda,
                  const SpectralTolerances& tol = {}) const {
    double scale = 1.0 + absBound(Dl_, lambda);
    return std::abs(dLambda(k, lambda)) > tol.smoothness * scale;
  }

  // the d+1 real equations (F, dF/dk_1, ..., dF/dk_d) with F(k,l) = D(e^{2piik}, l)
  Eigen::VectorXd equations(const std::vector<double>& k, double lambda) const {
    auto z = torusPoint(k);
    Eigen::VectorXd g(d_ + 1);
    g(0) = D_.eval(z, lambda).real();
    for (int i = 0; i < d_; ++i)
      g(i + 1) = (twoPiI() * z[i] * Dz_[i].eval(z, lambda)).real();
    return g;
  }

  Eigen::MatrixXd jacobian(const std::vector<double>& k, double lambda) const {
    auto z = torusPoint(k);
    Eigen::MatrixXd J(d_ + 1, d_ + 1);
    // row 0: derivatives of F
    for (int j = 0; j < d_; ++j)
      J(0, j) = (twoPiI() * z[j] * Dz_[j].eval(z, lambda)).real();
    J(0, d_) = Dl_.eval(z, lambda).real();
    for (int i = 0; i < d_; ++i) {
      for (int j = 0; j < d_; ++j) {
        std::complex<double> v =
            twoPiI() * twoPiI() * z[i] * z[j] * Dzz_[i][j].eval(z, lambda);
        if (i == j) v += twoPiI() * twoPiI() * z[i] * Dz_[i].eval(z, lambda);
        J(i + 1, j) = v.real();
      }
      J(i + 1, d_) = (twoPiI() * z[i] * Dzl_[i].eval(z, lambda)).real();
    }
    return J;
  }

  // band Hessian in quasi-momentum coordinates at a smooth critical point:
  // lambda_{k_i k_j} = (2 pi)^2 Re(z_i z_j D_{z_i z_j}) / Re(D_lambda)
  Eigen::MatrixXd bandHessian(const std::vector<double>& k, double lambda) const {
    auto z = torusPoint(k);
    double dl = Dl_.eval(z, lambda).real();
    Eigen::MatrixXd Hk(d_, d_);
    const double fourPiSq = 4.0 * std::numbers::pi * std::numbers::pi;
    for (int i = 0; i < d_; ++i)
      for (int j = 0; j < d_; ++j)
        Hk(i, j) = fourPiSq * (z[i] * z[j] * Dzz_[i][j].eval(z, lambda)).real() / dl;
    return 0.5 * (Hk + Hk.transpose());
  }

private:
  static std::complex<double> twoPiI() { return {0.0, 2.0 * std::numbers::pi}; }
  static double absBound(const LaurentPoly& p, double lambda) {
    double s = 0, al = std::abs(lambda);
    for (const auto& [m, c] : p.terms()) s += std::abs(c.toDouble()) * std::pow(al, m.lam);
    return s;
  }

  LaurentPoly D_;
  int d_;
  LaurentPoly Dl_, Dll_;
  std::vector<LaurentPoly> Dz_, Dzl_;
  std::vector<std::vector<LaurentPoly>> Dzz_;
};

inline double cpeResidual(const LaurentPoly& D, const std::vector<double>& k, double lambda) {
  return DispersionSystem(D).residual(k, lambda);
}

struct NewtonResult {
  bool converged = false;
  std::vector<double> k;
  double lambda = 0;
  double residual = 0;
  double sigmaMin = 0, sigmaMax = 0;  // singular values of the CPE Jacobian
  int iterations = 0;
};

inline NewtonResult newtonRefine(const DispersionSystem& sys, std::vector<double> k,
                                 double lambda, const SpectralTolerances& tol = {}) {
  NewtonResult res;
  const int d = sys.dimension();
  if (static_cast<int>(k.size()) != d)
    throw std::invalid_argument("newtonRefine: dimension mismatch");
  double best = sys.residual(k, lambda);
  for (int it = 0; it < tol.newtonMaxIterations; ++it) {
    res.iterations = it;
    if (best < tol.residual) break;
    Eigen::VectorXd g = sys.equations(k, lambda);
    Eigen::MatrixXd J = sys.jacobian(k, lambda);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(J, Eigen::ComputeThinU | Eigen::ComputeThinV);
    svd.setThreshold(1e-12);
    Eigen::VectorXd step = svd.solve(-g);
    if (!step.allFinite()) break;
    // damped acceptance to keep grid seeds from overshooting
    double scale = 1.0;
    bool moved = false;
    for (int half = 0; half < 8; ++half, scale *= 0.5) {
      std::vector<double> kn = k;
      for (int i = 0; i < d; ++i) kn[i] = detail::wrap01(k[i] + scale * step(i));
      double ln = lambda + scale * step(d);
      double r = sys.residual(kn, ln);
      if (r < best || half == 7) {
        if (r < best) {
          k = std::move(kn);
          lambda = ln;
          best = r;
          moved = true;
        }
        break;
      }
    }
    if (!moved) break;
  }
  res.k = std::move(k);
  res.lambda = lambda;
  res.residual = best;
  res.converged = best < tol.residual;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(sys.jacobian(res.k, res.lambda));
  res.sigmaMin = svd.singularValues().minCoeff();
  res.sigmaMax = svd.singularValues().maxCoeff();
  return res;
}

inline NewtonResult newtonRefine(const LaurentPoly& D, const std::vector<double>& k,
                                 double lambda, const SpectralTolerances& tol = {}) {
  return newtonRefine(DispersionSystem(D), k, lambda, tol);
}

struct HessianInfo {
  bool smooth = false;               // dD/dlambda bounded away from zero
  Eigen::MatrixXd kHessian;          // in quasi-momentum coordinates
  std::vector<double> eigenvalues;   // ascending
  bool degenerate = true;
  int morseIndex = -1;               // number of negative eigenvalues when nondegenerate
};

inline HessianInfo hessianAt(const DispersionSystem& sys, const std::vector<double>& k,
                             double lambda, const SpectralTolerances& tol = {}) {
  HessianInfo info;
  if (!sys.isSmoothAt(k, lambda, tol)) return info;  // non-smooth candidate
  info.smooth = true;
  info.kHessian = sys.bandHessian(k, lambda);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(info.kHessian, Eigen::EigenvaluesOnly);
  info.eigenvalues.assign(es.eigenvalues().data(),
                          es.eigenvalues().data() + sys.dimension());
  double mx = 0, mn = std::numeric_limits<double>::infinity();
  for (double e : info.eigenvalues) {
    mx = std::max(mx, std::abs(e));
    mn = std::min(mn, std::abs(e));
  }
  info.degenerate = (mx == 0.0) || (mn < tol.hessianSingular * mx);
  if (!info.degenerate) {
    info.morseIndex = 0;
    for (double e : info.eigenvalues)
      if (e < 0) ++info.morseIndex;
  }
  return info;
}

inline HessianInfo hessianAt(const LaurentPoly& D, const std::vector<double>& k,
                             double lambda, const SpectralTolerances& tol = {}) {
  return hessianAt(DispersionSystem(D), k, lambda, tol);
}

// central finite differences of the band function; step in quasi-momentum
inline Eigen::MatrixXd fdBandHessian(const FloquetMatrix& H, int band,
                                     const std::vector<double>& k, double step,
                                     const SpectralTolerances& tol = {}) {
  const int d = H.dim;
  auto f = [&](const std::vector<double>& kk) { return eigenvaluesAt(H, kk, tol)[band]; };
  double f0 = f(k);
  Eigen::MatrixXd out(d, d);
  for (int i = 0; i < d; ++i) {
    std::vector<double> kp = k, km = k;
    kp[i] += step;
    km[i] -= step;
    out(i, i) = (f(kp) - 2 * f0 + f(km)) / (step * step);
    for (int j = i + 1; j < d; ++j) {
      std::vector<double> kpp = k, kpm = k, kmp = k, kmm = k;
      kpp[i] += step; kpp[j] += step;
      kpm[i] += step; kpm[j] -= step;
      kmp[i] -= step; kmp[j] += step;
      kmm[i] -= step; kmm[j] -= step;
      out(i, j) = out(j, i) = (f(kpp) - f(kpm) - f(kmp) + f(kmm)) / (4 * step * step);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// exact corner spectra

struct CornerPoint {
  std::vector<int> signs;   // z_i = +-1
  std::vector<double> k;    // 0 or 1/2 per coordinate
  RootInterval lambda;
  double lambdaApprox = 0;  // Newton-polished double value
  int multiplicity = 1;
  int band = 0;             // 1-based position among the corner eigenvalues
};

namespace detail {

inline double polishRoot(const UniPoly& p, const RootInterval& r) {
  if (r.isExact()) return r.lo.toDouble();
  UniPoly sf = squarefreePart(p);
  UniPoly dsf = sf.derivative();
  double x = r.approx();
  double lo = r.lo.toDouble(), hi = r.hi.toDouble();
  for (int it = 0; it < 40; ++it) {
    double fx = sf.evalDouble(x);
    double dx = dsf.evalDouble(x);
    if (dx == 0) break;
    double nx = x - fx / dx;
    if (!(nx > lo - 1e-9 && nx < hi + 1e-9)) break;
    if (std::abs(nx - x) < 1e-16 * std::max(1.0, std::abs(x))) { x = nx; break; }
    x = nx;
  }
  return x;
}

}  // namespace detail

// All 2^d corners with the full (multiplicity-counted) spectrum at each; the
// result lists 2^d * |W| corner pairs when counted with multiplicity.
inline std::vector<CornerPoint> cornerSpectrum(const LaurentPoly& D) {
  const int d = D.dimension();
  std::vector<CornerPoint> out;
  const int n = std::abs(D.lambdaDegree());
  for (unsigned mask = 0; mask < (1u << d); ++mask) {
    std::vector<int> signs(d);
    std::vector<double> k(d);
    for (int i = 0; i < d; ++i) {
      signs[i] = (mask & (1u << i)) ? -1 : 1;
      k[i] = signs[i] == 1 ? 0.0 : 0.5;
    }
    UniPoly corner = D.atCorner(signs);
    auto roots = realRoots(corner);
    int total = 0, band = 1;
    for (const auto& r : roots) total += r.multiplicity;
    if (total != n)
      throw std::runtime_error("cornerSpectrum: corner polynomial is not real-rooted");
    for (const auto& r : roots) {
      CornerPoint cp;
      cp.signs = signs;
      cp.k = k;
      cp.lambda = r;
      cp.lambdaApprox = detail::polishRoot(corner, r);
      cp.multiplicity = r.multiplicity;
      cp.band = band;
      band += r.multiplicity;
      out.push_back(std::move(cp));
    }
  }
  return out;
}

inline std::vector<CornerPoint> cornerSpectrum(const PeriodicGraph& g) {
  return cornerSpectrum(dispersionPolynomial(g));
}

// ---------------------------------------------------------------------------
// the census

struct CriticalPoint {
  std::vector<double> k;
  double lambda = 0;
  int band = 0;             // 1-based
  double residual = 0;
  double sigmaMin = 0, sigmaMax = 0;
  bool isCorner = false;
  bool smooth = false;
  bool degenerate = false;
  int morseIndex = -1;
  std::vector<double> hessianEigenvalues;
};

struct BandReport {
  int band = 0;             // 1-based
  int count = 0;
  int degenerateCount = 0;
  int nonSmoothCount = 0;
  bool allCorners = true;
  bool perfectMorse = false;
  bool nonIsolatedSuspected = false;
  std::vector<int> morseIndexCounts;  // histogram over 0..d
};

struct MorseReport {
  bool flatBandDetected = false;
  std::vector<RootInterval> flatBandEnergies;
  std::vector<CriticalPoint> points;
  std::vector<BandReport> bands;
  bool allBandsPerfectMorse = false;
  bool allPointsAtCorners = false;
};

namespace detail {

inline bool nearCorner(const std::vector<double>& k, double tol) {
  for (double x : k) {
    double d0 = torusCoordDist(x, 0.0);
    double dh = torusCoordDist(x, 0.5);
    if (std::min(d0, dh) > tol) return false;
  }
  return true;
}

}  // namespace detail

inline MorseReport morseCensus(const PeriodicGraph& g, int n = 0,
                               const SpectralTolerances& tol = {}, int threads = 1) {
  MorseReport report;
  FloquetMatrix H = floquetMatrix(g);
  LaurentPoly D = dispersionPolynomial(H);
  const int d = g.dim;
  const int bands = H.size();
  if (n <= 0) n = defaultGridResolution(d);

  auto flat = flatBands(D);
  if (!flat.bands.empty()) {
    report.flatBandDetected = true;
    report.flatBandEnergies = flat.bands;
    return report;  // flat bands make every point of a band critical
  }

  DispersionSystem sys(D);

  // ---- seeds: every corner pair plus grid cells where all gradient
  // components change sign across the cell
  struct Seed {
    std::vector<double> k;
    double lambda;
  };
  std::vector<Seed> seeds;
  for (const auto& cp : cornerSpectrum(D)) seeds.push_back({cp.k, cp.lambdaApprox});

  long long total = 1;
  for (int i = 0; i < d; ++i) total *= n;
  // per grid point: band values and gradient components per band
  std::vector<std::vector<double>> lam(total);
  std::vector<std::vector<double>> grad(total);  // band-major: band * d + i
  detail::parallelFor(static_cast<int>(total), threads, [&](int lo, int hi) {
    std::vector<double> k(d);
    for (int idx = lo; idx < hi; ++idx) {
      int rest = idx;
      for (int i = d - 1; i >= 0; --i) {
        k[i] = static_cast<double>(rest % n) / n;
        rest /= n;
      }
      lam[idx] = eigenvaluesAt(H, k, tol);
      grad[idx].resize(bands * d);
      for (int b = 0; b < bands; ++b) {
        Eigen::VectorXd e = sys.equations(k, lam[idx][b]);
        for (int i = 0; i < d; ++i) grad[idx][b * d + i] = e(i + 1);
      }
    }
  });

  auto flatten = [&](const std::vector<int>& ix) {
    long long idx = 0;
    for (int i = 0; i < d; ++i) idx = idx * n + ix[i];
    return idx;
  };
  std::vector<int> ix(d, 0);
  for (bool done = false; !done;) {
    // examine the cell with lower corner ix
    for (int b = 0; b < bands; ++b) {
      bool allChange = true;
      for (int i = 0; i < d && allChange; ++i) {
        double mn = 1e300, mx = -1e300;
        for (unsigned c = 0; c < (1u << d); ++c) {
          std::vector<int> jx = ix;
          for (int t = 0; t < d; ++t)
            if (c & (1u << t)) jx[t] = (jx[t] + 1) % n;
          double v = grad[flatten(jx)][b * d + i];
          mn = std::min(mn, v);
          mx = std::max(mx, v);
        }
        if (!(mn <= 0.0 && mx >= 0.0)) allChange = false;
      }
      if (allChange) {
        std::vector<double> k(d);
        double l = 0;
        for (int i = 0; i < d; ++i) k[i] = (ix[i] + 0.5) / n;
        for (unsigned c = 0; c < (1u << d); ++c) {
          std::vector<int> jx = ix;
          for (int t = 0; t < d; ++t)
            if (c & (1u << t)) jx[t] = (jx[t] + 1) % n;
          l += lam[flatten(jx)][b];
        }
        seeds.push_back({std::move(k), l / (1 << d)});
      }
    }
    done = true;
    for (int i = d - 1; i >= 0; --i) {
      if (++ix[i] < n) { done = false; break; }
      ix[i] = 0;
    }
  }

  // ---- refine and attribute
  std::vector<std::vector<CriticalPoint>> refined(seeds.size());
  detail::parallelFor(static_cast<int>(seeds.size()), threads, [&](int lo, int hi) {
    for (int s = lo; s < hi; ++s) {
      NewtonResult nr = newtonRefine(sys, seeds[s].k, seeds[s].lambda, tol);
      if (!nr.converged) continue;
      auto ev = eigenvaluesAt(H, nr.k, tol);
      int bestBand = 0;
      double bestGap = 1e300;
      for (int b = 0; b < bands; ++b) {
        double gap = std::abs(ev[b] - nr.lambda);
        if (gap < bestGap) { bestGap = gap; bestBand = b; }
      }
      if (bestGap > tol.bandMatch) {
        // At a band touching the dispersion is quadratic in lambda, so Newton
        // places lambda only to sqrt(residual). Snap onto the nearest band and
        // keep the point if it is non-smooth and still critical there.
        double snapped = ev[bestBand];
        if (sys.isSmoothAt(nr.k, snapped)) continue;  // not attributable to a band
        double res = sys.residual(nr.k, snapped);
        if (res > tol.nonSmoothResidual) continue;
        nr.lambda = snapped;
        nr.residual = res;
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(sys.jacobian(nr.k, snapped));
        nr.sigmaMin = svd.singularValues().minCoeff();
        nr.sigmaMax = svd.singularValues().maxCoeff();
      }
      bool corner = detail::nearCorner(nr.k, tol.cornerMatch);
      HessianInfo hi2 = hessianAt(sys, nr.k, nr.lambda, tol);
      // a touching belongs to every band that attains it
      for (int b = 0; b < bands; ++b) {
        if (std::abs(ev[b] - nr.lambda) > tol.bandMatch) continue;
        CriticalPoint cp;
        cp.k = nr.k;
        cp.lambda = nr.lambda;
        cp.band = b + 1;
        cp.residual = nr.residual;
        cp.sigmaMin = nr.sigmaMin;
        cp.sigmaMax = nr.sigmaMax;
        cp.isCorner = corner;
        cp.smooth = hi2.smooth;
        if (hi2.smooth) {
          cp.hessianEigenvalues = hi2.eigenvalues;
          cp.degenerate = hi2.degenerate;
          cp.morseIndex = hi2.morseIndex;
        } else {
          cp.degenerate = true;  // non-smooth candidates are never classified
        }
        // a singular CPE Jacobian also flags the point
        if (nr.sigmaMin < tol.hessianSingular * std::max(1.0, nr.sigmaMax))
          cp.degenerate = true;
        refined[s].push_back(std::move(cp));
      }
    }
  });

  // ---- deduplicate per band (keep the smallest residual)
  for (const auto& batch : refined)
    for (const auto& rp : batch) {
      bool merged = false;
      for (auto& p : report.points) {
        if (p.band != rp.band) continue;
        if (detail::torusDist(p.k, rp.k) < tol.dedupRadius) {
          if (rp.residual < p.residual) p = rp;
          merged = true;
          break;
        }
      }
      if (!merged) report.points.push_back(rp);
    }

  // ---- per-band rollup
  report.allBandsPerfectMorse = true;
  report.allPointsAtCorners = true;
  for (int b = 1; b <= bands; ++b) {
    BandReport br;
    br.band = b;
    br.morseIndexCounts.assign(d + 1, 0);
    for (const auto& p : report.points) {
      if (p.band != b) continue;
      ++br.count;
      if (p.degenerate) ++br.degenerateCount;
      if (!p.smooth) ++br.nonSmoothCount;
      if (!p.isCorner) br.allCorners = false;
      if (p.morseIndex >= 0 && p.morseIndex <= d) ++br.morseIndexCounts[p.morseIndex];
    }
    br.perfectMorse = (br.count == (1 << d)) && br.degenerateCount == 0 && br.nonSmoothCount == 0;
    br.nonIsolatedSuspected = br.degenerateCount > 0 && br.count > (1 << d);
    if (!br.perfectMorse) report.allBandsPerfectMorse = false;
    if (!br.allCorners) report.allPointsAtCorners = false;
    report.bands.push_back(std::move(br));
  }
  return report;
}

// ---------------------------------------------------------------------------
// exact non-corner search on the sparse form

struct NonCornerWitness {
  std::vector<int> kept;       // coordinate subset I (0-based, ascending)
  std::map<int, int> signs;    // the +-1 choice on the complement
  RootInterval lambda;
  UniPoly definingPoly;        // the gcd of {h_i : i in I}
};

// For each proper nonempty subset I: common real roots lambda_0 of
// {h_i : i in I}, kept when h_0(lambda_0) + sum_{j not in I} 2 eps_j h_j(lambda_0) = 0
// exactly for some sign choice eps.  Nonempty output certifies non-corner
// critical points (a circle/torus family in the I-directions).
inline std::vector<NonCornerWitness> algebraicNonCornerSearch(const SparseForm& sf) {
  const int d = sf.dim;
  std::vector<NonCornerWitness> out;
  for (const auto& proj : enumerateProjections(d)) {
    UniPoly g;
    for (int i : proj.kept) g = gcd(g, sf.h[i + 1]);
    if (g.isZero())
      throw std::invalid_argument(
          "algebraicNonCornerSearch: every kept coefficient vanishes identically");
    if (g.degree() <= 0) continue;  // no common root
    UniPoly e = sf.h[0];
    for (const auto& [j, sgn] : proj.signs)
      e += Rational(2 * sgn) * sf.h[j + 1];
    for (const auto& root : realRoots(g)) {
      if (!sharesRoot(e, g, root)) continue;
      NonCornerWitness w;
      w.kept = proj.kept;
      w.signs = proj.signs;
      w.lambda = root;
      w.definingPoly = g;
      out.push_back(std::move(w));
    }
  }
  return out;
}

}  // namespace bloch
