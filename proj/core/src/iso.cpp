#include "orthotau/iso.hpp"

#include <cmath>
#include <complex>
#include <cstddef>
#include <set>
#include <utility>
#include <vector>

#include "orthotau/error.hpp"
#include "orthotau/halfint.hpp"
#include "orthotau/matrix.hpp"
#include "orthotau/ring.hpp"
#include "orthotau/series.hpp"
#include "orthotau/tau.hpp"

namespace orthotau {

namespace {

using Cx = std::complex<double>;
using CxMat = Mat<Cx>;

constexpr double kTwoPi = 6.28318530717958647692528676655900577;

// Threshold above which the highest retained Fourier mode counts as
// underresolved relative to the largest one.
constexpr double kTailThreshold = 1e-8;

// Ring used while assembling sampled series and kernel blocks; its tolerance
// only decides which numerically vanishing modes and blocks are dropped from
// storage, so it sits close to machine precision.
const ComplexRing& build_ring() {
  static const ComplexRing ring{1e-13};
  return ring;
}

// Ring used by the structural checks and the minor-expansion engines; its
// tolerance is the acceptance threshold for the antisymmetry relations of
// quadrature-built kernels.
const ComplexRing& engine_ring() {
  static const ComplexRing ring{1e-10};
  return ring;
}

bool is_finite(const Cx& v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); }

bool near_integer(const Cx& v, double tol) {
  return std::abs(v.imag()) <= tol && std::abs(v.real() - std::round(v.real())) <= tol;
}

// max |entry| of a matrix.
double mat_abs_max(const CxMat& m) {
  double worst = 0.0;
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j < m.n; ++j) worst = std::max(worst, std::abs(m.at(i, j)));
  return worst;
}

// max |(m m^T - I)_{ij}|.
double ortho_defect(const CxMat& m) {
  double worst = 0.0;
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j < m.n; ++j) {
      Cx acc{0.0, 0.0};
      for (int k = 0; k < m.n; ++k) acc += m.at(i, k) * m.at(j, k);
      if (i == j) acc -= 1.0;
      worst = std::max(worst, std::abs(acc));
    }
  return worst;
}

struct SampledFactor {
  MatSeries<Cx> series;
  double tail_ratio = 0.0;
  double ortho_residual = 0.0;
};

// Samples the factor at quad_nodes points of the circle, extracts its Fourier
// modes in the scaled variable z/R by discrete transform, and wraps them in a
// one-sided Laurent series whose reliability window spans the retained modes.
SampledFactor sample_factor(const IsoParams& p, FactorSide side, IsoRep rep) {
  const int nq = p.quad_nodes;
  const int top = 2 * p.mode_cutoff - 1;  // highest retained mode index
  const int n = rep == IsoRep::so3 ? 3 : 2;
  const ComplexRing& ring = build_ring();

  std::vector<CxMat> samples;
  samples.reserve(static_cast<std::size_t>(nq));
  double ortho = 0.0;
  for (int m = 0; m < nq; ++m) {
    const double th = kTwoPi * m / nq;
    const Cx z = p.radius * Cx{std::cos(th), std::sin(th)};
    CxMat val = psi_sl2(p, side, z);
    if (rep == IsoRep::so3) {
      val = sl2_to_so3(val);
      ortho = std::max(ortho, ortho_defect(val));
    }
    samples.push_back(std::move(val));
  }

  // Roots of unity for the transform; integer index reduction keeps the
  // angles exactly periodic.
  std::vector<Cx> root(static_cast<std::size_t>(nq));
  for (int r = 0; r < nq; ++r) {
    const double th = kTwoPi * r / nq;
    root[static_cast<std::size_t>(r)] = Cx{std::cos(th), -std::sin(th)};
  }

  // Mode k multiplies e^{-ik th} for the inside factor (positive powers of
  // z/R) and e^{+ik th} for the outside factor (negative powers).
  std::vector<CxMat> modes;
  modes.reserve(static_cast<std::size_t>(top) + 1);
  double largest = 0.0;
  for (int k = 0; k <= top; ++k) {
    CxMat acc(n, Cx{0.0, 0.0});
    for (int m = 0; m < nq; ++m) {
      const int idx = static_cast<int>((static_cast<long>(k) * m) % nq);
      const Cx w = side == FactorSide::plus
                       ? root[static_cast<std::size_t>(idx)]
                       : std::conj(root[static_cast<std::size_t>(idx)]);
      const CxMat& g = samples[static_cast<std::size_t>(m)];
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) acc.at(i, j) += g.at(i, j) * w;
    }
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) acc.at(i, j) /= static_cast<double>(nq);
    largest = std::max(largest, mat_abs_max(acc));
    modes.push_back(std::move(acc));
  }

  SampledFactor out;
  out.ortho_residual = ortho;
  out.tail_ratio = largest > 0.0 ? mat_abs_max(modes.back()) / largest : 0.0;

  MatSeries<Cx>& s = out.series;
  s.n = n;
  if (side == FactorSide::plus) {
    s.kmin = 0;
    s.kmax = top;
    s.exact_lo = true;   // analytic at the origin
    s.exact_hi = false;  // modes above the cutoff are unknown
    for (int k = 0; k <= top; ++k) s.coeffs.emplace(k, std::move(modes[static_cast<std::size_t>(k)]));
  } else {
    s.kmin = -top;
    s.kmax = 0;
    s.exact_lo = false;
    s.exact_hi = true;  // analytic at infinity
    for (int k = 0; k <= top; ++k)
      s.coeffs.emplace(-k, std::move(modes[static_cast<std::size_t>(k)]));
  }
  series_normalize(ring, s);
  return out;
}

// Worst entry of block(p,q) + block(q,p)^T over all stored block pairs; this
// is the antisymmetry relation specialized to S = I.
double antisymmetry_residual(const KernelBlocks<Cx>& kb) {
  const ComplexRing& ring = build_ring();
  std::set<std::pair<int, int>> keys;
  for (const auto& [key, blk] : kb.blocks) {
    (void)blk;
    keys.insert(key);
    keys.insert({key.second, key.first});
  }
  double worst = 0.0;
  for (const auto& key : keys) {
    const CxMat fwd = kernel_block(ring, kb, half_from_twice(key.first), half_from_twice(key.second));
    const CxMat mir = kernel_block(ring, kb, half_from_twice(key.second), half_from_twice(key.first));
    for (int i = 0; i < kb.n; ++i)
      for (int j = 0; j < kb.n; ++j) worst = std::max(worst, std::abs(fwd.at(i, j) + mir.at(j, i)));
  }
  return worst;
}

}  // namespace

void check_iso_params(const IsoParams& p) {
  const Cx all[] = {p.theta0, p.theta_t, p.theta1, p.theta_inf, p.sigma, p.eta, p.t};
  for (const Cx& v : all)
    if (!is_finite(v)) throw config_error("iso: parameters must be finite");
  if (!std::isfinite(p.radius)) throw config_error("iso: circle radius must be finite");
  if (!(std::abs(p.t) > 0.0)) throw config_error("iso: t must be nonzero");
  if (!(std::abs(p.t) < p.radius))
    throw config_error("iso: |t| must be smaller than the circle radius");
  if (!(p.radius < 1.0)) throw config_error("iso: circle radius must be smaller than 1");
  if (p.quad_nodes <= 0 || p.quad_nodes % 2 != 0)
    throw config_error("iso: quad_nodes must be a positive even count");
  if (p.mode_cutoff < 1) throw config_error("iso: mode_cutoff must be positive");
  if (p.quad_nodes < 4 * p.mode_cutoff)
    throw config_error("iso: quad_nodes must be at least four times mode_cutoff");
  if (near_integer(2.0 * p.sigma, 1e-8))
    throw config_error("iso: 2*sigma too close to an integer (resonant)");
}

std::complex<double> hyp2f1(std::complex<double> a, std::complex<double> b,
                            std::complex<double> c, std::complex<double> x) {
  if (!(std::abs(x) < 1.0))
    throw config_error("hyp2f1: series argument must satisfy |x| < 1");
  if (near_integer(c, 1e-12) && std::round(c.real()) <= 0.0)
    throw config_error("hyp2f1: lower parameter at a non-positive integer pole");
  Cx sum{1.0, 0.0};
  Cx term{1.0, 0.0};
  int small_streak = 0;
  for (int k = 0; k < 10000; ++k) {
    const double dk = static_cast<double>(k);
    term *= (a + dk) * (b + dk) / ((c + dk) * (dk + 1.0)) * x;
    sum += term;
    if (std::abs(term) <= 1e-14 * std::abs(sum)) {
      if (++small_streak >= 2) return sum;
    } else {
      small_streak = 0;
    }
  }
  throw numeric_error("hyp2f1: series did not converge within 10000 terms");
}

Mat<std::complex<double>> psi_sl2(const IsoParams& p, FactorSide side, std::complex<double> z) {
  const Cx s = p.sigma;
  const Cx den_p = 2.0 * s * (1.0 + 2.0 * s);
  const Cx den_m = 2.0 * s * (1.0 - 2.0 * s);
  if (std::abs(den_p) < 1e-12 || std::abs(den_m) < 1e-12)
    throw config_error("psi_sl2: resonant sigma denominators");

  // The bare hypergeometric matrices below have determinant (1 - z)^{-2 th1}
  // (inside factor) and (1 - t/z)^{-2 th_t} (outside factor).  The square
  // relation needs a loop-SL(2) jump, so each factor carries the scalar that
  // restores a unit determinant; it equals 1 at the normalization point and
  // is analytic on the factor's side of the circle.  The spin-1 image is
  // unchanged because the conjugation map cancels scalar multiples.
  CxMat m(2, Cx{0.0, 0.0});
  if (side == FactorSide::plus) {
    const Cx u = p.theta1 + p.theta_inf;
    const Cx v = p.theta1 - p.theta_inf;
    const Cx unit = std::pow(1.0 - z, p.theta1);
    m.at(0, 0) = unit * hyp2f1(u + s, v + s, 2.0 * s, z);
    m.at(0, 1) = unit * z *
                 (p.theta_inf * p.theta_inf - (p.theta1 + s) * (p.theta1 + s)) / den_p *
                 hyp2f1(1.0 + u + s, 1.0 + v + s, 2.0 + 2.0 * s, z);
    m.at(1, 0) = -unit * z *
                 (p.theta_inf * p.theta_inf - (p.theta1 - s) * (p.theta1 - s)) / den_m *
                 hyp2f1(1.0 + u - s, 1.0 + v - s, 2.0 - 2.0 * s, z);
    m.at(1, 1) = unit * hyp2f1(u - s, v - s, -2.0 * s, z);
  } else {
    const Cx x = p.t / z;
    const Cx u = p.theta_t + p.theta0;
    const Cx v = p.theta_t - p.theta0;
    const Cx unit = std::pow(1.0 - x, p.theta_t);
    const Cx tw_pos = std::pow(p.t, 2.0 * s) * std::exp(Cx{0.0, 1.0} * p.eta);
    const Cx tw_neg = std::pow(p.t, -2.0 * s) * std::exp(Cx{0.0, -1.0} * p.eta);
    m.at(0, 0) = unit * hyp2f1(u - s, v - s, -2.0 * s, x);
    m.at(0, 1) = -unit * tw_neg * x *
                 (p.theta0 * p.theta0 - (p.theta_t - s) * (p.theta_t - s)) / den_m *
                 hyp2f1(1.0 + u - s, 1.0 + v - s, 2.0 - 2.0 * s, x);
    m.at(1, 0) = unit * tw_pos * x *
                 (p.theta0 * p.theta0 - (p.theta_t + s) * (p.theta_t + s)) / den_p *
                 hyp2f1(1.0 + u + s, 1.0 + v + s, 2.0 + 2.0 * s, x);
    m.at(1, 1) = unit * hyp2f1(u + s, v + s, 2.0 * s, x);
  }
  return m;
}

Mat<std::complex<double>> sl2_to_so3(const Mat<std::complex<double>>& g) {
  if (g.n != 2) throw config_error("sl2_to_so3: input must be 2x2");
  const Cx det = g.at(0, 0) * g.at(1, 1) - g.at(0, 1) * g.at(1, 0);
  const double scale = mat_abs_max(g);
  if (std::abs(det) <= 1e-14 * scale * scale || scale == 0.0)
    throw numeric_error("sl2_to_so3: numerically singular input");

  CxMat gi(2, Cx{0.0, 0.0});
  gi.at(0, 0) = g.at(1, 1) / det;
  gi.at(0, 1) = -g.at(0, 1) / det;
  gi.at(1, 0) = -g.at(1, 0) / det;
  gi.at(1, 1) = g.at(0, 0) / det;

  const Cx i1{0.0, 1.0};
  CxMat pauli[3] = {CxMat(2, Cx{0.0, 0.0}), CxMat(2, Cx{0.0, 0.0}), CxMat(2, Cx{0.0, 0.0})};
  pauli[0].at(0, 1) = 1.0;
  pauli[0].at(1, 0) = 1.0;
  pauli[1].at(0, 1) = -i1;
  pauli[1].at(1, 0) = i1;
  pauli[2].at(0, 0) = 1.0;
  pauli[2].at(1, 1) = -1.0;

  CxMat out(3, Cx{0.0, 0.0});
  for (int b = 0; b < 3; ++b) {
    // conj_b = g s_b g^{-1}
    CxMat tmp(2, Cx{0.0, 0.0});
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        Cx acc{0.0, 0.0};
        for (int k = 0; k < 2; ++k) acc += g.at(i, k) * pauli[b].at(k, j);
        tmp.at(i, j) = acc;
      }
    CxMat conj_b(2, Cx{0.0, 0.0});
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        Cx acc{0.0, 0.0};
        for (int k = 0; k < 2; ++k) acc += tmp.at(i, k) * gi.at(k, j);
        conj_b.at(i, j) = acc;
      }
    for (int a = 0; a < 3; ++a) {
      Cx tr{0.0, 0.0};
      for (int i = 0; i < 2; ++i)
        for (int k = 0; k < 2; ++k) tr += pauli[a].at(i, k) * conj_b.at(k, i);
      out.at(a, b) = 0.5 * tr;
    }
  }
  return out;
}

KernelBlocks<std::complex<double>> numeric_blocks(const IsoParams& p, FactorSide side, IsoRep rep,
                                                  QuadratureDiag* diag) {
  check_iso_params(p);
  SampledFactor sf = sample_factor(p, side, rep);
  if (diag) {
    diag->tail_ratio = sf.tail_ratio;
    diag->underresolved = sf.tail_ratio > kTailThreshold;
    diag->ortho_residual = sf.ortho_residual;
  }
  const long window = 2L * p.mode_cutoff - 1;
  const ComplexRing& ring = build_ring();
  return side == FactorSide::plus ? build_a(ring, sf.series, window)
                                  : build_d(ring, sf.series, window);
}

IsoSquareReport iso_square_check(const IsoParams& p) {
  check_iso_params(p);
  const ComplexRing& ring = engine_ring();

  QuadratureDiag dg_a2, dg_d2, dg_a3, dg_d3;
  const KernelBlocks<Cx> a2 = numeric_blocks(p, FactorSide::plus, IsoRep::sl2, &dg_a2);
  const KernelBlocks<Cx> d2 = numeric_blocks(p, FactorSide::minus, IsoRep::sl2, &dg_d2);
  const KernelBlocks<Cx> a3 = numeric_blocks(p, FactorSide::plus, IsoRep::so3, &dg_a3);
  const KernelBlocks<Cx> d3 = numeric_blocks(p, FactorSide::minus, IsoRep::so3, &dg_d3);

  IsoSquareReport report;
  report.tau_w = widom_tau(ring, a2, d2, p.mode_cutoff, false).value;
  report.tau_o =
      pfaffian_tau(ring, a3, d3, mat_identity(ring, 3), p.mode_cutoff, false).value;
  const Cx square = report.tau_w * report.tau_w;
  report.residual = std::abs(report.tau_o - square) / std::abs(square);
  report.exponent = jmu_exponent(p);
  report.ortho_residual = std::max(dg_a3.ortho_residual, dg_d3.ortho_residual);
  report.antisym_residual = std::max(antisymmetry_residual(a3), antisymmetry_residual(d3));
  report.tail_ratio = std::max(std::max(dg_a2.tail_ratio, dg_d2.tail_ratio),
                               std::max(dg_a3.tail_ratio, dg_d3.tail_ratio));
  report.underresolved = report.tail_ratio > kTailThreshold;
  return report;
}

std::complex<double> jmu_exponent(const IsoParams& p) {
  return 2.0 * (p.sigma * p.sigma - p.theta0 * p.theta0 - p.theta_t * p.theta_t);
}

}  // namespace orthotau
