#pragma once

// Numeric kernels of the 4-point problem with regular singular points at
// 0, t, 1 and infinity, glued along the circle |z| = R with |t| < R < 1.
// The two 3-point factors of the jump are explicit 2x2 hypergeometric
// matrices; a spin-1 change of representation turns them into 3x3
// complex-orthogonal factors.  Fourier modes sampled on the circle feed the
// same kernel-block builders and minor-expansion engines used by the exact
// polynomial pipeline, now over floating-point complex scalars, which lets
// the square relation between the determinant and Pfaffian expansions be
// verified by two independent code paths.

#include <complex>

#include "orthotau/kernels.hpp"
#include "orthotau/matrix.hpp"

namespace orthotau {

// Parameters of the 4-point problem.  The local exponents live at the four
// singular points; sigma describes the composite monodromy around the gluing
// circle and eta the relative twist phase between the two factors.
struct IsoParams {
  std::complex<double> theta0;     // local exponent at 0
  std::complex<double> theta_t;    // local exponent at t
  std::complex<double> theta1;     // local exponent at 1
  std::complex<double> theta_inf;  // local exponent at infinity
  std::complex<double> sigma;      // gluing-circle exponent; 2*sigma must avoid integers
  std::complex<double> eta;        // relative twist phase
  std::complex<double> t;          // inner singular point, 0 < |t| < radius
  double radius = 0.5;             // gluing-circle radius R, |t| < R < 1
  int quad_nodes = 256;            // equispaced samples on the circle (positive, even)
  int mode_cutoff = 16;            // retained half-integer modes per side (positive)
};

// Validates finiteness, the annulus ordering 0 < |t| < R < 1, the node and
// mode counts, and non-resonance of sigma; throws config_error on violation.
void check_iso_params(const IsoParams& p);

// Gauss hypergeometric series for |x| < 1, summed directly to relative
// tolerance 1e-14 (capped at 10^4 terms).  A lower parameter c at a
// non-positive integer is a pole of the series and is rejected.
std::complex<double> hyp2f1(std::complex<double> a, std::complex<double> b,
                            std::complex<double> c, std::complex<double> x);

// Which factor of the jump on the circle: `plus` is analytic inside (its
// singular points 1 and infinity lie outside) and equals I at z = 0; `minus`
// is analytic outside (its singular points 0 and t lie inside) and equals I
// at infinity.
enum class FactorSide { plus, minus };

// Matrix representation in which a factor is realized: the defining 2x2 one
// or its 3x3 spin-1 (adjoint) companion.
enum class IsoRep { sl2, so3 };

// The 2x2 hypergeometric solution of the 3-point problem on the given side,
// evaluated at z.  The plus side is a function of z itself, the minus side of
// t/z, so on the circle both hypergeometric arguments stay inside the unit
// disc.  Throws config_error when the sigma denominators 2s(1 +/- 2s) are
// resonant.
Mat<std::complex<double>> psi_sl2(const IsoParams& p, FactorSide side, std::complex<double> z);

// Spin-1 companion of an invertible 2x2 matrix g over the Pauli basis
// {s_1, s_2, s_3}:  Phi_{ab} = tr(s_a g s_b g^{-1}) / 2.  The result is
// complex-orthogonal (Phi Phi^T = I) and the map is multiplicative; a
// numerically singular input is rejected with numeric_error.
Mat<std::complex<double>> sl2_to_so3(const Mat<std::complex<double>>& g);

// Diagnostics of one sampled-factor mode extraction.
struct QuadratureDiag {
  double tail_ratio = 0.0;      // |highest retained mode| / |largest mode|
  bool underresolved = false;   // tail_ratio above the 1e-8 resolution threshold
  double ortho_residual = 0.0;  // max |Phi Phi^T - I| over the nodes (3x3 sampling only)
};

// Fourier blocks of the factor kernel on the circle in the requested
// representation.  The factor is sampled at quad_nodes points of |z| = R,
// its modes in the scaled variable z/R are extracted by discrete Fourier
// transform, and the bivariate kernel blocks are assembled from them by the
// same telescoping recursion as in the exact pipeline, giving every block
// a^p_{-q} (plus side) or d^{-q}_p (minus side) with p + q <= 2*mode_cutoff-1;
// in particular all blocks with p, q <= mode_cutoff - 1/2 are covered.
// Working in z/R realizes the analytic splitting at radius R.  When `diag`
// is given, mode decay and orthogonality diagnostics are reported through it.
KernelBlocks<std::complex<double>> numeric_blocks(const IsoParams& p, FactorSide side,
                                                  IsoRep rep = IsoRep::so3,
                                                  QuadratureDiag* diag = nullptr);

// Joint report on the two tau values and the square relation between them.
struct IsoSquareReport {
  std::complex<double> tau_w;     // determinant expansion on the 2x2 side
  std::complex<double> tau_o;     // Pfaffian expansion on the 3x3 side
  double residual = 0.0;          // |tau_o - tau_w^2| / |tau_w^2|
  std::complex<double> exponent;  // power-law prefactor exponent (see jmu_exponent)
  double ortho_residual = 0.0;    // worst |Phi Phi^T - I| over nodes, both 3x3 factors
  double antisym_residual = 0.0;  // worst kernel antisymmetry defect, both 3x3 kernels
  double tail_ratio = 0.0;        // worst mode-decay ratio over the four samplings
  bool underresolved = false;     // tail_ratio above the 1e-8 threshold
};

// Builds the 2x2 and 3x3 kernels, evaluates tau by the determinant minor
// expansion on the 2x2 side and by the Pfaffian minor expansion (with S = I)
// on the 3x3 side, both truncated at weight mode_cutoff, and reports the
// relative defect of the square relation together with the quadrature
// diagnostics.
IsoSquareReport iso_square_check(const IsoParams& p);

// Exponent of the power-law prefactor turning the 3x3 tau into the full
// isomonodromic tau.  In the 3x3 (adjoint) representation a local exponent
// theta acts with weights (2 theta, 0, -2 theta), so tr Theta^2 = 8 theta^2
// and the quarter trace of S^2 - Theta_0^2 - Theta_t^2 equals
// 2 (sigma^2 - theta0^2 - theta_t^2).
std::complex<double> jmu_exponent(const IsoParams& p);

}  // namespace orthotau
