#pragma once

namespace rig {

// Standard normal density.
double norm_pdf(double x);

// Standard normal CDF via erfc; absolute error below 1e-15.
double norm_cdf(double x);

// Phi(x) - 1/2, odd-exact in floating point: norm_cdf_centered(-x) is
// bitwise -norm_cdf_centered(x). The Kolmogorov statistic is evaluated
// through this so that sample negation reproduces the estimate exactly.
double norm_cdf_centered(double x);

// Inverse CDF (Acklam's rational approximation polished by one Halley step).
double norm_quantile(double u);

// Antiderivative of Phi: G(x) = x*Phi(x) + phi(x), G(-inf) = 0.
double norm_cdf_antideriv(double x);

}  // namespace rig
