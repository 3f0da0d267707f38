#pragma once

namespace fracns::solops {

enum class FamilyKind { S, T };

/// Scalar contour cross-check of the operator-family definitions: evaluates
///   (1/2 pi i) int_Gamma e^{z t} z^{alpha-1} (z^alpha + lambda)^{-1} dz   (S)
///   (1/2 pi i) int_Gamma e^{z t}            (z^alpha + lambda)^{-1} dz   (T)
/// over a Talbot deformation of the Hankel path, by trapezoidal quadrature
/// with node doubling from 64 until self-consistent. Used as an independent
/// oracle for the diagonal Mittag-Leffler symbols, never in the solver.
///
/// Throws std::runtime_error if doubling the nodes still changes the result
/// by more than 1e-8.
double contour_eval_scalar(double alpha, double lambda, double t, FamilyKind which);

} // namespace fracns::solops
