#pragma once

// Type A root data for sl(d, R): simple roots, fundamental weights, flag types.

#include <span>
#include <vector>

#include "flaglyap/tolerances.hpp"
#include "flaglyap/types.hpp"

namespace flaglyap {

/// alpha_i(H) = H_i - H_{i+1}, i in 1..d-1.
double simple_root_value(int i, const CartanVector& h);

/// The root alpha_i as a functional.
WeightVector simple_root(int i, int dim);

/// omega_i = lambda_1 + ... + lambda_i, i in 1..d-1.
WeightVector fundamental_weight(int i, int dim);

/// Inner product of two functionals restricted to the traceless subspace.
double weight_pairing(const WeightVector& a, const WeightVector& b);

/// {i : |H_i - H_{i+1}| <= eps}. Throws UnsortedInput if H increases by more than eps.
ThetaSet theta_of(const CartanVector& h, double eps);

/// Default gap tolerance: tol.theta_relative times the largest simple-root gap,
/// never below tol.theta_floor.
double default_theta_eps(const CartanVector& h, const Tolerances& tol = default_tolerances());

/// {omega_i : i not in theta}.
std::vector<WeightVector> weights_outside(const ThetaSet& theta);

/// Indices i with omega_i in the support of the weight's fundamental expansion.
std::vector<int> weight_support(const WeightVector& omega, double tol = default_tolerances().weight_span);

/// True iff omega lies in span{omega_i : i not in theta}.
bool is_admissible(const WeightVector& omega, const ThetaSet& theta,
                   double tol = default_tolerances().weight_span);

/// Throws WeightNotAdmissible unless is_admissible(omega, theta).
void require_admissible(const WeightVector& omega, const ThetaSet& theta);

/// Basis of a(Theta), the span of the coroots H_alpha = e_i - e_{i+1} for i in
/// Theta, as columns. Admissible weights vanish on it.
Matrix cartan_subspace_basis(const ThetaSet& theta);

/// a-component of Z in the Iwasawa splitting k + a + n, i.e. its diagonal.
CartanVector a_projection(const Matrix& z);

/// g Z g^{-1}.
Matrix ad_action(const Matrix& g, const Matrix& z);

/// (wH)_i = H_{w^{-1}(i)} for a 0-based permutation w.
CartanVector weyl_apply(std::span<const int> w, const CartanVector& h);

/// Permutation that sorts H into the closed positive chamber.
std::vector<int> chamber_permutation(const CartanVector& h);

}  // namespace flaglyap
