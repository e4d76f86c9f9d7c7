#pragma once

#include <array>
#include <string>

namespace tailweight {

/// Catalog of downweighting densities on (0,1): the log weight and the
/// indicator / Epanechnikov / biweight / triweight / quadweight family.
enum class WeightId { JLog, J0, J1, J2, J3, J4 };

inline constexpr std::array<WeightId, 6> kWeightCatalog = {
    WeightId::JLog, WeightId::J0, WeightId::J1,
    WeightId::J2,   WeightId::J3, WeightId::J4};

/// J(s). Zero outside (0,1); at s == 1 the left limit is used, so J0 gives 1
/// there (relative excesses equal to one keep their indicator mass).
/// Note: J1 is kept with its customary 2/3 constant and integrates to 4/9,
/// not 1; every other entry is a density on (0,1).
double j_value(WeightId w, double s);

/// m-th derivative of J on (0,1), m in 1..3. Polynomial entries are exact;
/// JLog gives -1/s, 1/s^2, -2/s^3.
double j_derivative(WeightId w, double s, int m);

/// log J(s) for s in (0,1]; -inf where J vanishes.
double j_log_value(WeightId w, double s);

/// J'(s)/J(s), computed as a closed-form ratio (no 0/0 at the endpoints).
double j_log_derivative(WeightId w, double s);

/// L(s) := s * (J'(s)/J(s)) * log s, the correction term entering every
/// gamma-derivative of the weighted Pareto density. For the (1-s^2)^q family
/// this is 2q s^2 log s / (s^2 - 1) with removable limit q at s -> 1;
/// constant 1 for JLog and 0 for J0.
double ell_L(WeightId w, double s);

/// dL/ds, closed form with the same removable singularity handling.
double ell_L_derivative(WeightId w, double s);

/// beta := -int_0^1 J(s) log s ds (exact closed forms).
double beta(WeightId w);

/// phi(s) := int_0^s J(t) dt (exact closed forms).
double weight_cdf(WeightId w, double s);

/// K(s) := phi(s) / (s beta): the kernel whose CDM estimator matches the
/// weighted least squares one. Nonincreasing and integrates to 1 for every
/// catalog entry.
double kernel_from_weight(WeightId w, double s);

std::string weight_name(WeightId w);
WeightId parse_weight(const std::string& name);

}  // namespace tailweight
