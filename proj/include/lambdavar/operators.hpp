#pragma once

#include <cstddef>
#include <string_view>

#include "lambdavar/functions.hpp"

namespace lambdavar {

/// B_n f: coefficients f(k/n), k = 0..n.
BernsteinPoly bernstein_of(const Function& f, std::size_t n);

/// K_n f: coefficients (n+1) * integral of f over [k/(n+1), (k+1)/(n+1)].
BernsteinPoly kantorovich_of(const PiecewiseLinear& f, std::size_t n);
BernsteinPoly kantorovich_of(const StepFunction& f, std::size_t n);

/// The piecewise linear g with g(k/n) equal to the k-th Kantorovich
/// coefficient, so that K_n f = B_n g.
PiecewiseLinear kantorovich_aux(const PiecewiseLinear& f, std::size_t n);

enum class Monotonicity { Increasing, Decreasing, Constant, NotMonotone };

enum class CertificateMode {
  Fast,      // accept monotone coefficients before the derivative analysis
  Complete,  // derivative sign analysis only
};

Monotonicity monotone_certificate(const BernsteinPoly& p,
                                  CertificateMode mode = CertificateMode::Fast);

std::string_view to_string(Monotonicity m);

enum class OperatorKind { Bernstein, Kantorovich };

BernsteinPoly apply_operator(OperatorKind op, const PiecewiseLinear& f, std::size_t n);

std::string_view to_string(OperatorKind op);

}  // namespace lambdavar
