// sosim - semi-orthogonal user selection: sum-rate analysis and simulation
// Copyright (C) 2026 the sosim authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef SOSIM_NUMERICS_HPP
#define SOSIM_NUMERICS_HPP

#include <functional>
#include <stdexcept>

namespace sosim {

/// Tolerances for the adaptive quadrature. The integration stops once the
/// error estimate drops below max(abs_tol, rel_tol * |I|).
struct QuadratureSpec {
    double abs_tol = 1e-10;
    double rel_tol = 1e-8;
    int max_subdivisions = 2000;

    void validate() const;  // throws std::invalid_argument on bad tolerances
};

/// Thrown when the adaptive quadrature cannot reach the requested tolerance
/// or the integrand produces non-finite values.
struct quadrature_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Lower incomplete gamma ratio gamma(2,x) = 1 - (x+1)e^{-x}.
/// This is the CDF of a unit-rate Gamma(2) variate; monotone from 0 to 1.
double lower_gamma2(double x);

/// Upper incomplete gamma ratio Gamma(2,x) = (x+1)e^{-x}.
/// Complement of lower_gamma2: the two sum to 1 exactly.
double upper_gamma2(double x);

/// G(x) = e^x Ei(-x) = -e^x E1(x) for x > 0. Strictly negative,
/// increasing towards 0; G(x) ~ ln(x) as x->0+ and ~ -1/x as x->inf.
///
/// E1 is evaluated with a power series for x <= 1 and a modified-Lentz
/// continued fraction for x > 1 (the e^x factor cancels inside the
/// fraction, so nothing overflows); above x = 30 the asymptotic
/// expansion of G is used directly.
double g_function(double x);

/// Adaptive 15-point Gauss-Kronrod quadrature of f over the finite
/// interval [a, b], bisecting the segment with the largest error estimate.
double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureSpec& spec = {});

/// Integral of f over [0, inf), for continuous absolutely integrable f
/// with an exponentially decaying tail. The half line is mapped onto
/// [0, 1) via x = t/(1-t) and handed to the finite-interval routine.
double integrate_semi_infinite(const std::function<double(double)>& f,
                               const QuadratureSpec& spec = {});

}  // namespace sosim

#endif  // SOSIM_NUMERICS_HPP
