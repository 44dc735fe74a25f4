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

#include "sosim/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace sosim {

void QuadratureSpec::validate() const
{
    if (!(abs_tol > 0.0))
        throw std::invalid_argument("QuadratureSpec: abs_tol must be positive");
    if (!(rel_tol > 0.0))
        throw std::invalid_argument("QuadratureSpec: rel_tol must be positive");
    if (max_subdivisions < 1)
        throw std::invalid_argument("QuadratureSpec: max_subdivisions must be >= 1");
}

double lower_gamma2(double x)
{
    if (!(x >= 0.0))
        throw std::domain_error("lower_gamma2: argument must be nonnegative");
    return 1.0 - (x + 1.0) * std::exp(-x);
}

double upper_gamma2(double x)
{
    if (!(x >= 0.0))
        throw std::domain_error("upper_gamma2: argument must be nonnegative");
    return (x + 1.0) * std::exp(-x);
}

namespace {

// E1(x) = -euler - ln x + sum_{k>=1} (-1)^{k+1} x^k / (k k!), for x <= 1.
double e1_series(double x)
{
    constexpr double euler = 0.57721566490153286060651209008240243;
    double sum = -euler - std::log(x);
    double term = 1.0;
    for (int k = 1; k <= 40; ++k) {
        term *= -x / k;
        const double contrib = -term / k;
        sum += contrib;
        if (std::abs(contrib) < 1e-18 * std::abs(sum))
            break;
    }
    return sum;
}

// Modified-Lentz evaluation of the continued fraction
//   e^x E1(x) = 1/(x+1 - 1/(x+3 - 4/(x+5 - 9/(x+7 - ...)))),
// i.e. the b-coefficients x+1, x+3, ... and a-coefficients -k^2.
double exp_e1_continued_fraction(double x)
{
    constexpr double tiny = 1e-300;
    double b = x + 1.0;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int k = 1; k <= 200; ++k) {
        const double a = -static_cast<double>(k) * k;
        b += 2.0;
        d = a * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + a / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < 1e-16)
            break;
    }
    return h;
}

// Asymptotic tail -e^x E1(x) ~ -(1/x)(1 - 1/x + 2!/x^2 - ...), truncated
// where the terms stop shrinking.
double g_asymptotic(double x)
{
    double term = 1.0 / x;
    double sum = term;
    for (int k = 1; k <= 60; ++k) {
        const double next = term * k / x;
        if (std::abs(next) >= std::abs(term))
            break;
        term = -next;
        sum += term;
    }
    return -sum;
}

}  // namespace

double g_function(double x)
{
    if (!(x > 0.0))
        throw std::domain_error("g_function: argument must be positive");
    if (x <= 1.0)
        return -std::exp(x) * e1_series(x);
    if (x <= 30.0)
        return -exp_e1_continued_fraction(x);
    return g_asymptotic(x);
}

namespace {

// Gauss-Kronrod 7/15 nodes and weights on [-1, 1] (symmetric halves).
constexpr double gk_nodes[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

constexpr double gk_weights[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

constexpr double gauss_weights[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Segment {
    double a, b;
    double value;
    double error;
};

// One Gauss-Kronrod pass over [a, b]; error estimated from the Kronrod vs
// Gauss difference with the usual QUADPACK damping.
Segment gk15(const std::function<double(double)>& f, double a, double b)
{
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    double lo[8], hi[8];
    for (int i = 0; i < 8; ++i) {
        const double dx = half * gk_nodes[i];
        lo[i] = f(mid - dx);
        hi[i] = (i == 7) ? lo[i] : f(mid + dx);
        if (!std::isfinite(lo[i]) || !std::isfinite(hi[i]))
            throw quadrature_error("integrate: integrand returned a non-finite value");
    }
    double kron = 0.0, gauss = 0.0, resabs = 0.0;
    for (int i = 0; i < 8; ++i) {
        const double pair = (i == 7) ? lo[i] : lo[i] + hi[i];
        kron += gk_weights[i] * pair;
        resabs += gk_weights[i] * ((i == 7) ? std::abs(lo[i]) : std::abs(lo[i]) + std::abs(hi[i]));
        if (i % 2 == 1)
            gauss += gauss_weights[i / 2] * pair;
    }
    const double mean = kron * 0.5;
    double resasc = gk_weights[7] * std::abs(lo[7] - mean);
    for (int i = 0; i < 7; ++i)
        resasc += gk_weights[i] * (std::abs(lo[i] - mean) + std::abs(hi[i] - mean));

    const double scale = std::abs(half);
    kron *= half;
    gauss *= half;
    resabs *= scale;
    resasc *= scale;

    double err = std::abs(kron - gauss);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    err = std::max(err, std::numeric_limits<double>::epsilon() * 50.0 * resabs);
    return {a, b, kron, err};
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureSpec& spec)
{
    spec.validate();
    if (a == b)
        return 0.0;

    auto worse = [](const Segment& s, const Segment& t) { return s.error < t.error; };
    std::vector<Segment> heap;
    heap.push_back(gk15(f, a, b));
    double total = heap.front().value;
    double total_err = heap.front().error;

    for (int iter = 0; iter < spec.max_subdivisions; ++iter) {
        if (total_err <= std::max(spec.abs_tol, spec.rel_tol * std::abs(total)))
            return total;
        std::pop_heap(heap.begin(), heap.end(), worse);
        const Segment worst = heap.back();
        heap.pop_back();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid == worst.a || mid == worst.b) {
            // interval no longer splittable; keep its estimate
            total_err -= worst.error;
            continue;
        }
        const Segment left = gk15(f, worst.a, mid);
        const Segment right = gk15(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        heap.push_back(left);
        std::push_heap(heap.begin(), heap.end(), worse);
        heap.push_back(right);
        std::push_heap(heap.begin(), heap.end(), worse);
    }
    if (total_err <= std::max(spec.abs_tol, spec.rel_tol * std::abs(total)))
        return total;
    throw quadrature_error("integrate: tolerance not reached after " +
                           std::to_string(spec.max_subdivisions) + " subdivisions");
}

double integrate_semi_infinite(const std::function<double(double)>& f,
                               const QuadratureSpec& spec)
{
    // x = t/(1-t) maps [0,1) onto [0,inf); dx = dt/(1-t)^2.
    auto mapped = [&f](double t) {
        const double one_minus = 1.0 - t;
        const double x = t / one_minus;
        return f(x) / (one_minus * one_minus);
    };
    return integrate(mapped, 0.0, 1.0, spec);
}

}  // namespace sosim
