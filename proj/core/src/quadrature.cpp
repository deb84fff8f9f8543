// SPDX-License-Identifier: Apache-2.0
//
// otfslab - OTFS/OFDM link-level simulation and BER analysis over Nakagami-m fading
// Copyright (C) 2026 The otfslab Authors
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

#include "otfslab/errors.hpp"
#include "otfslab/specfun.hpp"

#include <array>
#include <cmath>
#include <algorithm>
#include <limits>
#include <vector>

namespace otfs::specfun {

namespace {

// Gauss-Kronrod 7/15 abscissae and weights (positive half, centre last).
constexpr std::array<double, 8> kXgk = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                                        0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                                        0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                                        0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                                        0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                                        0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                                        0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                                       0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
    double a;
    double b;
    double value;
    double error;
    bool operator<(const Segment& other) const { return error < other.error; }
};

Segment kronrod(const Integrand& f, double a, double b) {
    const double centre = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(centre);
    double kronrod_sum = fc * kWgk[7];
    double gauss_sum = fc * kWg[3];
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        const double f1 = f(centre - dx);
        const double f2 = f(centre + dx);
        kronrod_sum += kWgk[j] * (f1 + f2);
        if (j % 2 == 1) {
            gauss_sum += kWg[j / 2] * (f1 + f2);
        }
    }
    const double value = kronrod_sum * half;
    double error = std::abs((kronrod_sum - gauss_sum) * half);
    // Floor against round-off so that converged segments stop being split.
    const double roundoff = 50.0 * std::numeric_limits<double>::epsilon() * std::abs(value);
    if (error < roundoff) {
        error = roundoff;
    }
    if (!std::isfinite(value) || !std::isfinite(error)) {
        throw NumericError("integrand produced a non-finite value", value, error);
    }
    return {a, b, value, error};
}

} // namespace

void QuadratureSpec::validate() const {
    if (!(std::isfinite(absolute_tolerance) && absolute_tolerance > 0.0)) {
        throw DomainError("absolute tolerance must be finite and positive");
    }
    if (!(std::isfinite(relative_tolerance) && relative_tolerance > 0.0)) {
        throw DomainError("relative tolerance must be finite and positive");
    }
    if (max_subdivisions < 1 || max_subdivisions > 1000000) {
        throw DomainError("max subdivisions must lie in [1, 1e6]");
    }
}

QuadratureResult integrate(const Integrand& f, double a, double b, const QuadratureSpec& spec) {
    spec.validate();
    if (!std::isfinite(a) || !std::isfinite(b)) {
        throw DomainError("integration limits must be finite");
    }
    if (a == b) {
        return {};
    }
    if (b < a) {
        QuadratureResult r = integrate(f, b, a, spec);
        r.value = -r.value;
        return r;
    }

    std::vector<Segment> heap;
    heap.push_back(kronrod(f, a, b));
    double total = heap.front().value;
    double total_error = heap.front().error;
    int subdivisions = 1;

    while (total_error > std::max(spec.absolute_tolerance, spec.relative_tolerance * std::abs(total))) {
        if (subdivisions >= spec.max_subdivisions) {
            throw NumericError("adaptive quadrature did not converge", total, total_error);
        }
        std::pop_heap(heap.begin(), heap.end());
        const Segment worst = heap.back();
        heap.pop_back();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            throw NumericError("adaptive quadrature reached the resolution limit", total, total_error);
        }
        heap.push_back(kronrod(f, worst.a, mid));
        std::push_heap(heap.begin(), heap.end());
        heap.push_back(kronrod(f, mid, worst.b));
        std::push_heap(heap.begin(), heap.end());
        ++subdivisions;
        // Re-sum rather than update incrementally so drift cannot accumulate.
        total = 0.0;
        total_error = 0.0;
        double compensation = 0.0;
        for (const Segment& s : heap) {
            const double t = total + s.value;
            compensation += std::abs(total) >= std::abs(s.value) ? (total - t) + s.value : (s.value - t) + total;
            total = t;
            total_error += s.error;
        }
        total += compensation;
    }
    return {total, total_error, subdivisions};
}

QuadratureResult integrate_semi_infinite(const Integrand& f, const QuadratureSpec& spec, double scale) {
    if (!(std::isfinite(scale) && scale > 0.0)) {
        throw DomainError("scale must be finite and positive");
    }
    auto mapped = [&](double u) {
        const double t = u / (1.0 - u);
        const double y = scale * t * t;
        const double fy = f(y);
        if (fy == 0.0) {
            return 0.0;
        }
        const double w = 1.0 / (1.0 - u);
        return fy * 2.0 * scale * t * w * w;
    };
    return integrate(mapped, 0.0, 1.0, spec);
}

QuadratureResult integrate_tail(const Integrand& f, double a, const QuadratureSpec& spec, double scale) {
    if (!std::isfinite(a)) {
        throw DomainError("lower limit must be finite");
    }
    if (!(std::isfinite(scale) && scale > 0.0)) {
        throw DomainError("scale must be finite and positive");
    }
    auto mapped = [&](double u) {
        const double w = 1.0 / (1.0 - u);
        const double fy = f(a + scale * u * w);
        if (fy == 0.0) {
            return 0.0;
        }
        return fy * scale * w * w;
    };
    return integrate(mapped, 0.0, 1.0, spec);
}

} // namespace otfs::specfun
