#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace nomasim {

struct QuadratureConfig {
    double abs_tol = 1e-10;
    double rel_tol = 1e-8;
    int max_subdivisions = 400;
    double tail_cutoff_multiplier = 50.0;  // cap on the infinite-tail cutoff, in units of R
};

struct QuadratureOutcome {
    double value = 0.0;
    double error = 0.0;
    int subdivisions = 0;
    bool converged = false;
};

class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& what, const QuadratureOutcome& outcome)
        : std::runtime_error(what), outcome(outcome) {}
    QuadratureOutcome outcome;
};

namespace detail {

// Gauss-Kronrod 7-15 abscissae/weights (positive half; index 7 is the center).
inline constexpr double kGk15X[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
inline constexpr double kGk15Wk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double kG7W[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double a, b;
    double value;
    double error;
};

// One GK15 panel with the QUADPACK-style error estimate.
template <class F>
Panel gk15_panel(F&& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    const double fc = f(center);
    double kronrod = kGk15Wk[7] * fc;
    double gauss = kG7W[3] * fc;
    double resabs = kGk15Wk[7] * std::fabs(fc);

    double fv[7][2];
    for (int i = 0; i < 7; ++i) {
        const double dx = half * kGk15X[i];
        fv[i][0] = f(center - dx);
        fv[i][1] = f(center + dx);
        const double pair = fv[i][0] + fv[i][1];
        kronrod += kGk15Wk[i] * pair;
        resabs += kGk15Wk[i] * (std::fabs(fv[i][0]) + std::fabs(fv[i][1]));
        if (i % 2 == 1) gauss += kG7W[i / 2] * pair;
    }

    const double mean = 0.5 * kronrod;
    double resasc = kGk15Wk[7] * std::fabs(fc - mean);
    for (int i = 0; i < 7; ++i)
        resasc += kGk15Wk[i] * (std::fabs(fv[i][0] - mean) + std::fabs(fv[i][1] - mean));

    Panel p;
    p.a = a;
    p.b = b;
    p.value = kronrod * half;
    resabs *= std::fabs(half);
    resasc *= std::fabs(half);
    double err = std::fabs((kronrod - gauss) * half) * 200.0;
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(err / resasc, 1.5));
    p.error = err;
    return p;
}

}  // namespace detail

// Adaptive Gauss-Kronrod integration on [a, b]: repeatedly bisects the panel
// with the largest error estimate until the tolerance or subdivision cap.
template <class F>
QuadratureOutcome integrate_adaptive(F&& f, double a, double b, const QuadratureConfig& cfg = {}) {
    QuadratureOutcome out;
    if (a == b) {
        out.converged = true;
        return out;
    }

    std::vector<detail::Panel> panels;
    panels.push_back(detail::gk15_panel(f, a, b));

    for (int iter = 0;; ++iter) {
        double total = 0.0;
        double err = 0.0;
        size_t worst = 0;
        for (size_t i = 0; i < panels.size(); ++i) {
            total += panels[i].value;
            err += panels[i].error;
            if (panels[i].error > panels[worst].error) worst = i;
        }
        out.value = total;
        out.error = err;
        out.subdivisions = iter;
        if (err <= std::max(cfg.abs_tol, cfg.rel_tol * std::fabs(total))) {
            out.converged = true;
            return out;
        }
        if (iter >= cfg.max_subdivisions) return out;

        const detail::Panel p = panels[worst];
        const double mid = 0.5 * (p.a + p.b);
        if (mid <= p.a || mid >= p.b) {
            // Interval at floating-point resolution; cannot refine further.
            out.converged = err <= std::max(cfg.abs_tol * 100.0, cfg.rel_tol * 100.0 * std::fabs(total));
            return out;
        }
        panels[worst] = detail::gk15_panel(f, p.a, mid);
        panels.push_back(detail::gk15_panel(f, mid, p.b));
    }
}

// Convenience wrapper; throws QuadratureError when the tolerance is not met.
template <class F>
double integrate(F&& f, double a, double b, const QuadratureConfig& cfg = {}) {
    QuadratureOutcome out = integrate_adaptive(f, a, b, cfg);
    if (!out.converged) {
        throw QuadratureError(
            "quadrature did not converge on [" + std::to_string(a) + ", " + std::to_string(b) +
                "]: value=" + std::to_string(out.value) + " error=" + std::to_string(out.error) +
                " subdivisions=" + std::to_string(out.subdivisions),
            out);
    }
    return out.value;
}

}  // namespace nomasim
