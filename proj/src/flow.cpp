#include "equinorm/flow.hpp"

#include <cmath>
#include <random>

namespace equinorm {

PolyVectorField build_transform_map(const std::vector<std::pair<int, QuasilinearField>>& generators,
                                    int dim, int map_degree) {
    PolyVectorField acc = PolyVectorField::identity(dim);
    for (auto it = generators.rbegin(); it != generators.rend(); ++it) {
        const PolyVectorField h = expand(it->second).truncated_degree(map_degree);
        if (h.is_zero())
            continue;
        acc = substitute(flow_map(h, map_degree), acc, map_degree);
    }
    return acc;
}

std::vector<double> rk4_integrate(const PolyVectorField& f, std::vector<double> x, double T, int steps) {
    const double h = T / steps;
    const std::size_t n = x.size();
    std::vector<double> k1, k2, k3, k4, tmp(n);
    for (int s = 0; s < steps; ++s) {
        k1 = evaluate(f, x);
        for (std::size_t i = 0; i < n; ++i)
            tmp[i] = x[i] + 0.5 * h * k1[i];
        k2 = evaluate(f, tmp);
        for (std::size_t i = 0; i < n; ++i)
            tmp[i] = x[i] + 0.5 * h * k2[i];
        k3 = evaluate(f, tmp);
        for (std::size_t i = 0; i < n; ++i)
            tmp[i] = x[i] + h * k3[i];
        k4 = evaluate(f, tmp);
        for (std::size_t i = 0; i < n; ++i)
            x[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    return x;
}

FlowCheckReport flow_check(const PolyVectorField& original, const NormalFormResult& result,
                           const std::vector<double>& radii, double time_horizon) {
    for (std::size_t j = 1; j < radii.size(); ++j)
        if (!(radii[j] < radii[j - 1]))
            throw ValidationError("radii must be strictly decreasing");
    for (double r : radii)
        if (!(r > 0))
            throw ValidationError("radii must be positive");

    const int n = original.dim();
    FlowCheckReport report;
    report.radii = radii;
    report.time_horizon = time_horizon;

    const PolyVectorField theta = build_transform_map(result.generators, n, result.order);
    const PolyVectorField nf_field = expand(result.nf);

    // Fixed direction set: diagonal plus three seeded random unit vectors.
    std::vector<std::vector<double>> dirs;
    {
        std::vector<double> diag(static_cast<std::size_t>(n), 1.0 / std::sqrt(static_cast<double>(n)));
        dirs.push_back(std::move(diag));
        std::mt19937 rng(0x5eed5u);
        std::normal_distribution<double> gauss(0.0, 1.0);
        for (int d = 0; d < 3; ++d) {
            std::vector<double> v(static_cast<std::size_t>(n));
            double norm = 0.0;
            do {
                norm = 0.0;
                for (double& c : v) {
                    c = gauss(rng);
                    norm += c * c;
                }
            } while (norm < 1e-12);
            norm = std::sqrt(norm);
            for (double& c : v)
                c /= norm;
            dirs.push_back(std::move(v));
        }
    }

    const int steps = report.steps;
    const double dt = time_horizon / steps;
    for (double eps : radii) {
        double sup = 0.0;
        bool blew_up = false;
        for (const auto& dir : dirs) {
            std::vector<double> w(static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i)
                w[static_cast<std::size_t>(i)] = eps * dir[static_cast<std::size_t>(i)];
            std::vector<double> x = evaluate(theta, w);

            for (int s = 0; s < steps && !blew_up; ++s) {
                x = rk4_integrate(original, std::move(x), dt, 1);
                w = rk4_integrate(nf_field, std::move(w), dt, 1);
                const std::vector<double> mapped = evaluate(theta, w);
                double diff = 0.0, xn = 0.0;
                for (int i = 0; i < n; ++i) {
                    const double d = x[static_cast<std::size_t>(i)] - mapped[static_cast<std::size_t>(i)];
                    diff += d * d;
                    xn += x[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(i)];
                }
                sup = std::max(sup, std::sqrt(diff));
                if (xn > 1e12 || !std::isfinite(diff))
                    blew_up = true;
            }
        }
        report.errors.push_back(sup);
        report.blowup.push_back(blew_up);
    }

    // Least-squares slope of log error against log radius.
    std::vector<double> xs, ys;
    for (std::size_t j = 0; j < radii.size(); ++j) {
        if (report.blowup[j] || report.errors[j] <= 0.0)
            continue;
        xs.push_back(std::log(radii[j]));
        ys.push_back(std::log(report.errors[j]));
    }
    if (xs.size() >= 2) {
        double mx = 0, my = 0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            mx += xs[i];
            my += ys[i];
        }
        mx /= static_cast<double>(xs.size());
        my /= static_cast<double>(xs.size());
        double num = 0, den = 0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            num += (xs[i] - mx) * (ys[i] - my);
            den += (xs[i] - mx) * (xs[i] - mx);
        }
        if (den > 0)
            report.fitted_order = num / den;
    }
    return report;
}

} // namespace equinorm
