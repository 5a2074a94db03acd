#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "horolip/point.hpp"

namespace horolip {

enum class RayClass { geodesic, almost_geodesic, weakly_geodesic, none };

inline const char* to_string(RayClass c)
{
    switch (c) {
    case RayClass::geodesic: return "geodesic";
    case RayClass::almost_geodesic: return "almost_geodesic";
    case RayClass::weakly_geodesic: return "weakly_geodesic";
    case RayClass::none: return "none";
    }
    return "?";
}

/**
 * A sampled ray: finitely many times 0 = t_0 < t_1 < ... with marked points.
 * The point type is generic so lattice points and free-group words share the
 * classification machinery.
 */
template <class P>
struct RaySampleT {
    std::vector<double> domain;
    std::vector<P> points;
    std::string label;

    void validate() const
    {
        if (domain.empty() || domain.size() != points.size())
            throw std::invalid_argument("RaySample: domain/points mismatch or empty");
        if (domain.front() != 0.0) throw std::invalid_argument("RaySample: domain must start at 0");
        for (std::size_t i = 1; i < domain.size(); ++i)
            if (!(domain[i] > domain[i - 1]))
                throw std::invalid_argument("RaySample: domain must increase strictly");
    }

    std::size_t size() const { return domain.size(); }
};

using RaySample = RaySampleT<Point>;

struct RayClassification {
    RayClass cls = RayClass::none;
    // Failed consequences of the almost-geodesic property (diagnostic only;
    // empty whenever the verdict is consistent).
    std::vector<std::string> violations;
};

/**
 * Strongest ray class whose defining inequalities hold on the sample for the
 * given (eps, min_time).  rho(p, q) is the metric; the geodesic test is exact
 * up to 1e-9 (integer metrics hit it exactly).  Witness points feed the
 * second weak-geodesic condition.
 */
template <class P, class Rho>
RayClassification classify_ray(const RaySampleT<P>& ray, Rho&& rho, double eps, double min_time,
                               const std::vector<P>& witnesses = {})
{
    ray.validate();
    const auto& t = ray.domain;
    const auto& g = ray.points;
    const std::size_t n = ray.size();

    bool geodesic = true;
    for (std::size_t i = 0; i < n && geodesic; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (std::abs(rho(g[i], g[j]) - (t[j] - t[i])) > 1e-9) {
                geodesic = false;
                break;
            }

    bool almost = true;
    for (std::size_t i = 0; i < n && almost; ++i) {
        if (t[i] < min_time) continue;
        for (std::size_t j = i; j < n; ++j) {
            if (std::abs(rho(g[j], g[i]) + rho(g[i], g[0]) - t[j]) >= eps) {
                almost = false;
                break;
            }
        }
    }

    bool weak = true;
    for (std::size_t i = 0; i < n && weak; ++i) {
        if (t[i] < min_time) continue;
        if (std::abs(rho(g[i], g[0]) - t[i]) >= eps) weak = false;
    }
    for (const P& y : witnesses) {
        if (!weak) break;
        for (std::size_t i = 0; i < n && weak; ++i) {
            if (t[i] < min_time) continue;
            for (std::size_t j = 0; j < n; ++j) {
                if (t[j] < min_time) continue;
                if (std::abs(rho(g[i], y) - rho(g[j], y) - (t[i] - t[j])) >= eps) {
                    weak = false;
                    break;
                }
            }
        }
    }

    RayClassification out;
    if (geodesic)
        out.cls = RayClass::geodesic;
    else if (almost)
        out.cls = RayClass::almost_geodesic;
    else if (weak)
        out.cls = RayClass::weakly_geodesic;
    else
        out.cls = RayClass::none;

    if (out.cls == RayClass::almost_geodesic || out.cls == RayClass::geodesic) {
        // Consequences of the almost-geodesic inequality for the same (eps, N):
        // distance from the base point tracks t, increments track t-s, and the
        // near-additivity estimate holds with margin 2 eps.
        for (std::size_t i = 0; i < n; ++i) {
            if (t[i] < min_time) continue;
            if (std::abs(rho(g[i], g[0]) - t[i]) >= eps)
                out.violations.push_back("base distance drifts from t at t=" + std::to_string(t[i]));
            for (std::size_t j = i; j < n; ++j) {
                if (std::abs(rho(g[j], g[i]) - (t[j] - t[i])) >= 2 * eps)
                    out.violations.push_back("increment drifts from t-s at t=" + std::to_string(t[j]));
                if (!(rho(g[j], g[i]) < rho(g[j], g[0]) - rho(g[i], g[0]) + 2 * eps))
                    out.violations.push_back("near-additivity fails at t=" + std::to_string(t[j]));
            }
        }
    }
    return out;
}

} // namespace horolip
