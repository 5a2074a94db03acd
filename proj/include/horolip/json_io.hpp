#pragma once

#include <json.hpp>

#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "horolip/convexgeom.hpp"
#include "horolip/horoboundary.hpp"
#include "horolip/lattice.hpp"
#include "horolip/nctorus.hpp"

namespace horolip {

// Insertion-ordered JSON keeps reports byte-stable for a fixed config.
using Json = nlohmann::ordered_json;

inline Json point_to_json(const Point& p)
{
    Json a = Json::array();
    for (Coord c : p) a.push_back(c);
    return a;
}

inline Point point_from_json(const Json& j)
{
    Point p;
    for (const auto& v : j) p.push_back(v.get<Coord>());
    return p;
}

// {"dim": d, "elements": [[..], ..]}
inline Json to_json(const GeneratingSet& s)
{
    Json j;
    j["dim"] = s.dim();
    Json arr = Json::array();
    for (const Point& p : s.elements()) arr.push_back(point_to_json(p));
    j["elements"] = std::move(arr);
    return j;
}

inline GeneratingSet generating_set_from_json(const Json& j)
{
    int dim = j.at("dim").get<int>();
    std::vector<Point> pts;
    for (const auto& e : j.at("elements")) pts.push_back(point_from_json(e));
    return GeneratingSet(dim, std::move(pts));
}

// {"support": [{"point": [..], "re": r, "im": i}, ..]}
inline Json to_json(const CoefficientFunction& f)
{
    Json j;
    Json arr = Json::array();
    for (const Point& p : f.sorted_support()) {
        Json e;
        e["point"] = point_to_json(p);
        e["re"] = f.at(p).real();
        e["im"] = f.at(p).imag();
        arr.push_back(std::move(e));
    }
    j["support"] = std::move(arr);
    return j;
}

inline CoefficientFunction coefficients_from_json(const Json& j, int dim)
{
    CoefficientFunction f(dim);
    for (const auto& e : j.at("support")) {
        Point p = point_from_json(e.at("point"));
        f.set(p, {e.at("re").get<double>(), e.value("im", 0.0)});
    }
    return f;
}

// {"members": [...], "sigma": ["p/q", ...], "is_facet": b, "index": n, "coset_reps": [...]}
inline Json to_json(const Face& f)
{
    Json j;
    Json members = Json::array();
    for (const Point& p : f.members) members.push_back(point_to_json(p));
    j["members"] = std::move(members);
    Json sigma = Json::array();
    for (const Rat& r : f.sigma) sigma.push_back(rat_to_string(r));
    j["sigma"] = std::move(sigma);
    j["is_facet"] = f.is_facet;
    j["sigma_unique"] = f.sigma_unique;
    j["index"] = f.index;
    Json reps = Json::array();
    for (const Point& p : f.coset_reps) reps.push_back(point_to_json(p));
    j["coset_reps"] = std::move(reps);
    return j;
}

inline Json to_json(const HorofunctionWindow& w)
{
    Json j;
    j["source"] = w.source;
    j["integral"] = w.integral;
    Json pts = Json::array(), vals = Json::array(), stab = Json::array();
    for (const Point& y : w.window) {
        pts.push_back(point_to_json(y));
        vals.push_back(w.value(y));
        stab.push_back(w.is_stabilized(y));
    }
    j["window"] = std::move(pts);
    j["values"] = std::move(vals);
    j["stabilized"] = std::move(stab);
    return j;
}

inline Json to_json(const SeminormEstimate& e)
{
    Json j;
    j["value"] = e.value;
    j["lower_companion"] = e.lower_companion;
    j["upper_companion"] = e.upper_companion;
    j["converged"] = e.converged;
    j["tol"] = e.tol;
    Json tr = Json::array();
    for (const auto& [r, v] : e.trace) {
        Json row;
        row["radius"] = r;
        row["value"] = v;
        tr.push_back(std::move(row));
    }
    j["trace"] = std::move(tr);
    return j;
}

inline Json theta_to_json(const Cocycle& c)
{
    Json rows = Json::array();
    for (const auto& row : c.theta()) {
        Json r = Json::array();
        for (double v : row) r.push_back(v);
        rows.push_back(std::move(r));
    }
    return rows;
}

inline Cocycle cocycle_from_json(const Json& j)
{
    std::vector<std::vector<double>> theta;
    for (const auto& row : j) {
        std::vector<double> r;
        for (const auto& v : row) r.push_back(v.get<double>());
        theta.push_back(std::move(r));
    }
    return Cocycle(std::move(theta));
}

// CSV rows "c1,...,cd,length" for a length table.
inline void write_length_table_csv(std::ostream& os,
                                   const std::unordered_map<Point, long long, PointHash>& table, int dim)
{
    for (int i = 0; i < dim; ++i) os << 'c' << i + 1 << ',';
    os << "length\n";
    std::vector<Point> pts;
    pts.reserve(table.size());
    for (const auto& [p, l] : table) pts.push_back(p);
    std::sort(pts.begin(), pts.end());
    for (const Point& p : pts) {
        for (Coord c : p) os << c << ',';
        os << table.at(p) << '\n';
    }
}

// CSV rows "t,value" for a phi trace along a ray.
inline void write_trace_csv(std::ostream& os, const std::vector<double>& domain,
                            const std::vector<double>& values, const std::string& label)
{
    os << "t," << label << '\n';
    for (std::size_t i = 0; i < domain.size() && i < values.size(); ++i)
        os << domain[i] << ',' << values[i] << '\n';
}

} // namespace horolip
