#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "horolip/intlattice.hpp"
#include "horolip/point.hpp"

namespace horolip {

struct not_generating_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/**
 * A finite symmetric generating subset S of Z^d.  Construction verifies
 * S = -S, 0 not in S, and that S generates Z^d as a group (Hermite form
 * of the element matrix must have unit diagonal).
 */
class GeneratingSet {
public:
    GeneratingSet(int dim, std::vector<Point> elements) : dim_(dim), elems_(std::move(elements))
    {
        if (dim_ < 1) throw std::invalid_argument("GeneratingSet: dimension must be >= 1");
        for (const Point& p : elems_) {
            if (static_cast<int>(p.size()) != dim_)
                throw std::invalid_argument("GeneratingSet: element dimension mismatch");
            if (is_zero(p)) throw std::invalid_argument("GeneratingSet: 0 must not be an element");
        }
        std::sort(elems_.begin(), elems_.end());
        elems_.erase(std::unique(elems_.begin(), elems_.end()), elems_.end());
        for (const Point& p : elems_)
            if (!std::binary_search(elems_.begin(), elems_.end(), neg(p)))
                throw std::invalid_argument("GeneratingSet: set is not symmetric (S != -S)");
        if (!generates_zd(dim_, elems_))
            throw not_generating_error("GeneratingSet: elements do not generate Z^d");
    }

    int dim() const { return dim_; }
    const std::vector<Point>& elements() const { return elems_; }
    std::size_t size() const { return elems_.size(); }

    Coord max_coord() const
    {
        Coord m = 0;
        for (const Point& s : elems_) m = std::max(m, linf_coord(s));
        return m;
    }

private:
    int dim_;
    std::vector<Point> elems_;
};

/**
 * Word lengths for a generating set, computed by breadth-first search over
 * the Cayley graph and extended on demand.  Levels are exact integers.
 */
class WordLengthTable {
public:
    explicit WordLengthTable(GeneratingSet s) : s_(std::move(s))
    {
        len_.emplace(zero_point(s_.dim()), 0);
        frontier_.push_back(zero_point(s_.dim()));
    }

    const GeneratingSet& generating_set() const { return s_; }
    long long radius() const { return radius_; }

    void extend_to(long long r)
    {
        while (radius_ < r && !frontier_.empty()) extend_one();
    }

    std::optional<long long> lookup(const Point& x) const
    {
        auto it = len_.find(x);
        if (it == len_.end()) return std::nullopt;
        return it->second;
    }

    long long at_or_extend(const Point& x)
    {
        for (;;) {
            if (auto v = lookup(x)) return *v;
            if (frontier_.empty())
                throw std::logic_error("WordLengthTable: BFS exhausted before reaching point");
            extend_one();
        }
    }

    // Makes sure every point of the box [-b, b]^d has a computed length.
    void ensure_box(Coord b)
    {
        std::vector<Point> missing;
        for_each_box_point(s_.dim(), b, [&](const Point& p) {
            if (!len_.count(p)) missing.push_back(p);
        });
        while (!missing.empty()) {
            if (frontier_.empty())
                throw std::logic_error("WordLengthTable: BFS exhausted before covering box");
            extend_one();
            std::erase_if(missing, [&](const Point& p) { return len_.count(p) != 0; });
        }
    }

    const std::unordered_map<Point, long long, PointHash>& table() const { return len_; }

private:
    void extend_one()
    {
        std::vector<Point> next;
        for (const Point& p : frontier_) {
            for (const Point& s : s_.elements()) {
                Point q = add(p, s);
                if (len_.emplace(q, radius_ + 1).second) next.push_back(std::move(q));
            }
        }
        frontier_ = std::move(next);
        ++radius_;
    }

    GeneratingSet s_;
    std::unordered_map<Point, long long, PointHash> len_;
    std::vector<Point> frontier_;
    long long radius_ = 0;
};

// All x with word length <= R, as a closed table.  Errors are raised at
// GeneratingSet construction when S does not generate.
inline std::unordered_map<Point, long long, PointHash> word_length_ball(const GeneratingSet& s,
                                                                        long long radius)
{
    WordLengthTable t(s);
    t.extend_to(radius);
    std::unordered_map<Point, long long, PointHash> out;
    for (const auto& [p, l] : t.table())
        if (l <= radius) out.emplace(p, l);
    return out;
}

/**
 * A length (or translation-bounded) function on Z^d.  Values are memoized
 * where they are expensive; the cache is safe for concurrent readers.
 * Copies share the underlying cache.
 */
class LengthOracle {
public:
    enum class Kind { word, norm_l1, norm_l2, norm_linf, beta, custom, functional };

    static LengthOracle word(GeneratingSet s)
    {
        auto impl = std::make_shared<Impl>(Kind::word, s.dim());
        impl->words.emplace(std::move(s));
        return LengthOracle(std::move(impl));
    }

    static LengthOracle norm_l1(int dim) { return LengthOracle(std::make_shared<Impl>(Kind::norm_l1, dim)); }
    static LengthOracle norm_l2(int dim) { return LengthOracle(std::make_shared<Impl>(Kind::norm_l2, dim)); }
    static LengthOracle norm_linf(int dim) { return LengthOracle(std::make_shared<Impl>(Kind::norm_linf, dim)); }

    // ell_beta(x) = (|x|_1)^beta, the Hoelder snowflake of the standard length.
    static LengthOracle beta(double exponent, int dim = 1)
    {
        if (!(exponent > 0.0) || exponent > 1.0)
            throw std::invalid_argument("LengthOracle::beta: exponent must lie in (0, 1]");
        auto impl = std::make_shared<Impl>(Kind::beta, dim);
        impl->beta_exp = exponent;
        return LengthOracle(std::move(impl));
    }

    static LengthOracle custom(int dim, std::unordered_map<Point, double, PointHash> table)
    {
        auto impl = std::make_shared<Impl>(Kind::custom, dim);
        impl->custom_table = std::move(table);
        return LengthOracle(std::move(impl));
    }

    // Arbitrary evaluator; box_bound(r) must return a half-width b such
    // that the ball {x : value(x) <= r} is contained in [-b, b]^d.
    static LengthOracle functional(int dim, std::string label, std::function<double(const Point&)> fn,
                                   std::function<Coord(double)> box_bound, bool integer_valued,
                                   bool norm_restriction = false,
                                   std::function<double(const std::vector<double>&)> real_fn = {})
    {
        auto impl = std::make_shared<Impl>(Kind::functional, dim);
        impl->label = std::move(label);
        impl->fn = std::move(fn);
        impl->box_bound = std::move(box_bound);
        impl->integral = integer_valued;
        impl->is_norm = norm_restriction;
        impl->real_fn = std::move(real_fn);
        return LengthOracle(std::move(impl));
    }

    // Evaluation of the underlying norm on real vectors (norm-restriction
    // oracles only); used when hunting lattice approximants of linear rays.
    double real_norm(const std::vector<double>& v) const
    {
        if (static_cast<int>(v.size()) != impl_->dim)
            throw std::invalid_argument("LengthOracle::real_norm: dimension mismatch");
        switch (impl_->kind) {
        case Kind::norm_l1: {
            double s = 0;
            for (double c : v) s += std::abs(c);
            return s;
        }
        case Kind::norm_l2: {
            double s = 0;
            for (double c : v) s += c * c;
            return std::sqrt(s);
        }
        case Kind::norm_linf: {
            double s = 0;
            for (double c : v) s = std::max(s, std::abs(c));
            return s;
        }
        case Kind::functional:
            if (impl_->real_fn) return impl_->real_fn(v);
            throw std::logic_error("LengthOracle::real_norm: no real evaluator attached");
        default: throw std::logic_error("LengthOracle::real_norm: not a norm-restriction oracle");
        }
    }

    Kind kind() const { return impl_->kind; }
    int dim() const { return impl_->dim; }
    bool is_word() const { return impl_->kind == Kind::word; }
    bool integer_valued() const { return impl_->kind == Kind::word || impl_->integral; }
    bool is_norm_restriction() const
    {
        return impl_->kind == Kind::norm_l1 || impl_->kind == Kind::norm_l2 ||
               impl_->kind == Kind::norm_linf || (impl_->kind == Kind::functional && impl_->is_norm);
    }

    const GeneratingSet& generating_set() const
    {
        require(impl_->kind == Kind::word, "generating_set: not a word-length oracle");
        return impl_->words->generating_set();
    }

    std::string label() const
    {
        switch (impl_->kind) {
        case Kind::word: return "word";
        case Kind::norm_l1: return "l1";
        case Kind::norm_l2: return "l2";
        case Kind::norm_linf: return "linf";
        case Kind::beta: return "beta(" + std::to_string(impl_->beta_exp) + ")";
        case Kind::custom: return "custom";
        case Kind::functional: return impl_->label;
        }
        return "?";
    }

    double operator()(const Point& x) const
    {
        check_dim(x);
        switch (impl_->kind) {
        case Kind::word: return static_cast<double>(word_length(x));
        case Kind::norm_l1: return static_cast<double>(l1_coord(x));
        case Kind::norm_l2: {
            double s = 0;
            for (Coord c : x) s += static_cast<double>(c) * static_cast<double>(c);
            return std::sqrt(s);
        }
        case Kind::norm_linf: return static_cast<double>(linf_coord(x));
        case Kind::beta: return std::pow(static_cast<double>(l1_coord(x)), impl_->beta_exp);
        case Kind::custom: {
            auto it = impl_->custom_table.find(x);
            if (it == impl_->custom_table.end())
                throw std::out_of_range("LengthOracle: point missing from custom table");
            return it->second;
        }
        case Kind::functional: return cached_fn(x);
        }
        throw std::logic_error("LengthOracle: bad kind");
    }

    long long word_length(const Point& x) const
    {
        require(impl_->kind == Kind::word, "word_length: not a word-length oracle");
        {
            std::shared_lock lock(impl_->mu);
            if (auto v = impl_->words->lookup(x)) return *v;
        }
        std::unique_lock lock(impl_->mu);
        return impl_->words->at_or_extend(x);
    }

    // phi_y(x) = l(x) - l(x - y); bounded by l(y) for length functions.
    double phi(const Point& y, const Point& x) const
    {
        if (impl_->kind == Kind::word) return static_cast<double>(phi_int(y, x));
        return (*this)(x) - (*this)(sub(x, y));
    }

    long long phi_int(const Point& y, const Point& x) const
    {
        require(impl_->kind == Kind::word, "phi_int: not a word-length oracle");
        return word_length(x) - word_length(sub(x, y));
    }

    // Precompute lengths over a box (word kind; no-op otherwise).
    void ensure_box(Coord b) const
    {
        if (impl_->kind != Kind::word) return;
        std::unique_lock lock(impl_->mu);
        impl_->words->ensure_box(b);
    }

    // The finite ball {x : l(x) <= r}.
    std::vector<Point> ball(double r) const
    {
        std::vector<Point> out;
        if (impl_->kind == Kind::word) {
            long long rr = static_cast<long long>(std::floor(r + 1e-12));
            std::unique_lock lock(impl_->mu);
            impl_->words->extend_to(rr);
            for (const auto& [p, l] : impl_->words->table())
                if (l <= rr) out.push_back(p);
        } else if (impl_->kind == Kind::custom) {
            for (const auto& [p, v] : impl_->custom_table)
                if (v <= r + 1e-12) out.push_back(p);
        } else {
            Coord b = box_half_width(r);
            for_each_box_point(impl_->dim, b, [&](const Point& p) {
                if ((*this)(p) <= r + 1e-12) out.push_back(p);
            });
        }
        std::sort(out.begin(), out.end());
        return out;
    }

private:
    struct Impl {
        Impl(Kind k, int d) : kind(k), dim(d) {}
        Kind kind;
        int dim;
        double beta_exp = 1.0;
        std::optional<WordLengthTable> words;
        std::unordered_map<Point, double, PointHash> custom_table;
        std::string label;
        std::function<double(const Point&)> fn;
        std::function<Coord(double)> box_bound;
        std::function<double(const std::vector<double>&)> real_fn;
        bool integral = false;
        bool is_norm = false;
        mutable std::shared_mutex mu;
        mutable std::unordered_map<Point, double, PointHash> fn_cache;
    };

    explicit LengthOracle(std::shared_ptr<Impl> impl) : impl_(std::move(impl)) {}

    static void require(bool ok, const char* msg)
    {
        if (!ok) throw std::logic_error(std::string("LengthOracle::") + msg);
    }

    void check_dim(const Point& x) const
    {
        if (static_cast<int>(x.size()) != impl_->dim)
            throw std::invalid_argument("LengthOracle: point dimension mismatch");
    }

    double cached_fn(const Point& x) const
    {
        {
            std::shared_lock lock(impl_->mu);
            auto it = impl_->fn_cache.find(x);
            if (it != impl_->fn_cache.end()) return it->second;
        }
        double v = impl_->fn(x);
        std::unique_lock lock(impl_->mu);
        impl_->fn_cache.emplace(x, v);
        return v;
    }

    Coord box_half_width(double r) const
    {
        switch (impl_->kind) {
        case Kind::norm_l1:
        case Kind::norm_l2:
        case Kind::norm_linf: return static_cast<Coord>(std::floor(r + 1e-12));
        case Kind::beta: return static_cast<Coord>(std::floor(std::pow(r + 1e-12, 1.0 / impl_->beta_exp)));
        case Kind::functional:
            if (!impl_->box_bound) throw std::logic_error("LengthOracle: functional oracle lacks box bound");
            return impl_->box_bound(r);
        default: throw std::logic_error("LengthOracle: no box bound for kind");
        }
    }

    std::shared_ptr<Impl> impl_;
};

// Sum-of-lengths oracle on Z^{d1+d2}; the metric-compactification of the
// sum metric is the product of the factor compactifications.
inline LengthOracle sum_oracle(const LengthOracle& lx, const LengthOracle& ly)
{
    int d1 = lx.dim(), d2 = ly.dim();
    bool integral = lx.integer_valued() && ly.integer_valued();
    auto split = [d1, d2](const Point& p) {
        Point a(p.begin(), p.begin() + d1);
        Point b(p.begin() + d1, p.begin() + d1 + d2);
        return std::pair{a, b};
    };
    auto fn = [lx, ly, split](const Point& p) {
        auto [a, b] = split(p);
        return lx(a) + ly(b);
    };
    // Each summand is a length function, so l(x) <= r forces both factor
    // lengths <= r; factor balls bound the box.
    auto bound = [lx, ly](double r) -> Coord {
        Coord m = 1;
        for (const Point& p : lx.ball(r)) m = std::max(m, linf_coord(p));
        for (const Point& p : ly.ball(r)) m = std::max(m, linf_coord(p));
        return m;
    };
    return LengthOracle::functional(d1 + d2, "sum(" + lx.label() + "," + ly.label() + ")", fn, bound, integral,
                                    lx.is_norm_restriction() && ly.is_norm_restriction());
}

struct TranslationBound {
    double value;        // sup over the searched ball of |phi_y|
    double ball_radius;  // radius actually searched
    bool exact;          // true when the ball contains a maximizing witness (x = y)
};

// l^omega(y) = sup_x |phi_y(x)|, approximated over the ball of radius r.
// For a length function the sup equals l(y) and is attained at x = y.
inline TranslationBound translation_bound(const LengthOracle& l, const Point& y, double r)
{
    double best = 0.0;
    bool witness = false;
    for (const Point& x : l.ball(r)) {
        best = std::max(best, std::abs(l.phi(y, x)));
        if (x == y) witness = true;
    }
    return TranslationBound{best, r, witness};
}

// Self-test of the 1-cocycle identity phi_{y+z}(x) = phi_y(x) + phi_z(x-y)
// over the ball of radius r.  Exact in integer arithmetic for word lengths.
inline bool cocycle_identity_check(const LengthOracle& l, const Point& y, const Point& z, double r)
{
    Point yz = add(y, z);
    for (const Point& x : l.ball(r)) {
        if (l.is_word()) {
            if (l.phi_int(yz, x) != l.phi_int(y, x) + l.phi_int(z, sub(x, y))) return false;
        } else {
            if (std::abs(l.phi(yz, x) - (l.phi(y, x) + l.phi(z, sub(x, y)))) > 1e-12) return false;
        }
    }
    return true;
}

/**
 * Finitely supported complex coefficient function on Z^d.  Off-support
 * evaluation is 0; zero values are pruned from the support.
 */
class CoefficientFunction {
public:
    using Complex = std::complex<double>;

    explicit CoefficientFunction(int dim) : dim_(dim)
    {
        if (dim < 1) throw std::invalid_argument("CoefficientFunction: dimension must be >= 1");
    }

    int dim() const { return dim_; }
    bool empty() const { return vals_.empty(); }
    std::size_t support_size() const { return vals_.size(); }

    void set(const Point& x, Complex v)
    {
        if (static_cast<int>(x.size()) != dim_)
            throw std::invalid_argument("CoefficientFunction: point dimension mismatch");
        if (v == Complex{0.0, 0.0})
            vals_.erase(x);
        else
            vals_[x] = v;
    }

    Complex at(const Point& x) const
    {
        auto it = vals_.find(x);
        return it == vals_.end() ? Complex{0.0, 0.0} : it->second;
    }

    const std::unordered_map<Point, Complex, PointHash>& values() const { return vals_; }

    Coord support_linf_radius() const
    {
        Coord m = 0;
        for (const auto& [p, v] : vals_) m = std::max(m, linf_coord(p));
        return m;
    }

    // Support points in a deterministic (lexicographic) order.
    std::vector<Point> sorted_support() const
    {
        std::vector<Point> pts;
        pts.reserve(vals_.size());
        for (const auto& [p, v] : vals_) pts.push_back(p);
        std::sort(pts.begin(), pts.end());
        return pts;
    }

    static CoefficientFunction delta(const Point& x, Complex v = {1.0, 0.0})
    {
        CoefficientFunction f(static_cast<int>(x.size()));
        f.set(x, v);
        return f;
    }

private:
    int dim_;
    std::unordered_map<Point, Complex, PointHash> vals_;
};

// ||f||_{p,k} = (sum (|f(x)|(1+l(x))^k)^p)^{1/p}
inline double pk_norm(const CoefficientFunction& f, double p, double k, const LengthOracle& l)
{
    if (p < 1.0) throw std::invalid_argument("pk_norm: p must be >= 1");
    if (k < 0.0) throw std::invalid_argument("pk_norm: k must be >= 0");
    double acc = 0.0;
    for (const auto& [x, v] : f.values()) acc += std::pow(std::abs(v) * std::pow(1.0 + l(x), k), p);
    return std::pow(acc, 1.0 / p);
}

// L(f) = || omega |f| ||_1 = sum omega(x) |f(x)|; vanishes exactly on
// multiples of delta_0 when omega > 0 off 0.
inline double order_lipnorm(const CoefficientFunction& f, const LengthOracle& omega)
{
    double acc = 0.0;
    for (const auto& [x, v] : f.values()) acc += omega(x) * std::abs(v);
    return acc;
}

} // namespace horolip
