#pragma once

#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "horolip/ray.hpp"

namespace horolip {

// Letters of F_2: a, b and their inverses A = a^-1, B = b^-1.
inline bool is_f2_letter(char c) { return c == 'a' || c == 'A' || c == 'b' || c == 'B'; }

inline char inverse_letter(char c)
{
    switch (c) {
    case 'a': return 'A';
    case 'A': return 'a';
    case 'b': return 'B';
    case 'B': return 'b';
    }
    throw std::invalid_argument("inverse_letter: not a letter of F_2");
}

/** Reduced word of F_2; the empty word is the identity. */
class ReducedWord {
public:
    ReducedWord() = default;

    explicit ReducedWord(std::string_view s)
    {
        for (char c : s) {
            if (!is_f2_letter(c)) throw std::invalid_argument("ReducedWord: invalid letter");
            if (!w_.empty() && w_.back() == inverse_letter(c))
                throw std::invalid_argument("ReducedWord: word is not reduced");
            w_.push_back(c);
        }
    }

    // Free reduction of an arbitrary letter string.
    static ReducedWord reduce(std::string_view s)
    {
        ReducedWord out;
        for (char c : s) {
            if (!is_f2_letter(c)) throw std::invalid_argument("ReducedWord::reduce: invalid letter");
            if (!out.w_.empty() && out.w_.back() == inverse_letter(c))
                out.w_.pop_back();
            else
                out.w_.push_back(c);
        }
        return out;
    }

    const std::string& str() const { return w_; }
    std::size_t length() const { return w_.size(); }
    bool empty() const { return w_.empty(); }
    char letter(std::size_t i) const { return w_.at(i); }

    ReducedWord prefix(std::size_t n) const { return ReducedWord(std::string_view(w_).substr(0, n)); }

    ReducedWord inverse() const
    {
        ReducedWord out;
        for (auto it = w_.rbegin(); it != w_.rend(); ++it) out.w_.push_back(inverse_letter(*it));
        return out;
    }

    bool operator==(const ReducedWord& o) const { return w_ == o.w_; }
    bool operator<(const ReducedWord& o) const
    {
        if (w_.size() != o.w_.size()) return w_.size() < o.w_.size();
        return w_ < o.w_;
    }

private:
    std::string w_;
};

inline ReducedWord multiply(const ReducedWord& u, const ReducedWord& v)
{
    return ReducedWord::reduce(u.str() + v.str());
}

// Word length for the generating set {a, a^-1, b, b^-1}.
inline long long f2_length(const ReducedWord& w) { return static_cast<long long>(w.length()); }

inline double f2_distance(const ReducedWord& u, const ReducedWord& v)
{
    return static_cast<double>(multiply(u.inverse(), v).length());
}

/**
 * Eventually periodic infinite reduced word head . cycle^infinity.  The
 * representation is canonical: the cycle is primitive and the head is
 * shortest (trailing letters matching the cycle tail are absorbed), so two
 * equal infinite words have equal representations.
 */
class BoundaryWord {
public:
    BoundaryWord(const ReducedWord& head, const ReducedWord& cycle) : head_(head.str()), cycle_(cycle.str())
    {
        if (cycle_.empty()) throw std::invalid_argument("BoundaryWord: empty cycle");
        canonicalize();
        validate();
    }

    // "head|cycle" with both parts over the alphabet aAbB.
    static BoundaryWord parse(std::string_view s)
    {
        auto bar = s.find('|');
        if (bar == std::string_view::npos) throw std::invalid_argument("BoundaryWord: expected head|cycle");
        return BoundaryWord(ReducedWord(s.substr(0, bar)), ReducedWord(s.substr(bar + 1)));
    }

    std::string to_string() const { return head_ + "|" + cycle_; }

    const std::string& head() const { return head_; }
    const std::string& cycle() const { return cycle_; }

    char letter(std::size_t i) const
    {
        if (i < head_.size()) return head_[i];
        return cycle_[(i - head_.size()) % cycle_.size()];
    }

    ReducedWord prefix(std::size_t n) const
    {
        std::string p;
        p.reserve(n);
        for (std::size_t i = 0; i < n; ++i) p.push_back(letter(i));
        return ReducedWord(p);
    }

    // The boundary word with its first k letters removed.
    BoundaryWord shift(std::size_t k) const
    {
        if (k < head_.size()) return BoundaryWord(ReducedWord(std::string_view(head_).substr(k)), ReducedWord(cycle_));
        std::size_t r = (k - head_.size()) % cycle_.size();
        std::string rotated = cycle_.substr(r) + cycle_.substr(0, r);
        return BoundaryWord(ReducedWord(), ReducedWord(rotated));
    }

    bool operator==(const BoundaryWord& o) const { return head_ == o.head_ && cycle_ == o.cycle_; }

private:
    BoundaryWord() = default;

    void canonicalize()
    {
        // primitive cycle
        for (std::size_t d = 1; d <= cycle_.size() / 2; ++d) {
            if (cycle_.size() % d != 0) continue;
            bool period = true;
            for (std::size_t i = d; i < cycle_.size() && period; ++i) period = cycle_[i] == cycle_[i - d];
            if (period) {
                cycle_.resize(d);
                break;
            }
        }
        // shortest head: absorb trailing letters into a rotated cycle
        while (!head_.empty() && head_.back() == cycle_.back()) {
            head_.pop_back();
            cycle_ = cycle_.back() + cycle_.substr(0, cycle_.size() - 1);
        }
    }

    void validate() const
    {
        auto check_reduced = [](const std::string& s) {
            for (std::size_t i = 1; i < s.size(); ++i)
                if (s[i] == inverse_letter(s[i - 1]))
                    throw std::invalid_argument("BoundaryWord: word is not reduced");
        };
        check_reduced(head_);
        check_reduced(cycle_);
        if (!head_.empty() && cycle_.front() == inverse_letter(head_.back()))
            throw std::invalid_argument("BoundaryWord: head/cycle junction cancels");
        if (cycle_.front() == inverse_letter(cycle_.back()))
            throw std::invalid_argument("BoundaryWord: cycle junction cancels");
    }

    std::string head_;
    std::string cycle_;
};

// x . w for a finite reduced x and a boundary word w: cancel the junction,
// then prepend what remains of x.
inline BoundaryWord left_multiply(const ReducedWord& x, const BoundaryWord& w)
{
    std::size_t t = 0;
    while (t < x.length() && x.letter(x.length() - 1 - t) == inverse_letter(w.letter(t))) ++t;
    BoundaryWord shifted = w.shift(t);
    std::string p = x.str().substr(0, x.length() - t);
    return BoundaryWord(ReducedWord(p + shifted.head()), ReducedWord(shifted.cycle()));
}

/**
 * phi_x extended to the boundary: phi of a letter is +1 when the word starts
 * with it and -1 otherwise, and the 1-cocycle identity
 * phi_{s y}(w) = phi_s(w) + phi_y(s^-1 w) peels off letters inductively.
 * Agrees with the prefix limit of l(p_n) - l(x^-1 p_n).
 */
inline long long phi_boundary(const ReducedWord& x, const BoundaryWord& w)
{
    long long acc = 0;
    BoundaryWord v = w;
    for (std::size_t i = 0; i < x.length(); ++i) {
        char s = x.letter(i);
        acc += (v.letter(0) == s) ? 1 : -1;
        v = left_multiply(ReducedWord(std::string(1, inverse_letter(s))), v);
    }
    return acc;
}

// Prefix-limit oracle: the values l(p_n) - l(x^-1 p_n) along prefixes of w.
inline std::vector<long long> prefix_phi_trace(const ReducedWord& x, const BoundaryWord& w, std::size_t n)
{
    std::vector<long long> out;
    out.reserve(n + 1);
    ReducedWord xinv = x.inverse();
    for (std::size_t k = 0; k <= n; ++k) {
        ReducedWord p = w.prefix(k);
        out.push_back(f2_length(p) - f2_length(multiply(xinv, p)));
    }
    return out;
}

struct no_separation_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SeparationWitness {
    ReducedWord prefix;  // common prefix x
    char letter;         // s with (alpha_x phi_s) separating the points
    long long value_v;   // +1
    long long value_w;   // -1
};

/**
 * Separates two distinct boundary words: x is their common prefix and s the
 * first letter where they diverge, so that phi_s(x^-1 v) = 1 while
 * phi_s(x^-1 w) = -1.
 */
inline SeparationWitness separate(const BoundaryWord& v, const BoundaryWord& w)
{
    if (v == w) throw no_separation_error("separate: the boundary words coincide");
    std::size_t bound = v.head().size() + w.head().size() +
                        std::lcm(v.cycle().size(), w.cycle().size()) + 1;
    std::size_t m = 0;
    while (m < bound && v.letter(m) == w.letter(m)) ++m;
    if (m == bound) throw std::logic_error("separate: canonical forms differ but letters agree");
    char s = v.letter(m);
    SeparationWitness out{v.prefix(m), s, 0, 0};
    out.value_v = phi_boundary(ReducedWord(std::string(1, s)), v.shift(m));
    out.value_w = phi_boundary(ReducedWord(std::string(1, s)), w.shift(m));
    return out;
}

// The geodesic ray of prefixes e, w_1, w_1 w_2, ... toward the boundary word.
inline RaySampleT<ReducedWord> prefix_ray(const BoundaryWord& w, std::size_t n)
{
    if (n < 1) throw std::invalid_argument("prefix_ray: need at least one step");
    RaySampleT<ReducedWord> ray;
    ray.label = "prefixes of " + w.to_string();
    for (std::size_t k = 0; k <= n; ++k) {
        ray.domain.push_back(static_cast<double>(k));
        ray.points.push_back(w.prefix(k));
    }
    return ray;
}

inline RayClassification classify_f2_ray(const RaySampleT<ReducedWord>& ray, double eps, double min_time,
                                         const std::vector<ReducedWord>& witnesses = {})
{
    return classify_ray(ray, f2_distance, eps, min_time, witnesses);
}

} // namespace horolip
