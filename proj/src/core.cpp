#include "dmax/core.hpp"

#include <algorithm>
#include <sstream>

namespace dmax {

int distance(const Word& a, const Word& b) {
    std::size_t len = std::max(a.size(), b.size());
    int d = 0;
    for (std::size_t i = 0; i < len; ++i)
        if (symbol_at(a, i) != symbol_at(b, i)) ++d;
    return d;
}

Word padded(const Word& w, std::size_t length) {
    Word out = w;
    if (out.size() > length) {
        for (std::size_t i = length; i < out.size(); ++i)
            if (out[i] != kPadSymbol)
                throw std::invalid_argument("padded: word does not fit in requested length");
        out.resize(length);
    } else {
        out.resize(length, kPadSymbol);
    }
    return out;
}

std::string word_to_string(const Word& w) {
    std::ostringstream os;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) os << ' ';
        os << int(w[i]);
    }
    return os.str();
}

int Template::weight() const {
    int m = 0;
    for (Symbol e : entries)
        if (e != wildcard) ++m;
    return m;
}

bool Template::is_regular_for(const Word& base) const {
    for (std::size_t i = 0; i < entries.size(); ++i)
        if (entries[i] != wildcard && entries[i] == symbol_at(base, i)) return false;
    return true;
}

bool Template::fits(const Word& a) const {
    for (std::size_t i = 0; i < entries.size(); ++i)
        if (entries[i] != wildcard && symbol_at(a, i) != entries[i]) return false;
    // Beyond the template everything is a wildcard, but the word must not
    // exceed the template's ambient length with non-pad symbols.
    for (std::size_t i = entries.size(); i < a.size(); ++i)
        if (a[i] != kPadSymbol) return false;
    return true;
}

PointSet::PointSet(int alphabet, int dimension) : n_(alphabet), r_(dimension) {
    if (alphabet < 2) throw std::invalid_argument("PointSet: alphabet size must be at least 2");
    if (alphabet > 250) throw std::invalid_argument("PointSet: alphabet size too large");
    if (dimension < 0) throw std::invalid_argument("PointSet: negative dimension");
}

bool PointSet::contains(const Word& w) const {
    return std::binary_search(members_.begin(), members_.end(), w);
}

bool PointSet::insert(Word w) {
    if (w.size() != static_cast<std::size_t>(r_))
        throw std::invalid_argument("PointSet::insert: word length does not match dimension");
    for (Symbol s : w)
        if (s < 1 || s > n_)
            throw std::invalid_argument("PointSet::insert: symbol out of range 1..n");
    auto it = std::lower_bound(members_.begin(), members_.end(), w);
    if (it != members_.end() && *it == w) return false;
    members_.insert(it, std::move(w));
    return true;
}

bool PointSet::operator<(const PointSet& other) const {
    if (r_ != other.r_) return r_ < other.r_;
    if (members_.size() != other.members_.size()) return members_.size() < other.members_.size();
    return members_ < other.members_;
}

int diameter(const PointSet& s) {
    int best = 0;
    const auto& m = s.members();
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = i + 1; j < m.size(); ++j)
            best = std::max(best, distance(m[i], m[j]));
    return best;
}

PointSet filter_by_template(const PointSet& s, const Template& t) {
    if (t.length() != static_cast<std::size_t>(s.dimension()))
        throw std::invalid_argument("filter_by_template: template length does not match dimension");
    PointSet out(s.alphabet(), s.dimension());
    for (const Word& w : s.members())
        if (t.fits(w)) out.insert(w);
    return out;
}

namespace {

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("ball_size: overflow");
    return r;
}

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("ball_size: overflow");
    return r;
}

void enumerate_ball(const Word& center, int radius, int alphabet, std::size_t from, Word& scratch,
                    PointSet& out) {
    out.insert(scratch);
    if (radius == 0) return;
    for (std::size_t i = from; i < scratch.size(); ++i) {
        Symbol original = scratch[i];
        for (Symbol s = 1; s <= alphabet; ++s) {
            if (s == original) continue;
            scratch[i] = s;
            enumerate_ball(center, radius - 1, alphabet, i + 1, scratch, out);
        }
        scratch[i] = original;
    }
}

}  // namespace

PointSet ball(const Word& center, int radius, int alphabet) {
    int r = static_cast<int>(center.size());
    if (radius < 0) throw std::invalid_argument("ball: negative radius");
    if (radius > r) throw std::invalid_argument("ball: radius exceeds dimension");
    PointSet out(alphabet, r);
    Word scratch = center;
    for (Symbol s : center)
        if (s < 1 || s > alphabet) throw std::invalid_argument("ball: center symbol out of range");
    enumerate_ball(center, radius, alphabet, 0, scratch, out);
    return out;
}

std::uint64_t ball_size(int alphabet, int dimension, int radius) {
    if (radius < 0 || radius > dimension) throw std::invalid_argument("ball_size: bad radius");
    std::uint64_t total = 0;
    for (int j = 0; j <= radius; ++j) {
        // C(dimension, j) * (alphabet-1)^j
        std::uint64_t term = 1;
        for (int i = 0; i < j; ++i)
            term = checked_mul(term, static_cast<std::uint64_t>(dimension - i)) / (i + 1);
        for (int i = 0; i < j; ++i) term = checked_mul(term, static_cast<std::uint64_t>(alphabet - 1));
        total = checked_add(total, term);
    }
    return total;
}

PointSet shell(const PointSet& s, const Word& base, int k) {
    PointSet out(s.alphabet(), s.dimension());
    for (const Word& w : s.members())
        if (distance(w, base) == k) out.insert(w);
    return out;
}

bool ball_inside(const PointSet& s, const Word& center, int radius) {
    int r = s.dimension();
    if (radius < 0 || radius > r) return false;
    if (ball_size(s.alphabet(), r, radius) > s.size()) return false;
    bool inside = true;
    PointSet b = ball(padded(center, static_cast<std::size_t>(r)), radius, s.alphabet());
    for (const Word& w : b.members())
        if (!s.contains(w)) {
            inside = false;
            break;
        }
    return inside;
}

bool one_ball_free(const PointSet& s) {
    // A 1-ball inside s has its center in s, so scanning members suffices.
    for (const Word& w : s.members())
        if (ball_inside(s, w, 1)) return false;
    return true;
}

bool ball_absorbed_by(const Word& a, int inner, const Word& b, int alphabet) {
    (void)alphabet;
    int r = static_cast<int>(a.size());
    if (inner + 1 >= r) return true;  // the outer ball is the whole space
    return distance(a, b) <= 1;
}

PointSet core_centers(const PointSet& s, int ell) {
    if (ell < 0) throw std::invalid_argument("core_centers: negative radius");
    int r = s.dimension();
    int n = s.alphabet();
    PointSet out(n, r);
    if (ell > r) return out;

    std::uint64_t full = 1;
    bool full_overflow = false;
    for (int i = 0; i < r; ++i) {
        if (__builtin_mul_overflow(full, static_cast<std::uint64_t>(n), &full)) {
            full_overflow = true;
            break;
        }
    }
    bool s_is_full_space = !full_overflow && s.size() == full;

    for (const Word& a : s.members()) {
        if (!ball_inside(s, a, ell)) continue;
        bool absorbed = false;
        if (ell + 1 <= r) {
            if (ell + 1 == r) {
                // Any (ell+1)-ball is the whole space; it lies inside s only
                // when s is the full space.
                absorbed = s_is_full_space;
            } else {
                // Genuine-ball regime: containment forces dist(a,b) <= 1.
                if (ball_inside(s, a, ell + 1)) absorbed = true;
                if (!absorbed) {
                    for (std::size_t i = 0; i < a.size() && !absorbed; ++i) {
                        Word b = a;
                        for (Symbol sym = 1; sym <= n && !absorbed; ++sym) {
                            if (sym == a[i]) continue;
                            b[i] = sym;
                            if (ball_inside(s, b, ell + 1)) absorbed = true;
                        }
                    }
                }
            }
        }
        if (!absorbed) out.insert(a);
    }
    return out;
}

PointSet lifted_dimension(const PointSet& s, int dimension) {
    if (dimension < s.dimension())
        throw std::invalid_argument("lifted_dimension: cannot shrink dimension");
    PointSet out(s.alphabet(), dimension);
    for (const Word& w : s.members()) out.insert(padded(w, static_cast<std::size_t>(dimension)));
    return out;
}

PointSet lifted_alphabet(const PointSet& s, int alphabet) {
    if (alphabet < s.alphabet())
        throw std::invalid_argument("lifted_alphabet: cannot shrink alphabet");
    PointSet out(alphabet, s.dimension());
    for (const Word& w : s.members()) out.insert(w);
    return out;
}

}  // namespace dmax
