#pragma once

// Free-group word algebra. A letter is a nonzero int: +k is the k-th
// generator (1-based), -k its inverse. Words are kept freely reduced by the
// operations below. Conjugacy classes are named by the cyclically reduced,
// lexicographically minimal rotation of a word; inversion is NOT quotiented
// here (gamma and gamma^-1 are distinct classes at this level).

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "gcur/errors.hpp"

namespace gcur {

using Letter = int;
using Word   = std::vector<Letter>;

inline Letter inverse_letter(Letter l) { return -l; }

inline Word inverse_word(const Word& w) {
    Word out;
    out.reserve(w.size());
    for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(-*it);
    return out;
}

// Remove adjacent inverse pairs.
inline Word free_reduce(const Word& w) {
    Word out;
    out.reserve(w.size());
    for (Letter l : w) {
        if (l == 0) fail(errc::domain_error, "zero letter");
        if (!out.empty() && out.back() == -l) out.pop_back();
        else out.push_back(l);
    }
    return out;
}

inline Word concat(const Word& u, const Word& v) {
    Word out = u;
    out.insert(out.end(), v.begin(), v.end());
    return free_reduce(out);
}

// Strip matching inverse ends until the word is cyclically reduced.
inline Word cyclic_reduce(const Word& w0) {
    Word w = free_reduce(w0);
    size_t lo = 0, hi = w.size();
    while (hi - lo >= 2 && w[lo] == -w[hi - 1]) { ++lo; --hi; }
    return Word(w.begin() + lo, w.begin() + hi);
}

// Total order on letters used for canonical rotations: a < a^-1 < b < b^-1 < ...
inline int letter_rank(Letter l) { return 2 * (std::abs(l) - 1) + (l < 0 ? 1 : 0); }

inline bool letter_less(Letter x, Letter y) { return letter_rank(x) < letter_rank(y); }

// Booth's least-rotation algorithm under the letter_rank order.
inline Word min_rotation(const Word& w) {
    size_t n = w.size();
    if (n <= 1) return w;
    auto at = [&](size_t i) { return letter_rank(w[i % n]); };
    std::vector<long> f(2 * n, -1);
    size_t k = 0;
    for (size_t j = 1; j < 2 * n; ++j) {
        int sj = at(j);
        long i = f[j - k - 1];
        while (i != -1 && sj != at(k + static_cast<size_t>(i) + 1)) {
            if (sj < at(k + static_cast<size_t>(i) + 1)) k = j - static_cast<size_t>(i) - 1;
            i = f[static_cast<size_t>(i)];
        }
        if (i == -1 && sj != at(k)) {
            if (sj < at(k)) k = j;
            f[j - k] = -1;
        } else if (i == -1) {
            f[j - k] = 0;
        } else if (sj != at(k + static_cast<size_t>(i) + 1)) {
            f[j - k] = -1;
        } else {
            f[j - k] = i + 1;
        }
    }
    Word out;
    out.reserve(n);
    for (size_t i = 0; i < n; ++i) out.push_back(w[(k + i) % n]);
    return out;
}

struct ConjugacyClass {
    Word canonical;

    friend bool operator==(const ConjugacyClass& a, const ConjugacyClass& b) {
        return a.canonical == b.canonical;
    }
    friend bool operator<(const ConjugacyClass& a, const ConjugacyClass& b) {
        return std::lexicographical_compare(a.canonical.begin(), a.canonical.end(),
                                            b.canonical.begin(), b.canonical.end(), letter_less);
    }
};

// Cyclic reduction followed by the minimal rotation. Errors on words that
// reduce to the empty word.
inline ConjugacyClass canonical(const Word& w) {
    Word cyc = cyclic_reduce(w);
    if (cyc.empty()) fail(errc::trivial_class, "word reduces to the identity");
    return ConjugacyClass{min_rotation(cyc)};
}

inline ConjugacyClass inverse_class(const ConjugacyClass& c) { return canonical(inverse_word(c.canonical)); }

// Canonical name ignoring orientation: min of the class and its inverse.
inline ConjugacyClass unoriented_canonical(const ConjugacyClass& c) {
    ConjugacyClass inv = inverse_class(c);
    return inv < c ? inv : c;
}

// A cyclically reduced word is a proper power iff its minimal period (from
// the KMP failure function) is a strict divisor of its length.
inline bool is_proper_power(const Word& w) {
    size_t n = w.size();
    if (n < 2) return false;
    std::vector<size_t> fail_fn(n, 0);
    for (size_t i = 1; i < n; ++i) {
        size_t j = fail_fn[i - 1];
        while (j > 0 && w[i] != w[j]) j = fail_fn[j - 1];
        if (w[i] == w[j]) ++j;
        fail_fn[i] = j;
    }
    size_t period = n - fail_fn[n - 1];
    return period < n && n % period == 0;
}

// Letters as text: generator k -> 'a'+k-1, inverse -> uppercase.
inline std::string word_to_string(const Word& w) {
    std::string s;
    s.reserve(w.size());
    for (Letter l : w) {
        int idx = std::abs(l) - 1;
        if (idx >= 26) fail(errc::domain_error, "word_to_string supports up to 26 generators");
        s.push_back(static_cast<char>((l > 0 ? 'a' : 'A') + idx));
    }
    return s;
}

inline Word word_from_string(const std::string& s) {
    Word w;
    w.reserve(s.size());
    for (char ch : s) {
        if (ch == ' ' || ch == '\t') continue;
        if (ch >= 'a' && ch <= 'z') w.push_back(ch - 'a' + 1);
        else if (ch >= 'A' && ch <= 'Z') w.push_back(-(ch - 'A' + 1));
        else fail(errc::bad_config, std::string("bad word character '") + ch + "'");
    }
    return w;
}

inline Word word_power(const Word& w, long m) {
    Word base = m >= 0 ? w : inverse_word(w);
    long n = m >= 0 ? m : -m;
    Word out;
    out.reserve(base.size() * static_cast<size_t>(n));
    for (long i = 0; i < n; ++i) out.insert(out.end(), base.begin(), base.end());
    return free_reduce(out);
}

} // namespace gcur
