// ============================================================================
// stackhyper/lasso.hpp — ultimately periodic sequences u·v^ω
// ============================================================================
//
// Every infinite object this project decides questions about is ultimately
// periodic and is carried as a (prefix, period) pair.  Equality of the
// denoted infinite words is tested on the normal form: minimal period,
// maximally rolled-back prefix, period rotated to a canonical phase.
//
// ============================================================================

#ifndef STACKHYPER_LASSO_HPP
#define STACKHYPER_LASSO_HPP

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace stackhyper {

template <typename T>
struct Lasso {
    std::vector<T> prefix;
    std::vector<T> period;  // nonempty for a well-formed lasso

    Lasso() = default;
    Lasso(std::vector<T> u, std::vector<T> v)
        : prefix(std::move(u)), period(std::move(v)) {}

    bool valid() const noexcept { return !period.empty(); }

    // Symbol at absolute position i of u·v^ω.
    const T& at(std::size_t i) const {
        if (i < prefix.size()) return prefix[i];
        return period[(i - prefix.size()) % period.size()];
    }

    std::size_t prefix_len() const noexcept { return prefix.size(); }
    std::size_t period_len() const noexcept { return period.size(); }

    // First n symbols as a flat vector.
    std::vector<T> unroll(std::size_t n) const {
        std::vector<T> out;
        out.reserve(n);
        for (std::size_t i = 0; i < n; ++i) out.push_back(at(i));
        return out;
    }

    // The suffix lasso starting at position i (prefix shrinks, period rotates).
    Lasso suffix(std::size_t i) const {
        Lasso out;
        if (i <= prefix.size()) {
            out.prefix.assign(prefix.begin() + static_cast<std::ptrdiff_t>(i), prefix.end());
            out.period = period;
        } else {
            std::size_t r = (i - prefix.size()) % period.size();
            out.period.reserve(period.size());
            for (std::size_t k = 0; k < period.size(); ++k)
                out.period.push_back(period[(r + k) % period.size()]);
        }
        return out;
    }

    // Reshape to exactly (new_prefix_len, new_period_len); the new period
    // length must be a multiple of a rotation-compatible length, so this is
    // only legal when the denoted word agrees — callers use it to align
    // shapes before zipping (new_prefix_len >= prefix_len, new_period_len a
    // multiple of period_len).
    Lasso reshape(std::size_t new_prefix_len, std::size_t new_period_len) const {
        if (new_prefix_len < prefix.size() || new_period_len % period.size() != 0)
            throw std::invalid_argument("lasso reshape: incompatible shape");
        Lasso out;
        out.prefix.reserve(new_prefix_len);
        for (std::size_t i = 0; i < new_prefix_len; ++i) out.prefix.push_back(at(i));
        out.period.reserve(new_period_len);
        for (std::size_t i = 0; i < new_period_len; ++i) out.period.push_back(at(new_prefix_len + i));
        return out;
    }

    // Normal form: minimal period, then roll the prefix back as far as the
    // word allows.  Two lassos denote the same word iff normal forms match.
    Lasso normalized() const {
        Lasso out = *this;
        // minimal period: smallest divisor d of |v| with v = (v[:d])^k
        for (std::size_t d = 1; d <= out.period.size(); ++d) {
            if (out.period.size() % d != 0) continue;
            bool ok = true;
            for (std::size_t i = d; i < out.period.size() && ok; ++i)
                ok = out.period[i] == out.period[i % d];
            if (ok) {
                out.period.resize(d);
                break;
            }
        }
        // roll back: while the last prefix symbol equals the last period
        // symbol, rotate it into the period
        while (!out.prefix.empty() && out.prefix.back() == out.period.back()) {
            out.prefix.pop_back();
            T last = out.period.back();
            out.period.pop_back();
            out.period.insert(out.period.begin(), last);
        }
        return out;
    }

    bool same_word(const Lasso& o) const {
        Lasso a = normalized();
        Lasso b = o.normalized();
        return a.prefix == b.prefix && a.period == b.period;
    }

    bool operator==(const Lasso& o) const { return prefix == o.prefix && period == o.period; }
};

}  // namespace stackhyper

#endif  // STACKHYPER_LASSO_HPP
