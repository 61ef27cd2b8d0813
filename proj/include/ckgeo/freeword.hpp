#pragma once

// Reduced words in a free group. Letters are nonzero ints: +n is the n-th
// generator, -n its inverse.

#include <algorithm>
#include <compare>
#include <cstdlib>
#include <string>
#include <vector>

#include "ckgeo/errors.hpp"

namespace ckgeo {

class FreeWord {
  public:
    FreeWord() = default;
    FreeWord(std::initializer_list<int> letters) : FreeWord(std::vector<int>(letters)) {}
    explicit FreeWord(std::vector<int> letters) {
        for (int l : letters) push(l);
    }

    const std::vector<int>& letters() const { return letters_; }
    std::size_t length() const { return letters_.size(); }
    bool identity() const { return letters_.empty(); }

    FreeWord operator*(const FreeWord& o) const {
        FreeWord r = *this;
        r.append(o);
        return r;
    }

    // in-place reduced concatenation
    FreeWord& append(const FreeWord& o) {
        for (int l : o.letters_) push(l);
        return *this;
    }

    FreeWord inverse() const {
        FreeWord r;
        for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) r.letters_.push_back(-*it);
        return r;
    }

    FreeWord pow(long n) const {
        FreeWord base = n < 0 ? inverse() : *this;
        long k = std::abs(n);
        FreeWord r;
        while (k-- > 0) r.append(base);
        return r;
    }

    bool operator==(const FreeWord& o) const = default;
    auto operator<=>(const FreeWord& o) const {
        // length-lexicographic, so "shorter" sorts first
        if (auto c = letters_.size() <=> o.letters_.size(); c != 0) return c;
        return letters_ <=> o.letters_;
    }

    std::string str() const {
        std::string s;
        for (int l : letters_) {
            int idx = std::abs(l) - 1;
            char c = idx < 26 ? char('a' + idx) : '?';
            s += c;
            if (l < 0) s += '\'';
        }
        return s.empty() ? "1" : s;
    }

  private:
    void push(int l) {
        if (l == 0) throw Error("FreeWord: zero letter");
        if (!letters_.empty() && letters_.back() == -l) {
            letters_.pop_back();
        } else {
            letters_.push_back(l);
        }
    }

    std::vector<int> letters_;
};

inline FreeWord reduce(const std::vector<int>& letters) { return FreeWord(letters); }

// all reduced words of length <= radius in the rank-k free group, in BFS order
inline std::vector<FreeWord> ball(int rank, int radius) {
    if (rank < 1 || radius < 0) throw InvalidParams("ball: rank >= 1 and radius >= 0 required");
    std::vector<FreeWord> out{FreeWord{}};
    std::size_t level_begin = 0;
    for (int r = 0; r < radius; ++r) {
        std::size_t level_end = out.size();
        for (std::size_t i = level_begin; i < level_end; ++i) {
            for (int g = 1; g <= rank; ++g) {
                for (int s : {g, -g}) {
                    const auto& w = out[i].letters();
                    if (!w.empty() && w.back() == -s) continue;
                    FreeWord next = out[i] * FreeWord{s};
                    out.push_back(std::move(next));
                }
            }
        }
        level_begin = level_end;
    }
    return out;
}

inline FreeWord commutator(const FreeWord& a, const FreeWord& b) {
    return a * b * a.inverse() * b.inverse();
}

}  // namespace ckgeo
