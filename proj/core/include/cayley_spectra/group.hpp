#pragma once

/// Exact word arithmetic for the free product G_k of k+1 cyclic groups of
/// order two, whose reduced words are in bijection with the vertices of the
/// Cayley tree of order k (every vertex has k+1 neighbors).

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "cayley_spectra/errors.hpp"

namespace cayspec {

/// Tree order. Vertex degree is k+1; generators are indexed 1..k+1.
struct GroupParams {
    int k = 2;

    int degree() const { return k + 1; }
    friend bool operator==(const GroupParams&, const GroupParams&) = default;
};

/// Throws std::invalid_argument unless k >= 1.
void validate(GroupParams params);

/// A group element in normal form: a letter sequence with no two adjacent
/// letters equal. The empty sequence is the identity e. Immutable value type;
/// ordering is short-lex, which coincides with breadth-first enumeration
/// order from e.
class ReducedWord {
public:
    /// The identity element of G_k.
    explicit ReducedWord(GroupParams params);

    GroupParams params() const { return params_; }
    int k() const { return params_.k; }
    const std::vector<int>& letters() const { return letters_; }
    int length() const { return static_cast<int>(letters_.size()); }
    bool is_identity() const { return letters_.empty(); }

    friend bool operator==(const ReducedWord&, const ReducedWord&) = default;
    friend bool operator<(const ReducedWord& a, const ReducedWord& b) {
        if (a.letters_.size() != b.letters_.size())
            return a.letters_.size() < b.letters_.size();
        return a.letters_ < b.letters_;
    }

private:
    friend ReducedWord reduce(std::span<const int>, GroupParams);
    friend ReducedWord multiply(const ReducedWord&, const ReducedWord&);
    friend ReducedWord inverse(const ReducedWord&);

    GroupParams params_;
    std::vector<int> letters_; // reduced, each in 1..k+1
};

struct ReducedWordHash {
    std::size_t operator()(const ReducedWord& w) const noexcept;
};

/// Normal form of an arbitrary letter sequence: adjacent equal pairs cancel
/// iteratively (a_i a_i = e). Letters must lie in 1..k+1.
ReducedWord reduce(std::span<const int> letters, GroupParams params);

/// Reduced concatenation x*y. Both words must share the same k.
ReducedWord multiply(const ReducedWord& x, const ReducedWord& y);

/// In a free product of involutions the inverse is the reversed word.
ReducedWord inverse(const ReducedWord& x);

/// The k+1 neighbors x*a_m of x, m ascending. For x != e exactly one of them
/// is shorter than x.
std::vector<ReducedWord> neighbors(const ReducedWord& x);

/// Number of occurrences of the letter a_i in the reduced word.
int omega_count(const ReducedWord& x, int i);

/// Graph distance d(x, y) = |reduce(x^-1 y)|.
int distance(const ReducedWord& x, const ReducedWord& y);

/// Dot-separated serialization, e.g. [1,2,3] -> "a1.a2.a3"; identity -> "e".
std::string to_string(const ReducedWord& x);

/// Inverse of to_string. Throws std::invalid_argument on malformed input or
/// letters outside 1..k+1; the parsed sequence is reduced if necessary.
ReducedWord parse_word(std::string_view text, GroupParams params);

/// Default cap on ball enumeration (|ball| grows as k^R).
inline constexpr std::size_t kDefaultBallGuard = 1'000'000;

/// All reduced words of length <= radius, enumerated breadth-first from e
/// with generators in ascending index order (short-lex order). Vertices at
/// depth < radius are "interior": all their k+1 neighbors lie in the ball.
class Ball {
public:
    Ball(GroupParams params, int radius, std::size_t max_vertices = kDefaultBallGuard);

    GroupParams params() const { return params_; }
    int radius() const { return radius_; }
    std::size_t size() const { return words_.size(); }
    const std::vector<ReducedWord>& words() const { return words_; }
    const ReducedWord& word(std::size_t i) const { return words_[i]; }

    /// Index in BFS order, or -1 if the word lies outside the ball.
    std::ptrdiff_t index_of(const ReducedWord& w) const;

    /// Parent index (the unique shorter neighbor); -1 for the root e.
    std::ptrdiff_t parent_of(std::size_t i) const { return parent_[i]; }

    /// Children of vertex i occupy a contiguous BFS index range.
    std::size_t child_begin(std::size_t i) const { return child_begin_[i]; }
    std::size_t child_count(std::size_t i) const;

    /// Interior vertices are exactly the BFS prefix of words with length < R.
    bool is_interior(std::size_t i) const { return i < interior_count_; }
    std::size_t interior_count() const { return interior_count_; }

    /// The k+1 neighbor indices of an interior vertex, in generator order.
    std::vector<std::size_t> neighbor_indices(std::size_t i) const;

    /// Total edge count inside the ball (= size() - 1: the ball is a tree).
    std::size_t edge_count() const { return words_.empty() ? 0 : words_.size() - 1; }

private:
    GroupParams params_;
    int radius_ = 0;
    std::size_t interior_count_ = 0;
    std::vector<ReducedWord> words_;
    std::vector<std::ptrdiff_t> parent_;
    std::vector<std::size_t> child_begin_;
    std::unordered_map<ReducedWord, std::size_t, ReducedWordHash> index_;
};

} // namespace cayspec
