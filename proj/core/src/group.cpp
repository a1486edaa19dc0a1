#include "cayley_spectra/group.hpp"

#include <algorithm>
#include <charconv>
#include <stdexcept>

namespace cayspec {

void validate(GroupParams params) {
    if (params.k < 1)
        throw std::invalid_argument("tree order k must be >= 1, got " + std::to_string(params.k));
}

ReducedWord::ReducedWord(GroupParams params) : params_(params) {
    validate(params);
}

std::size_t ReducedWordHash::operator()(const ReducedWord& w) const noexcept {
    // FNV-1a over the letters, seeded with k.
    std::uint64_t h = 14695981039346656037ull ^ static_cast<std::uint64_t>(w.k());
    for (int letter : w.letters()) {
        h ^= static_cast<std::uint64_t>(letter);
        h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
}

ReducedWord reduce(std::span<const int> letters, GroupParams params) {
    validate(params);
    ReducedWord out(params);
    out.letters_.reserve(letters.size());
    for (int letter : letters) {
        if (letter < 1 || letter > params.degree())
            throw std::invalid_argument("generator index " + std::to_string(letter) +
                                        " outside 1.." + std::to_string(params.degree()));
        if (!out.letters_.empty() && out.letters_.back() == letter)
            out.letters_.pop_back(); // a_i a_i = e
        else
            out.letters_.push_back(letter);
    }
    return out;
}

ReducedWord multiply(const ReducedWord& x, const ReducedWord& y) {
    if (x.params() != y.params())
        throw std::invalid_argument("multiply: words over different group parameters");
    ReducedWord out = x;
    for (int letter : y.letters_) {
        if (!out.letters_.empty() && out.letters_.back() == letter)
            out.letters_.pop_back();
        else
            out.letters_.push_back(letter);
    }
    return out;
}

ReducedWord inverse(const ReducedWord& x) {
    ReducedWord out = x;
    std::reverse(out.letters_.begin(), out.letters_.end());
    return out;
}

std::vector<ReducedWord> neighbors(const ReducedWord& x) {
    std::vector<ReducedWord> out;
    out.reserve(static_cast<std::size_t>(x.params().degree()));
    for (int m = 1; m <= x.params().degree(); ++m) {
        const int single[1] = {m};
        out.push_back(multiply(x, reduce(single, x.params())));
    }
    return out;
}

int omega_count(const ReducedWord& x, int i) {
    if (i < 1 || i > x.params().degree())
        throw std::invalid_argument("omega_count: generator index " + std::to_string(i) +
                                    " outside 1.." + std::to_string(x.params().degree()));
    int count = 0;
    for (int letter : x.letters())
        if (letter == i) ++count;
    return count;
}

int distance(const ReducedWord& x, const ReducedWord& y) {
    return multiply(inverse(x), y).length();
}

std::string to_string(const ReducedWord& x) {
    if (x.is_identity()) return "e";
    std::string out;
    for (std::size_t i = 0; i < x.letters().size(); ++i) {
        if (i > 0) out.push_back('.');
        out.push_back('a');
        out += std::to_string(x.letters()[i]);
    }
    return out;
}

ReducedWord parse_word(std::string_view text, GroupParams params) {
    validate(params);
    if (text == "e") return ReducedWord(params);
    if (text.empty()) throw std::invalid_argument("parse_word: empty string (identity is \"e\")");
    std::vector<int> letters;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t end = text.find('.', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view token = text.substr(pos, end - pos);
        if (token.size() < 2 || token[0] != 'a')
            throw std::invalid_argument("parse_word: bad token '" + std::string(token) + "'");
        int value = 0;
        auto [ptr, ec] = std::from_chars(token.data() + 1, token.data() + token.size(), value);
        if (ec != std::errc() || ptr != token.data() + token.size())
            throw std::invalid_argument("parse_word: bad token '" + std::string(token) + "'");
        letters.push_back(value);
        pos = end + 1;
    }
    return reduce(letters, params);
}

Ball::Ball(GroupParams params, int radius, std::size_t max_vertices)
    : params_(params), radius_(radius) {
    validate(params);
    if (radius < 0)
        throw std::invalid_argument("ball radius must be >= 0, got " + std::to_string(radius));

    auto push = [&](ReducedWord w, std::ptrdiff_t parent) {
        if (words_.size() >= max_vertices)
            throw GuardExceeded("ball size cap of " + std::to_string(max_vertices) +
                                " vertices exceeded at radius " + std::to_string(radius));
        index_.emplace(w, words_.size());
        words_.push_back(std::move(w));
        parent_.push_back(parent);
        child_begin_.push_back(0);
    };

    push(ReducedWord(params), -1);
    // BFS by construction emits short-lex order: children in ascending
    // generator index, skipping the letter that would cancel.
    for (std::size_t i = 0; i < words_.size(); ++i) {
        child_begin_[i] = words_.size();
        const ReducedWord& w = words_[i];
        if (w.length() >= radius) continue;
        const int last = w.is_identity() ? 0 : w.letters().back();
        for (int m = 1; m <= params.degree(); ++m) {
            if (m == last) continue;
            ReducedWord child = w;
            const int single[1] = {m};
            child = multiply(child, reduce(single, params));
            push(std::move(child), static_cast<std::ptrdiff_t>(i));
        }
    }
    interior_count_ = 0;
    while (interior_count_ < words_.size() && words_[interior_count_].length() < radius)
        ++interior_count_;
}

std::ptrdiff_t Ball::index_of(const ReducedWord& w) const {
    auto it = index_.find(w);
    return it == index_.end() ? -1 : static_cast<std::ptrdiff_t>(it->second);
}

std::size_t Ball::child_count(std::size_t i) const {
    if (words_[i].length() >= radius_) return 0;
    return i == 0 ? static_cast<std::size_t>(params_.degree())
                  : static_cast<std::size_t>(params_.k);
}

std::vector<std::size_t> Ball::neighbor_indices(std::size_t i) const {
    if (!is_interior(i))
        throw std::invalid_argument("neighbor_indices: vertex " + std::to_string(i) +
                                    " is not interior");
    std::vector<std::size_t> out;
    out.reserve(static_cast<std::size_t>(params_.degree()));
    const ReducedWord& w = words_[i];
    const int last = w.is_identity() ? 0 : w.letters().back();
    std::size_t child = child_begin_[i];
    for (int m = 1; m <= params_.degree(); ++m) {
        if (m == last)
            out.push_back(static_cast<std::size_t>(parent_[i]));
        else
            out.push_back(child++);
    }
    return out;
}

} // namespace cayspec
