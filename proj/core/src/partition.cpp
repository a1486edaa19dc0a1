#include "cayley_spectra/partition.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace cayspec {

Perm Perm::identity(int m) {
    Perm p;
    p.img.resize(static_cast<std::size_t>(m));
    std::iota(p.img.begin(), p.img.end(), 0);
    return p;
}

bool Perm::is_identity() const {
    for (int i = 0; i < degree(); ++i)
        if (img[static_cast<std::size_t>(i)] != i) return false;
    return true;
}

Perm compose(const Perm& p, const Perm& q) {
    if (p.degree() != q.degree())
        throw std::invalid_argument("compose: permutation degrees differ");
    Perm out;
    out.img.resize(p.img.size());
    for (std::size_t i = 0; i < q.img.size(); ++i)
        out.img[i] = p.img[static_cast<std::size_t>(q.img[i])];
    return out;
}

std::size_t PermHash::operator()(const Perm& p) const noexcept {
    std::uint64_t h = 14695981039346656037ull;
    for (int v : p.img) {
        h ^= static_cast<std::uint64_t>(v);
        h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
}

bool is_involution(const Perm& p) {
    for (int i = 0; i < p.degree(); ++i)
        if (p.img[static_cast<std::size_t>(p.img[static_cast<std::size_t>(i)])] != i)
            return false;
    return true;
}

Perm parse_perm(std::string_view text, int m) {
    if (m < 1) throw std::invalid_argument("parse_perm: degree must be >= 1");
    Perm p = Perm::identity(m);
    if (text == "id" || text == "e" || text == "()") return p;

    std::size_t pos = 0;
    bool saw_cycle = false;
    auto skip_ws = [&] {
        while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
    };
    skip_ws();
    while (pos < text.size()) {
        if (text[pos] != '(')
            throw std::invalid_argument("parse_perm: expected '(' in '" + std::string(text) + "'");
        ++pos;
        std::vector<int> cycle;
        while (true) {
            skip_ws();
            if (pos < text.size() && text[pos] == ',') { ++pos; continue; }
            if (pos >= text.size())
                throw std::invalid_argument("parse_perm: unterminated cycle in '" + std::string(text) + "'");
            if (text[pos] == ')') { ++pos; break; }
            int value = 0;
            auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + text.size(), value);
            if (ec != std::errc())
                throw std::invalid_argument("parse_perm: bad point in '" + std::string(text) + "'");
            if (value < 1 || value > m)
                throw std::invalid_argument("parse_perm: point " + std::to_string(value) +
                                            " outside 1.." + std::to_string(m));
            cycle.push_back(value - 1);
            pos = static_cast<std::size_t>(ptr - text.data());
        }
        if (cycle.size() > 1) {
            for (std::size_t i = 0; i < cycle.size(); ++i) {
                std::size_t from = static_cast<std::size_t>(cycle[i]);
                if (p.img[from] != static_cast<int>(from))
                    throw std::invalid_argument("parse_perm: repeated point in '" + std::string(text) + "'");
                p.img[from] = cycle[(i + 1) % cycle.size()];
            }
        }
        saw_cycle = true;
        skip_ws();
    }
    if (!saw_cycle)
        throw std::invalid_argument("parse_perm: empty spec '" + std::string(text) + "'");
    return p;
}

std::string to_string(const Perm& p) {
    if (p.is_identity()) return "id";
    std::string out;
    std::vector<bool> seen(p.img.size(), false);
    for (std::size_t start = 0; start < p.img.size(); ++start) {
        if (seen[start] || p.img[start] == static_cast<int>(start)) continue;
        out.push_back('(');
        std::size_t cur = start;
        bool first = true;
        do {
            if (!first) out.push_back(' ');
            out += std::to_string(cur + 1);
            seen[cur] = true;
            cur = static_cast<std::size_t>(p.img[cur]);
            first = false;
        } while (cur != start);
        out.push_back(')');
    }
    return out;
}

InvolutiveHom make_hom(GroupParams params, int m, std::vector<Perm> images) {
    validate(params);
    if (m < 1) throw std::invalid_argument("make_hom: permutation degree must be >= 1");
    if (static_cast<int>(images.size()) != params.degree())
        throw std::invalid_argument("make_hom: expected " + std::to_string(params.degree()) +
                                    " generator images, got " + std::to_string(images.size()));
    for (const Perm& p : images) {
        if (p.degree() != m)
            throw std::invalid_argument("make_hom: image degree mismatch");
        if (!is_involution(p))
            throw std::invalid_argument("make_hom: generator image " + to_string(p) +
                                        " is not an involution");
    }
    return InvolutiveHom{params, m, std::move(images)};
}

Perm image_of_word(const InvolutiveHom& hom, const ReducedWord& x) {
    if (x.params() != hom.params)
        throw std::invalid_argument("image_of_word: word over different group parameters");
    Perm acc = Perm::identity(hom.m);
    for (int letter : x.letters())
        acc = compose(acc, hom.images[static_cast<std::size_t>(letter - 1)]);
    return acc;
}

CosetPartition image_closure(const InvolutiveHom& hom, std::size_t max_index) {
    CosetPartition p;
    p.hom = hom;

    std::unordered_map<Perm, int, PermHash> seen;
    p.cosets.push_back(Perm::identity(hom.m));
    p.representatives.push_back(ReducedWord(hom.params));
    seen.emplace(p.cosets[0], 0);

    std::vector<std::vector<int>> trans; // rows in discovery order
    for (std::size_t i = 0; i < p.cosets.size(); ++i) {
        trans.emplace_back(static_cast<std::size_t>(hom.params.degree()), 0);
        for (int m = 1; m <= hom.params.degree(); ++m) {
            Perm next = compose(p.cosets[i], hom.images[static_cast<std::size_t>(m - 1)]);
            auto it = seen.find(next);
            int target;
            if (it == seen.end()) {
                if (p.cosets.size() >= max_index)
                    throw GuardExceeded("image size cap of " + std::to_string(max_index) + " exceeded");
                target = static_cast<int>(p.cosets.size());
                seen.emplace(next, target);
                p.cosets.push_back(std::move(next));
                const int single[1] = {m};
                p.representatives.push_back(
                    multiply(p.representatives[i], reduce(single, hom.params)));
            } else {
                target = it->second;
            }
            trans[i][static_cast<std::size_t>(m - 1)] = target;
        }
    }

    p.r = static_cast<int>(p.cosets.size());
    p.transitions.resize(p.r, hom.params.degree());
    for (int i = 0; i < p.r; ++i)
        for (int m = 0; m < hom.params.degree(); ++m)
            p.transitions(i, m) = trans[static_cast<std::size_t>(i)][static_cast<std::size_t>(m)];
    return p;
}

Eigen::MatrixXi q_matrix(const CosetPartition& p) {
    Eigen::MatrixXi Q = Eigen::MatrixXi::Zero(p.r, p.r);
    for (int i = 0; i < p.r; ++i)
        for (int m = 0; m < p.hom.params.degree(); ++m)
            Q(i, p.transitions(i, m)) += 1;
    return Q;
}

CosetPartition build_partition(const InvolutiveHom& hom, std::size_t max_index) {
    CosetPartition p = image_closure(hom, max_index);
    p.Q = q_matrix(p);
    return p;
}

int coset_of(const ReducedWord& x, const CosetPartition& p) {
    if (x.params() != p.hom.params)
        throw std::invalid_argument("coset_of: word over different group parameters");
    int label = 0;
    for (int letter : x.letters())
        label = p.transitions(label, letter - 1);
    return label;
}

Eigen::VectorXi q_vector_of_word(const ReducedWord& x, const CosetPartition& p) {
    Eigen::VectorXi counts = Eigen::VectorXi::Zero(p.r);
    for (const ReducedWord& y : neighbors(x))
        counts(coset_of(y, p)) += 1;
    return counts;
}

int n_of_partition(const CosetPartition& p) {
    int n = 0;
    for (int j = 0; j < p.r; ++j)
        if (p.Q(0, j) != 0) ++n;
    return n;
}

InvolutiveHom catalog_trivial(GroupParams params) {
    validate(params);
    std::vector<Perm> images(static_cast<std::size_t>(params.degree()), Perm::identity(1));
    return make_hom(params, 1, std::move(images));
}

InvolutiveHom catalog_h_A(GroupParams params, const std::vector<int>& A) {
    validate(params);
    if (A.empty()) throw std::invalid_argument("catalog_h_A: A must be nonempty");
    Perm swap12 = parse_perm("(1 2)", 2);
    std::vector<Perm> images(static_cast<std::size_t>(params.degree()), Perm::identity(2));
    for (int i : A) {
        if (i < 1 || i > params.degree())
            throw std::invalid_argument("catalog_h_A: index " + std::to_string(i) +
                                        " outside 1.." + std::to_string(params.degree()));
        images[static_cast<std::size_t>(i - 1)] = swap12;
    }
    return make_hom(params, 2, std::move(images));
}

InvolutiveHom catalog_even(GroupParams params) {
    validate(params);
    std::vector<int> all(static_cast<std::size_t>(params.degree()));
    std::iota(all.begin(), all.end(), 1);
    return catalog_h_A(params, all);
}

InvolutiveHom catalog_h_pair(GroupParams params, int i, int j) {
    validate(params);
    if (i == j) throw std::invalid_argument("catalog_h_pair: generator indices must differ");
    if (i < 1 || i > params.degree() || j < 1 || j > params.degree())
        throw std::invalid_argument("catalog_h_pair: generator index outside 1.." +
                                    std::to_string(params.degree()));
    std::vector<Perm> images(static_cast<std::size_t>(params.degree()), Perm::identity(3));
    images[static_cast<std::size_t>(i - 1)] = parse_perm("(1 2)", 3);
    images[static_cast<std::size_t>(j - 1)] = parse_perm("(2 3)", 3);
    return make_hom(params, 3, std::move(images));
}

InvolutiveHom catalog_hcap(GroupParams params) {
    validate(params);
    std::vector<Perm> images(static_cast<std::size_t>(params.degree()), Perm::identity(4));
    images[0] = parse_perm("(1 2)(3 4)", 4);
    images[1] = parse_perm("(1 3)(2 4)", 4);
    return make_hom(params, 4, std::move(images));
}

ZProjection make_z_projection(GroupParams params, int m1, int m2) {
    validate(params);
    if (m1 == m2) throw std::invalid_argument("z projection: the two indices must differ");
    if (m1 > m2) std::swap(m1, m2);
    if (m1 < 1 || m2 > params.degree())
        throw std::invalid_argument("z projection: index outside 1.." +
                                    std::to_string(params.degree()));
    return ZProjection{params, m1, m2};
}

int z_coset_index(const ReducedWord& x, const ZProjection& zp) {
    if (x.params() != zp.params)
        throw std::invalid_argument("z_coset_index: word over different group parameters");
    // Project onto {m1, m2} and reduce; the result alternates.
    std::vector<int> projected;
    for (int letter : x.letters()) {
        if (letter != zp.m1 && letter != zp.m2) continue;
        if (!projected.empty() && projected.back() == letter)
            projected.pop_back();
        else
            projected.push_back(letter);
    }
    if (projected.empty()) return 0;
    const int length = static_cast<int>(projected.size());
    return projected.front() == zp.m1 ? length : -length;
}

std::vector<int> z_neighbor_profile(const ReducedWord& x, const ZProjection& zp) {
    std::vector<int> out;
    for (const ReducedWord& y : neighbors(x))
        out.push_back(z_coset_index(y, zp));
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

std::vector<int> parse_index_list(std::string_view text, GroupParams params,
                                  const std::string& what) {
    std::vector<int> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find(',', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view token = text.substr(pos, end - pos);
        int value = 0;
        auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
        if (ec != std::errc() || ptr != token.data() + token.size())
            throw ConfigError(what + ": bad generator index '" + std::string(token) + "'");
        if (value < 1 || value > params.degree())
            throw ConfigError(what + ": index " + std::to_string(value) + " outside 1.." +
                              std::to_string(params.degree()));
        out.push_back(value);
        if (end == text.size()) break;
        pos = end + 1;
    }
    if (out.empty()) throw ConfigError(what + ": empty index list");
    return out;
}

} // namespace

SubgroupSpec parse_subgroup(std::string_view text, GroupParams params) {
    validate(params);
    std::string name(text);
    if (text == "trivial") return {name, catalog_trivial(params)};
    if (text == "even") return {name, catalog_even(params)};
    if (text == "hcap") return {name, catalog_hcap(params)};
    if (text.starts_with("hA:")) {
        auto A = parse_index_list(text.substr(3), params, "hA");
        return {name, catalog_h_A(params, A)};
    }
    if (text.starts_with("hpair:")) {
        auto ij = parse_index_list(text.substr(6), params, "hpair");
        if (ij.size() != 2 || ij[0] == ij[1])
            throw ConfigError("hpair: expected two distinct indices, got '" + name + "'");
        return {name, catalog_h_pair(params, ij[0], ij[1])};
    }
    if (text.starts_with("zM:")) {
        auto m = parse_index_list(text.substr(3), params, "zM");
        if (m.size() != 2 || m[0] == m[1])
            throw ConfigError("zM: expected two distinct indices, got '" + name + "'");
        return {name, make_z_projection(params, m[0], m[1])};
    }
    throw ConfigError("unknown subgroup spec '" + name + "'");
}

} // namespace cayspec
