#pragma once

/// Normal subgroups of G_k and the coset structure they induce on the tree.
///
/// Finite index: a subgroup is specified as the kernel of a homomorphism into
/// a finite permutation group (any assignment of involutions to the
/// generators extends to a homomorphism on the free product). Cosets biject
/// with image elements; Q[i][j] counts how many of a vertex's k+1 neighbors
/// land in coset j when the vertex sits in coset i.
///
/// Infinite index: deleting all letters outside a two-element generator set M
/// is a homomorphism onto the infinite dihedral free product; its kernel has
/// cosets indexed by the integers.

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <Eigen/Core>

#include "cayley_spectra/group.hpp"

namespace cayspec {

/// A permutation of {1..m}, stored as 0-based images.
struct Perm {
    std::vector<int> img;

    static Perm identity(int m);
    int degree() const { return static_cast<int>(img.size()); }
    bool is_identity() const;
    /// p(q(.)): apply q first, then p.
    friend Perm compose(const Perm& p, const Perm& q);
    friend bool operator==(const Perm&, const Perm&) = default;
};

struct PermHash {
    std::size_t operator()(const Perm& p) const noexcept;
};

/// Involution check: p composed with itself is the identity (the identity
/// itself qualifies, matching a_i^2 = e).
bool is_involution(const Perm& p);

/// Parse cycle notation on {1..m}: "(1 2)(3 4)", "id". Points may be
/// separated by spaces or commas.
Perm parse_perm(std::string_view text, int m);

/// Render as disjoint cycles, "id" for the identity.
std::string to_string(const Perm& p);

/// A homomorphism G_k -> Sym(m) given by one involutive image per generator.
/// Its kernel is the represented normal subgroup.
struct InvolutiveHom {
    GroupParams params;       // k
    int m = 1;                // permutation degree
    std::vector<Perm> images; // size k+1; images[i-1] is the image of a_i
};

/// Validates sizes and the involution invariant; throws std::invalid_argument.
InvolutiveHom make_hom(GroupParams params, int m, std::vector<Perm> images);

/// Image of a word under the homomorphism.
Perm image_of_word(const InvolutiveHom& hom, const ReducedWord& x);

/// Default cap on the image-closure size (= subgroup index r).
inline constexpr std::size_t kDefaultImageCap = 10'000;

/// Cosets of ker(hom), labeled by image-group elements discovered
/// breadth-first from the identity with generators in ascending index.
/// Coset 0 is the subgroup itself; representatives are shortest words.
struct CosetPartition {
    InvolutiveHom hom;
    int r = 0;                             // subgroup index
    std::vector<Perm> cosets;              // index 0 = identity
    std::vector<ReducedWord> representatives;
    Eigen::MatrixXi transitions;           // r x (k+1): coset after right-multiplying by a_m
    Eigen::MatrixXi Q;                     // r x r neighbor-count matrix
};

/// Enumerate the image subgroup by closure; fills everything except Q.
CosetPartition image_closure(const InvolutiveHom& hom, std::size_t max_index = kDefaultImageCap);

/// Q[i][j] = #{m in 1..k+1 : g_i * phi(a_m) = g_j}. Independent of the coset
/// representative because the kernel is normal.
Eigen::MatrixXi q_matrix(const CosetPartition& p);

/// image_closure followed by q_matrix.
CosetPartition build_partition(const InvolutiveHom& hom, std::size_t max_index = kDefaultImageCap);

/// Coset label of x: the index of phi(x) in p.cosets. coset_of(e) = 0.
int coset_of(const ReducedWord& x, const CosetPartition& p);

/// Neighbor counts of x per coset, computed directly from neighbors(x);
/// equals row coset_of(x) of Q.
Eigen::VectorXi q_vector_of_word(const ReducedWord& x, const CosetPartition& p);

/// Number of nonzero entries of row 0 of Q (the same in every row).
int n_of_partition(const CosetPartition& p);

// --- subgroup catalog ------------------------------------------------------

/// Index-2 subgroup H_A: a_i -> (1 2) for i in A, identity otherwise.
/// Distinct nonempty A give distinct kernels.
InvolutiveHom catalog_h_A(GroupParams params, const std::vector<int>& A);

/// Index-6 subgroup avoiding the element a_i a_j: a_i -> (1 2), a_j -> (2 3),
/// the rest to the identity. The image is the full symmetric group on 3
/// points, and phi(a_i a_j) is a 3-cycle, so a_i a_j is not in the kernel.
InvolutiveHom catalog_h_pair(GroupParams params, int i, int j);

/// Trivial quotient (kernel = G_k, r = 1).
InvolutiveHom catalog_trivial(GroupParams params);

/// Even-length words (r = 2): every generator maps to (1 2).
InvolutiveHom catalog_even(GroupParams params);

/// Index-4 intersection kernel {x : omega_x(a_1) even, omega_x(a_2) even}:
/// a_1 -> (1 2)(3 4), a_2 -> (1 3)(2 4), the rest to the identity.
InvolutiveHom catalog_hcap(GroupParams params);

// --- infinite index --------------------------------------------------------

/// Projection onto the free product of {e, a_m1} and {e, a_m2}; the kernel
/// has infinite index with cosets indexed by the integers.
struct ZProjection {
    GroupParams params;
    int m1 = 1, m2 = 2; // m1 < m2, both in 1..k+1
};

ZProjection make_z_projection(GroupParams params, int m1, int m2);

/// Integer coset label of x: delete letters outside {m1, m2}, reduce; the
/// result is an alternating word of some length L. Returns +L if it starts
/// with a_m1, -L if it starts with a_m2, 0 for e.
int z_coset_index(const ReducedWord& x, const ZProjection& zp);

/// z_coset_index of each of the k+1 neighbors, sorted ascending. Equals
/// {n-1, n (k-1 times), n+1} for n = z_coset_index(x) and k >= 2; {n-1, n+1}
/// in the degenerate chain case k = 1.
std::vector<int> z_neighbor_profile(const ReducedWord& x, const ZProjection& zp);

// --- named subgroup specs --------------------------------------------------

/// Parsed form of a subgroup spec string:
///   "trivial" | "even" | "hA:1,3" | "hpair:1,2" | "hcap" | "zM:1,2"
struct SubgroupSpec {
    std::string name;
    std::variant<InvolutiveHom, ZProjection> value;

    bool is_finite() const { return std::holds_alternative<InvolutiveHom>(value); }
    const InvolutiveHom& hom() const { return std::get<InvolutiveHom>(value); }
    const ZProjection& z_projection() const { return std::get<ZProjection>(value); }
};

/// Throws ConfigError on an unknown name or bad indices.
SubgroupSpec parse_subgroup(std::string_view text, GroupParams params);

} // namespace cayspec
