#include "cayley_spectra/chain.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace cayspec {

double ChainParams::site_potential(int n) const {
    const int p = static_cast<int>(potential.size());
    int idx = n % p;
    if (idx < 0) idx += p;
    return epsilon * potential[static_cast<std::size_t>(idx)];
}

void validate(const ChainParams& params) {
    validate(params.params);
    if (params.potential.empty())
        throw std::invalid_argument("chain potential must have period >= 1");
    if (!std::isfinite(params.epsilon) || !std::isfinite(params.energy))
        throw std::invalid_argument("chain parameters must be finite");
    for (double v : params.potential)
        if (!std::isfinite(v))
            throw std::invalid_argument("chain potential entries must be finite");
}

namespace {

// b in lambda^2 + b*lambda + 1 = 0.
double quadratic_b(const ChainParams& params) {
    return params.params.k - 1 + params.epsilon * params.potential[0] - params.energy;
}

ChainRegime classify_b(double b) {
    const double a = std::abs(b);
    if (a < 2.0) return ChainRegime::oscillatory;
    if (a == 2.0) return ChainRegime::degenerate;
    return ChainRegime::hyperbolic;
}

// lambda^n by squaring; negative n uses the reciprocal root.
Complex pow_int(Complex base, long long n) {
    if (n < 0) {
        base = 1.0 / base;
        n = -n;
    }
    Complex acc{1.0, 0.0};
    while (n > 0) {
        if (n & 1) acc *= base;
        base *= base;
        n >>= 1;
    }
    return acc;
}

void check_growth(const ChainSolution& sol, IndexRange range) {
    const double abs_n = std::max(std::abs(static_cast<double>(range.lo)),
                                  std::abs(static_cast<double>(range.hi)));
    const double lam = std::max(std::abs(sol.lambda1), std::abs(sol.lambda2));
    const double growth = std::max(lam, lam > 0 ? 1.0 / lam : 0.0);
    const double log_mag = abs_n * std::log(std::max(growth, 1.0)) +
                           std::log(std::max({std::abs(sol.c1), std::abs(sol.c2), 1.0})) +
                           std::log(std::max(abs_n, 1.0));
    if (log_mag > std::log(std::numeric_limits<double>::max()) - 2.0)
        throw OverflowError("general_solution: |lambda|^|n| exceeds floating-point range on [" +
                            std::to_string(range.lo) + ", " + std::to_string(range.hi) + "]");
}

} // namespace

std::pair<Complex, Complex> characteristic_roots(const ChainParams& params) {
    validate(params);
    if (!params.constant_potential())
        throw std::invalid_argument("characteristic_roots: requires a constant potential");
    const double b = quadratic_b(params);
    const double disc = b * b - 4.0;

    Complex l1, l2;
    if (disc > 0.0) {
        // Avoid cancellation: compute the large-magnitude root first, then
        // its exact reciprocal partner (the product of the roots is 1).
        const double s = b >= 0.0 ? 1.0 : -1.0;
        const double big = (-b - s * std::sqrt(disc)) / 2.0;
        l1 = Complex(1.0 / big, 0.0);
        l2 = Complex(big, 0.0);
        if (std::abs(l1) > std::abs(l2)) std::swap(l1, l2);
    } else if (disc == 0.0) {
        l1 = l2 = Complex(-b / 2.0, 0.0);
    } else {
        const double re = -b / 2.0;
        const double im = std::sqrt(-disc) / 2.0;
        l1 = Complex(re, -im); // |l1| = |l2| = 1; order by argument
        l2 = Complex(re, im);
    }
    return {l1, l2};
}

ChainRegime classify(const ChainParams& params) {
    if (!params.constant_potential())
        throw std::invalid_argument("classify: requires a constant potential");
    return classify_b(quadratic_b(params));
}

ChainRegime classify(const ChainSolution& sol) {
    if (sol.degenerate) return ChainRegime::degenerate;
    return std::abs(std::abs(sol.lambda1) - 1.0) < 1e-12 ? ChainRegime::oscillatory
                                                         : ChainRegime::hyperbolic;
}

ChainSolution make_chain_solution(const ChainParams& params, Complex c1, Complex c2) {
    auto [l1, l2] = characteristic_roots(params);
    ChainSolution sol;
    sol.lambda1 = l1;
    sol.lambda2 = l2;
    sol.c1 = c1;
    sol.c2 = c2;
    sol.degenerate = (l1 == l2);
    return sol;
}

std::vector<Complex> general_solution(const ChainSolution& sol, IndexRange range) {
    if (range.lo > range.hi)
        throw std::invalid_argument("general_solution: empty range");
    check_growth(sol, range);

    std::vector<Complex> out;
    out.reserve(static_cast<std::size_t>(range.count()));
    for (int n = range.lo; n <= range.hi; ++n) {
        if (sol.degenerate) {
            out.push_back((sol.c1 + sol.c2 * static_cast<double>(n)) * pow_int(sol.lambda1, n));
        } else {
            out.push_back(sol.c1 * pow_int(sol.lambda1, n) + sol.c2 * pow_int(sol.lambda2, n));
        }
    }
    return out;
}

std::vector<Complex> solve_recurrence(const ChainParams& params, Complex phi0, Complex phi1,
                                      IndexRange range) {
    validate(params);
    if (range.lo > range.hi)
        throw std::invalid_argument("solve_recurrence: empty range");
    if (!range.contains(0) || !range.contains(1))
        throw std::invalid_argument("solve_recurrence: range must contain {0, 1}");

    const double guard = std::numeric_limits<double>::max() / 16.0;
    auto check = [&](Complex value, int n) {
        if (!(std::abs(value.real()) < guard) || !(std::abs(value.imag()) < guard))
            throw OverflowError("solve_recurrence: sequence overflow at n = " + std::to_string(n));
        return value;
    };

    std::vector<Complex> out(static_cast<std::size_t>(range.count()));
    auto at = [&](int n) -> Complex& { return out[static_cast<std::size_t>(n - range.lo)]; };
    at(0) = phi0;
    at(1) = phi1;
    // phi_{n+1} = (E - eps*v_n - k + 1) phi_n - phi_{n-1}
    for (int n = 1; n < range.hi; ++n) {
        const double a = params.energy - params.site_potential(n) - params.params.k + 1;
        at(n + 1) = check(a * at(n) - at(n - 1), n + 1);
    }
    for (int n = 0; n > range.lo; --n) {
        const double a = params.energy - params.site_potential(n) - params.params.k + 1;
        at(n - 1) = check(a * at(n) - at(n + 1), n - 1);
    }
    return out;
}

FitResult fit_coefficients(Complex lambda1, Complex lambda2, Complex phi0, Complex phi1) {
    FitResult fit;
    const double gap = std::abs(lambda1 - lambda2);
    if (lambda1 == lambda2) {
        if (lambda1 == Complex{0.0, 0.0})
            throw std::invalid_argument("fit_coefficients: zero root");
        fit.degenerate = true;
        fit.c1 = phi0;
        fit.c2 = phi1 / lambda1 - phi0;
        return fit;
    }
    fit.ill_conditioned = gap < 1e-8;
    fit.c2 = (phi1 - lambda1 * phi0) / (lambda2 - lambda1);
    fit.c1 = phi0 - fit.c2;
    return fit;
}

bool is_bounded(const ChainSolution& sol) {
    const double tol = 1e-12;
    if (sol.degenerate)
        return std::abs(std::abs(sol.lambda1) - 1.0) < tol && std::abs(sol.c2) < tol;
    const bool on_circle1 = std::abs(std::abs(sol.lambda1) - 1.0) < tol;
    const bool on_circle2 = std::abs(std::abs(sol.lambda2) - 1.0) < tol;
    return (on_circle1 || std::abs(sol.c1) < tol) && (on_circle2 || std::abs(sol.c2) < tol);
}

} // namespace cayspec
