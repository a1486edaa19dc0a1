#include "cayley_spectra/commands.hpp"

#include <cmath>
#include <cstdio>

#include <nlohmann/json.hpp>

namespace cayspec {

using nlohmann::json;

namespace {

// 17 significant digits round-trips doubles exactly.
std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_report(const json& j) {
    if (!j.is_array() || j.size() != 2)
        throw ConfigError("report: expected [re, im] pair");
    return {j[0].get<double>(), j[1].get<double>()};
}

json matrix_to_json(const Eigen::MatrixXi& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

json hom_to_json(const InvolutiveHom& hom) {
    json images = json::array();
    for (const Perm& p : hom.images) images.push_back(to_string(p));
    return json{{"m", hom.m}, {"images", images}};
}

InvolutiveHom hom_from_report(const json& doc, int k) {
    const json& j = doc.at("hom");
    const int m = j.at("m").get<int>();
    std::vector<Perm> images;
    for (const auto& entry : j.at("images"))
        images.push_back(parse_perm(entry.get<std::string>(), m));
    return make_hom(GroupParams{k}, m, std::move(images));
}

std::vector<double> resolve_potential(const RunConfig& cfg, int r) {
    if (static_cast<int>(cfg.potential.size()) == r) return cfg.potential;
    if (cfg.potential.size() == 1) // constant potential broadcast to every coset
        return std::vector<double>(static_cast<std::size_t>(r), cfg.potential[0]);
    throw ConfigError("potential has " + std::to_string(cfg.potential.size()) +
                      " entries; expected " + std::to_string(r) + " (one per coset) or 1");
}

// The laplacian convention differs from the adjacency form of the vertex
// equation by the shift E -> (k+1) - E together with v -> -v; both
// conventions share eigenvectors/sequences, so all verification runs on the
// adjacency form after this translation.
double to_adjacency_energy(double energy, int k, Convention c) {
    return c == Convention::adjacency ? energy : (k + 1) - energy;
}

std::vector<double> to_adjacency_potential(std::vector<double> v, Convention c) {
    if (c == Convention::laplacian)
        for (double& x : v) x = -x;
    return v;
}

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

constexpr double kEigenResidualTol = 1e-10; // times (1 + |E|)

double verify_tolerance(double energy_adj, double max_abs_phi) {
    return 1e-10 * (1.0 + std::abs(energy_adj)) * std::max(max_abs_phi, 1e-300);
}

} // namespace

CommandResult cmd_partition(const RunConfig& cfg) {
    const SubgroupSpec spec = resolve_subgroup(cfg);
    if (!spec.is_finite())
        throw ConfigError("partition: '" + spec.name +
                          "' has infinite index; use the chain command");
    const CosetPartition p = build_partition(spec.hom(), cfg.image_cap);

    json cosets = json::array();
    for (int i = 0; i < p.r; ++i) {
        cosets.push_back(json{{"index", i},
                              {"representative", to_string(p.representatives[static_cast<std::size_t>(i)])},
                              {"image", to_string(p.cosets[static_cast<std::size_t>(i)])}});
    }
    json q0 = json::array();
    for (int j = 0; j < p.r; ++j) q0.push_back(p.Q(0, j));

    json report{{"command", "partition"},
                {"k", cfg.k},
                {"subgroup", spec.name},
                {"hom", hom_to_json(spec.hom())},
                {"r", p.r},
                {"cosets", cosets},
                {"Q", matrix_to_json(p.Q)},
                {"Q_H0", q0},
                {"N_H0", n_of_partition(p)}};

    std::string csv = "coset,representative";
    for (int j = 0; j < p.r; ++j) csv += ",q_" + std::to_string(j);
    csv += "\n";
    for (int i = 0; i < p.r; ++i) {
        csv += std::to_string(i) + "," + to_string(p.representatives[static_cast<std::size_t>(i)]);
        for (int j = 0; j < p.r; ++j) csv += "," + std::to_string(p.Q(i, j));
        csv += "\n";
    }
    return {dump(report), std::move(csv), 0};
}

CommandResult cmd_spectrum(const RunConfig& cfg) {
    const SubgroupSpec spec = resolve_subgroup(cfg);
    if (!spec.is_finite())
        throw ConfigError("spectrum: '" + spec.name +
                          "' has infinite index; use the chain command");
    const CosetPartition p = build_partition(spec.hom(), cfg.image_cap);
    const std::vector<double> v = resolve_potential(cfg, p.r);

    // Solve in the requested convention; the laplacian matrix is symmetric
    // too, so the same eigensolver path applies.
    const Eigen::MatrixXd qd = p.Q.cast<double>();
    Eigen::MatrixXd matrix =
        cfg.convention == Convention::adjacency
            ? qd
            : Eigen::MatrixXd((cfg.k + 1) * Eigen::MatrixXd::Identity(p.r, p.r) - qd);
    for (int i = 0; i < p.r; ++i)
        matrix(i, i) += cfg.epsilon * v[static_cast<std::size_t>(i)];

    const std::vector<double> d_coeffs = det_poly_of_matrix(matrix);
    const std::vector<SpectralSolution> solutions = eigen_solutions(matrix);

    bool pass = true;
    json solution_rows = json::array();
    for (std::size_t i = 0; i < solutions.size(); ++i) {
        const SpectralSolution& sol = solutions[i];
        const bool ok = sol.residual <= kEigenResidualTol * (1.0 + std::abs(sol.energy));
        pass = pass && ok;
        json components = json::array();
        for (int j = 0; j < sol.components.size(); ++j) components.push_back(sol.components(j));
        solution_rows.push_back(json{{"index", i},
                                     {"energy", sol.energy},
                                     {"multiplicity", sol.multiplicity},
                                     {"components", components},
                                     {"residual", sol.residual},
                                     {"residual_pass", ok}});
    }

    json potential_json = json::array();
    for (double x : v) potential_json.push_back(x);
    json coeff_json = json::array();
    for (double c : d_coeffs) coeff_json.push_back(c);

    json report{{"command", "spectrum"},
                {"k", cfg.k},
                {"subgroup", spec.name},
                {"hom", hom_to_json(spec.hom())},
                {"convention", to_string(cfg.convention)},
                {"r", p.r},
                {"Q", matrix_to_json(p.Q)},
                {"epsilon", cfg.epsilon},
                {"potential", potential_json},
                {"d_coefficients", coeff_json},
                {"solutions", solution_rows},
                {"seed", cfg.seed},
                {"pass", pass}};

    std::string csv = "index,E,multiplicity";
    for (int j = 1; j <= p.r; ++j) csv += ",phi_" + std::to_string(j);
    csv += ",residual\n";
    for (std::size_t i = 0; i < solutions.size(); ++i) {
        const SpectralSolution& sol = solutions[i];
        csv += std::to_string(i) + "," + fmt17(sol.energy) + "," +
               std::to_string(sol.multiplicity);
        for (int j = 0; j < sol.components.size(); ++j) csv += "," + fmt17(sol.components(j));
        csv += "," + fmt17(sol.residual) + "\n";
    }
    return {dump(report), std::move(csv), pass ? 0 : 1};
}

CommandResult cmd_chain(const RunConfig& cfg) {
    const SubgroupSpec spec = resolve_subgroup(cfg);
    if (spec.is_finite())
        throw ConfigError("chain: '" + spec.name +
                          "' has finite index; use the spectrum command");
    if (!cfg.energy)
        throw ConfigError("chain: an energy value is required (--energy)");

    ChainParams params;
    params.params = GroupParams{cfg.k};
    params.epsilon = cfg.epsilon;
    params.potential = to_adjacency_potential(cfg.potential, cfg.convention);
    params.energy = to_adjacency_energy(*cfg.energy, cfg.k, cfg.convention);
    validate(params);

    const IndexRange range{-cfg.radius, cfg.radius};
    json report{{"command", "chain"},
                {"k", cfg.k},
                {"subgroup", spec.name},
                {"convention", to_string(cfg.convention)},
                {"epsilon", cfg.epsilon},
                {"energy", *cfg.energy},
                {"seed", cfg.seed},
                {"range", json{{"lo", range.lo}, {"hi", range.hi}}}};
    json potential_json = json::array();
    for (double x : cfg.potential) potential_json.push_back(x);
    report["potential"] = potential_json;

    std::vector<Complex> sequence;
    if (params.constant_potential()) {
        Complex c1{1.0, 0.0}, c2{0.0, 0.0};
        bool fitted = false, ill_conditioned = false;
        auto [l1, l2] = characteristic_roots(params);
        if (cfg.c1 || cfg.c2) {
            c1 = cfg.c1.value_or(Complex{0.0, 0.0});
            c2 = cfg.c2.value_or(Complex{0.0, 0.0});
        } else if (cfg.phi0 || cfg.phi1) {
            const Complex phi0 = cfg.phi0.value_or(Complex{1.0, 0.0});
            const Complex phi1 = cfg.phi1.value_or(Complex{0.0, 0.0});
            const FitResult fit = fit_coefficients(l1, l2, phi0, phi1);
            c1 = fit.c1;
            c2 = fit.c2;
            fitted = true;
            ill_conditioned = fit.ill_conditioned;
        }
        const ChainSolution sol = make_chain_solution(params, c1, c2);
        sequence = general_solution(sol, range);
        report["mode"] = "closed_form";
        report["lambda1"] = complex_to_json(sol.lambda1);
        report["lambda2"] = complex_to_json(sol.lambda2);
        report["c1"] = complex_to_json(sol.c1);
        report["c2"] = complex_to_json(sol.c2);
        report["degenerate"] = sol.degenerate;
        report["regime"] = classify(sol) == ChainRegime::oscillatory ? "oscillatory"
                           : classify(sol) == ChainRegime::degenerate ? "degenerate"
                                                                      : "hyperbolic";
        report["bounded"] = is_bounded(sol);
        if (fitted) report["fit_ill_conditioned"] = ill_conditioned;
    } else {
        const Complex phi0 = cfg.phi0.value_or(Complex{1.0, 0.0});
        const Complex phi1 = cfg.phi1.value_or(Complex{1.0, 0.0});
        sequence = solve_recurrence(params, phi0, phi1, range);
        report["mode"] = "iterated";
        report["phi0"] = complex_to_json(phi0);
        report["phi1"] = complex_to_json(phi1);
    }

    json seq_json = json::array();
    for (const Complex& z : sequence) seq_json.push_back(complex_to_json(z));
    report["sequence"] = seq_json;

    std::string csv = "n,re_phi,im_phi\n";
    for (int n = range.lo; n <= range.hi; ++n) {
        const Complex z = sequence[static_cast<std::size_t>(n - range.lo)];
        csv += std::to_string(n) + "," + fmt17(z.real()) + "," + fmt17(z.imag()) + "\n";
    }
    return {dump(report), std::move(csv), 0};
}

SpectrumDoc parse_spectrum_report(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("report parse error: ") + e.what());
    }
    try {
        if (doc.at("command").get<std::string>() != "spectrum")
            throw ConfigError("expected a spectrum report");
        SpectrumDoc out;
        out.k = doc.at("k").get<int>();
        out.subgroup = doc.at("subgroup").get<std::string>();
        out.convention = convention_from_string(doc.at("convention").get<std::string>());
        out.partition = build_partition(hom_from_report(doc, out.k));
        out.potential.epsilon = doc.at("epsilon").get<double>();
        for (const auto& x : doc.at("potential")) out.potential.values.push_back(x.get<double>());
        for (const auto& c : doc.at("d_coefficients")) out.d_coefficients.push_back(c.get<double>());
        for (const auto& row : doc.at("solutions")) {
            SpectralSolution sol;
            sol.energy = row.at("energy").get<double>();
            sol.multiplicity = row.at("multiplicity").get<int>();
            sol.residual = row.at("residual").get<double>();
            const auto& comps = row.at("components");
            sol.components.resize(static_cast<Eigen::Index>(comps.size()));
            for (Eigen::Index i = 0; i < sol.components.size(); ++i)
                sol.components(i) = comps[static_cast<std::size_t>(i)].get<double>();
            out.solutions.push_back(std::move(sol));
        }
        if (static_cast<int>(out.potential.values.size()) != out.partition.r)
            throw ConfigError("spectrum report: potential length does not match r");
        return out;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed spectrum report: ") + e.what());
    }
}

ChainDoc parse_chain_report(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("report parse error: ") + e.what());
    }
    try {
        if (doc.at("command").get<std::string>() != "chain")
            throw ConfigError("expected a chain report");
        ChainDoc out;
        out.subgroup = doc.at("subgroup").get<std::string>();
        out.convention = convention_from_string(doc.at("convention").get<std::string>());
        const int k = doc.at("k").get<int>();
        const SubgroupSpec spec = parse_subgroup(out.subgroup, GroupParams{k});
        if (spec.is_finite()) throw ConfigError("chain report: subgroup has finite index");
        out.projection = spec.z_projection();
        out.params.params = GroupParams{k};
        out.params.epsilon = doc.at("epsilon").get<double>();
        for (const auto& x : doc.at("potential")) out.params.potential.push_back(x.get<double>());
        out.params.energy = doc.at("energy").get<double>();
        out.range = IndexRange{doc.at("range").at("lo").get<int>(),
                               doc.at("range").at("hi").get<int>()};
        for (const auto& z : doc.at("sequence")) out.sequence.push_back(complex_from_report(z));
        if (static_cast<int>(out.sequence.size()) != out.range.count())
            throw ConfigError("chain report: sequence length does not match its range");
        out.closed_form = doc.at("mode").get<std::string>() == "closed_form";
        if (out.closed_form) {
            out.solution.lambda1 = complex_from_report(doc.at("lambda1"));
            out.solution.lambda2 = complex_from_report(doc.at("lambda2"));
            out.solution.c1 = complex_from_report(doc.at("c1"));
            out.solution.c2 = complex_from_report(doc.at("c2"));
            out.solution.degenerate = doc.at("degenerate").get<bool>();
        } else {
            out.phi0 = complex_from_report(doc.at("phi0"));
            out.phi1 = complex_from_report(doc.at("phi1"));
        }
        return out;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed chain report: ") + e.what());
    }
}

namespace {

struct VerifyOutcome {
    json rows = json::array();
    double max_residual = 0.0;
    std::string worst_vertex = "e";
    std::size_t interior_count = 0;
    int periodicity_trials = 0;
    bool pass = true;
};

void fold_residual(VerifyOutcome& outcome, const ResidualReport& rep) {
    outcome.interior_count = rep.interior_count;
    if (rep.max_residual > outcome.max_residual) {
        outcome.max_residual = rep.max_residual;
        outcome.worst_vertex = to_string(rep.worst_vertex);
    }
}

json verify_report(const RunConfig& cfg, const std::string& source, const VerifyOutcome& o) {
    return json{{"command", "verify"},
                {"source_command", source},
                {"R", cfg.radius},
                {"interior_count", o.interior_count},
                {"max_residual", o.max_residual},
                {"worst_vertex", o.worst_vertex},
                {"periodicity_trials", o.periodicity_trials},
                {"results", o.rows},
                {"seed", cfg.seed},
                {"pass", o.pass}};
}

} // namespace

CommandResult cmd_verify(const RunConfig& cfg, const std::string& solution_json) {
    json doc;
    try {
        doc = json::parse(solution_json);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("verify: report parse error: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("command"))
        throw ConfigError("verify: input is not a command report");
    const std::string source = doc.at("command").get<std::string>();

    VerifyOutcome outcome;
    if (source == "spectrum") {
        const SpectrumDoc sd = parse_spectrum_report(solution_json);
        PeriodicPotential pot_adj{to_adjacency_potential(sd.potential.values, sd.convention),
                                  sd.potential.epsilon};
        for (std::size_t i = 0; i < sd.solutions.size(); ++i) {
            SpectralSolution sol = sd.solutions[i];
            sol.energy = to_adjacency_energy(sol.energy, sd.k, sd.convention);
            const BallWaveFunction w =
                lift_finite(sd.partition, sol, pot_adj, cfg.radius, cfg.ball_guard);
            const ResidualReport rep = residual(w);
            const double max_phi = sol.components.cwiseAbs().maxCoeff();
            const double tol = verify_tolerance(sol.energy, max_phi);
            const bool residual_ok = rep.max_residual <= tol;
            const PeriodicityReport per =
                check_periodicity(w, sd.partition, cfg.trials, cfg.seed + i);
            fold_residual(outcome, rep);
            outcome.periodicity_trials += per.trials;
            outcome.pass = outcome.pass && residual_ok && per.pass;
            outcome.rows.push_back(json{{"index", i},
                                        {"energy", sd.solutions[i].energy},
                                        {"max_residual", rep.max_residual},
                                        {"worst_vertex", to_string(rep.worst_vertex)},
                                        {"tolerance", tol},
                                        {"residual_pass", residual_ok},
                                        {"periodicity_pass", per.pass}});
        }
    } else if (source == "chain") {
        const ChainDoc cd = parse_chain_report(solution_json);
        ChainParams params = cd.params;
        params.potential = to_adjacency_potential(params.potential, cd.convention);
        params.energy = to_adjacency_energy(params.energy, params.params.k, cd.convention);

        BallWaveFunction w = [&] {
            if (cd.closed_form)
                return lift_chain(cd.projection, params, cd.solution, cfg.radius, cfg.ball_guard);
            const IndexRange range{-cfg.radius, cfg.radius};
            const std::vector<Complex> seq =
                solve_recurrence(params, cd.phi0, cd.phi1, range);
            return lift_chain(cd.projection, params, seq, range, cfg.radius, cfg.ball_guard);
        }();
        const ResidualReport rep = residual(w);
        double max_phi = 0.0;
        for (const Complex& z : w.values) max_phi = std::max(max_phi, std::abs(z));
        const double tol = verify_tolerance(params.energy, max_phi);
        const bool residual_ok = rep.max_residual <= tol;
        const PeriodicityReport per = check_periodicity(w, cd.projection, cfg.trials, cfg.seed);
        fold_residual(outcome, rep);
        outcome.periodicity_trials = per.trials;
        outcome.pass = residual_ok && per.pass;
        outcome.rows.push_back(json{{"index", 0},
                                    {"energy", cd.params.energy},
                                    {"max_residual", rep.max_residual},
                                    {"worst_vertex", to_string(rep.worst_vertex)},
                                    {"tolerance", tol},
                                    {"residual_pass", residual_ok},
                                    {"periodicity_pass", per.pass}});
    } else {
        throw ConfigError("verify: cannot verify a '" + source + "' report");
    }

    const json report = verify_report(cfg, source, outcome);
    return {dump(report), "", outcome.pass ? 0 : 1};
}

} // namespace cayspec
