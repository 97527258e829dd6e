#include "qrl/claims.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>
#include <string>

#include "qrl/analysis.hpp"
#include "qrl/circuit.hpp"
#include "qrl/density.hpp"
#include "qrl/errors.hpp"
#include "qrl/gates.hpp"
#include "qrl/protocols.hpp"
#include "qrl/report_io.hpp"
#include "qrl/rng.hpp"
#include "qrl/runner.hpp"
#include "qrl/state.hpp"
#include "qrl/tolerances.hpp"

namespace qrl {
namespace {

using Digits = std::vector<std::size_t>;

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}

std::string num12(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

void bound_check(ClaimGroup& g, const std::string& name, double measured, double bound) {
    g.checks.push_back({name, measured <= bound,
                        "max deviation " + num(measured) + " (tolerance " + num(bound) + ")"});
}

void floor_check(ClaimGroup& g, const std::string& name, double measured, double floor_value) {
    g.checks.push_back({name, measured >= floor_value,
                        "minimum " + num12(measured) + " (floor " + num12(floor_value) + ")"});
}

void flag_check(ClaimGroup& g, const std::string& name, bool ok, std::string detail) {
    g.checks.push_back({name, ok, std::move(detail)});
}

struct Term {
    Digits digits;
    Cx coef;
};

PureState term_state(const SystemLayout& layout, const std::vector<Term>& terms) {
    std::vector<Cx> amps(layout.total_dimension(), Cx{});
    for (const Term& t : terms) amps[layout.index_from_digits(t.digits)] += t.coef;
    return PureState(layout, std::move(amps));
}

double max_diff(const PureState& a, const PureState& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.dimension(); ++i) {
        worst = std::max(worst, std::abs(a.amplitude(i) - b.amplitude(i)));
    }
    return worst;
}

std::size_t md(long long x, std::size_t dim) {
    const long long d = static_cast<long long>(dim);
    return static_cast<std::size_t>(((x % d) + d) % d);
}

std::size_t md3(std::size_t a, std::size_t b, std::size_t dim, std::size_t times) {
    return md(static_cast<long long>(a) - static_cast<long long>(times * b), dim);
}

std::vector<Cx> ones(std::size_t n) { return std::vector<Cx>(n, Cx(1.0, 0.0)); }

// Uniform over valid single-qubit density operators: Bloch vector with
// random direction and cube-root radial law.
DensityOperator random_qubit_density(Rng& rng, double max_radius = 1.0) {
    double x = rng.gaussian();
    double y = rng.gaussian();
    double z = rng.gaussian();
    double len = std::sqrt(x * x + y * y + z * z);
    if (len < 1e-12) {
        x = 1.0;
        y = 0.0;
        z = 0.0;
        len = 1.0;
    }
    const double r = max_radius * std::cbrt(rng.uniform()) / len;
    x *= r;
    y *= r;
    z *= r;
    return DensityOperator::qubit(0.5 * (1.0 + z), Cx(0.5 * x, -0.5 * y));
}

void claim_single_qubit_learning(const ClaimOptions&, ClaimGroup& g) {
    const Scenario sc = build_single_qubit();
    double min_f = 1.0;
    double min_a = 1.0;
    double prob_dev = 0.0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        Rng rng(seed);
        const ExecutionTrace trace = run(sc.circuit, random_input(sc, rng));
        double total = 0.0;
        for (const TraceLeaf& leaf : trace.leaves) {
            total += leaf.probability;
            min_f = std::min(min_f,
                             learning_fidelity(leaf.state, sc.agent_subsystems, sc.env_subsystems));
            min_a = std::min(min_a,
                             basis_agreement(leaf.state, sc.agent_subsystems, sc.env_subsystems));
        }
        prob_dev = std::max(prob_dev, std::abs(total - 1.0));
    }
    floor_check(g, "branch fidelity over 100 random trials", min_f, 1.0 - tol::fidelity);
    floor_check(g, "branch agreement over 100 random trials", min_a, 1.0 - tol::fidelity);
    bound_check(g, "branch probabilities sum to one", prob_dev, tol::measure);
}

void claim_final_states(const ClaimOptions&, ClaimGroup& g) {
    Rng rng(20250301);

    {
        const Scenario sc = build_single_qubit();
        const auto a = random_block(2, rng);
        const auto e = random_block(2, rng);
        const PureState got = run_gates(sc.circuit, explicit_input(sc, a, e));
        std::vector<Term> terms;
        for (std::size_t n = 0; n < 2; ++n) {
            for (std::size_t m = 0; m < 2; ++m) {
                terms.push_back({{m, m, n ^ m, n}, a[n] * e[m]});
            }
        }
        bound_check(g, "single-qubit final state", max_diff(got, term_state(sc.circuit.layout, terms)),
                    tol::state);
    }

    {
        const Scenario sc = build_multiqubit(2);
        const auto a = random_block(4, rng);
        const auto e = random_block(4, rng);
        const PureState got = run_gates(sc.circuit, explicit_input(sc, a, e));
        std::vector<Term> terms;
        for (std::size_t n = 0; n < 2; ++n)
            for (std::size_t m = 0; m < 2; ++m)
                for (std::size_t p = 0; p < 2; ++p)
                    for (std::size_t q = 0; q < 2; ++q) {
                        terms.push_back({{p, q, p, q, n ^ p, m ^ q, n, m},
                                         a[2 * n + m] * e[2 * p + q]});
                    }
        bound_check(g, "two-copy qubit final state",
                    max_diff(got, term_state(sc.circuit.layout, terms)), tol::state);
    }

    {
        double worst = 0.0;
        for (const int di : {2, 3, 5, 7}) {
            const std::size_t d = static_cast<std::size_t>(di);
            const Scenario sc = build_qudit(d);
            const auto a = random_block(d, rng);
            const auto e = random_block(d, rng);
            const PureState got = run_gates(sc.circuit, explicit_input(sc, a, e));
            std::vector<Term> terms;
            for (std::size_t n = 0; n < d; ++n) {
                for (std::size_t m = 0; m < d; ++m) {
                    terms.push_back({{m, m, md3(n, m, d, 1), md3(n, m, d, 2)}, a[n] * e[m]});
                }
            }
            worst = std::max(worst, max_diff(got, term_state(sc.circuit.layout, terms)));
        }
        bound_check(g, "qudit final state, dimensions 2/3/5/7", worst, tol::state);
    }

    {
        // Frozen outcome table for dimension 4:
        // (agent in, env in) -> (agent, env, register 1, register 2)
        static constexpr std::size_t kTable[16][6] = {
            {0, 0, 0, 0, 0, 0}, {0, 1, 1, 1, 3, 2}, {0, 2, 2, 2, 2, 0}, {0, 3, 3, 3, 1, 2},
            {1, 0, 0, 0, 1, 1}, {1, 1, 1, 1, 0, 3}, {1, 2, 2, 2, 3, 1}, {1, 3, 3, 3, 2, 3},
            {2, 0, 0, 0, 2, 2}, {2, 1, 1, 1, 1, 0}, {2, 2, 2, 2, 0, 2}, {2, 3, 3, 3, 3, 0},
            {3, 0, 0, 0, 3, 3}, {3, 1, 1, 1, 2, 1}, {3, 2, 2, 2, 1, 3}, {3, 3, 3, 3, 0, 1},
        };
        const Scenario sc = build_qudit(4);
        const auto a = random_block(4, rng);
        const auto e = random_block(4, rng);
        const PureState got = run_gates(sc.circuit, explicit_input(sc, a, e));
        std::vector<Term> terms;
        for (const auto& row : kTable) {
            terms.push_back({{row[2], row[3], row[4], row[5]}, a[row[0]] * e[row[1]]});
        }
        bound_check(g, "dimension-4 frozen outcome table",
                    max_diff(got, term_state(sc.circuit.layout, terms)), tol::state);
    }

    {
        const Scenario sc = build_multiqudit(2, 4);
        const auto a = random_block(16, rng);
        const auto e = random_block(16, rng);
        const PureState input = explicit_input(sc, a, e);
        const PureState mid = run_gates(sc.circuit, input, 8);
        const PureState fin = run_gates(sc.circuit, input);
        std::vector<Term> mid_terms;
        std::vector<Term> fin_terms;
        for (std::size_t n = 0; n < 4; ++n)
            for (std::size_t m = 0; m < 4; ++m)
                for (std::size_t p = 0; p < 4; ++p)
                    for (std::size_t q = 0; q < 4; ++q) {
                        const Cx c = a[4 * n + m] * e[4 * p + q];
                        const std::size_t r1 = md3(n, p, 4, 1);
                        const std::size_t r2 = md3(m, q, 4, 1);
                        const std::size_t r3 = md3(n, p, 4, 2);
                        const std::size_t r4 = md3(m, q, 4, 2);
                        mid_terms.push_back({{n, m, p, q, r1, r2, r3, r4}, c});
                        fin_terms.push_back({{p, q, p, q, r1, r2, r3, r4}, c});
                    }
        bound_check(g, "two-copy qudit state after the copy stage",
                    max_diff(mid, term_state(sc.circuit.layout, mid_terms)), tol::state);
        bound_check(g, "two-copy qudit final state",
                    max_diff(fin, term_state(sc.circuit.layout, fin_terms)), tol::state);
    }

    {
        Rng local(42);
        const Scenario q2 = build_qudit(2);
        const Scenario sq = build_single_qubit();
        const auto a2 = random_block(2, local);
        const auto e2 = random_block(2, local);
        double dev = max_diff(run_gates(q2.circuit, explicit_input(q2, a2, e2)),
                              run_gates(sq.circuit, explicit_input(sq, a2, e2)));
        const Scenario m1 = build_multiqudit(1, 5);
        const Scenario q5 = build_qudit(5);
        const auto a5 = random_block(5, local);
        const auto e5 = random_block(5, local);
        dev = std::max(dev, max_diff(run_gates(m1.circuit, explicit_input(m1, a5, e5)),
                                     run_gates(q5.circuit, explicit_input(q5, a5, e5))));
        bound_check(g, "dimension-2 and one-copy reductions", dev, tol::state);
    }

    {
        const Scenario sc = build_larger_env_feedback();
        const auto a = random_block(2, rng);
        const auto e = random_block(4, rng);
        const PureState input = explicit_input(sc, a, e);
        Circuit first_stage = sc.circuit;
        first_stage.steps.resize(4);
        Circuit reward_stage = sc.circuit;
        reward_stage.steps.resize(6);
        const ExecutionTrace first = run(first_stage, input);
        const ExecutionTrace reward = run(reward_stage, input);
        double dev = 0.0;
        double prob_dev = 0.0;
        bool shape = first.leaves.size() == 4 && reward.leaves.size() == 4;
        if (shape) {
            for (std::size_t r1 = 0; r1 < 2; ++r1) {
                for (std::size_t r2 = 0; r2 < 2; ++r2) {
                    const std::size_t k = 2 * r1 + r2;
                    std::vector<Term> before;
                    std::vector<Term> after;
                    double p = 0.0;
                    for (std::size_t aa = 0; aa < 2; ++aa) {
                        const Cx c = a[aa] * e[2 * (aa ^ r1) + r2];
                        p += std::norm(c);
                        before.push_back({{aa, aa ^ r1, r2, r1, r2}, c});
                        after.push_back({{aa ^ r1, aa ^ r1, r2, aa, r2}, c});
                    }
                    dev = std::max(dev, max_diff(first.leaves[k].state,
                                                 term_state(sc.circuit.layout, before)));
                    dev = std::max(dev, max_diff(reward.leaves[k].state,
                                                 term_state(sc.circuit.layout, after)));
                    prob_dev = std::max(prob_dev, std::abs(first.leaves[k].probability - p));
                    prob_dev = std::max(prob_dev, std::abs(reward.leaves[k].probability - p));
                }
            }
        }
        flag_check(g, "feedback run splits into four branches", shape,
                   std::to_string(first.leaves.size()) + " branches");
        bound_check(g, "feedback branch states before and after the reward", dev, tol::state);
        bound_check(g, "feedback branch probabilities", prob_dev, tol::measure);
    }

    {
        const Scenario sc = build_larger_env_register_rich();
        const auto a = random_block(2, rng);
        const auto e = random_block(4, rng);
        const PureState got = run_gates(sc.circuit, explicit_input(sc, a, e));
        std::vector<Term> terms;
        for (std::size_t aa = 0; aa < 2; ++aa)
            for (std::size_t e1 = 0; e1 < 2; ++e1)
                for (std::size_t e2 = 0; e2 < 2; ++e2) {
                    terms.push_back({{e1, e1, e2, e1 ^ aa, e2, e1, e2}, a[aa] * e[2 * e1 + e2]});
                }
        bound_check(g, "register-rich final state",
                    max_diff(got, term_state(sc.circuit.layout, terms)), tol::state);
    }

    {
        const double r00 = 0.7;
        const double re = 0.2;
        const double im = 0.1;
        const DensityOperator rho = DensityOperator::qubit(r00, Cx(re, im));
        const Scenario sc = build_mixed_state(rho);
        const auto a = random_block(2, rng);
        const PureState got = run_gates(sc.circuit, explicit_input(sc, a));
        const SystemLayout& layout = sc.circuit.layout;

        std::map<Digits, double> weight;
        for (std::size_t idx = 0; idx < got.dimension(); ++idx) {
            Digits key;
            for (std::size_t s = 0; s < layout.size(); ++s) {
                if (layout.role(s) != Role::Purifier) key.push_back(layout.digit(idx, s));
            }
            weight[key] += std::norm(got.amplitude(idx));
        }

        const double block_coef[3][2] = {
            {std::sqrt(r00), std::sqrt(1.0 - r00)},
            {std::sqrt(0.5 + re), std::sqrt(0.5 - re)},
            {std::sqrt(0.5 + im), std::sqrt(0.5 - im)},
        };
        const std::size_t selector[3][3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
        // (agent in, env digit) -> (agent, env, register 1, register 2)
        const std::size_t pattern[2][2][4] = {
            {{0, 0, 0, 0}, {1, 1, 1, 0}},
            {{0, 0, 1, 1}, {1, 1, 0, 1}},
        };
        std::map<Digits, double> expect;
        for (std::size_t s = 0; s < 3; ++s)
            for (std::size_t aa = 0; aa < 2; ++aa)
                for (std::size_t ee = 0; ee < 2; ++ee) {
                    const auto& o = pattern[aa][ee];
                    expect[{o[0], o[1], o[2], o[3], selector[s][0], selector[s][1],
                            selector[s][2]}] = std::abs(a[aa]) * block_coef[s][ee] / std::sqrt(3.0);
                }
        double dev = 0.0;
        std::size_t visible = 0;
        for (const auto& [key, w] : weight) {
            const double mag = std::sqrt(w);
            if (mag > tol::state) ++visible;
            const auto it = expect.find(key);
            dev = std::max(dev, std::abs(mag - (it == expect.end() ? 0.0 : it->second)));
        }
        flag_check(g, "mixed-state expansion has 12 visible patterns", visible == 12,
                   std::to_string(visible) + " patterns");
        bound_check(g, "mixed-state pattern weights", dev, tol::state);

        const Purification pur = purify(rho);
        std::vector<Cx> slice(got.dimension(), Cx{});
        for (std::size_t aa = 0; aa < 2; ++aa)
            for (std::size_t je = 0; je < 2; ++je)
                for (std::size_t ke = 0; ke < 2; ++ke) {
                    const Cx c = a[aa] * pur.amplitudes[2 * je + ke] / std::sqrt(3.0);
                    const auto& o = pattern[aa][je];
                    slice[layout.index_from_digits({o[0], o[1], ke, o[2], o[3], 1, 0, 0})] += c;
                }
        double slice_dev = 0.0;
        for (std::size_t idx = 0; idx < got.dimension(); ++idx) {
            if (layout.digit(idx, 5) == 1 && layout.digit(idx, 6) == 0 &&
                layout.digit(idx, 7) == 0) {
                slice_dev = std::max(slice_dev, std::abs(got.amplitude(idx) - slice[idx]));
            }
        }
        bound_check(g, "identity-selector block amplitudes, purifier included", slice_dev,
                    tol::state);
    }
}

void claim_gate_counts(const ClaimOptions&, ClaimGroup& g) {
    bool ok = true;
    std::string bad;
    const auto expect_counts = [&](const Scenario& sc, std::size_t gates, std::size_t measures,
                                   const char* kind) {
        const GateCount c = gate_count(sc.circuit);
        bool good = c.total == gates && c.measurements == measures;
        if (kind != nullptr) {
            good = good && c.by_kind.size() == 1 && c.by_kind.count(kind) == 1 &&
                   c.by_kind.at(kind) == gates;
        }
        if (!good) {
            ok = false;
            bad += sc.name + "(" + std::to_string(c.total) + ") ";
        }
    };
    for (std::size_t d = 2; d <= 8; ++d) expect_counts(build_qudit(d), 9, 1, "gxor");
    for (std::size_t d = 2; d <= 8; ++d) expect_counts(build_multiqudit(1, d), 9, 1, "gxor");
    for (std::size_t d = 2; d <= 5; ++d) expect_counts(build_multiqudit(2, d), 18, 1, "gxor");
    for (std::size_t d = 2; d <= 3; ++d) expect_counts(build_multiqudit(3, d), 27, 1, "gxor");
    expect_counts(build_single_qubit(), 5, 1, "cnot");
    for (std::size_t n = 1; n <= 3; ++n) expect_counts(build_multiqubit(n), 5 * n, 1, "cnot");
    expect_counts(build_larger_env_feedback(), 5, 2, "cnot");
    expect_counts(build_larger_env_register_rich(), 6, 1, "cnot");
    flag_check(g, "construction gate counts", ok, ok ? "all circuit families" : "mismatch: " + bad);

    const GateCount one = gate_count(build_qudit(4).circuit);
    const GateCount two = gate_count(build_multiqudit(2, 4).circuit);
    flag_check(g, "two copies cost twice one copy", two.total == 2 * one.total,
               std::to_string(two.total) + " vs 2x" + std::to_string(one.total));

    const GateCount mixed =
        gate_count(build_mixed_state(DensityOperator::qubit(0.7, Cx(0.2, 0.1))).circuit);
    const std::map<std::string, std::size_t> mixed_kinds = {{"clocal", 3}, {"cnot", 5}};
    flag_check(g, "mixed-state circuit splits into conditioned locals and copies",
               mixed.total == 8 && mixed.measurements == 1 && mixed.by_kind == mixed_kinds,
               std::to_string(mixed.total) + " gates");

    const bool closed = expected_gate_count(build_qudit(5)) == 9 &&
                        expected_gate_count(build_multiqudit(3, 2)) == 27 &&
                        expected_gate_count(build_multiqubit(2)) == 10 &&
                        expected_gate_count(build_single_qubit()) == 5;
    flag_check(g, "closed-form counts agree", closed, "checked four families");
}

void claim_gate_algebra(const ClaimOptions&, ClaimGroup& g) {
    bool herm = true;
    bool invol = true;
    bool kernel = true;
    for (std::size_t d = 2; d <= 5; ++d) {
        const std::size_t n = d * d;
        std::vector<std::size_t> perm(n);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) perm[i * d + j] = i * d + md3(i, j, d, 1);
        std::vector<int> mat(n * n, 0);
        for (std::size_t col = 0; col < n; ++col) mat[perm[col] * n + col] = 1;
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c) herm = herm && mat[r * n + c] == mat[c * n + r];
        for (std::size_t r = 0; r < n; ++r) {
            for (std::size_t c = 0; c < n; ++c) {
                int acc = 0;
                for (std::size_t k = 0; k < n; ++k) acc += mat[r * n + k] * mat[k * n + c];
                invol = invol && acc == (r == c ? 1 : 0);
            }
        }
        const SystemLayout layout({{"c", d, Role::Agent}, {"t", d, Role::Environment}});
        for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t j = 0; j < d; ++j) {
                const std::size_t in[] = {i, j};
                const std::size_t out[] = {i, md3(i, j, d, 1)};
                const PureState applied = apply_gxor(PureState::basis(layout, in), 0, 1);
                kernel = kernel && max_diff(applied, PureState::basis(layout, out)) == 0.0;
                const PureState twice = apply_gxor(applied, 0, 1);
                kernel = kernel && max_diff(twice, PureState::basis(layout, in)) == 0.0;
            }
        }
    }
    flag_check(g, "exchange gate is Hermitian, dimensions 2..5", herm, "real symmetric permutation");
    flag_check(g, "exchange gate is its own inverse, dimensions 2..5", invol, "exact matrix square");
    flag_check(g, "exchange kernel matches its matrix", kernel, "basis action and double action");

    bool asym = true;
    bool order = true;
    bool bijective = true;
    for (std::size_t d = 3; d <= 5; ++d) {
        const std::size_t n = d * d;
        std::vector<std::size_t> perm(n);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) perm[i * d + j] = i * d + (i + j) % d;
        bool symmetric = true;
        for (std::size_t k = 0; k < n; ++k) symmetric = symmetric && perm[perm[k]] == k;
        asym = asym && !symmetric;
        std::vector<int> hit(n, 0);
        for (std::size_t k = 0; k < n; ++k) hit[perm[k]] += 1;
        for (const int h : hit) bijective = bijective && h == 1;
        const SystemLayout layout({{"c", d, Role::Agent}, {"t", d, Role::Environment}});
        Rng rng(1000 + d);
        const PureState start(layout, random_block(n, rng));
        PureState walk = start;
        for (std::size_t t = 0; t < d; ++t) walk = apply_xor(walk, 0, 1);
        order = order && max_diff(walk, start) == 0.0;
    }
    flag_check(g, "addition gate is not Hermitian, dimensions 3..5", asym,
               "permutation is not an involution");
    flag_check(g, "addition gate is a permutation", bijective, "columns hit once");
    flag_check(g, "addition gate order equals the dimension", order, "exact return after d rounds");

    bool coincide = true;
    const SystemLayout pair({{"c", 2, Role::Agent}, {"t", 2, Role::Environment}});
    for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t j = 0; j < 2; ++j) {
            const std::size_t in[] = {i, j};
            const PureState basis = PureState::basis(pair, in);
            coincide = coincide && max_diff(apply_gxor(basis, 0, 1), apply_xor(basis, 0, 1)) == 0.0;
            coincide = coincide && max_diff(apply_gxor(basis, 0, 1), apply_cnot(basis, 0, 1)) == 0.0;
        }
    }
    flag_check(g, "all copy gates coincide on qubits", coincide, "basis-by-basis equality");
}

void claim_injectivity(const ClaimOptions&, ClaimGroup& g) {
    bool qudit_ok = true;
    std::string bad;
    for (std::size_t d = 2; d <= 8; ++d) {
        const auto coeffs = ones(d);
        if (!check_outcome_injectivity(build_qudit(d), coeffs, coeffs)) {
            qudit_ok = false;
            bad += std::to_string(d) + " ";
        }
    }
    flag_check(g, "qudit outcomes separate all basis pairs, dimensions 2..8", qudit_ok,
               qudit_ok ? "d*d distinct patterns each" : "failed at " + bad);

    const auto four = ones(4);
    flag_check(g, "two-copy qubit outcomes separate all 16 pairs",
               check_outcome_injectivity(build_multiqubit(2), four, four), "16 register patterns");

    const auto two = ones(2);
    flag_check(g, "single-qubit outcomes separate all 4 pairs",
               check_outcome_injectivity(build_single_qubit(), two, two), "4 register patterns");

    const auto nine = ones(9);
    flag_check(g, "two-copy qudit outcomes separate all 81 pairs",
               check_outcome_injectivity(build_multiqudit(2, 3), nine, nine),
               "81 register patterns");

    flag_check(g, "register-rich outcomes separate all 8 pairs",
               check_outcome_injectivity(build_larger_env_register_rich(), two, four),
               "8 register patterns");
}

void claim_exchange(const ClaimOptions&, ClaimGroup& g) {
    const auto sweep = [](const Scenario& sc, std::uint64_t base, std::size_t trials) {
        double worst = 0.0;
        for (std::size_t t = 0; t < trials; ++t) {
            Rng rng(Rng::substream(base, t));
            const PureState fin = run_gates(sc.circuit, random_input(sc, rng));
            worst = std::max(worst, exchange_invariance_error(fin, sc.agent_subsystems,
                                                              sc.env_subsystems));
        }
        return worst;
    };
    bound_check(g, "single-qubit exchange symmetry over 100 inputs",
                sweep(build_single_qubit(), 601, 100), tol::state);
    bound_check(g, "dimension-4 qudit exchange symmetry over 100 inputs",
                sweep(build_qudit(4), 602, 100), tol::state);
    bound_check(g, "two-copy qubit exchange symmetry over 20 inputs",
                sweep(build_multiqubit(2), 603, 20), tol::state);
    bound_check(g, "two-copy qudit exchange symmetry over 20 inputs",
                sweep(build_multiqudit(2, 3), 604, 20), tol::state);
}

void claim_larger_env(const ClaimOptions&, ClaimGroup& g) {
    const Scenario fb = build_larger_env_feedback();
    Circuit reward_stage = fb.circuit;
    reward_stage.steps.resize(6);
    double min_f = 1.0;
    double min_a = 1.0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        Rng rng(Rng::substream(701, seed));
        const PureState input = random_input(fb, rng);
        for (const ExecutionTrace& trace : {run(reward_stage, input), run(fb.circuit, input)}) {
            for (const TraceLeaf& leaf : trace.leaves) {
                min_f = std::min(min_f, learning_fidelity(leaf.state, fb.agent_subsystems,
                                                          fb.env_subsystems));
                min_a = std::min(min_a, basis_agreement(leaf.state, fb.agent_subsystems,
                                                        fb.env_subsystems));
            }
        }
    }
    floor_check(g, "feedback fidelity on every rewarded branch", min_f, 1.0 - tol::fidelity);
    floor_check(g, "feedback agreement on every rewarded branch", min_a, 1.0 - tol::fidelity);

    {
        Rng rng(4242);
        const auto a = random_block(2, rng);
        const auto e1 = random_block(2, rng);
        const std::vector<Cx> env = {e1[0], Cx{}, e1[1], Cx{}};
        const PureState input = explicit_input(fb, a, env);

        Circuit first_stage = fb.circuit;
        first_stage.steps.resize(4);
        const ExecutionTrace stage = run(first_stage, input);
        flag_check(g, "restricted environment prunes half the first readout",
                   stage.leaves.size() == 2,
                   std::to_string(stage.leaves.size()) + " of 4 outcomes reachable");

        const ExecutionTrace trace = run(fb.circuit, input);
        bool silent = trace.leaves.size() == 4;
        for (const TraceLeaf& leaf : trace.leaves) {
            for (const MeasurementRecord& rec : leaf.records) {
                silent = silent && rec.digits.size() == 2 && rec.digits[1] == 0;
            }
        }
        flag_check(g, "second register stays silent through the reward", silent,
                   std::to_string(trace.leaves.size()) + " full branches");
    }

    const Scenario rr = build_larger_env_register_rich();
    double rmin_f = 1.0;
    double rmin_a = 1.0;
    std::size_t max_leaves = 0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        Rng rng(Rng::substream(702, seed));
        const ExecutionTrace trace = run(rr.circuit, random_input(rr, rng));
        max_leaves = std::max(max_leaves, trace.leaves.size());
        for (const TraceLeaf& leaf : trace.leaves) {
            rmin_f = std::min(rmin_f, learning_fidelity(leaf.state, rr.agent_subsystems,
                                                        rr.env_subsystems));
            rmin_a = std::min(rmin_a, basis_agreement(leaf.state, rr.agent_subsystems,
                                                      rr.env_subsystems));
        }
    }
    floor_check(g, "register-rich fidelity after one measurement", rmin_f, 1.0 - tol::fidelity);
    floor_check(g, "register-rich agreement after one measurement", rmin_a, 1.0 - tol::fidelity);
    flag_check(g, "register-rich runs need a single measurement", max_leaves <= 8,
               std::to_string(max_leaves) + " branches at most");
}

void claim_mixed_recovery(const ClaimOptions&, ClaimGroup& g) {
    double exact_dev = 0.0;
    Rng rng(808);
    for (int t = 0; t < 100; ++t) {
        const DensityOperator rho = random_qubit_density(rng);
        const Scenario sc = build_mixed_state(rho);
        const RecoveredParams rec = recover_mixed_params(sc, run(sc.circuit, random_input(sc, rng)));
        exact_dev = std::max(exact_dev, std::abs(rec.rho00 - rho.matrix()(0, 0).real()));
        exact_dev = std::max(exact_dev, std::abs(rec.re01 - rho.matrix()(0, 1).real()));
        exact_dev = std::max(exact_dev, std::abs(rec.im01 - rho.matrix()(0, 1).imag()));
        exact_dev = std::max(exact_dev, std::abs(rec.rho00 + rec.rho11 - 1.0));
    }
    bound_check(g, "exhaustive recovery over 100 random density operators", exact_dev, tol::state);

    double sampled_dev = 0.0;
    Rng srng(809);
    for (int t = 0; t < 20; ++t) {
        const DensityOperator rho = random_qubit_density(srng);
        const Scenario sc = build_mixed_state(rho);
        const PureState input = random_input(sc, srng);
        Rng shots(Rng::substream(909, static_cast<std::uint64_t>(t)));
        const RecoveredParams rec = recover_mixed_params_sampled(sc, input, 100000, shots);
        sampled_dev = std::max(sampled_dev, std::abs(rec.rho00 - rho.matrix()(0, 0).real()));
        sampled_dev = std::max(sampled_dev, std::abs(rec.re01 - rho.matrix()(0, 1).real()));
        sampled_dev = std::max(sampled_dev, std::abs(rec.im01 - rho.matrix()(0, 1).imag()));
    }
    bound_check(g, "sampled recovery with 1e5 shots over 20 density operators", sampled_dev,
                tol::sampled_recovery);
}

void claim_purification(const ClaimOptions&, ClaimGroup& g) {
    const SystemLayout layout({{"E", 2, Role::Environment}, {"e", 2, Role::Purifier}});
    const auto embed_error = [&](const DensityOperator& rho) {
        const Purification pur = purify(rho);
        const PureState st(layout, pur.amplitudes);
        const std::size_t keep[] = {0};
        const DensityOperator back = partial_trace(st, keep);
        double dev = 0.0;
        for (int r = 0; r < 2; ++r) {
            for (int c = 0; c < 2; ++c) {
                dev = std::max(dev, std::abs(back.matrix()(r, c) - rho.matrix()(r, c)));
            }
        }
        return dev;
    };
    double worst = 0.0;
    Rng rng(909);
    for (int t = 0; t < 100; ++t) worst = std::max(worst, embed_error(random_qubit_density(rng)));
    bound_check(g, "purification reduces to its source, 100 random cases", worst, tol::state);

    double corner = embed_error(DensityOperator::qubit(0.0, Cx{}));
    corner = std::max(corner, embed_error(DensityOperator::qubit(1.0, Cx{})));
    corner = std::max(corner, embed_error(DensityOperator::qubit(0.5, Cx{})));
    corner = std::max(corner, embed_error(DensityOperator::qubit(0.5, Cx(0.5, 0.0))));
    corner = std::max(corner, embed_error(DensityOperator::qubit(0.5, Cx(0.0, 0.5))));
    bound_check(g, "pure and maximally mixed corner cases", corner, tol::state);
}

void claim_golden_files(const ClaimOptions& options, ClaimGroup& g) {
    struct Golden {
        const char* file;
        Scenario scenario;
        bool score;
    };
    std::vector<Golden> files;
    files.push_back({"single_qubit.qrl", build_single_qubit(), true});
    files.push_back({"multiqubit2.qrl", build_multiqubit(2), true});
    files.push_back({"qudit4.qrl", build_qudit(4), true});
    files.push_back({"larger_env_feedback.qrl", build_larger_env_feedback(), true});
    files.push_back({"larger_env_registers.qrl", build_larger_env_register_rich(), true});
    files.push_back(
        {"mixed_state.qrl", build_mixed_state(DensityOperator::qubit(0.7, Cx(0.2, 0.1))), false});

    bool round_trip = true;
    bool matches = true;
    std::string bad_round;
    std::string bad_match;
    double min_f = 1.0;
    double min_a = 1.0;
    double prob_dev = 0.0;
    for (const Golden& gf : files) {
        const std::string path = options.circuits_dir + "/" + gf.file;
        const Circuit parsed = parse_circuit(read_text_file(path));
        if (!(parse_circuit(print_circuit(parsed)) == parsed)) {
            round_trip = false;
            bad_round += std::string(gf.file) + " ";
        }
        if (!(parsed == gf.scenario.circuit)) {
            matches = false;
            bad_match += std::string(gf.file) + " ";
        }
        if (gf.score) {
            Rng rng(5150);
            const PureState input = random_input(gf.scenario, rng);
            const ExecutionTrace trace = run(parsed, input);
            double total = 0.0;
            for (const TraceLeaf& leaf : trace.leaves) {
                total += leaf.probability;
                min_f = std::min(min_f, learning_fidelity(leaf.state, gf.scenario.agent_subsystems,
                                                          gf.scenario.env_subsystems));
                min_a = std::min(min_a, basis_agreement(leaf.state, gf.scenario.agent_subsystems,
                                                        gf.scenario.env_subsystems));
            }
            prob_dev = std::max(prob_dev, std::abs(total - 1.0));
        }
    }
    flag_check(g, "stored circuits survive print and reparse", round_trip,
               round_trip ? "all files" : "failed: " + bad_round);
    flag_check(g, "stored circuits equal their construction routines", matches,
               matches ? "all files" : "failed: " + bad_match);
    floor_check(g, "stored circuits reach learning fidelity when executed", min_f,
                1.0 - tol::fidelity);
    floor_check(g, "stored circuits reach basis agreement when executed", min_a,
                1.0 - tol::fidelity);
    bound_check(g, "executed branch probabilities sum to one", prob_dev, tol::measure);

    {
        const Scenario sc = build_single_qubit();
        const Circuit parsed =
            parse_circuit(read_text_file(options.circuits_dir + "/single_qubit.qrl"));
        const PureState input =
            explicit_input(sc, {Cx(0.6, 0.0), Cx(0.8, 0.0)}, {Cx(0.8, 0.0), Cx(0.6, 0.0)});
        const ExecutionTrace trace = run(parsed, input);
        static constexpr double kExpected[4] = {0.2304, 0.2304, 0.1296, 0.4096};
        double dev = 1.0;
        if (trace.leaves.size() == 4) {
            dev = 0.0;
            for (std::size_t i = 0; i < 4; ++i) {
                dev = std::max(dev, std::abs(trace.leaves[i].probability - kExpected[i]));
            }
        }
        bound_check(g, "frozen example distribution from the stored circuit", dev, tol::state);
    }

    {
        double swap_dev = 0.0;
        for (const char* file : {"single_qubit.qrl", "qudit4.qrl"}) {
            const Circuit parsed =
                parse_circuit(read_text_file(options.circuits_dir + "/" + file));
            const Scenario sc = std::string(file) == "qudit4.qrl" ? build_qudit(4)
                                                                  : build_single_qubit();
            Rng rng(5151);
            const PureState fin = run_gates(parsed, random_input(sc, rng));
            swap_dev = std::max(swap_dev, exchange_invariance_error(fin, sc.agent_subsystems,
                                                                    sc.env_subsystems));
        }
        bound_check(g, "parsed circuits keep exchange symmetry", swap_dev, tol::state);
    }
}

struct GroupSpec {
    int number;
    const char* id;
    const char* title;
    double limit;
    void (*fn)(const ClaimOptions&, ClaimGroup&);
};

constexpr GroupSpec kGroups[] = {
    {1, "single-qubit-learning", "single-qubit agent adopts its environment's strategy", 1.0,
     claim_single_qubit_learning},
    {2, "final-states", "pipeline states match their closed forms", 2.0, claim_final_states},
    {3, "gate-counts", "circuit sizes match the closed-form counts", 0.0, claim_gate_counts},
    {4, "gate-algebra", "exchange and addition gates satisfy their algebra", 0.0,
     claim_gate_algebra},
    {5, "outcome-injectivity", "register outcomes identify every basis pair", 0.0,
     claim_injectivity},
    {6, "exchange-symmetry", "final states survive agent-environment exchange", 0.0,
     claim_exchange},
    {7, "larger-environment", "partially resolved environments still teach the agent", 0.0,
     claim_larger_env},
    {8, "mixed-recovery", "density-operator parameters are read back from measurements", 10.0,
     claim_mixed_recovery},
    {9, "purification", "purified environments reduce to their density operators", 0.0,
     claim_purification},
    {10, "golden-circuits", "stored circuit files replay the scenarios", 0.0, claim_golden_files},
};

}  // namespace

std::vector<ClaimGroup> run_claim_suite(const ClaimOptions& options) {
    std::vector<ClaimGroup> out;
    for (const GroupSpec& spec : kGroups) {
        if (!options.filter.empty() &&
            std::string(spec.id).find(options.filter) == std::string::npos) {
            continue;
        }
        ClaimGroup group;
        group.number = spec.number;
        group.id = spec.id;
        group.title = spec.title;
        group.time_limit = spec.limit;
        const auto start = std::chrono::steady_clock::now();
        try {
            spec.fn(options, group);
        } catch (const std::exception& e) {
            group.checks.push_back({"completes without throwing", false, e.what()});
        }
        group.seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (group.time_limit > 0.0) {
            group.checks.push_back({"finishes within " + num(group.time_limit) + "s",
                                    group.seconds <= group.time_limit, num(group.seconds) + "s"});
        }
        group.pass = !group.checks.empty();
        for (const ClaimCheck& check : group.checks) group.pass = group.pass && check.pass;
        out.push_back(std::move(group));
    }
    return out;
}

bool all_claims_pass(const std::vector<ClaimGroup>& groups) {
    if (groups.empty()) return false;
    return std::all_of(groups.begin(), groups.end(),
                       [](const ClaimGroup& group) { return group.pass; });
}

void print_claim_groups(std::ostream& out, const std::vector<ClaimGroup>& groups, bool verbose) {
    for (const ClaimGroup& group : groups) {
        out << (group.pass ? "PASS" : "FAIL") << "  " << group.id << ": " << group.title << "  ("
            << group.checks.size() << " checks, " << num(group.seconds) << "s)\n";
        for (const ClaimCheck& check : group.checks) {
            if (verbose || !check.pass) {
                out << "      " << (check.pass ? "ok   " : "FAIL ") << check.name << ": "
                    << check.detail << "\n";
            }
        }
    }
}

}  // namespace qrl
