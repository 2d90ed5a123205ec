#include "trapstack/welldesign.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "trapstack/numerics.hpp"

namespace trapstack {

namespace {

struct LinearStage {
    Eigen::VectorXd voltages;
    double objective;
};

// min-norm least squares for {C1(z_w)=0, C2(z_w)=m w^2/(2q)}, optional C3
// penalty, followed by box projection if the unconstrained optimum leaves the
// voltage bounds.
LinearStage solve_voltages(const std::vector<PotentialSolution>& basis,
                           const std::vector<WellTarget>& wells,
                           const std::vector<const ParticleSpecies*>& species,
                           const std::vector<double>& positions, double bound,
                           double c3_penalty) {
    const int ne = static_cast<int>(basis.size());
    const int nw = static_cast<int>(wells.size());
    const int rows = nw * (c3_penalty > 0.0 ? 3 : 2);
    Eigen::MatrixXd A(rows, ne);
    Eigen::VectorXd b(rows);

    // scale rows so position and curvature constraints weigh comparably
    const double len = 100e-6;
    for (int w = 0; w < nw; ++w) {
        const double z = positions[w];
        const double c2_target =
            species[w]->mass * wells[w].omega_z * wells[w].omega_z / (2.0 * species[w]->charge);
        for (int j = 0; j < ne; ++j) {
            A(2 * w, j) = basis[j].axial_derivative(z, 1) * len;
            A(2 * w + 1, j) = 0.5 * basis[j].axial_derivative(z, 2) * len * len;
        }
        b(2 * w) = 0.0;
        b(2 * w + 1) = c2_target * len * len;
        if (c3_penalty > 0.0) {
            for (int j = 0; j < ne; ++j)
                A(2 * nw + w, j) =
                    c3_penalty * basis[j].axial_derivative(z, 3) / 6.0 * len * len * len;
            b(2 * nw + w) = 0.0;
        }
    }

    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(A);
    Eigen::VectorXd v = cod.solve(b);

    if (v.lpNorm<Eigen::Infinity>() > bound) {
        // projected gradient on the box-constrained quadratic
        Eigen::MatrixXd AtA = A.transpose() * A;
        Eigen::VectorXd Atb = A.transpose() * b;
        const double lip = AtA.operatorNorm();
        const double step = 1.0 / std::max(lip, 1e-30);
        v = v.cwiseMax(-bound).cwiseMin(bound);
        for (int it = 0; it < 20000; ++it) {
            Eigen::VectorXd g = AtA * v - Atb;
            Eigen::VectorXd next = (v - step * g).cwiseMax(-bound).cwiseMin(bound);
            if ((next - v).lpNorm<Eigen::Infinity>() < 1e-12 * bound) {
                v = next;
                break;
            }
            v = next;
        }
    }
    return {v, (A * v - b).squaredNorm() / (len * len * len * len)};
}

struct Realized {
    std::vector<StationaryPoint> points; // one per well, matched by position
};

Realized realize(const std::vector<PotentialSolution>& basis, const ElectrodeStack& tmpl,
                 const Eigen::VectorXd& v, const std::vector<WellTarget>& wells,
                 const std::vector<const ParticleSpecies*>& species) {
    // superpose basis solutions; cheaper than re-solving
    PotentialSolution sol = basis[0];
    for (size_t n = 0; n < sol.coeff.size(); ++n) {
        double c = 0.0, ac = 0.0;
        for (size_t j = 0; j < basis.size(); ++j) {
            c += v[j] * basis[j].coeff[n];
            ac += v[j] * basis[j].axis_coeff[n];
        }
        sol.coeff[n] = c;
        sol.axis_coeff[n] = ac;
    }

    const double z_lo = tmpl.electrodes.front().z_lo;
    const double z_hi = tmpl.electrodes.back().z_hi;
    std::vector<double> grid(2001);
    for (size_t i = 0; i < grid.size(); ++i)
        grid[i] = z_lo + (z_hi - z_lo) * static_cast<double>(i) / (grid.size() - 1);
    AxialPotential prof = axial_profile(sol, grid);

    Realized r;
    for (size_t w = 0; w < wells.size(); ++w) {
        const StationaryPoint* best = nullptr;
        for (const auto& p : prof.points) {
            if (species[w]->charge * p.C[2] <= 0.0) continue; // confining only
            if (!best || std::abs(p.z - wells[w].position) < std::abs(best->z - wells[w].position))
                best = &p;
        }
        if (!best)
            throw InfeasibleDesignError("no confining stationary point found for well " +
                                        std::to_string(w + 1));
        r.points.push_back(*best);
    }
    return r;
}

} // namespace

WellSolution design_wells(const GeometryConfig& geometry, const WellConfig& spec,
                          const Config& cfg) {
    const auto& wells = spec.wells;
    if (wells.empty()) throw InfeasibleDesignError("no wells requested");
    if (2 * wells.size() > static_cast<size_t>(geometry.num_electrodes))
        throw InfeasibleDesignError("more constraints than voltage degrees of freedom");
    for (size_t i = 0; i < wells.size(); ++i) {
        if (std::abs(wells[i].position) > geometry.stack_length() / 2.0)
            throw InfeasibleDesignError("well " + std::to_string(i + 1) + " outside the stack");
        for (size_t j = i + 1; j < wells.size(); ++j)
            if (wells[i].position == wells[j].position)
                throw InfeasibleDesignError("well positions must be distinct");
    }

    std::vector<const ParticleSpecies*> species;
    for (const auto& w : wells) species.push_back(&cfg.lookup(w.species));

    std::vector<double> zero(geometry.num_electrodes, 0.0);
    ElectrodeStack tmpl = ElectrodeStack::uniform(geometry, zero);
    const auto basis = electrode_basis(tmpl, geometry.modes);

    std::vector<double> positions;
    for (const auto& w : wells) positions.push_back(w.position);

    auto evaluate = [&](const std::vector<double>& pos) {
        LinearStage ls =
            solve_voltages(basis, wells, species, pos, spec.voltage_bound, spec.c3_penalty);
        Realized r = realize(basis, tmpl, ls.voltages, wells, species);
        double err = 0.0;
        for (size_t w = 0; w < wells.size(); ++w) {
            double omega = curvature_to_frequency(r.points[w].C[2], *species[w]);
            err += std::pow((r.points[w].z - wells[w].position) / 1e-6, 2);
            err += std::pow((omega - wells[w].omega_z) / wells[w].omega_z * 1e3, 2);
        }
        return std::make_tuple(err, ls, r);
    };

    auto [err0, ls0, r0] = evaluate(positions);
    LinearStage ls = ls0;
    Realized real = r0;
    if (err0 > 1e-4) {
        auto obj = [&](const std::vector<double>& pos) {
            try {
                return std::get<0>(evaluate(pos));
            } catch (const std::exception&) {
                return 1e30;
            }
        };
        auto nm = nelder_mead(obj, positions, 2e-6, 1e-10, 400);
        auto [err1, ls1, r1] = evaluate(nm.x);
        if (err1 < err0) {
            ls = ls1;
            real = r1;
        }
    }

    WellSolution sol;
    sol.voltages.assign(ls.voltages.data(), ls.voltages.data() + ls.voltages.size());
    sol.objective = ls.objective;
    for (size_t w = 0; w < wells.size(); ++w) {
        const auto& p = real.points[w];
        sol.achieved_positions.push_back(p.z);
        sol.achieved_omega.push_back(curvature_to_frequency(p.C[2], *species[w]));
        sol.residual_C1.push_back(p.C[1]);
        sol.C2.push_back(p.C[2]);
        sol.C3.push_back(p.C[3]);
        sol.C4.push_back(p.C[4]);
    }
    return sol;
}

WellReport well_report(const WellSolution& solution, const GeometryConfig& geometry,
                       const WellConfig& spec, const Config& cfg) {
    ElectrodeStack stack = ElectrodeStack::uniform(geometry, solution.voltages);
    PotentialSolution sol = solve_potential(stack, geometry.modes);

    const double z_lo = stack.electrodes.front().z_lo;
    const double z_hi = stack.electrodes.back().z_hi;
    std::vector<double> grid(2001);
    for (size_t i = 0; i < grid.size(); ++i)
        grid[i] = z_lo + (z_hi - z_lo) * static_cast<double>(i) / (grid.size() - 1);
    AxialPotential prof = axial_profile(sol, grid);

    WellReport rep;
    for (size_t w = 0; w < spec.wells.size(); ++w) {
        const ParticleSpecies& sp = cfg.lookup(spec.wells[w].species);
        const StationaryPoint* best = nullptr;
        for (const auto& p : prof.points) {
            if (sp.charge * p.C[2] <= 0.0) continue;
            if (!best ||
                std::abs(p.z - solution.achieved_positions[w]) <
                    std::abs(best->z - solution.achieved_positions[w]))
                best = &p;
        }
        if (!best) throw InconsistentReportError("recomputation lost well " + std::to_string(w + 1));
        rep.positions.push_back(best->z);
        rep.omega_z.push_back(curvature_to_frequency(best->C[2], sp));
        rep.C2.push_back(best->C[2]);
        rep.C3.push_back(best->C[3]);
        rep.C4.push_back(best->C[4]);
    }

    if (rep.positions.size() == 2) {
        rep.separation = std::abs(rep.positions[1] - rep.positions[0]);
        // saddle between the wells: extremum of opposite confinement sense
        const double lo = std::min(rep.positions[0], rep.positions[1]);
        const double hi = std::max(rep.positions[0], rep.positions[1]);
        for (const auto& p : prof.points) {
            if (p.z <= lo || p.z >= hi) continue;
            double d0 = std::abs(p.C[0] - (solution.C2[0] > 0.0
                                               ? std::min(sol.axial(rep.positions[0]),
                                                          sol.axial(rep.positions[1]))
                                               : std::max(sol.axial(rep.positions[0]),
                                                          sol.axial(rep.positions[1]))));
            rep.well_depth = std::max(rep.well_depth, d0);
        }
    }

    for (size_t w = 0; w < rep.positions.size(); ++w) {
        if (std::abs(rep.positions[w] - solution.achieved_positions[w]) > 1e-7 ||
            std::abs(rep.omega_z[w] - solution.achieved_omega[w]) >
                5e-3 * solution.achieved_omega[w])
            throw InconsistentReportError("recomputed well " + std::to_string(w + 1) +
                                          " deviates from the solution record");
    }
    return rep;
}

} // namespace trapstack
