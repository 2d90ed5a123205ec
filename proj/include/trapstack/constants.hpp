#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace trapstack {

// CODATA 2018 values, SI units throughout.
struct PhysConstants {
    double elementary_charge = 1.602176634e-19;   // C
    double vacuum_permittivity = 8.8541878128e-12; // F/m
    double planck = 6.62607015e-34;               // J s
    double reduced_planck = 6.62607015e-34 / (2.0 * M_PI);
    double boltzmann = 1.380649e-23;              // J/K
    double bohr_magneton = 9.2740100783e-24;      // J/T
    double nuclear_magneton = 5.0507837461e-27;   // J/T
    double atomic_mass_unit = 1.66053906660e-27;  // kg
    double speed_of_light = 299792458.0;          // m/s

    void validate() const {
        const double fields[] = {elementary_charge, vacuum_permittivity, planck,
                                 reduced_planck,    boltzmann,          bohr_magneton,
                                 nuclear_magneton,  atomic_mass_unit,   speed_of_light};
        for (double f : fields)
            if (!(f > 0.0)) throw std::invalid_argument("PhysConstants: all constants must be positive");
        if (std::abs(reduced_planck - planck / (2.0 * M_PI)) > 1e-15 * reduced_planck)
            throw std::invalid_argument("PhysConstants: reduced_planck != planck/2pi");
    }
};

// Reference particle masses (kg)
constexpr double kProtonMass = 1.67262192369e-27;
constexpr double kElectronMass = 9.1093837015e-31;
constexpr double kBe9AtomMassU = 9.0121831; // neutral atom, u

struct ParticleSpecies {
    std::string name;
    double charge = 0.0; // C, signed
    double mass = 0.0;   // kg
    bool has_g_factor = false;
    double g_factor = 0.0; // dimensionless
    bool has_magnetic_moment = false;
    double magnetic_moment = 0.0; // J/T

    void validate() const {
        if (!(mass > 0.0)) throw std::invalid_argument("species '" + name + "': mass must be > 0");
        if (charge == 0.0) throw std::invalid_argument("species '" + name + "': charge must be nonzero");
    }
};

struct MagneticField {
    double B0 = 5.0; // T
    void validate() const {
        if (!(B0 > 0.0)) throw std::invalid_argument("field.B0 must be > 0");
    }
};

} // namespace trapstack
