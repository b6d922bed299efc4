#pragma once

#include "tvc/params.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace tvc {

/// A catalog row: the data-sheet subset published for each motor.
struct CatalogEntry {
    std::string name;
    double mass_kg = 0.0;
    double tau_stall_Nm = 0.0;
    double omega_max_rad_s = 0.0;
    double v_max_V = 0.0;

    bool operator==(const CatalogEntry&) const = default;
};

/// The six industrial DC motors shipped with the library, in table order.
const std::vector<CatalogEntry>& motor_catalog();

/// Looks up a catalog row by exact name or by 1-based case number ("2").
/// Throws ValidationError on no match.
const CatalogEntry& find_catalog_entry(const std::string& key);

/// Applies a catalog row's data-sheet fields onto a base motor. Rotor inertia,
/// friction and gearbox come from the base. Stall current is kept only when
/// the row names the same motor, since the catalog does not list it.
MotorSpec apply_catalog_entry(const MotorSpec& base, const CatalogEntry& entry);

void write_catalog_csv(std::ostream& os, const std::vector<CatalogEntry>& catalog);
std::vector<CatalogEntry> read_catalog_csv(std::istream& is);

/// The gimbal motor used for the reference burn (case 2 with its full sheet).
MotorSpec faulhaber_3890();

/// Reference 50 s burn: spacecraft, motor, wheels and published gain.
ScenarioConfig paper_baseline();

}  // namespace tvc
